use std::io::{BufRead, Write};

use super::{print_run, replay_command, Context, Verbosity, BANNER, EXIT_OK};
use crate::algorithm::{parse_params, run_algorithm, Algorithm, Params};
use crate::error::Result;

struct Session<'a> {
    input: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
    ctx: &'a Context,
    backend: String,
}

/// `None` means end of input.
type Step<T> = Result<Option<T>>;

impl Session<'_> {
    fn prompt(&mut self, text: &str) -> Step<String> {
        write!(self.out, "{text}")?;
        self.out.flush()?;
        let mut line = String::new();
        if self.input.read_line(&mut line)? == 0 {
            writeln!(self.out)?;
            return Ok(None);
        }
        Ok(Some(line.trim_end_matches(['\n', '\r']).to_owned()))
    }

    fn menu(&mut self) -> Result<()> {
        writeln!(self.out)?;
        writeln!(self.out, "  [1] list backends")?;
        writeln!(self.out, "  [2] select backend (current: {})", self.backend)?;
        writeln!(self.out, "  [3] list algorithms")?;
        writeln!(self.out, "  [4] run an algorithm")?;
        writeln!(self.out, "  [q] quit")?;
        Ok(())
    }

    fn list_backends(&mut self) -> Result<()> {
        for (i, b) in self.ctx.backends.list().iter().enumerate() {
            writeln!(self.out, "  {}) {} (max {} qubits): {}", i + 1, b.name, b.max_qubits, b.description)?;
        }
        Ok(())
    }

    fn list_algorithms(&mut self) -> Result<()> {
        for (i, (name, description)) in self.ctx.algorithms.list().iter().enumerate() {
            writeln!(self.out, "  {}) {name}: {description}", i + 1)?;
        }
        Ok(())
    }

    /// Accepts a 1-based index or a name from `names`.
    fn pick(&mut self, label: &str, names: &[String]) -> Step<String> {
        loop {
            let Some(answer) = self.prompt(&format!("{label}> "))? else {
                return Ok(None);
            };
            let answer = answer.trim();
            let chosen = answer
                .parse::<usize>()
                .ok()
                .and_then(|i| i.checked_sub(1))
                .and_then(|i| names.get(i))
                .or_else(|| names.iter().find(|n| n.as_str() == answer));
            match chosen {
                Some(n) => return Ok(Some(n.clone())),
                None => writeln!(self.out, "unknown {label} '{answer}'")?,
            }
        }
    }

    fn select_backend(&mut self) -> Step<()> {
        self.list_backends()?;
        let names: Vec<String> = self.ctx.backends.list().into_iter().map(|b| b.name).collect();
        let Some(name) = self.pick("backend", &names)? else {
            return Ok(None);
        };
        writeln!(self.out, "backend set to {name}")?;
        self.backend = name;
        Ok(Some(()))
    }

    fn read_params(&mut self, alg: &dyn Algorithm) -> Step<Params> {
        let mut raw = Vec::new();
        for spec in alg.param_specs() {
            loop {
                let Some(value) = self.prompt(&format!("{} ({}): ", spec.name, spec.constraint()))? else {
                    return Ok(None);
                };
                match spec.parse(&value) {
                    Ok(_) => {
                        raw.push(value);
                        break;
                    }
                    Err(e) => writeln!(self.out, "invalid: {e}")?,
                }
            }
        }
        parse_params(alg.param_specs(), &raw).map(Some)
    }

    fn read_shots(&mut self) -> Step<u64> {
        loop {
            let Some(value) = self.prompt("run [1] one time or [2] multiple times> ")? else {
                return Ok(None);
            };
            match value.trim() {
                "1" => return Ok(Some(1)),
                "2" => loop {
                    let Some(n) = self.prompt("shots> ")? else {
                        return Ok(None);
                    };
                    match n.trim().parse::<u64>() {
                        Ok(n) if n >= 1 => return Ok(Some(n)),
                        _ => writeln!(self.out, "invalid: shots must be a positive integer")?,
                    }
                },
                other => writeln!(self.out, "unknown mode '{other}'")?,
            }
        }
    }

    fn run_algorithm(&mut self) -> Step<()> {
        self.list_algorithms()?;
        let names: Vec<String> = self.ctx.algorithms.list().into_iter().map(|(n, _)| n).collect();
        let Some(name) = self.pick("algorithm", &names)? else {
            return Ok(None);
        };
        let alg = self.ctx.algorithms.get(&name)?;
        if self.ctx.config.verbosity > Verbosity::Quiet {
            writeln!(self.out, "{}", alg.explain())?;
        }
        let Some(params) = self.read_params(alg)? else {
            return Ok(None);
        };
        let Some(shots) = self.read_shots()? else {
            return Ok(None);
        };
        let seed = self.ctx.resolve_seed(None);
        writeln!(self.out, "seed: {seed}")?;
        writeln!(
            self.out,
            "replay: {}",
            replay_command(alg, &params, &self.backend, shots, seed)
        )?;
        match run_algorithm(alg, &params, &self.ctx.backends, &self.backend, shots, Some(seed)) {
            Ok(output) => print_run(self.ctx, alg, &output, shots, shots == 1, self.out)?,
            Err(e) => writeln!(self.out, "error: {e}")?,
        }
        Ok(Some(()))
    }

    fn run(&mut self) -> Result<()> {
        writeln!(self.out, "{BANNER}")?;
        loop {
            self.menu()?;
            let Some(choice) = self.prompt("choice> ")? else {
                return Ok(());
            };
            let step = match choice.trim() {
                "1" => self.list_backends().map(Some),
                "2" => self.select_backend(),
                "3" => self.list_algorithms().map(Some),
                "4" => self.run_algorithm(),
                "q" | "quit" | "exit" => return Ok(()),
                "" => Ok(Some(())),
                other => writeln!(self.out, "unknown choice '{other}'").map(Some).map_err(Into::into),
            };
            if step?.is_none() {
                return Ok(());
            }
        }
    }
}

/// Menu loop over `input`. End of input or `q` ends the session with
/// status 0.
pub fn interactive_session(input: &mut dyn BufRead, output: &mut dyn Write, ctx: &Context) -> i32 {
    let mut session = Session {
        input,
        out: output,
        ctx,
        backend: ctx.config.default_backend.clone(),
    };
    match session.run() {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(session.out, "error: {e}");
            super::exit_code(&e)
        }
    }
}
