//! Command-line front end: scriptable subcommands and the interactive menu.
//!
//! Algorithm subcommands are generated from the registry, so a newly
//! registered algorithm is reachable as `run <name> --<param> <value>`
//! without touching this module. Parameter names `shots`, `seed`,
//! `backend` and `draw` are reserved.

mod config;
mod interactive;

use std::io::Write;
use std::path::PathBuf;

use clap::{value_parser, Arg, ArgAction, ArgMatches, Command};

pub use config::{CliConfig, SeedPolicy, Verbosity, CONFIG_ENV};
pub use interactive::interactive_session;

use crate::algorithm::{format_params, parse_for, run_algorithm, Algorithm, AlgorithmRegistry, Params, RunOutput};
use crate::backend::BackendRegistry;
use crate::error::{Error, Result};
use crate::experiments::{self, HeatmapConfig};
use crate::sim::rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

/// Everything a session needs: registries plus configuration.
#[derive(Clone)]
pub struct Context {
    pub backends: BackendRegistry,
    pub algorithms: AlgorithmRegistry,
    pub config: CliConfig,
}

impl Context {
    pub fn new(backends: BackendRegistry, algorithms: AlgorithmRegistry, config: CliConfig) -> Result<Self> {
        backends.get(&config.default_backend)?;
        Ok(Context {
            backends,
            algorithms,
            config,
        })
    }

    /// Shipped backends and algorithms sized by `config.max_qubits`.
    pub fn shipped(config: CliConfig) -> Result<Self> {
        Self::new(
            BackendRegistry::with_cap(config.max_qubits),
            AlgorithmRegistry::shipped(config.max_qubits),
            config,
        )
    }

    fn resolve_seed(&self, explicit: Option<u64>) -> u64 {
        explicit.unwrap_or(match self.config.seed {
            SeedPolicy::Fixed(s) => s,
            SeedPolicy::Entropy => rng::entropy_seed(),
        })
    }
}

pub const BANNER: &str = "qsolver (guest mode: local simulator backends only)";

fn exit_code(e: &Error) -> i32 {
    if e.is_user_error() {
        EXIT_USAGE
    } else {
        EXIT_INTERNAL
    }
}

fn build_command(ctx: &Context) -> Command {
    let run_common = |cmd: Command| {
        cmd.arg(
            Arg::new("shots")
                .long("shots")
                .value_parser(value_parser!(u64).range(1..))
                .default_value("1")
                .help("Number of samples; 1 runs once, more builds a histogram"),
        )
        .arg(Arg::new("seed").long("seed").value_parser(value_parser!(u64)).help("Seed for a replayable run"))
        .arg(Arg::new("backend").long("backend").help("Backend name (see `backends`)"))
    };

    let mut run = Command::new("run")
        .about("Run one algorithm")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for alg in ctx.algorithms.iter() {
        let mut sub = Command::new(alg.name().to_owned()).about(alg.description().to_owned());
        for spec in alg.param_specs() {
            sub = sub.arg(
                Arg::new(spec.name.clone())
                    .long(spec.name.clone())
                    .required(true)
                    .allow_hyphen_values(true)
                    .help(format!("{} ({})", spec.description, spec.constraint())),
            );
        }
        sub = run_common(sub).arg(
            Arg::new("draw")
                .long("draw")
                .action(ArgAction::SetTrue)
                .help("Print the circuit diagram"),
        );
        run = run.subcommand(sub);
    }

    let histogram = run_common(
        Command::new("histogram")
            .about("Run an algorithm many times and print outcome counts as CSV")
            .arg(Arg::new("algorithm").long("algorithm").required(true))
            .arg(
                Arg::new("params")
                    .long("params")
                    .num_args(0..)
                    .help("Parameter values, one per algorithm parameter, in order"),
            ),
    )
    .mut_arg("shots", |a| a.default_value("1024"));

    let heatmap = Command::new("bb84-heatmap")
        .about("Sweep BB84 over message length and interception density")
        .arg(Arg::new("max-bits").long("max-bits").required(true).value_parser(value_parser!(usize)))
        .arg(Arg::new("density-step").long("density-step").required(true).value_parser(value_parser!(f64)))
        .arg(Arg::new("iterations").long("iterations").required(true).value_parser(value_parser!(u32)))
        .arg(Arg::new("seed").long("seed").value_parser(value_parser!(u64)))
        .arg(Arg::new("out").long("out").value_parser(value_parser!(PathBuf)))
        .arg(Arg::new("jobs").long("jobs").value_parser(value_parser!(usize)))
        .arg(Arg::new("backend").long("backend"));

    Command::new("qsolver")
        .about("Quantum algorithm toolkit on an embedded statevector simulator")
        .after_help(format!("Set {CONFIG_ENV} to a key = value config file to change defaults."))
        .subcommand(Command::new("backends").about("List execution backends"))
        .subcommand(Command::new("algorithms").about("List algorithms and their parameters"))
        .subcommand(run)
        .subcommand(
            Command::new("experiment")
                .about("Experimental mode")
                .subcommand_required(true)
                .subcommand(histogram)
                .subcommand(heatmap),
        )
        .subcommand(Command::new("interactive").about("Menu-driven session (default)"))
}

/// Runs one command line. `argv[0]` is the program name.
pub fn batch_command<I, S>(argv: I, ctx: &Context, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let matches = match build_command(ctx).try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };

    let result = match matches.subcommand() {
        Some(("backends", _)) => list_backends(ctx, out),
        Some(("algorithms", _)) => list_algorithms(ctx, out),
        Some(("run", m)) => {
            let (name, sub) = m.subcommand().expect("subcommand required");
            run_command(ctx, name, sub, out, err)
        }
        Some(("experiment", m)) => match m.subcommand() {
            Some(("histogram", sub)) => histogram_command(ctx, sub, out, err),
            Some(("bb84-heatmap", sub)) => heatmap_command(ctx, sub, out, err),
            _ => unreachable!("subcommand required"),
        },
        Some(("interactive", _)) | None => {
            let stdin = std::io::stdin();
            return interactive_session(&mut stdin.lock(), out, ctx);
        }
        Some((other, _)) => unreachable!("unhandled subcommand {other}"),
    };

    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn list_backends(ctx: &Context, out: &mut dyn Write) -> Result<()> {
    for b in ctx.backends.list() {
        let marker = if b.name == ctx.config.default_backend { "*" } else { " " };
        writeln!(
            out,
            "{marker} {:<24} max_qubits={:<3} deterministic={}  {}",
            b.name, b.max_qubits, b.deterministic, b.description
        )?;
    }
    Ok(())
}

fn list_algorithms(ctx: &Context, out: &mut dyn Write) -> Result<()> {
    for alg in ctx.algorithms.iter() {
        writeln!(out, "{:<20} {}", alg.name(), alg.description())?;
        for spec in alg.param_specs() {
            writeln!(out, "    --{} <{}>  {}", spec.name, spec.constraint(), spec.description)?;
        }
    }
    Ok(())
}

/// Shell-ready command that reproduces a run.
pub fn replay_command(alg: &dyn Algorithm, params: &Params, backend: &str, shots: u64, seed: u64) -> String {
    let mut cmd = format!("qsolver run {}", alg.name());
    let values = format_params(alg.param_specs(), params).unwrap_or_default();
    for (spec, value) in alg.param_specs().iter().zip(values) {
        let quoted = if value.is_empty() || value.contains(|c: char| c.is_whitespace() || c == '\'') {
            format!("'{}'", value.replace('\'', "'\\''"))
        } else {
            value
        };
        cmd.push_str(&format!(" --{} {quoted}", spec.name));
    }
    if shots != 1 {
        cmd.push_str(&format!(" --shots {shots}"));
    }
    cmd.push_str(&format!(" --seed {seed} --backend {backend}"));
    cmd
}

/// Prints a run the same way in batch and interactive mode.
pub(crate) fn print_run(
    ctx: &Context,
    alg: &dyn Algorithm,
    output: &RunOutput,
    shots: u64,
    draw: bool,
    out: &mut dyn Write,
) -> Result<()> {
    if draw {
        if let Some(c) = &output.circuit {
            writeln!(out, "{}", c.draw())?;
        }
    }
    writeln!(out, "{}", output.text.trim_end())?;
    if shots > 1 && ctx.config.verbosity > Verbosity::Quiet {
        write!(out, "{}", experiments::render_histogram(&output.counts, 40))?;
    }
    if ctx.config.verbosity == Verbosity::Verbose {
        writeln!(out, "{}", alg.explain())?;
    }
    Ok(())
}

fn run_command(ctx: &Context, name: &str, m: &ArgMatches, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let alg = ctx.algorithms.get(name)?;
    let raw: Vec<String> = alg
        .param_specs()
        .iter()
        .map(|s| m.get_one::<String>(&s.name).cloned().unwrap_or_default())
        .collect();
    let params = parse_for(alg, &raw)?;
    let shots = *m.get_one::<u64>("shots").expect("defaulted");
    let seed = ctx.resolve_seed(m.get_one::<u64>("seed").copied());
    let backend = m.get_one::<String>("backend").unwrap_or(&ctx.config.default_backend);

    let output = run_algorithm(alg, &params, &ctx.backends, backend, shots, Some(seed))?;
    if ctx.config.verbosity > Verbosity::Quiet {
        writeln!(err, "seed: {seed}  backend: {backend}")?;
    }
    let draw = m.get_flag("draw") || (shots == 1 && ctx.config.verbosity > Verbosity::Quiet);
    print_run(ctx, alg, &output, shots, draw, out)
}

fn histogram_command(ctx: &Context, m: &ArgMatches, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let alg = ctx
        .algorithms
        .get(m.get_one::<String>("algorithm").expect("required"))?;
    let raw: Vec<String> = m
        .get_many::<String>("params")
        .map(|v| v.cloned().collect())
        .unwrap_or_default();
    let params = parse_for(alg, &raw)?;
    let shots = *m.get_one::<u64>("shots").expect("defaulted");
    let seed = ctx.resolve_seed(m.get_one::<u64>("seed").copied());
    let backend = m.get_one::<String>("backend").unwrap_or(&ctx.config.default_backend);

    let h = experiments::run_histogram(alg, &params, shots, &ctx.backends, backend, Some(seed))?;
    write!(out, "{}", h.csv)?;
    if ctx.config.verbosity > Verbosity::Quiet {
        writeln!(err, "seed: {seed}  backend: {backend}")?;
        writeln!(err, "{}", h.output.text.trim_end())?;
        write!(err, "{}", experiments::render_histogram(&h.output.counts, 40))?;
    }
    Ok(())
}

fn heatmap_command(ctx: &Context, m: &ArgMatches, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let seed = ctx.resolve_seed(m.get_one::<u64>("seed").copied());
    let jobs = m.get_one::<usize>("jobs").copied().unwrap_or(ctx.config.jobs);
    let cfg = HeatmapConfig::new(
        *m.get_one::<usize>("max-bits").expect("required"),
        *m.get_one::<f64>("density-step").expect("required"),
        *m.get_one::<u32>("iterations").expect("required"),
        seed,
    )
    .with_parallelism(jobs);
    let backend_name = m.get_one::<String>("backend").unwrap_or(&ctx.config.default_backend);
    let backend = ctx.backends.get(backend_name)?;

    if ctx.config.verbosity > Verbosity::Quiet {
        writeln!(err, "seed: {seed}  backend: {backend_name}  jobs: {jobs}")?;
    }
    let started = std::time::Instant::now();
    let grid = experiments::run_heatmap(&cfg, backend)?;
    let elapsed = started.elapsed();
    let art = experiments::render_ascii(&grid);

    match m.get_one::<PathBuf>("out") {
        Some(path) => {
            experiments::write_heatmap_csv(&grid, path)?;
            write!(out, "{art}")?;
            if ctx.config.verbosity > Verbosity::Quiet {
                writeln!(err, "wrote {} in {:.1?}", path.display(), elapsed)?;
            }
        }
        None => {
            write!(out, "{}", experiments::heatmap_csv(&grid))?;
            if ctx.config.verbosity > Verbosity::Quiet {
                write!(err, "{art}")?;
                writeln!(err, "finished in {:.1?}", elapsed)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        let config = CliConfig {
            seed: SeedPolicy::Fixed(11),
            jobs: 2,
            ..CliConfig::default()
        };
        Context::shipped(config).unwrap()
    }

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["qsolver"];
        argv.extend_from_slice(args);
        let code = batch_command(argv, &ctx(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bv_batch_prints_key() {
        let (code, out, _) = run(&["run", "bernstein-vazirani", "--key", "101", "--seed", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("recovered key: 101"), "{out}");
    }

    #[test]
    fn bb84_batch_prints_trace_and_verdict() {
        let (code, out, _) = run(&["run", "bb84", "--message", "hi", "--density", "1.0", "--seed", "3"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l.starts_with("verdict: ")), "{out}");
        assert!(out.contains("| sender |"));
    }

    #[test]
    fn validation_error_names_parameter() {
        let (code, _, err) = run(&["run", "qrand", "--n", "abc"]);
        assert_eq!(code, 1);
        assert!(err.contains("'n'"), "{err}");
    }

    #[test]
    fn unknown_flag_prints_usage() {
        let (code, _, err) = run(&["run", "qrand", "--n", "3", "--bogus"]);
        assert_eq!(code, 1);
        assert!(err.contains("Usage"), "{err}");
    }

    #[test]
    fn unknown_backend_is_a_user_error() {
        let (code, _, err) = run(&["run", "qrand", "--n", "3", "--backend", "ibmq"]);
        assert_eq!(code, 1);
        assert!(err.contains("unknown backend"));
    }

    #[test]
    fn listings() {
        let (code, out, _) = run(&["backends"]);
        assert_eq!(code, 0);
        assert!(out.contains("local_statevector"));
        let (_, out, _) = run(&["algorithms"]);
        for name in ["qrand", "bernstein-vazirani", "bb84"] {
            assert!(out.contains(name));
        }
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("experiment"));
    }

    #[test]
    fn histogram_csv_on_stdout() {
        let (code, out, _) = run(&[
            "experiment", "histogram", "--algorithm", "qrand", "--params", "2", "--shots", "400", "--seed", "4",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("outcome,count\n"));
        assert_eq!(out.lines().count(), 5);
    }

    #[test]
    fn heatmap_to_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.csv");
        let (code, out, _) = run(&[
            "experiment", "bb84-heatmap", "--max-bits", "2", "--density-step", "0.5", "--iterations", "3",
            "--seed", "1", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("message length"));
        let table = experiments::parse_heatmap_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(table.lengths, vec![1, 2]);
    }

    #[test]
    fn replay_command_quotes_text() {
        let c = ctx();
        let alg = c.algorithms.get("bb84").unwrap();
        let p = parse_for(alg, &["hello world", "0.5"]).unwrap();
        assert_eq!(
            replay_command(alg, &p, "local_statevector", 1, 9),
            "qsolver run bb84 --message 'hello world' --density 0.5 --seed 9 --backend local_statevector"
        );
    }

    #[test]
    fn config_backend_must_exist() {
        let config = CliConfig {
            default_backend: "nope".into(),
            ..CliConfig::default()
        };
        assert!(Context::shipped(config).is_err());
    }
}
