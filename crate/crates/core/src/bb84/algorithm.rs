use std::fmt::Write as _;

use super::{run_protocol, Bb84Config, Bb84Trace, EveAction, Verdict};
use crate::algorithm::{Algorithm, ParamSpec, Params, RunOutput};
use crate::backend::Backend;
use crate::bits::BitString;
use crate::error::Result;
use crate::sim::rng::derive_seed;
use crate::sim::{Circuit, Counts};

/// Registry entry for BB84. It has no single circuit: [`Algorithm::execute`]
/// drives the protocol, one-qubit circuit by one-qubit circuit.
///
/// Counts are over a one-bit outcome per run: `1` secure, `0` otherwise.
pub struct Bb84Algorithm {
    config: Bb84Config,
    specs: Vec<ParamSpec>,
}

impl Bb84Algorithm {
    pub fn new(config: Bb84Config) -> Self {
        Bb84Algorithm {
            config,
            specs: vec![
                ParamSpec::text("message", "message to send under the one-time pad (UTF-8)", 1, 256),
                ParamSpec::probability("density", "probability that the eavesdropper measures each qubit"),
            ],
        }
    }
}

impl Default for Bb84Algorithm {
    fn default() -> Self {
        Self::new(Bb84Config::default())
    }
}

impl Algorithm for Bb84Algorithm {
    fn name(&self) -> &str {
        "bb84"
    }

    fn description(&self) -> &str {
        "BB84 quantum key distribution with an intercept-resend eavesdropper"
    }

    fn param_specs(&self) -> &[ParamSpec] {
        &self.specs
    }

    fn explain(&self) -> &str {
        "Sender encodes random bits in random Z/X axes, the receiver measures in random axes, \
         and both keep positions where the axes agree. Half of the kept bits are published; \
         any mismatch aborts the run. Otherwise the other half is the one-time pad for the \
         message. With several shots the result is the fraction of secure runs."
    }

    fn build(&self, _params: &Params) -> Result<Option<Circuit>> {
        Ok(None)
    }

    fn interpret(&self, _params: &Params, counts: &Counts) -> String {
        let secure = counts.get("1");
        format!(
            "secure in {secure}/{} runs ({:.1}%)",
            counts.shots(),
            100.0 * secure as f64 / counts.shots().max(1) as f64
        )
    }

    fn execute(&self, params: &Params, backend: &dyn Backend, shots: u64, seed: u64) -> Result<RunOutput> {
        let message = BitString::from_bytes(params.text("message")?.as_bytes());
        let density = params.probability("density")?;
        let mut counts = Counts::new(1);

        let text = if shots == 1 {
            let trace = run_protocol(&message, density, backend, seed, self.config)?;
            counts.record(outcome(&trace))?;
            format_trace(&trace)
        } else {
            let (mut aborted, mut short) = (0u64, 0u64);
            for i in 0..shots {
                let trace = run_protocol(&message, density, backend, derive_seed(seed, &[i]), self.config)?;
                match trace.verdict {
                    Verdict::Aborted => aborted += 1,
                    Verdict::KeyTooShort => short += 1,
                    Verdict::Secure => {}
                }
                counts.record(outcome(&trace))?;
            }
            format!(
                "{}\naborted: {aborted}, key_too_short: {short}",
                self.interpret(params, &counts)
            )
        };

        Ok(RunOutput {
            text,
            counts,
            circuit: None,
            seed,
            backend: backend.info().name.clone(),
        })
    }
}

fn outcome(trace: &Bb84Trace) -> &'static str {
    if trace.verdict == Verdict::Secure {
        "1"
    } else {
        "0"
    }
}

fn bit(b: bool) -> char {
    if b {
        '1'
    } else {
        '0'
    }
}

/// Per-qubit table followed by the verdict and, when secure, the message
/// transport.
pub fn format_trace(t: &Bb84Trace) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "qubits sent: {}  (attempt {}, seed {})",
        t.transmitted_count, t.attempts, t.seed
    );
    let _ = writeln!(out, "{:>5} | sender | eve    | receiver | kept", "qubit");
    for i in 0..t.transmitted_count {
        let eve = match t.eve_actions[i] {
            EveAction::Untouched => "-".to_owned(),
            EveAction::Measured { axis, bit: b } => format!("{} {}", axis, bit(b)),
        };
        let kept = if t.published_positions.contains(&i) {
            "published"
        } else if t.sifted_positions.contains(&i) {
            "key"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "{i:>5} |  {} {}   | {eve:<6} |   {} {}    | {kept}",
            t.sender_axes[i],
            bit(t.sender_bits[i]),
            t.receiver_axes[i],
            bit(t.receiver_bits[i]),
        );
    }
    let mismatched = t
        .published_positions
        .iter()
        .filter(|&&i| t.sender_bits[i] != t.receiver_bits[i])
        .count();
    let _ = writeln!(
        out,
        "sifted: {}  published: {}  mismatches: {mismatched}  intercepted: {}",
        t.sifted_positions.len(),
        t.published_positions.len(),
        t.intercepted()
    );
    if let (Some(key), Some(ct), Some(dec)) = (&t.shared_key, &t.ciphertext, &t.decrypted) {
        let _ = writeln!(out, "shared key: {key}");
        let _ = writeln!(out, "message bits:   {}", t.message);
        let _ = writeln!(out, "ciphertext:     {ct}");
        let _ = writeln!(out, "decrypted bits: {dec}");
        let _ = writeln!(
            out,
            "decrypted message: {}",
            String::from_utf8_lossy(&dec.to_bytes())
        );
    }
    let _ = writeln!(out, "verdict: {}", t.verdict);
    out
}
