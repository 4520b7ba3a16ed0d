//! Quantum random numbers: Hadamard on every qubit of |0…0⟩, then measure.

use std::fmt::Write as _;

use crate::algorithm::{Algorithm, ParamSpec, Params};
use crate::backend::BackendRegistry;
use crate::error::{Error, Result};
use crate::sim::{Circuit, Counts};

/// Uniform superposition circuit on `n` qubits, all measured.
pub fn qrand_circuit(n: usize, max_qubits: usize) -> Result<Circuit> {
    if n == 0 || n > max_qubits {
        return Err(Error::validation(
            "n",
            format!("{n} outside [1, {max_qubits}]"),
        ));
    }
    let mut c = Circuit::new(n);
    for q in 0..n {
        c.h(q)?;
    }
    Ok(c)
}

/// One random integer in `[0, 2^n - 1]`.
pub fn qrand_value(n: usize, backends: &BackendRegistry, backend_name: &str, seed: u64) -> Result<u64> {
    let max = backends.get(backend_name)?.info().max_qubits;
    let circuit = qrand_circuit(n, max)?;
    let exec = backends.execute(backend_name, &circuit, 1, Some(seed))?;
    let (outcome, _) = exec.counts.most_frequent().expect("one shot recorded");
    Ok(u64::from_str_radix(outcome, 2).expect("outcome is binary"))
}

pub struct QRand {
    specs: Vec<ParamSpec>,
}

impl QRand {
    pub fn new(max_qubits: usize) -> Self {
        // u64 holds the result
        let max = max_qubits.min(64) as u64;
        QRand {
            specs: vec![ParamSpec::natural("n", "number of random bits (qubits)", 1, max)],
        }
    }
}

impl Algorithm for QRand {
    fn name(&self) -> &str {
        "qrand"
    }

    fn description(&self) -> &str {
        "Quantum random number generator: uniform integer in [0, 2^n - 1]"
    }

    fn param_specs(&self) -> &[ParamSpec] {
        &self.specs
    }

    fn explain(&self) -> &str {
        "Each qubit is put in equal superposition by a Hadamard gate and measured. \
         The measured bits, read most significant qubit first, form the random integer. \
         With several shots the histogram should be flat over all 2^n outcomes."
    }

    fn build(&self, params: &Params) -> Result<Option<Circuit>> {
        let n = params.natural("n")? as usize;
        qrand_circuit(n, usize::MAX).map(Some)
    }

    fn interpret(&self, _params: &Params, counts: &Counts) -> String {
        if counts.shots() == 1 {
            let (bits, _) = counts.most_frequent().expect("one shot");
            let value = u64::from_str_radix(bits, 2).unwrap_or(0);
            return format!("random number: {value} (binary {bits})");
        }
        let mut out = format!(
            "distribution of {} samples over {} observed values:\n",
            counts.shots(),
            counts.len()
        );
        for (bits, n) in counts.iter() {
            let value = u64::from_str_radix(bits, 2).unwrap_or(0);
            let _ = writeln!(out, "{value:>8} ({bits}): {n}");
        }
        out
    }
}
