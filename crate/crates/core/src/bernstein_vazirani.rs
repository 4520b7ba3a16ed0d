//! Bernstein-Vazirani: recover a hidden bitstring `s` from the parity oracle
//! `f(x) = s·x mod 2` with one quantum query, against `n` classical ones.
//!
//! Register layout for a key of length `n`: the key character at position
//! `i` (from the left) lives on qubit `n - 1 - i`, and the ancilla is qubit
//! `n`. With qubit 0 as the least significant bit, the measured bitstring
//! then reads exactly like the key as typed.

use num_complex::Complex64;

use crate::algorithm::{Algorithm, ParamSpec, Params};
use crate::backend::BackendRegistry;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::sim::{Circuit, Counts, Gate, Statevector};

/// Hidden key, at least one bit long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvKey(BitString);

impl BvKey {
    pub fn new(bits: BitString) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::validation("key", "must contain at least one bit"));
        }
        Ok(BvKey(bits))
    }

    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Qubit carrying key position `i`.
    pub fn qubit_of(&self, i: usize) -> usize {
        self.len() - 1 - i
    }

    pub fn ancilla(&self) -> usize {
        self.len()
    }
}

impl std::str::FromStr for BvKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: BitString = s
            .parse()
            .map_err(|_| Error::validation("key", format!("'{s}' is not a bitstring")))?;
        BvKey::new(bits)
    }
}

pub fn classical_oracle(s: &BvKey, x: &BitString) -> Result<bool> {
    s.bits().dot_mod2(x)
}

/// Black-box oracle wrapper that counts its invocations.
pub struct CountingOracle<F> {
    f: F,
    calls: usize,
}

impl<F: FnMut(&BitString) -> bool> CountingOracle<F> {
    pub fn new(f: F) -> Self {
        CountingOracle { f, calls: 0 }
    }

    pub fn query(&mut self, x: &BitString) -> bool {
        self.calls += 1;
        (self.f)(x)
    }

    pub fn calls(&self) -> usize {
        self.calls
    }
}

/// Recovers the key bit by bit from the unit vectors: `f(e_i) = s_i`.
pub fn classical_solve<F: FnMut(&BitString) -> bool>(
    oracle: &mut CountingOracle<F>,
    n: usize,
) -> Result<BvKey> {
    BvKey::new((0..n).map(|i| oracle.query(&BitString::unit(n, i))).collect())
}

/// The phase oracle: one CNOT from each set key bit onto the ancilla.
pub fn oracle_block(s: &BvKey) -> Vec<Gate> {
    s.bits()
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| Gate::Cnot {
            control: s.qubit_of(i),
            target: s.ancilla(),
        })
        .collect()
}

/// X on the ancilla, H on all qubits, oracle, H on the inputs, then measure
/// the inputs only.
pub fn bv_circuit(s: &BvKey) -> Result<Circuit> {
    let n = s.len();
    let mut c = Circuit::new(n + 1);
    c.x(n)?;
    for q in 0..=n {
        c.h(q)?;
    }
    for g in oracle_block(s) {
        c.push(g)?;
    }
    for q in 0..n {
        c.h(q)?;
    }
    c.set_measured(0..n)?;
    Ok(c)
}

/// Amplitudes of the input register of an `(n + 1)`-qubit state whose
/// ancilla (qubit `n`) is in |−⟩, obtained by projecting onto ⟨−|.
pub fn input_register_amplitudes(state: &Statevector<f64>) -> Vec<Complex64> {
    let n = state.num_qubits() - 1;
    let amps = state.amplitudes();
    let anc = 1usize << n;
    (0..anc)
        .map(|x| (amps[x] - amps[x | anc]) * std::f64::consts::FRAC_1_SQRT_2)
        .collect()
}

/// Index of the basis state |s⟩ in the input register.
pub fn key_index(s: &BvKey) -> usize {
    s.bits()
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0, |acc, (i, _)| acc | 1 << s.qubit_of(i))
}

/// Runs the single-query circuit once and returns the measured key.
pub fn bv_run(s: &BvKey, backends: &BackendRegistry, backend_name: &str, seed: u64) -> Result<BitString> {
    let circuit = bv_circuit(s)?;
    let exec = backends.execute(backend_name, &circuit, 1, Some(seed))?;
    let (outcome, _) = exec.counts.most_frequent().expect("one shot recorded");
    outcome.parse()
}

pub struct BernsteinVazirani {
    specs: Vec<ParamSpec>,
}

impl BernsteinVazirani {
    pub fn new(max_qubits: usize) -> Self {
        BernsteinVazirani {
            specs: vec![ParamSpec::bitstring(
                "key",
                "hidden key to encode in the oracle, e.g. 1011",
                1,
                max_qubits.saturating_sub(1).max(1),
            )],
        }
    }
}

impl Algorithm for BernsteinVazirani {
    fn name(&self) -> &str {
        "bernstein-vazirani"
    }

    fn description(&self) -> &str {
        "Bernstein-Vazirani: recover a hidden bitstring with one oracle query"
    }

    fn param_specs(&self) -> &[ParamSpec] {
        &self.specs
    }

    fn explain(&self) -> &str {
        "The key is hidden in a CNOT phase oracle. After one query sandwiched between \
         Hadamard layers the input register holds the key exactly, so every shot reads \
         back the key. A classical solver needs one query per key bit."
    }

    fn build(&self, params: &Params) -> Result<Option<Circuit>> {
        let key = BvKey::new(params.bits("key")?.clone())?;
        bv_circuit(&key).map(Some)
    }

    fn interpret(&self, params: &Params, counts: &Counts) -> String {
        let Some((recovered, hits)) = counts.most_frequent() else {
            return "no measurements".to_owned();
        };
        let p = hits as f64 / counts.shots() as f64;
        let verdict = match params.bits("key") {
            Ok(k) if k.to_string() == recovered => "matches the hidden key",
            Ok(_) => "does NOT match the hidden key",
            Err(_) => "",
        };
        let mut text = format!("recovered key: {recovered}\n");
        text.push_str(&format!(
            "observed in {hits}/{} shots ({:.1}%), {verdict}; quantum queries: 1, classical queries: {}",
            counts.shots(),
            100.0 * p,
            recovered.len()
        ));
        text
    }
}
