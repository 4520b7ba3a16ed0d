//! Statevector simulation of small circuits over the {H, X, CNOT} gate set.

mod circuit;
mod counts;
mod gate;
pub mod rng;
mod scalar;
mod state;

pub use circuit::Circuit;
pub use counts::Counts;
pub use gate::{apply_gate, Gate};
pub use scalar::Scalar;
pub use state::{format_bits, Statevector, DEFAULT_QUBIT_CAP};

use crate::error::{Error, Result};

/// Applies every gate of `circuit` to |0…0⟩ and returns the final state,
/// without measuring.
pub fn simulate<T: Scalar>(circuit: &Circuit, cap: usize) -> Result<Statevector<T>> {
    let mut state = Statevector::zero_with_cap(circuit.num_qubits(), cap)?;
    for gate in circuit.gates() {
        gate.apply(&mut state)?;
    }
    Ok(state)
}

/// Runs `circuit` from the zero state and samples `shots` terminal
/// measurements with a ChaCha8 stream seeded by `seed`.
pub fn run<T: Scalar>(circuit: &Circuit, shots: u64, seed: u64, cap: usize) -> Result<Counts> {
    if shots == 0 {
        return Err(Error::validation("shots", "must be at least 1"));
    }
    let state = simulate::<T>(circuit, cap)?;
    let cdf = state::cumulative(&state.probabilities());
    let measured = circuit.measured();
    let mut rng = rng::seeded(seed);
    let mut counts = Counts::new(measured.len());
    let mut by_index = std::collections::BTreeMap::<usize, u64>::new();
    for _ in 0..shots {
        *by_index
            .entry(state::sample_from_cdf(&cdf, &mut rng))
            .or_insert(0) += 1;
    }
    for (index, n) in by_index {
        let outcome: String = measured
            .iter()
            .rev()
            .map(|&q| if index >> q & 1 == 1 { '1' } else { '0' })
            .collect();
        counts.record_n(&outcome, n)?;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_always_zero() {
        let c = Circuit::new(1);
        let counts = run::<f64>(&c, 100, 1, DEFAULT_QUBIT_CAP).unwrap();
        assert_eq!(counts.get("0"), 100);
        assert_eq!(counts.len(), 1);
    }

    #[test]
    fn x_circuit_always_one() {
        let mut c = Circuit::new(1);
        c.x(0).unwrap();
        let counts = run::<f64>(&c, 50, 1, DEFAULT_QUBIT_CAP).unwrap();
        assert_eq!(counts.get("1"), 50);
    }

    #[test]
    fn hadamard_counts_within_five_sigma() {
        // sd of Binomial(1e4, 1/2) is 50; 5 sd gives [4750, 5250] so the
        // [4700, 5300] window is conservative.
        let mut c = Circuit::new(1);
        c.h(0).unwrap();
        let counts = run::<f64>(&c, 10_000, 77, DEFAULT_QUBIT_CAP).unwrap();
        for k in ["0", "1"] {
            let n = counts.get(k);
            assert!((4700..=5300).contains(&n), "{k}: {n}");
        }
    }

    #[test]
    fn zero_shots_rejected() {
        assert!(run::<f64>(&Circuit::new(1), 0, 1, DEFAULT_QUBIT_CAP).is_err());
    }

    #[test]
    fn partial_measurement_marginalises() {
        // q0 flipped, q1 in superposition, only q0 measured
        let mut c = Circuit::new(2);
        c.x(0).unwrap().h(1).unwrap().set_measured([0]).unwrap();
        let counts = run::<f64>(&c, 200, 3, DEFAULT_QUBIT_CAP).unwrap();
        assert_eq!(counts.width(), 1);
        assert_eq!(counts.get("1"), 200);
    }

    #[test]
    fn measured_bits_ordered_msb_first() {
        let mut c = Circuit::new(3);
        c.x(0).unwrap();
        let counts = run::<f64>(&c, 5, 0, DEFAULT_QUBIT_CAP).unwrap();
        assert_eq!(counts.get("001"), 5);
    }

    #[test]
    fn simulate_respects_cap() {
        let c = Circuit::new(5);
        assert!(matches!(simulate::<f64>(&c, 4), Err(Error::Capacity { .. })));
    }
}
