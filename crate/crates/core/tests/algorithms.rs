mod common;

use qsolver::backend::{BackendRegistry, DEFAULT_BACKEND};
use qsolver::bernstein_vazirani::{
    bv_circuit, bv_run, classical_oracle, classical_solve, input_register_amplitudes, key_index, oracle_block,
    BvKey, CountingOracle,
};
use qsolver::bits::BitString;
use qsolver::qrand::{qrand_circuit, qrand_value};
use qsolver::sim::{self, format_bits, rng, Gate, Statevector, DEFAULT_QUBIT_CAP};
use rand::Rng;

use common::chi_square_p;

fn all_keys(n: usize) -> impl Iterator<Item = BvKey> {
    (0..1usize << n).map(move |k| format_bits(k, n).parse().unwrap())
}

#[test]
fn phase_oracle_identity_up_to_six_bits() {
    for n in 1..=6 {
        for s in all_keys(n) {
            let mut state = Statevector::<f64>::zero(n + 1).unwrap();
            Gate::X(n).apply(&mut state).unwrap();
            for q in 0..=n {
                Gate::H(q).apply(&mut state).unwrap();
            }
            let before = input_register_amplitudes(&state);
            for g in oracle_block(&s) {
                g.apply(&mut state).unwrap();
            }
            let after = input_register_amplitudes(&state);
            for x in 0..1usize << n {
                let xs: BitString = format_bits(x, n).parse().unwrap();
                let sign = if classical_oracle(&s, &xs).unwrap() { -1.0 } else { 1.0 };
                assert!((after[x] - before[x] * sign).norm() < 1e-12, "n={n} s={} x={x}", s.bits());
            }
        }
    }
}

#[test]
fn single_oracle_block_with_popcount_cnots() {
    for s in all_keys(5) {
        let c = bv_circuit(&s).unwrap();
        let cnots: Vec<usize> = c
            .gates()
            .iter()
            .enumerate()
            .filter(|(_, g)| matches!(g, Gate::Cnot { .. }))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(cnots.len(), s.bits().count_ones());
        // contiguous: one query
        assert!(cnots.windows(2).all(|w| w[1] == w[0] + 1));
    }
}

#[test]
fn quantum_query_beats_classical() {
    let reg = BackendRegistry::default();
    let mut r = rng::seeded(404);
    for n in [1, 4, 9, 16] {
        let s = BvKey::new((0..n).map(|_| r.gen::<bool>()).collect()).unwrap();
        let mut oracle = CountingOracle::new(|x: &BitString| classical_oracle(&s, x).unwrap());
        assert_eq!(classical_solve(&mut oracle, n).unwrap(), s);
        assert_eq!(oracle.calls(), n);
        let circuit = bv_circuit(&s).unwrap();
        let oracle_blocks = usize::from(circuit.gates().iter().any(|g| matches!(g, Gate::Cnot { .. })));
        assert!(oracle_blocks <= 1);
        assert_eq!(bv_run(&s, &reg, DEFAULT_BACKEND, n as u64).unwrap(), *s.bits());
    }
}

#[test]
fn bv_recovery_against_classical_ground_truth() {
    let reg = BackendRegistry::default();
    let mut r = rng::seeded(2718);
    for trial in 0..200 {
        let n = r.gen_range(1..=10);
        let s = BvKey::new((0..n).map(|_| r.gen::<bool>()).collect()).unwrap();
        let mut oracle = CountingOracle::new(|x: &BitString| classical_oracle(&s, x).unwrap());
        let truth = classical_solve(&mut oracle, n).unwrap();
        assert_eq!(bv_run(&s, &reg, DEFAULT_BACKEND, trial).unwrap(), *truth.bits());
    }
}

#[test]
fn bv_pre_measurement_state_is_key() {
    for s in all_keys(4) {
        let state = sim::simulate::<f64>(&bv_circuit(&s).unwrap(), DEFAULT_QUBIT_CAP).unwrap();
        let amps = input_register_amplitudes(&state);
        let idx = key_index(&s);
        for (i, a) in amps.iter().enumerate() {
            let want = if i == idx { 1.0 } else { 0.0 };
            assert!((a.re - want).abs() < 1e-12 && a.im.abs() < 1e-12);
        }
    }
}

#[test]
fn qrand_amplitudes_are_uniform() {
    for n in 1..=10 {
        let s = sim::simulate::<f64>(&qrand_circuit(n, DEFAULT_QUBIT_CAP).unwrap(), DEFAULT_QUBIT_CAP).unwrap();
        let want = 2f64.powf(-(n as f64) / 2.0);
        assert!(s.amplitudes().iter().all(|a| (a.re - want).abs() < 1e-12 && a.im.abs() < 1e-12));
    }
}

#[test]
fn qrand_uniform_over_seeds() {
    let reg = BackendRegistry::default();
    for n in 1..=4usize {
        let bins = 1usize << n;
        let samples = 100 * bins as u64;
        let mut observed = vec![0u64; bins];
        for seed in 0..samples {
            let v = qrand_value(n, &reg, DEFAULT_BACKEND, rng::derive_seed(n as u64, &[seed])).unwrap();
            observed[v as usize] += 1;
        }
        let p = chi_square_p(&observed, &vec![1.0 / bins as f64; bins]);
        assert!(p > 0.001, "n={n} p={p} {observed:?}");
    }
}
