#![allow(dead_code)]

use num_complex::Complex64;
use qsolver::Gate;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Dense 2^n x 2^n unitary for one gate, built entry by entry from the
/// single-qubit matrices. Independent of the crate's in-place kernels.
#[allow(clippy::needless_range_loop)]
pub fn gate_matrix(gate: Gate, n: usize) -> Vec<Vec<Complex64>> {
    let dim = 1usize << n;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut m = vec![vec![zero; dim]; dim];
    for row in 0..dim {
        for col in 0..dim {
            m[row][col] = match gate {
                Gate::H(q) | Gate::X(q) => {
                    // identity on every other qubit
                    if (row ^ col) & !(1 << q) != 0 {
                        zero
                    } else {
                        let (a, b) = ((row >> q) & 1, (col >> q) & 1);
                        match gate {
                            Gate::H(_) => Complex64::new(if a == 1 && b == 1 { -r } else { r }, 0.0),
                            _ => if a != b { one } else { zero },
                        }
                    }
                }
                Gate::Cnot { control, target } => {
                    let image = if (col >> control) & 1 == 1 { col ^ (1 << target) } else { col };
                    if row == image { one } else { zero }
                }
            };
        }
    }
    m
}

pub fn mat_vec(m: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Upper-tail p-value of Pearson's chi-square statistic.
pub fn chi_square_p(observed: &[u64], expected_prob: &[f64]) -> f64 {
    let n: u64 = observed.iter().sum();
    let mut stat = 0.0;
    let mut bins = 0;
    for (&o, &p) in observed.iter().zip(expected_prob) {
        if p <= 0.0 {
            assert_eq!(o, 0, "outcome with zero probability observed");
            continue;
        }
        let e = p * n as f64;
        stat += (o as f64 - e).powi(2) / e;
        bins += 1;
    }
    if bins < 2 {
        return 1.0;
    }
    1.0 - ChiSquared::new((bins - 1) as f64).unwrap().cdf(stat)
}

/// Three binomial standard deviations around `p` for `n` trials.
pub fn three_sigma(p: f64, n: usize) -> f64 {
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

fn binomial_pmf(n: usize, k: usize) -> f64 {
    // C(n, k) / 2^n in log space
    let ln_c: f64 = (1..=k).map(|i| ((n - k + i) as f64 / i as f64).ln()).sum();
    (ln_c - n as f64 * std::f64::consts::LN_2).exp()
}

/// Exact probability that a half-key BB84 run on a `length`-bit message
/// ends secure, by enumerating the sifted length.
///
/// Per attempt with m = factor·length qubits: the sifted count L is
/// Binomial(m, 1/2); L < 2 or an unpublished half shorter than the message
/// is a shortfall and triggers a retry; otherwise each of the ⌈L/2⌉
/// published bits mismatches independently with probability density/4.
pub fn exact_secure_probability(length: usize, density: f64, factor: usize, max_retries: u32) -> f64 {
    let m = factor * length;
    let mismatch = density / 4.0;
    let (mut secure, mut retry) = (0.0, 0.0);
    for l in 0..=m {
        let p = binomial_pmf(m, l);
        if l < 2 {
            retry += p;
            continue;
        }
        let published = l.div_ceil(2);
        let clean = (1.0 - mismatch).powi(published as i32);
        if l - published >= length {
            secure += p * clean;
        } else {
            retry += p * clean;
        }
    }
    (0..=max_retries).map(|a| secure * retry.powi(a as i32)).sum()
}
