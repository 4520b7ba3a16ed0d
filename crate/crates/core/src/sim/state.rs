use num_complex::Complex;
use rand::Rng;

use super::Scalar;
use crate::error::{Error, Result};

/// Default upper bound on register width (2^24 amplitudes).
pub const DEFAULT_QUBIT_CAP: usize = 24;

/// Dense amplitude vector over `num_qubits` qubits.
///
/// Qubit `k` is bit `k` of the amplitude index, so qubit 0 is the least
/// significant bit. Bitstrings are rendered most significant qubit first.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector<T: Scalar> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Scalar> Statevector<T> {
    /// |0…0⟩ on `n` qubits, bounded by [`DEFAULT_QUBIT_CAP`].
    pub fn zero(n: usize) -> Result<Self> {
        Self::zero_with_cap(n, DEFAULT_QUBIT_CAP)
    }

    pub fn zero_with_cap(n: usize, cap: usize) -> Result<Self> {
        Self::basis_with_cap(n, 0, cap)
    }

    /// Computational basis state |index⟩.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        Self::basis_with_cap(n, index, DEFAULT_QUBIT_CAP)
    }

    fn basis_with_cap(n: usize, index: usize, cap: usize) -> Result<Self> {
        if n == 0 || n > cap {
            return Err(Error::Capacity {
                requested: n,
                limit: cap,
            });
        }
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::QubitIndex {
                index,
                num_qubits: n,
            });
        }
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); dim];
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(Statevector {
            num_qubits: n,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes. The length must be a power of two of at least 2
    /// and the vector must be normalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::validation(
                "amplitudes",
                format!("length {len} is not a power of two >= 2"),
            ));
        }
        let state = Statevector {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        if (state.norm_sqr() - 1.0).abs() > T::NORM_TOLERANCE {
            return Err(Error::validation("amplitudes", "state is not normalized"));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr().to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr().to_f64().unwrap_or(0.0))
            .collect()
    }

    /// Draws one basis index with probability |amplitude|^2.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        sample_from_cdf(&cumulative(&self.probabilities()), rng)
    }

    /// Samples a full-register measurement, rendered most significant qubit first.
    pub fn sample_measurement<R: Rng + ?Sized>(&self, rng: &mut R) -> String {
        format_bits(self.sample_index(rng), self.num_qubits)
    }
}

pub(crate) fn cumulative(probabilities: &[f64]) -> Vec<f64> {
    probabilities
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect()
}

pub(crate) fn sample_from_cdf<R: Rng + ?Sized>(cdf: &[f64], rng: &mut R) -> usize {
    let total = *cdf.last().expect("non-empty distribution");
    let u = rng.gen::<f64>() * total;
    let idx = cdf.partition_point(|&c| c <= u);
    if idx < cdf.len() {
        return idx;
    }
    // rounding pushed u past the last bucket: take the last index with mass
    let mut i = cdf.len() - 1;
    while i > 0 && cdf[i] == cdf[i - 1] {
        i -= 1;
    }
    i
}

/// Renders the low `width` bits of `index`, most significant first.
pub fn format_bits(index: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|k| if index >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}
