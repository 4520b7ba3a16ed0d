use std::fmt;

use super::{Scalar, Statevector};
use crate::error::{Error, Result};

/// The fixed gate set: exactly what QRand, Bernstein-Vazirani and BB84 need.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    X(usize),
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    /// Checks operand indices against a register of `num_qubits`.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::QubitIndex {
                    index: q,
                    num_qubits,
                });
            }
        }
        if let Gate::Cnot { control, target } = *self {
            if control == target {
                return Err(Error::DuplicateOperand(control));
            }
        }
        Ok(())
    }

    /// Applies the gate in place.
    pub fn apply<T: Scalar>(&self, state: &mut Statevector<T>) -> Result<()> {
        self.validate(state.num_qubits())?;
        let amps = state.amplitudes_mut();
        match *self {
            Gate::H(q) => {
                let bit = 1usize << q;
                let s = T::FRAC_1_SQRT_2();
                for i in 0..amps.len() {
                    if i & bit == 0 {
                        let a = amps[i];
                        let b = amps[i | bit];
                        amps[i] = (a + b).scale(s);
                        amps[i | bit] = (a - b).scale(s);
                    }
                }
            }
            Gate::X(q) => {
                let bit = 1usize << q;
                for i in 0..amps.len() {
                    if i & bit == 0 {
                        amps.swap(i, i | bit);
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let c = 1usize << control;
                let t = 1usize << target;
                for i in 0..amps.len() {
                    if i & c != 0 && i & t == 0 {
                        amps.swap(i, i | t);
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "h q{q}"),
            Gate::X(q) => write!(f, "x q{q}"),
            Gate::Cnot { control, target } => write!(f, "cx q{control}, q{target}"),
        }
    }
}

/// Applies `gate` to a copy of `state`.
pub fn apply_gate<T: Scalar>(state: &Statevector<T>, gate: Gate) -> Result<Statevector<T>> {
    let mut next = state.clone();
    gate.apply(&mut next)?;
    Ok(next)
}
