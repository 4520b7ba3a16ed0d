use std::fmt::Write as _;

use super::Gate;
use crate::error::{Error, Result};

/// Ordered gate list over `num_qubits` qubits, followed by a terminal
/// measurement of the qubits in `measured`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    measured: Vec<usize>,
}

impl Circuit {
    /// Empty circuit that measures every qubit.
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            gates: Vec::new(),
            measured: (0..num_qubits).collect(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Measured qubits in ascending order. The outcome bitstring puts the
    /// highest of these first.
    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    pub fn measures_all(&self) -> bool {
        self.measured.len() == self.num_qubits
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.push(Gate::H(q))
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.push(Gate::X(q))
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.push(Gate::Cnot { control, target })
    }

    /// Restricts the terminal measurement to `qubits`.
    pub fn set_measured(&mut self, qubits: impl IntoIterator<Item = usize>) -> Result<&mut Self> {
        let mut measured: Vec<usize> = qubits.into_iter().collect();
        measured.sort_unstable();
        if let Some(w) = measured.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateOperand(w[0]));
        }
        if let Some(&q) = measured.iter().find(|&&q| q >= self.num_qubits) {
            return Err(Error::QubitIndex {
                index: q,
                num_qubits: self.num_qubits,
            });
        }
        if measured.is_empty() {
            return Err(Error::validation("measured", "at least one qubit must be measured"));
        }
        self.measured = measured;
        Ok(self)
    }

    /// Appends every gate of `other`, which must not be wider than `self`.
    pub fn extend_from(&mut self, other: &Circuit) -> Result<&mut Self> {
        for g in other.gates() {
            self.push(*g)?;
        }
        Ok(self)
    }

    pub fn count_gates(&self, pred: impl Fn(&Gate) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g)).count()
    }

    /// Text diagram, one row per qubit (q0 on top), one column per gate.
    pub fn draw(&self) -> String {
        let label_width = format!("q{}", self.num_qubits.saturating_sub(1)).len();
        let mut rows: Vec<String> = (0..self.num_qubits)
            .map(|q| format!("{:>w$}: -", format!("q{q}"), w = label_width))
            .collect();

        for gate in &self.gates {
            let cells: Vec<&str> = (0..self.num_qubits)
                .map(|q| match *gate {
                    Gate::H(t) if t == q => "[H]",
                    Gate::X(t) if t == q => "[X]",
                    Gate::Cnot { control, .. } if control == q => "-@-",
                    Gate::Cnot { target, .. } if target == q => "(+)",
                    Gate::Cnot { control, target }
                        if q > control.min(target) && q < control.max(target) =>
                    {
                        "-|-"
                    }
                    _ => "---",
                })
                .collect();
            for (row, cell) in rows.iter_mut().zip(cells) {
                row.push_str(cell);
                row.push('-');
            }
        }

        if !self.gates.is_empty() || !self.measured.is_empty() {
            for (q, row) in rows.iter_mut().enumerate() {
                row.push_str(if self.measured.binary_search(&q).is_ok() {
                    "[M]-"
                } else {
                    "----"
                });
            }
        }

        let mut out = String::new();
        for row in rows {
            let _ = writeln!(out, "{row}");
        }
        out
    }
}
