//! Quantum algorithm toolkit on an embedded statevector simulator.
//!
//! The pieces mirror a small plugin architecture:
//!
//! - [`sim`]: statevector simulation over {H, X, CNOT}, generic over the
//!   real scalar type.
//! - [`backend`]: named execution backends (local simulators only).
//! - [`algorithm`]: algorithm descriptors, parameter validation and the
//!   registry the CLI reads from.
//! - [`qrand`], [`bernstein_vazirani`], [`bb84`]: the shipped algorithms.
//! - [`experiments`]: repeated-run histograms and the BB84 interception
//!   heatmap.
//! - [`cli`]: interactive menu and scriptable subcommands.
//!
//! Bit order: qubit 0 is the least significant bit of amplitude indices and
//! outcomes; bitstrings print the most significant qubit first.

pub mod algorithm;
pub mod backend;
pub mod bb84;
pub mod bernstein_vazirani;
pub mod bits;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod qrand;
pub mod sim;

pub use error::{Error, Result};
pub use sim::{Circuit, Counts, Gate, Scalar};

/// Double-precision amplitude.
pub type Amplitude = num_complex::Complex<f64>;
/// Double-precision statevector, used by the default backend.
pub type Statevector = sim::Statevector<f64>;
/// Single-precision statevector.
pub type Statevector32 = sim::Statevector<f32>;
