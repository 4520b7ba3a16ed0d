//! Execution backends and the registry that names them.
//!
//! Only local simulators ship. A remote backend would implement [`Backend`]
//! and be registered like any other.

use std::marker::PhantomData;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sim::{self, rng, Circuit, Counts, Scalar, DEFAULT_QUBIT_CAP};

pub const DEFAULT_BACKEND: &str = "local_statevector";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackendInfo {
    pub name: String,
    pub description: String,
    pub max_qubits: usize,
    /// Accepts a seed and reproduces results from it.
    pub deterministic: bool,
}

pub trait Backend: Send + Sync {
    fn info(&self) -> &BackendInfo;

    /// Runs `circuit` for `shots` samples. Implementations must be pure in
    /// `(circuit, shots, seed)` when `info().deterministic` is set.
    fn run(&self, circuit: &Circuit, shots: u64, seed: u64) -> Result<Counts>;

    fn check_capacity(&self, circuit: &Circuit) -> Result<()> {
        let limit = self.info().max_qubits;
        if circuit.num_qubits() > limit {
            return Err(Error::Capacity {
                requested: circuit.num_qubits(),
                limit,
            });
        }
        Ok(())
    }
}

/// The embedded statevector simulator at precision `T`.
pub struct LocalStatevector<T: Scalar> {
    info: BackendInfo,
    _scalar: PhantomData<fn() -> T>,
}

impl<T: Scalar> LocalStatevector<T> {
    pub fn new(name: impl Into<String>, description: impl Into<String>, max_qubits: usize) -> Self {
        LocalStatevector {
            info: BackendInfo {
                name: name.into(),
                description: description.into(),
                max_qubits,
                deterministic: true,
            },
            _scalar: PhantomData,
        }
    }
}

impl<T: Scalar> Backend for LocalStatevector<T> {
    fn info(&self) -> &BackendInfo {
        &self.info
    }

    fn run(&self, circuit: &Circuit, shots: u64, seed: u64) -> Result<Counts> {
        self.check_capacity(circuit)?;
        sim::run::<T>(circuit, shots, seed, self.info.max_qubits)
    }
}

/// Counts plus the seed that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub counts: Counts,
    pub seed: u64,
    pub backend: String,
}

/// Named backends in registration order.
#[derive(Clone)]
pub struct BackendRegistry {
    backends: Vec<Arc<dyn Backend>>,
}

impl Default for BackendRegistry {
    fn default() -> Self {
        Self::with_cap(DEFAULT_QUBIT_CAP)
    }
}

impl BackendRegistry {
    /// The shipped local simulators, each limited to `max_qubits`.
    pub fn with_cap(max_qubits: usize) -> Self {
        let mut reg = BackendRegistry { backends: Vec::new() };
        reg.register(Arc::new(LocalStatevector::<f64>::new(
            DEFAULT_BACKEND,
            "Embedded double-precision statevector simulator",
            max_qubits,
        )))
        .expect("fresh registry");
        reg.register(Arc::new(LocalStatevector::<f32>::new(
            "local_statevector_f32",
            "Embedded single-precision statevector simulator",
            max_qubits,
        )))
        .expect("fresh registry");
        reg
    }

    pub fn register(&mut self, backend: Arc<dyn Backend>) -> Result<()> {
        let name = &backend.info().name;
        if self.backends.iter().any(|b| &b.info().name == name) {
            return Err(Error::DuplicateBackend(name.clone()));
        }
        self.backends.push(backend);
        Ok(())
    }

    pub fn list(&self) -> Vec<BackendInfo> {
        self.backends.iter().map(|b| b.info().clone()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Backend> {
        self.backends
            .iter()
            .find(|b| b.info().name == name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownBackend(name.to_owned()))
    }

    /// Runs on the named backend. Without a seed, one is drawn from entropy
    /// and returned in the result so the run can be replayed.
    pub fn execute(
        &self,
        name: &str,
        circuit: &Circuit,
        shots: u64,
        seed: Option<u64>,
    ) -> Result<Execution> {
        let backend = self.get(name)?;
        let seed = seed.unwrap_or_else(rng::entropy_seed);
        let counts = backend.run(circuit, shots, seed)?;
        Ok(Execution {
            counts,
            seed,
            backend: name.to_owned(),
        })
    }
}
