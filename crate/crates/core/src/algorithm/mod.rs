//! Algorithm descriptors and the registry that groups them.
//!
//! An algorithm is anything implementing [`Algorithm`]. Registering one is
//! enough for it to be listed, parameterised and run from the CLI.

mod params;

use std::sync::Arc;

pub use params::{format_params, parse_params, ParamKind, ParamSpec, ParamValue, Params};

use crate::backend::{Backend, BackendRegistry};
use crate::error::{Error, Result};
use crate::sim::{rng, Circuit, Counts};

/// Output of one algorithm run. `counts` is always populated so single-shot
/// and histogram modes share the same interpretation path.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub text: String,
    pub counts: Counts,
    pub circuit: Option<Circuit>,
    pub seed: u64,
    pub backend: String,
}

pub trait Algorithm: Send + Sync {
    fn name(&self) -> &str;

    fn description(&self) -> &str;

    fn param_specs(&self) -> &[ParamSpec];

    /// Static text on how to read the interpreted result.
    fn explain(&self) -> &str;

    /// The circuit to execute, or `None` for algorithms that drive the
    /// backend themselves and override [`Algorithm::execute`].
    fn build(&self, params: &Params) -> Result<Option<Circuit>>;

    fn interpret(&self, params: &Params, counts: &Counts) -> String;

    fn execute(
        &self,
        params: &Params,
        backend: &dyn Backend,
        shots: u64,
        seed: u64,
    ) -> Result<RunOutput> {
        let circuit = self.build(params)?.ok_or_else(|| {
            Error::validation(self.name(), "algorithm builds no circuit and does not override execute")
        })?;
        let counts = backend.run(&circuit, shots, seed)?;
        Ok(RunOutput {
            text: self.interpret(params, &counts),
            counts,
            circuit: Some(circuit),
            seed,
            backend: backend.info().name.clone(),
        })
    }
}

/// Validates `raw` against the algorithm's parameter specs.
pub fn parse_for<S: AsRef<str>>(algorithm: &dyn Algorithm, raw: &[S]) -> Result<Params> {
    parse_params(algorithm.param_specs(), raw)
}

/// Resolves the backend and seed, then executes. `shots == 1` is the
/// run-once mode.
pub fn run_algorithm(
    algorithm: &dyn Algorithm,
    params: &Params,
    backends: &BackendRegistry,
    backend_name: &str,
    shots: u64,
    seed: Option<u64>,
) -> Result<RunOutput> {
    if shots == 0 {
        return Err(Error::validation("shots", "must be at least 1"));
    }
    let backend = backends.get(backend_name)?;
    let seed = seed.unwrap_or_else(rng::entropy_seed);
    algorithm.execute(params, backend, shots, seed)
}

#[derive(Clone, Default)]
pub struct AlgorithmRegistry {
    algorithms: Vec<Arc<dyn Algorithm>>,
}

impl AlgorithmRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// QRand, Bernstein-Vazirani and BB84, sized for `max_qubits`.
    pub fn shipped(max_qubits: usize) -> Self {
        let mut reg = Self::empty();
        reg.register(Arc::new(crate::qrand::QRand::new(max_qubits)))
            .expect("fresh registry");
        reg.register(Arc::new(crate::bernstein_vazirani::BernsteinVazirani::new(
            max_qubits,
        )))
        .expect("fresh registry");
        reg.register(Arc::new(crate::bb84::Bb84Algorithm::default()))
            .expect("fresh registry");
        reg
    }

    pub fn register(&mut self, algorithm: Arc<dyn Algorithm>) -> Result<()> {
        if self.algorithms.iter().any(|a| a.name() == algorithm.name()) {
            return Err(Error::DuplicateAlgorithm(algorithm.name().to_owned()));
        }
        self.algorithms.push(algorithm);
        Ok(())
    }

    pub fn list(&self) -> Vec<(String, String)> {
        self.algorithms
            .iter()
            .map(|a| (a.name().to_owned(), a.description().to_owned()))
            .collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Algorithm> {
        self.algorithms
            .iter()
            .find(|a| a.name() == name)
            .map(|a| a.as_ref())
            .ok_or_else(|| Error::UnknownAlgorithm(name.to_owned()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Algorithm> {
        self.algorithms.iter().map(|a| a.as_ref())
    }
}
