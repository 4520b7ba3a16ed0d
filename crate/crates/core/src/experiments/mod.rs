//! Experimental mode: repeated-run histograms and the BB84 heatmap sweep.

mod heatmap;
mod render;

pub use heatmap::{
    density_axis, heatmap_csv, parse_heatmap_csv, run_heatmap, write_heatmap_csv, HeatmapConfig, HeatmapGrid,
    HeatmapTable,
};
pub use render::{render_ascii, render_histogram, RAMP};

use crate::algorithm::{run_algorithm, Algorithm, Params, RunOutput};
use crate::backend::BackendRegistry;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub output: RunOutput,
    /// `outcome,count` header plus one row per observed outcome.
    pub csv: String,
}

/// Runs `algorithm` once with `shots` samples and tabulates the outcomes.
pub fn run_histogram(
    algorithm: &dyn Algorithm,
    params: &Params,
    shots: u64,
    backends: &BackendRegistry,
    backend_name: &str,
    seed: Option<u64>,
) -> Result<Histogram> {
    let output = run_algorithm(algorithm, params, backends, backend_name, shots, seed)?;
    let csv = output.counts.to_csv();
    Ok(Histogram { output, csv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithm::{parse_for, AlgorithmRegistry};
    use crate::backend::DEFAULT_BACKEND;

    fn data_rows(csv: &str) -> Vec<(String, u64)> {
        csv.lines()
            .skip(1)
            .map(|l| {
                let (k, v) = l.split_once(',').unwrap();
                (k.to_owned(), v.parse().unwrap())
            })
            .collect()
    }

    #[test]
    fn qrand_histogram() {
        let algs = AlgorithmRegistry::shipped(24);
        let alg = algs.get("qrand").unwrap();
        let p = parse_for(alg, &["2"]).unwrap();
        let h = run_histogram(alg, &p, 400, &BackendRegistry::default(), DEFAULT_BACKEND, Some(1)).unwrap();
        let rows = data_rows(&h.csv);
        assert_eq!(rows.len(), 4);
        assert_eq!(rows.iter().map(|r| r.1).sum::<u64>(), 400);
        let keys: Vec<&str> = rows.iter().map(|r| r.0.as_str()).collect();
        assert_eq!(keys, ["00", "01", "10", "11"]);
    }

    #[test]
    fn bv_histogram_is_a_single_row() {
        let algs = AlgorithmRegistry::shipped(24);
        let alg = algs.get("bernstein-vazirani").unwrap();
        let p = parse_for(alg, &["10"]).unwrap();
        let h = run_histogram(alg, &p, 100, &BackendRegistry::default(), DEFAULT_BACKEND, Some(1)).unwrap();
        assert_eq!(h.csv, "outcome,count\n10,100\n");
    }

    #[test]
    fn histogram_is_seed_deterministic() {
        let algs = AlgorithmRegistry::shipped(24);
        let alg = algs.get("qrand").unwrap();
        let p = parse_for(alg, &["5"]).unwrap();
        let reg = BackendRegistry::default();
        let a = run_histogram(alg, &p, 300, &reg, DEFAULT_BACKEND, Some(8)).unwrap();
        let b = run_histogram(alg, &p, 300, &reg, DEFAULT_BACKEND, Some(8)).unwrap();
        assert_eq!(a, b);
    }
}
