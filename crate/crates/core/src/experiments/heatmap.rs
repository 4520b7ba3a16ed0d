use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;

use crate::backend::Backend;
use crate::bb84::{run_protocol, Bb84Config, Verdict};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::sim::rng::{derive_seed, seeded};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatmapConfig {
    /// Message lengths 1..=max_bits form the x axis.
    pub max_bits: usize,
    /// Densities 0, step, 2·step, … up to 1 form the y axis.
    pub density_step: f64,
    pub iterations: u32,
    pub master_seed: u64,
    /// Worker threads. Does not affect results.
    pub parallelism: usize,
    pub protocol: Bb84Config,
}

impl HeatmapConfig {
    pub fn new(max_bits: usize, density_step: f64, iterations: u32, master_seed: u64) -> Self {
        HeatmapConfig {
            max_bits,
            density_step,
            iterations,
            master_seed,
            parallelism: 1,
            protocol: Bb84Config::default(),
        }
    }

    pub fn with_parallelism(mut self, parallelism: usize) -> Self {
        self.parallelism = parallelism;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_bits == 0 {
            return Err(Error::validation("max-bits", "must be at least 1"));
        }
        if !(self.density_step > 0.0 && self.density_step <= 1.0) {
            return Err(Error::validation("density-step", "must be in (0, 1]"));
        }
        if self.iterations == 0 {
            return Err(Error::validation("iterations", "must be at least 1"));
        }
        if self.parallelism == 0 {
            return Err(Error::validation("jobs", "must be at least 1"));
        }
        Ok(())
    }
}

/// Multiples of `step` from 0 up to the largest one not above 1, rounded to
/// 12 decimals so that 3 × 0.1 is stored as 0.3.
pub fn density_axis(step: f64) -> Vec<f64> {
    let count = ((1.0 + 1e-9) / step).floor() as usize;
    (0..=count)
        .map(|k| ((k as f64 * step * 1e12).round() / 1e12).min(1.0))
        .collect()
}

/// Secure-run fractions indexed `[length][density]`, plus the number of
/// `key_too_short` runs per length (counted as not secure).
#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapTable {
    pub lengths: Vec<usize>,
    pub densities: Vec<f64>,
    pub cells: Vec<Vec<f64>>,
    pub key_too_short: Vec<u64>,
}

impl HeatmapTable {
    pub fn cell(&self, length_index: usize, density_index: usize) -> f64 {
        self.cells[length_index][density_index]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapGrid {
    pub table: HeatmapTable,
    pub iterations: u32,
    pub master_seed: u64,
}

impl std::ops::Deref for HeatmapGrid {
    type Target = HeatmapTable;

    fn deref(&self) -> &HeatmapTable {
        &self.table
    }
}

struct CellResult {
    secure: u32,
    too_short: u32,
}

fn run_cell(
    backend: &dyn Backend,
    cfg: &HeatmapConfig,
    length: usize,
    density_index: usize,
    density: f64,
) -> Result<CellResult> {
    let mut out = CellResult { secure: 0, too_short: 0 };
    for i in 0..cfg.iterations {
        let run_seed = derive_seed(cfg.master_seed, &[length as u64, density_index as u64, u64::from(i)]);
        let mut msg_rng = seeded(derive_seed(run_seed, &[0]));
        let message: BitString = (0..length).map(|_| msg_rng.gen::<bool>()).collect();
        let trace = run_protocol(&message, density, backend, derive_seed(run_seed, &[1]), cfg.protocol)?;
        match trace.verdict {
            Verdict::Secure => out.secure += 1,
            Verdict::KeyTooShort => out.too_short += 1,
            Verdict::Aborted => {}
        }
    }
    Ok(out)
}

/// Runs BB84 `iterations` times for every (message length, density) cell.
///
/// Each run's randomness is derived from `(master_seed, length,
/// density_index, iteration)`, so the grid does not depend on how cells
/// are scheduled across threads.
pub fn run_heatmap(cfg: &HeatmapConfig, backend: &dyn Backend) -> Result<HeatmapGrid> {
    cfg.validate()?;
    let lengths: Vec<usize> = (1..=cfg.max_bits).collect();
    let densities = density_axis(cfg.density_step);
    let jobs: Vec<(usize, usize)> = (0..lengths.len())
        .flat_map(|li| (0..densities.len()).map(move |di| (li, di)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::validation("jobs", e.to_string()))?;
    let results: Vec<CellResult> = pool.install(|| {
        jobs.par_iter()
            .map(|&(li, di)| run_cell(backend, cfg, lengths[li], di, densities[di]))
            .collect::<Result<Vec<_>>>()
    })?;

    let n = f64::from(cfg.iterations);
    let mut cells = vec![vec![0.0; densities.len()]; lengths.len()];
    let mut key_too_short = vec![0u64; lengths.len()];
    for (&(li, di), r) in jobs.iter().zip(&results) {
        cells[li][di] = f64::from(r.secure) / n;
        key_too_short[li] += u64::from(r.too_short);
    }

    Ok(HeatmapGrid {
        table: HeatmapTable {
            lengths,
            densities,
            cells,
            key_too_short,
        },
        iterations: cfg.iterations,
        master_seed: cfg.master_seed,
    })
}

const CORNER: &str = "length\\density";
const SHORT_COLUMN: &str = "key_too_short";

pub fn heatmap_csv(table: &HeatmapTable) -> String {
    let mut out = String::from(CORNER);
    for d in &table.densities {
        let _ = write!(out, ",{d}");
    }
    let _ = writeln!(out, ",{SHORT_COLUMN}");
    for (li, len) in table.lengths.iter().enumerate() {
        let _ = write!(out, "{len}");
        for v in &table.cells[li] {
            let _ = write!(out, ",{v:.6}");
        }
        let _ = writeln!(out, ",{}", table.key_too_short[li]);
    }
    out
}

/// Writes the grid as CSV. The file appears atomically: on any error
/// nothing is left at `destination`.
pub fn write_heatmap_csv(table: &HeatmapTable, destination: &Path) -> Result<()> {
    let dir = match destination.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(heatmap_csv(table).as_bytes())?;
    tmp.flush()?;
    tmp.persist(destination).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn parse_heatmap_csv(text: &str) -> Result<HeatmapTable> {
    let bad = |line: usize, reason: &str| Error::Csv {
        line,
        reason: reason.to_owned(),
    };
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or_else(|| bad(1, "empty file"))?.split(',').collect();
    if header.len() < 3 || header[0] != CORNER || header[header.len() - 1] != SHORT_COLUMN {
        return Err(bad(1, "unexpected header"));
    }
    let densities = header[1..header.len() - 1]
        .iter()
        .map(|d| d.parse::<f64>().map_err(|_| bad(1, "bad density")))
        .collect::<Result<Vec<_>>>()?;

    let mut table = HeatmapTable {
        lengths: Vec::new(),
        densities,
        cells: Vec::new(),
        key_too_short: Vec::new(),
    };
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(bad(lineno, "wrong number of fields"));
        }
        table
            .lengths
            .push(fields[0].parse().map_err(|_| bad(lineno, "bad length"))?);
        let row = fields[1..fields.len() - 1]
            .iter()
            .map(|v| match v.parse::<f64>() {
                Ok(x) if (0.0..=1.0).contains(&x) => Ok(x),
                _ => Err(bad(lineno, "cell is not a fraction")),
            })
            .collect::<Result<Vec<_>>>()?;
        table.cells.push(row);
        table.key_too_short.push(
            fields[fields.len() - 1]
                .parse()
                .map_err(|_| bad(lineno, "bad key_too_short count"))?,
        );
    }
    Ok(table)
}
