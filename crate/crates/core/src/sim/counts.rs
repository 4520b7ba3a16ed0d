use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Outcome histogram. Keys are bitstrings of a fixed width, so the map's
/// lexicographic order is also numeric order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Counts {
    width: usize,
    shots: u64,
    map: BTreeMap<String, u64>,
}

impl Counts {
    pub fn new(width: usize) -> Self {
        Counts {
            width,
            shots: 0,
            map: BTreeMap::new(),
        }
    }

    pub fn record(&mut self, outcome: &str) -> Result<()> {
        self.record_n(outcome, 1)
    }

    pub fn record_n(&mut self, outcome: &str, n: u64) -> Result<()> {
        if outcome.len() != self.width || !outcome.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::validation(
                "outcome",
                format!("'{outcome}' is not a {}-bit string", self.width),
            ));
        }
        if n == 0 {
            return Ok(());
        }
        *self.map.entry(outcome.to_owned()).or_insert(0) += n;
        self.shots += n;
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn get(&self, outcome: &str) -> u64 {
        self.map.get(outcome).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.map.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Most frequent outcome; ties resolve to the smallest bitstring.
    pub fn most_frequent(&self) -> Option<(&str, u64)> {
        self.iter()
            .fold(None, |best: Option<(&str, u64)>, (k, v)| match best {
                Some((_, bv)) if bv >= v => best,
                _ => Some((k, v)),
            })
    }

    /// `outcome,count` rows sorted by outcome, with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("outcome,count\n");
        for (k, v) in self.iter() {
            let _ = writeln!(out, "{k},{v}");
        }
        out
    }
}
