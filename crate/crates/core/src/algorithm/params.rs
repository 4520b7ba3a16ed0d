use std::fmt;

use crate::bits::BitString;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ParamKind {
    NaturalNumber { min: u64, max: u64 },
    Bitstring { min_len: usize, max_len: usize },
    /// A real number in [0, 1].
    Probability,
    Text { min_len: usize, max_len: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamSpec {
    pub name: String,
    pub kind: ParamKind,
    pub description: String,
}

impl ParamSpec {
    pub fn natural(name: &str, description: &str, min: u64, max: u64) -> Self {
        assert!(min <= max, "{name}: min {min} > max {max}");
        Self::new(name, ParamKind::NaturalNumber { min, max }, description)
    }

    pub fn bitstring(name: &str, description: &str, min_len: usize, max_len: usize) -> Self {
        assert!(min_len <= max_len, "{name}: min_len {min_len} > max_len {max_len}");
        Self::new(name, ParamKind::Bitstring { min_len, max_len }, description)
    }

    pub fn probability(name: &str, description: &str) -> Self {
        Self::new(name, ParamKind::Probability, description)
    }

    pub fn text(name: &str, description: &str, min_len: usize, max_len: usize) -> Self {
        assert!(min_len <= max_len, "{name}: min_len {min_len} > max_len {max_len}");
        Self::new(name, ParamKind::Text { min_len, max_len }, description)
    }

    fn new(name: &str, kind: ParamKind, description: &str) -> Self {
        ParamSpec {
            name: name.to_owned(),
            kind,
            description: description.to_owned(),
        }
    }

    /// Short human form of the constraint, used in prompts and errors.
    pub fn constraint(&self) -> String {
        match &self.kind {
            ParamKind::NaturalNumber { min, max } => format!("integer in [{min}, {max}]"),
            ParamKind::Bitstring { min_len, max_len } => {
                format!("string of 0/1 with length in [{min_len}, {max_len}]")
            }
            ParamKind::Probability => "number in [0, 1]".to_owned(),
            ParamKind::Text { min_len, max_len } => {
                format!("text of {min_len} to {max_len} bytes")
            }
        }
    }

    pub fn parse(&self, raw: &str) -> Result<ParamValue> {
        let fail = |why: String| Error::validation(&self.name, why);
        match &self.kind {
            ParamKind::NaturalNumber { min, max } => {
                let v: u64 = raw
                    .trim()
                    .parse()
                    .map_err(|_| fail(format!("'{raw}' is not a natural number")))?;
                if v < *min || v > *max {
                    return Err(fail(format!("{v} outside [{min}, {max}]")));
                }
                Ok(ParamValue::Natural(v))
            }
            ParamKind::Bitstring { min_len, max_len } => {
                let bits: BitString = raw
                    .trim()
                    .parse()
                    .map_err(|_| fail(format!("'{raw}' is not a bitstring")))?;
                if bits.len() < *min_len || bits.len() > *max_len {
                    return Err(fail(format!(
                        "length {} outside [{min_len}, {max_len}]",
                        bits.len()
                    )));
                }
                Ok(ParamValue::Bits(bits))
            }
            ParamKind::Probability => {
                let p: f64 = raw
                    .trim()
                    .parse()
                    .map_err(|_| fail(format!("'{raw}' is not a number")))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(fail(format!("probability must be in [0,1], got {p}")));
                }
                Ok(ParamValue::Probability(p))
            }
            ParamKind::Text { min_len, max_len } => {
                if raw.len() < *min_len || raw.len() > *max_len {
                    return Err(fail(format!(
                        "length {} outside [{min_len}, {max_len}]",
                        raw.len()
                    )));
                }
                Ok(ParamValue::Text(raw.to_owned()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Natural(u64),
    Bits(BitString),
    Probability(f64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Natural(v) => write!(f, "{v}"),
            ParamValue::Bits(b) => write!(f, "{b}"),
            // `{}` on f64 prints the shortest string that parses back exactly
            ParamValue::Probability(p) => write!(f, "{p}"),
            ParamValue::Text(t) => f.write_str(t),
        }
    }
}

/// Validated parameters, in the order of the algorithm's specs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params {
    values: Vec<(String, ParamValue)>,
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: ParamValue) -> Self {
        self.values.push((name.to_owned(), value));
        self
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ParamValue)> {
        self.values.iter().map(|(n, v)| (n.as_str(), v))
    }

    fn missing(name: &str) -> Error {
        Error::validation(name, "missing")
    }

    pub fn natural(&self, name: &str) -> Result<u64> {
        match self.get(name) {
            Some(ParamValue::Natural(v)) => Ok(*v),
            Some(_) => Err(Error::validation(name, "expected a natural number")),
            None => Err(Self::missing(name)),
        }
    }

    pub fn bits(&self, name: &str) -> Result<&BitString> {
        match self.get(name) {
            Some(ParamValue::Bits(b)) => Ok(b),
            Some(_) => Err(Error::validation(name, "expected a bitstring")),
            None => Err(Self::missing(name)),
        }
    }

    pub fn probability(&self, name: &str) -> Result<f64> {
        match self.get(name) {
            Some(ParamValue::Probability(p)) => Ok(*p),
            Some(_) => Err(Error::validation(name, "expected a probability")),
            None => Err(Self::missing(name)),
        }
    }

    pub fn text(&self, name: &str) -> Result<&str> {
        match self.get(name) {
            Some(ParamValue::Text(t)) => Ok(t),
            Some(_) => Err(Error::validation(name, "expected text")),
            None => Err(Self::missing(name)),
        }
    }
}

/// Parses one raw string per spec, in spec order.
pub fn parse_params<S: AsRef<str>>(specs: &[ParamSpec], raw: &[S]) -> Result<Params> {
    if raw.len() > specs.len() {
        return Err(Error::validation(
            "params",
            format!("expected {} values, got {}", specs.len(), raw.len()),
        ));
    }
    let mut params = Params::new();
    for (i, spec) in specs.iter().enumerate() {
        let value = raw
            .get(i)
            .ok_or_else(|| Params::missing(&spec.name))
            .and_then(|r| spec.parse(r.as_ref()))?;
        params = params.with(&spec.name, value);
    }
    Ok(params)
}

/// Inverse of [`parse_params`].
pub fn format_params(specs: &[ParamSpec], params: &Params) -> Result<Vec<String>> {
    specs
        .iter()
        .map(|s| {
            params
                .get(&s.name)
                .map(ToString::to_string)
                .ok_or_else(|| Params::missing(&s.name))
        })
        .collect()
}
