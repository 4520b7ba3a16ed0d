use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A sequence of bits written most-significant (leftmost) first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![false; len])
    }

    /// Unit vector of length `len` with bit `i` (from the left) set.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut bits = vec![false; len];
        bits[i] = true;
        BitString(bits)
    }

    /// Expands bytes into bits, most significant bit of each byte first.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        BitString(
            bytes
                .iter()
                .flat_map(|&b| (0..8).rev().map(move |k| b >> k & 1 == 1))
                .collect(),
        )
    }

    /// Packs bits into bytes, most significant first. A trailing partial
    /// byte is zero-padded on the right.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (k, &b)| acc | (u8::from(b) << (7 - k)))
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Bitwise XOR with the first `self.len()` bits of `key`.
    pub fn xor_prefix(&self, key: &BitString) -> Result<BitString> {
        if key.len() < self.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: key.len(),
            });
        }
        Ok(BitString(
            self.0.iter().zip(&key.0).map(|(a, b)| a ^ b).collect(),
        ))
    }

    /// Inner product modulo 2.
    pub fn dot_mod2(&self, other: &BitString) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).fold(false, |acc, (a, b)| acc ^ (a & b)))
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString(bits)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitString(iter.into_iter().collect())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::validation(
                    "bits",
                    format!("'{other}' is not a binary digit"),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        let b: BitString = "0110".parse().unwrap();
        assert_eq!(b.bits(), &[false, true, true, false]);
        assert_eq!(b.to_string(), "0110");
        assert!("01a".parse::<BitString>().is_err());
    }

    #[test]
    fn bytes_msb_first() {
        let b = BitString::from_bytes(b"h");
        assert_eq!(b.to_string(), "01101000");
        assert_eq!(b.to_bytes(), b"h");
    }

    #[test]
    fn dot_product() {
        let s: BitString = "101".parse().unwrap();
        assert!(s.dot_mod2(&"100".parse().unwrap()).unwrap());
        assert!(!s.dot_mod2(&"111".parse().unwrap()).unwrap());
        assert!(s.dot_mod2(&"10".parse().unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn xor_is_an_involution(msg in prop::collection::vec(any::<bool>(), 0..64),
                                extra in prop::collection::vec(any::<bool>(), 0..16),
                                seed in any::<u64>()) {
            let msg = BitString::new(msg);
            let mut r = crate::sim::rng::seeded(seed);
            let mut key: Vec<bool> = (0..msg.len()).map(|_| rand::Rng::gen(&mut r)).collect();
            key.extend(extra);
            let key = BitString::new(key);
            let ct = msg.xor_prefix(&key).unwrap();
            prop_assert_eq!(ct.xor_prefix(&key).unwrap(), msg);
        }

        #[test]
        fn bytes_round_trip(bytes in prop::collection::vec(any::<u8>(), 0..32)) {
            prop_assert_eq!(BitString::from_bytes(&bytes).to_bytes(), bytes);
        }
    }
}
