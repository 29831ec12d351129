//! The symmetric group S3, stored as image tuples.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A permutation of `{1,2,3}` given by its images `(σ(1), σ(2), σ(3))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3([u8; 3]);

impl Perm3 {
    pub const ID: Perm3 = Perm3([1, 2, 3]);
    pub const T12: Perm3 = Perm3([2, 1, 3]);
    pub const T13: Perm3 = Perm3([3, 2, 1]);
    pub const T23: Perm3 = Perm3([1, 3, 2]);
    /// 1 -> 2 -> 3 -> 1
    pub const C123: Perm3 = Perm3([2, 3, 1]);
    /// 1 -> 3 -> 2 -> 1
    pub const C132: Perm3 = Perm3([3, 1, 2]);

    pub const ALL: [Perm3; 6] = [Perm3::ID, Perm3::T12, Perm3::T13, Perm3::T23, Perm3::C123, Perm3::C132];

    pub fn from_images(images: [u8; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &x in &images {
            if !(1..=3).contains(&x) || seen[(x - 1) as usize] {
                return Err(Error::Parse(format!("{images:?} is not a permutation of (1,2,3)")));
            }
            seen[(x - 1) as usize] = true;
        }
        Ok(Perm3(images))
    }

    pub fn images(self) -> [u8; 3] {
        self.0
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    /// 0-based image of the 0-based index `i`.
    pub fn at(self, i: usize) -> usize {
        self.0[i] as usize - 1
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(self, other: Perm3) -> Perm3 {
        Perm3([self.0[other.0[0] as usize - 1], self.0[other.0[1] as usize - 1], self.0[other.0[2] as usize - 1]])
    }

    pub fn inverse(self) -> Perm3 {
        let mut inv = [0u8; 3];
        for i in 0..3 {
            inv[self.0[i] as usize - 1] = i as u8 + 1;
        }
        Perm3(inv)
    }

    pub fn parity(self) -> Parity {
        let mut inversions = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Position in [`Perm3::ALL`].
    pub fn index(self) -> usize {
        Perm3::ALL.iter().position(|&p| p == self).unwrap()
    }

    /// The two permutations with `σ(i) = j` (1-based), i.e. the vertices of face `(i, j)`.
    pub fn with_image(i: usize, j: usize) -> [Perm3; 2] {
        let mut out = Perm3::ALL.iter().copied().filter(|p| p.apply(i) == j);
        [out.next().unwrap(), out.next().unwrap()]
    }

    pub fn cycle_notation(self) -> &'static str {
        match self.0 {
            [1, 2, 3] => "id",
            [2, 1, 3] => "(12)",
            [3, 2, 1] => "(13)",
            [1, 3, 2] => "(23)",
            [2, 3, 1] => "(123)",
            _ => "(132)",
        }
    }
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cycle_notation())
    }
}

impl FromStr for Perm3 {
    type Err = Error;

    /// Cycle notation: `id`, `(12)`, `(13)`, `(23)`, `(123)`, `(132)`, and the
    /// equivalent rotations such as `(231)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s.to_ascii_lowercase().as_str(), "id" | "e" | "()" | "1") {
            return Ok(Perm3::ID);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad permutation '{s}'")))?;
        let digits: Vec<u8> = inner
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse(format!("bad permutation '{s}'")))?;
        let mut images = [1u8, 2, 3];
        let mut seen = [false; 3];
        for &d in &digits {
            if !(1..=3).contains(&d) || seen[(d - 1) as usize] {
                return Err(Error::Parse(format!("bad permutation '{s}'")));
            }
            seen[(d - 1) as usize] = true;
        }
        if digits.len() < 2 {
            return Err(Error::Parse(format!("bad permutation '{s}'")));
        }
        for k in 0..digits.len() {
            images[(digits[k] - 1) as usize] = digits[(k + 1) % digits.len()];
        }
        Perm3::from_images(images)
    }
}

impl Serialize for Perm3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.cycle_notation())
    }
}

impl<'de> Deserialize<'de> for Perm3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
