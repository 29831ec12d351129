//! h-bounded enumeration of positively curved Eschenburg manifolds.
//!
//! Up to the symmetries of the difference matrix, a positively curved space
//! is fixed by four differences
//! `k = (p₁-q₂, p₁-q₃, p₂-q₁, p₃-q₁)` with `k₁, k₂, k₃ > 0 > k₄`, and
//! `h = k₁k₂ - k₃k₄`.

mod checkpoint;
mod oracle;
mod scan;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::space::WeightPair;
use crate::{Int, Wide};

pub use checkpoint::{Checkpoint, CHECKPOINT_VERSION};
pub use oracle::{brute_box_oracle, ORACLE_MAX_H};
pub use scan::{
    scan, scan_records_keys, OnePointMode, RecordFilter, RunMeta, ScanOptions, ScanRecord, ScanSummary, Totals,
};

pub use crate::space::detect_free_family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[Int; 4]", from = "[Int; 4]")]
pub struct QuadrupleKey {
    pub k1: Int,
    pub k2: Int,
    pub k3: Int,
    pub k4: Int,
}

impl From<QuadrupleKey> for [Int; 4] {
    fn from(k: QuadrupleKey) -> Self {
        [k.k1, k.k2, k.k3, k.k4]
    }
}

impl From<[Int; 4]> for QuadrupleKey {
    fn from([k1, k2, k3, k4]: [Int; 4]) -> Self {
        QuadrupleKey { k1, k2, k3, k4 }
    }
}

impl QuadrupleKey {
    pub fn new(k1: Int, k2: Int, k3: Int, k4: Int) -> Self {
        QuadrupleKey { k1, k2, k3, k4 }
    }

    /// `k₁k₂ - k₃k₄`.
    pub fn h(&self) -> Wide {
        self.k1 as Wide * self.k2 as Wide - self.k3 as Wide * self.k4 as Wide
    }

    /// `k₁, k₂, k₃ ≥ 1` and `k₄ ≤ -1`.
    pub fn is_normalized(&self) -> bool {
        self.k1 >= 1 && self.k2 >= 1 && self.k3 >= 1 && self.k4 <= -1
    }

    /// The normalized key describes a positively curved space iff
    /// `max(k₁, k₂) < |k₄| < k₁ + k₂ + k₃`.
    pub fn is_positively_curved(&self) -> bool {
        let m = -self.k4;
        self.is_normalized() && self.k1.max(self.k2) < m && m < self.k1 + self.k2 + self.k3
    }

    /// The four differences of `wp`, read off with `τ = σ = Id`.
    pub fn extract(wp: &WeightPair) -> QuadrupleKey {
        QuadrupleKey::new(wp.diff(0, 1), wp.diff(0, 2), wp.diff(1, 0), wp.diff(2, 0))
    }
}

impl fmt::Display for QuadrupleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.k1, self.k2, self.k3, self.k4)
    }
}

/// `p = (k₁+k₂+k₃+k₄, k₃, k₄)`, `q = (0, k₂+k₃+k₄, k₁+k₃+k₄)`.
pub fn reconstruct(key: &QuadrupleKey) -> Result<WeightPair> {
    let QuadrupleKey { k1, k2, k3, k4 } = *key;
    let sum = |xs: &[Int]| -> Result<Int> {
        xs.iter().try_fold(0 as Int, |acc, &x| acc.checked_add(x)).ok_or(crate::Error::Overflow)
    };
    WeightPair::new([sum(&[k1, k2, k3, k4])?, k3, k4], [0, sum(&[k2, k3, k4])?, sum(&[k1, k3, k4])?])
}

/// Every normalized key with `k₁k₂ + k₃|k₄| ≤ h_max`, ordered by
/// `(k₁, k₂, k₃, |k₄|)`.
pub fn quad_stream(h_max: u64) -> impl Iterator<Item = QuadrupleKey> {
    let h = h_max as Int;
    (1..h).flat_map(move |k1| {
        (1..).take_while(move |k2| k1 * k2 < h).flat_map(move |k2| {
            let rest = h - k1 * k2;
            (1..=rest).flat_map(move |k3| (1..=rest / k3).map(move |m| QuadrupleKey::new(k1, k2, k3, -m)))
        })
    })
}

/// The twelve keys that read a positively curved class off its difference
/// matrix: rows `(τ₁, τ₂)` from the first two rows, any σ.
pub(crate) fn keys_of(m: &[[Int; 3]; 3]) -> [[Int; 4]; 12] {
    let mut out = [[0; 4]; 12];
    let mut n = 0;
    for (t1, t2) in [(0, 1), (1, 0)] {
        for s1 in 0..3 {
            for s2 in 0..3 {
                if s2 == s1 {
                    continue;
                }
                let s3 = 3 - s1 - s2;
                out[n] = [m[t1][s2], m[t1][s3], m[t2][s1], m[2][s1]];
                n += 1;
            }
        }
    }
    out
}
