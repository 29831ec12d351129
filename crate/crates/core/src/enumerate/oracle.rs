use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::space::{invariant_h, is_manifold, is_positively_curved, normalize, CanonicalKey, Convention, WeightPair};
use crate::Int;

pub const ORACLE_MAX_H: u64 = 200;

/// Canonical keys of all positively curved manifolds with `h ≤ h_max`,
/// found by walking a box of pairs instead of the key parametrization.
///
/// Row and column permutations let us take `p` and `q` sorted, and
/// translation lets us take `q₁ = 0`. The box `q ∈ [0, 2h]`,
/// `p ∈ [-2h, 2h]` is enough: for a positively curved class each of the
/// four normalized differences is bounded by `h`, so the spread of `q` is
/// below `k₃ + |k₄| ≤ h` and every entry of `p` lies within `2h` of `q₁`
/// (the transposed case is symmetric).
pub fn brute_box_oracle(h_max: u64, convention: Convention) -> Result<BTreeSet<CanonicalKey>> {
    if h_max > ORACLE_MAX_H {
        let size = |h: u64| {
            let b = 2 * h as u128;
            (b + 1).pow(2) * (2 * b + 1).pow(2) / 4
        };
        return Err(Error::OracleBoxTooLarge(size(h_max), size(ORACLE_MAX_H)));
    }
    let b = 2 * h_max as Int;
    let mut out = BTreeSet::new();
    for q2 in 0..=b {
        for q3 in q2..=b {
            for p1 in -b..=b {
                for p2 in p1..=b {
                    let p3 = q2 + q3 - p1 - p2;
                    if p3 < p2 {
                        break;
                    }
                    let wp = WeightPair::new([p1, p2, p3], [0, q2, q3]).expect("small entries");
                    let h = invariant_h(&wp);
                    if h == 0 || h > h_max {
                        continue;
                    }
                    if is_positively_curved(&wp) && is_manifold(&wp) {
                        out.insert(normalize(&wp, convention));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_boxes() {
        assert!(brute_box_oracle(1, Convention::TransposeIdentified).unwrap().is_empty());
        assert!(brute_box_oracle(2, Convention::TransposeIdentified).unwrap().is_empty());
        let e5 = WeightPair::new([1, 1, 5], [0, 0, 7]).unwrap();
        let set = brute_box_oracle(11, Convention::TransposeIdentified).unwrap();
        assert!(set.contains(&normalize(&e5, Convention::TransposeIdentified)));
        assert!(brute_box_oracle(201, Convention::TransposeIdentified).is_err());
    }
}
