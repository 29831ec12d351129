//! Exact integer kernel: gcds of vectors, gcds of 2x2 minors and the
//! parallelogram lattice-point oracle.
//!
//! The generic functions (`*_slice`) work over any signed integer type from
//! the `num` ecosystem: `i64`, `i128`, or `BigInt`. The `IntVec` front end
//! fixes the input bound at `|x| < 2^31` and evaluates minors in `i128`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedMul, CheckedSub, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Int, Wide};

/// Signed integer scalar usable by the lattice kernel.
pub trait LatticeInt: Integer + Signed + Clone + fmt::Debug + CheckedMul + CheckedSub {}

impl<T> LatticeInt for T where T: Integer + Signed + Clone + fmt::Debug + CheckedMul + CheckedSub {}

/// Magnitude bound for [`IntVec`] entries.
pub const ENTRY_BOUND: Int = 1 << 31;

/// Default cap on the number of integer points the oracle may visit.
pub const ORACLE_BOX_LIMIT: u128 = 1_000_000;

/// An integer vector of length 2 to 6 with entries below `2^31` in magnitude.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Int>", into = "Vec<Int>")]
pub struct IntVec(Vec<Int>);

impl IntVec {
    pub fn new(entries: Vec<Int>) -> Result<Self> {
        if !(2..=6).contains(&entries.len()) {
            return Err(Error::BadLength(entries.len()));
        }
        if let Some(&value) = entries.iter().find(|x| x.abs() >= ENTRY_BOUND) {
            return Err(Error::EntryOutOfRange { value, bound: ENTRY_BOUND });
        }
        Ok(IntVec(entries))
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    fn widened(&self) -> Vec<Wide> {
        self.0.iter().map(|&x| x as Wide).collect()
    }
}

impl TryFrom<Vec<Int>> for IntVec {
    type Error = Error;

    fn try_from(v: Vec<Int>) -> Result<Self> {
        IntVec::new(v)
    }
}

impl From<IntVec> for Vec<Int> {
    fn from(v: IntVec) -> Self {
        v.0
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Parallelogram coordinates `(t, s)` of a lattice point `t v + s w`,
/// both in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPair<T: Clone + Integer = Int> {
    pub t: Ratio<T>,
    pub s: Ratio<T>,
}

impl<T: Clone + Integer + fmt::Display> fmt::Display for RationalPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.s)
    }
}

/// gcd of the absolute values; the empty or all-zero vector gives 0.
pub fn gcd_slice<T: LatticeInt>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |g, x| g.gcd(x))
}

/// gcd over `i < j` of `|v_i w_j - v_j w_i|`. Zero iff `v`, `w` are dependent.
pub fn minor_gcd_slice<T: LatticeInt>(v: &[T], w: &[T]) -> Result<T> {
    if v.len() != w.len() {
        return Err(Error::LengthMismatch(v.len(), w.len()));
    }
    let mut g = T::zero();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let m = minor(&v[i], &v[j], &w[i], &w[j])?;
            g = g.gcd(&m);
        }
    }
    Ok(g)
}

/// `gcd(v)^{-1} * minor_gcd(v, w)`, the number of distinct `s`-coordinates of
/// lattice points in the half-open parallelogram spanned by `v` and `w`.
pub fn kappa_slice<T: LatticeInt>(v: &[T], w: &[T]) -> Result<T> {
    let gv = gcd_slice(v);
    if gv.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mg = minor_gcd_slice(v, w)?;
    let (quot, rem) = mg.div_rem(&gv);
    if !rem.is_zero() {
        return Err(Error::Invariant(format!("minor gcd {mg:?} not divisible by gcd(v) = {gv:?}")));
    }
    Ok(quot)
}

fn minor<T: LatticeInt>(vi: &T, vj: &T, wi: &T, wj: &T) -> Result<T> {
    let a = vi.checked_mul(wj).ok_or(Error::Overflow)?;
    let b = vj.checked_mul(wi).ok_or(Error::Overflow)?;
    a.checked_sub(&b).ok_or(Error::Overflow)
}

fn span<T: LatticeInt>(vk: &T, wk: &T) -> (T, T) {
    let corners = [T::zero(), vk.clone(), wk.clone(), vk.clone() + wk.clone()];
    let lo = corners.iter().cloned().min().unwrap();
    let hi = corners.iter().cloned().max().unwrap();
    (lo, hi)
}

/// Brute-force enumeration of the lattice points in the half-open
/// parallelogram `{t v + s w : t, s in [0,1)}`.
///
/// Picks a coordinate pair on which `v`, `w` are independent, walks every
/// integer point of the bounding box of the parallelogram's projection onto
/// that pair, solves the 2x2 system by Cramer's rule and keeps the solutions
/// whose remaining coordinates are integral. Shares no code with the minor
/// gcd route.
pub fn lattice_points_slice<T>(v: &[T], w: &[T], limit: u128) -> Result<BTreeSet<RationalPair<T>>>
where
    T: LatticeInt + ToPrimitive,
{
    if v.len() != w.len() {
        return Err(Error::LengthMismatch(v.len(), w.len()));
    }
    let n = v.len();
    // Choose the independent coordinate pair with the smallest search box.
    let mut best: Option<(usize, usize, u128)> = None;
    for i in 0..n {
        for j in i + 1..n {
            let det = minor(&v[i], &v[j], &w[i], &w[j])?;
            if det.is_zero() {
                continue;
            }
            let (lo_i, hi_i) = span(&v[i], &w[i]);
            let (lo_j, hi_j) = span(&v[j], &w[j]);
            let wi = (hi_i - lo_i + T::one()).to_u128().ok_or(Error::Overflow)?;
            let wj = (hi_j - lo_j + T::one()).to_u128().ok_or(Error::Overflow)?;
            let size = wi.checked_mul(wj).ok_or(Error::Overflow)?;
            if best.is_none_or(|(_, _, b)| size < b) {
                best = Some((i, j, size));
            }
        }
    }
    let (i, j, size) = best.ok_or(Error::Dependent)?;
    if size > limit {
        return Err(Error::OracleBoxTooLarge(size, limit));
    }

    let det = minor(&v[i], &v[j], &w[i], &w[j])?;
    let (lo_i, hi_i) = span(&v[i], &w[i]);
    let (lo_j, hi_j) = span(&v[j], &w[j]);
    let zero = Ratio::from_integer(T::zero());
    let one = Ratio::from_integer(T::one());
    let mut points = BTreeSet::new();

    let mut ui = lo_i;
    while ui <= hi_i {
        let mut uj = lo_j.clone();
        while uj <= hi_j {
            let t = Ratio::new(minor(&ui, &uj, &w[i], &w[j])?, det.clone());
            let s = Ratio::new(minor(&v[i], &v[j], &ui, &uj)?, det.clone());
            let inside = t >= zero && t < one && s >= zero && s < one;
            if inside
                && (0..n).all(|k| {
                    let x =
                        t.clone() * Ratio::from_integer(v[k].clone()) + s.clone() * Ratio::from_integer(w[k].clone());
                    x.is_integer()
                })
            {
                points.insert(RationalPair { t, s });
            }
            uj = uj + T::one();
        }
        ui = ui + T::one();
    }
    Ok(points)
}

/// gcd of the entries of `v`; 0 for the zero vector.
pub fn gcd_vec(v: &IntVec) -> u64 {
    gcd_slice(&v.widened()) as u64
}

pub fn minor_gcd(v: &IntVec, w: &IntVec) -> Result<u64> {
    let g = minor_gcd_slice(&v.widened(), &w.widened())?;
    u64::try_from(g).map_err(|_| Error::Overflow)
}

pub fn kappa(v: &IntVec, w: &IntVec) -> Result<u64> {
    if v.len() != w.len() {
        return Err(Error::LengthMismatch(v.len(), w.len()));
    }
    let k = kappa_slice(&v.widened(), &w.widened())?;
    u64::try_from(k).map_err(|_| Error::Overflow)
}

/// Lattice points of the parallelogram spanned by `v`, `w` with the default
/// box limit.
pub fn lattice_points_oracle(v: &IntVec, w: &IntVec) -> Result<BTreeSet<RationalPair>> {
    lattice_points_slice(v.entries(), w.entries(), ORACLE_BOX_LIMIT)
}

/// Number of distinct `s`-coordinates among the oracle's points.
pub fn distinct_s_count<T: Clone + Integer>(points: &BTreeSet<RationalPair<T>>) -> usize {
    points.iter().map(|p| p.s.clone()).collect::<BTreeSet<_>>().len()
}
