//! The defining pair `(p, q)` of an Eschenburg biquotient `E_{p,q}`:
//! validation, orbifold/manifold/curvature predicates, the invariant `h`,
//! canonical forms and family membership.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::gcd_slice;
use crate::perm::Perm3;
use crate::{Int, Wide};

/// Entries of weight and action pairs stay below this bound so that every
/// difference fits an [`IntVec`](crate::lattice::IntVec).
pub const PAIR_BOUND: Int = 1 << 30;

#[derive(Deserialize)]
struct RawWeights {
    p: [Int; 3],
    q: [Int; 3],
}

pub(crate) fn check_balanced(x: &[Int; 3], y: &[Int; 3]) -> Result<()> {
    if let Some(&value) = x.iter().chain(y.iter()).find(|v| v.abs() >= PAIR_BOUND) {
        return Err(Error::EntryOutOfRange { value, bound: PAIR_BOUND });
    }
    let (sx, sy) = (x.iter().sum::<Int>(), y.iter().sum::<Int>());
    if sx != sy {
        return Err(Error::TraceImbalance(sx, sy));
    }
    Ok(())
}

/// A trace-balanced pair `(p, q)` defining the circle action
/// `z·g = z^p g z̄^q` on SU(3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWeights")]
pub struct WeightPair {
    p: [Int; 3],
    q: [Int; 3],
}

impl TryFrom<RawWeights> for WeightPair {
    type Error = Error;

    fn try_from(raw: RawWeights) -> Result<Self> {
        WeightPair::new(raw.p, raw.q)
    }
}

impl WeightPair {
    pub fn new(p: [Int; 3], q: [Int; 3]) -> Result<Self> {
        check_balanced(&p, &q)?;
        Ok(WeightPair { p, q })
    }

    pub fn p(&self) -> [Int; 3] {
        self.p
    }

    pub fn q(&self) -> [Int; 3] {
        self.q
    }

    /// `p_i - q_j` with 0-based indices.
    pub fn diff(&self, i: usize, j: usize) -> Int {
        self.p[i] - self.q[j]
    }

    pub fn matrix(&self) -> DiffMatrix {
        let mut m = [[0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.diff(i, j);
            }
        }
        DiffMatrix(m)
    }

    /// `p - q_σ`.
    pub fn diff_vector(&self, sigma: Perm3) -> [Int; 3] {
        [0, 1, 2].map(|i| self.diff(i, sigma.at(i)))
    }

    /// The four differences `p_{i'} - q_{j'}` with `i' != i`, `j' != j`
    /// (1-based face indices), in lexicographic `(i', j')` order.
    pub fn face_vector(&self, i: usize, j: usize) -> [Int; 4] {
        let mut out = [0; 4];
        let mut k = 0;
        for ii in (0..3).filter(|&x| x != i - 1) {
            for jj in (0..3).filter(|&x| x != j - 1) {
                out[k] = self.diff(ii, jj);
                k += 1;
            }
        }
        out
    }

    /// The six differences `p_i - q_j`, `i != j`, in lexicographic order.
    pub fn off_diagonal(&self) -> [Int; 6] {
        let mut out = [0; 6];
        let mut k = 0;
        for i in 0..3 {
            for j in (0..3).filter(|&j| j != i) {
                out[k] = self.diff(i, j);
                k += 1;
            }
        }
        out
    }

    /// `(p_τ, q_ρ)`.
    pub fn permuted(&self, tau: Perm3, rho: Perm3) -> WeightPair {
        WeightPair { p: [0, 1, 2].map(|i| self.p[tau.at(i)]), q: [0, 1, 2].map(|i| self.q[rho.at(i)]) }
    }

    pub fn negated(&self) -> WeightPair {
        WeightPair { p: self.p.map(|x| -x), q: self.q.map(|x| -x) }
    }

    /// `(q, p)`; the inverse map `g ↦ g^{-1}` identifies `E_{p,q}` with `E_{q,p}`.
    pub fn swapped(&self) -> WeightPair {
        WeightPair { p: self.q, q: self.p }
    }

    pub fn translated(&self, k: Int) -> Result<WeightPair> {
        WeightPair::new(self.p.map(|x| x + k), self.q.map(|x| x + k))
    }

    /// `self + n·other + m·(Id, Id)`.
    pub fn shifted_by(&self, other: &WeightPair, n: Int, m: Int) -> Result<WeightPair> {
        let p = [0, 1, 2].map(|i| self.p[i] + n * other.p[i] + m);
        let q = [0, 1, 2].map(|i| self.q[i] + n * other.q[i] + m);
        WeightPair::new(p, q)
    }
}

impl fmt::Display for WeightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p1, p2, p3] = self.p;
        let [q1, q2, q3] = self.q;
        write!(f, "p=({p1},{p2},{p3}) q=({q1},{q2},{q3})")
    }
}

/// `A_{ij} = p_i - q_j`. Determines `(p, q)` up to a common translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiffMatrix(pub [[Int; 3]; 3]);

impl DiffMatrix {
    /// Accepts a matrix of the form `p_i - q_j` with `tr p = tr q`
    /// (equivalently: rank-one differences and zero diagonal sum).
    pub fn from_entries(m: [[Int; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                if m[i][j] - m[i][0] - m[0][j] + m[0][0] != 0 {
                    return Err(Error::Invariant(format!("{m:?} is not a difference matrix")));
                }
            }
        }
        let tr = m[0][0] + m[1][1] + m[2][2];
        if tr != 0 {
            return Err(Error::TraceImbalance(tr, 0));
        }
        Ok(DiffMatrix(m))
    }

    /// The representative with `q_1 = 0`.
    pub fn to_pair(&self) -> Result<WeightPair> {
        let m = &self.0;
        WeightPair::new([m[0][0], m[1][0], m[2][0]], [0, m[0][0] - m[0][1], m[0][0] - m[0][2]])
    }

    pub fn transposed(&self) -> DiffMatrix {
        let m = &self.0;
        DiffMatrix([0, 1, 2].map(|i| [0, 1, 2].map(|j| m[j][i])))
    }

    pub fn negated(&self) -> DiffMatrix {
        DiffMatrix(self.0.map(|r| r.map(|x| -x)))
    }

    pub fn flat(&self) -> [Int; 9] {
        let m = &self.0;
        [m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2]]
    }
}

// ---------------------------------------------------------------------------
// Predicates

/// The defining action is almost free: `p - q_σ != 0` for every σ.
pub fn is_orbifold(wp: &WeightPair) -> bool {
    Perm3::ALL.iter().all(|&s| wp.diff_vector(s) != [0, 0, 0])
}

/// The defining action is free: `gcd(p_1 - q_σ(1), p_2 - q_σ(2)) = 1` for every σ.
pub fn is_manifold(wp: &WeightPair) -> bool {
    manifold_failure(wp).is_none()
}

/// The first σ violating the freeness condition, if any.
pub fn manifold_failure(wp: &WeightPair) -> Option<Perm3> {
    Perm3::ALL.iter().copied().find(|&s| {
        let v = wp.diff_vector(s);
        gcd_slice(&v[..2]) != 1
    })
}

/// Order of the ineffective kernel of the defining action,
/// `gcd{p_i - q_j}`, and whether the action is effective.
pub fn effective_kernel(wp: &WeightPair) -> (u64, bool) {
    let g = gcd_slice(&wp.matrix().flat()) as u64;
    (g, g == 1)
}

/// For every `i`: `p_i` avoids `[min q, max q]` or `q_i` avoids `[min p, max p]`.
pub fn is_positively_curved(wp: &WeightPair) -> bool {
    let (p, q) = (wp.p, wp.q);
    let (pmin, pmax) = (*p.iter().min().unwrap(), *p.iter().max().unwrap());
    let (qmin, qmax) = (*q.iter().min().unwrap(), *q.iter().max().unwrap());
    (0..3).all(|i| !(qmin..=qmax).contains(&p[i]) || !(pmin..=pmax).contains(&q[i]))
}

/// Cross-check of [`is_positively_curved`]: two rows, or two columns, of the
/// difference matrix whose six entries share one strict sign.
pub fn is_positively_curved_alt(wp: &WeightPair) -> bool {
    let m = wp.matrix().0;
    let row_sign = |i: usize| strict_sign((0..3).map(|j| m[i][j]));
    let col_sign = |j: usize| strict_sign((0..3).map(|i| m[i][j]));
    let two_alike = |signs: [i8; 3]| (0..3).any(|a| (a + 1..3).any(|b| signs[a] != 0 && signs[a] == signs[b]));
    two_alike([0, 1, 2].map(row_sign)) || two_alike([0, 1, 2].map(col_sign))
}

fn strict_sign(xs: impl Iterator<Item = Int>) -> i8 {
    let mut sign = 0i8;
    for x in xs {
        let s = x.signum() as i8;
        if s == 0 || (sign != 0 && s != sign) {
            return 0;
        }
        sign = s;
    }
    sign
}

fn e2(x: &[Int; 3]) -> Wide {
    let [a, b, c] = x.map(|v| v as Wide);
    a * b + a * c + b * c
}

/// `h = |H^4(E_{p,q}; Z)| = |e2(p) - e2(q)|`.
pub fn invariant_h(wp: &WeightPair) -> u64 {
    (e2(&wp.p) - e2(&wp.q)).unsigned_abs() as u64
}

/// `(p_τ(1) - q_σ(2))(p_τ(1) - q_σ(3)) - (p_τ(2) - q_σ(1))(p_τ(3) - q_σ(1))`.
///
/// Under trace balance this value does not depend on `(τ, σ)`; it always
/// equals `e2(q) - e2(p)`.
pub fn signed_h(wp: &WeightPair, tau: Perm3, sigma: Perm3) -> Wide {
    let d = |i: usize, j: usize| wp.diff(tau.at(i), sigma.at(j)) as Wide;
    d(0, 1) * d(0, 2) - d(1, 0) * d(2, 0)
}

// ---------------------------------------------------------------------------
// Singular structure of E_{p,q} itself

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleOrder {
    pub sigma: Perm3,
    pub order: u64,
    pub singular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceOrder {
    pub face: (usize, usize),
    pub vertices: [Perm3; 2],
    pub order: u64,
    pub singular: bool,
}

/// Orbifold orders along the circles `C_σ` and lens spaces `L_ij` of the
/// orbifold `E_{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfSingularData {
    pub kernel: u64,
    pub circles: Vec<CircleOrder>,
    pub faces: Vec<FaceOrder>,
}

impl SelfSingularData {
    pub fn singular_circles(&self) -> impl Iterator<Item = &CircleOrder> {
        self.circles.iter().filter(|c| c.singular)
    }

    pub fn singular_faces(&self) -> impl Iterator<Item = &FaceOrder> {
        self.faces.iter().filter(|f| f.singular)
    }
}

/// Circle orders `gcd(p - q_σ)` and face orders `gcd(p - q_σ, p - q_σ')` for
/// the two σ, σ' with `σ(i) = j`.
pub fn self_singular_locus(wp: &WeightPair) -> Result<SelfSingularData> {
    if !is_orbifold(wp) {
        return Err(Error::NotOrbifold);
    }
    let circles = Perm3::ALL
        .iter()
        .map(|&sigma| {
            let order = gcd_slice(&wp.diff_vector(sigma)) as u64;
            CircleOrder { sigma, order, singular: order > 1 }
        })
        .collect();
    let mut faces = Vec::with_capacity(9);
    for i in 1..=3 {
        for j in 1..=3 {
            let vertices = Perm3::with_image(i, j);
            let mut both = wp.diff_vector(vertices[0]).to_vec();
            both.extend_from_slice(&wp.diff_vector(vertices[1]));
            let order = gcd_slice(&both) as u64;
            faces.push(FaceOrder { face: (i, j), vertices, order, singular: order > 1 });
        }
    }
    Ok(SelfSingularData { kernel: effective_kernel(wp).0, circles, faces })
}

// ---------------------------------------------------------------------------
// Canonical forms

/// Whether `E_{p,q}` and `E_{q,p}` are identified when counting spaces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    TransposeIdentified,
    TransposeDistinct,
}

impl Convention {
    pub fn identifies_transpose(self) -> bool {
        self == Convention::TransposeIdentified
    }

    pub fn tag(self) -> &'static str {
        match self {
            Convention::TransposeIdentified => "transpose-identified",
            Convention::TransposeDistinct => "transpose-distinct",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "transpose-identified" | "identified" | "on" => Ok(Convention::TransposeIdentified),
            "transpose-distinct" | "distinct" | "off" => Ok(Convention::TransposeDistinct),
            _ => Err(Error::Parse(format!("unknown convention '{s}'"))),
        }
    }
}

/// Lexicographically smallest flattened difference matrix over row and
/// column permutations, global negation and (optionally) transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey {
    pub entries: [Int; 9],
    pub convention: Convention,
}

impl PartialOrd for Convention {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Convention {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}

impl CanonicalKey {
    pub fn matrix(&self) -> DiffMatrix {
        let e = &self.entries;
        DiffMatrix([[e[0], e[1], e[2]], [e[3], e[4], e[5]], [e[6], e[7], e[8]]])
    }

    /// Representative pair with `q_1 = 0`.
    pub fn representative(&self) -> WeightPair {
        self.matrix().to_pair().expect("canonical keys come from valid pairs")
    }
}

/// Canonical key of a difference matrix under the given convention.
pub fn canonical_matrix(m: &DiffMatrix, convention: Convention) -> CanonicalKey {
    let mut mats = vec![*m, m.negated()];
    if convention.identifies_transpose() {
        mats.push(m.transposed());
        mats.push(m.transposed().negated());
    }
    let mut best: Option<[Int; 9]> = None;
    for mat in &mats {
        for r in Perm3::ALL {
            for c in Perm3::ALL {
                let a = &mat.0;
                let flat = [0, 1, 2, 3, 4, 5, 6, 7, 8].map(|k| a[r.at(k / 3)][c.at(k % 3)]);
                if best.is_none_or(|b| flat < b) {
                    best = Some(flat);
                }
            }
        }
    }
    CanonicalKey { entries: best.unwrap(), convention }
}

pub fn normalize(wp: &WeightPair, convention: Convention) -> CanonicalKey {
    canonical_matrix(&wp.matrix(), convention)
}

pub fn equivalent(a: &WeightPair, b: &WeightPair, convention: Convention) -> bool {
    normalize(a, convention) == normalize(b, convention)
}

// ---------------------------------------------------------------------------
// Families

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyTag {
    /// `((1,1,d), (0,0,d+2))`
    CohomogeneityOne {
        d: Int,
    },
    /// `((c,d,e), (0,0,c+d+e))`
    CohomogeneityTwo {
        c: Int,
        d: Int,
        e: Int,
    },
    /// `p = 0`, `q = (q1, q2, -q1-q2)`
    AloffWallach {
        q1: Int,
        q2: Int,
    },
    /// `((p1,p2,p1+p2), (0,0,2p1+2p2))`, fibering over the inhomogeneous flag manifold
    FreeTorus {
        p1: Int,
        p2: Int,
    },
    Generic,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyTag::CohomogeneityOne { d } => write!(f, "coho-one({d})"),
            FamilyTag::CohomogeneityTwo { c, d, e } => write!(f, "coho-two({c},{d},{e})"),
            FamilyTag::AloffWallach { q1, q2 } => write!(f, "aloff-wallach({q1},{q2})"),
            FamilyTag::FreeTorus { p1, p2 } => write!(f, "free-torus({p1},{p2})"),
            FamilyTag::Generic => f.write_str("generic"),
        }
    }
}

/// Translated `p` of every presentation `((c,d,e),(0,0,c+d+e))` of the
/// class: pick two equal columns (or two equal rows, via the transpose).
fn cohomogeneity_two_presentations(m: &DiffMatrix) -> Vec<[Int; 3]> {
    let mut out = Vec::new();
    for mat in [*m, m.transposed().negated()] {
        let a = &mat.0;
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            if (0..3).all(|i| a[i][c1] == a[i][c2]) {
                let p = [a[0][c1], a[1][c1], a[2][c1]];
                out.push(p);
                out.push(p.map(|x| -x));
            }
        }
    }
    out
}

fn normalized_cde(p: [Int; 3]) -> [Int; 3] {
    let mut best: Option<[Int; 3]> = None;
    for cand in [p, p.map(|x| -x)] {
        let mut s = cand;
        s.sort();
        let key = (-(s.iter().sum::<Int>()), s);
        if best.is_none_or(|b| key < (-(b.iter().sum::<Int>()), b)) {
            best = Some(s);
        }
    }
    best.unwrap()
}

fn aloff_wallach_params(m: &DiffMatrix) -> Option<(Int, Int)> {
    let a = &m.0;
    let q = if a[0] == a[1] && a[1] == a[2] {
        // p constant: q = -row
        a[0].map(|x| -x)
    } else if (0..3).all(|i| a[i][0] == a[i][1] && a[i][1] == a[i][2]) {
        [a[0][0], a[1][0], a[2][0]]
    } else {
        return None;
    };
    let mut q = q;
    if q.iter().filter(|&&x| x < 0).count() >= 2 {
        q = q.map(|x| -x);
    }
    let mut nonneg: Vec<Int> = q.iter().copied().filter(|&x| x >= 0).collect();
    nonneg.sort_by(|x, y| y.cmp(x));
    Some((nonneg[0], nonneg[1]))
}

fn free_torus_params(m: &DiffMatrix) -> Option<(Int, Int)> {
    let mut best: Option<(Int, Int)> = None;
    for p in cohomogeneity_two_presentations(m) {
        let total: Int = p.iter().sum();
        for k in 0..3 {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            if p[k] == p[i] + p[j] && p[k] != 0 {
                let (u, v) = (p[i].min(p[j]), p[i].max(p[j]));
                // q_3 = c + d + e must equal 2(u + v)
                if total == 2 * p[k] && u + v > 0 && best.is_none_or(|b| (u, v) < b) {
                    best = Some((u, v));
                }
            }
        }
    }
    best
}

/// All family tags that apply to the class of `wp` (row and column
/// permutations, negation, translation and transposition).
pub fn detect_family(wp: &WeightPair) -> Vec<FamilyTag> {
    let m = wp.matrix();
    let mut tags = Vec::new();
    let presentations = cohomogeneity_two_presentations(&m);
    let mut coho_one: Option<Int> = None;
    for p in &presentations {
        let mut s = *p;
        s.sort();
        for k in 0..3 {
            let others: Vec<Int> = (0..3).filter(|&x| x != k).map(|x| s[x]).collect();
            if others == [1, 1] {
                coho_one = Some(coho_one.map_or(s[k], |d| d.max(s[k])));
            }
        }
    }
    if let Some(d) = coho_one {
        tags.push(FamilyTag::CohomogeneityOne { d });
    }
    if let Some(cde) = presentations.iter().map(|&p| normalized_cde(p)).min_by_key(|s| (-(s.iter().sum::<Int>()), *s)) {
        tags.push(FamilyTag::CohomogeneityTwo { c: cde[0], d: cde[1], e: cde[2] });
    }
    if let Some((q1, q2)) = aloff_wallach_params(&m) {
        tags.push(FamilyTag::AloffWallach { q1, q2 });
    }
    if let Some((p1, p2)) = free_torus_params(&m) {
        tags.push(FamilyTag::FreeTorus { p1, p2 });
    }
    if tags.is_empty() {
        tags.push(FamilyTag::Generic);
    }
    tags
}

/// Member of one of the two families carrying a free circle action: the
/// Aloff–Wallach spaces and the spaces fibering over the inhomogeneous flag
/// manifold.
pub fn detect_free_family(wp: &WeightPair) -> bool {
    is_free_family_matrix(&wp.matrix().0)
}

/// Matrix-level form of [`detect_free_family`], allocation free.
pub fn is_free_family_matrix(a: &[[Int; 3]; 3]) -> bool {
    let rows_equal = a[0] == a[1] && a[1] == a[2];
    let cols_equal = (0..3).all(|i| a[i][0] == a[i][1] && a[i][1] == a[i][2]);
    if rows_equal || cols_equal {
        return true;
    }
    let check = |b: &[[Int; 3]; 3]| {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            if (0..3).all(|i| b[i][c1] == b[i][c2]) {
                let p = [b[0][c1], b[1][c1], b[2][c1]];
                let total = p[0] + p[1] + p[2];
                for k in 0..3 {
                    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
                    if p[k] == p[i] + p[j] && total == 2 * p[k] {
                        return true;
                    }
                }
            }
        }
        false
    };
    let t = [0, 1, 2].map(|i| [0, 1, 2].map(|j| a[j][i]));
    check(a) || check(&t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wp(p: [Int; 3], q: [Int; 3]) -> WeightPair {
        WeightPair::new(p, q).unwrap()
    }

    #[test]
    fn trace_balance_and_bounds() {
        assert!(matches!(WeightPair::new([1, 2, 3], [1, 2, 4]), Err(Error::TraceImbalance(6, 7))));
        assert!(matches!(WeightPair::new([1 << 30, 0, 0], [1 << 30, 0, 0]), Err(Error::EntryOutOfRange { .. })));
        let json: std::result::Result<WeightPair, _> = serde_json::from_str(r#"{"p":[1,2,3],"q":[1,2,4]}"#);
        assert!(json.is_err());
        let ok: WeightPair = serde_json::from_str(r#"{"p":[1,1,5],"q":[0,0,7]}"#).unwrap();
        assert_eq!(serde_json::to_string(&ok).unwrap(), r#"{"p":[1,1,5],"q":[0,0,7]}"#);
    }

    #[test]
    fn orbifold_examples() {
        assert!(is_orbifold(&wp([1, 1, 5], [0, 0, 7])));
        assert!(!is_orbifold(&wp([1, 2, 3], [1, 2, 3])));
        assert!(is_orbifold(&wp([5, 3, -5], [2, 1, 0])));
    }

    #[test]
    fn manifold_examples() {
        assert!(is_manifold(&wp([1, 1, 5], [0, 0, 7])));
        let orbi = wp([3, 2, 1], [4, 2, 0]);
        assert!(!is_manifold(&orbi));
        assert_eq!(manifold_failure(&orbi), Some(Perm3::T13));
        assert!(is_manifold(&wp([1, 1, 1], [0, 0, 3])));
    }

    #[test]
    fn effective_examples() {
        assert_eq!(effective_kernel(&wp([1, 1, 5], [0, 0, 7])), (1, true));
        assert_eq!(effective_kernel(&wp([2, 2, 2], [0, 0, 6])), (2, false));
        assert_eq!(effective_kernel(&wp([0, 0, 0], [1, 1, -2])), (1, true));
    }

    #[test]
    fn curvature_examples() {
        for (p, q, expect) in [
            ([1, 1, 5], [0, 0, 7], true),
            ([0, 0, 0], [1, -1, 0], false),
            ([5, 3, -5], [2, 1, 0], true),
            ([1, 2, 3], [1, 2, 3], false),
            ([8, 3, 0], [7, 5, -1], false),
        ] {
            let w = wp(p, q);
            assert_eq!(is_positively_curved(&w), expect, "{w}");
            assert_eq!(is_positively_curved_alt(&w), expect, "{w}");
        }
    }

    #[test]
    fn h_examples() {
        assert_eq!(invariant_h(&wp([1, 1, 5], [0, 0, 7])), 11);
        assert_eq!(invariant_h(&wp([8, 3, 0], [7, 5, -1])), 1);
        assert_eq!(invariant_h(&wp([3, 2, 1], [4, 2, 0])), 3);
    }

    #[test]
    fn signed_h_is_constant() {
        let w = wp([3, -2, 5], [1, 4, 1]);
        for t in Perm3::ALL {
            for s in Perm3::ALL {
                assert_eq!(signed_h(&w, t, s), 10);
            }
        }
        assert_eq!(invariant_h(&w), 10);
    }

    #[test]
    fn orbifold_with_one_singular_circle() {
        let data = self_singular_locus(&wp([5, 3, -5], [2, 1, 0])).unwrap();
        let sing: Vec<_> = data.singular_circles().collect();
        assert_eq!(sing.len(), 1);
        assert_eq!(sing[0].sigma, Perm3::T23);
        assert_eq!(sing[0].order, 3);
        assert_eq!(data.singular_faces().count(), 0);
    }

    #[test]
    fn self_locus_manifold_and_even() {
        let data = self_singular_locus(&wp([1, 1, 5], [0, 0, 7])).unwrap();
        assert!(data.circles.iter().all(|c| c.order == 1));
        assert!(data.faces.iter().all(|f| f.order == 1));
        let even = self_singular_locus(&wp([2, 2, 2], [0, 0, 6])).unwrap();
        assert!(even.circles.iter().all(|c| c.order >= 2));
        assert!(matches!(self_singular_locus(&wp([1, 2, 3], [1, 2, 3])), Err(Error::NotOrbifold)));
    }

    #[test]
    fn families() {
        let e5 = detect_family(&wp([1, 1, 5], [0, 0, 7]));
        assert!(e5.contains(&FamilyTag::CohomogeneityOne { d: 5 }));
        assert!(!detect_free_family(&wp([1, 1, 5], [0, 0, 7])));

        let f5 = wp([1, 1, 2], [0, 0, 4]);
        let tags = detect_family(&f5);
        assert!(tags.contains(&FamilyTag::FreeTorus { p1: 1, p2: 1 }), "{tags:?}");
        assert!(tags.contains(&FamilyTag::CohomogeneityOne { d: 2 }));
        assert!(tags.iter().any(|t| matches!(t, FamilyTag::CohomogeneityTwo { .. })));
        assert!(detect_free_family(&f5));

        let aw = wp([0, 0, 0], [1, 1, -2]);
        assert!(detect_family(&aw).contains(&FamilyTag::AloffWallach { q1: 1, q2: 1 }));
        assert!(detect_free_family(&aw));

        // permuted, translated, swapped presentations are still recognised
        let moved = f5.permuted(Perm3::C123, Perm3::T13).translated(4).unwrap().swapped();
        assert!(detect_family(&moved).contains(&FamilyTag::FreeTorus { p1: 1, p2: 1 }));
        assert!(detect_family(&wp([3, -2, 5], [1, 4, 1]))
            .iter()
            .any(|t| matches!(t, FamilyTag::CohomogeneityTwo { .. })));
        assert_eq!(detect_family(&wp([3, -2, 5], [0, 4, 2])), vec![FamilyTag::Generic]);
    }

    #[test]
    fn normalize_examples() {
        let a = wp([1, 1, 5], [0, 0, 7]);
        let b = wp([5, 1, 1], [7, 0, 0]);
        assert!(equivalent(&a, &b, Convention::TransposeIdentified));
        assert!(equivalent(&a, &a.translated(3).unwrap(), Convention::TransposeDistinct));
        let g = wp([3, -2, 5], [1, 4, 1]);
        assert!(equivalent(&g, &g.swapped(), Convention::TransposeIdentified));
        assert!(!equivalent(&g, &g.swapped(), Convention::TransposeDistinct));
        let key = normalize(&g, Convention::TransposeIdentified);
        assert!(equivalent(&key.representative(), &g, Convention::TransposeIdentified));
        assert_eq!(key.representative().q()[0], 0);
    }

    #[test]
    fn diff_matrix_validation() {
        assert!(DiffMatrix::from_entries([[1, 1, -6], [1, 1, -6], [5, 5, -2]]).is_ok());
        assert!(DiffMatrix::from_entries([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).is_err());
    }
}
