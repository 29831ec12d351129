//! Circle actions built from Bezout solutions: for a fixed vertex σ the
//! cofactor equations
//!
//! ```text
//! x(p₁ - q_σ(2)) - y(p₂ - q_σ(3)) = ε₁
//! w(p₁ - q_σ(3)) - z(p₂ - q_σ(1)) = ε₂
//! ```
//!
//! produce actions whose two vertices `σ∘(123)`, `σ∘(132)` are regular. The
//! remaining orders are affine in a free integer `s`, and the residue `α`
//! decides whether `κ_σ = 1` is reachable.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::action::{singular_locus, torus_quotient_locus, ActionSpec, SingularLocus};
use crate::error::{Error, Result};
use crate::perm::{Parity, Perm3};
use crate::space::{invariant_h, is_manifold, manifold_failure, signed_h, DiffMatrix, WeightPair};
use crate::{Int, Wide};

pub const SIGNS: [(Int, Int); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Coefficients of the cofactor system for one σ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Coeffs {
    d2: Int,
    d3: Int,
    e1: Int,
    e2: Int,
    p1: Int,
    p2: Int,
}

impl Coeffs {
    fn of(wp: &WeightPair, sigma: Perm3) -> Coeffs {
        let d = |i: usize, j: usize| wp.diff(i, sigma.at(j));
        Coeffs { d2: d(0, 1), d3: d(1, 2), e1: d(0, 2), e2: d(1, 0), p1: d(0, 0), p2: d(1, 1) }
    }
}

/// A particular solution of the cofactor equations for `(σ, ε₁, ε₂)`.
///
/// Every solution is `(x + k₁·shift_xy.0, y + k₁·shift_xy.1)` and
/// `(w + k₂·shift_wz.0, z + k₂·shift_wz.1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutSolution {
    pub sigma: Perm3,
    pub eps: (Int, Int),
    pub x: Int,
    pub y: Int,
    pub z: Int,
    pub w: Int,
    pub shift_xy: (Int, Int),
    pub shift_wz: (Int, Int),
}

impl BezoutSolution {
    /// The solution moved by `k₁`, `k₂` steps along the two generators.
    pub fn shifted(&self, k1: Int, k2: Int) -> BezoutSolution {
        BezoutSolution {
            x: self.x + k1 * self.shift_xy.0,
            y: self.y + k1 * self.shift_xy.1,
            w: self.w + k2 * self.shift_wz.0,
            z: self.z + k2 * self.shift_wz.1,
            ..*self
        }
    }

    /// `(x+y-z)(p₁-q_σ(1)) - (w+z-x)(p₂-q_σ(2))`.
    pub fn combination(&self, wp: &WeightPair) -> Wide {
        let c = Coeffs::of(wp, self.sigma);
        let (x, y, z, w) = (self.x as Wide, self.y as Wide, self.z as Wide, self.w as Wide);
        (x + y - z) * c.p1 as Wide - (w + z - x) * c.p2 as Wide
    }

    pub fn satisfies(&self, wp: &WeightPair) -> bool {
        let c = Coeffs::of(wp, self.sigma);
        self.x * c.d2 - self.y * c.d3 == self.eps.0 && self.w * c.e1 - self.z * c.e2 == self.eps.1
    }
}

/// Solve `u·a - v·b = eps` with `gcd(a, b) = 1`, choosing minimal `|u|`
/// and then minimal `|v|`.
fn solve_reduced(a: Int, b: Int, eps: Int) -> Option<(Int, Int)> {
    let g = a.extended_gcd(&b);
    if g.gcd.abs() != 1 {
        return None;
    }
    // a·gx + b·gy = ±1
    let sign = g.gcd.signum();
    let (u0, v0) = (g.x * sign * eps, -g.y * sign * eps);
    if b == 0 {
        return Some((u0, 0));
    }
    // u = u0 + k b, v = v0 + k a
    let step = b.abs();
    let r = u0.rem_euclid(step);
    let best = [r, r - step]
        .into_iter()
        .map(|u| {
            let k = (u - u0) / b;
            (u, v0 + k * a)
        })
        .min_by_key(|&(u, v)| (u.abs(), v.abs()))
        .unwrap();
    Some(best)
}

/// Reduced solution of the cofactor system: minimal `|x|` (then `|y|`) and
/// minimal `|z|` (then `|w|`).
pub fn solve_cofactors(wp: &WeightPair, sigma: Perm3, eps: (Int, Int)) -> Result<BezoutSolution> {
    if let Some(bad) = manifold_failure(wp) {
        return Err(Error::NotManifold(bad.to_string()));
    }
    solve_unchecked(wp, sigma, eps)
}

fn solve_unchecked(wp: &WeightPair, sigma: Perm3, eps: (Int, Int)) -> Result<BezoutSolution> {
    let c = Coeffs::of(wp, sigma);
    let fail = || Error::NotManifold(sigma.to_string());
    let (x, y) = solve_reduced(c.d2, c.d3, eps.0).ok_or_else(fail)?;
    // w·e1 - z·e2 = z·(-e2) - w·(-e1)
    let (z, w) = solve_reduced(-c.e2, -c.e1, eps.1).ok_or_else(fail)?;
    let sol = BezoutSolution { sigma, eps, x, y, z, w, shift_xy: (c.d3, c.d2), shift_wz: (c.e2, c.e1) };
    debug_assert!(sol.satisfies(wp));
    Ok(sol)
}

/// `a = (-z, -x - s·D₃, y + w + s·D₂)` and `b_σ = (w - x - s·D₃, y - z + s·D₂, 0)`
/// with `D₂ = p₁ - q_σ(2)`, `D₃ = p₂ - q_σ(3)`; `b_σ` lists `b_σ(1), b_σ(2), b_σ(3)`.
pub fn action_from_solution(wp: &WeightPair, sol: &BezoutSolution, s: Int) -> Result<ActionSpec> {
    let c = Coeffs::of(wp, sol.sigma);
    let (x, y, z, w) = (sol.x, sol.y, sol.z, sol.w);
    let a = [-z, -x - s * c.d3, y + w + s * c.d2];
    let bs = [w - x - s * c.d3, y - z + s * c.d2, 0];
    let mut b = [0; 3];
    for i in 0..3 {
        b[sol.sigma.at(i)] = bs[i];
    }
    ActionSpec::new(a, b)
}

pub fn build_action(wp: &WeightPair, sigma: Perm3, eps: (Int, Int), s: Int) -> Result<ActionSpec> {
    let sol = solve_cofactors(wp, sigma, eps)?;
    action_from_solution(wp, &sol, s)
}

/// The four vertices whose orders [`predicted_orders`] reports:
/// `σ`, `σ∘(12)`, `σ∘(23)`, `σ∘(13)`.
pub fn predicted_vertices(sigma: Perm3) -> [Perm3; 4] {
    [sigma, sigma.compose(Perm3::T12), sigma.compose(Perm3::T23), sigma.compose(Perm3::T13)]
}

/// Closed-form orders of the vertices in [`predicted_vertices`] for
/// [`build_action`]'s output, with `h` signed as `e2(q) - e2(p)`.
pub fn predicted_orders(wp: &WeightPair, sigma: Perm3, eps: (Int, Int), s: Int) -> Result<[u64; 4]> {
    let sol = solve_cofactors(wp, sigma, eps)?;
    Ok(predicted_from_solution(wp, &sol, s))
}

fn predicted_from_solution(wp: &WeightPair, sol: &BezoutSolution, s: Int) -> [u64; 4] {
    let c = Coeffs::of(wp, sol.sigma);
    let w_ = |v: Int| v as Wide;
    let (x, y, z, w, s) = (w_(sol.x), w_(sol.y), w_(sol.z), w_(sol.w), w_(s));
    let (d2, d3, e1, e2) = (w_(c.d2), w_(c.d3), w_(c.e1), w_(c.e2));
    let f = w_(wp.diff(2, sol.sigma.at(1)));
    let g = w_(wp.diff(2, sol.sigma.at(0)));
    let h = signed_h(wp, Perm3::ID, Perm3::ID);
    [
        s * h + sol.combination(wp),
        s * d2 * e2 - w * d2 + y * e2,
        s * d3 * f + (z + w) * d3 + x * f,
        s * e1 * g - (x + y) * e1 - z * g,
    ]
    .map(|v| v.unsigned_abs() as u64)
}

// ---------------------------------------------------------------------------
// The α residues

/// `α(σ, ε₁, ε₂) ∈ Z_h` for all 24 choices; indexed by `σ.index()` and the
/// position of `ε` in [`SIGNS`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaTable {
    pub h: u64,
    pub values: [[u64; 4]; 6],
}

impl AlphaTable {
    pub fn get(&self, sigma: Perm3, eps: (Int, Int)) -> u64 {
        self.values[sigma.index()][SIGNS.iter().position(|&e| e == eps).expect("ε ∈ {±1}²")]
    }

    /// Some α vanishes: an action with three regular vertices of one parity
    /// exists.
    pub fn any_vanishing(&self) -> bool {
        self.values.iter().flatten().any(|&a| a == 0)
    }

    /// Whether some ε gives `α(σ, ε) = 0`, per σ.
    pub fn vanishing(&self, sigma: Perm3) -> bool {
        self.values[sigma.index()].contains(&0)
    }

    /// [`Self::vanishing`] for each parity class, if it is constant on the class.
    pub fn vanishing_by_parity(&self) -> Option<[bool; 2]> {
        let mut out = [None, None];
        for s in Perm3::ALL {
            let k = (s.parity() == Parity::Odd) as usize;
            let v = self.vanishing(s);
            match out[k] {
                None => out[k] = Some(v),
                Some(prev) if prev != v => return None,
                _ => {}
            }
        }
        Some([out[0].unwrap(), out[1].unwrap()])
    }

    pub fn rows(&self) -> impl Iterator<Item = (Perm3, (Int, Int), u64)> + '_ {
        Perm3::ALL.iter().flat_map(move |&s| SIGNS.iter().map(move |&e| (s, e, self.get(s, e))))
    }
}

fn alpha_of(c: Wide, h: u64) -> u64 {
    ((c.rem_euclid(h as Wide) + 1) % h as Wide) as u64
}

pub fn alpha_table(wp: &WeightPair) -> Result<AlphaTable> {
    if let Some(s) = manifold_failure(wp) {
        return Err(Error::NotManifold(s.to_string()));
    }
    let h = invariant_h(wp);
    if h == 0 {
        return Err(Error::Invariant(format!("h = 0 for manifold {wp}")));
    }
    let mut values = [[0; 4]; 6];
    for (k, &sigma) in Perm3::ALL.iter().enumerate() {
        for (m, &eps) in SIGNS.iter().enumerate() {
            let sol = solve_cofactors(wp, sigma, eps)?;
            values[k][m] = alpha_of(sol.combination(wp), h);
        }
    }
    Ok(AlphaTable { h, values })
}

/// Allocation-free vanishing test for the enumeration loop. Uses that
/// the combination is linear in `ε`, so two Bezout solves per σ suffice.
pub fn alpha_vanishes(wp: &WeightPair) -> Result<bool> {
    if let Some(bad) = manifold_failure(wp) {
        return Err(Error::NotManifold(bad.to_string()));
    }
    let h = invariant_h(wp);
    if h == 1 {
        return Ok(true);
    }
    for sigma in Perm3::ALL {
        let c1 = solve_unchecked(wp, sigma, (1, 0)).map(|s| s.combination(wp));
        let c2 = solve_unchecked(wp, sigma, (0, 1)).map(|s| s.combination(wp));
        let (c1, c2) = (c1?, c2?);
        for (e1, e2) in SIGNS {
            if alpha_of(e1 as Wide * c1 + e2 as Wide * c2, h) == 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Constructions

/// Where a constructed action came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Provenance {
    pub sigma: Perm3,
    pub eps: [Int; 2],
    pub s: Int,
}

/// JSON shape `{"a":[..],"b":[..],"provenance":{"sigma":..,"eps":[..],"s":..}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: [Int; 3],
    pub b: [Int; 3],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<Provenance>,
}

impl Witness {
    pub fn new(act: &ActionSpec, provenance: Option<Provenance>) -> Witness {
        Witness { a: act.a(), b: act.b(), provenance }
    }

    pub fn action(&self) -> Result<ActionSpec> {
        ActionSpec::new(self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constructed {
    pub action: ActionSpec,
    pub provenance: Option<Provenance>,
    pub locus: SingularLocus,
}

impl Constructed {
    pub fn witness(&self) -> Witness {
        Witness::new(&self.action, self.provenance)
    }
}

fn construct(wp: &WeightPair, sol: &BezoutSolution, s: Int) -> Option<Constructed> {
    let action = action_from_solution(wp, sol, s).ok()?;
    let locus = singular_locus(wp, &action).ok()?;
    let provenance = Some(Provenance { sigma: sol.sigma, eps: [sol.eps.0, sol.eps.1], s });
    Some(Constructed { action, provenance, locus })
}

/// An action whose singular faces all pass through one vertex `C_σ`, with
/// `κ_σ ≤ h`. Among admissible `(σ, ε, s)` the smallest locus summary wins.
pub fn minimal_3lens_action(wp: &WeightPair) -> Result<Constructed> {
    if let Some(s) = manifold_failure(wp) {
        return Err(Error::NotManifold(s.to_string()));
    }
    let h = signed_h(wp, Perm3::ID, Perm3::ID);
    let habs = h.unsigned_abs() as u64;
    let mut best: Option<(crate::action::LocusSummary, Provenance, Constructed)> = None;
    for sigma in Perm3::ALL {
        for eps in SIGNS {
            let sol = solve_cofactors(wp, sigma, eps)?;
            let c = sol.combination(wp);
            // s near -c/h puts |s h + c| in [0, |h|]
            let s0 = Integer::div_floor(&-c, &h);
            for ds in -2..=2 {
                let s = (s0 + ds) as Int;
                let Some(cand) = construct(wp, &sol, s) else { continue };
                let k = cand.locus.vertex(sigma).order * cand.locus.kernel;
                if k == 0 || k > habs.max(1) {
                    continue;
                }
                let key = (cand.locus.summary, cand.provenance.unwrap());
                if best.as_ref().is_none_or(|(bs, bp, _)| key < (*bs, *bp)) {
                    best = Some((key.0, key.1, cand));
                }
            }
        }
    }
    best.map(|(_, _, c)| c).ok_or(Error::EmptySearchSpace)
}

/// Candidate actions with `κ_σ = 1`: for each `(σ, ε)` and target `±1`,
/// the `s` solving `s·h + C = target` exactly.
pub fn one_point_candidates(wp: &WeightPair) -> Result<Vec<(BezoutSolution, Int)>> {
    if let Some(s) = manifold_failure(wp) {
        return Err(Error::NotManifold(s.to_string()));
    }
    let h = signed_h(wp, Perm3::ID, Perm3::ID);
    let mut out = Vec::new();
    for sigma in Perm3::ALL {
        for eps in SIGNS {
            let sol = solve_cofactors(wp, sigma, eps)?;
            let c = sol.combination(wp);
            for target in [1 as Wide, -1] {
                if (target - c) % h == 0 {
                    let s = (target - c) / h;
                    if let Ok(s) = Int::try_from(s) {
                        out.push((sol, s));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// An action with exactly one singular point and no singular 2-sphere, if
/// the Bezout family contains one. Every returned witness has been checked
/// against the full singular locus.
pub fn one_point_decision(wp: &WeightPair) -> Result<Option<Constructed>> {
    let mut seen = BTreeSet::new();
    for (sol, s) in one_point_candidates(wp)? {
        let Some(cand) = construct(wp, &sol, s) else { continue };
        if !seen.insert(action_class_key(wp, &cand.action)) {
            continue;
        }
        if cand.locus.is_one_point() {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Brute-force corroboration of [`one_point_decision`]: all actions with
/// entries in `[-window, window]`.
pub fn one_point_window(wp: &WeightPair, window: Int) -> Option<ActionSpec> {
    window_actions(wp, window).into_iter().find(|act| singular_locus(wp, act).is_ok_and(|l| l.is_one_point()))
}

// ---------------------------------------------------------------------------
// Search

/// Canonical representative of the class of `act` modulo `n·(p,q)`,
/// `m·(Id,Id)` and global negation, as a flattened difference matrix.
pub fn action_class_key(wp: &WeightPair, act: &ActionSpec) -> [Int; 9] {
    let m = wp.matrix().flat();
    let reduce = |b: [Int; 9]| -> [Int; 9] {
        match m.iter().position(|&x| x != 0) {
            None => b,
            Some(k) => {
                let n = Integer::div_floor(&b[k], &m[k].abs()) * m[k].signum();
                let mut out = b;
                for i in 0..9 {
                    out[i] -= n * m[i];
                }
                out
            }
        }
    };
    let b = act.as_weights().matrix().flat();
    let neg = b.map(|x| -x);
    reduce(b).min(reduce(neg))
}

/// All actions with `a ∈ [-W, W]³`, `b₁, b₂ ∈ [-W, W]`, reduced to one per
/// class; `b₃` is fixed by trace balance.
pub fn window_actions(wp: &WeightPair, window: Int) -> Vec<ActionSpec> {
    let mut keys = BTreeSet::new();
    let mut out = Vec::new();
    let r = -window..=window;
    for a1 in r.clone() {
        for a2 in r.clone() {
            for a3 in r.clone() {
                for b1 in r.clone() {
                    for b2 in r.clone() {
                        let b3 = a1 + a2 + a3 - b1 - b2;
                        let Ok(act) = ActionSpec::new([a1, a2, a3], [b1, b2, b3]) else { continue };
                        let key = action_class_key(wp, &act);
                        if keys.insert(key) {
                            let rep = DiffMatrix([
                                [key[0], key[1], key[2]],
                                [key[3], key[4], key[5]],
                                [key[6], key[7], key[8]],
                            ])
                            .to_pair()
                            .map(|w| ActionSpec::from_weights(&w));
                            out.push(rep.unwrap_or(act));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Ranked actions from the construction family (`s ∈ s_range`, all σ, ε;
/// manifolds only) and from the raw window. Orbifold-only spaces use the
/// torus-view orders. Sorted by locus summary, ties broken by class key.
pub fn search_minimal(
    wp: &WeightPair,
    s_range: std::ops::RangeInclusive<Int>,
    window: Int,
) -> Result<Vec<Constructed>> {
    let manifold = is_manifold(wp);
    let locus_of = |act: &ActionSpec| {
        if manifold {
            singular_locus(wp, act)
        } else {
            torus_quotient_locus(wp, act)
        }
    };
    let mut found: std::collections::BTreeMap<[Int; 9], Constructed> = Default::default();
    if manifold {
        for sigma in Perm3::ALL {
            for eps in SIGNS {
                let sol = solve_cofactors(wp, sigma, eps)?;
                for s in s_range.clone() {
                    if let Some(c) = construct(wp, &sol, s) {
                        found.entry(action_class_key(wp, &c.action)).or_insert(c);
                    }
                }
            }
        }
    }
    for act in window_actions(wp, window) {
        let key = action_class_key(wp, &act);
        if found.contains_key(&key) {
            continue;
        }
        if let Ok(locus) = locus_of(&act) {
            found.insert(key, Constructed { action: act, provenance: None, locus });
        }
    }
    if found.is_empty() {
        return Err(Error::EmptySearchSpace);
    }
    let mut ranked: Vec<([Int; 9], Constructed)> = found.into_iter().collect();
    ranked.sort_by(|(ka, a), (kb, b)| (a.locus.summary, ka).cmp(&(b.locus.summary, kb)));
    Ok(ranked.into_iter().map(|(_, c)| c).collect())
}
