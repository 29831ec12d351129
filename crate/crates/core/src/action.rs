//! Isotropy of a circle action `S¹_{a,b}` on `E_{p,q}`, and of the ambient
//! torus action `(z,w)·g = w^a z^p g z̄^q w̄^b` on SU(3).
//!
//! Orbits with nontrivial isotropy sit over six circles `C_σ` (vertices) and
//! nine lens spaces `L_ij` (faces); `C_σ ⊂ L_ij` iff `σ(i) = j`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    distinct_s_count, gcd_slice, kappa_slice, lattice_points_slice, minor_gcd_slice, ORACLE_BOX_LIMIT,
};
use crate::perm::{Parity, Perm3};
use crate::space::{check_balanced, WeightPair};
use crate::{Int, Rational, Wide};

#[derive(Deserialize)]
struct RawAction {
    a: [Int; 3],
    b: [Int; 3],
}

/// A trace-balanced pair `(a, b)`; acts on `E_{p,q}` by `w·[g] = [w^a g w̄^b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawAction")]
pub struct ActionSpec {
    a: [Int; 3],
    b: [Int; 3],
}

impl TryFrom<RawAction> for ActionSpec {
    type Error = Error;

    fn try_from(raw: RawAction) -> Result<Self> {
        ActionSpec::new(raw.a, raw.b)
    }
}

impl ActionSpec {
    pub fn new(a: [Int; 3], b: [Int; 3]) -> Result<Self> {
        check_balanced(&a, &b)?;
        Ok(ActionSpec { a, b })
    }

    pub fn a(&self) -> [Int; 3] {
        self.a
    }

    pub fn b(&self) -> [Int; 3] {
        self.b
    }

    /// The same integers viewed as a defining pair (torus-view symmetry).
    pub fn as_weights(&self) -> WeightPair {
        WeightPair::new(self.a, self.b).expect("validated on construction")
    }

    pub fn from_weights(wp: &WeightPair) -> ActionSpec {
        ActionSpec { a: wp.p(), b: wp.q() }
    }

    /// `(a, b) + n·(p, q) + m·(Id, Id)`, which induces the same action on `E_{p,q}`.
    pub fn shifted(&self, wp: &WeightPair, n: Int, m: Int) -> Result<ActionSpec> {
        let w = self.as_weights().shifted_by(wp, n, m)?;
        Ok(ActionSpec::from_weights(&w))
    }

    pub fn negated(&self) -> ActionSpec {
        ActionSpec { a: self.a.map(|x| -x), b: self.b.map(|x| -x) }
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3] = self.a;
        let [b1, b2, b3] = self.b;
        write!(f, "a=({a1},{a2},{a3}) b=({b1},{b2},{b3})")
    }
}

// ---------------------------------------------------------------------------
// Vector pairs

fn widen<const N: usize>(v: [Int; N]) -> [Wide; N] {
    v.map(|x| x as Wide)
}

fn to_u64(x: Wide) -> u64 {
    u64::try_from(x).expect("orders of bounded inputs fit u64")
}

/// κ(v, w), with 0 for the zero vector or a dependent pair.
fn kappa_or_zero(v: &[Wide], w: &[Wide]) -> u64 {
    match kappa_slice(v, w) {
        Ok(k) => to_u64(k),
        Err(Error::ZeroVector) => 0,
        Err(e) => panic!("kappa of bounded vectors: {e}"),
    }
}

fn minor_gcd_wide(v: &[Wide], w: &[Wide]) -> u64 {
    to_u64(minor_gcd_slice(v, w).expect("bounded inputs do not overflow i128"))
}

/// What an isotropy computation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Kernel,
    Vertex(Perm3),
    Face(usize, usize),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Kernel => f.write_str("kernel"),
            Target::Vertex(s) => write!(f, "C{s}"),
            Target::Face(i, j) => write!(f, "L{i}{j}"),
        }
    }
}

/// The two integer vectors `(v, w)` whose parallelogram governs `target`:
/// six off-diagonal differences for the kernel, `p - q_σ` / `a - b_σ` for a
/// vertex and the four `i' != i, j' != j` differences for a face.
pub fn target_vectors(wp: &WeightPair, act: &ActionSpec, target: Target) -> (Vec<Int>, Vec<Int>) {
    let aw = act.as_weights();
    match target {
        Target::Kernel => (wp.off_diagonal().to_vec(), aw.off_diagonal().to_vec()),
        Target::Vertex(s) => (wp.diff_vector(s).to_vec(), aw.diff_vector(s).to_vec()),
        Target::Face(i, j) => (wp.face_vector(i, j).to_vec(), aw.face_vector(i, j).to_vec()),
    }
}

// ---------------------------------------------------------------------------
// Closed-form orders

/// `(p - q_σ)` and `(a - b_σ)` are independent for every σ.
pub fn is_almost_free(wp: &WeightPair, act: &ActionSpec) -> bool {
    let aw = act.as_weights();
    Perm3::ALL.iter().all(|&s| minor_gcd_wide(&widen(wp.diff_vector(s)), &widen(aw.diff_vector(s))) != 0)
}

/// `(κ₀, m₀)`: order of the ineffective kernel of `S¹_{a,b}` on `E_{p,q}`,
/// and of the ambient torus action on SU(3).
pub fn kappa0(wp: &WeightPair, act: &ActionSpec) -> Result<(u64, u64)> {
    if !is_almost_free(wp, act) {
        return Err(Error::NotAlmostFree);
    }
    let v = widen(wp.off_diagonal());
    let w = widen(act.as_weights().off_diagonal());
    Ok((kappa_or_zero(&v, &w), minor_gcd_wide(&v, &w)))
}

/// `|det[(p-q_σ)_{1,2}; (a-b_σ)_{1,2}]| / gcd((p-q_σ)_{1,2})`; 0 when the
/// pair is dependent.
pub fn kappa_sigma(wp: &WeightPair, act: &ActionSpec, sigma: Perm3) -> u64 {
    let v = widen(wp.diff_vector(sigma));
    let w = widen(act.as_weights().diff_vector(sigma));
    let g = gcd_slice(&v[..2]);
    if g == 0 {
        // both leading coordinates vanish: fall back to the full vectors
        return kappa_or_zero(&v, &w);
    }
    to_u64((v[0] * w[1] - v[1] * w[0]).abs() / g)
}

/// κ of the four-component face vectors.
pub fn kappa_face(wp: &WeightPair, act: &ActionSpec, i: usize, j: usize) -> u64 {
    let v = widen(wp.face_vector(i, j));
    let w = widen(act.as_weights().face_vector(i, j));
    kappa_or_zero(&v, &w)
}

/// Brute-force order of `target` from the lattice points of its
/// parallelogram (number of distinct `s`-coordinates).
pub fn isotropy_oracle(wp: &WeightPair, act: &ActionSpec, target: Target) -> Result<u64> {
    let (v, w) = target_vectors(wp, act, target);
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    let pts = lattice_points_slice(&v, &w, ORACLE_BOX_LIMIT)?;
    Ok(distinct_s_count(&pts) as u64)
}

/// Full raw isotropy data in the circle view and the torus view.
///
/// Arrays over vertices follow [`Perm3::ALL`]; faces are indexed
/// `face[i-1][j-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyProfile {
    pub kappa0: u64,
    pub vertex: [u64; 6],
    pub face: [[u64; 3]; 3],
    pub torus_kernel: u64,
    pub torus_vertex: [u64; 6],
    pub torus_face: [[u64; 3]; 3],
}

impl IsotropyProfile {
    pub fn compute(wp: &WeightPair, act: &ActionSpec) -> Result<Self> {
        let aw = act.as_weights();
        let (kappa0, torus_kernel) = kappa0(wp, act)?;
        let mut vertex = [0; 6];
        let mut torus_vertex = [0; 6];
        for (k, &s) in Perm3::ALL.iter().enumerate() {
            let (v, w) = (widen(wp.diff_vector(s)), widen(aw.diff_vector(s)));
            vertex[k] = kappa_sigma(wp, act, s);
            torus_vertex[k] = minor_gcd_wide(&v, &w);
        }
        let mut face = [[0; 3]; 3];
        let mut torus_face = [[0; 3]; 3];
        for i in 1..=3 {
            for j in 1..=3 {
                let (v, w) = (widen(wp.face_vector(i, j)), widen(aw.face_vector(i, j)));
                face[i - 1][j - 1] = kappa_or_zero(&v, &w);
                torus_face[i - 1][j - 1] = minor_gcd_wide(&v, &w);
            }
        }
        let profile = IsotropyProfile { kappa0, vertex, face, torus_kernel, torus_vertex, torus_face };
        profile.check()?;
        Ok(profile)
    }

    pub fn vertex(&self, sigma: Perm3) -> u64 {
        self.vertex[sigma.index()]
    }

    pub fn face(&self, i: usize, j: usize) -> u64 {
        self.face[i - 1][j - 1]
    }

    pub fn raw(&self, target: Target) -> u64 {
        match target {
            Target::Kernel => self.kappa0,
            Target::Vertex(s) => self.vertex(s),
            Target::Face(i, j) => self.face(i, j),
        }
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Invariant(msg));
        for i in 1..=3 {
            for j in 1..=3 {
                let f = self.face(i, j);
                if !f.is_multiple_of(self.kappa0) {
                    return bad(format!("kappa0 {} does not divide face ({i},{j}) = {f}", self.kappa0));
                }
                for s in Perm3::with_image(i, j) {
                    if !self.vertex(s).is_multiple_of(f) {
                        return bad(format!("face ({i},{j}) = {f} does not divide vertex {s}"));
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Singular locus

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LensTag {
    ThreeSphere,
    S2xS1,
}

/// `L(ℓ₁, ℓ₂, d)` for face `(i, j)`:
/// `(p_{i₁} - q_{j₁}, p_{i₁} - q_{j₂}, p_i - q_j)` with `i₁ < i₂`, `j₁ < j₂`
/// the remaining indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensParams {
    pub l1: Int,
    pub l2: Int,
    pub d: Int,
    pub smooth: bool,
    pub tag: Option<LensTag>,
}

impl LensParams {
    pub fn of_face(wp: &WeightPair, i: usize, j: usize) -> LensParams {
        let i1 = (1..=3).find(|&x| x != i).unwrap();
        let js: Vec<usize> = (1..=3).filter(|&x| x != j).collect();
        let (l1, l2, d) = (wp.diff(i1 - 1, js[0] - 1), wp.diff(i1 - 1, js[1] - 1), wp.diff(i - 1, j - 1));
        let tag = if d.abs() == 1 {
            Some(LensTag::ThreeSphere)
        } else if d == 0 && l1.abs() == 1 && l2.abs() == 1 {
            Some(LensTag::S2xS1)
        } else {
            None
        };
        let smooth = tag.is_some() || (gcd_slice(&[l1, d]) == 1 && gcd_slice(&[l2, d]) == 1);
        LensParams { l1, l2, d, smooth, tag }
    }

    pub fn triple(&self) -> (Int, Int, Int) {
        (self.l1, self.l2, self.d)
    }
}

impl fmt::Display for LensParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{},{})", self.l1, self.l2, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexInfo {
    pub sigma: Perm3,
    pub parity: Parity,
    pub raw: u64,
    pub order: u64,
    pub singular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceInfo {
    pub face: (usize, usize),
    pub vertices: [Perm3; 2],
    pub raw: u64,
    pub order: u64,
    pub singular: bool,
    pub lens: LensParams,
    /// Orbifold angle at each vertex, as a fraction of 2π.
    pub angles: [Rational; 2],
    pub smooth_sphere: bool,
}

/// Ranking key for actions: fewer singular faces first, then fewer singular
/// vertices, smaller maximal order, smaller sum of singular orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocusSummary {
    pub singular_faces: usize,
    pub singular_vertices: usize,
    pub max_order: u64,
    pub order_sum: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularLocus {
    pub kernel: u64,
    pub vertices: Vec<VertexInfo>,
    pub faces: Vec<FaceInfo>,
    pub summary: LocusSummary,
}

impl SingularLocus {
    /// Assemble from raw orders and the kernel order (effective = raw / kernel).
    pub fn assemble(wp: &WeightPair, kernel: u64, vertex: &[u64; 6], face: &[[u64; 3]; 3]) -> Result<Self> {
        let eff = |raw: u64| -> Result<u64> {
            if kernel == 0 || !raw.is_multiple_of(kernel) {
                return Err(Error::Invariant(format!("{raw} is not divisible by kernel {kernel}")));
            }
            Ok(raw / kernel)
        };
        let mut vertices = Vec::with_capacity(6);
        for (k, &sigma) in Perm3::ALL.iter().enumerate() {
            let order = eff(vertex[k])?;
            if order == 0 {
                return Err(Error::NotAlmostFree);
            }
            vertices.push(VertexInfo { sigma, parity: sigma.parity(), raw: vertex[k], order, singular: order > 1 });
        }
        let mut faces = Vec::with_capacity(9);
        for i in 1..=3 {
            for j in 1..=3 {
                let raw = face[i - 1][j - 1];
                let order = eff(raw)?;
                let vs = Perm3::with_image(i, j);
                let vo = vs.map(|s| vertices[s.index()].order);
                let angles = vo.map(|o| Ratio::new(order as Int, o as Int));
                faces.push(FaceInfo {
                    face: (i, j),
                    vertices: vs,
                    raw,
                    order,
                    singular: order > 1,
                    lens: LensParams::of_face(wp, i, j),
                    angles,
                    smooth_sphere: order == vo[0] && order == vo[1],
                });
            }
        }
        let sing_v: Vec<u64> = vertices.iter().filter(|v| v.singular).map(|v| v.order).collect();
        let sing_f: Vec<u64> = faces.iter().filter(|f| f.singular).map(|f| f.order).collect();
        let summary = LocusSummary {
            singular_faces: sing_f.len(),
            singular_vertices: sing_v.len(),
            max_order: sing_v.iter().chain(&sing_f).copied().max().unwrap_or(1),
            order_sum: sing_v.iter().chain(&sing_f).sum(),
        };
        Ok(SingularLocus { kernel, vertices, faces, summary })
    }

    pub fn vertex(&self, sigma: Perm3) -> &VertexInfo {
        &self.vertices[sigma.index()]
    }

    pub fn face(&self, i: usize, j: usize) -> &FaceInfo {
        &self.faces[3 * (i - 1) + (j - 1)]
    }

    pub fn singular_vertices(&self) -> impl Iterator<Item = &VertexInfo> {
        self.vertices.iter().filter(|v| v.singular)
    }

    pub fn singular_faces(&self) -> impl Iterator<Item = &FaceInfo> {
        self.faces.iter().filter(|f| f.singular)
    }

    /// Singular vertices not lying on any singular face.
    pub fn isolated_vertices(&self) -> impl Iterator<Item = &VertexInfo> {
        self.singular_vertices().filter(move |v| !self.singular_faces().any(|f| f.vertices.contains(&v.sigma)))
    }

    pub fn is_empty(&self) -> bool {
        self.summary.singular_faces == 0 && self.summary.singular_vertices == 0
    }

    /// Exactly one singular point and no singular 2-sphere.
    pub fn is_one_point(&self) -> bool {
        self.summary.singular_faces == 0 && self.summary.singular_vertices == 1
    }

    /// Effective orders only, for comparing loci across views.
    pub fn orders(&self) -> ([u64; 6], [[u64; 3]; 3]) {
        let mut v = [0; 6];
        for (k, x) in self.vertices.iter().enumerate() {
            v[k] = x.order;
        }
        let mut f = [[0; 3]; 3];
        for x in &self.faces {
            f[x.face.0 - 1][x.face.1 - 1] = x.order;
        }
        (v, f)
    }
}

/// Singular locus of `E_{p,q} / S¹_{a,b}` with orders `κ_X / κ₀`.
pub fn singular_locus(wp: &WeightPair, act: &ActionSpec) -> Result<SingularLocus> {
    let prof = IsotropyProfile::compute(wp, act)?;
    SingularLocus::assemble(wp, prof.kappa0, &prof.vertex, &prof.face)
}

/// Singular locus of `SU(3) // T²` with orders `m_X / m₀`. Well defined when
/// `E_{p,q}` is only an orbifold, and symmetric under exchanging `(p,q)` and `(a,b)`.
pub fn torus_quotient_locus(wp: &WeightPair, act: &ActionSpec) -> Result<SingularLocus> {
    let prof = IsotropyProfile::compute(wp, act)?;
    SingularLocus::assemble(wp, prof.torus_kernel, &prof.torus_vertex, &prof.torus_face)
}

/// Almost free with every effective order equal to 1.
pub fn is_free_action(wp: &WeightPair, act: &ActionSpec) -> bool {
    singular_locus(wp, act).is_ok_and(|l| l.is_empty())
}
