//! Built-in verification corpus: stated loci and invariants next to what the
//! library computes for them.

use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::{bail, Context, Result};
use eschenburg::action::{singular_locus, torus_quotient_locus, SingularLocus};
use eschenburg::construct::{alpha_vanishes, build_action, one_point_decision};
use eschenburg::space::{invariant_h, is_manifold, is_positively_curved, self_singular_locus};
use eschenburg::{ActionSpec, Int, Perm3, WeightPair};
use serde::{Deserialize, Serialize};

pub const BUILTIN: &str = include_str!("../data/corpus.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub item: Vec<Item>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Singular locus of a given action.
    Locus,
    /// Singular structure of the orbifold itself.
    #[serde(rename = "self")]
    SelfLocus,
    /// Invariants and decisions of a space.
    Space,
    /// Locus of the action built from `(σ, ε, s)`.
    Construct,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum View {
    #[default]
    Circle,
    Torus,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Item {
    pub id: String,
    pub kind: Kind,
    pub claim: String,
    pub p: [Int; 3],
    pub q: [Int; 3],
    pub a: Option<[Int; 3]>,
    pub b: Option<[Int; 3]>,
    #[serde(default)]
    pub view: View,
    pub sigma: Option<String>,
    pub eps: Option<[Int; 2]>,
    pub s: Option<Int>,
    #[serde(default)]
    pub expected_mismatch: bool,
    pub note: Option<String>,
    pub expect: Facts,
}

/// Comparable facts. Orders are multisets of singular orders, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Facts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_orders: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face_orders: Option<Vec<u64>>,
    /// Singular faces as `[i, j, order]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<[u64; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isolated_count: Option<usize>,
    /// Every singular face is a smooth orbifold sphere.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smooth: Option<bool>,
    /// Lens triples of the singular faces.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lens: Option<Vec<[Int; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifold: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positively_curved: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_vanishes: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_point: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    NotComparable,
}

#[derive(Debug, Serialize)]
pub struct ItemReport {
    pub id: String,
    pub claim: String,
    pub expected_mismatch: bool,
    pub status: Status,
    pub stated: Facts,
    pub computed: Facts,
    /// Field names whose values differ.
    pub differs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Default, Serialize)]
pub struct Counts {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub not_comparable: usize,
    pub expected_mismatch: usize,
    /// Items expected to match that did not.
    pub unexpected: usize,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub items: Vec<ItemReport>,
    pub counts: Counts,
}

pub fn parse_corpus(text: &str) -> Result<Corpus> {
    let corpus: Corpus = toml::from_str(text).context("parsing verification corpus")?;
    if corpus.item.is_empty() {
        bail!("verification corpus has no items");
    }
    Ok(corpus)
}

fn locus_facts(l: &SingularLocus) -> Facts {
    let mut vo: Vec<u64> = l.singular_vertices().map(|v| v.order).collect();
    vo.sort_unstable();
    let mut fo: Vec<u64> = l.singular_faces().map(|f| f.order).collect();
    fo.sort_unstable();
    Facts {
        vertex_count: Some(vo.len()),
        face_count: Some(fo.len()),
        vertex_orders: Some(vo),
        face_orders: Some(fo),
        faces: Some(l.singular_faces().map(|f| [f.face.0 as u64, f.face.1 as u64, f.order]).collect()),
        isolated_count: Some(l.isolated_vertices().count()),
        smooth: Some(l.singular_faces().all(|f| f.smooth_sphere)),
        lens: Some(l.singular_faces().map(|f| [f.lens.l1, f.lens.l2, f.lens.d]).collect()),
        ..Facts::default()
    }
}

fn compute(item: &Item) -> Result<Facts> {
    let wp = WeightPair::new(item.p, item.q)?;
    match item.kind {
        Kind::Locus => {
            let (Some(a), Some(b)) = (item.a, item.b) else { bail!("locus item needs a and b") };
            let act = ActionSpec::new(a, b)?;
            let l = match item.view {
                View::Circle => singular_locus(&wp, &act)?,
                View::Torus => torus_quotient_locus(&wp, &act)?,
            };
            Ok(locus_facts(&l))
        }
        Kind::Construct => {
            let sigma: Perm3 = item.sigma.as_deref().context("construct item needs sigma")?.parse()?;
            let [e1, e2] = item.eps.context("construct item needs eps")?;
            let act = build_action(&wp, sigma, (e1, e2), item.s.context("construct item needs s")?)?;
            Ok(locus_facts(&singular_locus(&wp, &act)?))
        }
        Kind::SelfLocus => {
            let d = self_singular_locus(&wp)?;
            let mut vo: Vec<u64> = d.singular_circles().map(|c| c.order).collect();
            vo.sort_unstable();
            Ok(Facts {
                vertex_count: Some(vo.len()),
                vertex_orders: Some(vo),
                face_count: Some(d.singular_faces().count()),
                manifold: Some(is_manifold(&wp)),
                positively_curved: Some(is_positively_curved(&wp)),
                ..Facts::default()
            })
        }
        Kind::Space => {
            let manifold = is_manifold(&wp);
            Ok(Facts {
                h: Some(invariant_h(&wp)),
                manifold: Some(manifold),
                positively_curved: Some(is_positively_curved(&wp)),
                alpha_vanishes: if manifold { Some(alpha_vanishes(&wp)?) } else { None },
                one_point: if manifold { Some(one_point_decision(&wp)?.is_some()) } else { None },
                ..Facts::default()
            })
        }
    }
}

/// Keep only the fields that were stated, so the report compares like with like.
fn project(stated: &Facts, full: &Facts) -> (Facts, Vec<String>) {
    let s = serde_json::to_value(stated).expect("facts serialize");
    let c = serde_json::to_value(full).expect("facts serialize");
    let (s, c) = (s.as_object().unwrap(), c.as_object().unwrap());
    let mut kept = serde_json::Map::new();
    let mut differs = Vec::new();
    for (k, sv) in s {
        let cv = c.get(k).cloned().unwrap_or(serde_json::Value::Null);
        if &cv != sv {
            differs.push(k.clone());
        }
        kept.insert(k.clone(), cv);
    }
    let projected = serde_json::from_value(serde_json::Value::Object(kept)).unwrap_or_default();
    (projected, differs)
}

pub fn run(corpus: &Corpus) -> VerificationReport {
    let mut items = Vec::with_capacity(corpus.item.len());
    let mut counts = Counts::default();
    for item in &corpus.item {
        let (status, computed, differs, error) = match compute(item) {
            Ok(full) => {
                let (computed, differs) = project(&item.expect, &full);
                let status = if differs.is_empty() { Status::Match } else { Status::Mismatch };
                (status, computed, differs, None)
            }
            Err(e) => (Status::NotComparable, Facts::default(), Vec::new(), Some(format!("{e:#}"))),
        };
        counts.total += 1;
        match status {
            Status::Match => counts.matched += 1,
            Status::Mismatch => counts.mismatched += 1,
            Status::NotComparable => counts.not_comparable += 1,
        }
        if item.expected_mismatch {
            counts.expected_mismatch += 1;
        } else if status != Status::Match {
            counts.unexpected += 1;
        }
        items.push(ItemReport {
            id: item.id.clone(),
            claim: item.claim.clone(),
            expected_mismatch: item.expected_mismatch,
            status,
            stated: item.expect.clone(),
            computed,
            differs,
            note: item.note.clone(),
            error,
        });
    }
    VerificationReport { items, counts }
}

fn facts_line(f: &Facts) -> String {
    let v = serde_json::to_value(f).expect("facts serialize");
    let mut parts = BTreeMap::new();
    for (k, x) in v.as_object().unwrap() {
        parts.insert(k.clone(), x.to_string());
    }
    parts.into_iter().map(|(k, x)| format!("{k}={x}")).collect::<Vec<_>>().join(" ")
}

pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    for it in &r.items {
        let status = match it.status {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::NotComparable => "not-comparable",
        };
        let label = if it.expected_mismatch { " (expected mismatch)" } else { "" };
        writeln!(out, "[{status}]{label} {}", it.id).unwrap();
        writeln!(out, "    claim:    {}", it.claim).unwrap();
        writeln!(out, "    stated:   {}", facts_line(&it.stated)).unwrap();
        if let Some(e) = &it.error {
            writeln!(out, "    error:    {e}").unwrap();
        } else {
            writeln!(out, "    computed: {}", facts_line(&it.computed)).unwrap();
        }
        if let Some(n) = &it.note {
            writeln!(out, "    note:     {n}").unwrap();
        }
    }
    let c = &r.counts;
    writeln!(
        out,
        "\n{} items: {} match, {} mismatch, {} not comparable; {} labelled expected-mismatch, {} unexpected",
        c.total, c.matched, c.mismatched, c.not_comparable, c.expected_mismatch, c.unexpected
    )
    .unwrap();
    out
}
