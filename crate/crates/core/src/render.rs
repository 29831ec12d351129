//! Text and Graphviz views of a [`SingularLocus`].
//!
//! Vertices sit on a hexagon with alternating parity, so the nine faces are
//! the six sides plus the three long diagonals.

use std::fmt::Write;

use crate::action::SingularLocus;
use crate::perm::Perm3;

/// Hexagon order, starting at the top left and going clockwise.
pub const HEXAGON: [Perm3; 6] = [Perm3::ID, Perm3::T12, Perm3::C123, Perm3::T13, Perm3::C132, Perm3::T23];

fn node_id(s: Perm3) -> String {
    match s.cycle_notation() {
        "id" => "v_id".to_string(),
        other => format!("v{}", other.trim_matches(|c| c == '(' || c == ')')),
    }
}

fn hexagon_pos(k: usize) -> (f64, f64) {
    let angle = std::f64::consts::PI * (2.0 / 3.0 - k as f64 / 3.0);
    (2.0 * angle.cos(), 2.0 * angle.sin())
}

/// Graphviz `graph` with 6 vertex nodes and 9 face edges. Singular elements
/// are drawn bold and red; `pos` hints reproduce the hexagon under `neato -n`.
pub fn to_dot(locus: &SingularLocus, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph singular_locus {{").unwrap();
    writeln!(out, "  label=\"{}\";", title.replace('"', "'")).unwrap();
    writeln!(out, "  layout=neato;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    for (k, &s) in HEXAGON.iter().enumerate() {
        let v = locus.vertex(s);
        let (x, y) = hexagon_pos(k);
        let style = if v.singular { ", color=red, penwidth=2.5" } else { "" };
        writeln!(
            out,
            "  {} [label=\"{}\\n{}\\nZ{}\", pos=\"{:.3},{:.3}!\"{}];",
            node_id(s),
            s,
            v.parity,
            v.order,
            x,
            y,
            style
        )
        .unwrap();
    }
    for f in &locus.faces {
        let [a, b] = f.vertices;
        let style = if f.singular { ", color=red, penwidth=2.5" } else { ", color=gray50" };
        writeln!(
            out,
            "  {} -- {} [label=\"L{}{} {} Z{}\"{}];",
            node_id(a),
            node_id(b),
            f.face.0,
            f.face.1,
            f.lens,
            f.order,
            style
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

/// Plain-text hexagon: singular vertices carry their order, `*` marks
/// singular vertices; singular faces are listed below.
pub fn ascii_hexagon(locus: &SingularLocus) -> String {
    let cell = |s: Perm3| {
        let v = locus.vertex(s);
        let mark = if v.singular { "*" } else { " " };
        format!("{mark}{}[{}]", s, v.order)
    };
    let [v0, v1, v2, v3, v4, v5] = HEXAGON.map(cell);
    let mut out = String::new();
    writeln!(out, "        {v0:<12}{v1}").unwrap();
    writeln!(out, "       /            \\").unwrap();
    writeln!(out, "  {v5:<22}{v2}").unwrap();
    writeln!(out, "       \\            /").unwrap();
    writeln!(out, "        {v4:<12}{v3}").unwrap();
    let sing: Vec<String> = locus
        .singular_faces()
        .map(|f| {
            let smooth = if f.smooth_sphere { ", smooth" } else { "" };
            format!("L{}{} Z{} {}-{} {}{}", f.face.0, f.face.1, f.order, f.vertices[0], f.vertices[1], f.lens, smooth)
        })
        .collect();
    if sing.is_empty() {
        writeln!(out, "  singular faces: none").unwrap();
    } else {
        writeln!(out, "  singular faces: {}", sing.join("; ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{singular_locus, ActionSpec};
    use crate::space::WeightPair;

    #[test]
    fn hexagon_sides_and_diagonals_are_the_faces() {
        let mut edges = Vec::new();
        for k in 0..6 {
            edges.push((HEXAGON[k], HEXAGON[(k + 1) % 6]));
        }
        for k in 0..3 {
            edges.push((HEXAGON[k], HEXAGON[k + 3]));
        }
        for (a, b) in edges {
            assert_ne!(a.parity(), b.parity());
            let shared = (1..=3).filter(|&i| a.apply(i) == b.apply(i)).count();
            assert_eq!(shared, 1, "{a} {b}");
        }
    }

    #[test]
    fn dot_shape() {
        let wp = WeightPair::new([1, 2, 3], [0, 0, 6]).unwrap();
        let act = ActionSpec::new([0, 0, 0], [1, -1, 0]).unwrap();
        let l = singular_locus(&wp, &act).unwrap();
        let dot = to_dot(&l, "test");
        assert_eq!(dot.matches(" -- ").count(), 9);
        assert_eq!(dot.matches("pos=").count(), 6);
        assert!(dot.contains("L23"));
        let txt = ascii_hexagon(&l);
        assert!(txt.contains("L23 Z2"));
    }
}
