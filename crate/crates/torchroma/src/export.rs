//! Output formats for graphs, verdicts, colorings, and enumeration listings.
//!
//! Three text formats cover interchange with external tools:
//!
//! * Graphviz DOT, with vertices labeled by their `(i,j)` coordinates;
//! * DIMACS `.col`, for standard coloring solvers (simple graphs only,
//!   since the format cannot express loops or edge multiplicities);
//! * JSON documents built with [`serde_json`], one shape per payload kind.
//!
//! There is also a plain-text grid renderer for colorings that lays the
//! torus out the way the diagrams in this crate's documentation do:
//! columns `i = 1..r` run left to right and rows `j` increase upward.

use serde_json::{json, Value};

use crate::chroma_oracle::Classification;
use crate::coloring_engine::Coloring;
use crate::lattice_canon::normal_circuit_lengths;
use crate::torus_graph::{TorusGraph, TorusParams};
use crate::{Error, Verdict};

/// Renders the graph in Graphviz DOT form. Vertices are named `v1..vn` by
/// their 1-based ids and labeled with their `(i,j)` coordinates; loops and
/// parallel edges appear as-is (DOT supports both).
pub fn to_dot(g: &TorusGraph) -> String {
    let p = g.params();
    let mut out = String::new();
    out.push_str(&format!("graph \"{p}\" {{\n"));
    for idx in 0..g.vertex_count() {
        let v = p.vertex_at(idx);
        out.push_str(&format!("  v{} [label=\"{}\"];\n", idx + 1, v));
    }
    for (u, w) in g.edges() {
        out.push_str(&format!("  v{} -- v{};\n", u + 1, w + 1));
    }
    out.push_str("}\n");
    out
}

/// Renders the graph in DIMACS `.col` form (`p edge n m` header, one
/// `e u v` line per edge, 1-based vertex ids).
///
/// Only simple graphs are representable; call sites that want to export a
/// multigraph should collapse it first (see
/// [`TorusGraph::underlying_simple_graph`]).
pub fn to_dimacs(g: &TorusGraph) -> Result<String, Error> {
    if !g.classify_edges().is_simple {
        return Err(Error::NotSimple);
    }
    let p = g.params();
    let edges = g.edges();
    let mut out = String::new();
    out.push_str(&format!("c {p}\n"));
    out.push_str(&format!("p edge {} {}\n", g.vertex_count(), edges.len()));
    for (u, w) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, w + 1));
    }
    Ok(out)
}

/// The graph as a JSON document: `{"r","s","t","edges":[[u,v],...]}` with
/// 1-based vertex ids. Edge multiplicities are written out in full and each
/// loop appears once as `[u,u]`, so a triangulation always lists `3n` edges.
pub fn graph_json(g: &TorusGraph) -> Value {
    let p = g.params();
    let edges: Vec<Value> = g
        .edges()
        .into_iter()
        .map(|(u, w)| json!([u + 1, w + 1]))
        .collect();
    json!({
        "r": p.r(),
        "s": p.s(),
        "t": p.t(),
        "edges": edges,
    })
}

/// A classification verdict as a JSON document. Chromatic verdicts carry
/// `"chi"`; the loops verdict omits it (no proper coloring exists at all).
/// `"rule"` names the rule-table entry that decided the instance.
pub fn verdict_json(p: TorusParams, c: &Classification) -> Value {
    match c.verdict {
        Verdict::Loops => json!({
            "r": p.r(),
            "s": p.s(),
            "t": p.t(),
            "verdict": "loops",
            "rule": c.rule,
        }),
        Verdict::Chromatic(k) => json!({
            "r": p.r(),
            "s": p.s(),
            "t": p.t(),
            "verdict": "chromatic",
            "chi": k,
            "rule": c.rule,
        }),
    }
}

/// A coloring certificate as a JSON document:
/// `{"r","s","t","k","strategy","colors":[[..],..]}` where `colors` holds
/// one inner array per column `i = 1..r`, each listing the colors of
/// `(i,1)..(i,s)` in order.
pub fn coloring_json(c: &Coloring) -> Value {
    let p = c.params;
    let s = p.s() as usize;
    let colors: Vec<Value> = c
        .assignment
        .chunks(s)
        .map(|col| Value::from(col.to_vec()))
        .collect();
    json!({
        "r": p.r(),
        "s": p.s(),
        "t": p.t(),
        "k": c.k,
        "strategy": c.strategy.to_string(),
        "colors": colors,
    })
}

/// A listing of parameter triples as a JSON array, each entry
/// `{"r","s","t","circuits":[a,b,c]}` with the normal circuit lengths in
/// decreasing order.
pub fn enumeration_json(classes: &[TorusParams]) -> Value {
    let entries: Vec<Value> = classes
        .iter()
        .map(|&p| {
            json!({
                "r": p.r(),
                "s": p.s(),
                "t": p.t(),
                "circuits": normal_circuit_lengths(p).as_array(),
            })
        })
        .collect();
    Value::Array(entries)
}

/// Renders a coloring as a text grid in the usual torus layout: columns
/// `i = 1..r` left to right, rows `j = s` at the top down to `j = 1`, one
/// color digit per cell.
pub fn render_grid(c: &Coloring) -> String {
    let p = c.params;
    let s = p.s() as usize;
    let mut out = String::new();
    for j in (0..s).rev() {
        let mut line = String::new();
        for i in 0..p.r() as usize {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&c.assignment[i * s + j].to_string());
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring_engine::{best_coloring, color_t1s2, SolveBudget, Strategy};
    use crate::torus_graph::TorusParams;

    fn graph(r: i64, s: i64, t: i64) -> TorusGraph {
        TorusGraph::build(TorusParams::new(r, s, t).unwrap())
    }

    #[test]
    fn dot_lists_every_vertex_and_edge() {
        let g = graph(1, 7, 2);
        let dot = to_dot(&g);
        assert!(dot.starts_with("graph \"T(1, 7, 2)\" {"));
        assert!(dot.contains("v1 [label=\"(1,1)\"];"));
        assert!(dot.contains("v7 [label=\"(1,7)\"];"));
        assert_eq!(dot.matches(" -- ").count(), 21);
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn dot_keeps_loops_and_parallels() {
        let g = graph(1, 3, 0);
        let dot = to_dot(&g);
        assert!(dot.contains("v1 -- v1;"));
        assert_eq!(dot.matches(" -- ").count(), 9);
    }

    #[test]
    fn dimacs_header_and_edges_for_k7() {
        let g = graph(1, 7, 2);
        let col = to_dimacs(&g).unwrap();
        let mut lines = col.lines();
        assert_eq!(lines.next(), Some("c T(1, 7, 2)"));
        assert_eq!(lines.next(), Some("p edge 7 21"));
        let edge_lines: Vec<&str> = lines.collect();
        assert_eq!(edge_lines.len(), 21);
        assert!(edge_lines.contains(&"e 1 2"));
        assert!(edge_lines.iter().all(|l| l.starts_with("e ")));
    }

    #[test]
    fn dimacs_rejects_multigraphs() {
        assert!(matches!(to_dimacs(&graph(1, 5, 1)), Err(Error::NotSimple)));
        assert!(matches!(to_dimacs(&graph(1, 3, 0)), Err(Error::NotSimple)));
    }

    #[test]
    fn dimacs_accepts_collapsed_multigraph() {
        let simple = graph(1, 5, 1).underlying_simple_graph().unwrap();
        let col = to_dimacs(&simple).unwrap();
        assert!(col.contains("p edge 5 "));
    }

    #[test]
    fn graph_json_expands_multiplicities() {
        let v = graph_json(&graph(5, 6, 2));
        assert_eq!(v["r"], 5);
        assert_eq!(v["s"], 6);
        assert_eq!(v["t"], 2);
        let edges = v["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 90);
        for e in edges {
            let u = e[0].as_u64().unwrap();
            let w = e[1].as_u64().unwrap();
            assert!((1..=30).contains(&u) && (1..=30).contains(&w));
        }
    }

    #[test]
    fn graph_json_lists_loops_once() {
        let v = graph_json(&graph(1, 3, 0));
        let edges = v["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 9);
        let loops = edges.iter().filter(|e| e[0] == e[1]).count();
        assert_eq!(loops, 3);
    }

    #[test]
    fn verdict_json_shapes() {
        let p = TorusParams::new(1, 7, 2).unwrap();
        let v = verdict_json(p, &crate::classify(p));
        assert_eq!(v["verdict"], "chromatic");
        assert_eq!(v["chi"], 7);
        assert!(v["rule"].as_str().unwrap().contains("5.1"));

        let p = TorusParams::new(1, 3, 0).unwrap();
        let v = verdict_json(p, &crate::classify(p));
        assert_eq!(v["verdict"], "loops");
        assert!(v.get("chi").is_none());
    }

    #[test]
    fn coloring_json_round_trip() {
        let c = color_t1s2(11).unwrap();
        let v = coloring_json(&c);
        assert_eq!(v["k"], 6);
        assert_eq!(v["strategy"], "t1s2");
        let cols = v["colors"].as_array().unwrap();
        assert_eq!(cols.len(), 1);
        let digits: Vec<u64> = cols[0]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        assert_eq!(digits, vec![1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn coloring_json_one_array_per_column() {
        let (_, c) = best_coloring(
            TorusParams::new(3, 8, 6).unwrap(),
            &SolveBudget::default(),
        )
        .unwrap();
        let v = coloring_json(&c);
        let cols = v["colors"].as_array().unwrap();
        assert_eq!(cols.len(), 3);
        for col in cols {
            assert_eq!(col.as_array().unwrap().len(), 8);
        }
    }

    #[test]
    fn grid_renders_rows_top_down() {
        let p = TorusParams::new(2, 3, 1).unwrap();
        let c = Coloring::new(p, vec![1, 2, 3, 4, 5, 6], 6, Strategy::ExactSearch).unwrap();
        // Column 1 holds colors 1,2,3 for j = 1,2,3; column 2 holds 4,5,6.
        // Rows print j = 3 first, so the top line pairs (1,3) with (2,3).
        assert_eq!(render_grid(&c), "3 6\n2 5\n1 4\n");
    }

    #[test]
    fn enumeration_json_shape() {
        let classes = crate::enumerate_order(7);
        let v = enumeration_json(&classes);
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), classes.len());
        let k7 = arr
            .iter()
            .find(|e| e["circuits"] == json!([7, 7, 7]))
            .expect("the complete graph class is present");
        assert_eq!(k7["r"], 1);
    }
}
