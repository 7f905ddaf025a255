//! DOT emitters for catalog graphs, ltt structures, and diagrams.

use std::fmt::Write;

use crate::diagram::IdDiagram;
use crate::ltt::LttStructure;
use crate::moves::TripleKind;
use crate::whitehead::SimpleGraph;

pub fn graph_dot(g: &SimpleGraph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{name}\" {{");
    let _ = writeln!(out, "  node [shape=circle];");
    for &label in g.labels() {
        let _ = writeln!(out, "  \"{label}\";");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  \"{}\" -- \"{}\";", g.labels()[u], g.labels()[v]);
    }
    out.push_str("}\n");
    out
}

/// Purple vertices and edges carry color attributes, the red vertex and
/// edge stand out, black edges are dashed.
pub fn ltt_dot(s: &LttStructure, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{name}\" {{");
    let _ = writeln!(out, "  node [shape=circle];");
    for d in s.rose().directions() {
        let color = if s.is_red(d) { "red" } else { "purple" };
        let _ = writeln!(out, "  \"{d}\" [color={color}];");
    }
    for t in s.black_edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\" [style=dashed, color=black];",
            t.first(),
            t.second()
        );
    }
    for &t in s.colored_edges() {
        let red = s.is_red(t.first()) || s.is_red(t.second());
        let color = if red { "red" } else { "purple" };
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\" [color={color}];",
            t.first(),
            t.second()
        );
    }
    out.push_str("}\n");
    out
}

/// A single generating triple as a two-node diagram, source to
/// destination.
pub fn triple_dot(t: &crate::moves::GeneratingTriple, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{name}\" {{");
    let _ = writeln!(out, "  node [shape=box, fontsize=9];");
    let _ = writeln!(out, "  src [label=\"{}\"];", t.source());
    let _ = writeln!(out, "  dst [label=\"{}\"];", t.dest());
    let _ = writeln!(
        out,
        "  src -> dst [label=\"{} [{:?}]\"];",
        t.fold(),
        t.kind()
    );
    out.push_str("}\n");
    out
}

pub fn diagram_dot(d: &IdDiagram, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{name}\" {{");
    let _ = writeln!(out, "  node [shape=box, fontsize=9];");
    for (i, node) in d.nodes().iter().enumerate() {
        let red = node.d_u().map(|d| d.to_string()).unwrap_or_default();
        let attach = node.d_bar_a().map(|d| d.to_string()).unwrap_or_default();
        let _ = writeln!(out, "  n{i} [label=\"#{i} red={red}@{attach}\"];");
    }
    for e in d.edges() {
        let style = match e.triple.kind() {
            TripleKind::Extension => "solid",
            TripleKind::Switch => "bold",
        };
        let _ = writeln!(
            out,
            "  n{} -> n{} [style={style}, label=\"{}\"];",
            e.src,
            e.dst,
            e.triple.fold()
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_dot_is_well_formed() {
        let g = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let dot = graph_dot(&g, "path3");
        assert!(dot.starts_with("graph \"path3\" {"));
        assert!(dot.contains("\"a\" -- \"b\";"));
        assert!(dot.trim_end().ends_with('}'));
    }
}
