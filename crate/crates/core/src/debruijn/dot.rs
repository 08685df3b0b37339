use std::collections::BTreeSet;
use std::fmt::Write;

use super::{DeBruijnGraph, Gram};

#[derive(Debug, Clone, Default)]
pub struct DotOptions {
    /// Graph name; defaults to `debruijn`.
    pub name: Option<String>,
    pub highlight: BTreeSet<Gram>,
    pub dashed: BTreeSet<Gram>,
}

/// Renders a `digraph` with gram labels on nodes and edges, in rank order.
pub fn to_dot(g: &DeBruijnGraph, opts: &DotOptions) -> String {
    let name = opts.name.as_deref().unwrap_or("debruijn");
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    for node in g.nodes() {
        writeln!(out, "  \"{node}\" [label=\"{node}\"];").unwrap();
    }
    for e in g.edges() {
        let mut attrs = vec![format!("label=\"{e}\"")];
        if opts.dashed.contains(e) {
            attrs.push("style=dashed".to_string());
        }
        if opts.highlight.contains(e) {
            attrs.push("color=red".to_string());
            attrs.push("penwidth=2".to_string());
        }
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [{}];",
            e.prefix(),
            e.suffix(),
            attrs.join(", ")
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::debruijn::fixtures::Fixture;
    use crate::debruijn::Alphabet;

    #[test]
    fn binary_structure() {
        let g = DeBruijnGraph::full(Alphabet::binary(), 3).unwrap();
        let dot = to_dot(&g, &DotOptions::default());
        assert!(dot.starts_with("digraph \"debruijn\" {\n"));
        assert!(dot.ends_with("}\n"));
        assert_eq!(dot.matches("[label=\"").count(), 12);
        assert_eq!(dot.matches(" -> ").count(), 8);
        assert!(dot.contains("\"00\" -> \"01\" [label=\"001\"];"));
    }

    #[test]
    fn dashed_edges() {
        let g = Fixture::E0.graph();
        let opts = DotOptions {
            dashed: g.edge_set(),
            ..Default::default()
        };
        let dot = to_dot(&g, &opts);
        assert_eq!(dot.matches("style=dashed").count(), 6);
    }

    #[test]
    fn empty_graph() {
        let g = DeBruijnGraph::from_edges(Alphabet::cubic(), 3, []).unwrap();
        assert_eq!(
            to_dot(&g, &DotOptions::default()),
            "digraph \"debruijn\" {\n}\n"
        );
    }

    #[test]
    fn deterministic() {
        let g = DeBruijnGraph::full(Alphabet::cubic(), 3).unwrap();
        assert_eq!(
            to_dot(&g, &DotOptions::default()),
            to_dot(&g, &DotOptions::default())
        );
    }
}
