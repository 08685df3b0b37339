use std::collections::VecDeque;
use std::fmt;

use super::{DeBruijnGraph, Gram, GraphError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unbalanced {
    pub node: Gram,
    pub in_degree: usize,
    pub out_degree: usize,
}

/// Outcome of the directed Eulerian-circuit test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianReport {
    pub edge_count: usize,
    pub unbalanced: Vec<Unbalanced>,
    /// Weakly connected components of the nodes that carry edges.
    pub components: Vec<Vec<Gram>>,
    /// All nodes that carry edges are mutually reachable.
    pub strongly_connected: bool,
}

impl EulerianReport {
    pub fn is_eulerian(&self) -> bool {
        self.unbalanced.is_empty() && self.strongly_connected
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count == 0
    }
}

impl fmt::Display for EulerianReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "no edges (Eulerian by convention)");
        }
        if self.is_eulerian() {
            return write!(f, "balanced and strongly connected");
        }
        let mut parts = Vec::new();
        if !self.unbalanced.is_empty() {
            let nodes: Vec<String> = self
                .unbalanced
                .iter()
                .map(|u| format!("{} (in {}, out {})", u.node, u.in_degree, u.out_degree))
                .collect();
            parts.push(format!("unbalanced nodes: {}", nodes.join(", ")));
        }
        if self.components.len() > 1 {
            let comps: Vec<String> = self
                .components
                .iter()
                .map(|c| {
                    let names: Vec<&str> = c.iter().map(Gram::as_str).collect();
                    format!("{{{}}}", names.join(", "))
                })
                .collect();
            parts.push(format!(
                "disconnected: {} components {}",
                self.components.len(),
                comps.join(" ")
            ));
        } else if !self.strongly_connected {
            parts.push("not strongly connected".to_string());
        }
        write!(f, "{}", parts.join("; "))
    }
}

struct Adjacency {
    out: Vec<Vec<(usize, usize)>>,
    inc: Vec<Vec<usize>>,
}

// Out-lists keep the graph's rank order of edges: (edge index, head node).
fn adjacency(g: &DeBruijnGraph) -> Adjacency {
    let index = g.node_index();
    let n = g.nodes().len();
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for (ei, e) in g.edges().iter().enumerate() {
        let tail = index[&e.prefix()];
        let head = index[&e.suffix()];
        out[tail].push((ei, head));
        inc[head].push(tail);
    }
    Adjacency { out, inc }
}

fn reach(start: usize, next: impl Fn(usize) -> Vec<usize>, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        for w in next(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Balanced degrees plus strong connectivity of the nodes that carry edges.
pub fn is_eulerian(g: &DeBruijnGraph) -> EulerianReport {
    let adj = adjacency(g);
    let n = g.nodes().len();
    let unbalanced = g
        .nodes()
        .iter()
        .enumerate()
        .filter(|&(i, _)| adj.inc[i].len() != adj.out[i].len())
        .map(|(i, node)| Unbalanced {
            node: node.clone(),
            in_degree: adj.inc[i].len(),
            out_degree: adj.out[i].len(),
        })
        .collect();

    // every node of an edge-induced graph carries at least one edge
    let mut component_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let seen = reach(
            start,
            |v| {
                adj.out[v]
                    .iter()
                    .map(|&(_, h)| h)
                    .chain(adj.inc[v].iter().copied())
                    .collect()
            },
            n,
        );
        let members: Vec<Gram> = (0..n)
            .filter(|&i| seen[i])
            .map(|i| {
                component_of[i] = id;
                g.nodes()[i].clone()
            })
            .collect();
        components.push(members);
    }

    let strongly_connected = n == 0 || {
        let fwd = reach(0, |v| adj.out[v].iter().map(|&(_, h)| h).collect(), n);
        let back = reach(0, |v| adj.inc[v].clone(), n);
        fwd.iter().zip(&back).all(|(a, b)| *a && *b)
    };

    EulerianReport {
        edge_count: g.edges().len(),
        unbalanced,
        components,
        strongly_connected,
    }
}

/// Hierholzer's algorithm from the lowest-ranked node, always taking the
/// lowest-ranked unused outgoing edge.
pub fn eulerian_circuit(g: &DeBruijnGraph) -> Result<Vec<Gram>, GraphError> {
    if g.edges().is_empty() {
        return Err(GraphError::NoEdges);
    }
    let report = is_eulerian(g);
    if !report.is_eulerian() {
        return Err(GraphError::NotEulerian(Box::new(report)));
    }
    let adj = adjacency(g);
    let mut next_out = vec![0usize; adj.out.len()];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(0, None)];
    let mut circuit = Vec::with_capacity(g.edges().len());
    while let Some(&(v, via)) = stack.last() {
        if let Some(&(e, head)) = adj.out[v].get(next_out[v]) {
            next_out[v] += 1;
            stack.push((head, Some(e)));
        } else {
            stack.pop();
            if let Some(e) = via {
                circuit.push(g.edges()[e].clone());
            }
        }
    }
    circuit.reverse();
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::debruijn::fixtures::Fixture;
    use crate::debruijn::Alphabet;
    use proptest::prelude::*;

    fn strs(grams: &[Gram]) -> Vec<&str> {
        grams.iter().map(Gram::as_str).collect()
    }

    fn assert_closed_walk(circuit: &[Gram]) {
        for (i, e) in circuit.iter().enumerate() {
            let next = &circuit[(i + 1) % circuit.len()];
            assert_eq!(e.suffix(), next.prefix(), "{e} -> {next}");
        }
    }

    #[test]
    fn full_ternary_is_eulerian() {
        let g = DeBruijnGraph::full(Alphabet::cubic(), 3).unwrap();
        let r = is_eulerian(&g);
        assert!(r.is_eulerian());
        assert_eq!(r.components.len(), 1);
    }

    #[test]
    fn e1_is_eulerian() {
        assert!(is_eulerian(&Fixture::E1.graph()).is_eulerian());
    }

    #[test]
    fn e0_is_three_two_cycles() {
        let r = is_eulerian(&Fixture::E0.graph());
        assert!(!r.is_eulerian());
        assert!(r.unbalanced.is_empty());
        assert!(!r.strongly_connected);
        let comps: Vec<Vec<&str>> = r.components.iter().map(|c| strs(c)).collect();
        assert_eq!(
            comps,
            vec![vec!["01", "10"], vec!["08", "80"], vec!["18", "81"]]
        );
        assert!(r.to_string().contains("3 components"));
    }

    #[test]
    fn unbalanced_is_reported() {
        let a = Alphabet::binary();
        let g = DeBruijnGraph::from_edges(a.clone(), 3, [a.gram("001", 3).unwrap()]).unwrap();
        let r = is_eulerian(&g);
        assert_eq!(r.unbalanced.len(), 2);
        assert!(matches!(
            eulerian_circuit(&g),
            Err(GraphError::NotEulerian(_))
        ));
    }

    #[test]
    fn empty_edge_set() {
        let g = DeBruijnGraph::from_edges(Alphabet::cubic(), 3, []).unwrap();
        let r = is_eulerian(&g);
        assert!(r.is_eulerian() && r.is_empty());
        assert_eq!(eulerian_circuit(&g), Err(GraphError::NoEdges));
    }

    #[test]
    fn binary_circuit_hand_traced() {
        let g = DeBruijnGraph::full(Alphabet::binary(), 3).unwrap();
        let c = eulerian_circuit(&g).unwrap();
        assert_eq!(
            strs(&c),
            ["000", "001", "010", "101", "011", "111", "110", "100"]
        );
    }

    #[test]
    fn self_loop() {
        let a = Alphabet::binary();
        let g = DeBruijnGraph::from_edges(a.clone(), 3, [a.gram("000", 3).unwrap()]).unwrap();
        assert_eq!(strs(&eulerian_circuit(&g).unwrap()), ["000"]);
    }

    #[test]
    fn fixture_circuits_cover_exactly() {
        for fx in [Fixture::E1, Fixture::E2] {
            let g = fx.graph();
            let c = eulerian_circuit(&g).unwrap();
            assert_eq!(c.len(), 12);
            assert_closed_walk(&c);
            let mut sorted = c.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(
                sorted
                    .into_iter()
                    .collect::<std::collections::BTreeSet<_>>(),
                g.edge_set()
            );
            assert_eq!(eulerian_circuit(&g).unwrap(), c);
        }
    }

    proptest! {
        #[test]
        fn full_circuits_are_closed_and_exhaustive(k in 1usize..=4, n in 2usize..=4) {
            let a = Alphabet::new(&"018a"[..k]).unwrap();
            let g = DeBruijnGraph::full(a, n).unwrap();
            let c = eulerian_circuit(&g).unwrap();
            prop_assert_eq!(c.len(), g.edges().len());
            assert_closed_walk(&c);
            let set: std::collections::BTreeSet<_> = c.iter().cloned().collect();
            prop_assert_eq!(set, g.edge_set());
            prop_assert_eq!(eulerian_circuit(&g).unwrap(), c);
        }
    }
}
