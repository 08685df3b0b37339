//! The three sub-graphs of B(018, 3) drawn as separate figures: the six
//! alternating triples (E0) and two 12-edge Eulerian halves (E1, E2), where
//! E2 is E1 with every edge read backwards.

use std::fmt;
use std::str::FromStr;

use super::{Alphabet, DeBruijnGraph, Gram, GraphError};

const E0: &str = include_str!("../../fixtures/e0.txt");
const E1: &str = include_str!("../../fixtures/e1.txt");
const E2: &str = include_str!("../../fixtures/e2.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fixture {
    E0,
    E1,
    E2,
}

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::E0, Fixture::E1, Fixture::E2];

    pub fn text(self) -> &'static str {
        match self {
            Fixture::E0 => E0,
            Fixture::E1 => E1,
            Fixture::E2 => E2,
        }
    }

    /// Edges in the order they are listed.
    pub fn edges(self) -> Vec<Gram> {
        parse_edge_list(&Alphabet::cubic(), 3, self.text()).expect("bundled fixture parses")
    }

    pub fn graph(self) -> DeBruijnGraph {
        DeBruijnGraph::from_edges(Alphabet::cubic(), 3, self.edges()).expect("bundled fixture")
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Fixture::E0 => "E0",
            Fixture::E1 => "E1",
            Fixture::E2 => "E2",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown fixture {0:?} (expected E0, E1 or E2)")]
pub struct UnknownFixture(pub String);

impl FromStr for Fixture {
    type Err = UnknownFixture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "E0" => Ok(Fixture::E0),
            "E1" => Ok(Fixture::E1),
            "E2" => Ok(Fixture::E2),
            _ => Err(UnknownFixture(s.to_string())),
        }
    }
}

/// One gram per line. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(
    alphabet: &Alphabet,
    order: usize,
    text: &str,
) -> Result<Vec<Gram>, GraphError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| alphabet.gram(l, order))
        .collect()
}

pub fn write_edge_list<'a, I>(edges: I) -> String
where
    I: IntoIterator<Item = &'a Gram>,
{
    edges.into_iter().map(|e| format!("{e}\n")).collect()
}
