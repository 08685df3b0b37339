//! De Bruijn graphs over small alphabets.
//!
//! Nodes are (n-1)-grams and every edge is named by the n-gram obtained by
//! overlapping its endpoints: `00` and `01` meet in `001`. Since an edge is
//! fully determined by its label, graphs and sub-graphs are both just sets of
//! n-grams over a fixed alphabet and order.

mod cycle;
mod dot;
mod euler;
pub mod fixtures;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::residue::Residue;

pub use cycle::{
    circuit_to_sequence, debruijn_sequence, validate_cycle, windows, CoverageReport, CyclicSequence,
};
pub use dot::{to_dot, DotOptions};
pub use euler::{eulerian_circuit, is_eulerian, EulerianReport, Unbalanced};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),
    #[error("symbol {0:?} is not a printable ASCII character")]
    InvalidSymbol(char),
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("symbol {symbol:?} is not in alphabet {alphabet}")]
    SymbolNotInAlphabet { symbol: char, alphabet: String },
    #[error("gram {gram} has length {len}, expected {expected}")]
    GramLength {
        gram: String,
        len: usize,
        expected: usize,
    },
    #[error("graph is not Eulerian: {0}")]
    NotEulerian(Box<EulerianReport>),
    #[error("graph has no edges")]
    NoEdges,
    #[error("edges {from} and {to} do not chain")]
    BrokenChain { from: String, to: String },
    #[error("cyclic sequence must not be empty")]
    EmptySequence,
    #[error("class edges need the alphabet 018 at order 3, got {alphabet} at order {order}")]
    NotCubicAlphabet { alphabet: String, order: usize },
}

/// A fixed-length word over an alphabet. Used for both nodes and edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gram(Vec<u8>);

impl Gram {
    pub(crate) fn from_bytes(bytes: Vec<u8>) -> Self {
        Gram(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        // alphabets only admit ASCII
        std::str::from_utf8(&self.0).expect("grams are ASCII")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix(&self) -> Gram {
        Gram(self.0[..self.0.len() - 1].to_vec())
    }

    pub fn suffix(&self) -> Gram {
        Gram(self.0[1..].to_vec())
    }

    pub fn reversed(&self) -> Gram {
        Gram(self.0.iter().rev().copied().collect())
    }

    pub fn first(&self) -> u8 {
        self.0[0]
    }
}

impl fmt::Display for Gram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered set of distinct single-character symbols. The order is the
/// tie-breaking order for every traversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
}

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Self, GraphError> {
        if symbols.is_empty() {
            return Err(GraphError::EmptyAlphabet);
        }
        let mut seen = Vec::new();
        for c in symbols.chars() {
            if !c.is_ascii_graphic() {
                return Err(GraphError::InvalidSymbol(c));
            }
            if seen.contains(&(c as u8)) {
                return Err(GraphError::DuplicateSymbol(c));
            }
            seen.push(c as u8);
        }
        Ok(Alphabet { symbols: seen })
    }

    pub fn binary() -> Self {
        Alphabet::new("01").unwrap()
    }

    /// The cubic residues mod 9.
    pub fn cubic() -> Self {
        Alphabet::new("018").unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.symbols).expect("ASCII alphabet")
    }

    pub fn rank(&self, symbol: u8) -> Option<usize> {
        self.symbols.iter().position(|&s| s == symbol)
    }

    pub fn contains(&self, symbol: u8) -> bool {
        self.rank(symbol).is_some()
    }

    /// Lexicographic comparison by symbol rank.
    pub fn compare(&self, a: &Gram, b: &Gram) -> Ordering {
        let key = |g: &Gram| -> Vec<usize> {
            g.as_bytes()
                .iter()
                .map(|&s| self.rank(s).unwrap_or(usize::MAX))
                .collect()
        };
        key(a).cmp(&key(b))
    }

    pub fn check_symbols(&self, text: &str) -> Result<(), GraphError> {
        match text
            .chars()
            .find(|&c| !c.is_ascii() || !self.contains(c as u8))
        {
            Some(symbol) => Err(GraphError::SymbolNotInAlphabet {
                symbol,
                alphabet: self.as_str().to_string(),
            }),
            None => Ok(()),
        }
    }

    /// Parses a gram of the given length.
    pub fn gram(&self, text: &str, len: usize) -> Result<Gram, GraphError> {
        self.check_symbols(text)?;
        if text.len() != len {
            return Err(GraphError::GramLength {
                gram: text.to_string(),
                len: text.len(),
                expected: len,
            });
        }
        Ok(Gram(text.as_bytes().to_vec()))
    }

    /// All words of length `len`, in rank order.
    pub fn words(&self, len: usize) -> Vec<Gram> {
        let mut out: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    self.symbols.iter().map(move |&s| {
                        let mut w = w.clone();
                        w.push(s);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(Gram).collect()
    }

    fn sort(&self, grams: &mut [Gram]) {
        grams.sort_by(|a, b| self.compare(a, b));
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A set of n-gram edges over an alphabet. Nodes are the endpoints of the
/// edges; for the full graph that is every (n-1)-gram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeBruijnGraph {
    alphabet: Alphabet,
    order: usize,
    nodes: Vec<Gram>,
    edges: Vec<Gram>,
}

/// Sub-graphs share the representation; only the edge set differs.
pub type EdgeSubgraph = DeBruijnGraph;

impl DeBruijnGraph {
    /// The full graph B(alphabet, order).
    pub fn full(alphabet: Alphabet, order: usize) -> Result<Self, GraphError> {
        if order < 2 {
            return Err(GraphError::OrderTooSmall(order));
        }
        let edges = alphabet.words(order);
        let nodes = alphabet.words(order - 1);
        Ok(DeBruijnGraph {
            alphabet,
            order,
            nodes,
            edges,
        })
    }

    /// Sub-graph induced by an edge set. Duplicate edges collapse.
    pub fn from_edges<I>(alphabet: Alphabet, order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Gram>,
    {
        if order < 2 {
            return Err(GraphError::OrderTooSmall(order));
        }
        let mut list = Vec::new();
        for e in edges {
            alphabet.gram(e.as_str(), order)?;
            list.push(e);
        }
        alphabet.sort(&mut list);
        list.dedup();
        let mut nodes: Vec<Gram> = list.iter().flat_map(|e| [e.prefix(), e.suffix()]).collect();
        alphabet.sort(&mut nodes);
        nodes.dedup();
        Ok(DeBruijnGraph {
            alphabet,
            order,
            nodes,
            edges: list,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Nodes in rank order.
    pub fn nodes(&self) -> &[Gram] {
        &self.nodes
    }

    /// Edges in rank order.
    pub fn edges(&self) -> &[Gram] {
        &self.edges
    }

    pub fn edge_set(&self) -> BTreeSet<Gram> {
        self.edges.iter().cloned().collect()
    }

    pub fn contains_edge(&self, e: &Gram) -> bool {
        self.edges
            .binary_search_by(|probe| self.alphabet.compare(probe, e))
            .is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.edges.len() == self.alphabet.len().pow(self.order as u32)
    }

    /// (in-degree, out-degree) for every node.
    pub fn degrees(&self) -> BTreeMap<Gram, (usize, usize)> {
        let mut deg: BTreeMap<Gram, (usize, usize)> =
            self.nodes.iter().map(|n| (n.clone(), (0, 0))).collect();
        for e in &self.edges {
            deg.get_mut(&e.prefix()).expect("prefix is a node").1 += 1;
            deg.get_mut(&e.suffix()).expect("suffix is a node").0 += 1;
        }
        deg
    }

    pub(crate) fn node_index(&self) -> HashMap<&Gram, usize> {
        self.nodes.iter().enumerate().map(|(i, n)| (n, i)).collect()
    }
}

/// Endpoints of an edge of the given order: (prefix, suffix).
pub fn edge_endpoints(e: &Gram, order: usize) -> Result<(Gram, Gram), GraphError> {
    if e.len() != order || order < 2 {
        return Err(GraphError::GramLength {
            gram: e.to_string(),
            len: e.len(),
            expected: order,
        });
    }
    Ok((e.prefix(), e.suffix()))
}

pub fn reverse_edges<'a, I>(edges: I) -> BTreeSet<Gram>
where
    I: IntoIterator<Item = &'a Gram>,
{
    edges.into_iter().map(Gram::reversed).collect()
}

/// Edges of a graph over `018` at order 3 whose digit sum is congruent to `z`.
pub fn edges_for_class(g: &DeBruijnGraph, z: Residue) -> Result<Vec<Gram>, GraphError> {
    if g.alphabet() != &Alphabet::cubic() || g.order() != 3 {
        return Err(GraphError::NotCubicAlphabet {
            alphabet: g.alphabet().to_string(),
            order: g.order(),
        });
    }
    Ok(g.edges()
        .iter()
        .filter(|e| {
            let sum: u32 = e.as_bytes().iter().map(|&b| (b - b'0') as u32).sum();
            sum % 9 == z.value() as u32
        })
        .cloned()
        .collect())
}
