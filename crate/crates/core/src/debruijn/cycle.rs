use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{eulerian_circuit, Alphabet, DeBruijnGraph, Gram, GraphError};

/// A non-empty cyclic string. Indexing wraps around.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicSequence {
    symbols: Vec<u8>,
}

impl CyclicSequence {
    /// Parses `text`, rejecting symbols outside `alphabet`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self, GraphError> {
        if text.is_empty() {
            return Err(GraphError::EmptySequence);
        }
        alphabet.check_symbols(text)?;
        Ok(CyclicSequence {
            symbols: text.as_bytes().to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.symbols).expect("ASCII symbols")
    }

    /// The `n` symbols starting at `start`, read cyclically.
    pub fn window(&self, start: usize, n: usize) -> Gram {
        let len = self.symbols.len();
        Gram::from_bytes((0..n).map(|j| self.symbols[(start + j) % len]).collect())
    }

    pub fn rotate(&self, by: usize) -> CyclicSequence {
        let mut symbols = self.symbols.clone();
        symbols.rotate_left(by % self.symbols.len());
        CyclicSequence { symbols }
    }

    /// Least rotation in byte order.
    pub fn canonical(&self) -> CyclicSequence {
        (0..self.len())
            .map(|i| self.rotate(i))
            .min_by(|a, b| a.symbols.cmp(&b.symbols))
            .expect("non-empty")
    }

    /// Equality up to rotation.
    pub fn same_cycle(&self, other: &CyclicSequence) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

impl fmt::Display for CyclicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// All `len(s)` windows of length `n`, in reading order.
pub fn windows(s: &CyclicSequence, n: usize) -> Vec<Gram> {
    (0..s.len()).map(|i| s.window(i, n)).collect()
}

/// Writes the first symbol of every edge, so that window `i` of the result is
/// edge `i` of the circuit.
pub fn circuit_to_sequence(circuit: &[Gram]) -> Result<CyclicSequence, GraphError> {
    if circuit.is_empty() {
        return Err(GraphError::NoEdges);
    }
    let order = circuit[0].len();
    for (i, e) in circuit.iter().enumerate() {
        if e.len() != order || order < 2 {
            return Err(GraphError::GramLength {
                gram: e.to_string(),
                len: e.len(),
                expected: order,
            });
        }
        let next = &circuit[(i + 1) % circuit.len()];
        if e.suffix() != next.prefix() {
            return Err(GraphError::BrokenChain {
                from: e.to_string(),
                to: next.to_string(),
            });
        }
    }
    Ok(CyclicSequence {
        symbols: circuit.iter().map(Gram::first).collect(),
    })
}

/// The De Bruijn cycle read off the deterministic Eulerian circuit of the full graph.
pub fn debruijn_sequence(alphabet: Alphabet, order: usize) -> Result<CyclicSequence, GraphError> {
    let g = DeBruijnGraph::full(alphabet, order)?;
    circuit_to_sequence(&eulerian_circuit(&g)?)
}

/// How the windows of a cyclic string cover a target edge set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoverageReport {
    pub window_count: usize,
    pub covered: BTreeSet<Gram>,
    pub missing: BTreeSet<Gram>,
    /// Windows that are not in the target.
    pub extra: BTreeSet<Gram>,
    /// Windows seen more than once, with their counts.
    pub duplicates: BTreeMap<Gram, usize>,
}

impl CoverageReport {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }

    /// Every target edge exactly once and nothing else.
    pub fn is_exact(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.duplicates.is_empty()
    }
}

fn join(grams: &BTreeSet<Gram>) -> String {
    grams.iter().map(Gram::as_str).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for CoverageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let target = self.covered.len() + self.missing.len();
        writeln!(f, "windows: {}", self.window_count)?;
        writeln!(f, "covered: {}/{}", self.covered.len(), target)?;
        writeln!(
            f,
            "missing ({}): {}",
            self.missing.len(),
            join(&self.missing)
        )?;
        writeln!(f, "extra ({}): {}", self.extra.len(), join(&self.extra))?;
        let dups: Vec<String> = self
            .duplicates
            .iter()
            .map(|(g, c)| format!("{g}x{c}"))
            .collect();
        writeln!(
            f,
            "duplicates ({}): {}",
            self.duplicates.len(),
            dups.join(" ")
        )?;
        let verdict = if self.is_exact() {
            "exact"
        } else if self.is_complete() {
            "complete with repeats"
        } else {
            "incomplete"
        };
        write!(f, "verdict: {verdict}")
    }
}

pub fn validate_cycle(s: &CyclicSequence, order: usize, target: &BTreeSet<Gram>) -> CoverageReport {
    let mut counts: BTreeMap<Gram, usize> = BTreeMap::new();
    for w in windows(s, order) {
        *counts.entry(w).or_default() += 1;
    }
    let mut report = CoverageReport {
        window_count: s.len(),
        ..Default::default()
    };
    for t in target {
        if counts.contains_key(t) {
            report.covered.insert(t.clone());
        } else {
            report.missing.insert(t.clone());
        }
    }
    for (w, c) in counts {
        if !target.contains(&w) {
            report.extra.insert(w.clone());
        }
        if c > 1 {
            report.duplicates.insert(w, c);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::debruijn::fixtures::Fixture;
    use proptest::prelude::*;

    const PUBLISHED_A3: &str = "00088808881118100010110";

    fn seq(a: &Alphabet, s: &str) -> CyclicSequence {
        CyclicSequence::parse(a, s).unwrap()
    }

    fn strs(grams: &[Gram]) -> Vec<&str> {
        grams.iter().map(Gram::as_str).collect()
    }

    // Independent windowing oracle over a doubled string.
    fn oracle_windows(s: &str, n: usize) -> Vec<String> {
        let doubled: String = s.repeat(n / s.len() + 2);
        (0..s.len())
            .map(|i| doubled[i..i + n].to_string())
            .collect()
    }

    #[test]
    fn binary_windows() {
        let a = Alphabet::binary();
        let w = windows(&seq(&a, "00010111"), 3);
        assert_eq!(
            strs(&w),
            ["000", "001", "010", "101", "011", "111", "110", "100"]
        );
        assert_eq!(strs(&windows(&seq(&a, "0"), 3)), ["000"]);
    }

    #[test]
    fn a3_windows_match_oracle() {
        let a = Alphabet::cubic();
        let w = windows(&seq(&a, PUBLISHED_A3), 3);
        assert_eq!(w.len(), 23);
        let got: Vec<String> = w.iter().map(|g| g.to_string()).collect();
        assert_eq!(got, oracle_windows(PUBLISHED_A3, 3));
    }

    #[test]
    fn parse_rejects_foreign_symbols() {
        let err = CyclicSequence::parse(&Alphabet::binary(), "0120").unwrap_err();
        assert!(matches!(
            err,
            GraphError::SymbolNotInAlphabet { symbol: '2', .. }
        ));
        assert_eq!(
            CyclicSequence::parse(&Alphabet::binary(), ""),
            Err(GraphError::EmptySequence)
        );
    }

    #[test]
    fn binary_sequence_is_the_classic_cycle() {
        let s = debruijn_sequence(Alphabet::binary(), 3).unwrap();
        assert_eq!(s.as_str(), "00010111");
    }

    #[test]
    fn unary_sequence() {
        let s = debruijn_sequence(Alphabet::new("0").unwrap(), 2).unwrap();
        assert_eq!(s.as_str(), "0");
        assert_eq!(strs(&windows(&s, 2)), ["00"]);
    }

    #[test]
    fn ternary_sequence_is_exact() {
        let s = debruijn_sequence(Alphabet::cubic(), 3).unwrap();
        assert_eq!(s.len(), 27);
        let full = DeBruijnGraph::full(Alphabet::cubic(), 3).unwrap();
        assert!(validate_cycle(&s, 3, &full.edge_set()).is_exact());
    }

    #[test]
    fn self_loop_sequence() {
        let a = Alphabet::binary();
        let s = circuit_to_sequence(&[a.gram("000", 3).unwrap()]).unwrap();
        assert_eq!(s.as_str(), "0");
        assert_eq!(strs(&windows(&s, 3)), ["000"]);
    }

    #[test]
    fn broken_chain_is_rejected() {
        let a = Alphabet::binary();
        let c = [a.gram("001", 3).unwrap(), a.gram("000", 3).unwrap()];
        assert!(matches!(
            circuit_to_sequence(&c),
            Err(GraphError::BrokenChain { .. })
        ));
    }

    #[test]
    fn e1_sequence_windows_are_e1() {
        let g = Fixture::E1.graph();
        let c = eulerian_circuit(&g).unwrap();
        let s = circuit_to_sequence(&c).unwrap();
        assert_eq!(s.len(), 12);
        assert_eq!(windows(&s, 3), c);
        assert!(validate_cycle(&s, 3, &g.edge_set()).is_exact());
    }

    #[test]
    fn a3_coverage_matches_brute_force() {
        let a = Alphabet::cubic();
        let full = DeBruijnGraph::full(a.clone(), 3).unwrap();
        let r = validate_cycle(&seq(&a, PUBLISHED_A3), 3, &full.edge_set());

        let ws = oracle_windows(PUBLISHED_A3, 3);
        let mut distinct = ws.clone();
        distinct.sort();
        distinct.dedup();
        let dup_count = distinct
            .iter()
            .filter(|d| ws.iter().filter(|w| w == d).count() > 1)
            .count();
        assert_eq!(r.window_count, 23);
        assert_eq!(r.covered.len(), distinct.len());
        assert_eq!(r.missing.len(), 27 - distinct.len());
        assert_eq!(r.duplicates.len(), dup_count);
        assert!(r.extra.is_empty());
        assert!(!r.is_complete());
    }

    #[test]
    fn published_subgraph_strings_are_not_exact() {
        let a = Alphabet::cubic();
        for (fx, s) in [
            (Fixture::E1, "0111818880800018180801"),
            (Fixture::E2, "8111010008088818101081"),
        ] {
            let r = validate_cycle(&seq(&a, s), 3, &fx.graph().edge_set());
            assert_eq!(r.window_count, 22);
            assert!(!r.is_exact());
        }
    }

    #[test]
    fn single_symbol_against_full() {
        let a = Alphabet::cubic();
        let full = DeBruijnGraph::full(a.clone(), 3).unwrap();
        let r = validate_cycle(&seq(&a, "888"), 3, &full.edge_set());
        assert_eq!(
            strs(&r.covered.iter().cloned().collect::<Vec<_>>()),
            ["888"]
        );
        assert_eq!(r.missing.len(), 26);
        assert_eq!(r.duplicates.get(&a.gram("888", 3).unwrap()), Some(&3));
    }

    #[test]
    fn canonical_rotation() {
        let a = Alphabet::binary();
        let s = seq(&a, "10111000");
        assert_eq!(s.canonical().as_str(), "00010111");
        assert!(s.same_cycle(&seq(&a, "00010111")));
        assert!(!s.same_cycle(&seq(&a, "00011101")));
    }

    proptest! {
        #[test]
        fn debruijn_windows_distinct(k in 1usize..=3, n in 2usize..=4) {
            let a = Alphabet::new(&"018"[..k]).unwrap();
            let s = debruijn_sequence(a, n).unwrap();
            let total = k.pow(n as u32);
            prop_assert_eq!(s.len(), total);
            let set: BTreeSet<Gram> = windows(&s, n).into_iter().collect();
            prop_assert_eq!(set.len(), total);
        }

        #[test]
        fn windows_match_oracle(text in "[018]{1,30}", n in 1usize..6) {
            let s = seq(&Alphabet::cubic(), &text);
            let got: Vec<String> = windows(&s, n).iter().map(|g| g.to_string()).collect();
            prop_assert_eq!(got, oracle_windows(&text, n));
        }
    }
}
