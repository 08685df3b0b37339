//! Exact verification and bounded search for x³ + y³ + z³ = k.
//!
//! The search fixes z, sets M = k - z³ and solves x³ + y³ = M with a
//! two-pointer sweep over [-B, B]. Targets in the classes 4 and 5 are skipped
//! outright, and z is skipped whenever M mod 9 is not a sum of two cubic
//! residues. Sweep arithmetic is done in i128; every hit is re-checked with
//! arbitrary precision before it is returned.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::residue::{
    class_of, is_feasible, label_solution, two_cube_class_mask, CubeSumMismatch, Residue,
    ResidueTriple, SignedSpelling,
};

/// Largest accepted bound. 3·B³ must stay well inside i128.
pub const MAX_BOUND: u64 = 1_000_000_000_000;

const TWO_CUBE_CLASSES: u16 = two_cube_class_mask();

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("bound {bound} exceeds the maximum {max}")]
    BoundTooLarge { bound: u64, max: u64 },
    #[error(transparent)]
    Mismatch(Box<CubeSumMismatch>),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    bound: u64,
}

impl SearchBounds {
    pub fn new(bound: u64) -> Result<Self, SearchError> {
        match bound {
            0 => Err(SearchError::ZeroBound),
            b if b > MAX_BOUND => Err(SearchError::BoundTooLarge {
                bound: b,
                max: MAX_BOUND,
            }),
            b => Ok(SearchBounds { bound: b }),
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }
}

/// A checked solution, with x ≤ y ≤ z.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Representation {
    x: BigInt,
    y: BigInt,
    z: BigInt,
    k: BigInt,
    path: ResidueTriple,
}

impl Representation {
    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn z(&self) -> &BigInt {
        &self.z
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn path(&self) -> ResidueTriple {
        self.path
    }

    pub fn class(&self) -> Residue {
        class_of(&self.k)
    }

    /// Residue path with 8 written as -1 for negative bases.
    pub fn signed_path(&self) -> SignedSpelling {
        SignedSpelling::of_bases([&self.x, &self.y, &self.z])
    }

    pub fn triple(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.x, &self.y, &self.z)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})³ + ({})³ + ({})³ = {} [{}]",
            self.x, self.y, self.z, self.k, self.path
        )
    }
}

/// Checks x³ + y³ + z³ = k exactly and returns the sorted, labelled solution.
pub fn verify(
    x: &BigInt,
    y: &BigInt,
    z: &BigInt,
    k: &BigInt,
) -> Result<Representation, SearchError> {
    let path = label_solution(x, y, z, k).map_err(SearchError::Mismatch)?;
    let mut v = [x.clone(), y.clone(), z.clone()];
    v.sort();
    let [x, y, z] = v;
    Ok(Representation {
        x,
        y,
        z,
        k: k.clone(),
        path,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Two-pointer steps taken.
    pub pairs_scanned: u64,
    /// z values dropped by the two-cube residue test.
    pub z_pruned: u64,
}

impl SearchStats {
    fn merge(self, other: SearchStats) -> SearchStats {
        SearchStats {
            pairs_scanned: self.pairs_scanned + other.pairs_scanned,
            z_pruned: self.z_pruned + other.z_pruned,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub k: BigInt,
    /// Sorted by (x, y, z).
    pub representations: Vec<Representation>,
    /// k is in class 4 or 5 and no search was run.
    pub skipped: bool,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn class(&self) -> Residue {
        class_of(&self.k)
    }
}

type Triple = (i128, i128, i128);

#[inline]
fn cube(v: i128) -> i128 {
    v * v * v
}

fn sorted(a: i128, b: i128, c: i128) -> Triple {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

// All (x, y) with -B ≤ x ≤ y ≤ B and x³ + y³ = m.
fn sweep_z(k: i128, z: i128, bound: i128, hits: &mut BTreeSet<Triple>, stats: &mut SearchStats) {
    let m = k - cube(z);
    if TWO_CUBE_CLASSES & (1 << Residue::of_i128(m).value()) == 0 {
        stats.z_pruned += 1;
        return;
    }
    let (mut x, mut y) = (-bound, bound);
    while x <= y {
        stats.pairs_scanned += 1;
        let s = cube(x) + cube(y);
        match s.cmp(&m) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y -= 1,
            std::cmp::Ordering::Equal => {
                hits.insert(sorted(x, y, z));
                x += 1;
                y -= 1;
            }
        }
    }
}

enum Plan {
    Skip,
    Empty,
    Run(i128, i128),
}

fn plan(k: &BigInt, bounds: SearchBounds) -> Plan {
    if !is_feasible(k) {
        return Plan::Skip;
    }
    let b = bounds.bound as i128;
    match k.to_i128() {
        Some(k) if k.abs() <= 3 * cube(b) => Plan::Run(k, b),
        _ => Plan::Empty,
    }
}

fn finish(k: &BigInt, hits: BTreeSet<Triple>, stats: SearchStats) -> SearchResult {
    let representations = hits
        .into_iter()
        .map(|(x, y, z)| {
            verify(&BigInt::from(x), &BigInt::from(y), &BigInt::from(z), k)
                .expect("sweep hits satisfy the cube identity")
        })
        .collect();
    SearchResult {
        k: k.clone(),
        representations,
        skipped: false,
        stats,
    }
}

fn skipped(k: &BigInt) -> SearchResult {
    SearchResult {
        k: k.clone(),
        representations: Vec::new(),
        skipped: true,
        stats: SearchStats::default(),
    }
}

/// Every representation of `k` with all terms in [-B, B], single-threaded.
pub fn search_k(k: &BigInt, bounds: SearchBounds) -> SearchResult {
    match plan(k, bounds) {
        Plan::Skip => skipped(k),
        Plan::Empty => finish(k, BTreeSet::new(), SearchStats::default()),
        Plan::Run(kk, b) => {
            let mut hits = BTreeSet::new();
            let mut stats = SearchStats::default();
            for z in -b..=b {
                sweep_z(kk, z, b, &mut hits, &mut stats);
            }
            finish(k, hits, stats)
        }
    }
}

/// Same result as [`search_k`], with z split across the current rayon pool.
pub fn search_k_parallel(k: &BigInt, bounds: SearchBounds) -> SearchResult {
    const CHUNK: i128 = 256;
    match plan(k, bounds) {
        Plan::Skip => skipped(k),
        Plan::Empty => finish(k, BTreeSet::new(), SearchStats::default()),
        Plan::Run(kk, b) => {
            let chunks = (2 * b + 1 + CHUNK - 1) / CHUNK;
            let (hits, stats) = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let lo = -b + c * CHUNK;
                    let hi = (lo + CHUNK - 1).min(b);
                    let mut hits = BTreeSet::new();
                    let mut stats = SearchStats::default();
                    for z in lo..=hi {
                        sweep_z(kk, z, b, &mut hits, &mut stats);
                    }
                    (hits, stats)
                })
                .reduce(
                    || (BTreeSet::new(), SearchStats::default()),
                    |(mut a, sa), (b, sb)| {
                        a.extend(b);
                        (a, sa.merge(sb))
                    },
                );
            finish(k, hits, stats)
        }
    }
}

/// One result per k in order. `workers` of `None` uses the global rayon pool;
/// the output does not depend on the worker count.
pub fn scan_range(
    range: RangeInclusive<i128>,
    bounds: SearchBounds,
    workers: Option<usize>,
) -> Result<Vec<SearchResult>, SearchError> {
    let ks: Vec<BigInt> = range.map(BigInt::from).collect();
    let run = || -> Vec<SearchResult> { ks.par_iter().map(|k| search_k(k, bounds)).collect() };
    match workers {
        None => Ok(run()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(run))
            .map_err(|e| SearchError::Pool(e.to_string())),
    }
}
