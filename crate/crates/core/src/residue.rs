//! Mod-9 arithmetic of cubes.
//!
//! Every cube is congruent to 0, 1 or 8 modulo 9, so a sum of three cubes can
//! only land in the classes reachable by adding three of those residues. The
//! classes 4 and 5 are never reached, which is the whole feasibility test.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

pub const MODULUS: u8 = 9;

/// The class of an integer modulo 9, always in `0..=8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue(u8);

impl Residue {
    pub const fn new(value: u8) -> Option<Self> {
        if value < MODULUS {
            Some(Residue(value))
        } else {
            None
        }
    }

    /// Mathematical (non-negative) modulus of an arbitrary integer.
    pub fn of(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(MODULUS));
        // mod_floor with a positive modulus is in 0..9
        Residue(r.to_u8().expect("residue in 0..9"))
    }

    pub fn of_i128(n: i128) -> Self {
        Residue(n.rem_euclid(MODULUS as i128) as u8)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Residue> {
        (0..MODULUS).map(Residue)
    }

    pub fn plus(self, other: Residue) -> Residue {
        Residue((self.0 + other.0) % MODULUS)
    }

    pub fn cube(self) -> CubicResidue {
        let c = (self.0 as u32).pow(3) % MODULUS as u32;
        CubicResidue::from_value(c as u8).expect("cubes mod 9 lie in {0, 1, 8}")
    }

    /// True for the classes 4 and 5.
    pub fn is_infeasible(self) -> bool {
        self.0 == 4 || self.0 == 5
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue that is the class of some cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CubicResidue {
    Zero,
    One,
    Eight,
}

impl CubicResidue {
    pub const ALL: [CubicResidue; 3] = [CubicResidue::Zero, CubicResidue::One, CubicResidue::Eight];

    pub const fn from_value(value: u8) -> Option<Self> {
        match value {
            0 => Some(CubicResidue::Zero),
            1 => Some(CubicResidue::One),
            8 => Some(CubicResidue::Eight),
            _ => None,
        }
    }

    pub const fn value(self) -> u8 {
        match self {
            CubicResidue::Zero => 0,
            CubicResidue::One => 1,
            CubicResidue::Eight => 8,
        }
    }

    pub const fn residue(self) -> Residue {
        Residue(self.value())
    }
}

impl fmt::Display for CubicResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Unordered multiset of three cubic residues, stored ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueTriple([CubicResidue; 3]);

impl ResidueTriple {
    pub fn new(a: CubicResidue, b: CubicResidue, c: CubicResidue) -> Self {
        let mut entries = [a, b, c];
        entries.sort();
        ResidueTriple(entries)
    }

    /// Builds a triple from raw values; `None` if any value is not 0, 1 or 8.
    pub fn from_values(values: [u8; 3]) -> Option<Self> {
        Some(Self::new(
            CubicResidue::from_value(values[0])?,
            CubicResidue::from_value(values[1])?,
            CubicResidue::from_value(values[2])?,
        ))
    }

    pub fn entries(&self) -> [CubicResidue; 3] {
        self.0
    }

    pub fn values(&self) -> [u8; 3] {
        self.0.map(CubicResidue::value)
    }

    pub fn sum(&self) -> Residue {
        self.0
            .iter()
            .fold(Residue(0), |acc, r| acc.plus(r.residue()))
    }
}

impl fmt::Display for ResidueTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{a}+{b}+{c}")
    }
}

/// An ordered spelling of a residue triple where any 8 may be written as -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedSpelling([i8; 3]);

impl SignedSpelling {
    /// `None` unless every entry is one of -1, 0, 1, 8.
    pub fn new(entries: [i8; 3]) -> Option<Self> {
        entries
            .iter()
            .all(|e| matches!(e, -1 | 0 | 1 | 8))
            .then_some(SignedSpelling(entries))
    }

    pub fn entries(&self) -> [i8; 3] {
        self.0
    }

    /// Maps -1 back to 8.
    pub fn triple(&self) -> ResidueTriple {
        let v = self.0.map(|e| if e == -1 { 8 } else { e as u8 });
        ResidueTriple::from_values(v).expect("spelling entries are cubic residues")
    }

    /// Spells a labelled solution: residue 8 becomes -1 when the base is negative.
    pub fn of_bases(bases: [&BigInt; 3]) -> Self {
        let entries = bases.map(|n| {
            let r = cube_residue(n);
            if r == CubicResidue::Eight && n.sign() == num_bigint::Sign::Minus {
                -1
            } else {
                r.value() as i8
            }
        });
        SignedSpelling(entries)
    }
}

impl fmt::Display for SignedSpelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 && *e >= 0 {
                write!(f, "+")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cubes of ({x}, {y}, {z}) sum to {actual}, not {k}{}", infeasible_note(.infeasible_class))]
pub struct CubeSumMismatch {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
    pub k: BigInt,
    pub actual: BigInt,
    /// Set when k is in class 4 or 5, where no representation can exist.
    pub infeasible_class: Option<Residue>,
}

fn infeasible_note(class: &Option<Residue>) -> String {
    match class {
        Some(c) => format!(" (k is in class {c}, which no sum of three cubes reaches)"),
        None => String::new(),
    }
}

pub fn cube_residue(n: &BigInt) -> CubicResidue {
    Residue::of(n).cube()
}

pub fn class_of(k: &BigInt) -> Residue {
    Residue::of(k)
}

pub fn is_feasible(k: &BigInt) -> bool {
    !class_of(k).is_infeasible()
}

/// Every multiset of three cubic residues whose sum is congruent to `z`,
/// in ascending order.
pub fn decompose(z: Residue) -> Vec<ResidueTriple> {
    let mut out = Vec::new();
    for (i, &a) in CubicResidue::ALL.iter().enumerate() {
        for (j, &b) in CubicResidue::ALL.iter().enumerate().skip(i) {
            for &c in &CubicResidue::ALL[j..] {
                let t = ResidueTriple::new(a, b, c);
                if t.sum() == z {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// All spellings of `t` obtained by writing each 8 as either 8 or -1.
///
/// Entries keep the ascending class order of the triple, so the rewritten
/// 8s are always the trailing ones.
pub fn signed_spellings(t: ResidueTriple) -> Vec<SignedSpelling> {
    let base = t.values().map(|v| v as i8);
    let eights = base.iter().filter(|&&v| v == 8).count();
    (0..=eights)
        .map(|negated| {
            let mut e = base;
            for slot in e.iter_mut().rev().take(negated) {
                *slot = -1;
            }
            SignedSpelling(e)
        })
        .collect()
}

/// Residue path of a solution. Fails if the cubes do not sum to `k`.
pub fn label_solution(
    x: &BigInt,
    y: &BigInt,
    z: &BigInt,
    k: &BigInt,
) -> Result<ResidueTriple, Box<CubeSumMismatch>> {
    let actual = x.pow(3) + y.pow(3) + z.pow(3);
    if &actual != k {
        return Err(Box::new(CubeSumMismatch {
            x: x.clone(),
            y: y.clone(),
            z: z.clone(),
            k: k.clone(),
            actual,
            infeasible_class: Some(class_of(k)).filter(|c| c.is_infeasible()),
        }));
    }
    Ok(ResidueTriple::new(
        cube_residue(x),
        cube_residue(y),
        cube_residue(z),
    ))
}

/// Classes reachable as a sum of two cubes mod 9: {0, 1, 2, 7, 8}.
pub const fn two_cube_class_mask() -> u16 {
    let mut mask = 0u16;
    let vals = [0u8, 1, 8];
    let mut i = 0;
    while i < 3 {
        let mut j = 0;
        while j < 3 {
            mask |= 1 << ((vals[i] + vals[j]) % MODULUS);
            j += 1;
        }
        i += 1;
    }
    mask
}
