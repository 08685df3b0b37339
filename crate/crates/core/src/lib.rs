//! Cubic residues mod 9, De Bruijn graphs over their alphabet, and a bounded
//! search for sums of three cubes.

pub mod debruijn;
pub mod residue;
pub mod search;
