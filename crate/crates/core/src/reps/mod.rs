//! Representation data attached to cells.
//!
//! Conjugacy classes of the group are labelled by pairs of partitions
//! (cycle lengths of the underlying permutation, split by the sign of
//! each cycle), and the irreducible characters by pairs of partitions as
//! well, through induction from block subgroups. A cell cuts a module
//! out of the canonical basis, and its character identifies it among the
//! irreducibles; the match is predicted by the recording shape.

pub mod characters;
pub mod classes;
pub mod modules;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use characters::{
    character_table, irreducible_character, scaled_inner, symmetric_character, CharacterVector,
};
pub use classes::{conjugacy_classes, signed_type, ConjugacyClass};
pub use modules::{
    cell_module, character_of_cell, character_report, identify_cells, satisfies_defining_relations,
    specialize_at_one, CellIdentification, CellModule,
};

/// Weakly decreasing positive parts.
fn is_partition(parts: &[usize]) -> bool {
    parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1])
}

/// All partitions of `m`, largest part first within each, the list in
/// decreasing lexicographic order (so the single row comes first and the
/// single column last).
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn extend(remaining: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for next in (1..=remaining.min(cap)).rev() {
            prefix.push(next);
            extend(remaining - next, next, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(m, m, &mut Vec::new(), &mut out);
    out
}

/// The transposed diagram: column lengths read off the row lengths.
pub fn conjugate(parts: &[usize]) -> Vec<usize> {
    let cols = parts.first().copied().unwrap_or(0);
    (1..=cols).map(|c| parts.iter().filter(|&&p| p >= c).count()).collect()
}

/// Number of standard fillings of the diagram, by the hook length
/// formula. Serves as an independent degree count for the characters.
pub fn standard_count(parts: &[usize]) -> u64 {
    let m: usize = parts.iter().sum();
    let cols = conjugate(parts);
    let mut f: u128 = (1..=m as u128).product();
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let hook = (row - j) + (cols[j] - i) - 1;
            f /= hook as u128;
        }
    }
    f as u64
}

/// An ordered pair of partitions with a fixed total size. Labels both the
/// conjugacy classes and the irreducible characters of the group, and the
/// shape of a recording bitableau.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Bipartition {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
}

impl Bipartition {
    pub fn new(lambda: Vec<usize>, mu: Vec<usize>) -> Result<Self> {
        if !is_partition(&lambda) || !is_partition(&mu) {
            return Err(Error::InvalidShape(format!(
                "parts must be weakly decreasing and positive: {lambda:?} | {mu:?}"
            )));
        }
        Ok(Bipartition { lambda, mu })
    }

    pub fn size(&self) -> usize {
        self.lambda.iter().sum::<usize>() + self.mu.iter().sum::<usize>()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, parts: &[usize]) -> fmt::Result {
            if parts.is_empty() {
                return write!(f, "-");
            }
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            Ok(())
        }
        side(f, &self.lambda)?;
        write!(f, "|")?;
        side(f, &self.mu)
    }
}

/// All pairs of partitions of total size `n`, ordered by the size of the
/// first component (largest first), then by the component lists.
pub fn bipartitions(n: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        for lambda in partitions(a) {
            for mu in partitions(n - a) {
                out.push(Bipartition { lambda: lambda.clone(), mu });
            }
        }
    }
    out
}
