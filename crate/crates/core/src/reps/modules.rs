//! Cell modules.
//!
//! A cell spans a module over the algebra: the left ideal below the cell,
//! modulo the part strictly below it. Generator products in the canonical
//! basis land inside the ideal, so the action matrix of a generator is
//! the product expansion with every term outside the cell discarded.
//! Setting both order parameters to one turns the matrices into a group
//! representation, whose trace identifies the cell among the irreducible
//! characters.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::{ElementIndex, Generator, Group};
use crate::kl::cells::CellPartition;
use crate::kl::hecke::generator_weight;
use crate::kl::KLStore;
use crate::laurent::{LaurentElement, OrderSpec};

use super::characters::{character_table, CharacterVector};
use super::classes::{conjugacy_classes, ConjugacyClass};
use super::{conjugate, Bipartition};

/// One cell acting on itself: `basis` lists the cell in enumeration
/// order, and `action[g]` is the matrix of the standard generator on the
/// residue classes, columns indexed like the basis.
pub struct CellModule {
    pub cell: usize,
    pub basis: Vec<ElementIndex>,
    pub action: Vec<Vec<Vec<LaurentElement>>>,
}

impl CellModule {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Builds the module for one cell of the partition. The canonical-basis
/// product only ever moves down the preorder, so discarding terms outside
/// the cell is exactly reduction modulo the lower ideal; the standard
/// generator is recovered from the canonical one by a diagonal shift.
pub fn cell_module(store: &KLStore, partition: &CellPartition, cell: usize) -> Result<CellModule> {
    if cell >= partition.cell_count() {
        return Err(Error::InvalidPartition(format!(
            "cell index {cell} out of range for {} cells",
            partition.cell_count()
        )));
    }
    let basis = partition.cells[cell].clone();
    let dim = store.spec().dim();
    let size = basis.len();
    let action = (0..store.group().generator_count())
        .map(|g| {
            let shift = LaurentElement::monomial(generator_weight(store.spec(), g).inverse());
            let mut matrix = vec![vec![LaurentElement::zero(dim); size]; size];
            for (j, &w) in basis.iter().enumerate() {
                for (z, coefficient) in &store.c_product_left(g, w).terms {
                    if partition.cell_of(*z) == cell {
                        let i = basis.binary_search(z).expect("cell member");
                        matrix[i][j].add_assign_ref(coefficient);
                    }
                }
                matrix[j][j].sub_assign_ref(&shift);
            }
            matrix
        })
        .collect();
    Ok(CellModule { cell, basis, action })
}

fn matrix_product(a: &[Vec<LaurentElement>], b: &[Vec<LaurentElement>]) -> Vec<Vec<LaurentElement>> {
    let n = a.len();
    let dim = if n == 0 { 1 } else { a[0][0].dim() };
    let mut out = vec![vec![LaurentElement::zero(dim); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let term = &a[i][k] * &b[k][j];
                out[i][j].add_assign_ref(&term);
            }
        }
    }
    out
}

fn laurent_identity(size: usize, dim: u8) -> Vec<Vec<LaurentElement>> {
    let mut out = vec![vec![LaurentElement::zero(dim); size]; size];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = LaurentElement::one(dim);
    }
    out
}

/// Do the action matrices satisfy the defining relations of the algebra?
/// Checks every quadratic relation and every braid relation, including
/// the order-four one between the first two generators.
pub fn satisfies_defining_relations(module: &CellModule, spec: &OrderSpec) -> bool {
    let size = module.basis.len();
    let dim = spec.dim();
    let identity = laurent_identity(size, dim);
    for (g, matrix) in module.action.iter().enumerate() {
        let weight = generator_weight(spec, g);
        let mut twist = LaurentElement::monomial(weight.clone());
        twist.sub_assign_ref(&LaurentElement::monomial(weight.inverse()));
        let square = matrix_product(matrix, matrix);
        let mut expected = identity.clone();
        for (i, row) in expected.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let term = &twist * &matrix[i][j];
                entry.add_assign_ref(&term);
            }
        }
        if square != expected {
            return false;
        }
    }
    let chain = |word: &[usize]| {
        word.iter().fold(identity.clone(), |acc, &g| matrix_product(&acc, &module.action[g]))
    };
    for a in 0..module.action.len() {
        for b in a + 1..module.action.len() {
            let (left, right): (Vec<usize>, Vec<usize>) = if a == 0 && b == 1 {
                (vec![0, 1, 0, 1], vec![1, 0, 1, 0])
            } else if b == a + 1 {
                (vec![a, b, a], vec![b, a, b])
            } else {
                (vec![a, b], vec![b, a])
            };
            if chain(&left) != chain(&right) {
                return false;
            }
        }
    }
    true
}

/// The action matrices with both order parameters set to one, turning
/// the algebra action into a group representation by integer matrices.
pub fn specialize_at_one(module: &CellModule) -> Vec<Vec<Vec<i64>>> {
    module
        .action
        .iter()
        .map(|matrix| {
            matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.evaluate_at_one().to_i64().expect("entry fits i64"))
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn integer_product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn integer_identity(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = 1;
    }
    out
}

/// The character of the specialised module: one trace per conjugacy
/// class, the class member evaluated as a product of generator matrices
/// along a reduced word.
pub fn character_of_cell(
    group: &Group,
    module: &CellModule,
    classes: &[ConjugacyClass],
) -> CharacterVector {
    let generators = specialize_at_one(module);
    let values = classes
        .iter()
        .map(|class| {
            let mut matrix = integer_identity(module.basis.len());
            for g in group.element(class.representative).reduced_word() {
                let index = match g {
                    Generator::T => 0,
                    Generator::S(i) => i,
                };
                matrix = integer_product(&matrix, &generators[index]);
            }
            (0..matrix.len()).map(|i| matrix[i][i]).sum()
        })
        .collect();
    CharacterVector { rank: group.rank(), values }
}

/// One identified cell: its recording shape, the dimension of its
/// module, and the label whose character the module affords. The label
/// predicted by the shape swaps the components and transposes the second.
#[derive(Clone, Debug)]
pub struct CellIdentification {
    pub cell: usize,
    pub shape: Bipartition,
    pub dimension: usize,
    pub character: Bipartition,
    pub expected: Bipartition,
}

/// Identifies every cell of the partition by its character. Requires the
/// dominant order, where cells carry recording shapes.
pub fn identify_cells(
    store: &KLStore,
    partition: &CellPartition,
) -> Result<Vec<CellIdentification>> {
    let shapes = partition.shapes.as_ref().ok_or_else(|| {
        Error::Identification("cells carry no recording shapes under this order".into())
    })?;
    let group = store.group();
    let classes = conjugacy_classes(group);
    let table = character_table(group, &classes);
    (0..partition.cell_count())
        .into_par_iter()
        .map(|cell| {
            let module = cell_module(store, partition, cell)?;
            let chi = character_of_cell(group, &module, &classes);
            let mut matches = table.iter().filter(|(_, row)| *row == chi);
            let (label, _) = matches.next().ok_or_else(|| {
                Error::Identification(format!("cell {cell} matches no irreducible character"))
            })?;
            if matches.next().is_some() {
                return Err(Error::Identification(format!(
                    "cell {cell} matches more than one irreducible character"
                )));
            }
            let (plus, minus) = shapes[cell].clone();
            let expected = Bipartition { lambda: minus.clone(), mu: conjugate(&plus) };
            Ok(CellIdentification {
                cell,
                shape: Bipartition { lambda: plus, mu: minus },
                dimension: module.dimension(),
                character: label.clone(),
                expected,
            })
        })
        .collect()
}

/// JSON report of the identifications, cells ordered by shape.
pub fn character_report(store: &KLStore, partition: &CellPartition) -> Result<serde_json::Value> {
    let group = store.group();
    let classes = conjugacy_classes(group);
    let mut identified = identify_cells(store, partition)?;
    identified.sort_by(|a, b| (&a.shape, a.cell).cmp(&(&b.shape, b.cell)));
    let cells: Vec<_> = identified
        .iter()
        .map(|id| {
            let module = cell_module(store, partition, id.cell)?;
            let chi = character_of_cell(group, &module, &classes);
            Ok(json!({
                "cell_shape": [id.shape.lambda, id.shape.mu],
                "dimension": id.dimension,
                "character_label": [id.character.lambda, id.character.mu],
                "values": chi.values,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(json!({
        "format": 1,
        "n": group.rank(),
        "classes": classes.iter().map(|c| json!([c.label.lambda, c.label.mu])).collect::<Vec<_>>(),
        "cells": cells,
    }))
}
