//! Left cells: strongly connected components of the preorder graph read
//! off the generator products in the canonical basis.

use serde_json::json;

use crate::group::ElementIndex;
use crate::laurent::OrderSpec;
use crate::tableaux::rs;

use super::KLStore;

/// The partition of the group into cells, with the induced order on cells.
pub struct CellPartition {
    pub rank: usize,
    pub spec: OrderSpec,
    /// Each cell sorted by enumeration order; cells sorted by first element.
    pub cells: Vec<Vec<ElementIndex>>,
    /// Recording-bitableau shape (plus, minus) per cell; only meaningful
    /// for the dominant-weight order, where cells are recording fibers.
    pub shapes: Option<Vec<(Vec<usize>, Vec<usize>)>>,
    cell_of: Vec<usize>,
    leq: Vec<Vec<bool>>,
}

impl CellPartition {
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_of(&self, w: ElementIndex) -> usize {
        self.cell_of[w as usize]
    }

    /// Does cell i lie below cell j in the induced order?
    pub fn cell_leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Element-level preorder: y below w.
    pub fn element_leq(&self, y: ElementIndex, w: ElementIndex) -> bool {
        self.cell_leq(self.cell_of(y), self.cell_of(w))
    }

    /// The partition as a canonical list of sorted element lists.
    pub fn as_sets(&self) -> Vec<Vec<ElementIndex>> {
        self.cells.clone()
    }

    pub fn to_json(&self, store: &KLStore) -> serde_json::Value {
        let group = store.group();
        let order = match &self.spec {
            OrderSpec::Asymptotic => json!({"kind": "asymptotic"}),
            OrderSpec::Weighted { c, d } => json!({"kind": "weighted", "c": c, "d": d}),
        };
        let mut leq_pairs = Vec::new();
        for i in 0..self.cells.len() {
            for j in 0..self.cells.len() {
                if i != j && self.leq[i][j] {
                    leq_pairs.push(json!([i, j]));
                }
            }
        }
        let cells: Vec<_> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                let elements: Vec<String> =
                    cell.iter().map(|&w| group.element(w).window_string()).collect();
                match &self.shapes {
                    Some(shapes) => {
                        json!({"shape": [shapes[i].0, shapes[i].1], "elements": elements})
                    }
                    None => json!({"elements": elements}),
                }
            })
            .collect();
        json!({
            "format": 1,
            "n": self.rank,
            "order": order,
            "preorder": {"leq": leq_pairs},
            "cells": cells,
        })
    }
}

/// Directed edges w -> y whenever the basis element for y appears in a
/// generator product with the one for w (the lengthening target included).
pub(crate) fn preorder_edges(store: &KLStore) -> Vec<Vec<ElementIndex>> {
    let group = store.group();
    let order = group.order();
    let mut adj: Vec<Vec<ElementIndex>> = vec![Vec::new(); order];
    for w in 0..order as ElementIndex {
        for g in 0..group.generator_count() {
            if group.has_left_descent(w, g) {
                continue;
            }
            adj[w as usize].push(group.left(g, w));
            adj[w as usize].extend_from_slice(store.m_support(g, w));
        }
        adj[w as usize].sort_unstable();
        adj[w as usize].dedup();
    }
    adj
}

/// Strongly connected components by two depth-first passes, iterative.
fn components(adj: &[Vec<ElementIndex>]) -> Vec<usize> {
    let n = adj.len();
    let mut finish_order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // Stack of (node, next edge position) frames.
        let mut stack = vec![(start, 0usize)];
        seen[start] = true;
        while let Some(&mut (node, ref mut pos)) = stack.last_mut() {
            if let Some(&next) = adj[node].get(*pos) {
                *pos += 1;
                if !seen[next as usize] {
                    seen[next as usize] = true;
                    stack.push((next as usize, 0));
                }
            } else {
                finish_order.push(node);
                stack.pop();
            }
        }
    }
    let mut radj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (u, outs) in adj.iter().enumerate() {
        for &v in outs {
            radj[v as usize].push(u as u32);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for &start in finish_order.iter().rev() {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = count;
        while let Some(u) = stack.pop() {
            for &v in &radj[u] {
                if comp[v as usize] == usize::MAX {
                    comp[v as usize] = count;
                    stack.push(v as usize);
                }
            }
        }
        count += 1;
    }
    comp
}

/// Computes the cell partition for a completed store.
pub fn left_cells(store: &KLStore) -> CellPartition {
    let group = store.group();
    let n = group.order();
    let adj = preorder_edges(store);
    let comp = components(&adj);
    let comp_count = comp.iter().max().map_or(0, |&c| c + 1);

    // Relabel components by their smallest element.
    let mut first: Vec<ElementIndex> = vec![ElementIndex::MAX; comp_count];
    for w in (0..n).rev() {
        first[comp[w]] = w as ElementIndex;
    }
    let mut by_first: Vec<usize> = (0..comp_count).collect();
    by_first.sort_unstable_by_key(|&c| first[c]);
    let mut relabel = vec![0usize; comp_count];
    for (new, &old) in by_first.iter().enumerate() {
        relabel[old] = new;
    }
    let cell_of: Vec<usize> = comp.iter().map(|&c| relabel[c]).collect();
    let mut cells: Vec<Vec<ElementIndex>> = vec![Vec::new(); comp_count];
    for w in 0..n {
        cells[cell_of[w]].push(w as ElementIndex);
    }

    // Reachability over the condensation: an edge w -> y makes the cell of
    // y lie below the cell of w.
    let mut comp_adj: Vec<Vec<usize>> = vec![Vec::new(); comp_count];
    for (u, outs) in adj.iter().enumerate() {
        for &v in outs {
            let (cu, cv) = (cell_of[u], cell_of[v as usize]);
            if cu != cv {
                comp_adj[cu].push(cv);
            }
        }
    }
    for outs in &mut comp_adj {
        outs.sort_unstable();
        outs.dedup();
    }
    let mut leq = vec![vec![false; comp_count]; comp_count];
    for top in 0..comp_count {
        // Everything reachable from `top` lies below it.
        let mut stack = vec![top];
        leq[top][top] = true;
        while let Some(u) = stack.pop() {
            for &v in &comp_adj[u] {
                if !leq[v][top] {
                    leq[v][top] = true;
                    stack.push(v);
                }
            }
        }
    }

    let shapes = match store.spec() {
        OrderSpec::Asymptotic => Some(
            cells
                .iter()
                .map(|cell| {
                    let pair = rs(group.element(cell[0]));
                    (pair.recording.plus.shape(), pair.recording.minus.shape())
                })
                .collect(),
        ),
        OrderSpec::Weighted { .. } => None,
    };

    CellPartition {
        rank: group.rank(),
        spec: store.spec().clone(),
        cells,
        shapes,
        cell_of,
        leq,
    }
}
