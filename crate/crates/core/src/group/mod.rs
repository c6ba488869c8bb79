//! The signed permutation group of a given rank: deterministic enumeration,
//! product and descent tables indexed by element number, and the Bruhat
//! order.
//!
//! Elements are numbered in length-lexicographic order (Coxeter length
//! first, then window order); index 0 is the identity and the last index is
//! the longest element. The numbering is part of the output contract: cell
//! listings and cache files are sorted by it.

pub mod coset;
pub mod perm;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::error::{Error, Result};
pub use perm::{
    generators, ExtendedGenerator, Generator, LengthTriple, Side, SignedPermutation, MAX_RANK,
};

pub type ElementIndex = u32;

/// Largest rank for which full multiplication tables are built.
pub const MAX_TABLE_RANK: usize = 6;

/// Largest rank at which the Bruhat order is materialized as a bit matrix;
/// above this it is resolved by the lifting recursion with memoization.
const MAX_DENSE_BRUHAT_RANK: usize = 4;

enum Bruhat {
    /// Row `y` holds the bitset of `{x : x <= y}`.
    Dense { stride: usize, bits: Vec<u64> },
    Lazy(RwLock<HashMap<(ElementIndex, ElementIndex), bool>>),
}

pub struct Group {
    rank: usize,
    elements: Vec<SignedPermutation>,
    position: HashMap<Vec<i32>, ElementIndex>,
    inverse: Vec<ElementIndex>,
    length: Vec<u32>,
    length_t: Vec<u32>,
    /// `left_gen[g][w]` is the index of `gen_g * w`; same layout on the right.
    left_gen: Vec<Vec<ElementIndex>>,
    right_gen: Vec<Vec<ElementIndex>>,
    /// Descent bitmasks over the generator numbering (bit 0 is `t`).
    left_desc: Vec<u32>,
    right_desc: Vec<u32>,
    gens: Vec<Generator>,
    bruhat: Bruhat,
}

/// Shared per-rank instance. Tables are built once and never mutated, so
/// concurrent readers need no further locking.
pub fn group(rank: usize) -> Result<Arc<Group>> {
    static REGISTRY: OnceLock<Mutex<HashMap<usize, Arc<Group>>>> = OnceLock::new();
    if rank == 0 || rank > MAX_TABLE_RANK {
        return Err(Error::RankRange { rank, max: MAX_TABLE_RANK });
    }
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = registry.lock().unwrap();
    if let Some(g) = map.get(&rank) {
        return Ok(Arc::clone(g));
    }
    let g = Arc::new(Group::build(rank));
    map.insert(rank, Arc::clone(&g));
    Ok(g)
}

impl Group {
    fn build(rank: usize) -> Group {
        let mut elements = Vec::new();
        let mut values: Vec<i32> = (1..=rank as i32).collect();
        permute(&mut values, 0, &mut |perm| {
            for signs in 0..(1u32 << rank) {
                let window: Vec<i32> = perm
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| if signs & (1 << i) != 0 { -e } else { e })
                    .collect();
                elements.push(SignedPermutation::from_window(&window).unwrap());
            }
        });
        elements.sort_by_key(|w| (w.length(), w.window().to_vec()));

        let position: HashMap<Vec<i32>, ElementIndex> = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.window().to_vec(), i as ElementIndex))
            .collect();
        let lookup = |w: &SignedPermutation| position[w.window()];

        let gens = generators(rank);
        let inverse = elements.iter().map(|w| lookup(&w.inverse())).collect();
        let length: Vec<u32> = elements.iter().map(|w| w.length()).collect();
        let length_t = elements.iter().map(|w| w.length_t()).collect();
        let left_gen: Vec<Vec<ElementIndex>> = gens
            .iter()
            .map(|&g| elements.iter().map(|w| lookup(&w.apply_left(g))).collect())
            .collect();
        let right_gen: Vec<Vec<ElementIndex>> = gens
            .iter()
            .map(|&g| elements.iter().map(|w| lookup(&w.apply_right(g))).collect())
            .collect();
        let mask = |test: &dyn Fn(&SignedPermutation, Generator) -> bool| -> Vec<u32> {
            elements
                .iter()
                .map(|w| {
                    gens.iter()
                        .enumerate()
                        .filter(|&(_, &g)| test(w, g))
                        .fold(0u32, |m, (gi, _)| m | (1 << gi))
                })
                .collect()
        };
        let left_desc = mask(&|w, g| w.has_left_descent(g));
        let right_desc = mask(&|w, g| w.has_right_descent(g));

        let bruhat = if rank <= MAX_DENSE_BRUHAT_RANK {
            Self::dense_bruhat(&elements, &length, &lookup)
        } else {
            Bruhat::Lazy(RwLock::new(HashMap::new()))
        };

        Group {
            rank,
            elements,
            position,
            inverse,
            length,
            length_t,
            left_gen,
            right_gen,
            left_desc,
            right_desc,
            gens,
            bruhat,
        }
    }

    /// Builds the down-set bitsets in index order. An element covers
    /// exactly the length-one-less products by a reflection, and its
    /// down-set is the union of the covers' down-sets plus itself.
    fn dense_bruhat(
        elements: &[SignedPermutation],
        length: &[u32],
        lookup: &dyn Fn(&SignedPermutation) -> ElementIndex,
    ) -> Bruhat {
        let order = elements.len();
        let stride = order.div_ceil(64);
        let mut bits = vec![0u64; order * stride];
        let refls = reflections(elements[0].rank());
        for y in 0..order {
            let (head, tail) = bits.split_at_mut(y * stride);
            let row = &mut tail[..stride];
            row[y / 64] |= 1 << (y % 64);
            for r in &refls {
                let x = lookup(&r.multiply(&elements[y]).unwrap());
                if length[x as usize] + 1 == length[y] {
                    let xrow = &head[x as usize * stride..(x as usize + 1) * stride];
                    for (dst, src) in row.iter_mut().zip(xrow) {
                        *dst |= src;
                    }
                }
            }
        }
        Bruhat::Dense { stride, bits }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn element(&self, i: ElementIndex) -> &SignedPermutation {
        &self.elements[i as usize]
    }

    /// Index of an element of the same rank. Panics on foreign windows.
    pub fn index(&self, w: &SignedPermutation) -> ElementIndex {
        self.position[w.window()]
    }

    pub fn generator_list(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn identity(&self) -> ElementIndex {
        0
    }

    pub fn longest(&self) -> ElementIndex {
        (self.order() - 1) as ElementIndex
    }

    pub fn inverse_of(&self, w: ElementIndex) -> ElementIndex {
        self.inverse[w as usize]
    }

    pub fn length_of(&self, w: ElementIndex) -> u32 {
        self.length[w as usize]
    }

    pub fn length_t_of(&self, w: ElementIndex) -> u32 {
        self.length_t[w as usize]
    }

    pub fn left(&self, g: usize, w: ElementIndex) -> ElementIndex {
        self.left_gen[g][w as usize]
    }

    pub fn right(&self, g: usize, w: ElementIndex) -> ElementIndex {
        self.right_gen[g][w as usize]
    }

    /// General product through window composition and index lookup.
    pub fn product(&self, x: ElementIndex, y: ElementIndex) -> ElementIndex {
        let w = self.elements[x as usize].multiply(&self.elements[y as usize]).unwrap();
        self.position[w.window()]
    }

    pub fn has_left_descent(&self, w: ElementIndex, g: usize) -> bool {
        self.left_desc[w as usize] & (1 << g) != 0
    }

    pub fn has_right_descent(&self, w: ElementIndex, g: usize) -> bool {
        self.right_desc[w as usize] & (1 << g) != 0
    }

    /// First left descent in generator order (`t` first); `None` only for
    /// the identity.
    pub fn first_left_descent(&self, w: ElementIndex) -> Option<usize> {
        let m = self.left_desc[w as usize];
        (m != 0).then(|| m.trailing_zeros() as usize)
    }

    pub fn bruhat_leq(&self, x: ElementIndex, y: ElementIndex) -> bool {
        match &self.bruhat {
            Bruhat::Dense { stride, bits } => {
                let row = y as usize * stride;
                bits[row + x as usize / 64] & (1 << (x % 64)) != 0
            }
            Bruhat::Lazy(memo) => self.bruhat_leq_lazy(x, y, memo),
        }
    }

    /// Lifting recursion: for a left descent `s` of `y`, `x <= y` iff
    /// `sx <= sy` when `s` also lowers `x`, and iff `x <= sy` otherwise.
    fn bruhat_leq_lazy(
        &self,
        x: ElementIndex,
        y: ElementIndex,
        memo: &RwLock<HashMap<(ElementIndex, ElementIndex), bool>>,
    ) -> bool {
        if x == y {
            return true;
        }
        if self.length[x as usize] >= self.length[y as usize] {
            return false;
        }
        if let Some(&v) = memo.read().unwrap().get(&(x, y)) {
            return v;
        }
        let s = self.first_left_descent(y).expect("y is not the identity here");
        let sy = self.left(s, y);
        let v = if self.has_left_descent(x, s) {
            self.bruhat_leq_lazy(self.left(s, x), sy, memo)
        } else {
            self.bruhat_leq_lazy(x, sy, memo)
        };
        memo.write().unwrap().insert((x, y), v);
        v
    }

    /// Indices of `{x : x <= w}` in increasing index order.
    pub fn down_set(&self, w: ElementIndex) -> Vec<ElementIndex> {
        (0..self.order() as ElementIndex).filter(|&x| self.bruhat_leq(x, w)).collect()
    }
}

/// All reflections: the sign changes `t_j`, the transpositions, and the
/// sign-crossing transpositions. There are `n^2` of them.
pub fn reflections(rank: usize) -> Vec<SignedPermutation> {
    let n = rank as i32;
    let mut out = Vec::with_capacity(rank * rank);
    for j in 1..=n {
        let mut win: Vec<i32> = (1..=n).collect();
        win[(j - 1) as usize] = -j;
        out.push(SignedPermutation::from_window(&win).unwrap());
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let mut win: Vec<i32> = (1..=n).collect();
            win[(i - 1) as usize] = j;
            win[(j - 1) as usize] = i;
            out.push(SignedPermutation::from_window(&win).unwrap());
            win[(i - 1) as usize] = -j;
            win[(j - 1) as usize] = -i;
            out.push(SignedPermutation::from_window(&win).unwrap());
        }
    }
    out
}

fn permute(values: &mut Vec<i32>, k: usize, emit: &mut dyn FnMut(&[i32])) {
    if k == values.len() {
        emit(values);
        return;
    }
    for i in k..values.len() {
        values.swap(k, i);
        permute(values, k + 1, emit);
        values.swap(k, i);
    }
}
