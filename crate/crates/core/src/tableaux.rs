//! Standard tableaux, bitableaux, and the row-insertion correspondence for
//! signed permutations.
//!
//! A signed permutation maps to a pair of bitableaux `(A, B)` of equal
//! shape: reading the window left to right, the absolute value of a
//! positive entry is row-inserted into the plus tableau of `A` and of a
//! negative entry into the minus tableau, while the position is recorded
//! in the matching tableau of `B`. The map is a bijection onto same-shape
//! pairs of standard bitableaux, the recording bitableau of `w` is the
//! insertion bitableau of `w^{-1}`, and the minus tableau size counts the
//! negative window entries.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::coset::decompose;
use crate::group::{ElementIndex, ExtendedGenerator, Group, Side, SignedPermutation};

/// A standard tableau: strictly increasing rows and columns, all entries
/// distinct. Entries need not be contiguous, since a bitableau splits its
/// letters between two tableaux.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Tableau { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTableau(msg));
        let mut seen = std::collections::HashSet::new();
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                return bad(format!("row {} is empty", r + 1));
            }
            if r > 0 && self.rows[r - 1].len() < row.len() {
                return bad(format!("row {} longer than the row above", r + 1));
            }
            for (c, &e) in row.iter().enumerate() {
                if e == 0 {
                    return bad("entries must be positive".to_string());
                }
                if !seen.insert(e) {
                    return bad(format!("entry {e} occurs twice"));
                }
                if c > 0 && row[c - 1] >= e {
                    return bad(format!("row {} not increasing", r + 1));
                }
                if r > 0 && self.rows[r - 1][c] >= e {
                    return bad(format!("column {} not increasing", c + 1));
                }
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn entries(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.rows.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn find(&self, x: usize) -> Option<(usize, usize)> {
        for (r, row) in self.rows.iter().enumerate() {
            if let Ok(c) = row.binary_search(&x) {
                return Some((r, c));
            }
        }
        None
    }

    fn is_corner(&self, r: usize, c: usize) -> bool {
        c + 1 == self.rows[r].len() && self.rows.get(r + 1).is_none_or(|next| next.len() <= c)
    }

    /// Row insertion; returns the coordinates of the box that appeared.
    pub fn insert(&mut self, x: usize) -> (usize, usize) {
        let mut x = x;
        for r in 0..self.rows.len() {
            let row = &mut self.rows[r];
            let pos = row.partition_point(|&e| e < x);
            if pos == row.len() {
                row.push(x);
                return (r, pos);
            }
            std::mem::swap(&mut x, &mut row[pos]);
        }
        self.rows.push(vec![x]);
        (self.rows.len() - 1, 0)
    }

    /// Appends `x` at the end of the given row; used to mirror an insertion
    /// into the recording tableau.
    fn push_at_row(&mut self, r: usize, x: usize) {
        if r == self.rows.len() {
            self.rows.push(vec![x]);
        } else {
            self.rows[r].push(x);
        }
    }

    /// Reverse bumping from the corner box of row `r`; returns the value
    /// expelled from the top row.
    fn reverse_insert(&mut self, r: usize) -> Result<usize> {
        let mut x = self.rows[r]
            .pop()
            .ok_or_else(|| Error::InvalidTableau("reverse bump from empty row".into()))?;
        if self.rows[r].is_empty() {
            self.rows.pop();
        }
        for rr in (0..r).rev() {
            let row = &mut self.rows[rr];
            let pos = row.partition_point(|&e| e < x);
            if pos == 0 {
                return Err(Error::InvalidTableau("reverse bump found no smaller entry".into()));
            }
            std::mem::swap(&mut x, &mut row[pos - 1]);
        }
        Ok(x)
    }

    /// Entry-wise relabeling; the result must again be standard.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Result<Tableau> {
        Tableau::from_rows(
            self.rows.iter().map(|row| row.iter().map(|&e| f(e)).collect()).collect(),
        )
    }

    /// Row-insertion product: inserts the row word of `other` (bottom row
    /// to top, left to right) into `self`.
    pub fn product(&self, other: &Tableau) -> Tableau {
        let mut out = self.clone();
        for row in other.rows.iter().rev() {
            for &e in row {
                out.insert(e);
            }
        }
        out
    }

    /// `3,5,7;6` with rows separated by `;`; the empty tableau is `-`.
    pub fn text(&self) -> String {
        if self.rows.is_empty() {
            return "-".to_string();
        }
        self.rows
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "-" {
            return Ok(Tableau::empty());
        }
        let rows = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|tok| {
                        tok.trim().parse::<usize>().map_err(|_| {
                            Error::Parse { at: 0, reason: format!("bad tableau entry {tok:?}") }
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Tableau::from_rows(rows)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// An ordered pair of tableaux holding the positive and negative letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Bitableau {
    pub plus: Tableau,
    pub minus: Tableau,
}

impl Bitableau {
    pub fn new(plus: Tableau, minus: Tableau) -> Self {
        Bitableau { plus, minus }
    }

    pub fn shape(&self) -> (Vec<usize>, Vec<usize>) {
        (self.plus.shape(), self.minus.shape())
    }

    pub fn size(&self) -> usize {
        self.plus.size() + self.minus.size()
    }

    /// Checks that the two entry sets partition `1..=n`.
    pub fn is_standard_for(&self, n: usize) -> bool {
        let mut entries = self.plus.entries();
        entries.extend(self.minus.entries());
        entries.sort_unstable();
        entries == (1..=n).collect::<Vec<_>>()
    }

    /// `plus|minus`, e.g. `3,5,7;6|1,2;4`.
    pub fn text(&self) -> String {
        format!("{}|{}", self.plus.text(), self.minus.text())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split('|');
        let (plus, minus) = match (parts.next(), parts.next(), parts.next()) {
            (Some(p), Some(m), None) => (p, m),
            _ => {
                return Err(Error::Parse {
                    at: 0,
                    reason: "bitableau text needs exactly one '|'".to_string(),
                })
            }
        };
        Ok(Bitableau { plus: Tableau::parse(plus)?, minus: Tableau::parse(minus)? })
    }
}

impl fmt::Display for Bitableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// Insertion and recording bitableaux of a signed permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RsPair {
    pub insertion: Bitableau,
    pub recording: Bitableau,
}

/// The correspondence, window read left to right.
pub fn rs(w: &SignedPermutation) -> RsPair {
    let mut insertion = Bitableau::default();
    let mut recording = Bitableau::default();
    for i in 1..=w.rank() as i32 {
        let e = w.image(i);
        let (a, b) = if e > 0 {
            (&mut insertion.plus, &mut recording.plus)
        } else {
            (&mut insertion.minus, &mut recording.minus)
        };
        let (r, _) = a.insert(e.unsigned_abs() as usize);
        b.push_at_row(r, i as usize);
    }
    RsPair { insertion, recording }
}

/// Inverts the correspondence. The pair must be same-shape and jointly
/// standard on `1..=n`.
pub fn rs_inverse(pair: &RsPair) -> Result<SignedPermutation> {
    let n = pair.recording.size();
    if pair.insertion.plus.shape() != pair.recording.plus.shape()
        || pair.insertion.minus.shape() != pair.recording.minus.shape()
    {
        return Err(Error::InvalidTableau("insertion and recording shapes differ".into()));
    }
    if !pair.recording.is_standard_for(n) || !pair.insertion.is_standard_for(n) {
        return Err(Error::InvalidTableau(format!("pair is not standard on 1..={n}")));
    }
    let mut a_plus = pair.insertion.plus.clone();
    let mut a_minus = pair.insertion.minus.clone();
    let mut b_plus = pair.recording.plus.clone();
    let mut b_minus = pair.recording.minus.clone();
    let mut window = vec![0i32; n];
    for i in (1..=n).rev() {
        let (a, b, sign) = if b_plus.find(i).is_some() {
            (&mut a_plus, &mut b_plus, 1)
        } else {
            (&mut a_minus, &mut b_minus, -1)
        };
        let (r, c) = b.find(i).expect("label present by standardness");
        if !b.is_corner(r, c) {
            return Err(Error::InvalidTableau(format!("label {i} is not at a corner")));
        }
        b.rows[r].pop();
        if b.rows[r].is_empty() {
            b.rows.pop();
        }
        let p = a.reverse_insert(r)?;
        window[i - 1] = sign * p as i32;
    }
    SignedPermutation::from_window(&window)
}

/// Classical correspondence for a word with distinct positive letters;
/// recording labels are the positions `1..=m`.
pub fn classical_rs(word: &[usize]) -> (Tableau, Tableau) {
    let mut a = Tableau::empty();
    let mut b = Tableau::empty();
    for (i, &x) in word.iter().enumerate() {
        let (r, _) = a.insert(x);
        b.push_at_row(r, i + 1);
    }
    (a, b)
}

/// All single admissible interchanges of adjacent window entries: swaps
/// across a sign change, and same-sign swaps witnessed by a neighbor whose
/// absolute value lies strictly between the two.
pub fn admissible_targets(w: &SignedPermutation) -> Vec<SignedPermutation> {
    let win = w.window();
    let n = win.len();
    let p = |k: usize| win[k].unsigned_abs();
    let between = |x: u32, lo: u32, hi: u32| {
        let (lo, hi) = if lo < hi { (lo, hi) } else { (hi, lo) };
        lo < x && x < hi
    };
    let mut out = Vec::new();
    for i in 0..n - 1 {
        let same_sign = |k: usize| win[k].signum() == win[i].signum();
        let case_a = i >= 1 && same_sign(i - 1) && same_sign(i + 1) && between(p(i - 1), p(i), p(i + 1));
        let case_b =
            i + 2 < n && same_sign(i + 1) && same_sign(i + 2) && between(p(i + 2), p(i), p(i + 1));
        let case_c = win[i].signum() != win[i + 1].signum();
        if case_a || case_b || case_c {
            let mut swapped = win.to_vec();
            swapped.swap(i, i + 1);
            out.push(SignedPermutation::from_window(&swapped).unwrap());
        }
    }
    out
}

/// Connected components of the admissible-interchange graph, each sorted,
/// ordered by first element.
pub fn admissible_classes(group: &Group) -> Vec<Vec<ElementIndex>> {
    components(group, |w| {
        admissible_targets(group.element(w)).iter().map(|u| group.index(u)).collect()
    })
}

/// Is `y = sx` for an unsigned simple generator a relation edge? Requires
/// the product to be longer and the extended left descent set of `x` not
/// to embed into that of `y`.
fn knuth_edge(group: &Group, lsets: &[Vec<ExtendedGenerator>], x: ElementIndex, y: ElementIndex) -> bool {
    group.length_of(y) > group.length_of(x) && !subset(&lsets[x as usize], &lsets[y as usize])
}

fn subset(a: &[ExtendedGenerator], b: &[ExtendedGenerator]) -> bool {
    a.iter().all(|g| b.binary_search(g).is_ok())
}

/// Classes of the symmetrized relation generated by the unsigned simple
/// generators acting on the left.
pub fn knuth_classes(group: &Group) -> Vec<Vec<ElementIndex>> {
    let lsets: Vec<Vec<ExtendedGenerator>> =
        group.elements().iter().map(|w| w.extended_descents(Side::Left)).collect();
    components(group, |x| {
        (1..group.generator_count())
            .filter_map(|gi| {
                let y = group.left(gi, x);
                let edge = knuth_edge(group, &lsets, x, y) || knuth_edge(group, &lsets, y, x);
                edge.then_some(y)
            })
            .collect()
    })
}

/// Are two elements joined by a chain of elementary relations?
pub fn knuth_left_relation(group: &Group, x: ElementIndex, y: ElementIndex) -> bool {
    knuth_classes(group).iter().any(|class| {
        class.binary_search(&x).is_ok() && class.binary_search(&y).is_ok()
    })
}

fn components(
    group: &Group,
    neighbors: impl Fn(ElementIndex) -> Vec<ElementIndex>,
) -> Vec<Vec<ElementIndex>> {
    let order = group.order();
    let mut seen = vec![false; order];
    let mut classes = Vec::new();
    for start in 0..order as ElementIndex {
        if seen[start as usize] {
            continue;
        }
        let mut class = vec![start];
        seen[start as usize] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    class.push(y);
                    queue.push_back(y);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

/// One fiber of the recording map.
#[derive(Clone, Debug)]
pub struct RsCell {
    pub recording: Bitableau,
    pub elements: Vec<ElementIndex>,
}

/// Partition of the group by recording bitableau, cells ordered by their
/// first element, elements in enumeration order.
pub fn rs_cells(group: &Group) -> Vec<RsCell> {
    let mut fibers: HashMap<Bitableau, Vec<ElementIndex>> = HashMap::new();
    for (i, w) in group.elements().iter().enumerate() {
        fibers.entry(rs(w).recording).or_default().push(i as ElementIndex);
    }
    let mut cells: Vec<RsCell> =
        fibers.into_iter().map(|(recording, elements)| RsCell { recording, elements }).collect();
    cells.sort_by_key(|c| c.elements[0]);
    cells
}

/// The relation computed through the four-factor decomposition: equal
/// negative-entry count, equal right block factor, and classically
/// equivalent unsigned components.
pub fn equivalent_by_decomposition(x: &SignedPermutation, y: &SignedPermutation) -> bool {
    let dx = decompose(x);
    let dy = decompose(y);
    dx.l == dy.l
        && dx.b == dy.b
        && classical_rs(&dx.lower_one_line()).1 == classical_rs(&dy.lower_one_line()).1
        && classical_rs(&dx.upper_one_line()).1 == classical_rs(&dy.upper_one_line()).1
}

/// JSON form of a tableau.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TableauJson {
    pub shape: Vec<usize>,
    pub rows: Vec<Vec<usize>>,
}

impl From<&Tableau> for TableauJson {
    fn from(t: &Tableau) -> Self {
        TableauJson { shape: t.shape(), rows: t.rows.clone() }
    }
}

impl TryFrom<TableauJson> for Tableau {
    type Error = Error;
    fn try_from(j: TableauJson) -> Result<Tableau> {
        let t = Tableau::from_rows(j.rows)?;
        if t.shape() != j.shape {
            return Err(Error::InvalidTableau("declared shape does not match rows".into()));
        }
        Ok(t)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BitableauJson {
    pub plus: TableauJson,
    pub minus: TableauJson,
}

impl From<&Bitableau> for BitableauJson {
    fn from(b: &Bitableau) -> Self {
        BitableauJson { plus: (&b.plus).into(), minus: (&b.minus).into() }
    }
}

impl TryFrom<BitableauJson> for Bitableau {
    type Error = Error;
    fn try_from(j: BitableauJson) -> Result<Bitableau> {
        Ok(Bitableau { plus: j.plus.try_into()?, minus: j.minus.try_into()? })
    }
}
