//! Signed permutations in window notation.
//!
//! An element w of rank n is stored as its window `[w(1), ..., w(n)]`, a
//! vector of nonzero integers whose absolute values are a permutation of
//! `1..=n`; the value at `-i` is determined by `w(-i) = -w(i)`. Products
//! compose as functions: `(x * y)(i) = x(y(i))`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported rank. Windows stay tiny, but every table downstream
/// grows like `2^n n!`, so the cap is deliberate.
pub const MAX_RANK: usize = 8;

/// A Coxeter generator: the sign change at position 1, or an adjacent
/// transposition `S(i)` swapping positions `i` and `i + 1` (1-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    T,
    S(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T => write!(f, "t"),
            Generator::S(i) => write!(f, "s{i}"),
        }
    }
}

/// The simple generators at a given rank, in the fixed order `t, s1, s2, ...`.
pub fn generators(rank: usize) -> Vec<Generator> {
    let mut gens = vec![Generator::T];
    gens.extend((1..rank).map(Generator::S));
    gens
}

/// An element of the extended generator set: the simple generators together
/// with every sign change `T(j)` (so `T(1)` is the simple one). Descent sets
/// over this alphabet are what the plactic-like relation compares.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ExtendedGenerator {
    T(usize),
    S(usize),
}

impl fmt::Display for ExtendedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedGenerator::T(j) => write!(f, "t{j}"),
            ExtendedGenerator::S(i) => write!(f, "s{i}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Length statistics: `total = t + s`, where `t` counts negative window
/// entries and `s` is the length inside the symmetric-group layer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LengthTriple {
    pub total: u32,
    pub t: u32,
    pub s: u32,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(rank: usize) -> Self {
        SignedPermutation { window: (1..=rank as i32).collect() }
    }

    /// Validates and adopts a window.
    pub fn from_window(window: &[i32]) -> Result<Self> {
        let n = window.len();
        if n == 0 || n > MAX_RANK {
            return Err(Error::RankRange { rank: n, max: MAX_RANK });
        }
        let mut seen = vec![false; n];
        for (pos, &e) in window.iter().enumerate() {
            let a = e.unsigned_abs() as usize;
            if e == 0 || a > n {
                return Err(Error::InvalidWindow {
                    position: pos + 1,
                    reason: format!("entry {e} outside 1..={n} in absolute value"),
                });
            }
            if seen[a - 1] {
                return Err(Error::InvalidWindow {
                    position: pos + 1,
                    reason: format!("absolute value {a} occurs twice"),
                });
            }
            seen[a - 1] = true;
        }
        Ok(SignedPermutation { window: window.to_vec() })
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// Image of a signed point, `j` in `-n..=-1` or `1..=n`.
    pub fn image(&self, j: i32) -> i32 {
        if j > 0 {
            self.window[(j - 1) as usize]
        } else {
            -self.window[(-j - 1) as usize]
        }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &e)| e == i as i32 + 1)
    }

    /// True when every entry is positive (the symmetric-group layer).
    pub fn is_unsigned(&self) -> bool {
        self.window.iter().all(|&e| e > 0)
    }

    /// Function composition `(self * other)(i) = self(other(i))`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        let window = other.window.iter().map(|&j| self.image(j)).collect();
        Ok(SignedPermutation { window })
    }

    pub fn inverse(&self) -> Self {
        let mut window = vec![0; self.rank()];
        for (i, &e) in self.window.iter().enumerate() {
            let i = i as i32 + 1;
            if e > 0 {
                window[(e - 1) as usize] = i;
            } else {
                window[(-e - 1) as usize] = -i;
            }
        }
        SignedPermutation { window }
    }

    /// Coxeter length and its two summands.
    ///
    /// `total` is the inversion count of the window plus the sum of the
    /// absolute values of its negative entries; `t` is the number of
    /// negative entries.
    pub fn lengths(&self) -> LengthTriple {
        let n = self.rank();
        let mut inv = 0u32;
        for i in 0..n {
            for j in i + 1..n {
                if self.window[i] > self.window[j] {
                    inv += 1;
                }
            }
        }
        let mut t = 0u32;
        let mut neg_sum = 0u32;
        for &e in &self.window {
            if e < 0 {
                t += 1;
                neg_sum += (-e) as u32;
            }
        }
        let total = inv + neg_sum;
        LengthTriple { total, t, s: total - t }
    }

    pub fn length(&self) -> u32 {
        self.lengths().total
    }

    /// Number of negative window entries.
    pub fn length_t(&self) -> u32 {
        self.window.iter().filter(|&&e| e < 0).count() as u32
    }

    /// Right multiplication by a generator, in place on a copy.
    pub fn apply_right(&self, g: Generator) -> Self {
        let mut window = self.window.clone();
        match g {
            Generator::T => window[0] = -window[0],
            Generator::S(i) => window.swap(i - 1, i),
        }
        SignedPermutation { window }
    }

    /// Left multiplication by a generator.
    pub fn apply_left(&self, g: Generator) -> Self {
        let mut window = self.window.clone();
        match g {
            Generator::T => {
                for e in &mut window {
                    if e.abs() == 1 {
                        *e = -*e;
                    }
                }
            }
            Generator::S(i) => {
                let (a, b) = (i as i32, i as i32 + 1);
                for e in &mut window {
                    if e.abs() == a {
                        *e = e.signum() * b;
                    } else if e.abs() == b {
                        *e = e.signum() * a;
                    }
                }
            }
        }
        SignedPermutation { window }
    }

    /// Does right multiplication by `g` shorten the element?
    pub fn has_right_descent(&self, g: Generator) -> bool {
        match g {
            Generator::T => self.window[0] < 0,
            Generator::S(i) => self.window[i - 1] > self.window[i],
        }
    }

    /// Does left multiplication by `g` shorten the element?
    pub fn has_left_descent(&self, g: Generator) -> bool {
        match g {
            Generator::T => self.position_of(1) < 0,
            Generator::S(i) => self.position_of(i as i32) > self.position_of(i as i32 + 1),
        }
    }

    /// Signed position of the value `j > 0`: returns `p` with `w(p) = j`,
    /// negative when the value occurs negated. Equals `w^{-1}(j)`.
    fn position_of(&self, j: i32) -> i32 {
        for (i, &e) in self.window.iter().enumerate() {
            if e == j {
                return i as i32 + 1;
            }
            if e == -j {
                return -(i as i32 + 1);
            }
        }
        unreachable!("value {j} missing from window");
    }

    /// Descent set over the extended alphabet. On the right, `T(j)` is a
    /// descent iff `w(j) < 0` and `S(i)` iff `w(i) > w(i+1)`; the left set
    /// is the right set of the inverse.
    pub fn extended_descents(&self, side: Side) -> Vec<ExtendedGenerator> {
        match side {
            Side::Right => {
                let mut out = Vec::new();
                for (i, &e) in self.window.iter().enumerate() {
                    if e < 0 {
                        out.push(ExtendedGenerator::T(i + 1));
                    }
                    if i + 1 < self.rank() && e > self.window[i + 1] {
                        out.push(ExtendedGenerator::S(i + 1));
                    }
                }
                out.sort();
                out
            }
            Side::Left => self.inverse().extended_descents(Side::Right),
        }
    }

    /// The simple descents on the given side, in generator order.
    pub fn descents(&self, side: Side) -> Vec<Generator> {
        generators(self.rank())
            .into_iter()
            .filter(|&g| match side {
                Side::Right => self.has_right_descent(g),
                Side::Left => self.has_left_descent(g),
            })
            .collect()
    }

    /// A reduced word, produced by repeatedly stripping the first available
    /// left descent (`t` before `s1` before `s2` ...). Deterministic.
    pub fn reduced_word(&self) -> Vec<Generator> {
        let mut word = Vec::with_capacity(self.length() as usize);
        let mut w = self.clone();
        'outer: while !w.is_identity() {
            for g in generators(self.rank()) {
                if w.has_left_descent(g) {
                    word.push(g);
                    w = w.apply_left(g);
                    continue 'outer;
                }
            }
            unreachable!("non-identity element with empty descent set");
        }
        word
    }

    /// Comma-separated window, e.g. `-4,3,6,-1,7,-2,5`.
    pub fn window_string(&self) -> String {
        self.window.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse_window(text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|tok| {
                tok.trim().parse::<i32>().map_err(|_| Error::Parse {
                    at: 0,
                    reason: format!("bad window entry {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_window(&entries)
    }

    /// Space-separated reduced word, `1` for the identity.
    pub fn word_string(&self) -> String {
        let word = self.reduced_word();
        if word.is_empty() {
            "1".to_string()
        } else {
            word.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
        }
    }

    /// Parses a word in the generators, e.g. `t s1 s2`; the single token `1`
    /// denotes the identity. The product is taken left to right.
    pub fn parse_word(text: &str, rank: usize) -> Result<Self> {
        let mut w = SignedPermutation::identity(rank);
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let g = if tok == "t" {
                Generator::T
            } else if let Some(num) = tok.strip_prefix('s') {
                let i: usize = num.parse().map_err(|_| Error::Parse {
                    at: 0,
                    reason: format!("bad generator token {tok:?}"),
                })?;
                if i == 0 || i >= rank {
                    return Err(Error::Parse {
                        at: 0,
                        reason: format!("generator s{i} needs rank > {i}"),
                    });
                }
                Generator::S(i)
            } else {
                return Err(Error::Parse { at: 0, reason: format!("bad generator token {tok:?}") });
            };
            w = w.apply_right(g);
        }
        Ok(w)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.window_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(entries: &[i32]) -> SignedPermutation {
        SignedPermutation::from_window(entries).unwrap()
    }

    #[test]
    fn window_validation_reports_position() {
        match SignedPermutation::from_window(&[1, 1, 3]) {
            Err(Error::InvalidWindow { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected InvalidWindow, got {other:?}"),
        }
        assert!(SignedPermutation::from_window(&[0, 2]).is_err());
        assert!(SignedPermutation::from_window(&[3, 1]).is_err());
        assert!(SignedPermutation::from_window(&[-2, 1]).is_ok());
        assert!(SignedPermutation::from_window(&[]).is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let t = w(&[-1, 2]);
        let s1 = w(&[2, 1]);
        assert_eq!(s1.multiply(&t).unwrap(), w(&[-2, 1]));
        assert_eq!(t.multiply(&s1).unwrap(), w(&[2, -1]));
        assert!(t.multiply(&SignedPermutation::identity(3)).is_err());
    }

    #[test]
    fn inverse_and_identity() {
        let x = w(&[-4, 3, 6, -1, 7, -2, 5]);
        let id = SignedPermutation::identity(7);
        assert_eq!(x.multiply(&x.inverse()).unwrap(), id);
        assert_eq!(x.inverse().multiply(&x).unwrap(), id);
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn image_respects_signs() {
        let x = w(&[-2, 1]);
        assert_eq!(x.image(1), -2);
        assert_eq!(x.image(-1), 2);
        assert_eq!(x.image(2), 1);
    }

    #[test]
    fn length_formula_matches_known_values() {
        // Longest element: all entries negated, length n^2.
        for n in 1..=5 {
            let w0 = SignedPermutation::from_window(
                &(1..=n as i32).map(|i| -i).collect::<Vec<_>>(),
            )
            .unwrap();
            assert_eq!(w0.length(), (n * n) as u32);
            assert_eq!(w0.length_t(), n as u32);
        }
        // Sign change at value i: length 2i - 1.
        for i in 1..=4u32 {
            let mut win: Vec<i32> = (1..=4).collect();
            win[(i - 1) as usize] = -(i as i32);
            assert_eq!(w(&win).length(), 2 * i - 1);
        }
        assert_eq!(SignedPermutation::identity(3).length(), 0);
    }

    #[test]
    fn lengths_split_into_sign_and_swap_parts() {
        let x = w(&[-4, 3, 6, -1, 7, -2, 5]);
        let lt = x.lengths();
        assert_eq!(lt.t, 3);
        assert_eq!(lt.total, lt.t + lt.s);
        assert_eq!(x.length_t(), 3);
    }

    #[test]
    fn descent_window_tests() {
        let x = w(&[2, -1, 3]);
        assert!(x.has_right_descent(Generator::S(1)));
        assert!(!x.has_right_descent(Generator::S(2)));
        assert!(!x.has_right_descent(Generator::T));
        assert!(x.apply_right(Generator::T).has_right_descent(Generator::T));

        // Left descents read off the inverse window.
        assert!(x.has_left_descent(Generator::T));
        assert_eq!(x.inverse().has_right_descent(Generator::T), x.has_left_descent(Generator::T));
        for g in generators(3) {
            assert_eq!(x.inverse().has_right_descent(g), x.has_left_descent(g));
        }
    }

    #[test]
    fn generator_actions_match_multiplication() {
        let x = w(&[3, -1, -2]);
        for g in generators(3) {
            let gw = match g {
                Generator::T => w(&[-1, 2, 3]),
                Generator::S(1) => w(&[2, 1, 3]),
                Generator::S(2) => w(&[1, 3, 2]),
                _ => unreachable!(),
            };
            assert_eq!(x.apply_right(g), x.multiply(&gw).unwrap());
            assert_eq!(x.apply_left(g), gw.multiply(&x).unwrap());
        }
    }

    #[test]
    fn extended_descents_by_window_tests() {
        use ExtendedGenerator as E;
        let x = w(&[2, -1, 3]);
        assert_eq!(x.extended_descents(Side::Right), vec![E::T(2), E::S(1)]);
        // Inverse window is [-2, 1, 3]: only the first sign change shortens.
        assert_eq!(x.extended_descents(Side::Left), vec![E::T(1)]);
        let y = w(&[3, -1, -2]);
        // Inverse window is [-2, -3, 1].
        assert_eq!(y.extended_descents(Side::Left), vec![E::T(1), E::T(2), E::S(1)]);
    }

    #[test]
    fn reduced_word_has_length_many_letters_and_evaluates_back() {
        for win in [vec![-1, 2], vec![2, -1], vec![-2, -1], vec![-3, 1, 2], vec![3, -1, -2]] {
            let x = w(&win);
            let word = x.reduced_word();
            assert_eq!(word.len() as u32, x.length());
            let mut acc = SignedPermutation::identity(x.rank());
            for &g in &word {
                acc = acc.apply_right(g);
            }
            assert_eq!(acc, x);
        }
    }

    #[test]
    fn window_text_roundtrip() {
        let x = w(&[-4, 3, 6, -1, 7, -2, 5]);
        assert_eq!(x.window_string(), "-4,3,6,-1,7,-2,5");
        assert_eq!(SignedPermutation::parse_window("-4,3,6,-1,7,-2,5").unwrap(), x);
        assert_eq!(SignedPermutation::parse_window(" -2 , 1 ").unwrap(), w(&[-2, 1]));
        assert!(SignedPermutation::parse_window("1,x").is_err());
        assert!(SignedPermutation::parse_window("1,1").is_err());
    }

    #[test]
    fn word_text_roundtrip() {
        let x = SignedPermutation::parse_word("t s1 s2", 3).unwrap();
        assert_eq!(x, w(&[2, 3, -1]));
        assert_eq!(SignedPermutation::parse_word("1", 3).unwrap(), SignedPermutation::identity(3));
        assert!(SignedPermutation::parse_word("s3", 3).is_err());
        assert!(SignedPermutation::parse_word("u", 3).is_err());

        let y = w(&[3, -1, -2]);
        assert_eq!(SignedPermutation::parse_word(&y.word_string(), 3).unwrap(), y);
        assert_eq!(SignedPermutation::identity(3).word_string(), "1");
    }
}
