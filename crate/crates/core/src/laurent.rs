//! Laurent polynomials over a totally ordered monomial group.
//!
//! The monomial group is free abelian of rank two (letters `V` and `v`,
//! ordered lexicographically so that every positive power of `V` dominates
//! every power of `v`) or of rank one (single letter `v`). Rank two is the
//! generic two-parameter setting; rank one arises from integer weight
//! functions. In both cases the order is total, so every nonzero polynomial
//! splits cleanly into parts above, at, and below the unit monomial.
//!
//! `q` is shorthand for `v^2` in text input.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of a monomial relative to the unit in the group order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderClass {
    Negative,
    One,
    Positive,
}

/// A monomial, stored as its exponent vector.
///
/// Rank two uses both slots (`V`-exponent, `v`-exponent); rank one uses the
/// first slot only. The derived lexicographic order on `(dim, exp)` is the
/// group order, since elements of different dimension never mix.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GammaElement {
    dim: u8,
    exp: [i64; 2],
}

impl GammaElement {
    pub fn rank2(big_v: i64, small_v: i64) -> Self {
        GammaElement { dim: 2, exp: [big_v, small_v] }
    }

    pub fn rank1(small_v: i64) -> Self {
        GammaElement { dim: 1, exp: [small_v, 0] }
    }

    pub fn unit(dim: u8) -> Self {
        debug_assert!(dim == 1 || dim == 2);
        GammaElement { dim, exp: [0, 0] }
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    /// Exponent vector; for rank one only the first slot is meaningful.
    pub fn exponents(&self) -> [i64; 2] {
        self.exp
    }

    pub fn is_unit(&self) -> bool {
        self.exp == [0, 0]
    }

    /// Group product (exponent sum). Panics on dimension mismatch.
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "monomial dimension mismatch");
        GammaElement {
            dim: self.dim,
            exp: [self.exp[0] + other.exp[0], self.exp[1] + other.exp[1]],
        }
    }

    /// Group inverse (exponent negation).
    pub fn inverse(&self) -> Self {
        GammaElement { dim: self.dim, exp: [-self.exp[0], -self.exp[1]] }
    }

    pub fn order_class(&self) -> OrderClass {
        match self.exp.cmp(&[0, 0]) {
            std::cmp::Ordering::Less => OrderClass::Negative,
            std::cmp::Ordering::Equal => OrderClass::One,
            std::cmp::Ordering::Greater => OrderClass::Positive,
        }
    }

    fn text(&self) -> String {
        let mut parts = Vec::new();
        if self.dim == 2 {
            if self.exp[0] != 0 {
                parts.push(power_text('V', self.exp[0]));
            }
            if self.exp[1] != 0 {
                parts.push(power_text('v', self.exp[1]));
            }
        } else if self.exp[0] != 0 {
            parts.push(power_text('v', self.exp[0]));
        }
        parts.join(" ")
    }
}

fn power_text(letter: char, exp: i64) -> String {
    if exp == 1 {
        letter.to_string()
    } else {
        format!("{letter}^{exp}")
    }
}

/// Choice of the ordered monomial group.
///
/// `Asymptotic` is the rank-two group; `Weighted { c, d }` sends the two
/// letters to `v^c` and `v^d` in the rank-one group. Weights must be
/// strictly positive so that both letters stay above the unit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderSpec {
    Asymptotic,
    Weighted { c: i64, d: i64 },
}

impl OrderSpec {
    pub fn weighted(c: i64, d: i64) -> Result<Self> {
        if c < 1 || d < 1 {
            return Err(Error::InvalidWeight(format!(
                "weights must be strictly positive, got c = {c}, d = {d}"
            )));
        }
        Ok(OrderSpec::Weighted { c, d })
    }

    pub fn dim(&self) -> u8 {
        match self {
            OrderSpec::Asymptotic => 2,
            OrderSpec::Weighted { .. } => 1,
        }
    }

    /// Weight of the sign-flip generator.
    pub fn weight_t(&self) -> GammaElement {
        match self {
            OrderSpec::Asymptotic => GammaElement::rank2(1, 0),
            OrderSpec::Weighted { c, .. } => GammaElement::rank1(*c),
        }
    }

    /// Weight of every adjacent transposition (they are conjugate, so the
    /// weight function cannot distinguish them).
    pub fn weight_s(&self) -> GammaElement {
        match self {
            OrderSpec::Asymptotic => GammaElement::rank2(0, 1),
            OrderSpec::Weighted { d, .. } => GammaElement::rank1(*d),
        }
    }

    pub fn order_class(&self, g: &GammaElement) -> Result<OrderClass> {
        if g.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: g.dim() });
        }
        Ok(g.order_class())
    }

    /// Stable identifier used in cache headers and file names.
    pub fn key(&self) -> String {
        match self {
            OrderSpec::Asymptotic => "asymptotic".to_string(),
            OrderSpec::Weighted { c, d } => format!("weighted-c{c}-d{d}"),
        }
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderSpec::Asymptotic => write!(f, "asymptotic"),
            OrderSpec::Weighted { c, d } => write!(f, "weighted c = {c}, d = {d}"),
        }
    }
}

/// Laurent polynomial with integer coefficients over the monomial group.
///
/// Invariant: no stored coefficient is zero, and every key has dimension
/// `self.dim`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentElement {
    dim: u8,
    terms: BTreeMap<GammaElement, BigInt>,
}

impl LaurentElement {
    pub fn zero(dim: u8) -> Self {
        debug_assert!(dim == 1 || dim == 2);
        LaurentElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: u8) -> Self {
        Self::constant(dim, BigInt::one())
    }

    pub fn constant(dim: u8, c: BigInt) -> Self {
        Self::term(GammaElement::unit(dim), c)
    }

    pub fn monomial(g: GammaElement) -> Self {
        Self::term(g, BigInt::one())
    }

    pub fn term(g: GammaElement, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        LaurentElement { dim: g.dim(), terms }
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&GammaElement::unit(self.dim))
                .is_some_and(|c| c.is_one())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&GammaElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GammaElement) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_coefficient(&self) -> BigInt {
        self.coefficient(&GammaElement::unit(self.dim))
    }

    fn insert(&mut self, g: GammaElement, c: BigInt) {
        assert_eq!(g.dim(), self.dim, "monomial dimension mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        for (g, c) in &other.terms {
            self.insert(*g, c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        for (g, c) in &other.terms {
            self.insert(*g, -c.clone());
        }
    }

    /// Adds `g * c * other` into `self`; the workhorse of the recursions.
    pub fn add_scaled(&mut self, other: &Self, g: &GammaElement, c: &BigInt) {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (h, a) in &other.terms {
            self.insert(g.product(h), a * c);
        }
    }

    pub fn mul_monomial(&self, g: &GammaElement) -> Self {
        let mut out = Self::zero(self.dim);
        out.add_scaled(self, g, &BigInt::one());
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.dim);
        out.add_scaled(self, &GammaElement::unit(self.dim), c);
        out
    }

    /// Exponent negation; the ring involution fixing the coefficients.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (g, c) in &self.terms {
            out.insert(g.inverse(), c.clone());
        }
        out
    }

    /// Splits into the parts supported strictly above the unit, at the unit,
    /// and strictly below, in that order. The three parts sum to `self`.
    pub fn split(&self) -> (Self, Self, Self) {
        let mut plus = Self::zero(self.dim);
        let mut unit = Self::zero(self.dim);
        let mut minus = Self::zero(self.dim);
        for (g, c) in &self.terms {
            match g.order_class() {
                OrderClass::Positive => plus.insert(*g, c.clone()),
                OrderClass::One => unit.insert(*g, c.clone()),
                OrderClass::Negative => minus.insert(*g, c.clone()),
            }
        }
        (plus, unit, minus)
    }

    /// True when every monomial lies strictly below the unit.
    pub fn is_supported_below_unit(&self) -> bool {
        self.terms.keys().all(|g| g.order_class() == OrderClass::Negative)
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Value at `V = v = 1`: the sum of the coefficients.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Reads the element as an ordinary polynomial in `q = v^2`.
    ///
    /// Requires the rank-two group and every monomial of the shape `q^k`
    /// with `k >= 0`; anything else is reported in the error.
    pub fn as_q_polynomial(&self) -> Result<QPolynomial> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: self.dim });
        }
        let mut offending = Vec::new();
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (g, c) in &self.terms {
            let [big_v, small_v] = g.exponents();
            if big_v != 0 || small_v < 0 || small_v % 2 != 0 {
                offending.push(if g.is_unit() { "1".to_string() } else { g.text() });
                continue;
            }
            let k = (small_v / 2) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] = c.clone();
        }
        if offending.is_empty() {
            Ok(QPolynomial { coeffs })
        } else {
            Err(Error::NotAQPolynomial(offending))
        }
    }

    /// JSON term list; coefficients must fit in an `i64`.
    pub fn to_json_terms(&self) -> Result<Vec<JsonTerm>> {
        self.terms
            .iter()
            .rev()
            .map(|(g, c)| {
                let c = i64::try_from(c.clone())
                    .map_err(|_| Error::CoefficientRange(c.to_string()))?;
                let [e0, e1] = g.exponents();
                let (big_v, small_v) = if self.dim == 2 { (e0, e1) } else { (0, e0) };
                Ok(JsonTerm { big_v, small_v, c })
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm], dim: u8) -> Result<Self> {
        let mut out = Self::zero(dim);
        for t in terms {
            let g = if dim == 2 {
                GammaElement::rank2(t.big_v, t.small_v)
            } else {
                if t.big_v != 0 {
                    return Err(Error::DimensionMismatch { expected: 1, got: 2 });
                }
                GammaElement::rank1(t.small_v)
            };
            out.insert(g, BigInt::from(t.c));
        }
        Ok(out)
    }

    /// Parses the textual grammar: terms joined by `+`/`-`, each an optional
    /// integer coefficient followed by optional `V^i`, `v^j`, `q^k` factors
    /// (`q` abbreviates `v^2`). Unit exponents may be suppressed.
    pub fn parse(input: &str, dim: u8) -> Result<Self> {
        Parser { bytes: input.as_bytes(), pos: 0, dim }.parse()
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mono = g.text();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                write!(f, "{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentElement {
    type Output = LaurentElement;
    fn add(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &LaurentElement {
    type Output = LaurentElement;
    fn sub(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Mul for &LaurentElement {
    type Output = LaurentElement;
    fn mul(self, rhs: &LaurentElement) -> LaurentElement {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = LaurentElement::zero(self.dim);
        for (g, c) in &self.terms {
            out.add_scaled(rhs, g, c);
        }
        out
    }
}

impl Neg for &LaurentElement {
    type Output = LaurentElement;
    fn neg(self) -> LaurentElement {
        let mut out = LaurentElement::zero(self.dim);
        out.sub_assign_ref(self);
        out
    }
}

/// One monomial of the JSON interchange form.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct JsonTerm {
    #[serde(rename = "V")]
    pub big_v: i64,
    #[serde(rename = "v")]
    pub small_v: i64,
    pub c: i64,
}

/// Ordinary polynomial in `q = v^2` with the coefficient of `q^k` at index `k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(0)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for k in (0..=deg).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                write!(f, "{}", power_text('q', k as i64))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    dim: u8,
}

impl Parser<'_> {
    fn parse(mut self) -> Result<LaurentElement> {
        let mut out = LaurentElement::zero(self.dim);
        self.skip_ws();
        if self.pos == self.bytes.len() {
            return Err(self.err("empty polynomial text"));
        }
        let mut first = true;
        while self.pos < self.bytes.len() {
            let sign = self.read_sign(first)?;
            first = false;
            let (g, c) = self.read_term()?;
            out.insert(g, if sign < 0 { -c } else { c });
            self.skip_ws();
        }
        Ok(out)
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, reason: &str) -> Error {
        Error::Parse { at: self.pos, reason: reason.to_string() }
    }

    fn read_sign(&mut self, first: bool) -> Result<i32> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'+') => {
                self.pos += 1;
                Ok(1)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-1)
            }
            Some(_) if first => Ok(1),
            Some(_) => Err(self.err("expected '+' or '-' between terms")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn read_term(&mut self) -> Result<(GammaElement, BigInt)> {
        self.skip_ws();
        let digits = self.read_digits();
        let coeff = match &digits {
            Some(ds) => ds.parse::<BigInt>().map_err(|_| self.err("bad integer"))?,
            None => BigInt::one(),
        };
        let mut exp = [0i64; 2];
        let mut saw_letter = false;
        loop {
            self.skip_ws();
            let letter = match self.bytes.get(self.pos) {
                Some(b'V') => 'V',
                Some(b'v') => 'v',
                Some(b'q') => 'q',
                _ => break,
            };
            self.pos += 1;
            let e = self.read_exponent()?;
            match (letter, self.dim) {
                ('V', 2) => exp[0] += e,
                ('v', 2) => exp[1] += e,
                ('q', 2) => exp[1] += 2 * e,
                ('v', 1) => exp[0] += e,
                ('q', 1) => exp[0] += 2 * e,
                _ => return Err(self.err("letter 'V' needs the rank-two group")),
            }
            saw_letter = true;
        }
        if digits.is_none() && !saw_letter {
            return Err(self.err("expected a coefficient or a monomial"));
        }
        Ok((GammaElement { dim: self.dim, exp }, coeff))
    }

    fn read_digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn read_exponent(&mut self) -> Result<i64> {
        if self.bytes.get(self.pos) != Some(&b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let negative = if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = self.read_digits().ok_or_else(|| self.err("expected exponent digits"))?;
        let e: i64 = digits.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if negative { -e } else { e })
    }
}
