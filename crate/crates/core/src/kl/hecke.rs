//! Standard-basis arithmetic for the Hecke algebra.
//!
//! Products and inverses here are computed directly from the quadratic
//! relations, one generator at a time. This is deliberately independent
//! of the recursion-based tables so that it can serve as an oracle for
//! them: the bar image of a basis element, for instance, is obtained as
//! an honest inverse rather than through R-polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::group::{ElementIndex, Generator, Group};
use crate::laurent::{GammaElement, LaurentElement, OrderSpec};

/// Weight of a generator under the order specification.
pub fn generator_weight(spec: &OrderSpec, g: usize) -> GammaElement {
    if g == 0 {
        spec.weight_t()
    } else {
        spec.weight_s()
    }
}

/// Weight of a group element: the product of generator weights along any
/// reduced word, determined by the two partial lengths.
pub fn element_weight(spec: &OrderSpec, length_t: u32, length_s: u32) -> GammaElement {
    match spec {
        OrderSpec::Asymptotic => GammaElement::rank2(length_t as i64, length_s as i64),
        OrderSpec::Weighted { c, d } => {
            GammaElement::rank1(c * length_t as i64 + d * length_s as i64)
        }
    }
}

/// An algebra element in the standard basis, keyed by element index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TVector {
    dim: u8,
    terms: BTreeMap<ElementIndex, LaurentElement>,
}

impl TVector {
    pub fn zero(spec: &OrderSpec) -> Self {
        TVector { dim: spec.dim(), terms: BTreeMap::new() }
    }

    /// The basis element itself.
    pub fn unit(spec: &OrderSpec, w: ElementIndex) -> Self {
        let mut v = TVector::zero(spec);
        v.terms.insert(w, LaurentElement::one(spec.dim()));
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (ElementIndex, &LaurentElement)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn coefficient(&self, w: ElementIndex) -> LaurentElement {
        self.terms.get(&w).cloned().unwrap_or_else(|| LaurentElement::zero(self.dim))
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, w: ElementIndex, c: &LaurentElement) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(|| LaurentElement::zero(self.dim));
        entry.add_assign_ref(c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &TVector, c: &LaurentElement) {
        for (w, coeff) in &other.terms {
            self.add_term(*w, &(coeff * c));
        }
    }

    /// Left multiplication by a generator's basis element.
    pub fn mul_gen_left(&self, group: &Group, spec: &OrderSpec, g: usize) -> TVector {
        let vs = generator_weight(spec, g);
        let mut quad = LaurentElement::monomial(vs.clone());
        quad.sub_assign_ref(&LaurentElement::monomial(vs.inverse()));
        let mut out = TVector::zero(spec);
        for (&x, c) in &self.terms {
            let sx = group.left(g, x);
            out.add_term(sx, c);
            if group.has_left_descent(x, g) {
                out.add_term(x, &(c * &quad));
            }
        }
        out
    }

    /// Right multiplication by a generator's basis element.
    pub fn mul_gen_right(&self, group: &Group, spec: &OrderSpec, g: usize) -> TVector {
        let vs = generator_weight(spec, g);
        let mut quad = LaurentElement::monomial(vs.clone());
        quad.sub_assign_ref(&LaurentElement::monomial(vs.inverse()));
        let mut out = TVector::zero(spec);
        for (&x, c) in &self.terms {
            let xs = group.right(g, x);
            out.add_term(xs, c);
            if group.has_right_descent(x, g) {
                out.add_term(x, &(c * &quad));
            }
        }
        out
    }

    /// Right multiplication by the inverse of a generator's basis element,
    /// from T_s^{-1} = T_s + (v_s^{-1} - v_s) T_1.
    pub fn mul_gen_inverse_right(&self, group: &Group, spec: &OrderSpec, g: usize) -> TVector {
        let vs = generator_weight(spec, g);
        let mut correction = LaurentElement::monomial(vs.inverse());
        correction.sub_assign_ref(&LaurentElement::monomial(vs));
        let mut out = self.mul_gen_right(group, spec, g);
        for (&x, c) in &self.terms {
            out.add_term(x, &(c * &correction));
        }
        out
    }

    /// Image under the bar involution: conjugated coefficients on the bar
    /// images of the basis elements.
    pub fn bar(&self, group: &Group, spec: &OrderSpec) -> TVector {
        let mut out = TVector::zero(spec);
        for (&x, c) in &self.terms {
            out.add_scaled(&bar_of_t(group, spec, x), &c.bar());
        }
        out
    }
}

fn generator_word(group: &Group, w: ElementIndex) -> Vec<usize> {
    group
        .element(w)
        .reduced_word()
        .into_iter()
        .map(|g| match g {
            Generator::T => 0,
            Generator::S(i) => i,
        })
        .collect()
}

/// The inverse of a standard basis element, computed along a reduced word.
pub fn t_inverse(group: &Group, spec: &OrderSpec, w: ElementIndex) -> TVector {
    let word = generator_word(group, w);
    let mut acc = TVector::unit(spec, group.identity());
    for &g in word.iter().rev() {
        acc = acc.mul_gen_inverse_right(group, spec, g);
    }
    acc
}

/// The bar image of a standard basis element.
pub fn bar_of_t(group: &Group, spec: &OrderSpec, w: ElementIndex) -> TVector {
    t_inverse(group, spec, group.inverse_of(w))
}

/// Full product of two standard-basis expansions.
pub fn product(group: &Group, spec: &OrderSpec, a: &TVector, b: &TVector) -> TVector {
    let mut out = TVector::zero(spec);
    for (x, c) in a.terms() {
        let mut acc = b.clone();
        for &g in generator_word(group, x).iter().rev() {
            acc = acc.mul_gen_left(group, spec, g);
        }
        out.add_scaled(&acc, c);
    }
    out
}

/// Coefficient vector scaled by an integer; convenience for tests.
pub fn scaled(v: &TVector, c: i64) -> TVector {
    let mut out = v.clone();
    let big = BigInt::from(c);
    for coeff in out.terms.values_mut() {
        *coeff = coeff.scale(&big);
    }
    out.terms.retain(|_, c| !c.is_zero());
    out
}
