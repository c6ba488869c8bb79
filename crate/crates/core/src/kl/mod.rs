//! The canonical-basis machinery for a chosen monomial order: inversion
//! coefficients (R), the coordinates of the bar-invariant basis (P*), the
//! structure elements governing generator products (M), and the left
//! preorder they generate.
//!
//! Everything is computed by the descent recursions, column by column in
//! enumeration order. Within the column for w, coordinates are filled in
//! decreasing length of y (the unequal-descent branch refers to a longer
//! y in the same column); once a column is complete, its M entries are
//! solved, again in decreasing length, before any later column needs
//! them. A finished store is immutable and safe to share across threads.

pub mod cache;
pub mod cells;
pub mod hecke;
pub mod verify;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::error::Result;
use crate::group::{ElementIndex, Group};
use crate::laurent::{GammaElement, LaurentElement, OrderSpec};

use hecke::{element_weight, generator_weight};

/// Which basis an expansion's coordinates refer to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    Standard,
    Canonical,
}

/// A finitely supported coordinate vector, tagged with its basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CExpansion {
    pub basis: Basis,
    pub terms: BTreeMap<ElementIndex, LaurentElement>,
}

impl CExpansion {
    pub fn coefficient(&self, w: ElementIndex, dim: u8) -> LaurentElement {
        self.terms.get(&w).cloned().unwrap_or_else(|| LaurentElement::zero(dim))
    }
}

/// Completed polynomial tables for one rank and order specification.
pub struct KLStore {
    group: Arc<Group>,
    spec: OrderSpec,
    pstar: HashMap<(ElementIndex, ElementIndex), LaurentElement>,
    m: HashMap<(usize, ElementIndex, ElementIndex), LaurentElement>,
    /// Support lists: for each (generator, w), the z with a stored M entry,
    /// in decreasing enumeration order.
    m_support: HashMap<(usize, ElementIndex), Vec<ElementIndex>>,
    r: HashMap<(ElementIndex, ElementIndex), LaurentElement>,
}

fn zero_for(dim: u8) -> &'static LaurentElement {
    static ZERO1: OnceLock<LaurentElement> = OnceLock::new();
    static ZERO2: OnceLock<LaurentElement> = OnceLock::new();
    match dim {
        1 => ZERO1.get_or_init(|| LaurentElement::zero(1)),
        _ => ZERO2.get_or_init(|| LaurentElement::zero(2)),
    }
}

impl KLStore {
    /// Computes the complete tables for the group.
    pub fn build(group: Arc<Group>, spec: OrderSpec) -> Result<KLStore> {
        let mut store = KLStore {
            group: Arc::clone(&group),
            spec,
            pstar: HashMap::new(),
            m: HashMap::new(),
            m_support: HashMap::new(),
            r: HashMap::new(),
        };
        store.fill_r();
        store.fill_pstar_and_m();
        Ok(store)
    }

    /// A store with no table entries; the cache loader fills it.
    pub(crate) fn empty(group: Arc<Group>, spec: OrderSpec) -> KLStore {
        KLStore {
            group,
            spec,
            pstar: HashMap::new(),
            m: HashMap::new(),
            m_support: HashMap::new(),
            r: HashMap::new(),
        }
    }

    pub(crate) fn insert_pstar(&mut self, y: ElementIndex, w: ElementIndex, val: LaurentElement) {
        self.pstar.insert((y, w), val);
    }

    pub(crate) fn insert_m(
        &mut self,
        g: usize,
        y: ElementIndex,
        w: ElementIndex,
        val: LaurentElement,
    ) {
        self.m.insert((g, y, w), val);
    }

    /// Rebuilds derived data after a cache load: the inversion table and
    /// the per-column M support lists.
    pub(crate) fn finish_load(&mut self) {
        self.fill_r();
        let mut keys: Vec<_> = self.m.keys().copied().collect();
        keys.sort_unstable_by_key(|&(g, y, w)| (g, w, std::cmp::Reverse(y)));
        for (g, y, w) in keys {
            self.m_support.entry((g, w)).or_default().push(y);
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn spec(&self) -> &OrderSpec {
        &self.spec
    }

    fn dim(&self) -> u8 {
        self.spec.dim()
    }

    /// Inversion coefficients: bar(T_w) = sum of r(y,w) T_y over y <= w.
    pub fn r_polynomial(&self, y: ElementIndex, w: ElementIndex) -> &LaurentElement {
        self.r.get(&(y, w)).unwrap_or_else(|| zero_for(self.dim()))
    }

    /// Coordinate of the bar-invariant basis element for w on T_y.
    /// Zero when y is not below w.
    pub fn pstar(&self, y: ElementIndex, w: ElementIndex) -> &LaurentElement {
        self.pstar.get(&(y, w)).unwrap_or_else(|| zero_for(self.dim()))
    }

    /// Structure element for the product by a generator; requires
    /// sy < y < w < sw to be possibly nonzero. Zero when absent.
    pub fn m_polynomial(&self, g: usize, y: ElementIndex, w: ElementIndex) -> &LaurentElement {
        self.m.get(&(g, y, w)).unwrap_or_else(|| zero_for(self.dim()))
    }

    /// The z below w carrying a nonzero M entry for the generator, in
    /// decreasing enumeration order.
    pub fn m_support(&self, g: usize, w: ElementIndex) -> &[ElementIndex] {
        self.m_support.get(&(g, w)).map_or(&[], |v| v.as_slice())
    }

    /// Weight of a group element under the order specification.
    pub fn weight(&self, w: ElementIndex) -> GammaElement {
        let lt = self.group.length_t_of(w);
        element_weight(&self.spec, lt, self.group.length_of(w) - lt)
    }

    /// The normalized form: weight(y)^{-1} weight(w) pstar(y,w).
    pub fn p_polynomial(&self, y: ElementIndex, w: ElementIndex) -> LaurentElement {
        let shift = self.weight(y).inverse().product(&self.weight(w));
        self.pstar(y, w).mul_monomial(&shift)
    }

    /// T-basis coordinates of the bar-invariant basis element for w.
    pub fn c_basis(&self, w: ElementIndex) -> CExpansion {
        let mut terms = BTreeMap::new();
        for y in self.group.down_set(w) {
            let p = self.pstar(y, w);
            if !p.is_zero() {
                terms.insert(y, p.clone());
            }
        }
        CExpansion { basis: Basis::Standard, terms }
    }

    /// C-basis coordinates of the product of a generator's basis element
    /// with the basis element for w.
    pub fn c_product_left(&self, g: usize, w: ElementIndex) -> CExpansion {
        let mut terms = BTreeMap::new();
        if self.group.has_left_descent(w, g) {
            let vs = generator_weight(&self.spec, g);
            let mut c = LaurentElement::monomial(vs.clone());
            c.add_assign_ref(&LaurentElement::monomial(vs.inverse()));
            terms.insert(w, c);
        } else {
            terms.insert(self.group.left(g, w), LaurentElement::one(self.dim()));
            for &z in self.m_support(g, w) {
                terms.insert(z, self.m_polynomial(g, z, w).clone());
            }
        }
        CExpansion { basis: Basis::Canonical, terms }
    }

    /// Pairs (y,w) with a stored coordinate, in a deterministic order.
    pub fn pstar_pairs(&self) -> Vec<(ElementIndex, ElementIndex)> {
        let mut keys: Vec<_> = self.pstar.keys().copied().collect();
        keys.sort_unstable_by_key(|&(y, w)| (w, y));
        keys
    }

    /// Stored M keys (generator, y, w), in a deterministic order.
    pub fn m_keys(&self) -> Vec<(usize, ElementIndex, ElementIndex)> {
        let mut keys: Vec<_> = self.m.keys().copied().collect();
        keys.sort_unstable_by_key(|&(g, y, w)| (w, g, y));
        keys
    }

    /// Structural equality of the stored tables; used by cache tests.
    pub fn same_tables(&self, other: &KLStore) -> bool {
        self.group.rank() == other.group.rank()
            && self.spec == other.spec
            && self.pstar == other.pstar
            && self.m == other.m
    }

    fn fill_r(&mut self) {
        // bar(T_w) = T_s^{-1} bar(T_{sw}) for a left descent s gives
        //   r(y,w) = r(sy,sw)                          if sy < y,
        //   r(y,w) = r(sy,sw) + (v_s^{-1}-v_s) r(y,sw) if sy > y.
        let order = self.group.order() as ElementIndex;
        for w in 0..order {
            self.r.insert((w, w), LaurentElement::one(self.dim()));
            let Some(s) = self.group.first_left_descent(w) else { continue };
            let sw = self.group.left(s, w);
            let vs = generator_weight(&self.spec, s);
            let mut correction = LaurentElement::monomial(vs.inverse());
            correction.sub_assign_ref(&LaurentElement::monomial(vs));
            for y in self.group.down_set(w) {
                if y == w {
                    continue;
                }
                let sy = self.group.left(s, y);
                let mut val = self.r.get(&(sy, sw)).cloned().unwrap_or_else(|| {
                    LaurentElement::zero(self.dim())
                });
                if !self.group.has_left_descent(y, s) {
                    if let Some(rest) = self.r.get(&(y, sw)) {
                        val.add_assign_ref(&(rest * &correction));
                    }
                }
                if !val.is_zero() {
                    self.r.insert((y, w), val);
                }
            }
        }
    }

    fn fill_pstar_and_m(&mut self) {
        let order = self.group.order() as ElementIndex;
        let one = LaurentElement::one(self.dim());
        for w in 0..order {
            self.pstar.insert((w, w), one.clone());
            if let Some(s) = self.group.first_left_descent(w) {
                self.fill_column(s, w);
            }
            self.fill_m_column(w);
        }
    }

    /// All coordinates for the column of w, using the left descent s.
    fn fill_column(&mut self, s: usize, w: ElementIndex) {
        let sw = self.group.left(s, w);
        let vs = generator_weight(&self.spec, s);
        let vs_inv = vs.inverse();
        let below = self.group.down_set(w);
        for &y in below.iter().rev() {
            if y == w {
                continue;
            }
            let sy = self.group.left(s, y);
            let val = if self.group.has_left_descent(y, s) {
                // v_s pstar(y,sw) + pstar(sy,sw) - correction terms from
                // the M support of the shorter column.
                let mut acc = self.pstar(y, sw).mul_monomial(&vs);
                acc.add_assign_ref(self.pstar(sy, sw));
                for &z in self.m_support.get(&(s, sw)).map_or(&[][..], |v| v) {
                    if z == y || self.group.bruhat_leq(y, z) {
                        let m = &self.m[&(s, z, sw)];
                        acc.sub_assign_ref(&(self.pstar(y, z) * m));
                    }
                }
                acc
            } else {
                self.pstar(sy, w).mul_monomial(&vs_inv)
            };
            if !val.is_zero() {
                debug_assert!(val.is_supported_below_unit(), "coordinate not below unit");
                self.pstar.insert((y, w), val);
            }
        }
    }

    /// Solves the congruence-and-symmetry conditions for every generator
    /// that lengthens w, walking y downward so that references to longer
    /// z in the same column are already present.
    fn fill_m_column(&mut self, w: ElementIndex) {
        let below = self.group.down_set(w);
        for g in 0..self.group.generator_count() {
            if self.group.has_left_descent(w, g) {
                continue;
            }
            let vs = generator_weight(&self.spec, g);
            for &y in below.iter().rev() {
                if y == w || !self.group.has_left_descent(y, g) {
                    continue;
                }
                let mut f = self.pstar(y, w).mul_monomial(&vs);
                for &z in self.m_support.get(&(g, w)).map_or(&[][..], |v| v) {
                    if self.group.bruhat_leq(y, z) {
                        let m = &self.m[&(g, z, w)];
                        f.sub_assign_ref(&(self.pstar(y, z) * m));
                    }
                }
                let (plus, unit, _minus) = f.split();
                let mut val = plus.bar();
                val.add_assign_ref(&unit);
                val.add_assign_ref(&plus);
                if !val.is_zero() {
                    debug_assert!(val.is_bar_invariant());
                    self.m.insert((g, y, w), val);
                    self.m_support.entry((g, w)).or_default().push(y);
                }
            }
        }
    }
}

/// Registry of completed stores, keyed by rank and specification.
pub fn store(rank: usize, spec: &OrderSpec) -> Result<Arc<KLStore>> {
    use std::sync::Mutex;
    static CACHE: OnceLock<Mutex<HashMap<(usize, String), Arc<KLStore>>>> = OnceLock::new();
    let registry = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (rank, spec.key());
    if let Some(found) = registry.lock().unwrap().get(&key) {
        return Ok(Arc::clone(found));
    }
    let group = crate::group::group(rank)?;
    let built = Arc::new(KLStore::build(group, spec.clone())?);
    let mut guard = registry.lock().unwrap();
    Ok(Arc::clone(guard.entry(key).or_insert(built)))
}

/// Scales an integer into the coefficient ring.
pub fn integer(dim: u8, n: i64) -> LaurentElement {
    LaurentElement::constant(dim, BigInt::from(n))
}
