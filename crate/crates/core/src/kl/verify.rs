//! Recomputation sweeps over a completed store. Each sweep re-derives a
//! known identity from scratch, through a code path independent of the one
//! that filled the tables, and reports every pair that breaks it. All
//! sweeps are read-only and parallel over columns.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::group::coset::decompose;
use crate::group::{ElementIndex, SignedPermutation};
use crate::laurent::{LaurentElement, OrderSpec};
use crate::tableaux::classical_rs;

use super::cells::left_cells;
use super::hecke::generator_weight;
use super::KLStore;

/// How many failing pairs a report keeps verbatim.
const EXAMPLE_CAP: usize = 8;

/// Outcome of one verification sweep.
#[derive(Clone, Debug)]
pub struct Report {
    name: String,
    checked: u64,
    failed: u64,
    examples: Vec<String>,
}

impl Report {
    fn from_tally(name: impl Into<String>, tally: Tally) -> Report {
        Report {
            name: name.into(),
            checked: tally.checked,
            failed: tally.failed,
            examples: tally.examples,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn checked(&self) -> u64 {
        self.checked
    }

    pub fn failed(&self) -> u64 {
        self.failed
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// The first few failure descriptions, at most `EXAMPLE_CAP`.
    pub fn examples(&self) -> &[String] {
        &self.examples
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: {} checks passed", self.name, self.checked)
        } else {
            write!(f, "{}: {} of {} checks failed", self.name, self.failed, self.checked)?;
            if let Some(first) = self.examples.first() {
                write!(f, " (first: {first})")?;
            }
            Ok(())
        }
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    examples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < EXAMPLE_CAP {
                self.examples.push(describe());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failed += other.failed;
        for e in other.examples {
            if self.examples.len() == EXAMPLE_CAP {
                break;
            }
            self.examples.push(e);
        }
        self
    }
}

/// Runs one closure per column and merges the results.
fn sweep<F>(order: usize, per_column: F) -> Tally
where
    F: Fn(ElementIndex) -> Tally + Sync + Send,
{
    (0..order as ElementIndex)
        .into_par_iter()
        .map(per_column)
        .reduce(Tally::default, Tally::merge)
}

/// Bar-invariance of the basis elements, read through the inversion
/// table: pstar(y,w) must equal the sum over y <= x <= w of
/// r(y,x) bar(pstar(x,w)). The inversion table comes from its own
/// recursion, so agreement cross-checks both tables at once.
pub fn bar_identity(store: &KLStore) -> Report {
    let group = store.group();
    let dim = store.spec().dim();
    let tally = sweep(group.order(), |w| {
        let mut t = Tally::default();
        let below = group.down_set(w);
        let barred: Vec<LaurentElement> = below.iter().map(|&x| store.pstar(x, w).bar()).collect();
        for &y in &below {
            let mut acc = LaurentElement::zero(dim);
            for (i, &x) in below.iter().enumerate() {
                if x == y || group.bruhat_leq(y, x) {
                    acc.add_assign_ref(&(store.r_polynomial(y, x) * &barred[i]));
                }
            }
            t.check(acc == *store.pstar(y, w), || {
                format!(
                    "bar image differs at y = {}, w = {}",
                    group.element(y),
                    group.element(w)
                )
            });
        }
        t
    });
    Report::from_tally("bar invariance through the inversion table", tally)
}

/// Replays the defining conditions of the structure elements over every
/// eligible triple, stored or not: the combination
/// m(s,y,w) + sum_z pstar(y,z) m(s,z,w) - v_s pstar(y,w) must land
/// strictly below the unit, and every entry must be fixed by the bar
/// involution. Running over absent entries too confirms that nothing
/// nonzero was silently dropped.
pub fn m_conditions(store: &KLStore) -> Report {
    let group = store.group();
    let tally = sweep(group.order(), |w| {
        let mut t = Tally::default();
        let below = group.down_set(w);
        for g in 0..group.generator_count() {
            if group.has_left_descent(w, g) {
                continue;
            }
            let vs = generator_weight(store.spec(), g);
            for &y in &below {
                if y == w || !group.has_left_descent(y, g) {
                    continue;
                }
                let m = store.m_polynomial(g, y, w);
                t.check(m.is_bar_invariant(), || {
                    format!(
                        "entry not bar-invariant at s = {g}, y = {}, w = {}",
                        group.element(y),
                        group.element(w)
                    )
                });
                let mut expr = m.clone();
                for &z in &below {
                    if z == w || z == y || !group.has_left_descent(z, g) {
                        continue;
                    }
                    if !group.bruhat_leq(y, z) {
                        continue;
                    }
                    expr.add_assign_ref(&(store.pstar(y, z) * store.m_polynomial(g, z, w)));
                }
                expr.sub_assign_ref(&store.pstar(y, w).mul_monomial(&vs));
                t.check(expr.is_supported_below_unit(), || {
                    format!(
                        "congruence fails at s = {g}, y = {}, w = {}",
                        group.element(y),
                        group.element(w)
                    )
                });
            }
        }
        t
    });
    Report::from_tally("congruence and symmetry of the structure elements", tally)
}

/// Coordinates are unchanged when both elements are inverted.
pub fn inverse_symmetry(store: &KLStore) -> Report {
    let group = store.group();
    let tally = sweep(group.order(), |w| {
        let mut t = Tally::default();
        let wi = group.inverse_of(w);
        for &y in &group.down_set(w) {
            t.check(store.pstar(y, w) == store.pstar(group.inverse_of(y), wi), || {
                format!(
                    "coordinate moves under inversion at y = {}, w = {}",
                    group.element(y),
                    group.element(w)
                )
            });
        }
        t
    });
    Report::from_tally("coordinate symmetry under inversion", tally)
}

/// Identities against the longest element w0: the alternating sums
/// sum_z (-1)^{l(w)-l(z)} pstar(y,z) pstar(ww0,zw0) over y <= z <= w
/// collapse to 1 if y = w and 0 otherwise (likewise for the normalized
/// coordinates), and m(s,ww0,yw0) = -(-1)^{l(w)-l(y)} m(s,y,w).
pub fn longest_identities(store: &KLStore) -> Report {
    let group = store.group();
    let dim = store.spec().dim();
    let w0 = group.longest();
    let flip: Vec<ElementIndex> =
        (0..group.order() as ElementIndex).map(|x| group.product(x, w0)).collect();
    let tally = sweep(group.order(), |w| {
        let mut t = Tally::default();
        let below = group.down_set(w);
        let lw = group.length_of(w);
        let fw = flip[w as usize];
        for &y in &below {
            let mut star = LaurentElement::zero(dim);
            let mut norm = LaurentElement::zero(dim);
            for &z in &below {
                if z != y && !group.bruhat_leq(y, z) {
                    continue;
                }
                let fz = flip[z as usize];
                let star_term = store.pstar(y, z) * store.pstar(fw, fz);
                let norm_term = &store.p_polynomial(y, z) * &store.p_polynomial(fw, fz);
                if (lw - group.length_of(z)) % 2 == 0 {
                    star.add_assign_ref(&star_term);
                    norm.add_assign_ref(&norm_term);
                } else {
                    star.sub_assign_ref(&star_term);
                    norm.sub_assign_ref(&norm_term);
                }
            }
            let expect_one = y == w;
            let delta = |e: &LaurentElement| if expect_one { e.is_one() } else { e.is_zero() };
            t.check(delta(&star), || {
                format!(
                    "alternating sum off target at y = {}, w = {}",
                    group.element(y),
                    group.element(w)
                )
            });
            t.check(delta(&norm), || {
                format!(
                    "normalized alternating sum off target at y = {}, w = {}",
                    group.element(y),
                    group.element(w)
                )
            });
        }
        for g in 0..group.generator_count() {
            if group.has_left_descent(w, g) {
                continue;
            }
            for &y in &below {
                if y == w || !group.has_left_descent(y, g) {
                    continue;
                }
                let m = store.m_polynomial(g, y, w);
                let other = store.m_polynomial(g, fw, flip[y as usize]);
                let expected = if (lw - group.length_of(y)) % 2 == 0 {
                    m.scale(&BigInt::from(-1))
                } else {
                    m.clone()
                };
                t.check(*other == expected, || {
                    format!(
                        "structure element does not flip at s = {g}, y = {}, w = {}",
                        group.element(y),
                        group.element(w)
                    )
                });
            }
        }
        t
    });
    Report::from_tally("alternating sums against the longest element", tally)
}

/// Constraints special to the dominant-weight order, stratified by the
/// sign count: every normalized coordinate is an ordinary polynomial in
/// q = v^2 with constant term 1; on an eligible triple within a stratum,
/// its degree is at most (l(w)-l(y)-1)/2 and the structure element of a
/// swap generator is exactly the coefficient there (zero when the length
/// gap is even); across strata every structure element vanishes; and the
/// sign count is constant on cells and weakly increasing down the order.
pub fn asymptotic_strata(store: &KLStore) -> Report {
    let name = "stratum constraints for the dominant-weight order";
    let mut tally = Tally::default();
    if *store.spec() != OrderSpec::Asymptotic {
        tally.check(false, || "store was not built with the dominant-weight order".into());
        return Report::from_tally(name, tally);
    }
    let group = store.group();
    tally = tally.merge(sweep(group.order(), |w| {
        let mut t = Tally::default();
        let below = group.down_set(w);
        let lw = group.length_of(w);
        let ltw = group.length_t_of(w);
        for &y in &below {
            match store.p_polynomial(y, w).as_q_polynomial() {
                Ok(p) => t.check(p.constant_term().is_one(), || {
                    format!(
                        "constant term differs from 1 at y = {}, w = {}",
                        group.element(y),
                        group.element(w)
                    )
                }),
                Err(_) => t.check(false, || {
                    format!(
                        "normalized coordinate at y = {}, w = {} is not a polynomial in q",
                        group.element(y),
                        group.element(w)
                    )
                }),
            }
        }
        for g in 0..group.generator_count() {
            if group.has_left_descent(w, g) {
                continue;
            }
            for &y in &below {
                if y == w || !group.has_left_descent(y, g) {
                    continue;
                }
                let m = store.m_polynomial(g, y, w);
                if group.length_t_of(y) != ltw {
                    t.check(m.is_zero(), || {
                        format!(
                            "structure element across strata at s = {g}, y = {}, w = {}",
                            group.element(y),
                            group.element(w)
                        )
                    });
                    continue;
                }
                if g == 0 {
                    // The sign generator is unconstrained within a stratum.
                    continue;
                }
                let gap = (lw - group.length_of(y)) as usize;
                let Ok(p) = store.p_polynomial(y, w).as_q_polynomial() else {
                    continue; // already reported above
                };
                t.check(p.degree().unwrap_or(0) <= (gap - 1) / 2, || {
                    format!(
                        "degree exceeds the bound at y = {}, w = {}",
                        group.element(y),
                        group.element(w)
                    )
                });
                let expected = if gap % 2 == 1 {
                    LaurentElement::constant(2, p.coefficient((gap - 1) / 2))
                } else {
                    LaurentElement::zero(2)
                };
                t.check(*m == expected, || {
                    format!(
                        "structure element is not the extreme coefficient at s = {g}, \
                         y = {}, w = {}",
                        group.element(y),
                        group.element(w)
                    )
                });
            }
        }
        t
    }));
    let cells = left_cells(store);
    let sets = cells.as_sets();
    let strata: Vec<u32> = sets.iter().map(|c| group.length_t_of(c[0])).collect();
    for (i, cell) in sets.iter().enumerate() {
        tally.check(cell.iter().all(|&w| group.length_t_of(w) == strata[i]), || {
            format!("cell {i} mixes sign counts")
        });
    }
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            if cells.cell_leq(i, j) {
                tally.check(strata[i] >= strata[j], || {
                    format!("sign count drops from cell {j} down to cell {i}")
                });
            }
        }
    }
    Report::from_tally(name, tally)
}

/// Cells induced from a parabolic subgroup: write each element as
/// x u with u the maximal right factor inside the subgroup generated by
/// the given generator subset and x without right descents there. The
/// subgroup splits into its sign block and swap blocks, so u gets a label
/// from the sub-rank cell partition and the recording tableaux of its
/// swap-block words. Translating a subgroup cell by all the x must yield
/// a union of whole-group cells, i.e. the label is constant on each cell.
pub fn parabolic_induction(store: &KLStore, subset: &[usize]) -> Report {
    let group = store.group();
    let gens: Vec<String> = subset
        .iter()
        .map(|&g| if g == 0 { "t".to_string() } else { format!("s{g}") })
        .collect();
    let name = format!("induced cells from the subgroup on {{{}}}", gens.join(","));
    let mut tally = Tally::default();
    let well_formed = subset.windows(2).all(|p| p[0] < p[1])
        && subset.iter().all(|&g| g < group.generator_count());
    if !well_formed {
        tally.check(false, || "generator subset is not a sorted sublist".into());
        return Report::from_tally(name, tally);
    }

    // Maximal runs of consecutive generators: the run at 0 is a lower-rank
    // copy of the same kind of group, every other run permutes a block of
    // adjacent positions without signs.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &g in subset {
        match runs.last_mut() {
            Some(r) if r.1 + 1 == g => r.1 = g,
            _ => runs.push((g, g)),
        }
    }
    let sign_rank = match runs.first() {
        Some(&(0, hi)) => hi + 1,
        _ => 0,
    };
    let swap_runs: Vec<(usize, usize)> =
        runs.into_iter().filter(|&(lo, _)| lo > 0).collect();
    let sign_part = if sign_rank > 0 {
        match super::store(sign_rank, store.spec()) {
            Ok(sub) => {
                let partition = left_cells(&sub);
                Some((sub, partition))
            }
            Err(e) => {
                tally.check(false, || format!("sub-rank tables unavailable: {e}"));
                return Report::from_tally(name, tally);
            }
        }
    } else {
        None
    };

    let label_of = |u: ElementIndex| -> String {
        let window = group.element(u).window();
        let mut label = String::new();
        if let Some((sub, partition)) = &sign_part {
            let head = SignedPermutation::from_window(&window[..sign_rank]).unwrap();
            let cell = partition.cell_of(sub.group().index(&head));
            label.push_str(&format!("c{cell};"));
        }
        for &(lo, hi) in &swap_runs {
            // Generators lo..=hi move positions lo..=hi+1; the factor is a
            // plain permutation there, relabeled to start at 1.
            let word: Vec<usize> =
                (lo - 1..=hi).map(|p| window[p] as usize - (lo - 1)).collect();
            let (_, recording) = classical_rs(&word);
            label.push_str(&recording.text());
            label.push(';');
        }
        label
    };

    let labels: Vec<String> = (0..group.order() as ElementIndex)
        .into_par_iter()
        .map(|w| {
            let mut x = w;
            let mut u = group.identity();
            loop {
                let Some(&s) = subset.iter().find(|&&s| group.has_right_descent(x, s)) else {
                    break;
                };
                x = group.right(s, x);
                u = group.left(s, u);
            }
            debug_assert_eq!(group.length_of(w), group.length_of(x) + group.length_of(u));
            label_of(u)
        })
        .collect();

    let cells = left_cells(store);
    for (i, cell) in cells.as_sets().iter().enumerate() {
        let first = &labels[cell[0] as usize];
        tally.check(cell.iter().all(|&w| labels[w as usize] == *first), || {
            format!("cell {i} mixes subgroup cells")
        });
    }
    Report::from_tally(name, tally)
}

/// Transport along the distinguished right factor: two elements with the
/// same sign count and the same factor b move to the sorted blocks by
/// right multiplication with b, and this translation must preserve the
/// inversion polynomials, the coordinates (raw and normalized), the
/// structure elements of triples eligible on the original pair, and the
/// cell order in both directions.
pub fn coset_translation(store: &KLStore) -> Report {
    let name = "transport along the distinguished right factor";
    let mut tally = Tally::default();
    if *store.spec() != OrderSpec::Asymptotic {
        tally.check(false, || "store was not built with the dominant-weight order".into());
        return Report::from_tally(name, tally);
    }
    let group = store.group();
    let order = group.order() as ElementIndex;
    let factor: Vec<(usize, ElementIndex)> = (0..order)
        .map(|w| {
            let dec = decompose(group.element(w));
            (dec.l, group.index(&dec.b))
        })
        .collect();
    let cells = left_cells(store);
    let id = group.identity();
    tally = tally.merge(sweep(group.order(), |y| {
        let mut t = Tally::default();
        let (ly, by) = factor[y as usize];
        if by == id {
            return t;
        }
        for x in 0..order {
            if x == y || factor[x as usize] != (ly, by) {
                continue;
            }
            let xb = group.product(x, by);
            let yb = group.product(y, by);
            t.check(
                cells.element_leq(x, y) == cells.element_leq(xb, yb),
                || {
                    format!(
                        "cell order not preserved at x = {}, y = {}",
                        group.element(x),
                        group.element(y)
                    )
                },
            );
            if !group.bruhat_leq(x, y) {
                continue;
            }
            let pair = || format!("x = {}, y = {}", group.element(x), group.element(y));
            t.check(store.r_polynomial(x, y) == store.r_polynomial(xb, yb), || {
                format!("inversion polynomial moves at {}", pair())
            });
            t.check(store.pstar(x, y) == store.pstar(xb, yb), || {
                format!("coordinate moves at {}", pair())
            });
            t.check(store.p_polynomial(x, y) == store.p_polynomial(xb, yb), || {
                format!("normalized coordinate moves at {}", pair())
            });
            for g in 0..group.generator_count() {
                if group.has_left_descent(x, g) && !group.has_left_descent(y, g) {
                    t.check(
                        store.m_polynomial(g, x, y) == store.m_polynomial(g, xb, yb),
                        || format!("structure element moves at s = {g}, {}", pair()),
                    );
                }
            }
        }
        t
    }));
    Report::from_tally(name, tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group;
    use crate::kl::store;
    use crate::laurent::GammaElement;
    use std::sync::Arc;

    fn specs() -> Vec<OrderSpec> {
        vec![
            OrderSpec::Asymptotic,
            OrderSpec::weighted(1, 2).unwrap(),
            OrderSpec::weighted(3, 2).unwrap(),
        ]
    }

    #[test]
    fn all_sweeps_pass_at_rank_two() {
        for spec in specs() {
            let s = store(2, &spec).unwrap();
            for report in [bar_identity(&s), m_conditions(&s), inverse_symmetry(&s),
                longest_identities(&s)]
            {
                assert!(report.passed(), "{report} under {}", spec.key());
                assert!(report.checked() > 0);
            }
        }
    }

    #[test]
    fn stratum_sweep_passes_at_rank_two() {
        let s = store(2, &OrderSpec::Asymptotic).unwrap();
        let report = asymptotic_strata(&s);
        assert!(report.passed(), "{report}");
        // A weighted store is rejected up front rather than half-checked.
        let weighted = store(2, &OrderSpec::weighted(1, 2).unwrap()).unwrap();
        assert!(!asymptotic_strata(&weighted).passed());
    }

    #[test]
    fn induced_cells_pass_for_every_subset_at_rank_two() {
        for spec in specs() {
            let s = store(2, &spec).unwrap();
            for subset in [&[][..], &[0][..], &[1][..], &[0, 1][..]] {
                let report = parabolic_induction(&s, subset);
                assert!(report.passed(), "{report} under {}", spec.key());
            }
        }
    }

    #[test]
    fn malformed_subset_is_rejected() {
        let s = store(2, &OrderSpec::Asymptotic).unwrap();
        assert!(!parabolic_induction(&s, &[1, 0]).passed());
        assert!(!parabolic_induction(&s, &[7]).passed());
    }

    #[test]
    fn translation_sweep_passes_at_rank_two() {
        let s = store(2, &OrderSpec::Asymptotic).unwrap();
        let report = coset_translation(&s);
        assert!(report.passed(), "{report}");
        assert!(report.checked() > 0);
    }

    #[test]
    fn detects_a_corrupted_table() {
        // Plant a coordinate with the wrong sign of the exponent; the bar
        // sweep must flag it rather than pass vacuously.
        let g = group(1).unwrap();
        let mut bad = KLStore::empty(Arc::clone(&g), OrderSpec::Asymptotic);
        bad.insert_pstar(0, 0, LaurentElement::one(2));
        bad.insert_pstar(1, 1, LaurentElement::one(2));
        bad.insert_pstar(0, 1, LaurentElement::monomial(GammaElement::rank2(1, 0)));
        bad.finish_load();
        let report = bar_identity(&bad);
        assert!(!report.passed());
        assert_eq!(report.failed(), 1);
        assert!(report.to_string().contains("checks failed"));
    }

    #[test]
    fn report_formatting() {
        let s = store(1, &OrderSpec::Asymptotic).unwrap();
        let report = bar_identity(&s);
        assert!(report.to_string().ends_with("checks passed"));
    }
}
