//! Character values.
//!
//! Symmetric-group characters are evaluated by border-strip removal on
//! first-column hook lengths. A pair of partitions then names a character
//! of the full group: lift the first through the sign-forgetting quotient
//! on a low block, twist the second by the parity of the negative entries
//! on a high block, and induce from the block subgroup by summing over
//! the whole group.

use rayon::prelude::*;

use crate::group::{Group, SignedPermutation};

use super::classes::ConjugacyClass;
use super::Bipartition;

/// The irreducible symmetric-group character labelled by `lambda`,
/// evaluated at cycle type `rho`. The labelling is the usual one: a
/// single row names the trivial character, a single column the sign.
/// Both arguments must have the same total size.
pub fn symmetric_character(lambda: &[usize], rho: &[usize]) -> i64 {
    debug_assert_eq!(lambda.iter().sum::<usize>(), rho.iter().sum::<usize>());
    // First-column hook lengths; strictly decreasing, so a set.
    let beta: Vec<usize> =
        lambda.iter().enumerate().map(|(i, &p)| p + (lambda.len() - 1 - i)).collect();
    strip_sum(&beta, rho)
}

/// Sum over ways of peeling a border strip of the leading cycle length.
/// Removing a strip of length r moves one hook length down by r; the
/// sign is the parity of the hook lengths it jumps over.
fn strip_sum(beta: &[usize], rho: &[usize]) -> i64 {
    let Some((&r, rest)) = rho.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (k, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let crossed = beta.iter().filter(|&&x| b - r < x && x < b).count();
        let mut next = beta.to_vec();
        next[k] = b - r;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let term = strip_sum(&next, rest);
        total += if crossed % 2 == 0 { term } else { -term };
    }
    total
}

/// Integer class function, aligned with a class list of the same rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacterVector {
    pub rank: usize,
    pub values: Vec<i64>,
}

impl CharacterVector {
    /// Value at the identity, which heads every class list.
    pub fn degree(&self) -> i64 {
        self.values[0]
    }
}

/// Group order times the inner product of two integer class functions.
pub fn scaled_inner(classes: &[ConjugacyClass], a: &CharacterVector, b: &CharacterVector) -> i64 {
    classes
        .iter()
        .zip(a.values.iter().zip(&b.values))
        .map(|(class, (&x, &y))| class.size as i64 * x * y)
        .sum()
}

/// Cycle type of the underlying permutation restricted to `lo..hi`,
/// which must be invariant.
fn block_cycles(window: &[i32], lo: usize, hi: usize) -> Vec<usize> {
    let mut seen = vec![false; hi - lo];
    let mut parts = Vec::new();
    for start in lo..hi {
        if seen[start - lo] {
            continue;
        }
        let mut len = 0usize;
        let mut i = start;
        loop {
            seen[i - lo] = true;
            len += 1;
            i = window[i].unsigned_abs() as usize - 1;
            if i == start {
                break;
            }
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Value of the block-subgroup character at `w`, or zero when `w` does
/// not preserve the split. The first block carries the plain lift of the
/// `lambda` character; the second carries the `mu` lift twisted by the
/// parity of its negative entries.
fn block_value(w: &SignedPermutation, split: usize, lambda: &[usize], mu: &[usize]) -> i64 {
    let window = w.window();
    let mut sign = 1i64;
    for (i, &e) in window.iter().enumerate() {
        let lands_low = (e.unsigned_abs() as usize) <= split;
        if (i < split) != lands_low {
            return 0;
        }
        if i >= split && e < 0 {
            sign = -sign;
        }
    }
    sign * symmetric_character(lambda, &block_cycles(window, 0, split))
        * symmetric_character(mu, &block_cycles(window, split, window.len()))
}

/// The irreducible character named by the pair: induced from the block
/// subgroup fixing the split at the size of the first component. The sum
/// runs over the whole group, so each value comes out exact.
pub fn irreducible_character(
    group: &Group,
    classes: &[ConjugacyClass],
    bp: &Bipartition,
) -> CharacterVector {
    let n = group.rank();
    debug_assert_eq!(bp.size(), n);
    let split: usize = bp.lambda.iter().sum();
    let subgroup_order = (1..=split as i64).product::<i64>()
        * (1..=(n - split) as i64).product::<i64>()
        * (1i64 << n);
    let values = classes
        .par_iter()
        .map(|class| {
            let mut total = 0i64;
            for x in 0..group.order() as u32 {
                let conj = group.product(group.product(x, class.representative), group.inverse_of(x));
                total += block_value(group.element(conj), split, &bp.lambda, &bp.mu);
            }
            debug_assert_eq!(total % subgroup_order, 0);
            total / subgroup_order
        })
        .collect();
    CharacterVector { rank: n, values }
}

/// The full character table, one row per pair of partitions, in the
/// enumeration order of the pairs.
pub fn character_table(
    group: &Group,
    classes: &[ConjugacyClass],
) -> Vec<(Bipartition, CharacterVector)> {
    super::bipartitions(group.rank())
        .into_par_iter()
        .map(|bp| {
            let row = irreducible_character(group, classes, &bp);
            (bp, row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group;
    use crate::reps::classes::conjugacy_classes;
    use crate::reps::{bipartitions, conjugate, partitions, standard_count, Bipartition};

    #[test]
    fn symmetric_tables_by_hand() {
        // Degree-3 table, classes ordered (3), (2,1), (1,1,1).
        assert_eq!(symmetric_character(&[3], &[3]), 1);
        assert_eq!(symmetric_character(&[3], &[2, 1]), 1);
        assert_eq!(symmetric_character(&[3], &[1, 1, 1]), 1);
        assert_eq!(symmetric_character(&[2, 1], &[3]), -1);
        assert_eq!(symmetric_character(&[2, 1], &[2, 1]), 0);
        assert_eq!(symmetric_character(&[2, 1], &[1, 1, 1]), 2);
        assert_eq!(symmetric_character(&[1, 1, 1], &[3]), 1);
        assert_eq!(symmetric_character(&[1, 1, 1], &[2, 1]), -1);
        assert_eq!(symmetric_character(&[1, 1, 1], &[1, 1, 1]), 1);
        // A degree-4 spot check on the self-conjugate shape.
        assert_eq!(symmetric_character(&[2, 2], &[1, 1, 1, 1]), 2);
        assert_eq!(symmetric_character(&[2, 2], &[2, 1, 1]), 0);
        assert_eq!(symmetric_character(&[2, 2], &[2, 2]), 2);
        assert_eq!(symmetric_character(&[2, 2], &[3, 1]), -1);
        assert_eq!(symmetric_character(&[2, 2], &[4]), 0);
    }

    #[test]
    fn symmetric_degree_matches_hook_count() {
        for m in 0..=6 {
            let ones = vec![1; m];
            for p in partitions(m) {
                assert_eq!(symmetric_character(&p, &ones), standard_count(&p) as i64);
            }
        }
    }

    #[test]
    fn symmetric_conjugation_twists_by_sign() {
        for m in 1..=5 {
            for p in partitions(m) {
                let q = conjugate(&p);
                for rho in partitions(m) {
                    let sign = if rho.iter().map(|r| r - 1).sum::<usize>() % 2 == 0 { 1 } else { -1 };
                    assert_eq!(
                        symmetric_character(&q, &rho),
                        sign * symmetric_character(&p, &rho)
                    );
                }
            }
        }
    }

    // An oracle straight from the definition: the character labelled by a
    // shape is the unique common constituent of the permutation character
    // on its row subgroup and the signed permutation character on the
    // column subgroup of the transpose. Checked over plain permutations.

    fn perms(m: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for k in 0..m {
            let mut next = Vec::new();
            for p in &out {
                for slot in 0..=k {
                    let mut q = p.clone();
                    q.insert(slot, k);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    fn cycle_type(p: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; p.len()];
        let mut parts = Vec::new();
        for start in 0..p.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            loop {
                seen[i] = true;
                len += 1;
                i = p[i];
                if i == start {
                    break;
                }
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    fn perm_sign(p: &[usize]) -> i64 {
        if cycle_type(p).iter().map(|c| c - 1).sum::<usize>() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn in_young(p: &[usize], sizes: &[usize]) -> bool {
        let mut lo = 0;
        for &s in sizes {
            if !(lo..lo + s).all(|i| (lo..lo + s).contains(&p[i])) {
                return false;
            }
            lo += s;
        }
        true
    }

    #[test]
    fn symmetric_labels_match_their_definition() {
        for m in 1..=4 {
            let all = perms(m);
            let shapes = partitions(m);
            let class_of = |p: &[usize]| shapes.iter().position(|s| *s == cycle_type(p)).unwrap();
            let mut sizes = vec![0i64; shapes.len()];
            for p in &all {
                sizes[class_of(p)] += 1;
            }
            let reps: Vec<&Vec<usize>> = shapes
                .iter()
                .map(|s| all.iter().find(|p| cycle_type(p) == *s).unwrap())
                .collect();
            let order = all.len() as i64;
            // Induced class function from the row subgroup of `sizes`,
            // weighting members by `f`.
            let induce = |young: &[usize], f: &dyn Fn(&[usize]) -> i64| -> Vec<i64> {
                let sub: i64 = young.iter().map(|&s| (1..=s as i64).product::<i64>()).product();
                reps.iter()
                    .map(|g| {
                        let mut total = 0;
                        for x in &all {
                            let mut inv = vec![0; m];
                            for (i, &xi) in x.iter().enumerate() {
                                inv[xi] = i;
                            }
                            let conj: Vec<usize> = (0..m).map(|i| x[g[inv[i]]]).collect();
                            if in_young(&conj, young) {
                                total += f(&conj);
                            }
                        }
                        assert_eq!(total % sub, 0);
                        total / sub
                    })
                    .collect()
            };
            let inner = |a: &[i64], b: &[i64]| -> i64 {
                let dot: i64 = sizes.iter().zip(a.iter().zip(b)).map(|(s, (x, y))| s * x * y).sum();
                assert_eq!(dot % order, 0);
                dot / order
            };
            for shape in &shapes {
                let row: Vec<i64> =
                    shapes.iter().map(|rho| symmetric_character(shape, rho)).collect();
                let from_rows = induce(shape, &|_| 1);
                let from_cols = induce(&conjugate(shape), &|p| perm_sign(p));
                assert_eq!(inner(&row, &row), 1);
                assert!(inner(&row, &from_rows) >= 1);
                assert!(inner(&row, &from_cols) >= 1);
                // Exactly one irreducible is shared, so the three checks
                // above pin the label completely.
                assert_eq!(inner(&from_rows, &from_cols), 1);
            }
        }
    }

    #[test]
    fn trivial_and_sign_pairs() {
        for rank in 1..=3 {
            let group = group(rank).unwrap();
            let classes = conjugacy_classes(&group);
            let trivial = irreducible_character(
                &group,
                &classes,
                &Bipartition { lambda: vec![rank], mu: vec![] },
            );
            assert!(trivial.values.iter().all(|&v| v == 1));
            let sign = irreducible_character(
                &group,
                &classes,
                &Bipartition { lambda: vec![], mu: vec![1; rank] },
            );
            for (class, &value) in classes.iter().zip(&sign.values) {
                let parity = group.length_of(class.representative) % 2;
                assert_eq!(value, if parity == 0 { 1 } else { -1 });
            }
        }
    }

    #[test]
    fn degrees_count_block_fillings() {
        // Degree = (ways to choose the low block) x (fillings of each
        // component); at rank 3 the squared degrees refill the group.
        let group = group(3).unwrap();
        let classes = conjugacy_classes(&group);
        let mut degrees = Vec::new();
        for bp in bipartitions(3) {
            let chi = irreducible_character(&group, &classes, &bp);
            let a = bp.lambda.iter().sum::<usize>() as u64;
            let choose = (1..=3u64).product::<u64>()
                / ((1..=a).product::<u64>() * (1..=(3 - a)).product::<u64>());
            assert_eq!(
                chi.degree(),
                (choose * standard_count(&bp.lambda) * standard_count(&bp.mu)) as i64
            );
            degrees.push(chi.degree());
        }
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 1, 1, 2, 2, 3, 3, 3, 3]);
        assert_eq!(degrees.iter().map(|d| d * d).sum::<i64>(), 48);
    }

    #[test]
    fn table_is_orthonormal() {
        for rank in 1..=4 {
            let group = group(rank).unwrap();
            let classes = conjugacy_classes(&group);
            let table = character_table(&group, &classes);
            assert_eq!(table.len(), classes.len());
            let order = group.order() as i64;
            for (i, (_, a)) in table.iter().enumerate() {
                for (j, (_, b)) in table.iter().enumerate() {
                    let expected = if i == j { order } else { 0 };
                    assert_eq!(scaled_inner(&classes, a, b), expected);
                }
            }
            let squares: i64 = table.iter().map(|(_, chi)| chi.degree().pow(2)).sum();
            assert_eq!(squares, order);
        }
    }
}
