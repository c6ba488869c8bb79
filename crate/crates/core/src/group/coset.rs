//! Coset representatives along the sign-change layers and the four-factor
//! decomposition.
//!
//! Elements of negative-entry count `l` form a single double-sided layer
//! `X^(l) * S_{l,n-l}`, where `X^(l)` consists of the products
//! `r_{i_1} ... r_{i_l}` over strictly increasing index sequences and
//! `S_{l,n-l}` is the unsigned subgroup preserving the blocks `1..=l` and
//! `l+1..=n`. Every `w` factors uniquely as `a * c_l * sigma * b^{-1}` with
//! `a, b` block-increasing unsigned elements, `c_l` the involution
//! `[-l, ..., -1, l+1, ..., n]`, and `sigma` in the block subgroup; the
//! lengths of the four factors add up to the length of `w`.

use super::perm::{Generator, SignedPermutation};
use crate::error::{Error, Result};

/// The signed cycle `r_i = s_{i-1} ... s_1 t`, window
/// `[-i, 1, ..., i-1, i+1, ..., n]`.
pub fn r_element(rank: usize, i: usize) -> Result<SignedPermutation> {
    if i == 0 || i > rank {
        return Err(Error::RankRange { rank: i, max: rank });
    }
    let mut r = SignedPermutation::identity(rank).apply_right(Generator::T);
    for j in 1..i {
        r = r.apply_left(Generator::S(j));
    }
    Ok(r)
}

/// The involution `a_l = r_1 r_2 ... r_l`, the minimal-length element among
/// those with `l` negative entries.
pub fn a_element(rank: usize, l: usize) -> Result<SignedPermutation> {
    if l > rank {
        return Err(Error::RankRange { rank: l, max: rank });
    }
    let mut a = SignedPermutation::identity(rank);
    for i in 1..=l {
        a = a.multiply(&r_element(rank, i)?)?;
    }
    Ok(a)
}

/// Longest element of the unsigned subgroup on the letters `1..=l`:
/// the window `[l, l-1, ..., 1, l+1, ..., n]`.
pub fn sigma_element(rank: usize, l: usize) -> Result<SignedPermutation> {
    if l > rank {
        return Err(Error::RankRange { rank: l, max: rank });
    }
    let mut win: Vec<i32> = (1..=rank as i32).collect();
    win[..l].reverse();
    SignedPermutation::from_window(&win)
}

/// Membership in `X^(l)`: strictly increasing window with `l` negative
/// entries.
pub fn in_x_set(w: &SignedPermutation, l: usize) -> bool {
    w.window().windows(2).all(|p| p[0] < p[1]) && w.length_t() as usize == l
}

/// Membership in `Y_{l,n-l}`: unsigned, increasing on both blocks.
pub fn in_y_set(w: &SignedPermutation, l: usize) -> bool {
    let win = w.window();
    w.is_unsigned()
        && win[..l].windows(2).all(|p| p[0] < p[1])
        && win[l..].windows(2).all(|p| p[0] < p[1])
}

/// Membership in `S_{l,n-l}`: unsigned and block-preserving.
pub fn in_block_subgroup(w: &SignedPermutation, l: usize) -> bool {
    w.is_unsigned() && w.window()[..l].iter().all(|&e| e <= l as i32)
}

/// `X^(l)` as products `r_{i_1} ... r_{i_l}` over increasing index
/// sequences, returned in enumeration order (length, then window).
pub fn coset_reps_x(rank: usize, l: usize) -> Result<Vec<SignedPermutation>> {
    if l > rank {
        return Err(Error::RankRange { rank: l, max: rank });
    }
    let mut out = Vec::new();
    let mut indices: Vec<usize> = Vec::with_capacity(l);
    fn rec(
        rank: usize,
        l: usize,
        next: usize,
        indices: &mut Vec<usize>,
        out: &mut Vec<SignedPermutation>,
    ) {
        if indices.len() == l {
            let mut w = SignedPermutation::identity(rank);
            for &i in indices.iter() {
                w = w.multiply(&r_element(rank, i).unwrap()).unwrap();
            }
            out.push(w);
            return;
        }
        for i in next..=rank {
            indices.push(i);
            rec(rank, l, i + 1, indices, out);
            indices.pop();
        }
    }
    rec(rank, l, 1, &mut indices, &mut out);
    out.sort_by_key(|w| (w.length(), w.window().to_vec()));
    Ok(out)
}

/// `Y_{l,n-l}` in enumeration order: one element per choice of the value
/// set of the first block, both blocks increasing.
pub fn coset_reps_y(rank: usize, l: usize) -> Result<Vec<SignedPermutation>> {
    if l > rank {
        return Err(Error::RankRange { rank: l, max: rank });
    }
    let mut out = Vec::new();
    let mut chosen: Vec<i32> = Vec::with_capacity(l);
    fn rec(rank: usize, l: usize, next: i32, chosen: &mut Vec<i32>, out: &mut Vec<SignedPermutation>) {
        if chosen.len() == l {
            let rest: Vec<i32> = (1..=rank as i32).filter(|v| !chosen.contains(v)).collect();
            let mut win = chosen.clone();
            win.extend(rest);
            out.push(SignedPermutation::from_window(&win).unwrap());
            return;
        }
        for v in next..=rank as i32 {
            chosen.push(v);
            rec(rank, l, v + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(rank, l, 1, &mut chosen, &mut out);
    out.sort_by_key(|w| (w.length(), w.window().to_vec()));
    Ok(out)
}

/// The unique factorization `w = a * c_l * sigma * b^{-1}`.
///
/// `lower` and `upper` are the two unsigned components of
/// `sigma_element(l) * sigma`: `lower` permutes `1..=l`, `upper` permutes
/// `l+1..=n`, and both are stored embedded at full rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub l: usize,
    pub a: SignedPermutation,
    pub sigma: SignedPermutation,
    pub b: SignedPermutation,
    pub lower: SignedPermutation,
    pub upper: SignedPermutation,
}

pub fn decompose(w: &SignedPermutation) -> Decomposition {
    let rank = w.rank();
    let l = w.length_t() as usize;

    // Sorting the window gives the increasing representative of
    // w * S_{l,n-l}; peeling c_l off it yields the block-increasing factor.
    let mut sorted = w.window().to_vec();
    sorted.sort_unstable();
    let x = SignedPermutation::from_window(&sorted).unwrap();
    let c_l = a_element(rank, l).unwrap();
    let a = x.multiply(&c_l).unwrap();

    // The unsigned remainder splits against the block subgroup on the
    // right: block-sorting its inverse is the distinguished representative.
    let u = x.inverse().multiply(w).unwrap();
    let mut b_win = u.inverse().window().to_vec();
    b_win[..l].sort_unstable();
    b_win[l..].sort_unstable();
    let b = SignedPermutation::from_window(&b_win).unwrap();
    let sigma = u.multiply(&b).unwrap();

    let twisted = sigma_element(rank, l).unwrap().multiply(&sigma).unwrap();
    let mut lower_win: Vec<i32> = (1..=rank as i32).collect();
    let mut upper_win = lower_win.clone();
    lower_win[..l].copy_from_slice(&twisted.window()[..l]);
    upper_win[l..].copy_from_slice(&twisted.window()[l..]);
    let lower = SignedPermutation::from_window(&lower_win).unwrap();
    let upper = SignedPermutation::from_window(&upper_win).unwrap();

    Decomposition { l, a, sigma, b, lower, upper }
}

impl Decomposition {
    /// Recombines the four factors.
    pub fn recompose(&self, rank: usize) -> SignedPermutation {
        self.a
            .multiply(&a_element(rank, self.l).unwrap())
            .unwrap()
            .multiply(&self.sigma)
            .unwrap()
            .multiply(&self.b.inverse())
            .unwrap()
    }

    /// The `1..=l` component as a one-line permutation of `1..=l`.
    pub fn lower_one_line(&self) -> Vec<usize> {
        self.lower.window()[..self.l].iter().map(|&e| e as usize).collect()
    }

    /// The `l+1..=n` component as a one-line permutation of `1..=n-l`.
    pub fn upper_one_line(&self) -> Vec<usize> {
        self.upper.window()[self.l..].iter().map(|&e| e as usize - self.l).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group;

    fn w(entries: &[i32]) -> SignedPermutation {
        SignedPermutation::from_window(entries).unwrap()
    }

    #[test]
    fn r_windows_and_recursion() {
        assert_eq!(r_element(3, 1).unwrap(), w(&[-1, 2, 3]));
        assert_eq!(r_element(3, 2).unwrap(), w(&[-2, 1, 3]));
        assert_eq!(r_element(3, 3).unwrap(), w(&[-3, 1, 2]));
        for n in 1..=5 {
            for i in 1..=n {
                let r = r_element(n, i).unwrap();
                assert_eq!(r.length(), i as u32);
                let mut expect: Vec<i32> = (1..=n as i32).filter(|&v| v != i as i32).collect();
                expect.insert(0, -(i as i32));
                assert_eq!(r, w(&expect));
                if i < n {
                    // r_{i+1} = s_i r_i.
                    assert_eq!(r_element(n, i + 1).unwrap(), r.apply_left(Generator::S(i)));
                }
            }
        }
        assert!(r_element(3, 0).is_err());
        assert!(r_element(3, 4).is_err());
    }

    #[test]
    fn a_element_shape_and_involutivity() {
        for n in 1..=5usize {
            for l in 0..=n {
                let a = a_element(n, l).unwrap();
                let mut expect: Vec<i32> = (1..=l as i32).rev().map(|v| -v).collect();
                expect.extend(l as i32 + 1..=n as i32);
                assert_eq!(a, w(&expect));
                assert!(a.multiply(&a).unwrap().is_identity());
                assert_eq!(a.length() as usize, l * (l + 1) / 2);
                assert!(in_x_set(&a, l));
            }
        }
    }

    #[test]
    fn product_lengths_add_for_increasing_sequences() {
        for (idx, expect) in [(vec![1, 3], 4u32), (vec![2, 3], 5), (vec![1, 2, 3], 6)] {
            let mut p = SignedPermutation::identity(3);
            for i in idx {
                p = p.multiply(&r_element(3, i).unwrap()).unwrap();
            }
            assert_eq!(p.length(), expect);
        }
    }

    #[test]
    fn x_reps_are_increasing_windows_with_l_signs() {
        for n in 1..=5usize {
            for l in 0..=n {
                let reps = coset_reps_x(n, l).unwrap();
                let binom: usize =
                    (1..=n).product::<usize>() / ((1..=l).product::<usize>() * (1..=n - l).product::<usize>());
                assert_eq!(reps.len(), binom);
                for x in &reps {
                    assert!(in_x_set(x, l));
                }
                // Same set as the window characterization.
                if n <= 4 {
                    let g = group(n).unwrap();
                    let direct: Vec<_> =
                        g.elements().iter().filter(|e| in_x_set(e, l)).cloned().collect();
                    assert_eq!(reps, direct);
                }
            }
        }
    }

    #[test]
    fn y_reps_are_block_increasing() {
        for n in 1..=5usize {
            for l in 0..=n {
                let reps = coset_reps_y(n, l).unwrap();
                assert_eq!(reps.len(), coset_reps_x(n, l).unwrap().len());
                for y in &reps {
                    assert!(in_y_set(y, l));
                }
            }
        }
    }

    #[test]
    fn y_times_a_is_a_bijection_onto_x() {
        // The first of the two coset bijections; exercised through rank 5.
        for n in 1..=5usize {
            for l in 0..=n {
                let c_l = a_element(n, l).unwrap();
                let mut image: Vec<_> = coset_reps_y(n, l)
                    .unwrap()
                    .iter()
                    .map(|y| y.multiply(&c_l).unwrap())
                    .collect();
                image.sort_by_key(|w| (w.length(), w.window().to_vec()));
                assert_eq!(image, coset_reps_x(n, l).unwrap());
            }
        }
    }

    #[test]
    fn unsigned_times_a_is_a_bijection_onto_the_layer() {
        // Second coset bijection: right multiplication by the layer
        // involution maps the unsigned subgroup onto X^(l) * S_{l,n-l}.
        // Membership in that product means exactly that the right
        // block-increasing factor is trivial.
        for n in 1..=5usize {
            let g = group(n).unwrap();
            let unsigned: Vec<SignedPermutation> =
                g.elements().iter().filter(|e| e.is_unsigned()).cloned().collect();
            for l in 0..=n {
                let c_l = a_element(n, l).unwrap();
                let mut image: Vec<_> =
                    unsigned.iter().map(|u| u.multiply(&c_l).unwrap()).collect();
                image.sort_by_key(|w| (w.length(), w.window().to_vec()));
                image.dedup();
                assert_eq!(image.len(), unsigned.len());
                for w in &image {
                    let d = decompose(w);
                    assert_eq!(d.l, l, "image element {w} not in layer {l}");
                    assert!(d.b.is_identity());
                }
                // Onto: the product set is no bigger.
                let layer = g
                    .elements()
                    .iter()
                    .filter(|e| {
                        let d = decompose(e);
                        d.l == l && d.b.is_identity()
                    })
                    .count();
                assert_eq!(layer, unsigned.len());
            }
        }
    }

    #[test]
    fn conjugating_a_simple_swap_never_lands_on_the_block_boundary() {
        for n in 2..=4usize {
            for l in 1..=n - 1 {
                let boundary = SignedPermutation::identity(n).apply_right(Generator::S(l));
                for x in coset_reps_x(n, l).unwrap() {
                    for i in 1..n {
                        let s = SignedPermutation::identity(n).apply_right(Generator::S(i));
                        let conj = x.inverse().multiply(&s).unwrap().multiply(&x).unwrap();
                        assert_ne!(conj, boundary);
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_worked_examples() {
        // t in rank 2: all factors trivial except the layer involution.
        let d = decompose(&w(&[-1, 2]));
        assert_eq!((d.l, &d.a, &d.sigma, &d.b), (1, &w(&[1, 2]), &w(&[1, 2]), &w(&[1, 2])));

        // s1 t s1 = [1, -2]: a = b = s1, sigma trivial.
        let d = decompose(&w(&[1, -2]));
        assert_eq!((d.l, &d.a, &d.sigma, &d.b), (1, &w(&[2, 1]), &w(&[1, 2]), &w(&[2, 1])));

        // [-1, 3, 2]: pure block factor.
        let d = decompose(&w(&[-1, 3, 2]));
        assert_eq!((d.l, &d.a, &d.sigma, &d.b), (1, &w(&[1, 2, 3]), &w(&[1, 3, 2]), &w(&[1, 2, 3])));
        assert_eq!(d.upper_one_line(), vec![2, 1]);
        assert_eq!(d.lower_one_line(), vec![1]);
    }

    #[test]
    fn decomposition_roundtrip_and_length_additivity() {
        for n in 1..=4usize {
            let g = group(n).unwrap();
            let c = |l: usize| a_element(n, l).unwrap();
            for elt in g.elements() {
                let d = decompose(elt);
                assert!(in_y_set(&d.a, d.l));
                assert!(in_y_set(&d.b, d.l));
                assert!(in_block_subgroup(&d.sigma, d.l));
                assert_eq!(&d.recompose(n), elt);
                let total = d.a.length() + c(d.l).length() + d.sigma.length() + d.b.length();
                assert_eq!(total, elt.length(), "length additivity fails at {elt}");

                // The block-increasing right factor of the inverse is the
                // left factor of the element.
                let di = decompose(&elt.inverse());
                assert_eq!(di.b, d.a);
                assert_eq!(di.a, d.b);

                // lower * upper recovers the twisted block factor.
                let twisted = sigma_element(n, d.l).unwrap().multiply(&d.sigma).unwrap();
                assert_eq!(d.lower.multiply(&d.upper).unwrap(), twisted);
            }
        }
    }

    #[test]
    fn layer_is_downward_closed_in_bruhat_order() {
        // Within a fixed negative-entry count, the Bruhat order cannot leave
        // the layer coset: checked exhaustively at ranks <= 3.
        for n in 1..=3usize {
            let g = group(n).unwrap();
            for y in 0..g.order() as u32 {
                for x in 0..g.order() as u32 {
                    if g.bruhat_leq(x, y) && g.length_t_of(x) == g.length_t_of(y) {
                        let (dx, dy) = (decompose(g.element(x)), decompose(g.element(y)));
                        // Membership in X^(l) * S_{l,n-l} means the right
                        // block-increasing factor is trivial.
                        if dy.b.is_identity() {
                            assert!(dx.b.is_identity());
                        }
                        // Factorwise monotonicity.
                        let (ax, ay) = (g.index(&dx.a), g.index(&dy.a));
                        let (bx, by) = (g.index(&dx.b), g.index(&dy.b));
                        assert!(g.bruhat_leq(ax, ay));
                        assert!(g.bruhat_leq(bx, by));
                    }
                }
            }
        }
    }

    #[test]
    fn equal_b_factor_gives_interval_isomorphism() {
        let g = group(3).unwrap();
        for y in 0..g.order() as u32 {
            for x in 0..g.order() as u32 {
                if !g.bruhat_leq(x, y) || g.length_t_of(x) != g.length_t_of(y) {
                    continue;
                }
                let (dx, dy) = (decompose(g.element(x)), decompose(g.element(y)));
                if dx.b != dy.b {
                    continue;
                }
                let b = g.index(&dx.b);
                let xb = g.product(x, b);
                let yb = g.product(y, b);
                assert!(g.bruhat_leq(xb, yb));
                let b_inv = g.inverse_of(b);
                let interval: Vec<u32> = (0..g.order() as u32)
                    .filter(|&z| g.bruhat_leq(xb, z) && g.bruhat_leq(z, yb))
                    .collect();
                for &z in &interval {
                    let zb = g.product(z, b_inv);
                    assert!(g.bruhat_leq(x, zb) && g.bruhat_leq(zb, y));
                    for &z2 in &interval {
                        let z2b = g.product(z2, b_inv);
                        assert_eq!(g.bruhat_leq(z, z2), g.bruhat_leq(zb, z2b));
                    }
                }
                // Surjectivity onto [x, y].
                let target: Vec<u32> = (0..g.order() as u32)
                    .filter(|&z| g.bruhat_leq(x, z) && g.bruhat_leq(z, y))
                    .collect();
                assert_eq!(interval.len(), target.len());
            }
        }
    }
}
