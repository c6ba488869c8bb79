//! Conjugacy classes, labelled by signed cycle type.

use std::collections::HashMap;

use crate::group::{ElementIndex, Group, SignedPermutation};

use super::Bipartition;

/// The signed cycle type: cycle lengths of the underlying permutation,
/// a cycle counting as negative when the signs along it multiply to -1.
/// Positive cycles land in the first component.
pub fn signed_type(w: &SignedPermutation) -> Bipartition {
    let window = w.window();
    let mut seen = vec![false; window.len()];
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for start in 0..window.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut sign = 1i32;
        let mut i = start;
        loop {
            seen[i] = true;
            len += 1;
            let image = window[i];
            if image < 0 {
                sign = -sign;
            }
            i = image.unsigned_abs() as usize - 1;
            if i == start {
                break;
            }
        }
        if sign > 0 {
            positive.push(len);
        } else {
            negative.push(len);
        }
    }
    positive.sort_unstable_by(|a, b| b.cmp(a));
    negative.sort_unstable_by(|a, b| b.cmp(a));
    Bipartition { lambda: positive, mu: negative }
}

/// One conjugacy class: its label, its size, and the first member in
/// enumeration order.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub label: Bipartition,
    pub size: usize,
    pub representative: ElementIndex,
}

/// All conjugacy classes, ordered by first appearance of a label. The
/// identity class always comes first.
pub fn conjugacy_classes(group: &Group) -> Vec<ConjugacyClass> {
    let mut classes: Vec<ConjugacyClass> = Vec::new();
    let mut index: HashMap<Bipartition, usize> = HashMap::new();
    for w in 0..group.order() as ElementIndex {
        let label = signed_type(group.element(w));
        match index.get(&label) {
            Some(&i) => classes[i].size += 1,
            None => {
                index.insert(label.clone(), classes.len());
                classes.push(ConjugacyClass { label, size: 1, representative: w });
            }
        }
    }
    classes
}
