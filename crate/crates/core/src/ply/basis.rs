//! The basis ℬ of the free post-Lie-Yamaguti algebra, as a predicate on 𝒯.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

use crate::bases::{enumerate_t, TElem, TKind};
use crate::hall::cmp_h_on_t;
use crate::lincomb::LinComb;
use crate::term::{Alphabet, Graded};

thread_local! {
    static IS_B: RefCell<HashMap<TElem, bool>> = RefCell::new(HashMap::new());
}

fn gt(a: &TElem, b: &TElem) -> bool {
    cmp_h_on_t(a, b) == Ordering::Greater
}

fn le(a: &TElem, b: &TElem) -> bool {
    cmp_h_on_t(a, b) != Ordering::Greater
}

/// The top-level conditions on `[y, z, w]` with components already in ℬ.
pub(crate) fn triple_top_ok(y: &TElem, z: &TElem, w: &TElem) -> bool {
    if !gt(y, z) || !le(z, w) {
        return false;
    }
    match y.kind() {
        TKind::Triple(s, _, _, c) if s.is_empty() && !le(c, z) => return false,
        TKind::Brk(_, v) if !le(v, z) => return false,
        _ => {}
    }
    match z.kind() {
        TKind::Brk(_, v) => le(v, y),
        _ => true,
    }
}

/// Membership in ℬ.
pub fn is_b(t: &TElem) -> bool {
    if let Some(b) = IS_B.with(|m| m.borrow().get(t).copied()) {
        return b;
    }
    let b = match t.kind() {
        TKind::Gen(_) => true,
        TKind::Brk(x, y) => is_b(x) && is_b(y) && gt(x, y),
        TKind::SymGraft(s, r) => matches!(r.kind(), TKind::Gen(_)) && s.iter().all(is_b),
        TKind::Triple(s, y, z, w) => s.is_empty() && is_b(y) && is_b(z) && is_b(w) && triple_top_ok(y, z, w),
    };
    IS_B.with(|m| m.borrow_mut().insert(t.clone(), b));
    b
}

/// Swaps every empty-symmetric triple whose first two arguments are ≺_H-reversed.
///
/// Returns the sign picked up, or `None` when two equal arguments make the element vanish.
pub fn h_canonical(t: &TElem) -> Option<(i8, TElem)> {
    Some(match t.kind() {
        TKind::Gen(_) => (1, t.clone()),
        TKind::Brk(x, y) => {
            let (sx, x) = h_canonical(x)?;
            let (sy, y) = h_canonical(y)?;
            (sx * sy, TElem::brk(x, y))
        }
        TKind::SymGraft(s, r) => {
            let (mut sign, mut xs) = (1, Vec::with_capacity(s.len()));
            for x in s {
                let (sx, x) = h_canonical(x)?;
                sign *= sx;
                xs.push(x);
            }
            let (sr, r) = h_canonical(r)?;
            (sign * sr, TElem::sym_graft(xs, r))
        }
        TKind::Triple(s, y, z, w) => {
            let (mut sign, mut xs) = (1, Vec::with_capacity(s.len()));
            for x in s {
                let (sx, x) = h_canonical(x)?;
                sign *= sx;
                xs.push(x);
            }
            let (sy, y) = h_canonical(y)?;
            let (sz, z) = h_canonical(z)?;
            let (sw, w) = h_canonical(w)?;
            sign *= sy * sz * sw;
            match cmp_h_on_t(&y, &z) {
                Ordering::Equal => return None,
                Ordering::Less => (-sign, TElem::triple(xs, z, y, w)),
                Ordering::Greater => (sign, TElem::triple(xs, y, z, w)),
            }
        }
    })
}

/// All elements of ℬ with `n` vertices, sorted by ≺_𝒯.
pub fn enumerate_b(n: usize, alphabet: &Alphabet) -> Vec<TElem> {
    let mut out: Vec<TElem> = enumerate_t(n, alphabet)
        .iter()
        .filter_map(h_canonical)
        .map(|(_, t)| t)
        .filter(is_b)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `|ℬ_n|` over the first `gens` generators.
pub fn graded_dim(n: usize, gens: usize) -> usize {
    enumerate_b(n, &Alphabet::first(gens)).len()
}

/// Keeps only the bracket-free terms.
pub fn lat_project(x: &LinComb<TElem>) -> LinComb<TElem> {
    x.filter(|t| t.bracket_count() == 0)
}
