//! Foliage maps, Hall elements, LTS Hall elements, the LTS Hall rewriting
//! algorithm, and the Hall order on 𝒯 through ι.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::bases::{cmp_t, TElem, TKind};
use crate::lincomb::{int, LinComb};
use crate::orders::{cmp_hall, BasisOrder};

/// The free magma on one binary product.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Magma2<L> {
    Leaf(L),
    Node(Box<Magma2<L>>, Box<Magma2<L>>),
}

/// The free magma on one ternary product.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Magma3<L> {
    Leaf(L),
    Node(Box<Magma3<L>>, Box<Magma3<L>>, Box<Magma3<L>>),
}

impl<L> Magma2<L> {
    pub fn node(x: Magma2<L>, y: Magma2<L>) -> Self {
        Magma2::Node(Box::new(x), Box::new(y))
    }

    pub fn foliage(&self) -> Vec<&L> {
        let mut out = Vec::new();
        fn go<'a, L>(t: &'a Magma2<L>, out: &mut Vec<&'a L>) {
            match t {
                Magma2::Leaf(l) => out.push(l),
                Magma2::Node(x, y) => {
                    go(x, out);
                    go(y, out);
                }
            }
        }
        go(self, &mut out);
        out
    }
}

impl<L> Magma3<L> {
    pub fn node(x: Magma3<L>, y: Magma3<L>, z: Magma3<L>) -> Self {
        Magma3::Node(Box::new(x), Box::new(y), Box::new(z))
    }

    pub fn foliage(&self) -> Vec<&L> {
        let mut out = Vec::new();
        fn go<'a, L>(t: &'a Magma3<L>, out: &mut Vec<&'a L>) {
            match t {
                Magma3::Leaf(l) => out.push(l),
                Magma3::Node(x, y, z) => {
                    go(x, out);
                    go(y, out);
                    go(z, out);
                }
            }
        }
        go(self, &mut out);
        out
    }
}

impl<L: fmt::Debug> fmt::Debug for Magma3<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magma3::Leaf(l) => write!(f, "{l:?}"),
            Magma3::Node(x, y, z) => write!(f, "[{x:?}, {y:?}, {z:?}]"),
        }
    }
}

impl<L: fmt::Debug> fmt::Debug for Magma2<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magma2::Leaf(l) => write!(f, "{l:?}"),
            Magma2::Node(x, y) => write!(f, "⟦{x:?}, {y:?}⟧"),
        }
    }
}

fn cmp_foliage<L: BasisOrder>(a: &[&L], b: &[&L]) -> Ordering {
    cmp_hall(a, b, |x, y| x.cmp_basis(y))
}

/// ≺_H on binary trees through their foliage.
pub fn cmp_h2<L: BasisOrder>(a: &Magma2<L>, b: &Magma2<L>) -> Ordering {
    cmp_foliage(&a.foliage(), &b.foliage())
}

fn cmp_struct3<L: BasisOrder>(a: &Magma3<L>, b: &Magma3<L>) -> Ordering {
    match (a, b) {
        (Magma3::Leaf(x), Magma3::Leaf(y)) => x.cmp_basis(y),
        (Magma3::Leaf(_), Magma3::Node(..)) => Ordering::Less,
        (Magma3::Node(..), Magma3::Leaf(_)) => Ordering::Greater,
        (Magma3::Node(a1, a2, a3), Magma3::Node(b1, b2, b3)) => cmp_struct3(a1, b1)
            .then_with(|| cmp_struct3(a2, b2))
            .then_with(|| cmp_struct3(a3, b3)),
    }
}

/// ≺_H on ternary trees through their foliage; equal foliages are ordered structurally.
pub fn cmp_h3<L: BasisOrder>(a: &Magma3<L>, b: &Magma3<L>) -> Ordering {
    cmp_foliage(&a.foliage(), &b.foliage()).then_with(|| cmp_struct3(a, b))
}

/// Hall elements of the free magma.
pub fn is_hall<L: BasisOrder>(t: &Magma2<L>) -> bool {
    match t {
        Magma2::Leaf(_) => true,
        Magma2::Node(u, v) => {
            is_hall(u)
                && is_hall(v)
                && cmp_h2(u, v) == Ordering::Greater
                && match &**u {
                    Magma2::Leaf(_) => true,
                    Magma2::Node(_, z) => cmp_h2(z, v) != Ordering::Greater,
                }
        }
    }
}

/// The LTS Hall condition at the top node `[y, z, w]`, components assumed Hall:
/// `y ≻ z ⪯ w`, and `c ⪯ z` when `y = [a, b, c]`.
pub fn lts_top_condition<T>(y: &T, z: &T, w: &T, y_last: Option<&T>, cmp: impl Fn(&T, &T) -> Ordering) -> bool {
    cmp(y, z) == Ordering::Greater
        && cmp(z, w) != Ordering::Greater
        && y_last.map_or(true, |c| cmp(c, z) != Ordering::Greater)
}

/// LTS Hall elements.
pub fn is_lts_hall<L: BasisOrder>(t: &Magma3<L>) -> bool {
    match t {
        Magma3::Leaf(_) => true,
        Magma3::Node(y, z, w) => {
            let last = match &**y {
                Magma3::Node(_, _, c) => Some(&**c),
                Magma3::Leaf(_) => None,
            };
            is_lts_hall(y) && is_lts_hall(z) && is_lts_hall(w) && lts_top_condition(&**y, &**z, &**w, last, cmp_h3)
        }
    }
}

/// LTS Hall elements with foliage length `n` over `letters`, sorted by ≺_H.
pub fn enumerate_lts_hall<L: BasisOrder + Clone>(n: usize, letters: &[L]) -> Vec<Magma3<L>> {
    let mut by_len: Vec<Vec<Magma3<L>>> = vec![Vec::new(); n + 1];
    for len in (1..=n).step_by(2) {
        let mut row = Vec::new();
        if len == 1 {
            row.extend(letters.iter().cloned().map(Magma3::Leaf));
        }
        for i in (1..len).step_by(2) {
            for j in (1..len - i).step_by(2) {
                let k = len - i - j;
                if k % 2 == 0 {
                    continue;
                }
                for y in &by_len[i] {
                    let last = match y {
                        Magma3::Node(_, _, c) => Some(&**c),
                        Magma3::Leaf(_) => None,
                    };
                    for z in &by_len[j] {
                        for w in &by_len[k] {
                            if lts_top_condition(y, z, w, last, cmp_h3) {
                                row.push(Magma3::node(y.clone(), z.clone(), w.clone()));
                            }
                        }
                    }
                }
            }
        }
        row.sort_by(cmp_h3);
        by_len[len] = row;
    }
    std::mem::take(&mut by_len[n])
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HallError {
    #[error("LTS Hall rewriting exceeded its fuel of {0} steps")]
    FuelExhausted(usize),
}

struct Rewriter<L: Ord> {
    fuel: usize,
    used: usize,
    memo: HashMap<(Magma3<L>, Magma3<L>, Magma3<L>), LinComb<Magma3<L>>>,
}

impl<L: BasisOrder + Ord + Clone + Hash> Rewriter<L> {
    fn nf(&mut self, t: &Magma3<L>) -> Result<LinComb<Magma3<L>>, HallError> {
        match t {
            Magma3::Leaf(_) => Ok(LinComb::basis(t.clone())),
            Magma3::Node(y, z, w) => {
                let (ny, nz, nw) = (self.nf(y)?, self.nf(z)?, self.nf(w)?);
                self.top_comb(&ny, &nz, &nw)
            }
        }
    }

    fn top_comb(
        &mut self,
        ys: &LinComb<Magma3<L>>,
        zs: &LinComb<Magma3<L>>,
        ws: &LinComb<Magma3<L>>,
    ) -> Result<LinComb<Magma3<L>>, HallError> {
        let mut out = LinComb::zero();
        for (y, a) in ys {
            for (z, b) in zs {
                for (w, c) in ws {
                    out.add_scaled(&self.top(y, z, w)?, &(a * b * c));
                }
            }
        }
        Ok(out)
    }

    /// Normal form of `[y, z, w]` for Hall `y, z, w`.
    fn top(&mut self, y: &Magma3<L>, z: &Magma3<L>, w: &Magma3<L>) -> Result<LinComb<Magma3<L>>, HallError> {
        let key = (y.clone(), z.clone(), w.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        self.used += 1;
        if self.used > self.fuel {
            return Err(HallError::FuelExhausted(self.fuel));
        }
        let leaf = |t: &Magma3<L>| LinComb::basis(t.clone());
        let out = match cmp_h3(y, z) {
            Ordering::Equal => LinComb::zero(),
            Ordering::Less => self.top(z, y, w)?.scale(&int(-1)),
            Ordering::Greater => {
                if cmp_h3(z, w) == Ordering::Greater {
                    self.top(y, w, z)? - self.top(z, w, y)?
                } else if let Magma3::Node(a, b, c) = y {
                    if cmp_h3(c, z) == Ordering::Greater {
                        let (a, b, c) = (&**a, &**b, &**c);
                        let czw = self.top(c, z, w)?;
                        let abz = self.top(a, b, z)?;
                        let abw = self.top(a, b, w)?;
                        self.top_comb(&leaf(a), &leaf(b), &czw)?
                            - self.top_comb(&leaf(c), &abz, &leaf(w))?
                            - self.top_comb(&leaf(c), &leaf(z), &abw)?
                    } else {
                        LinComb::basis(Magma3::node(y.clone(), z.clone(), w.clone()))
                    }
                } else {
                    LinComb::basis(Magma3::node(y.clone(), z.clone(), w.clone()))
                }
            }
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// Default step budget for [`lts_hall_rewrite`].
pub const DEFAULT_HALL_FUEL: usize = 1_000_000;

/// Rewrites a combination of ternary trees into LTS Hall elements:
/// steps 1–3 innermost-first, then the step-4 rewrite at the top node.
pub fn lts_hall_rewrite<L: BasisOrder + Ord + Clone + Hash>(
    x: &LinComb<Magma3<L>>,
    fuel: usize,
) -> Result<LinComb<Magma3<L>>, HallError> {
    let mut rw = Rewriter { fuel, used: 0, memo: HashMap::new() };
    let mut out = LinComb::zero();
    for (t, c) in x {
        out.add_scaled(&rw.nf(t)?, c);
    }
    Ok(out)
}

/// The injection ι: 𝒯 → M₃(𝒯₀), unfolding triples with empty symmetric part.
pub fn iota(t: &TElem) -> Magma3<TElem> {
    match t.kind() {
        TKind::Triple(s, y, z, w) if s.is_empty() => Magma3::node(iota(y), iota(z), iota(w)),
        _ => Magma3::Leaf(t.clone()),
    }
}

/// `f₃(ι(t))`.
pub fn foliage_t(t: &TElem) -> Vec<TElem> {
    let mut out = Vec::new();
    fn go(t: &TElem, out: &mut Vec<TElem>) {
        match t.kind() {
            TKind::Triple(s, y, z, w) if s.is_empty() => {
                go(y, out);
                go(z, out);
                go(w, out);
            }
            _ => out.push(t.clone()),
        }
    }
    go(t, &mut out);
    out
}

/// ≺_H on 𝒯: foliages of ι compared with 𝒯₀ letters under ≺_𝒯, ties broken by ≺_𝒯.
pub fn cmp_h_on_t(a: &TElem, b: &TElem) -> Ordering {
    if a.ptr_eq(b) {
        return Ordering::Equal;
    }
    let (fa, fb) = (foliage_t(a), foliage_t(b));
    cmp_hall(&fa, &fb, cmp_t).then_with(|| cmp_t(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(c: char) -> Magma3<char> {
        Magma3::Leaf(c)
    }

    #[test]
    fn hall_binary() {
        let ba = Magma2::node(Magma2::Leaf('b'), Magma2::Leaf('a'));
        assert!(is_hall(&ba));
        assert!(!is_hall(&Magma2::node(Magma2::Leaf('a'), Magma2::Leaf('b'))));
        assert!(is_hall(&Magma2::node(ba, Magma2::Leaf('b'))));
    }

    #[test]
    fn lts_hall_counts() {
        let counts: Vec<usize> = [1, 3, 5, 7].iter().map(|&n| enumerate_lts_hall(n, &['a', 'b']).len()).collect();
        assert_eq!(counts, vec![2, 2, 6, 18]);
        assert!(enumerate_lts_hall(4, &['a']).is_empty());
        assert!(enumerate_lts_hall(5, &['a', 'b', 'c']).iter().all(is_lts_hall));
    }

    #[test]
    fn lts_steps() {
        let u = leaf('u');
        let zero = lts_hall_rewrite(&LinComb::basis(Magma3::node(u.clone(), u.clone(), leaf('w'))), 100).unwrap();
        assert!(zero.is_zero());
        let ab = lts_hall_rewrite(&LinComb::basis(Magma3::node(leaf('a'), leaf('b'), leaf('w'))), 100).unwrap();
        assert_eq!(ab, LinComb::term(Magma3::node(leaf('b'), leaf('a'), leaf('w')), int(-1)));
        let cba = lts_hall_rewrite(&LinComb::basis(Magma3::node(leaf('c'), leaf('b'), leaf('a'))), 100).unwrap();
        let expected = LinComb::basis(Magma3::node(leaf('c'), leaf('a'), leaf('b')))
            - LinComb::basis(Magma3::node(leaf('b'), leaf('a'), leaf('c')));
        assert_eq!(cba, expected);
    }

    #[test]
    fn lts_hall_predicate() {
        let cba = Magma3::node(leaf('c'), leaf('b'), leaf('a'));
        assert!(!is_lts_hall(&cba));
        let cab = Magma3::node(leaf('c'), leaf('a'), leaf('b'));
        assert!(is_lts_hall(&cab));
        // [[c,a,b], a, x]: b ≻ a, so the inner last argument exceeds the middle one
        assert!(!is_lts_hall(&Magma3::node(cab.clone(), leaf('a'), leaf('x'))));
        // [[c,a,b], b, x] with b ⪯ x holds
        assert!(is_lts_hall(&Magma3::node(cab, leaf('b'), leaf('x'))));
    }
}
