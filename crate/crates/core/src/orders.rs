//! Total orders: ≺_H on letter words, ≺_Δ on OSBB words, and the trait through
//! which basis kinds supply their own order (≺_Ŝ, ≺_𝒯, ≺_𝒞).

use std::cmp::Ordering;

pub use crate::bases::{cmp_shat, cmp_t};
pub use crate::hall::cmp_h_on_t;

/// A basis kind with its total order.
pub trait BasisOrder {
    fn cmp_basis(&self, other: &Self) -> Ordering;
}

macro_rules! natural_order {
    ($($t:ty),*) => {$(
        impl BasisOrder for $t {
            fn cmp_basis(&self, other: &Self) -> Ordering {
                self.cmp(other)
            }
        }
    )*};
}

natural_order!(u8, u16, u32, u64, usize, char);

impl BasisOrder for crate::term::MagmaTerm {
    fn cmp_basis(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl BasisOrder for crate::term::Generator {
    fn cmp_basis(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// ≺_H on letter words: longer is greater, then the first differing letter decides.
pub fn cmp_hall<L>(a: &[L], b: &[L], mut cmp: impl FnMut(&L, &L) -> Ordering) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let o = cmp(x, y);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Borrowed view of one OSBB block: `𝔰(sym) · [y, z]` or a bare `𝔰(sym)`.
#[derive(Debug)]
pub struct BlockRef<'a, B> {
    /// Letters sorted descending.
    pub sym: &'a [B],
    pub brk: Option<(&'a B, &'a B)>,
}

impl<B> Clone for BlockRef<'_, B> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<B> Copy for BlockRef<'_, B> {}

impl<B> BlockRef<'_, B> {
    pub fn len(&self) -> usize {
        self.sym.len() + if self.brk.is_some() { 2 } else { 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Clause (i): symmetric words by length, then letter by letter in descending-sorted order.
pub fn cmp_sym_part<B: BasisOrder>(a: &[B], b: &[B]) -> Ordering {
    cmp_hall(a, b, |x, y| x.cmp_basis(y))
}

/// ≺_Δ on single blocks, clauses (i)–(iii).
pub fn cmp_block<B: BasisOrder>(a: BlockRef<'_, B>, b: BlockRef<'_, B>) -> Ordering {
    match (a.brk, b.brk) {
        (None, None) => cmp_sym_part(a.sym, b.sym),
        (Some((u, v)), Some((y, z))) => a
            .sym
            .len()
            .cmp(&b.sym.len())
            .then_with(|| v.cmp_basis(z))
            .then_with(|| u.cmp_basis(y))
            .then_with(|| cmp_sym_part(a.sym, b.sym)),
        (Some(_), None) => {
            if a.len() > b.len() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
        (None, Some(_)) => {
            if b.len() > a.len() {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }
}

/// ≺_Δ on block sequences, clause (iv): total length, then the first differing block.
pub fn cmp_blocks<B: BasisOrder>(a: &[BlockRef<'_, B>], b: &[BlockRef<'_, B>]) -> Ordering {
    let la: usize = a.iter().map(|x| x.len()).sum();
    let lb: usize = b.iter().map(|x| x.len()).sum();
    la.cmp(&lb).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let o = cmp_block(*x, *y);
            if o != Ordering::Equal {
                return o;
            }
        }
        a.len().cmp(&b.len())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &[u8]) -> BlockRef<'_, u8> {
        BlockRef { sym: s, brk: None }
    }

    #[test]
    fn hall_word_order() {
        assert_eq!(cmp_hall(b"ab", b"a", |x, y| x.cmp(y)), Ordering::Greater);
        assert_eq!(cmp_hall(b"ab", b"aa", |x, y| x.cmp(y)), Ordering::Greater);
        assert_eq!(cmp_hall(b"ab", b"ab", |x, y| x.cmp(y)), Ordering::Equal);
    }

    #[test]
    fn delta_clauses() {
        // (i) length first
        assert_eq!(cmp_block(sym(&[1]), sym(&[1, 0])), Ordering::Less);
        // (iii) a bracket block is not greater than a symmetric block of equal length
        let (x, y) = (1u8, 0u8);
        let b = BlockRef { sym: &[], brk: Some((&x, &y)) };
        assert_eq!(cmp_block(sym(&[1, 0]), b), Ordering::Greater);
        assert_eq!(cmp_block(b, sym(&[1])), Ordering::Greater);
        // (ii) second entries decide before first entries
        let (p, q, r) = (2u8, 1u8, 0u8);
        let xy = BlockRef { sym: &[], brk: Some((&p, &q)) };
        let xz = BlockRef { sym: &[], brk: Some((&p, &r)) };
        assert_eq!(cmp_block(xy, xz), Ordering::Greater);
    }
}
