//! The free algebra over ⟦_,_⟧ and ▷ in the planar tree basis B̂.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::dalg::{self, BaseProduct, DElem};
use crate::lincomb::{bilinear, LinComb};
use crate::term::{MagmaKind, MagmaTerm};

/// An element of the free algebra in B̂ coordinates.
pub type AElem = LinComb<MagmaTerm>;

/// The free grafting product on B̂.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeProduct;

thread_local! {
    static PRODUCT: RefCell<HashMap<(MagmaTerm, MagmaTerm), AElem>> = RefCell::new(HashMap::new());
    static WORD_ACT: RefCell<HashMap<(Vec<MagmaTerm>, MagmaTerm), AElem>> = RefCell::new(HashMap::new());
}

impl BaseProduct<MagmaTerm> for FreeProduct {
    fn product(&self, x: &MagmaTerm, y: &MagmaTerm) -> AElem {
        let (bs, r) = match y.kind() {
            MagmaKind::Graft(bs, r) => (bs, r),
            _ => return LinComb::basis(MagmaTerm::graft(vec![x.clone()], y.clone())),
        };
        let key = (x.clone(), y.clone());
        if let Some(v) = PRODUCT.with(|m| m.borrow().get(&key).cloned()) {
            return v;
        }
        let mut front = Vec::with_capacity(bs.len() + 1);
        front.push(x.clone());
        front.extend(bs.iter().cloned());
        let mut out = LinComb::basis(MagmaTerm::graft(front, r.clone()));
        for i in 0..bs.len() {
            for (t, c) in self.product(x, &bs[i]).iter() {
                let mut nb = bs.clone();
                nb[i] = t.clone();
                out.add_term(MagmaTerm::graft(nb, r.clone()), c.clone());
            }
        }
        PRODUCT.with(|m| m.borrow_mut().insert(key, out.clone()));
        out
    }

    fn word_on_letter(&self, w: &[MagmaTerm], y: &MagmaTerm) -> Option<AElem> {
        if y.is_root() {
            return Some(LinComb::basis(MagmaTerm::graft(w.to_vec(), y.clone())));
        }
        let key = (w.to_vec(), y.clone());
        if let Some(v) = WORD_ACT.with(|m| m.borrow().get(&key).cloned()) {
            return Some(v);
        }
        let out = dalg::word_on_letter_unfold(self, w, y);
        WORD_ACT.with(|m| m.borrow_mut().insert(key, out.clone()));
        Some(out)
    }
}

/// A generator or any basis term as a combination.
pub fn basis(t: &MagmaTerm) -> AElem {
    LinComb::basis(t.clone())
}

/// `⟦x, y⟧`, bilinear.
pub fn brk(x: &AElem, y: &AElem) -> AElem {
    bilinear(x, y, |a, b| LinComb::basis(MagmaTerm::brk(a.clone(), b.clone())))
}

/// `x ▷ y`, bilinear.
pub fn tri(x: &AElem, y: &AElem) -> AElem {
    dalg::letter_on_letter(&FreeProduct, x, y)
}

/// `u ▷ y` for a D-algebra element `u`.
pub fn act(u: &DElem<MagmaTerm>, y: &AElem) -> AElem {
    dalg::act(&FreeProduct, u, y)
}

/// The triple-bracket `[x, y, z]`.
pub fn tb(x: &AElem, y: &AElem, z: &AElem) -> AElem {
    dalg::triple_bracket(&FreeProduct, x, y, z)
}

/// `𝔰(x₁⋯xₙ) ▷ y`.
pub fn sym_act(xs: &[AElem], y: &AElem) -> AElem {
    if xs.is_empty() {
        return y.clone();
    }
    act(&dalg::sym_letters(xs), y)
}

/// The D-algebra product on words over B̂.
pub fn triangle(u: &DElem<MagmaTerm>, v: &DElem<MagmaTerm>) -> DElem<MagmaTerm> {
    dalg::triangle(&FreeProduct, u, v)
}

/// Removes every tree containing a bracket node.
pub fn kill_brackets(x: &AElem) -> AElem {
    use crate::term::Graded;
    x.filter(|t| t.bracket_count() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Alphabet;

    #[test]
    fn graft_product_matches_leibniz() {
        let al = Alphabet::first(3);
        let (a, b, c) = (basis(&al.gen(0)), basis(&al.gen(1)), basis(&al.gen(2)));
        let bc = tri(&b, &c);
        let abc = tri(&a, &bc);
        // a ▷ (b ▷ c) = (a b) ▷ c + (a ▷ b) ▷ c
        let ab_c = LinComb::basis(MagmaTerm::graft(vec![al.gen(0), al.gen(1)], al.gen(2)));
        let expected = &ab_c + &tri(&tri(&a, &b), &c);
        assert_eq!(abc, expected);
    }

    #[test]
    fn triple_bracket_is_planar_commutator_graft() {
        let al = Alphabet::first(3);
        let (a, b, c) = (basis(&al.gen(0)), basis(&al.gen(1)), basis(&al.gen(2)));
        let t = tb(&a, &b, &c);
        let ab_c = MagmaTerm::graft(vec![al.gen(0), al.gen(1)], al.gen(2));
        let ba_c = MagmaTerm::graft(vec![al.gen(1), al.gen(0)], al.gen(2));
        assert_eq!(t, LinComb::basis(ab_c) - LinComb::basis(ba_c));
        let unfolded = tri(&a, &tri(&b, &c)) - tri(&tri(&a, &b), &c) - tri(&b, &tri(&a, &c)) + tri(&tri(&b, &a), &c);
        assert_eq!(t, unfolded);
        assert!(tb(&a, &a, &c).is_zero());
    }
}
