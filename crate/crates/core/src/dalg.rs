//! Tensor words over an algebra, the D-algebra extension of ▷, word commutators,
//! the triple-bracket and the symmetrization map.

use crate::lincomb::{bilinear, int, multilinear, LinComb, Rational};

/// A tensor word; the empty word is the unit 𝕀.
pub type Word<B> = Vec<B>;

/// An element of the D-algebra: a combination of tensor words.
pub type DElem<B> = LinComb<Word<B>>;

/// The product ▷ of the underlying algebra on basis letters.
pub trait BaseProduct<B: Ord + Clone> {
    fn product(&self, x: &B, y: &B) -> LinComb<B>;

    /// Optional closed form for `w ▷ y` with `l(w) ≥ 2`.
    fn word_on_letter(&self, _w: &[B], _y: &B) -> Option<LinComb<B>> {
        None
    }
}

/// The unit 𝕀.
pub fn unit<B: Ord + Clone>() -> DElem<B> {
    LinComb::basis(Vec::new())
}

/// A word of length one.
pub fn letter<B: Ord + Clone>(x: &LinComb<B>) -> DElem<B> {
    x.map_basis(|b| vec![b.clone()])
}

/// Bilinear concatenation.
pub fn tensor_mul<B: Ord + Clone>(u: &DElem<B>, v: &DElem<B>) -> DElem<B> {
    bilinear(u, v, |a, b| {
        let mut w = a.clone();
        w.extend(b.iter().cloned());
        LinComb::basis(w)
    })
}

/// The product of a list of letters, expanded multilinearly.
pub fn letters_word<B: Ord + Clone>(letters: &[LinComb<B>]) -> DElem<B> {
    multilinear(letters, |ks| LinComb::basis(ks.to_vec()))
}

/// `x·y − y·x`.
pub fn lie_word<B: Ord + Clone>(x: &DElem<B>, y: &DElem<B>) -> DElem<B> {
    tensor_mul(x, y) - tensor_mul(y, x)
}

/// All distinct rearrangements of a multiset, in lexicographic order.
pub fn distinct_permutations<B: Ord + Clone>(letters: &[B]) -> Vec<Vec<B>> {
    let mut cur: Vec<B> = letters.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

/// Multiplicity-weighted symmetrization of a single word.
pub fn symmetrize_word<B: Ord + Clone>(w: &[B]) -> DElem<B> {
    let mut sorted = w.to_vec();
    sorted.sort();
    let mut weight = int(1);
    let mut run = 1usize;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            weight *= factorial(run);
            run = 1;
        }
    }
    let c = weight / factorial(w.len());
    distinct_permutations(&sorted).into_iter().map(|p| (p, c.clone())).collect()
}

/// The symmetrization map 𝔰, extended linearly.
pub fn symmetrize<B: Ord + Clone>(u: &DElem<B>) -> DElem<B> {
    u.map_linear(|w| symmetrize_word(w))
}

/// Symmetrized product of letters, `𝔰(x₁⋯xₙ)`.
pub fn sym_letters<B: Ord + Clone>(letters: &[LinComb<B>]) -> DElem<B> {
    multilinear(letters, |ks| symmetrize_word(ks))
}

/// A letter acting on a letter: the base product, extended linearly.
pub fn letter_on_letter<B: Ord + Clone, P: BaseProduct<B> + ?Sized>(base: &P, x: &LinComb<B>, y: &LinComb<B>) -> LinComb<B> {
    bilinear(x, y, |a, b| base.product(a, b))
}

/// `w ▷ y` for a basis word and a basis letter.
pub fn word_on_letter<B: Ord + Clone, P: BaseProduct<B> + ?Sized>(base: &P, w: &[B], y: &B) -> LinComb<B> {
    match w.len() {
        0 => LinComb::basis(y.clone()),
        1 => base.product(&w[0], y),
        _ => {
            if let Some(r) = base.word_on_letter(w, y) {
                return r;
            }
            word_on_letter_unfold(base, w, y)
        }
    }
}

/// The associator unfolding `(x·ω) ▷ y = x ▷ (ω ▷ y) − (x ▷ ω) ▷ y`.
pub fn word_on_letter_unfold<B: Ord + Clone, P: BaseProduct<B> + ?Sized>(base: &P, w: &[B], y: &B) -> LinComb<B> {
    let x = &w[0];
    let rest = &w[1..];
    let inner = word_on_letter(base, rest, y);
    let mut out = inner.map_linear(|t| base.product(x, t));
    let deriv = letter_on_word(base, x, rest);
    for (v, c) in deriv.iter() {
        out.add_scaled(&word_on_letter(base, v, y), &-c.clone());
    }
    out
}

/// A basis letter acting on a basis word as a derivation.
pub fn letter_on_word<B: Ord + Clone, P: BaseProduct<B> + ?Sized>(base: &P, x: &B, v: &[B]) -> DElem<B> {
    let mut out = LinComb::zero();
    for j in 0..v.len() {
        for (t, c) in base.product(x, &v[j]).iter() {
            let mut w = v.to_vec();
            w[j] = t.clone();
            out.add_term(w, c.clone());
        }
    }
    out
}

/// `u ▷ v` for basis words.
pub fn word_on_word<B: Ord + Clone, P: BaseProduct<B> + ?Sized>(base: &P, u: &[B], v: &[B]) -> DElem<B> {
    if u.is_empty() {
        return LinComb::basis(v.to_vec());
    }
    if v.is_empty() {
        return LinComb::zero();
    }
    if u.len() == 1 {
        return letter_on_word(base, &u[0], v);
    }
    if v.len() == 1 {
        return word_on_letter(base, u, &v[0]).map_basis(|t| vec![t.clone()]);
    }
    let x = &u[0];
    let rest = &u[1..];
    let inner = word_on_word(base, rest, v);
    let mut out = inner.map_linear(|w| letter_on_word(base, x, w));
    for (r, c) in letter_on_word(base, x, rest).iter() {
        out.add_scaled(&word_on_word(base, r, v), &-c.clone());
    }
    out
}

/// The D-algebra product `u ▷ v`.
pub fn triangle<B: Ord + Clone, P: BaseProduct<B> + ?Sized>(base: &P, u: &DElem<B>, v: &DElem<B>) -> DElem<B> {
    bilinear(u, v, |a, b| word_on_word(base, a, b))
}

/// A D-algebra element acting on a letter combination.
pub fn act<B: Ord + Clone, P: BaseProduct<B> + ?Sized>(base: &P, u: &DElem<B>, y: &LinComb<B>) -> LinComb<B> {
    bilinear(u, y, |w, b| word_on_letter(base, w, b))
}

/// The triple-bracket `[x,y,z] = (x·y − y·x) ▷ z`.
pub fn triple_bracket<B: Ord + Clone, P: BaseProduct<B> + ?Sized>(
    base: &P,
    x: &LinComb<B>,
    y: &LinComb<B>,
    z: &LinComb<B>,
) -> LinComb<B> {
    act(base, &lie_word(&letter(x), &letter(y)), z)
}

/// The associator `a(x,y,z) = x ▷ (y ▷ z) − (x ▷ y) ▷ z`.
pub fn associator<B: Ord + Clone, P: BaseProduct<B> + ?Sized>(
    base: &P,
    x: &LinComb<B>,
    y: &LinComb<B>,
    z: &LinComb<B>,
) -> LinComb<B> {
    let yz = letter_on_letter(base, y, z);
    let xy = letter_on_letter(base, x, y);
    letter_on_letter(base, x, &yz) - letter_on_letter(base, &xy, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::rat;

    /// Test double: a commutative product on integers, `x ▷ y = x + y`.
    struct Sum;
    impl BaseProduct<u32> for Sum {
        fn product(&self, x: &u32, y: &u32) -> LinComb<u32> {
            LinComb::basis(x + y)
        }
    }

    #[test]
    fn unit_and_concatenation() {
        let a: DElem<u32> = LinComb::basis(vec![1]);
        let b: DElem<u32> = LinComb::basis(vec![2]);
        assert_eq!(tensor_mul(&unit(), &a), a);
        assert_eq!(tensor_mul(&a, &b), LinComb::basis(vec![1, 2]));
    }

    #[test]
    fn symmetrize_small() {
        let s = symmetrize_word(&[1u32, 2]);
        assert_eq!(s.coeff(&vec![1, 2]), rat(1, 2));
        assert_eq!(s.coeff(&vec![2, 1]), rat(1, 2));
        let t = symmetrize_word(&[1u32, 2, 3]);
        assert_eq!(symmetrize(&t), t);
        assert_eq!(symmetrize_word(&[4u32, 4]), LinComb::basis(vec![4, 4]));
    }

    #[test]
    fn unit_actions() {
        let v: DElem<u32> = LinComb::basis(vec![3, 4]);
        assert_eq!(triangle(&Sum, &unit(), &v), v);
        let x: DElem<u32> = LinComb::basis(vec![3]);
        assert!(triangle(&Sum, &x, &unit()).is_zero());
    }

    #[test]
    fn distinct_permutation_counts() {
        assert_eq!(distinct_permutations(&[1, 1, 2]).len(), 3);
        assert_eq!(distinct_permutations(&[1, 2, 3, 4]).len(), 24);
        assert_eq!(distinct_permutations::<u8>(&[]).len(), 1);
    }
}
