//! Exact coefficients and finite linear combinations.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `n / d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A finite formal sum of basis elements with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K>) {
        self.add_scaled(other, &Rational::one());
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Applies a map on basis elements that sends each to a single basis element.
    pub fn map_basis<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb {
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Largest basis element under the supplied order.
    pub fn max_by(&self, mut cmp: impl FnMut(&K, &K) -> std::cmp::Ordering) -> Option<(&K, &Rational)> {
        self.terms.iter().max_by(|a, b| cmp(a.0, b.0))
    }

    /// Terms sorted by the supplied order, ascending.
    pub fn sorted_by(&self, mut cmp: impl FnMut(&K, &K) -> std::cmp::Ordering) -> Vec<(&K, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| cmp(a.0, b.0));
        v
    }

    pub fn into_terms(self) -> BTreeMap<K, Rational> {
        self.terms
    }
}

/// Bilinear extension of `f` to two combinations.
pub fn bilinear<A, B, C>(x: &LinComb<A>, y: &LinComb<B>, mut f: impl FnMut(&A, &B) -> LinComb<C>) -> LinComb<C>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
{
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&f(a, b), &(ca * cb));
        }
    }
    out
}

/// Multilinear extension of `f` over a list of combinations.
pub fn multilinear<A, C>(args: &[LinComb<A>], mut f: impl FnMut(&[A]) -> LinComb<C>) -> LinComb<C>
where
    A: Ord + Clone,
    C: Ord + Clone,
{
    let mut out = LinComb::zero();
    let mut pick: Vec<A> = Vec::with_capacity(args.len());
    fn rec<A: Ord + Clone, C: Ord + Clone>(
        args: &[LinComb<A>],
        i: usize,
        coef: Rational,
        pick: &mut Vec<A>,
        out: &mut LinComb<C>,
        f: &mut dyn FnMut(&[A]) -> LinComb<C>,
    ) {
        if i == args.len() {
            out.add_scaled(&f(pick), &coef);
            return;
        }
        for (a, c) in args[i].iter() {
            pick.push(a.clone());
            rec(args, i + 1, &coef * c, pick, out, f);
            pick.pop();
        }
    }
    rec(args, 0, Rational::one(), &mut pick, &mut out, &mut f);
    out
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> Add for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = LinComb<K>;
    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self.add_assign(&rhs);
        self
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = LinComb<K>;
    fn sub(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self.add_scaled(&rhs, &-Rational::one());
        self
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        self.scale(&-Rational::one())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} * {:?}", fmt_rational(c), k)?;
        }
        Ok(())
    }
}

/// Sign helper used by printers.
pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let mut x = LinComb::term("a", rat(2, 3));
        x.add_term("a", rat(1, 3));
        assert_eq!(x, LinComb::basis("a"));
        let y = &x - &x;
        assert!(y.is_zero());
        assert!(x.scale(&int(0)).is_zero());
    }

    #[test]
    fn multilinear_expands_products() {
        let a = LinComb::term(1, int(2)) + LinComb::basis(2);
        let b = LinComb::basis(10);
        let p = multilinear(&[a, b], |ks| LinComb::basis(ks[0] * ks[1]));
        assert_eq!(p.coeff(&10), int(2));
        assert_eq!(p.coeff(&20), int(1));
    }
}
