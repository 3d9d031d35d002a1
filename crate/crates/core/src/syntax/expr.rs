//! Surface expressions.

use std::fmt;
use std::sync::Arc;

use crate::bases::{ShatElem, TElem};
use crate::lincomb::{fmt_rational, Rational};
use crate::term::{Generator, MagmaTerm};
use num_traits::One;

pub type E = Arc<Expr>;

/// An expression in the concrete syntax.
///
/// Literal variants embed already-built basis elements; they print in the same
/// grammar, so printing and reparsing gives back an equal value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Zero,
    /// `_`, the slot of a context.
    Hole,
    Gen(Generator),
    Bk(E, E),
    Tb(E, E, E),
    Gr(Vec<E>, E),
    Sg(Vec<E>, E),
    S(Vec<E>),
    W(Vec<E>),
    Tri(E, E),
    Lb(E, E),
    Sum(Vec<(Rational, E)>),
    Magma(MagmaTerm),
    Shat(ShatElem),
    T(TElem),
}

impl Expr {
    pub fn arc(self) -> E {
        Arc::new(self)
    }

    pub fn contains_hole(&self) -> bool {
        match self {
            Expr::Hole => true,
            Expr::Zero | Expr::Gen(_) | Expr::Magma(_) | Expr::Shat(_) | Expr::T(_) => false,
            Expr::Bk(a, b) | Expr::Tri(a, b) | Expr::Lb(a, b) => a.contains_hole() || b.contains_hole(),
            Expr::Tb(a, b, c) => a.contains_hole() || b.contains_hole() || c.contains_hole(),
            Expr::Gr(bs, r) | Expr::Sg(bs, r) => bs.iter().any(|b| b.contains_hole()) || r.contains_hole(),
            Expr::S(xs) | Expr::W(xs) => xs.iter().any(|x| x.contains_hole()),
            Expr::Sum(ts) => ts.iter().any(|(_, x)| x.contains_hole()),
        }
    }

    /// Replaces every hole by `fill`.
    pub fn plug(self: &E, fill: &E) -> E {
        let p = |x: &E| x.plug(fill);
        let ps = |xs: &[E]| xs.iter().map(|x| x.plug(fill)).collect::<Vec<_>>();
        match &**self {
            Expr::Hole => fill.clone(),
            Expr::Zero | Expr::Gen(_) | Expr::Magma(_) | Expr::Shat(_) | Expr::T(_) => self.clone(),
            Expr::Bk(a, b) => Expr::Bk(p(a), p(b)).arc(),
            Expr::Tri(a, b) => Expr::Tri(p(a), p(b)).arc(),
            Expr::Lb(a, b) => Expr::Lb(p(a), p(b)).arc(),
            Expr::Tb(a, b, c) => Expr::Tb(p(a), p(b), p(c)).arc(),
            Expr::Gr(bs, r) => Expr::Gr(ps(bs), p(r)).arc(),
            Expr::Sg(bs, r) => Expr::Sg(ps(bs), p(r)).arc(),
            Expr::S(xs) => Expr::S(ps(xs)).arc(),
            Expr::W(xs) => Expr::W(ps(xs)).arc(),
            Expr::Sum(ts) => Expr::Sum(ts.iter().map(|(c, x)| (c.clone(), p(x))).collect()).arc(),
        }
    }
}

fn list(f: &mut fmt::Formatter<'_>, xs: &[E]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Zero => f.write_str("0"),
            Expr::Hole => f.write_str("_"),
            Expr::Gen(g) => f.write_str(g.name()),
            Expr::Bk(a, b) => write!(f, "bk({a}, {b})"),
            Expr::Tb(a, b, c) => write!(f, "tb({a}, {b}, {c})"),
            Expr::Tri(a, b) => write!(f, "tri({a}, {b})"),
            Expr::Lb(a, b) => write!(f, "lb({a}, {b})"),
            Expr::Gr(bs, r) | Expr::Sg(bs, r) => {
                f.write_str(if matches!(self, Expr::Gr(..)) { "gr(" } else { "sg(" })?;
                list(f, bs)?;
                write!(f, "; {r})")
            }
            Expr::S(xs) => {
                f.write_str("s(")?;
                list(f, xs)?;
                f.write_str(")")
            }
            Expr::W(xs) => {
                f.write_str("w(")?;
                list(f, xs)?;
                f.write_str(")")
            }
            Expr::Sum(ts) => {
                if ts.is_empty() {
                    return f.write_str("0");
                }
                for (i, (c, x)) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    let inner = if matches!(**x, Expr::Sum(_)) { format!("({x})") } else { x.to_string() };
                    if c.is_one() {
                        f.write_str(&inner)?;
                    } else {
                        write!(f, "{} * {inner}", fmt_rational(c))?;
                    }
                }
                Ok(())
            }
            Expr::Magma(t) => write!(f, "{t}"),
            Expr::Shat(s) => write!(f, "{s}"),
            Expr::T(t) => write!(f, "{t}"),
        }
    }
}
