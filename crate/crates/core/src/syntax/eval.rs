//! Evaluation of expressions to algebra elements or D-algebra elements.

use thiserror::Error;

use super::expr::Expr;
use crate::bases::{shat_value, t_value};
use crate::dalg::{self, DElem};
use crate::free::{self, AElem};
use crate::lincomb::{multilinear, LinComb};
use crate::term::MagmaTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("expected an algebra element, found a word of length {0}")]
    NotALetter(usize),
    #[error("graft root must be a generator or a bracket")]
    BadRoot,
    #[error("unfilled hole")]
    Hole,
}

/// The value of an expression: an element of the free algebra or of its D-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    A(AElem),
    D(DElem<MagmaTerm>),
}

impl Value {
    /// Coerces to an algebra element; words of length one are letters.
    pub fn into_a(self) -> Result<AElem, EvalError> {
        match self {
            Value::A(a) => Ok(a),
            Value::D(d) => {
                let mut out = AElem::zero();
                for (w, c) in d.iter() {
                    if w.len() != 1 {
                        return Err(EvalError::NotALetter(w.len()));
                    }
                    out.add_term(w[0].clone(), c.clone());
                }
                Ok(out)
            }
        }
    }

    pub fn into_d(self) -> DElem<MagmaTerm> {
        match self {
            Value::A(a) => dalg::letter(&a),
            Value::D(d) => d,
        }
    }
}

fn a(e: &Expr, hole: Option<&Value>) -> Result<AElem, EvalError> {
    eval(e, hole)?.into_a()
}

fn d(e: &Expr, hole: Option<&Value>) -> Result<DElem<MagmaTerm>, EvalError> {
    Ok(eval(e, hole)?.into_d())
}

fn root(e: &Expr, hole: Option<&Value>) -> Result<AElem, EvalError> {
    let r = a(e, hole)?;
    if r.keys().all(|t| t.is_root()) {
        Ok(r)
    } else {
        Err(EvalError::BadRoot)
    }
}

fn product(xs: &[std::sync::Arc<Expr>], hole: Option<&Value>) -> Result<DElem<MagmaTerm>, EvalError> {
    let mut acc = dalg::unit();
    for x in xs {
        acc = dalg::tensor_mul(&acc, &d(x, hole)?);
    }
    Ok(acc)
}

/// Evaluates `e`, substituting `hole` for `_`.
pub fn eval(e: &Expr, hole: Option<&Value>) -> Result<Value, EvalError> {
    Ok(match e {
        Expr::Zero => Value::A(AElem::zero()),
        Expr::Hole => hole.cloned().ok_or(EvalError::Hole)?,
        Expr::Gen(g) => Value::A(AElem::basis(MagmaTerm::gen(g.clone()))),
        Expr::Magma(t) => Value::A(AElem::basis(t.clone())),
        Expr::Shat(s) => Value::A(shat_value(s)),
        Expr::T(t) => Value::A(t_value(t)),
        Expr::Bk(x, y) => Value::A(free::brk(&a(x, hole)?, &a(y, hole)?)),
        Expr::Tb(x, y, z) => Value::A(free::tb(&a(x, hole)?, &a(y, hole)?, &a(z, hole)?)),
        Expr::Gr(bs, r) => {
            let mut args = bs.iter().map(|b| a(b, hole)).collect::<Result<Vec<_>, _>>()?;
            args.push(root(r, hole)?);
            Value::A(multilinear(&args, |ts| {
                let (r, bs) = ts.split_last().expect("root present");
                AElem::basis(MagmaTerm::graft(bs.to_vec(), r.clone()))
            }))
        }
        Expr::Sg(bs, r) => {
            let args = bs.iter().map(|b| a(b, hole)).collect::<Result<Vec<_>, _>>()?;
            Value::A(free::sym_act(&args, &root(r, hole)?))
        }
        Expr::S(xs) => Value::D(dalg::symmetrize(&product(xs, hole)?)),
        Expr::W(xs) => Value::D(product(xs, hole)?),
        Expr::Lb(x, y) => Value::D(dalg::lie_word(&d(x, hole)?, &d(y, hole)?)),
        Expr::Tri(x, y) => match (eval(x, hole)?, eval(y, hole)?) {
            (u, Value::A(v)) => Value::A(free::act(&u.into_d(), &v)),
            (u, Value::D(v)) => Value::D(free::triangle(&u.into_d(), &v)),
        },
        Expr::Sum(ts) => {
            let vals = ts.iter().map(|(_, x)| eval(x, hole)).collect::<Result<Vec<_>, _>>()?;
            if vals.iter().all(|v| matches!(v, Value::A(_))) {
                let mut out = AElem::zero();
                for ((c, _), v) in ts.iter().zip(vals) {
                    out.add_scaled(&v.into_a()?, c);
                }
                Value::A(out)
            } else {
                let mut out = LinComb::zero();
                for ((c, _), v) in ts.iter().zip(vals) {
                    out.add_scaled(&v.into_d(), c);
                }
                Value::D(out)
            }
        }
    })
}
