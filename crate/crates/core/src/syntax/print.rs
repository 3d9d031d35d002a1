//! Text and JSON printing of linear combinations.

use std::cmp::Ordering;
use std::fmt::Display;

use num_traits::One;
use serde_json::{json, Value as Json};

use super::expr::{Expr, E};
use crate::dalg::DElem;
use crate::lincomb::{fmt_rational, LinComb};
use crate::term::MagmaTerm;

/// `c * x + …` in ascending order under `cmp`; `0` when empty.
pub fn comb_text<K: Ord + Clone + Display>(x: &LinComb<K>, cmp: impl FnMut(&K, &K) -> Ordering) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.sorted_by(cmp)
        .into_iter()
        .map(|(k, c)| if c.is_one() { k.to_string() } else { format!("{} * {k}", fmt_rational(c)) })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `{"terms":[{"coeff":"p/q","expr":"…"}]}` in ascending order under `cmp`.
pub fn comb_json<K: Ord + Clone + Display>(x: &LinComb<K>, cmp: impl FnMut(&K, &K) -> Ordering) -> Json {
    let terms: Vec<Json> = x
        .sorted_by(cmp)
        .into_iter()
        .map(|(k, c)| json!({"coeff": fmt_rational(c), "expr": k.to_string()}))
        .collect();
    json!({ "terms": terms })
}

/// A sum expression with one literal per term.
pub fn comb_expr<K: Ord + Clone>(x: &LinComb<K>, mut lit: impl FnMut(&K) -> Expr) -> E {
    Expr::Sum(x.iter().map(|(k, c)| (c.clone(), lit(k).arc())).collect()).arc()
}

/// Wrapper printing a tensor word as `w(…)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WordDisplay(pub Vec<MagmaTerm>);

impl Display for WordDisplay {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("w(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

pub fn words_text(x: &DElem<MagmaTerm>) -> String {
    comb_text(&x.map_basis(|w| WordDisplay(w.clone())), |a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.cmp(b)))
}
