//! Relation schemas and their instances.

use std::fmt;
use std::str::FromStr;

use crate::free::AElem;
use crate::lincomb::{int, Rational};
use crate::syntax::{eval, EvalError, Expr, E};

/// A defining relation of the ideal, a derived relation, or an identity of the free algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Ply1,
    Ply2,
    Ply3,
    Ply4,
    Ply5,
    Ply6,
    TbAntisym,
    DalgExpand,
}

impl Rule {
    pub const ALL: [Rule; 8] =
        [Rule::Ply1, Rule::Ply2, Rule::Ply3, Rule::Ply4, Rule::Ply5, Rule::Ply6, Rule::TbAntisym, Rule::DalgExpand];

    pub const PLY: [Rule; 6] = [Rule::Ply1, Rule::Ply2, Rule::Ply3, Rule::Ply4, Rule::Ply5, Rule::Ply6];

    pub fn id(self) -> &'static str {
        match self {
            Rule::Ply1 => "PLY1",
            Rule::Ply2 => "PLY2",
            Rule::Ply3 => "PLY3",
            Rule::Ply4 => "PLY4",
            Rule::Ply5 => "PLY5",
            Rule::Ply6 => "PLY6",
            Rule::TbAntisym => "TB-antisym",
            Rule::DalgExpand => "Dalg-expand",
        }
    }

    /// Schema variables, in binding order.
    pub fn vars(self) -> &'static [&'static str] {
        match self {
            Rule::Ply1 => &["x", "y"],
            Rule::Ply2 => &["u", "x", "y"],
            Rule::Ply3 => &["u", "x", "y", "z"],
            Rule::Ply4 => &["x", "y", "z"],
            Rule::Ply5 => &["x", "y", "z", "u"],
            Rule::Ply6 => &["u", "v", "x", "y", "z"],
            Rule::TbAntisym => &["x", "y", "z"],
            Rule::DalgExpand => &["x", "y", "z"],
        }
    }

    /// Identities hold in the free algebra itself; their instances evaluate to zero.
    pub fn is_identity(self) -> bool {
        matches!(self, Rule::TbAntisym | Rule::DalgExpand)
    }

    /// `LHS − RHS` with the given bindings, as an expression.
    ///
    /// # Panics
    /// If the number of bindings differs from the number of schema variables.
    pub fn instance(self, b: &[E]) -> E {
        assert_eq!(b.len(), self.vars().len(), "{} takes {} bindings", self.id(), self.vars().len());
        let bk = |x: &E, y: &E| Expr::Bk(x.clone(), y.clone()).arc();
        let tb = |x: &E, y: &E, z: &E| Expr::Tb(x.clone(), y.clone(), z.clone()).arc();
        let tri = |x: &E, y: &E| Expr::Tri(x.clone(), y.clone()).arc();
        let sum = |ts: Vec<(i64, E)>| Expr::Sum(ts.into_iter().map(|(c, e)| (int(c), e)).collect()).arc();
        match self {
            Rule::Ply1 => sum(vec![(1, bk(&b[0], &b[1])), (1, bk(&b[1], &b[0]))]),
            Rule::Ply2 => {
                let (u, x, y) = (&b[0], &b[1], &b[2]);
                sum(vec![(1, tri(u, &bk(x, y))), (-1, bk(&tri(u, x), y)), (-1, bk(x, &tri(u, y)))])
            }
            Rule::Ply3 => {
                let (u, x, y, z) = (&b[0], &b[1], &b[2], &b[3]);
                let uxy = Expr::W(vec![u.clone(), bk(x, y)]).arc();
                sum(vec![
                    (1, tri(u, &tb(x, y, z))),
                    (-1, tb(&tri(u, x), y, z)),
                    (-1, tb(x, &tri(u, y), z)),
                    (-1, tb(x, y, &tri(u, z))),
                    (-1, tri(&uxy, z)),
                    (1, tri(&bk(x, y), &tri(u, z))),
                ])
            }
            Rule::Ply4 => {
                let mut ts = Vec::new();
                for (x, y, z) in [(&b[0], &b[1], &b[2]), (&b[1], &b[2], &b[0]), (&b[2], &b[0], &b[1])] {
                    ts.push((1, bk(&bk(x, y), z)));
                    ts.push((-1, tb(x, y, z)));
                    ts.push((1, tri(&bk(x, y), z)));
                }
                sum(ts)
            }
            Rule::Ply5 => {
                let u = &b[3];
                let mut ts = Vec::new();
                for (x, y, z) in [(&b[0], &b[1], &b[2]), (&b[1], &b[2], &b[0]), (&b[2], &b[0], &b[1])] {
                    ts.push((1, tb(&bk(x, y), z, u)));
                    ts.push((-1, tri(&bk(&bk(x, y), z), u)));
                }
                sum(ts)
            }
            Rule::Ply6 => {
                let (u, v, x, y, z) = (&b[0], &b[1], &b[2], &b[3], &b[4]);
                let word = Expr::W(vec![Expr::Lb(u.clone(), v.clone()).arc(), bk(x, y)]).arc();
                sum(vec![
                    (1, tb(u, v, &tb(x, y, z))),
                    (-1, tb(&tb(u, v, x), y, z)),
                    (-1, tb(x, &tb(u, v, y), z)),
                    (-1, tb(x, y, &tb(u, v, z))),
                    (-1, tri(&word, z)),
                    (1, tri(&bk(x, y), &tb(u, v, z))),
                ])
            }
            Rule::TbAntisym => sum(vec![(1, tb(&b[0], &b[1], &b[2])), (1, tb(&b[1], &b[0], &b[2]))]),
            Rule::DalgExpand => {
                let (x, y, z) = (&b[0], &b[1], &b[2]);
                let xy = Expr::W(vec![x.clone(), y.clone()]).arc();
                sum(vec![(1, tri(&xy, z)), (-1, tri(x, &tri(y, z))), (1, tri(&tri(x, y), z))])
            }
        }
    }

    /// The value of [`Rule::instance`] in the free algebra.
    pub fn instance_value(self, b: &[E]) -> Result<AElem, EvalError> {
        eval(&self.instance(b), None)?.into_a()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL.into_iter().find(|r| r.id() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// One application of a relation inside a context: contributes `coeff · context[instance]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub rule: Rule,
    pub bindings: Vec<E>,
    /// An expression with exactly one `_`, linear in it.
    pub context: E,
    pub coeff: Rational,
}

impl RelationInstance {
    pub fn new(rule: Rule, bindings: Vec<E>, coeff: Rational) -> Self {
        RelationInstance { rule, bindings, context: Expr::Hole.arc(), coeff }
    }

    /// `coeff · context[instance]` in the free algebra.
    pub fn value(&self) -> Result<AElem, EvalError> {
        let inst = crate::syntax::Value::A(self.rule.instance_value(&self.bindings)?);
        Ok(eval(&self.context, Some(&inst))?.into_a()?.scale(&self.coeff))
    }

    pub(crate) fn wrapped(&self, frame: &E, scale: &Rational) -> Self {
        RelationInstance {
            rule: self.rule,
            bindings: self.bindings.clone(),
            context: frame.plug(&self.context),
            coeff: &self.coeff * scale,
        }
    }
}
