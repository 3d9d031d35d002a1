//! Rewriting to the basis ℬ.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use super::basis::is_b;
use super::relations::{RelationInstance, Rule};
use super::trace::{Piece, RewriteTrace};
use crate::bases::{t_value, to_t, TElem, TKind};
use crate::dalg;
use crate::free::{self, AElem};
use crate::hall::cmp_h_on_t;
use crate::lincomb::{bilinear, multilinear, rat, LinComb, Rational};
use crate::syntax::{Expr, E};
use crate::term::Graded;

/// Default bound on rewrite applications per call.
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Which pending term is rewritten next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// The ≺_𝒯-largest pending term first.
    #[default]
    LargestFirst,
    /// The ≺_𝒯-smallest pending term first.
    SmallestFirst,
}

#[derive(Clone, Debug, Error)]
pub enum NormalizeError {
    /// Ran out of fuel; `partial` plus the trace still account for the input exactly.
    #[error("fuel exhausted after {used} rewrite steps")]
    FuelExhausted { used: u64, partial: LinComb<TElem>, trace: RewriteTrace },
    #[error("no rewrite step applies to {0}")]
    Stuck(TElem),
}

/// Output of [`Normalizer::normalize`].
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub output: LinComb<TElem>,
    pub trace: RewriteTrace,
}

struct Nf {
    out: LinComb<TElem>,
    trace: Arc<[Piece]>,
}

/// A letter in the symmetrized recursions: an expression with its value in 𝒯 and A.
#[derive(Clone)]
struct Letter {
    e: E,
    t: LinComb<TElem>,
    a: AElem,
}

impl Letter {
    fn of(t: &TElem) -> Self {
        Letter { e: lit(t), t: LinComb::basis(t.clone()), a: t_value(t) }
    }

    fn acted_by(&self, x: &Letter) -> Letter {
        Letter {
            e: Expr::Tri(x.e.clone(), self.e.clone()).arc(),
            t: bilinear(&x.t, &self.t, act_t),
            a: free::tri(&x.a, &self.a),
        }
    }
}

fn lit(t: &TElem) -> E {
    Expr::T(t.clone()).arc()
}

fn basis(t: TElem) -> LinComb<TElem> {
    LinComb::basis(t)
}

fn gt(a: &TElem, b: &TElem) -> bool {
    cmp_h_on_t(a, b) == std::cmp::Ordering::Greater
}

/// `x ▷ y` in 𝒯 coordinates, structurally where the shape allows.
fn act_t(x: &TElem, y: &TElem) -> LinComb<TElem> {
    match y.kind() {
        _ if y.is_root() => basis(TElem::sym_graft(vec![x.clone()], y.clone())),
        TKind::Triple(s, p, q, r) if s.is_empty() => basis(TElem::triple(vec![x.clone()], p.clone(), q.clone(), r.clone())),
        _ => to_t(&free::tri(&t_value(x), &t_value(y))),
    }
}

/// `𝔰(xs) ▷ y` in 𝒯 coordinates.
fn sym_act_t(xs: &[TElem], y: &TElem) -> LinComb<TElem> {
    if xs.is_empty() {
        return basis(y.clone());
    }
    match y.kind() {
        _ if y.is_root() => basis(TElem::sym_graft(xs.to_vec(), y.clone())),
        TKind::Triple(s, p, q, r) if s.is_empty() => basis(TElem::triple(xs.to_vec(), p.clone(), q.clone(), r.clone())),
        _ => to_t(&free::sym_act(&xs.iter().map(t_value).collect::<Vec<_>>(), &t_value(y))),
    }
}

fn sym_expr(xs: &[Letter], y: &E) -> E {
    if xs.is_empty() {
        y.clone()
    } else {
        Expr::Tri(Expr::S(xs.iter().map(|x| x.e.clone()).collect()).arc(), y.clone()).arc()
    }
}

fn step(rule: Rule, bindings: Vec<E>, coeff: Rational) -> Piece {
    Piece::Step(RelationInstance::new(rule, bindings, coeff))
}

fn sub(frame: Option<E>, scale: Rational, inner: Arc<[Piece]>) -> Piece {
    Piece::Sub { frame, scale, inner }
}

/// Terms of the symmetrized triple recursion.
enum RTerm {
    Tb(Letter, Letter, Letter),
    Plain(LinComb<TElem>),
}

fn without(xs: &[Letter], i: usize) -> Vec<Letter> {
    xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect()
}

/// `𝔰(xs) ▷ [y, z, w] = R + Σ steps`, with `R` free of symmetric parts on triples.
fn ply3_rec(xs: &[Letter], y: &Letter, z: &Letter, w: &Letter) -> (Vec<(Rational, RTerm)>, Vec<Piece>) {
    let n = xs.len();
    if n == 0 {
        return (vec![(Rational::one(), RTerm::Tb(y.clone(), z.clone(), w.clone()))], Vec::new());
    }
    let inv = rat(1, n as i64);
    let (mut terms, mut pieces) = (Vec::new(), Vec::new());
    for (i, x) in xs.iter().enumerate() {
        let rest = without(xs, i);
        let (sub_terms, sub_pieces) = ply3_rec(&rest, y, z, w);
        let frame = Expr::Tri(x.e.clone(), Expr::Hole.arc()).arc();
        pieces.push(sub(Some(frame), inv.clone(), sub_pieces.into()));
        for (c, term) in sub_terms {
            let c = &c * &inv;
            match term {
                RTerm::Tb(p, q, r) => {
                    pieces.push(step(Rule::Ply3, vec![x.e.clone(), p.e.clone(), q.e.clone(), r.e.clone()], c.clone()));
                    let pq = free::brk(&p.a, &q.a);
                    let word = dalg::tensor_mul(&dalg::letter(&x.a), &dalg::letter(&pq));
                    let plain = to_t(&(free::act(&word, &r.a) - free::tri(&pq, &free::tri(&x.a, &r.a))));
                    terms.push((c.clone(), RTerm::Tb(p.acted_by(x), q.clone(), r.clone())));
                    terms.push((c.clone(), RTerm::Tb(p.clone(), q.acted_by(x), r.clone())));
                    terms.push((c.clone(), RTerm::Tb(p, q, r.acted_by(x))));
                    terms.push((c, RTerm::Plain(plain)));
                }
                RTerm::Plain(p) => {
                    terms.push((c, RTerm::Plain(bilinear(&x.t, &p, act_t))));
                }
            }
        }
        for j in 0..rest.len() {
            let mut ys = rest.clone();
            ys[j] = rest[j].acted_by(x);
            let (t2, p2) = ply3_rec(&ys, y, z, w);
            let c = -&inv;
            pieces.push(sub(None, c.clone(), p2.into()));
            terms.extend(t2.into_iter().map(|(d, t)| (&d * &c, t)));
        }
    }
    (terms, pieces)
}

/// Witness for `𝔰(xs) ▷ ⟦u, v⟧ = Σ_S ⟦𝔰(xs_S) ▷ u, 𝔰(xs_S') ▷ v⟧`.
fn ply2_witness(xs: &[Letter], u: &E, v: &E) -> Vec<Piece> {
    let n = xs.len();
    if n == 0 {
        return Vec::new();
    }
    let inv = rat(1, n as i64);
    let mut pieces = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let rest = without(xs, i);
        let frame = Expr::Tri(x.e.clone(), Expr::Hole.arc()).arc();
        pieces.push(sub(Some(frame), inv.clone(), ply2_witness(&rest, u, v).into()));
        for mask in 0..(1u32 << rest.len()) {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (j, r) in rest.iter().enumerate() {
                if mask & (1 << j) != 0 { left.push(r.clone()) } else { right.push(r.clone()) }
            }
            pieces.push(step(Rule::Ply2, vec![x.e.clone(), sym_expr(&left, u), sym_expr(&right, v)], inv.clone()));
        }
        for j in 0..rest.len() {
            let mut ys = rest.clone();
            ys[j] = rest[j].acted_by(x);
            pieces.push(sub(None, -&inv, ply2_witness(&ys, u, v).into()));
        }
    }
    pieces
}

/// Rewrites elements of 𝒯 to combinations of ℬ with a trace of relation instances.
pub struct Normalizer {
    strategy: Strategy,
    fuel: u64,
    used: u64,
    memo: HashMap<TElem, Rc<Nf>>,
}

impl Normalizer {
    pub fn new(strategy: Strategy, fuel: u64) -> Self {
        Normalizer { strategy, fuel, used: 0, memo: HashMap::new() }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn set_fuel(&mut self, fuel: u64) {
        self.fuel = fuel;
    }

    /// Normal form of an element of the free algebra.
    pub fn normalize(&mut self, x: &AElem) -> Result<NormalForm, NormalizeError> {
        self.normalize_t(&to_t(x))
    }

    /// Normal form of a combination of 𝒯-shaped terms.
    pub fn normalize_t(&mut self, x: &LinComb<TElem>) -> Result<NormalForm, NormalizeError> {
        self.used = 0;
        let (out, pieces) = self.run(x.clone())?;
        Ok(NormalForm { output: out, trace: RewriteTrace::from_pieces(pieces) })
    }

    fn run(&mut self, mut pending: LinComb<TElem>) -> Result<(LinComb<TElem>, Vec<Piece>), NormalizeError> {
        let mut done = LinComb::zero();
        let mut pieces = Vec::new();
        loop {
            let next = match self.strategy {
                Strategy::LargestFirst => pending.keys().next_back().cloned(),
                Strategy::SmallestFirst => pending.keys().next().cloned(),
            };
            let Some(t) = next else { break };
            let c = pending.coeff(&t);
            pending.add_term(t.clone(), -c.clone());
            if is_b(&t) {
                done.add_term(t, c);
                continue;
            }
            if let Some(nf) = self.memo.get(&t).cloned() {
                done.add_scaled(&nf.out, &c);
                pieces.push(sub(None, c, nf.trace.clone()));
                continue;
            }
            if self.used >= self.fuel {
                pending.add_term(t, c);
                let partial = &done + &pending;
                return Err(NormalizeError::FuelExhausted {
                    used: self.used,
                    partial,
                    trace: RewriteTrace::from_pieces(pieces),
                });
            }
            self.used += 1;
            let (rhs, wit) = match self.rewrite(&t) {
                Ok(r) => r,
                Err(NormalizeError::FuelExhausted { used, .. }) => {
                    pending.add_term(t, c);
                    return Err(NormalizeError::FuelExhausted {
                        used,
                        partial: &done + &pending,
                        trace: RewriteTrace::from_pieces(pieces),
                    });
                }
                Err(e) => return Err(e),
            };
            pending.add_scaled(&rhs, &c);
            pieces.push(sub(None, c, wit.into()));
        }
        Ok((done, pieces))
    }

    /// Normal form in the free LAT algebra: the same rewrites with every term that
    /// contains a bracket set to zero as soon as it appears. No trace is kept.
    pub fn normalize_lat(&mut self, x: &LinComb<TElem>) -> Result<LinComb<TElem>, NormalizeError> {
        self.used = 0;
        let mut pending = x.filter(|t| t.bracket_count() == 0);
        let mut done = LinComb::zero();
        loop {
            let next = match self.strategy {
                Strategy::LargestFirst => pending.keys().next_back().cloned(),
                Strategy::SmallestFirst => pending.keys().next().cloned(),
            };
            let Some(t) = next else { break };
            let c = pending.coeff(&t);
            pending.add_term(t.clone(), -c.clone());
            if is_b(&t) {
                done.add_term(t, c);
                continue;
            }
            if self.used >= self.fuel {
                pending.add_term(t, c);
                return Err(NormalizeError::FuelExhausted {
                    used: self.used,
                    partial: &done + &pending,
                    trace: RewriteTrace::default(),
                });
            }
            self.used += 1;
            let (rhs, _) = self.rewrite(&t)?;
            pending.add_scaled(&rhs.filter(|t| t.bracket_count() == 0), &c);
        }
        Ok(done)
    }

    /// Normal form of a single term, memoized.
    fn nf_term(&mut self, t: &TElem) -> Result<Rc<Nf>, NormalizeError> {
        if let Some(nf) = self.memo.get(t) {
            return Ok(nf.clone());
        }
        let (out, pieces) = self.run(basis(t.clone()))?;
        let nf = Rc::new(Nf { out, trace: pieces.into() });
        self.memo.insert(t.clone(), nf.clone());
        Ok(nf)
    }

    /// One rewrite of a term outside ℬ: `t = rhs + Σ witness`.
    fn rewrite(&mut self, t: &TElem) -> Result<(LinComb<TElem>, Vec<Piece>), NormalizeError> {
        if let TKind::SymGraft(xs, r) = t.kind() {
            if let TKind::Brk(u, v) = r.kind() {
                return Ok(self.push_into_bracket(xs, u, v));
            }
        }
        if let Some(r) = self.normalize_component(t)? {
            return Ok(r);
        }
        match t.kind() {
            TKind::Brk(x, y) => {
                if x == y {
                    Ok((LinComb::zero(), vec![step(Rule::Ply1, vec![lit(x), lit(y)], rat(1, 2))]))
                } else {
                    let rhs = LinComb::term(TElem::brk(y.clone(), x.clone()), -Rational::one());
                    Ok((rhs, vec![step(Rule::Ply1, vec![lit(x), lit(y)], Rational::one())]))
                }
            }
            TKind::Triple(xs, y, z, w) if !xs.is_empty() => Ok(self.expand_sym_triple(xs, y, z, w)),
            TKind::Triple(_, y, z, w) => self.rewrite_triple(t, y, z, w),
            _ => Err(NormalizeError::Stuck(t.clone())),
        }
    }

    fn push_into_bracket(&self, xs: &[TElem], u: &TElem, v: &TElem) -> (LinComb<TElem>, Vec<Piece>) {
        let mut rhs = LinComb::zero();
        for mask in 0..(1u32 << xs.len()) {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (j, x) in xs.iter().enumerate() {
                if mask & (1 << j) != 0 { left.push(x.clone()) } else { right.push(x.clone()) }
            }
            let l = sym_act_t(&left, u);
            let r = sym_act_t(&right, v);
            rhs.add_assign(&bilinear(&l, &r, |a, b| basis(TElem::brk(a.clone(), b.clone()))));
        }
        let letters: Vec<Letter> = xs.iter().map(Letter::of).collect();
        (rhs, ply2_witness(&letters, &lit(u), &lit(v)))
    }

    /// Replaces the first component outside ℬ by its normal form.
    fn normalize_component(&mut self, t: &TElem) -> Result<Option<(LinComb<TElem>, Vec<Piece>)>, NormalizeError> {
        let comps: Vec<&TElem> = match t.kind() {
            TKind::Gen(_) => vec![],
            TKind::Brk(x, y) => vec![x, y],
            TKind::SymGraft(xs, r) => xs.iter().chain(std::iter::once(r)).collect(),
            TKind::Triple(xs, y, z, w) => xs.iter().chain([y, z, w]).collect(),
        };
        let Some(pos) = comps.iter().position(|c| !is_b(c)) else { return Ok(None) };
        let comp = comps[pos].clone();
        let nf = self.nf_term(&comp)?;
        let fill = |h: Option<&TElem>| -> Vec<E> {
            comps.iter().enumerate().map(|(i, c)| if i == pos { h.map_or(Expr::Hole.arc(), lit) } else { lit(c) }).collect()
        };
        let rebuild = |b: &TElem| -> TElem {
            let mut cs: Vec<TElem> = comps.iter().map(|c| (*c).clone()).collect();
            cs[pos] = b.clone();
            match t.kind() {
                TKind::Brk(..) => TElem::brk(cs[0].clone(), cs[1].clone()),
                TKind::SymGraft(..) => {
                    let r = cs.pop().unwrap();
                    TElem::sym_graft(cs, r)
                }
                TKind::Triple(..) => {
                    let w = cs.pop().unwrap();
                    let z = cs.pop().unwrap();
                    let y = cs.pop().unwrap();
                    TElem::triple(cs, y, z, w)
                }
                TKind::Gen(_) => unreachable!(),
            }
        };
        let mut es = fill(None);
        let frame = match t.kind() {
            TKind::Brk(..) => Expr::Bk(es.remove(0), es.remove(0)).arc(),
            TKind::SymGraft(..) => {
                let r = es.pop().unwrap();
                Expr::Sg(es, r).arc()
            }
            TKind::Triple(..) => {
                let w = es.pop().unwrap();
                let z = es.pop().unwrap();
                let y = es.pop().unwrap();
                let tb = Expr::Tb(y, z, w).arc();
                if es.is_empty() { tb } else { Expr::Tri(Expr::S(es).arc(), tb).arc() }
            }
            TKind::Gen(_) => unreachable!(),
        };
        let mut rhs = LinComb::zero();
        for (b, d) in nf.out.iter() {
            let nt = rebuild(b);
            if !is_zero_triple(&nt) {
                rhs.add_term(nt, d.clone());
            }
        }
        Ok(Some((rhs, vec![sub(Some(frame), Rational::one(), nf.trace.clone())])))
    }

    fn expand_sym_triple(&self, xs: &[TElem], y: &TElem, z: &TElem, w: &TElem) -> (LinComb<TElem>, Vec<Piece>) {
        let letters: Vec<Letter> = xs.iter().map(Letter::of).collect();
        let (terms, pieces) = ply3_rec(&letters, &Letter::of(y), &Letter::of(z), &Letter::of(w));
        let mut rhs = LinComb::zero();
        for (c, term) in terms {
            match term {
                RTerm::Tb(p, q, r) => {
                    let tri = multilinear(&[p.t, q.t, r.t], |a| {
                        if a[0] == a[1] {
                            LinComb::zero()
                        } else {
                            basis(TElem::triple(vec![], a[0].clone(), a[1].clone(), a[2].clone()))
                        }
                    });
                    rhs.add_scaled(&tri, &c);
                }
                RTerm::Plain(p) => rhs.add_scaled(&p, &c),
            }
        }
        (rhs, pieces)
    }

    fn rewrite_triple(&mut self, t: &TElem, y: &TElem, z: &TElem, w: &TElem) -> Result<(LinComb<TElem>, Vec<Piece>), NormalizeError> {
        let one = Rational::one();
        let tri0 = |a: &TElem, b: &TElem, c: &TElem| TElem::triple(vec![], a.clone(), b.clone(), c.clone());
        if y == z {
            return Ok((LinComb::zero(), vec![step(Rule::TbAntisym, vec![lit(y), lit(z), lit(w)], rat(1, 2))]));
        }
        if !gt(y, z) {
            let rhs = LinComb::term(tri0(z, y, w), -one);
            return Ok((rhs, vec![step(Rule::TbAntisym, vec![lit(y), lit(z), lit(w)], Rational::one())]));
        }
        if gt(z, w) {
            // y ≻ z ≻ w
            let (u, v) = (y, z);
            let mut rhs = LinComb::zero();
            rhs.add_term(tri0(u, w, v), one.clone());
            rhs.add_term(tri0(v, w, u), -one.clone());
            for (p, q, r) in [(u, v, w), (v, w, u), (w, u, v)] {
                let pq = TElem::brk(p.clone(), q.clone());
                rhs.add_term(TElem::brk(pq.clone(), r.clone()), one.clone());
                rhs.add_assign(&act_t(&pq, r));
            }
            return Ok((drop_zero_triples(rhs), vec![step(Rule::Ply4, vec![lit(u), lit(v), lit(w)], -one)]));
        }
        if let TKind::Triple(s, a, b, c) = y.kind() {
            if s.is_empty() && gt(c, z) {
                let mut rhs = LinComb::zero();
                rhs.add_term(tri0(a, b, &tri0(c, z, w)), one.clone());
                rhs.add_term(tri0(c, &tri0(a, b, z), w), -one.clone());
                rhs.add_term(tri0(c, z, &tri0(a, b, w)), -one.clone());
                let cz = TElem::brk(c.clone(), z.clone());
                rhs.add_term(TElem::triple(vec![cz.clone()], a.clone(), b.clone(), w.clone()), one.clone());
                let word = dalg::tensor_mul(
                    &dalg::lie_word(&dalg::letter(&t_value(a)), &dalg::letter(&t_value(b))),
                    &dalg::letter(&t_value(&cz)),
                );
                rhs.add_scaled(&to_t(&free::act(&word, &t_value(w))), &-one.clone());
                let b5 = vec![lit(a), lit(b), lit(c), lit(z), lit(w)];
                return Ok((drop_zero_triples(rhs), vec![step(Rule::Ply6, b5, -one)]));
            }
        }
        if let TKind::Brk(u, v) = y.kind() {
            if gt(v, z) {
                let (rhs, b4) = ply5_rhs(u, v, z, w);
                return Ok((rhs, vec![step(Rule::Ply5, b4, one)]));
            }
        }
        if let TKind::Brk(u, v) = z.kind() {
            if gt(v, y) {
                let (rhs, b4) = ply5_rhs(u, v, y, w);
                let flip = step(Rule::TbAntisym, vec![lit(y), lit(z), lit(w)], one.clone());
                return Ok((-rhs, vec![flip, step(Rule::Ply5, b4, -one)]));
            }
        }
        Err(NormalizeError::Stuck(t.clone()))
    }
}

/// `[⟦u, v⟧, z, w] = rhs + instance(u, v, z, w)`.
fn ply5_rhs(u: &TElem, v: &TElem, z: &TElem, w: &TElem) -> (LinComb<TElem>, Vec<E>) {
    let one = Rational::one();
    let mut rhs = LinComb::zero();
    rhs.add_term(TElem::triple(vec![], TElem::brk(v.clone(), z.clone()), u.clone(), w.clone()), -one.clone());
    rhs.add_term(TElem::triple(vec![], TElem::brk(z.clone(), u.clone()), v.clone(), w.clone()), -one);
    for (p, q, r) in [(u, v, z), (v, z, u), (z, u, v)] {
        let pqr = TElem::brk(TElem::brk(p.clone(), q.clone()), r.clone());
        rhs.add_assign(&act_t(&pqr, w));
    }
    (drop_zero_triples(rhs), vec![lit(u), lit(v), lit(z), lit(w)])
}

fn is_zero_triple(t: &TElem) -> bool {
    matches!(t.kind(), TKind::Triple(_, y, z, _) if y == z)
}

fn drop_zero_triples(x: LinComb<TElem>) -> LinComb<TElem> {
    x.filter(|t| !is_zero_triple(t))
}

thread_local! {
    static SHARED: RefCell<HashMap<Strategy, Normalizer>> = RefCell::new(HashMap::new());
}

/// Normalizes with a per-thread [`Normalizer`] whose memo persists across calls.
pub fn normalize_with(x: &AElem, strategy: Strategy, fuel: u64) -> Result<NormalForm, NormalizeError> {
    SHARED.with(|m| {
        let mut m = m.borrow_mut();
        let n = m.entry(strategy).or_insert_with(|| Normalizer::new(strategy, fuel));
        n.set_fuel(fuel);
        n.normalize(x)
    })
}

/// Normal form in ℬ with the default strategy and fuel.
pub fn normalize(x: &AElem) -> Result<NormalForm, NormalizeError> {
    normalize_with(x, Strategy::default(), DEFAULT_FUEL)
}

/// Normal form coordinates only.
pub fn nf(x: &AElem) -> Result<LinComb<TElem>, NormalizeError> {
    Ok(normalize(x)?.output)
}
