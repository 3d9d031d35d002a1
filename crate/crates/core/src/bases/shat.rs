//! The bases B̂, S and Ŝ: element type, order ≺_Ŝ, enumeration and conversions.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;
use std::sync::Arc;

use crate::dalg;
use crate::free::{self, AElem};
use crate::lincomb::{bilinear, LinComb};
use crate::orders::{cmp_blocks, BasisOrder};
use crate::osbb::{self, OsbbWord};
use crate::term::{hash_of, Alphabet, Generator, Graded, MagmaKind, MagmaTerm};

#[derive(Clone, PartialEq, Eq)]
pub enum ShatKind {
    Gen(Generator),
    Brk(ShatElem, ShatElem),
    /// `ω ▷ r` with `ω` a nonempty OSBB word and `r` a generator or bracket.
    Graft(OsbbWord<ShatElem>, ShatElem),
}

struct ShatNode {
    kind: ShatKind,
    vc: usize,
    bc: usize,
    hash: u64,
}

/// An element of the basis Ŝ.
#[derive(Clone)]
pub struct ShatElem(Arc<ShatNode>);

impl ShatElem {
    fn build(kind: ShatKind) -> Self {
        let (vc, bc, hash) = match &kind {
            ShatKind::Gen(g) => (1, 0, hash_of(&(0u8, g))),
            ShatKind::Brk(x, y) => (x.0.vc + y.0.vc, 1 + x.0.bc + y.0.bc, hash_of(&(1u8, x.0.hash, y.0.hash))),
            ShatKind::Graft(w, r) => (
                w.letters().map(|l| l.0.vc).sum::<usize>() + r.0.vc,
                w.letters().map(|l| l.0.bc).sum::<usize>() + r.0.bc,
                hash_of(&(2u8, w, r.0.hash)),
            ),
        };
        ShatElem(Arc::new(ShatNode { kind, vc, bc, hash }))
    }

    pub fn gen(g: Generator) -> Self {
        Self::build(ShatKind::Gen(g))
    }

    pub fn brk(x: ShatElem, y: ShatElem) -> Self {
        Self::build(ShatKind::Brk(x, y))
    }

    /// `ω ▷ r`; an empty word returns `r`.
    ///
    /// # Panics
    /// If `r` is a graft.
    pub fn graft(w: OsbbWord<ShatElem>, r: ShatElem) -> Self {
        assert!(r.is_root(), "Ŝ graft root must be a generator or a bracket");
        if w.is_empty() {
            return r;
        }
        Self::build(ShatKind::Graft(w, r))
    }

    pub fn kind(&self) -> &ShatKind {
        &self.0.kind
    }

    pub fn is_root(&self) -> bool {
        !matches!(self.0.kind, ShatKind::Graft(..))
    }

    fn rank(&self) -> u8 {
        match self.0.kind {
            ShatKind::Gen(_) => 0,
            ShatKind::Brk(..) => 1,
            ShatKind::Graft(..) => 2,
        }
    }

    /// The root `r` of `ω ▷ r`, or the element itself.
    pub fn root(&self) -> &ShatElem {
        match &self.0.kind {
            ShatKind::Graft(_, r) => r,
            _ => self,
        }
    }

    /// The word `ω` of `ω ▷ r`, empty for generators and brackets.
    pub fn word(&self) -> OsbbWord<ShatElem> {
        match &self.0.kind {
            ShatKind::Graft(w, _) => w.clone(),
            _ => OsbbWord::empty(),
        }
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Graded for ShatElem {
    fn vertex_count(&self) -> usize {
        self.0.vc
    }
    fn bracket_count(&self) -> usize {
        self.0.bc
    }
}

impl PartialEq for ShatElem {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other) || (self.0.hash == other.0.hash && self.0.kind == other.0.kind)
    }
}

impl Eq for ShatElem {}

impl Hash for ShatElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Storage order; agrees with ≺_Ŝ.
impl Ord for ShatElem {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_shat(self, other)
    }
}

impl PartialOrd for ShatElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BasisOrder for ShatElem {
    fn cmp_basis(&self, other: &Self) -> Ordering {
        cmp_shat(self, other)
    }
}

/// ≺_Ŝ: vertex count; then generator < bracket < graft; generators by ≺_𝒞,
/// brackets by first then second entry, grafts by `|ω|_V`, then ≺_Δ, then root.
pub fn cmp_shat(a: &ShatElem, b: &ShatElem) -> Ordering {
    if a.ptr_eq(b) {
        return Ordering::Equal;
    }
    a.0.vc.cmp(&b.0.vc).then_with(|| a.rank().cmp(&b.rank())).then_with(|| match (&a.0.kind, &b.0.kind) {
        (ShatKind::Gen(g), ShatKind::Gen(h)) => g.cmp(h),
        (ShatKind::Brk(u, v), ShatKind::Brk(x, y)) => cmp_shat(u, x).then_with(|| cmp_shat(v, y)),
        (ShatKind::Graft(w, r), ShatKind::Graft(e, s)) => (a.0.vc - r.0.vc)
            .cmp(&(b.0.vc - s.0.vc))
            .then_with(|| cmp_blocks(&w.views(), &e.views()))
            .then_with(|| cmp_shat(r, s)),
        _ => unreachable!("equal ranks"),
    })
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Expression-grammar form: `sg(..; r)` for one symmetric block, otherwise
/// `tri(w(s(..), lb(y, z), ..), r)`.
impl fmt::Display for ShatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            ShatKind::Gen(g) => f.write_str(g.name()),
            ShatKind::Brk(x, y) => write!(f, "bk({x}, {y})"),
            ShatKind::Graft(w, r) => {
                if let [b] = w.blocks() {
                    if let [x] = &b.sym[..] {
                        return write!(f, "gr({x}; {r})");
                    }
                    f.write_str("sg(")?;
                    write_list(f, &b.sym)?;
                    return write!(f, "; {r})");
                }
                f.write_str("tri(w(")?;
                let mut first = true;
                for b in w.blocks() {
                    if !b.sym.is_empty() {
                        if !first {
                            f.write_str(", ")?;
                        }
                        first = false;
                        f.write_str("s(")?;
                        write_list(f, &b.sym)?;
                        f.write_str(")")?;
                    }
                    if let Some((y, z)) = &b.brk {
                        if !first {
                            f.write_str(", ")?;
                        }
                        first = false;
                        write!(f, "lb({y}, {z})")?;
                    }
                }
                write!(f, "), {r})")
            }
        }
    }
}

impl fmt::Debug for ShatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

thread_local! {
    static FROM_SHAT: RefCell<HashMap<ShatElem, AElem>> = RefCell::new(HashMap::new());
    static TO_SHAT: RefCell<HashMap<MagmaTerm, LinComb<ShatElem>>> = RefCell::new(HashMap::new());
}

/// Expansion of a Ŝ element in B̂.
pub fn shat_value(s: &ShatElem) -> AElem {
    if let ShatKind::Gen(g) = s.kind() {
        return LinComb::basis(MagmaTerm::gen(g.clone()));
    }
    if let Some(v) = FROM_SHAT.with(|m| m.borrow().get(s).cloned()) {
        return v;
    }
    let out = match s.kind() {
        ShatKind::Gen(_) => unreachable!(),
        ShatKind::Brk(x, y) => free::brk(&shat_value(x), &shat_value(y)),
        ShatKind::Graft(w, r) => {
            let root = shat_value(r);
            let words = osbb::osbb_expand(w);
            let mut out = LinComb::zero();
            for (word, c) in words.iter() {
                let letters: Vec<AElem> = word.iter().map(shat_value).collect();
                let planar = dalg::letters_word(&letters);
                out.add_scaled(
                    &bilinear(&planar, &root, |bw, rt| LinComb::basis(MagmaTerm::graft(bw.clone(), rt.clone()))),
                    c,
                );
            }
            out
        }
    };
    FROM_SHAT.with(|m| m.borrow_mut().insert(s.clone(), out.clone()));
    out
}

/// Expansion of a Ŝ combination in B̂.
pub fn from_shat(x: &LinComb<ShatElem>) -> AElem {
    x.map_linear(shat_value)
}

/// Ŝ coordinates of one B̂ tree.
pub fn term_to_shat(t: &MagmaTerm) -> LinComb<ShatElem> {
    if let MagmaKind::Gen(g) = t.kind() {
        return LinComb::basis(ShatElem::gen(g.clone()));
    }
    if let Some(v) = TO_SHAT.with(|m| m.borrow().get(t).cloned()) {
        return v;
    }
    let out = match t.kind() {
        MagmaKind::Gen(_) => unreachable!(),
        MagmaKind::Brk(l, r) => {
            bilinear(&term_to_shat(l), &term_to_shat(r), |x, y| LinComb::basis(ShatElem::brk(x.clone(), y.clone())))
        }
        MagmaKind::Graft(bs, r) => {
            let root = term_to_shat(r);
            let letters: Vec<LinComb<ShatElem>> = bs.iter().map(term_to_shat).collect();
            let words = dalg::letters_word(&letters);
            let decomposed = osbb::osbb_decompose(&words).expect("OSBB decomposition exists for every word");
            bilinear(&decomposed, &root, |w, rt| LinComb::basis(ShatElem::graft(w.clone(), rt.clone())))
        }
    };
    TO_SHAT.with(|m| m.borrow_mut().insert(t.clone(), out.clone()));
    out
}

/// Ŝ coordinates of a B̂ combination.
pub fn to_shat(x: &AElem) -> LinComb<ShatElem> {
    x.map_linear(term_to_shat)
}

fn multisets<T: Clone + Graded>(pool: &[T], start: usize, weight: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
    if weight == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..pool.len() {
        let w = pool[i].vertex_count();
        if w > weight {
            continue;
        }
        cur.push(pool[i].clone());
        multisets(pool, i, weight - w, cur, out);
        cur.pop();
    }
}

/// All multisets drawn from `pool[start..]` with total vertex count `weight`,
/// each listed in pool order.
pub(crate) fn multisets_of_weight<T: Clone + Graded>(pool: &[T], start: usize, weight: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    multisets(pool, start, weight, &mut Vec::new(), &mut out);
    out
}

#[derive(Default)]
struct ShatTable {
    levels: Vec<Vec<ShatElem>>,
    words: HashMap<usize, Rc<Vec<OsbbWord<ShatElem>>>>,
}

thread_local! {
    static SHAT_TABLES: RefCell<HashMap<(Alphabet, bool), Rc<RefCell<ShatTable>>>> = RefCell::new(HashMap::new());
    static BHAT_TABLES: RefCell<HashMap<Alphabet, Rc<RefCell<Vec<Vec<MagmaTerm>>>>>> = RefCell::new(HashMap::new());
}

fn shat_words(table: &mut ShatTable, m: usize) -> Rc<Vec<OsbbWord<ShatElem>>> {
    if let Some(w) = table.words.get(&m) {
        return w.clone();
    }
    let pool: Vec<ShatElem> = table.levels[1..=m].iter().flatten().cloned().collect();
    let mut out = Vec::new();
    for ms in multisets_of_weight(&pool, 0, m) {
        let mut distinct: Vec<ShatElem> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for x in ms {
            if distinct.last() == Some(&x) {
                *counts.last_mut().unwrap() += 1;
            } else {
                distinct.push(x);
                counts.push(1);
            }
        }
        for rw in osbb::enumerate_rank_words(&counts) {
            out.push(rw.map(|&r| distinct[r as usize].clone()));
        }
    }
    let rc = Rc::new(out);
    table.words.insert(m, rc.clone());
    rc
}

fn shat_levels(alphabet: &Alphabet, brackets: bool, n: usize) -> Vec<ShatElem> {
    let table = SHAT_TABLES.with(|t| t.borrow_mut().entry((alphabet.clone(), brackets)).or_default().clone());
    let mut table = table.borrow_mut();
    if table.levels.is_empty() {
        table.levels.push(Vec::new());
        table.levels.push(alphabet.gens().iter().cloned().map(ShatElem::gen).collect());
    }
    while table.levels.len() <= n {
        let k = table.levels.len();
        let mut level = Vec::new();
        if brackets {
            for i in 1..k {
                for u in &table.levels[i] {
                    for v in &table.levels[k - i] {
                        level.push(ShatElem::brk(u.clone(), v.clone()));
                    }
                }
            }
        }
        for rk in 1..k {
            let roots: Vec<ShatElem> = table.levels[rk].iter().filter(|r| r.is_root()).cloned().collect();
            if roots.is_empty() {
                continue;
            }
            let words = shat_words(&mut table, k - rk);
            for w in words.iter() {
                for r in &roots {
                    level.push(ShatElem::graft(w.clone(), r.clone()));
                }
            }
        }
        level.sort_by(cmp_shat);
        table.levels.push(level);
    }
    table.levels[n].clone()
}

/// Ŝ elements with `n` vertices, in ≺_Ŝ order.
pub fn enumerate_shat(n: usize, alphabet: &Alphabet) -> Vec<ShatElem> {
    if n == 0 {
        return Vec::new();
    }
    shat_levels(alphabet, true, n)
}

/// Elements of the one-operator basis S with `n` vertices, in ≺_S order.
pub fn enumerate_s(n: usize, alphabet: &Alphabet) -> Vec<ShatElem> {
    if n == 0 {
        return Vec::new();
    }
    shat_levels(alphabet, false, n)
}

fn compositions(levels: &[Vec<MagmaTerm>], m: usize, cur: &mut Vec<MagmaTerm>, out: &mut Vec<Vec<MagmaTerm>>) {
    if m == 0 {
        out.push(cur.clone());
        return;
    }
    for k in 1..=m {
        for t in &levels[k] {
            cur.push(t.clone());
            compositions(levels, m - k, cur, out);
            cur.pop();
        }
    }
}

/// B̂ trees with `n` vertices, in canonical structural order.
pub fn enumerate_bhat(n: usize, alphabet: &Alphabet) -> Vec<MagmaTerm> {
    if n == 0 {
        return Vec::new();
    }
    let table = BHAT_TABLES.with(|t| t.borrow_mut().entry(alphabet.clone()).or_default().clone());
    let mut levels = table.borrow_mut();
    if levels.is_empty() {
        levels.push(Vec::new());
        levels.push(alphabet.gens().iter().cloned().map(MagmaTerm::gen).collect());
    }
    while levels.len() <= n {
        let k = levels.len();
        let mut level = Vec::new();
        for i in 1..k {
            for u in &levels[i] {
                for v in &levels[k - i] {
                    level.push(MagmaTerm::brk(u.clone(), v.clone()));
                }
            }
        }
        for rk in 1..k {
            let mut seqs = Vec::new();
            compositions(&levels, k - rk, &mut Vec::new(), &mut seqs);
            for r in levels[rk].iter().filter(|r| r.is_root()) {
                for s in &seqs {
                    level.push(MagmaTerm::graft(s.clone(), r.clone()));
                }
            }
        }
        level.sort();
        levels.push(level);
    }
    levels[n].clone()
}

/// `β_n = 2^{n−1} |𝒞|^n C(2n−2, n−1) / n`.
pub fn beta(n: usize, gens: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let n = n as u128;
    let mut binom: u128 = 1;
    for i in 0..(n - 1) {
        binom = binom * (2 * n - 2 - i) / (i + 1);
    }
    (1u128 << (n - 1)) * (gens as u128).pow(n as u32) * binom / n
}

/// `|𝒞|^n C(2n−2, n−1) / n`, the size of the n-vertex part of S.
pub fn catalan_count(n: usize, gens: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    beta(n, gens) >> (n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_formulas() {
        assert_eq!((1..=6).map(|n| beta(n, 1)).collect::<Vec<_>>(), vec![1, 2, 8, 40, 224, 1344]);
        assert_eq!((1..=5).map(|n| catalan_count(n, 1)).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14]);
        assert_eq!(beta(4, 2), 640);
    }

    #[test]
    fn small_levels() {
        let al = Alphabet::first(1);
        let two = enumerate_shat(2, &al);
        assert_eq!(two.len(), 2);
        assert!(matches!(two[0].kind(), ShatKind::Brk(..)));
        assert_eq!(enumerate_bhat(3, &al).len(), 8);
        assert_eq!(enumerate_s(4, &al).len(), 5);
    }
}
