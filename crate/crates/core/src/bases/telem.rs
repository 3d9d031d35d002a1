//! The basis 𝒯 generated from triple-brackets, the automorphism φ, and the order ≺_𝒯.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;
use std::sync::Arc;

use crate::bases::shat::{self, cmp_shat, multisets_of_weight, to_shat, ShatElem, ShatKind};
use crate::free::{self, AElem};
use crate::lincomb::{LinComb, Rational};
use crate::orders::{cmp_blocks, BasisOrder, BlockRef};
use crate::osbb::{Block, OsbbWord};
use crate::term::{hash_of, Alphabet, Generator, Graded, MagmaTerm};

#[derive(Clone, PartialEq, Eq)]
pub enum TKind {
    Gen(Generator),
    Brk(TElem, TElem),
    /// `𝔰(sym) ▷ root`, `sym` nonempty, root a generator or bracket.
    SymGraft(Vec<TElem>, TElem),
    /// `𝔰(sym) ▷ [y, z, w]`, `sym` possibly empty.
    Triple(Vec<TElem>, TElem, TElem, TElem),
}

struct TNode {
    kind: TKind,
    vc: usize,
    bc: usize,
    hash: u64,
}

/// An element of 𝒯, or more generally a structural term of the same shape.
#[derive(Clone)]
pub struct TElem(Arc<TNode>);

fn sort_desc(v: &mut [TElem]) {
    v.sort_by(|a, b| cmp_t(b, a));
}

impl TElem {
    fn build(kind: TKind) -> Self {
        let (vc, bc, hash) = match &kind {
            TKind::Gen(g) => (1, 0, hash_of(&(0u8, g))),
            TKind::Brk(x, y) => (x.0.vc + y.0.vc, 1 + x.0.bc + y.0.bc, hash_of(&(1u8, x.0.hash, y.0.hash))),
            TKind::SymGraft(s, r) => (
                s.iter().map(|x| x.0.vc).sum::<usize>() + r.0.vc,
                s.iter().map(|x| x.0.bc).sum::<usize>() + r.0.bc,
                hash_of(&(2u8, s.iter().map(|x| x.0.hash).collect::<Vec<_>>(), r.0.hash)),
            ),
            TKind::Triple(s, y, z, w) => (
                s.iter().map(|x| x.0.vc).sum::<usize>() + y.0.vc + z.0.vc + w.0.vc,
                s.iter().map(|x| x.0.bc).sum::<usize>() + y.0.bc + z.0.bc + w.0.bc,
                hash_of(&(3u8, s.iter().map(|x| x.0.hash).collect::<Vec<_>>(), y.0.hash, z.0.hash, w.0.hash)),
            ),
        };
        TElem(Arc::new(TNode { kind, vc, bc, hash }))
    }

    pub fn gen(g: Generator) -> Self {
        Self::build(TKind::Gen(g))
    }

    pub fn brk(x: TElem, y: TElem) -> Self {
        Self::build(TKind::Brk(x, y))
    }

    /// `𝔰(sym) ▷ root`; an empty `sym` returns the root.
    ///
    /// # Panics
    /// If the root is not a generator or bracket.
    pub fn sym_graft(mut sym: Vec<TElem>, root: TElem) -> Self {
        assert!(root.is_root(), "symmetric graft root must be a generator or a bracket");
        if sym.is_empty() {
            return root;
        }
        sort_desc(&mut sym);
        Self::build(TKind::SymGraft(sym, root))
    }

    /// `𝔰(sym) ▷ [y, z, w]`.
    pub fn triple(mut sym: Vec<TElem>, y: TElem, z: TElem, w: TElem) -> Self {
        sort_desc(&mut sym);
        Self::build(TKind::Triple(sym, y, z, w))
    }

    pub fn kind(&self) -> &TKind {
        &self.0.kind
    }

    pub fn is_root(&self) -> bool {
        matches!(self.0.kind, TKind::Gen(_) | TKind::Brk(..))
    }

    /// Membership in 𝒯₀: everything except triples with empty symmetric part.
    pub fn is_t0(&self) -> bool {
        !matches!(&self.0.kind, TKind::Triple(s, ..) if s.is_empty())
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn rank(&self) -> u8 {
        match self.0.kind {
            TKind::Gen(_) => 0,
            TKind::Brk(..) => 1,
            _ => 2,
        }
    }

    /// Blocks and root of the φ⁻¹ image, read off structurally.
    fn graft_view(&self) -> (Vec<BlockRef<'_, TElem>>, &TElem) {
        let mut blocks = Vec::new();
        let mut cur = self;
        loop {
            match &cur.0.kind {
                TKind::SymGraft(s, r) => {
                    blocks.push(BlockRef { sym: s, brk: None });
                    return (blocks, r);
                }
                TKind::Triple(s, y, z, w) => {
                    blocks.push(BlockRef { sym: s, brk: Some((y, z)) });
                    if w.is_root() {
                        blocks.push(BlockRef { sym: &[], brk: None });
                        return (blocks, w);
                    }
                    cur = w;
                }
                _ => unreachable!("graft view of a root"),
            }
        }
    }
}

impl Graded for TElem {
    fn vertex_count(&self) -> usize {
        self.0.vc
    }
    fn bracket_count(&self) -> usize {
        self.0.bc
    }
}

impl PartialEq for TElem {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other) || (self.0.hash == other.0.hash && self.0.kind == other.0.kind)
    }
}

impl Eq for TElem {}

impl Hash for TElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Storage order; agrees with ≺_𝒯.
impl Ord for TElem {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_t(self, other)
    }
}

impl PartialOrd for TElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BasisOrder for TElem {
    fn cmp_basis(&self, other: &Self) -> Ordering {
        cmp_t(self, other)
    }
}

/// ≺_𝒯, the pull-back of ≺_Ŝ along φ⁻¹, computed without building the preimages.
pub fn cmp_t(a: &TElem, b: &TElem) -> Ordering {
    if a.ptr_eq(b) {
        return Ordering::Equal;
    }
    a.0.vc.cmp(&b.0.vc).then_with(|| a.rank().cmp(&b.rank())).then_with(|| match (&a.0.kind, &b.0.kind) {
        (TKind::Gen(g), TKind::Gen(h)) => g.cmp(h),
        (TKind::Brk(u, v), TKind::Brk(x, y)) => cmp_t(u, x).then_with(|| cmp_t(v, y)),
        _ => {
            let (wa, ra) = a.graft_view();
            let (wb, rb) = b.graft_view();
            (a.0.vc - ra.0.vc)
                .cmp(&(b.0.vc - rb.0.vc))
                .then_with(|| cmp_blocks(&wa, &wb))
                .then_with(|| cmp_t(ra, rb))
        }
    })
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[TElem]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for TElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            TKind::Gen(g) => f.write_str(g.name()),
            TKind::Brk(x, y) => write!(f, "bk({x}, {y})"),
            TKind::SymGraft(s, r) if s.len() == 1 => write!(f, "gr({}; {r})", s[0]),
            TKind::SymGraft(s, r) => {
                f.write_str("sg(")?;
                write_list(f, s)?;
                write!(f, "; {r})")
            }
            TKind::Triple(s, y, z, w) if s.is_empty() => write!(f, "tb({y}, {z}, {w})"),
            TKind::Triple(s, y, z, w) if s.len() == 1 => write!(f, "tri({}, tb({y}, {z}, {w}))", s[0]),
            TKind::Triple(s, y, z, w) => {
                f.write_str("tri(s(")?;
                write_list(f, s)?;
                write!(f, "), tb({y}, {z}, {w}))")
            }
        }
    }
}

impl fmt::Debug for TElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// φ on Ŝ.
pub fn phi(s: &ShatElem) -> TElem {
    match s.kind() {
        ShatKind::Gen(g) => TElem::gen(g.clone()),
        ShatKind::Brk(x, y) => TElem::brk(phi(x), phi(y)),
        ShatKind::Graft(w, r) => {
            let blocks = w.blocks();
            let first = &blocks[0];
            let sym: Vec<TElem> = first.sym.iter().map(phi).collect();
            match &first.brk {
                None => TElem::sym_graft(sym, phi(r)),
                Some((y, z)) => {
                    let rest = OsbbWord::from_blocks_unchecked(blocks[1..].to_vec());
                    let tail = if rest.is_empty() { phi(r) } else { phi(&ShatElem::graft(rest, r.clone())) };
                    TElem::triple(sym, phi(y), phi(z), tail)
                }
            }
        }
    }
}

/// φ⁻¹ on 𝒯.
pub fn phi_inv(t: &TElem) -> ShatElem {
    match t.kind() {
        TKind::Gen(g) => ShatElem::gen(g.clone()),
        TKind::Brk(x, y) => ShatElem::brk(phi_inv(x), phi_inv(y)),
        TKind::SymGraft(s, r) => {
            let sym: Vec<ShatElem> = s.iter().map(phi_inv).collect();
            ShatElem::graft(OsbbWord::from_blocks_unchecked(vec![Block { sym, brk: None }]), phi_inv(r))
        }
        TKind::Triple(s, y, z, w) => {
            let sym: Vec<ShatElem> = s.iter().map(phi_inv).collect();
            let tail = phi_inv(w);
            let mut blocks = vec![Block { sym, brk: Some((phi_inv(y), phi_inv(z))) }];
            blocks.extend(tail.word().blocks().iter().cloned());
            ShatElem::graft(OsbbWord::from_blocks_unchecked(blocks), tail.root().clone())
        }
    }
}

thread_local! {
    static T_VALUE: RefCell<HashMap<TElem, AElem>> = RefCell::new(HashMap::new());
    static T_SHAT: RefCell<HashMap<TElem, LinComb<ShatElem>>> = RefCell::new(HashMap::new());
    static SHAT_T: RefCell<HashMap<ShatElem, LinComb<TElem>>> = RefCell::new(HashMap::new());
}

/// Expansion of a 𝒯-shaped term in B̂.
pub fn t_value(t: &TElem) -> AElem {
    if let TKind::Gen(g) = t.kind() {
        return LinComb::basis(MagmaTerm::gen(g.clone()));
    }
    if let Some(v) = T_VALUE.with(|m| m.borrow().get(t).cloned()) {
        return v;
    }
    let out = match t.kind() {
        TKind::Gen(_) => unreachable!(),
        TKind::Brk(x, y) => free::brk(&t_value(x), &t_value(y)),
        TKind::SymGraft(s, r) => {
            let xs: Vec<AElem> = s.iter().map(t_value).collect();
            free::sym_act(&xs, &t_value(r))
        }
        TKind::Triple(s, y, z, w) => {
            let xs: Vec<AElem> = s.iter().map(t_value).collect();
            free::sym_act(&xs, &free::tb(&t_value(y), &t_value(z), &t_value(w)))
        }
    };
    T_VALUE.with(|m| m.borrow_mut().insert(t.clone(), out.clone()));
    out
}

/// Expansion of a 𝒯 combination in B̂.
pub fn from_t(x: &LinComb<TElem>) -> AElem {
    x.map_linear(t_value)
}

fn t_in_shat(t: &TElem) -> LinComb<ShatElem> {
    if let Some(v) = T_SHAT.with(|m| m.borrow().get(t).cloned()) {
        return v;
    }
    let out = to_shat(&t_value(t));
    T_SHAT.with(|m| m.borrow_mut().insert(t.clone(), out.clone()));
    out
}

/// 𝒯 coordinates of a Ŝ element, by peeling the ≺_Ŝ-largest term.
pub fn shat_to_t(s: &ShatElem) -> LinComb<TElem> {
    if let ShatKind::Gen(g) = s.kind() {
        return LinComb::basis(TElem::gen(g.clone()));
    }
    if let Some(v) = SHAT_T.with(|m| m.borrow().get(s).cloned()) {
        return v;
    }
    let image = phi(s);
    let mut out = LinComb::basis(image.clone());
    let expansion = t_in_shat(&image);
    for (other, c) in expansion.iter() {
        if other == s {
            debug_assert_eq!(*c, Rational::from_integer(1.into()), "φ is unitriangular");
            continue;
        }
        debug_assert_eq!(cmp_shat(other, s), Ordering::Less, "φ is triangular");
        out.add_scaled(&shat_to_t(other), &-c.clone());
    }
    SHAT_T.with(|m| m.borrow_mut().insert(s.clone(), out.clone()));
    out
}

/// 𝒯 coordinates of a B̂ combination.
pub fn to_t(x: &AElem) -> LinComb<TElem> {
    to_shat(x).map_linear(shat_to_t)
}

/// φ extended linearly through Ŝ coordinates.
pub fn phi_on_a(x: &AElem) -> LinComb<TElem> {
    to_shat(x).map_basis(phi)
}

thread_local! {
    static T_TABLES: RefCell<HashMap<Alphabet, Rc<RefCell<Vec<Vec<TElem>>>>>> = RefCell::new(HashMap::new());
}

/// 𝒯 elements with `n` vertices built directly from the definition, in ≺_𝒯 order.
pub fn enumerate_t(n: usize, alphabet: &Alphabet) -> Vec<TElem> {
    if n == 0 {
        return Vec::new();
    }
    let table = T_TABLES.with(|t| t.borrow_mut().entry(alphabet.clone()).or_default().clone());
    let mut levels = table.borrow_mut();
    if levels.is_empty() {
        levels.push(Vec::new());
        levels.push(alphabet.gens().iter().cloned().map(TElem::gen).collect());
    }
    while levels.len() <= n {
        let k = levels.len();
        let mut level = Vec::new();
        for i in 1..k {
            for u in &levels[i] {
                for v in &levels[k - i] {
                    level.push(TElem::brk(u.clone(), v.clone()));
                }
            }
        }
        let pool: Vec<TElem> = levels[1..k].iter().flatten().cloned().collect();
        for rk in 1..k {
            for sym in multisets_of_weight(&pool, 0, k - rk) {
                for r in levels[rk].iter().filter(|r| r.is_root()) {
                    level.push(TElem::sym_graft(sym.clone(), r.clone()));
                }
            }
        }
        for (iz, z) in pool.iter().enumerate() {
            for y in pool.iter().skip(iz + 1) {
                debug_assert_eq!(cmp_t(y, z), Ordering::Greater);
                let used = y.vertex_count() + z.vertex_count();
                if used + 1 > k {
                    continue;
                }
                for wk in 1..=k - used {
                    for sym in multisets_of_weight(&pool, iz, k - used - wk) {
                        for w in &levels[wk] {
                            level.push(TElem::triple(sym.clone(), y.clone(), z.clone(), w.clone()));
                        }
                    }
                }
            }
        }
        level.sort_by(cmp_t);
        levels.push(level);
    }
    levels[n].clone()
}

/// Ŝ elements mapped through φ, in ≺_𝒯 order.
pub fn phi_image(n: usize, alphabet: &Alphabet) -> Vec<TElem> {
    shat::enumerate_shat(n, alphabet).iter().map(phi).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_round_trip_small() {
        let al = Alphabet::first(1);
        for n in 1..=4 {
            for s in shat::enumerate_shat(n, &al) {
                assert_eq!(phi_inv(&phi(&s)), s);
            }
        }
    }

    #[test]
    fn t_counts_small() {
        let al = Alphabet::first(1);
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_t(n, &al).len()).collect();
        assert_eq!(counts, vec![1, 2, 8, 40]);
    }
}
