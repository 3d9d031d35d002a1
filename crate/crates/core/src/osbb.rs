//! Ordered symmetric-bracket-block (OSBB) words: expansion into plain tensor
//! words and the unique OSBB decomposition of any word.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::dalg::{self, DElem};
use crate::lincomb::{LinComb, Rational};
use crate::linalg::{self, SolveError};
use crate::orders::{cmp_blocks, BasisOrder, BlockRef};

/// One block `𝔰(sym) · [y, z]`, or the closing `𝔰(sym)` when `brk` is absent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block<B> {
    /// Letters sorted descending under the basis order.
    pub sym: Vec<B>,
    pub brk: Option<(B, B)>,
}

impl<B> Block<B> {
    pub fn len(&self) -> usize {
        self.sym.len() + if self.brk.is_some() { 2 } else { 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn view(&self) -> BlockRef<'_, B> {
        BlockRef { sym: &self.sym, brk: self.brk.as_ref().map(|(y, z)| (y, z)) }
    }
}

impl<B: BasisOrder + Clone> Block<B> {
    pub fn symmetric(mut sym: Vec<B>) -> Self {
        sym.sort_by(|a, b| b.cmp_basis(a));
        Block { sym, brk: None }
    }

    pub fn bracket(mut sym: Vec<B>, y: B, z: B) -> Self {
        sym.sort_by(|a, b| b.cmp_basis(a));
        Block { sym, brk: Some((y, z)) }
    }

    /// `y ≻ z` and every symmetric letter `⪰ z`.
    pub fn is_ordered(&self) -> bool {
        let sorted = self.sym.windows(2).all(|w| w[0].cmp_basis(&w[1]) != Ordering::Less);
        sorted
            && match &self.brk {
                None => true,
                Some((y, z)) => {
                    y.cmp_basis(z) == Ordering::Greater && self.sym.iter().all(|x| x.cmp_basis(z) != Ordering::Less)
                }
            }
    }
}

/// A sequence of bracket blocks closed by one symmetric block.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OsbbWord<B> {
    blocks: Vec<Block<B>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OsbbError {
    #[error("malformed OSBB word: {0}")]
    Malformed(&'static str),
    #[error("OSBB component for letter pattern {pattern:?} has {osbb} OSBB words but {words} arrangements")]
    NotSquare { pattern: Vec<usize>, osbb: usize, words: usize },
    #[error("OSBB component solve failed: {0}")]
    Solve(#[from] SolveError),
}

impl<B: BasisOrder + Clone> OsbbWord<B> {
    /// Validates block structure and ordering.
    pub fn new(blocks: Vec<Block<B>>) -> Result<Self, OsbbError> {
        let w = OsbbWord { blocks };
        match w.blocks.split_last() {
            None => return Err(OsbbError::Malformed("no blocks")),
            Some((last, init)) => {
                if last.brk.is_some() {
                    return Err(OsbbError::Malformed("last block carries a bracket"));
                }
                if init.iter().any(|b| b.brk.is_none()) {
                    return Err(OsbbError::Malformed("inner block without a bracket"));
                }
            }
        }
        if !w.blocks.iter().all(Block::is_ordered) {
            return Err(OsbbError::Malformed("block violates the ordering conditions"));
        }
        Ok(w)
    }

    /// The word `𝔰(letters)`.
    pub fn symmetric(letters: Vec<B>) -> Self {
        OsbbWord { blocks: vec![Block::symmetric(letters)] }
    }
}

impl<B> OsbbWord<B> {
    /// Builds a word without validation; callers guarantee the invariants.
    pub fn from_blocks_unchecked(blocks: Vec<Block<B>>) -> Self {
        OsbbWord { blocks }
    }

    pub fn empty() -> Self {
        OsbbWord { blocks: vec![Block { sym: Vec::new(), brk: None }] }
    }

    pub fn blocks(&self) -> &[Block<B>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn letters(&self) -> impl Iterator<Item = &B> {
        self.blocks.iter().flat_map(|b| b.sym.iter().chain(b.brk.iter().flat_map(|(y, z)| [y, z])))
    }

    pub fn views(&self) -> Vec<BlockRef<'_, B>> {
        self.blocks.iter().map(Block::view).collect()
    }

    pub fn map<C>(&self, mut f: impl FnMut(&B) -> C) -> OsbbWord<C> {
        OsbbWord {
            blocks: self
                .blocks
                .iter()
                .map(|b| Block { sym: b.sym.iter().map(&mut f).collect(), brk: b.brk.as_ref().map(|(y, z)| (f(y), f(z))) })
                .collect(),
        }
    }
}

impl<B: fmt::Debug> fmt::Debug for OsbbWord<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "s{:?}", b.sym)?;
            if let Some((y, z)) = &b.brk {
                write!(f, "[{y:?},{z:?}]")?;
            }
        }
        Ok(())
    }
}

/// Expression-grammar form `w(s(..), lb(y, z), .., s(..))`; empty symmetric parts are omitted.
impl<B: fmt::Display> fmt::Display for OsbbWord<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for b in &self.blocks {
            if !b.sym.is_empty() {
                let xs: Vec<String> = b.sym.iter().map(|x| x.to_string()).collect();
                parts.push(format!("s({})", xs.join(", ")));
            }
            if let Some((y, z)) = &b.brk {
                parts.push(format!("lb({y}, {z})"));
            }
        }
        write!(f, "w({})", parts.join(", "))
    }
}

/// ≺_Δ.
pub fn cmp_delta<B: BasisOrder>(a: &OsbbWord<B>, b: &OsbbWord<B>) -> Ordering {
    cmp_blocks(&a.views(), &b.views())
}

fn expand_block<B: Ord + Clone>(b: &Block<B>) -> DElem<B> {
    let s = dalg::symmetrize_word(&b.sym);
    match &b.brk {
        None => s,
        Some((y, z)) => {
            let br = dalg::lie_word(&LinComb::basis(vec![y.clone()]), &LinComb::basis(vec![z.clone()]));
            dalg::tensor_mul(&s, &br)
        }
    }
}

/// Expands symmetrizers and commutators into plain words.
pub fn osbb_expand<B: Ord + Clone>(w: &OsbbWord<B>) -> DElem<B> {
    w.blocks.iter().fold(dalg::unit(), |acc, b| dalg::tensor_mul(&acc, &expand_block(b)))
}

/// Linear extension of [`osbb_expand`].
pub fn osbb_expand_comb<B: Ord + Clone>(x: &LinComb<OsbbWord<B>>) -> DElem<B> {
    x.map_linear(osbb_expand)
}

/// All OSBB words over ranks `0..counts.len()` using exactly `counts[r]` copies of rank `r`.
pub fn enumerate_rank_words(counts: &[usize]) -> Vec<OsbbWord<u8>> {
    fn sym_of(counts: &[usize]) -> Vec<u8> {
        let mut v = Vec::new();
        for r in (0..counts.len()).rev() {
            v.extend(std::iter::repeat(r as u8).take(counts[r]));
        }
        v
    }
    fn rec(counts: &mut Vec<usize>, prefix: &mut Vec<Block<u8>>, out: &mut Vec<OsbbWord<u8>>) {
        let mut blocks = prefix.clone();
        blocks.push(Block { sym: sym_of(counts), brk: None });
        out.push(OsbbWord { blocks });
        let k = counts.len();
        for z in 0..k {
            if counts[z] == 0 {
                continue;
            }
            for y in z + 1..k {
                if counts[y] == 0 {
                    continue;
                }
                counts[y] -= 1;
                counts[z] -= 1;
                let mut take = vec![0usize; k];
                subsets(counts, &mut take, z, z, prefix, y as u8, z as u8, out);
                counts[y] += 1;
                counts[z] += 1;
            }
        }
    }
    #[allow(clippy::too_many_arguments)]
    fn subsets(
        counts: &mut Vec<usize>,
        take: &mut Vec<usize>,
        r: usize,
        z: usize,
        prefix: &mut Vec<Block<u8>>,
        y: u8,
        zz: u8,
        out: &mut Vec<OsbbWord<u8>>,
    ) {
        if r == counts.len() {
            prefix.push(Block { sym: sym_of(take), brk: Some((y, zz)) });
            let saved = counts.clone();
            for i in z..counts.len() {
                counts[i] -= take[i];
            }
            rec(counts, prefix, out);
            *counts = saved;
            prefix.pop();
            return;
        }
        for t in 0..=counts[r] {
            take[r] = t;
            subsets(counts, take, r + 1, z, prefix, y, zz, out);
        }
        take[r] = 0;
    }
    let mut out = Vec::new();
    rec(&mut counts.to_vec(), &mut Vec::new(), &mut out);
    out
}

struct Component {
    words: HashMap<Vec<u8>, usize>,
    /// `decomp[i]`: OSBB decomposition of the `i`-th arrangement.
    decomp: Vec<LinComb<OsbbWord<u8>>>,
}

fn build_component(counts: &[usize]) -> Result<Component, OsbbError> {
    let osbbs = enumerate_rank_words(counts);
    let mut letters = Vec::new();
    for (r, &c) in counts.iter().enumerate() {
        letters.extend(std::iter::repeat(r as u8).take(c));
    }
    let arrangements = dalg::distinct_permutations(&letters);
    if arrangements.len() != osbbs.len() {
        return Err(OsbbError::NotSquare { pattern: counts.to_vec(), osbb: osbbs.len(), words: arrangements.len() });
    }
    let n = arrangements.len();
    let index: HashMap<Vec<u8>, usize> = arrangements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = vec![vec![Rational::from_integer(0.into()); n]; n];
    for (j, o) in osbbs.iter().enumerate() {
        for (w, c) in osbb_expand(o).iter() {
            m[index[w]][j] = c.clone();
        }
    }
    let inv = linalg::inverse(&m)?;
    let decomp = (0..n)
        .map(|wi| (0..n).filter(|&j| inv[j][wi] != Rational::from_integer(0.into())).map(|j| (osbbs[j].clone(), inv[j][wi].clone())).collect())
        .collect();
    Ok(Component { words: index, decomp })
}

thread_local! {
    static COMPONENTS: RefCell<HashMap<Vec<usize>, Rc<Component>>> = RefCell::new(HashMap::new());
}

fn component(counts: &[usize]) -> Result<Rc<Component>, OsbbError> {
    if let Some(c) = COMPONENTS.with(|m| m.borrow().get(counts).cloned()) {
        return Ok(c);
    }
    let c = Rc::new(build_component(counts)?);
    COMPONENTS.with(|m| m.borrow_mut().insert(counts.to_vec(), c.clone()));
    Ok(c)
}

/// Unique OSBB decomposition of a single plain word.
pub fn osbb_decompose_word<B: BasisOrder + Ord + Clone>(w: &[B]) -> Result<LinComb<OsbbWord<B>>, OsbbError> {
    if w.is_empty() {
        return Ok(LinComb::basis(OsbbWord::empty()));
    }
    let mut distinct: Vec<B> = w.to_vec();
    distinct.sort_by(|a, b| a.cmp_basis(b));
    distinct.dedup_by(|a, b| a.cmp_basis(b) == Ordering::Equal);
    let rank_of = |x: &B| distinct.binary_search_by(|d| d.cmp_basis(x)).expect("letter present") as u8;
    let ranks: Vec<u8> = w.iter().map(rank_of).collect();
    let mut counts = vec![0usize; distinct.len()];
    for &r in &ranks {
        counts[r as usize] += 1;
    }
    let comp = component(&counts)?;
    let d = &comp.decomp[comp.words[&ranks]];
    Ok(d.map_basis(|o| o.map(|&r| distinct[r as usize].clone())))
}

/// Linear extension of [`osbb_decompose_word`].
pub fn osbb_decompose<B: BasisOrder + Ord + Clone>(x: &DElem<B>) -> Result<LinComb<OsbbWord<B>>, OsbbError> {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        out.add_scaled(&osbb_decompose_word(w)?, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::rat;

    #[test]
    fn two_letter_solve() {
        // x ≻ y: xy = 𝔰(xy) + ½[x,y]
        let d = osbb_decompose_word(&[1u8, 0]).unwrap();
        let s = OsbbWord::symmetric(vec![1u8, 0]);
        let b = OsbbWord::new(vec![Block::bracket(vec![], 1u8, 0), Block::symmetric(vec![])]).unwrap();
        assert_eq!(d.coeff(&s), rat(1, 1));
        assert_eq!(d.coeff(&b), rat(1, 2));
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn component_counts_are_multinomial() {
        assert_eq!(enumerate_rank_words(&[1, 1, 1]).len(), 6);
        assert_eq!(enumerate_rank_words(&[2, 1]).len(), 3);
        assert_eq!(enumerate_rank_words(&[1, 1, 1, 1]).len(), 24);
        assert_eq!(enumerate_rank_words(&[2, 2]).len(), 6);
        assert_eq!(enumerate_rank_words(&[1, 1, 1, 1, 1]).len(), 120);
    }

    #[test]
    fn mixed_expansion() {
        let w = OsbbWord::new(vec![Block::bracket(vec![3u8, 2], 1, 0), Block::symmetric(vec![])]).unwrap();
        let e = osbb_expand(&w);
        assert_eq!(e.len(), 4);
        assert!(e.iter().all(|(_, c)| *c == rat(1, 2) || *c == rat(-1, 2)));
    }
}
