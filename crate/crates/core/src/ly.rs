//! The Lie-Yamaguti structure `(⟦_,_⟧, {_,_,_})` on the free post-Lie-Yamaguti algebra,
//! with `{x,y,z} = ⟦x,y⟧ ▷ z − [x,y,z]`.

use std::fmt;

use crate::bases::{from_t, to_t, TElem};
use crate::free::{self, AElem};
use crate::lincomb::LinComb;
use crate::ply::{lat_project, nf, NormalizeError, Normalizer, Strategy, DEFAULT_FUEL};
use crate::sample::TupleGrid;
use crate::term::Alphabet;

type B = LinComb<TElem>;

/// `{x, y, z}` in normal form.
pub fn ly_triple(x: &B, y: &B, z: &B) -> Result<B, NormalizeError> {
    let (x, y, z) = (from_t(x), from_t(y), from_t(z));
    let xy = free::brk(&x, &y);
    nf(&(&free::tri(&xy, &z) - &free::tb(&x, &y, &z)))
}

/// `x ∘ y = ⟦x, y⟧` in normal form.
pub fn ly_binary(x: &B, y: &B) -> Result<B, NormalizeError> {
    nf(&free::brk(&from_t(x), &from_t(y)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LyAxiom {
    Ly1,
    Ly2,
    Ly3,
    Ly4,
    Ly5,
    Ly6,
}

impl LyAxiom {
    pub const ALL: [LyAxiom; 6] = [LyAxiom::Ly1, LyAxiom::Ly2, LyAxiom::Ly3, LyAxiom::Ly4, LyAxiom::Ly5, LyAxiom::Ly6];

    pub fn id(self) -> &'static str {
        match self {
            LyAxiom::Ly1 => "LY1",
            LyAxiom::Ly2 => "LY2",
            LyAxiom::Ly3 => "LY3",
            LyAxiom::Ly4 => "LY4",
            LyAxiom::Ly5 => "LY5",
            LyAxiom::Ly6 => "LY6",
        }
    }

    pub fn vars(self) -> &'static [&'static str] {
        match self {
            LyAxiom::Ly1 => &["x"],
            LyAxiom::Ly2 => &["x", "y"],
            LyAxiom::Ly3 => &["x", "y", "z"],
            LyAxiom::Ly4 | LyAxiom::Ly5 => &["x", "y", "z", "w"],
            LyAxiom::Ly6 => &["x", "y", "u", "v", "w"],
        }
    }

    /// `LHS − RHS` for the given bindings.
    ///
    /// # Panics
    /// If the number of bindings differs from the number of variables.
    pub fn residual(self, b: &[B]) -> Result<B, NormalizeError> {
        assert_eq!(b.len(), self.vars().len(), "{self} takes {} bindings", self.vars().len());
        let cyc = |x: &B, y: &B, z: &B| [(x.clone(), y.clone(), z.clone()), (y.clone(), z.clone(), x.clone()), (z.clone(), x.clone(), y.clone())];
        Ok(match self {
            LyAxiom::Ly1 => ly_binary(&b[0], &b[0])?,
            LyAxiom::Ly2 => ly_triple(&b[0], &b[0], &b[1])?,
            LyAxiom::Ly3 => {
                let mut out = B::zero();
                for (x, y, z) in cyc(&b[0], &b[1], &b[2]) {
                    out = &out + &ly_triple(&x, &y, &z)?;
                    out = &out + &ly_binary(&ly_binary(&x, &y)?, &z)?;
                }
                out
            }
            LyAxiom::Ly4 => {
                let mut out = B::zero();
                for (x, y, z) in cyc(&b[0], &b[1], &b[2]) {
                    out = &out + &ly_triple(&ly_binary(&x, &y)?, &z, &b[3])?;
                }
                out
            }
            LyAxiom::Ly5 => {
                let (x, y, z, w) = (&b[0], &b[1], &b[2], &b[3]);
                let lhs = ly_triple(x, y, &ly_binary(z, w)?)?;
                let r1 = ly_binary(&ly_triple(x, y, z)?, w)?;
                let r2 = ly_binary(z, &ly_triple(x, y, w)?)?;
                &(&lhs - &r1) - &r2
            }
            LyAxiom::Ly6 => {
                let (x, y, u, v, w) = (&b[0], &b[1], &b[2], &b[3], &b[4]);
                let lhs = ly_triple(x, y, &ly_triple(u, v, w)?)?;
                let r1 = ly_triple(&ly_triple(x, y, u)?, v, w)?;
                let r2 = ly_triple(u, &ly_triple(x, y, v)?, w)?;
                let r3 = ly_triple(u, v, &ly_triple(x, y, w)?)?;
                &(&(&lhs - &r1) - &r2) - &r3
            }
        })
    }
}

impl fmt::Display for LyAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One sampled instantiation of an axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyReport {
    pub axiom: LyAxiom,
    pub bindings: Vec<TElem>,
    pub residual: B,
    pub pass: bool,
}

/// Instantiates every axiom with ℬ tuples of total size at most `max_vertices`
/// (all of them, or `samples` seeded draws from larger grids).
pub fn check_ly_axioms(
    alphabet: &Alphabet,
    max_vertices: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<LyReport>, NormalizeError> {
    let mut out = Vec::new();
    for axiom in LyAxiom::ALL {
        let grid = TupleGrid::new(alphabet, axiom.vars().len(), max_vertices);
        for tup in grid.pick(samples, seed) {
            let b: Vec<B> = tup.iter().map(|t| B::basis(t.clone())).collect();
            let residual = axiom.residual(&b)?;
            out.push(LyReport { axiom, pass: residual.is_zero(), bindings: tup, residual });
        }
    }
    Ok(out)
}

/// The bracket-free degeneration: for bracket-free `x, y, z` the binary operation projects
/// to zero and `{x, y, z}` projects to `−[x, y, z]`. Returns the two projected residuals.
pub fn lat_degeneration(x: &B, y: &B, z: &B) -> Result<(B, B), NormalizeError> {
    let (x, y, z) = (lat_project(x), lat_project(y), lat_project(z));
    let binary = lat_project(&ly_binary(&x, &y)?);
    let tb = nf(&free::tb(&from_t(&x), &from_t(&y), &from_t(&z)))?;
    let triple = &lat_project(&ly_triple(&x, &y, &z)?) + &lat_project(&tb);
    Ok((binary, triple))
}

/// `normalize(x)` projected to bracket-free terms, against the free LAT normal form of
/// `x` with brackets set to zero. Returns their difference.
pub fn lat_diagram_defect(x: &AElem) -> Result<B, NormalizeError> {
    let a = lat_project(&nf(x)?);
    let b = Normalizer::new(Strategy::default(), DEFAULT_FUEL).normalize_lat(&to_t(&free::kill_brackets(x)))?;
    Ok(&a - &b)
}
