//! Exact symbolic engine for the free post-Lie-Yamaguti algebra.
//!
//! The crate works in the free algebra on two binary operations ⟦_,_⟧ and ▷
//! with exact rational coefficients. It provides the D-algebra, OSBB words,
//! the bases B̂, S, Ŝ, 𝒯 and ℬ, Hall and LTS Hall elements, the normalizer
//! for the free post-Lie-Yamaguti algebra with replayable traces, the derived
//! Lie-Yamaguti structure, and an expression language.

pub mod bases;
pub mod checks;
pub mod dalg;
pub mod free;
pub mod hall;
pub mod lincomb;
pub mod linalg;
pub mod ly;
pub mod orders;
pub mod ply;
pub mod syntax;
pub mod osbb;
pub mod sample;
pub mod term;

pub use bases::{ShatElem, TElem};
pub use free::AElem;
pub use lincomb::{LinComb, Rational};
pub use osbb::OsbbWord;
pub use term::{Alphabet, Generator, Graded, MagmaTerm};
