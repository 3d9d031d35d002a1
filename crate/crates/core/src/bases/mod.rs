//! The bases S, B̂, Ŝ and 𝒯 of the free algebra, with conversions and φ.

pub mod shat;
pub mod telem;

pub use shat::{
    beta, catalan_count, cmp_shat, enumerate_bhat, enumerate_s, enumerate_shat, from_shat, shat_value, to_shat, ShatElem,
    ShatKind,
};
pub use telem::{cmp_t, enumerate_t, from_t, phi, phi_inv, phi_on_a, shat_to_t, t_value, to_t, TElem, TKind};
