//! The free post-Lie-Yamaguti algebra: relations, the basis ℬ, normalization, and traces.

mod basis;
mod normalize;
mod relations;
mod trace;

pub use basis::{enumerate_b, graded_dim, h_canonical, is_b, lat_project};
pub use normalize::{nf, normalize, normalize_with, NormalForm, NormalizeError, Normalizer, Strategy, DEFAULT_FUEL};
pub use relations::{RelationInstance, Rule};
pub use trace::{check_trace, replay, state_hash, trace_to_jsonl, RewriteTrace, TraceError, TraceFile};

/// Elements of ℬ are elements of 𝒯 passing [`is_b`].
pub type BElem = crate::bases::TElem;
