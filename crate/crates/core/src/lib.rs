//! Finite posets, consistency patterns and set-family witnesses.
//!
//! The crate builds the target posets `Σ_OP`, `Σ_IP` and `Σ_P` (the latter
//! from a consistency pattern), realizes each of them as the strict inclusion
//! order of an explicit finite set family, and checks every construction with
//! a brute-force order-embedding search that is independent of the
//! construction itself.
//!
//! Modules:
//!
//! * [`poset`]: strict partial orders, heights, duals, reductions.
//! * [`embedding`]: order embeddings, the independent checker and the
//!   backtracking search.
//! * [`enumerate`]: all finite posets of a given size up to isomorphism.
//! * [`pattern`] and [`generators`]: consistency patterns, their axioms and
//!   the named patterns (TP₁, TP₂, ATP, SOP₃, TP).
//! * [`sigma`]: the target posets and the closure audit.
//! * [`setsystem`] and [`witnesses`]: set-family semantics and the witness
//!   constructions in both directions.
//! * [`json`] and [`dot`]: file formats.

pub mod dot;
pub mod embedding;
pub mod enumerate;
mod error;
pub mod generators;
pub mod json;
pub mod pattern;
pub mod poset;
pub mod report;
pub mod setsystem;
pub mod sigma;
pub mod witnesses;

pub use embedding::{check_embedding, find_embedding, is_isomorphic, OrderEmbedding, Violation};
pub use enumerate::{enumerate_posets, DEFAULT_ENUMERATION_BOUND};
pub use error::{Error, Result};
pub use pattern::ConsistencyPattern;
pub use poset::{close_strict_pairs, Poset};
pub use report::{Check, Report, Status, Witness};
pub use setsystem::{inclusion_poset, SetSystem};
pub use sigma::{sigma_ip, sigma_op, sigma_pattern, SigmaPatternPoset, DEFAULT_SIGMA_IP_BOUND};
