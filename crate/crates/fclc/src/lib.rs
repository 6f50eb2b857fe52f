//! Function-correcting codes for Lee-metric channels.
//!
//! This crate implements the full pipeline for protecting a *function of the
//! data* (rather than the data itself) against Lee-metric symbol shifts:
//!
//! * [`lee`] — Lee weight/distance primitives over `Z_q`, sphere volumes,
//!   and pairwise symbol-distance sums.
//! * [`functions`] — target functions (Lee weight, weight distribution,
//!   modular sum, coordinate projections, arbitrary tables), their images,
//!   function balls, and locality colorings.
//! * [`matrices`] — distance-requirement and function-distance matrices.
//! * [`irregular`] — irregular-distance codes: exact minimal-length search,
//!   a Plotkin-type lower bound, and a Gilbert–Varshamov-type upper bound.
//! * [`constructions`] — the four function-correcting code constructions
//!   and codebook verification.
//! * [`channel`] — the symmetric Lee channel, error enumeration, nearest-
//!   codeword function decoding, exhaustive decode checks, and Monte Carlo
//!   simulation.
//! * [`report`] — closed-form redundancy bounds, sphere-packing baselines,
//!   and side-by-side comparison reports.
//!
//! # Determinism
//!
//! Every operation is deterministic: searches break ties lexicographically,
//! random sampling uses a seeded, stream-indexed ChaCha8 generator, and
//! parallel execution (the default `parallel` feature, built on rayon)
//! reduces with order-respecting combinators so results are identical to the
//! sequential fallback (`--no-default-features`) and independent of thread
//! count.
//!
//! # Scale
//!
//! Parameters are validated for "desk scale" work: operations that must
//! enumerate `Z_q^n` take an explicit cap (default [`DEFAULT_CAP`]) and fail
//! with a typed error instead of silently grinding.

pub mod channel;
pub mod constructions;
mod error;
pub mod exec;
pub mod functions;
pub mod irregular;
pub mod lee;
pub mod matrices;
pub mod ratio;
pub mod report;

pub use error::{Error, Result};
pub use lee::ZqVector;

/// Default cap on the number of vectors any single enumeration may visit.
pub const DEFAULT_CAP: u64 = 1_000_000;
