//! Certified numerics for pseudo-hyperbolic and Gleason geometry on the
//! closed unit ball of ℓ∞.
//!
//! The crate computes, with rigorous enclosures:
//!
//! - the pseudo-hyperbolic distance ρ and the Gleason (norm) distance
//!   between point evaluations δ_z, δ_w for points of the closed ball of
//!   ℓ∞ given by closed-form sequence descriptors ([`metric`], [`seqspace`]);
//! - Gleason-part verdicts (same part / different parts / undetermined with
//!   an explicit certificate) and the five-way classification of the part
//!   containing a given evaluation ([`metric`]);
//! - the ball automorphisms used for these computations: coordinatewise
//!   Möbius maps, the Hilbert-ball automorphism β_x, and the operator-ball
//!   automorphism Φ_R ([`autom`]);
//! - infinite Blaschke products over sparse functionals with certified
//!   truncation bounds, the separation functions built from them, and the
//!   peak function attached to a distinguished-boundary point ([`blaschke`]).
//!
//! All scalar work is double precision; enclosures account for series and
//! product truncation, which dominates rounding at this scale. Every value
//! is either certified (enclosure plus attainment certificate) or reported
//! as undetermined with the examined range — never silently approximate.

pub mod autom;
pub mod blaschke;
pub mod disc;
pub mod error;
pub mod metric;
pub mod seqspace;

pub use disc::{Attainment, CertifiedValue, DiscPoint};
pub use error::{Error, Result};
pub use seqspace::{BallSeq, TailForm};
