//! Error type shared by every module of the crate.

use num_complex::Complex64;

/// Errors raised by constructors and certified operations.
///
/// Every failure is data-dependent: either an input violates a documented
/// domain restriction, or a computation cannot produce a certified answer
/// for the given representation and says so explicitly instead of guessing.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A scalar meant to live in the closed unit disc has modulus `> 1`.
    #[error("point has modulus {0:.17e}, outside the closed unit disc")]
    OutsideClosedDisc(f64),

    /// A map center must lie strictly inside the disc or ball.
    #[error("center has modulus/norm {0:.17}, but must be strictly inside the unit ball")]
    CenterNotInterior(f64),

    /// An argument must lie strictly inside the unit ball of its space.
    #[error("norm is {0:.17}, but the point must lie strictly inside the unit ball")]
    OutsideOpenBall(f64),

    /// A real parameter lies outside its documented domain.
    #[error("{name} = {value} is outside {domain}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A sequence entry violates the closed-ball bound.
    #[error("entry {index} has modulus {modulus:.17}, outside the closed unit disc")]
    EntryOutsideClosedDisc { index: usize, modulus: f64 },

    /// A prefix entry is too close to the unit circle for the boundary set
    /// membership to be decided from the representation.
    #[error(
        "entry {index} has modulus {modulus:.17}, inside the ambiguous band \
         (1 - 1e-12, 1): cannot decide unimodularity; construct the entry \
         exactly on the circle or below 1 - 1e-12"
    )]
    AmbiguousModulus { index: usize, modulus: f64 },

    /// A restriction pattern that the closed tail forms cannot express.
    #[error("unsupported restriction: {0}")]
    UnsupportedRestriction(String),

    /// A requested index predicate shape is not representable.
    #[error("unsupported index predicate: {0}")]
    UnsupportedPredicate(String),

    /// A quantity that must be certified strictly below a bound is not.
    #[error("enclosure [{lo}, {hi}] is not certified below {bound}")]
    NotCertifiedBelow { lo: f64, hi: f64, bound: f64 },

    /// An operation that needs a closed tail form received a scan-backed
    /// sequence (one that supports entries and certified sups only).
    #[error("sequence is scan-backed ({0}); this operation needs a closed tail form")]
    ScanBackedTail(&'static str),

    /// An operator argument is not a strict contraction.
    #[error("operator norm is {0:.17}, but a strict contraction is required")]
    NotContraction(f64),

    /// Linear-algebra conditioning failure.
    #[error("numerical conditioning failure: {0}")]
    IllConditioned(String),

    /// The damped Newton solver ran out of iterations.
    #[error(
        "newton solver did not converge after {iterations} iterations; \
         last iterate {last}, residual {residual:.3e}"
    )]
    SolverDidNotConverge {
        iterations: usize,
        last: Complex64,
        residual: f64,
    },

    /// Invalid Blaschke configuration data.
    #[error("invalid configuration: {0}")]
    BadConfig(String),

    /// A descriptor failed to parse or validate; names the offending field.
    #[error("descriptor field `{field}`: {message}")]
    Descriptor { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
