//! Scalar pseudo-hyperbolic geometry on the unit disc.
//!
//! Möbius maps η_α(λ) = (α − λ)/(1 − ᾱλ), the pseudo-hyperbolic metric
//! ρ(λ, μ) = |(λ − μ)/(1 − λ̄μ)|, the bijection between ρ and the Gleason
//! (norm) distance, and the uniform distortion bound 2s/(1+s²) for Möbius
//! maps with center and argument of modulus at most `s`.
//!
//! Everything here is plain `f64` arithmetic on immutable values. Certified
//! enclosures appear one level up, at the sequence stage, where truncation
//! is the dominant error source.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack accepted above modulus 1 when constructing closed-disc points.
/// Covers rounding of genuinely unimodular inputs such as `exp(iθ)`.
pub const UNIT_SLACK: f64 = 4.0 * f64::EPSILON;

/// Moduli at least `1 - UNIMODULAR_TOL` are treated as exactly 1.
///
/// A point on the unit circle built from `cos`/`sin` lands within a few ulps
/// of modulus 1; this band absorbs that rounding. Values below the band but
/// above `1 - AMBIGUOUS_BAND` are rejected where a boundary decision is
/// required, because no representation-level certificate exists for them.
pub const UNIMODULAR_TOL: f64 = 1e-14;

/// Lower edge of the undecidable near-boundary band `(1 - 1e-12, 1)`.
pub const AMBIGUOUS_BAND: f64 = 1e-12;

/// A complex scalar of modulus at most 1 (the closed unit disc).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    /// Wraps `value`, rejecting moduli beyond `1 + UNIT_SLACK`.
    pub fn new(value: Complex64) -> Result<Self> {
        let m = value.norm();
        if m > 1.0 + UNIT_SLACK {
            return Err(Error::OutsideClosedDisc(m));
        }
        Ok(DiscPoint(value))
    }

    /// Real point of the disc.
    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    /// The point `e^{iθ}` on the unit circle.
    pub fn unimodular(theta: f64) -> Self {
        DiscPoint(Complex64::new(theta.cos(), theta.sin()))
    }

    pub const ORIGIN: DiscPoint = DiscPoint(Complex64::new(0.0, 0.0));

    /// Skips the modulus check; for entries already validated upstream.
    pub(crate) fn trusted(value: Complex64) -> Self {
        DiscPoint(value)
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn modulus(self) -> f64 {
        self.0.norm()
    }

    /// Whether the point counts as lying exactly on the unit circle.
    pub fn is_unimodular(self) -> bool {
        self.modulus() >= 1.0 - UNIMODULAR_TOL
    }

    /// Whether the point lies strictly inside the disc (below the
    /// unimodular band).
    pub fn is_interior(self) -> bool {
        !self.is_unimodular()
    }
}

/// How the supremum behind a [`CertifiedValue`] is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "at")]
pub enum Attainment {
    /// The supremum is attained at this (1-based) coordinate.
    AttainedAt(usize),
    /// The supremum is a limit value never attained at any coordinate.
    SupremumNotAttained,
    /// No certificate; only coordinates up to this index were examined.
    Unknown { examined_up_to: usize },
}

/// A real quantity with a rigorous two-sided enclosure `[lo, hi]` and a
/// flag explaining how the underlying supremum is realized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedValue {
    lo: f64,
    hi: f64,
    attained: Attainment,
}

impl CertifiedValue {
    pub fn new(lo: f64, hi: f64, attained: Attainment) -> Self {
        assert!(lo <= hi, "enclosure inverted: [{lo}, {hi}]");
        CertifiedValue { lo, hi, attained }
    }

    /// Zero-width enclosure around an exactly computed value.
    pub fn exact(value: f64, attained: Attainment) -> Self {
        Self::new(value, value, attained)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn attained(&self) -> Attainment {
        self.attained
    }

    /// True unless the value carries an `Unknown` attainment marker.
    pub fn is_certified(&self) -> bool {
        !matches!(self.attained, Attainment::Unknown { .. })
    }

    /// Pushes the enclosure through a nondecreasing map.
    pub fn map_monotone(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::new(f(self.lo), f(self.hi), self.attained)
    }
}

/// Möbius involution η_α(λ) = (α − λ)/(1 − ᾱλ) for an interior center α.
///
/// Maps the closed disc onto itself, exchanges α and 0, and is its own
/// inverse. The modulus of the image is 1 exactly when |λ| = 1.
pub fn mobius(alpha: DiscPoint, lambda: DiscPoint) -> Result<DiscPoint> {
    if !alpha.is_interior() || alpha.modulus() >= 1.0 {
        return Err(Error::CenterNotInterior(alpha.modulus()));
    }
    let a = alpha.value();
    let l = lambda.value();
    let image = (a - l) / (Complex64::new(1.0, 0.0) - a.conj() * l);
    // |image| <= 1 holds mathematically; shave off any rounding overshoot.
    let m = image.norm();
    if m > 1.0 {
        Ok(DiscPoint::trusted(image / m))
    } else {
        Ok(DiscPoint::trusted(image))
    }
}

/// Pseudo-hyperbolic distance ρ(λ, μ) = |(λ − μ)/(1 − λ̄μ)| on the closed
/// disc.
///
/// Conventions: ρ = 0 when λ and μ are the same point (even on the circle),
/// and ρ = 1 exactly when either point is unimodular and the points differ;
/// this bypasses the quotient, which degenerates to 0/0 at coinciding
/// unimodular points.
///
/// For two points strictly inside the disc the distance is strictly below 1;
/// the computed value is capped just under 1 so that an output of exactly 1
/// always certifies a unimodular mismatch.
pub fn rho_disc(lambda: DiscPoint, mu: DiscPoint) -> f64 {
    let l = lambda.value();
    let m = mu.value();
    if l == m {
        return 0.0;
    }
    if lambda.is_unimodular() || mu.is_unimodular() {
        return 1.0;
    }
    // quotient of norms rather than norm of the quotient: |λ − μ| and
    // |1 − λ̄μ| are both invariant under swapping λ and μ down to the last
    // bit, which makes the metric exactly symmetric
    let num = (l - m).norm();
    let den = (Complex64::new(1.0, 0.0) - l.conj() * m).norm();
    (num / den).min(1.0 - f64::EPSILON)
}

/// Gleason (norm) distance as a function of the pseudo-hyperbolic distance:
/// (2 − 2√(1 − ρ²))/ρ, extended by continuity to 0 at ρ = 0.
///
/// Evaluated in the cancellation-free form 2ρ/(1 + √(1 − ρ²)).
pub fn gleason_norm_from_rho(rho: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::ParameterOutOfRange {
            name: "rho",
            value: rho,
            domain: "[0, 1]",
        });
    }
    Ok(2.0 * rho / (1.0 + (1.0 - rho * rho).sqrt()))
}

/// Inverse of [`gleason_norm_from_rho`]: ρ = 4n/(4 + n²) for n ∈ [0, 2].
pub fn rho_from_gleason_norm(n: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&n) {
        return Err(Error::ParameterOutOfRange {
            name: "gleason norm",
            value: n,
            domain: "[0, 2]",
        });
    }
    Ok(4.0 * n / (4.0 + n * n))
}

/// Uniform Möbius distortion bound: for |α| ≤ s and |λ| ≤ s,
/// |η_α(λ)| ≤ 2s/(1 + s²) < 1.
pub fn mobius_bound(s: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::ParameterOutOfRange {
            name: "s",
            value: s,
            domain: "[0, 1)",
        });
    }
    Ok(2.0 * s / (1.0 + s * s))
}

/// Whether μ lies in the open pseudo-hyperbolic disc of radius `r`
/// centered at an interior point.
pub fn in_pseudo_disc(mu: DiscPoint, center: DiscPoint, r: f64) -> Result<bool> {
    if !center.is_interior() {
        return Err(Error::CenterNotInterior(center.modulus()));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "r",
            value: r,
            domain: "(0, 1)",
        });
    }
    Ok(rho_disc(center, mu) < r)
}
