//! Infinite Blaschke products over sparse diagonal functionals, with
//! certified truncation bounds, plus the machinery built on top of them:
//! the analytic curves through the configuration points, the scalar solve
//! along a curve, the separation functions obtained by skipping leading
//! factors or restricting to an index set, and the peak function attached
//! to a distinguished-boundary point.
//!
//! The configuration is the canonical diagonal witness of the construction:
//! points z_k = s_k·e_k, functionals L_k = (r_k/s_k)·e_k*, so that
//! L_k(z_k) = r_k exactly and every cross term L_j(z_k), j ≠ k, is exactly
//! zero. This turns the inequalities the separation argument runs on into
//! testable equalities.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disc::{self, DiscPoint};
use crate::error::{Error, Result};
use crate::seqspace::BallSeq;

/// Sequence family `k ↦ 1 − a·2^(−k) − b·4^(−k)`, used for the norm and
/// zero-set rates. Tail sums have closed forms, which is what makes the
/// truncation bounds certified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeomRate {
    pub a: f64,
    pub b: f64,
}

impl GeomRate {
    pub fn value(&self, k: usize) -> f64 {
        1.0 - self.one_minus(k)
    }

    /// `1 − value(k)`, computed without cancellation.
    pub fn one_minus(&self, k: usize) -> f64 {
        let x = 0.5_f64.powi(k as i32);
        self.a * x + self.b * x * x
    }

    /// Σ_{j>n} (1 − value(j)) in closed form.
    pub fn tail_sum(&self, n: usize) -> f64 {
        let x = 0.5_f64.powi(n as i32);
        self.a * x + self.b * x * x / 3.0
    }

    /// Σ over the progression j = first, first+step, ... in closed form.
    pub fn progression_sum(&self, first: usize, step: usize) -> f64 {
        let x = 0.5_f64.powi(first as i32);
        let q2 = 0.5_f64.powi(step as i32);
        let q4 = q2 * q2;
        self.a * x / (1.0 - q2) + self.b * x * x / (1.0 - q4)
    }

    /// Checks 0 < value(k) < 1 strictly increasing over all k ≥ 1.
    fn validate(&self, name: &'static str) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite() && self.b.is_finite()) {
            return Err(Error::BadConfig(format!(
                "{name}: leading rate must be positive and finite (a = {}, b = {})",
                self.a, self.b
            )));
        }
        if self.one_minus(1) >= 1.0 {
            return Err(Error::BadConfig(format!(
                "{name}: first term {} is not positive",
                self.value(1)
            )));
        }
        // strict increase: a·2^(−k−1) + (3/4)·b·4^(−k) > 0 for all k ≥ 1;
        // for negative b the binding case is k = 1.
        if self.b < 0.0 && self.a <= 0.75 * self.b.abs() {
            return Err(Error::BadConfig(format!(
                "{name}: sequence is not increasing (a = {}, b = {})",
                self.a, self.b
            )));
        }
        if self.b < 0.0 && self.a <= self.b.abs() * 0.5 {
            return Err(Error::BadConfig(format!(
                "{name}: sequence leaves (0, 1) (a = {}, b = {})",
                self.a, self.b
            )));
        }
        Ok(())
    }
}

/// Data of the separation construction: norm rates s_k = ‖z_k‖, zero-set
/// rates r_k with r_k < s_k and Σ(1−r_k) < ∞, the ℓ₁ smallness scale
/// a_k, and the certified curve radius.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeConfig {
    s: GeomRate,
    r: GeomRate,
    a_coeff: f64,
    count_hint: usize,
    disc_radius: f64,
    canonical_params: Option<(f64, f64)>,
}

impl BlaschkeConfig {
    /// Canonical instantiation: s_k = 1 − σ·2^(−k),
    /// r_k = s_k·(1 − ρgap·2^(−k)), a_k = 2^(−k).
    pub fn canonical(sigma: f64, rho_gap: f64, count_hint: usize) -> Result<Self> {
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::ParameterOutOfRange {
                name: "sigma",
                value: sigma,
                domain: "(0, 1)",
            });
        }
        if !(rho_gap > 0.0 && rho_gap < 1.0) {
            return Err(Error::ParameterOutOfRange {
                name: "rho_gap",
                value: rho_gap,
                domain: "(0, 1)",
            });
        }
        let s = GeomRate { a: sigma, b: 0.0 };
        let r = GeomRate {
            a: sigma + rho_gap,
            b: -sigma * rho_gap,
        };
        let mut cfg = Self::from_rates(s, r, 1.0, count_hint)?;
        cfg.canonical_params = Some((sigma, rho_gap));
        Ok(cfg)
    }

    /// General constructor from explicit rates; validates every invariant
    /// (0 < r_k < s_k < 1, both increasing, Σ(1−r_k) < ∞ by form,
    /// 0 < a_k < 1).
    pub fn from_rates(s: GeomRate, r: GeomRate, a_coeff: f64, count_hint: usize) -> Result<Self> {
        s.validate("s")?;
        r.validate("r")?;
        if !(a_coeff > 0.0 && a_coeff < 2.0) {
            return Err(Error::BadConfig(format!(
                "a_coeff = {a_coeff} must lie in (0, 2) so that every a_k < 1"
            )));
        }
        if !(1..=10_000).contains(&count_hint) {
            return Err(Error::BadConfig(format!(
                "count_hint = {count_hint} must lie in 1..=10000"
            )));
        }
        // r_k < s_k for every k: Δa + Δb·2^(−k) > 0 on k ≥ 1.
        let da = r.a - s.a;
        let db = r.b - s.b;
        let ok = (da > 0.0 || (da == 0.0 && db > 0.0)) && da + db * 0.5 > 0.0;
        if !ok {
            return Err(Error::BadConfig(format!(
                "rates violate r_k < s_k (delta a = {da}, delta b = {db})"
            )));
        }
        let disc_radius = curve_radius(&s, &r);
        if !(disc_radius > 0.0) {
            return Err(Error::BadConfig(format!(
                "computed curve radius {disc_radius} is not positive"
            )));
        }
        Ok(BlaschkeConfig {
            s,
            r,
            a_coeff,
            count_hint,
            disc_radius,
            canonical_params: None,
        })
    }

    pub fn s_k(&self, k: usize) -> f64 {
        assert!(k >= 1, "rate indices are 1-based");
        self.s.value(k)
    }

    pub fn r_k(&self, k: usize) -> f64 {
        assert!(k >= 1, "rate indices are 1-based");
        self.r.value(k)
    }

    /// `1 − r_k` without cancellation; the scale the truncation bounds and
    /// factor comparisons live on.
    pub fn one_minus_r(&self, k: usize) -> f64 {
        assert!(k >= 1, "rate indices are 1-based");
        self.r.one_minus(k)
    }

    pub fn a_k(&self, k: usize) -> f64 {
        assert!(k >= 1, "rate indices are 1-based");
        self.a_coeff * 0.5_f64.powi(k as i32)
    }

    /// ℓ₁ norm of the k-th functional row, r_k/s_k < 1.
    pub fn functional_norm(&self, k: usize) -> f64 {
        self.r_k(k) / self.s_k(k)
    }

    /// Largest |λ| for which every curve point w_k(λ) stays strictly
    /// inside the ball.
    pub fn disc_radius(&self) -> f64 {
        self.disc_radius
    }

    pub fn count_hint(&self) -> usize {
        self.count_hint
    }

    /// The k-th configuration point z_k = s_k·e_k.
    pub fn z_k(&self, k: usize) -> BallSeq {
        let mut prefix = vec![Complex64::new(0.0, 0.0); k];
        prefix[k - 1] = Complex64::new(self.s_k(k), 0.0);
        BallSeq::finite(prefix).expect("s_k < 1")
    }

    /// L_j evaluated at an evaluation point; exact scalars for the
    /// structured points (0 off the support, r_k or a Möbius value on it).
    pub fn functional(&self, j: usize, point: &EvalPoint<'_>) -> Complex64 {
        match point {
            EvalPoint::Origin => Complex64::new(0.0, 0.0),
            EvalPoint::CanonicalZk(k) => {
                if j == *k {
                    Complex64::new(self.r_k(j), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            EvalPoint::Curve { k, xi } => {
                if j == *k {
                    mobius_scalar(self.r_k(j), *xi)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            EvalPoint::Seq(z) => z.entry(j) * (self.r_k(j) / self.s_k(j)),
        }
    }

    /// Machine-converged Π_{j≥1} r_j (factors multiply until they reach 1
    /// in double precision).
    pub fn product_r_all(&self) -> f64 {
        self.product_r_excluding(0)
    }

    /// Machine-converged Π_{j≠k} r_j.
    pub fn product_r_excluding(&self, k: usize) -> f64 {
        let mut p = 1.0;
        for j in 1..10_000 {
            let rj = self.r_k(j);
            if rj == 1.0 {
                break;
            }
            if j != k {
                p *= rj;
            }
        }
        p
    }
}

fn mobius_scalar(center: f64, lambda: Complex64) -> Complex64 {
    disc::mobius(
        DiscPoint::real(center).expect("rate below 1"),
        DiscPoint::trusted(lambda),
    )
    .expect("rate strictly inside the disc")
    .value()
}

/// Largest radius t with (r_k + t)/(1 + r_k t) ≤ r_k/s_k for every k, i.e.
/// sup ‖w_k(λ)‖ < 1 on |λ| < t. Writing ε = 1−r_k, δ = 1−s_k, each per-k
/// radius is (1−ε)δ/(2ε − δ − ε²); the infimum over k is taken explicitly
/// over an initial range and bounded by the k → ∞ limit a_s/(2a_r − a_s)
/// beyond it.
fn curve_radius(s: &GeomRate, r: &GeomRate) -> f64 {
    let mut min = f64::INFINITY;
    for k in 1..=300 {
        let e = r.one_minus(k);
        let d = s.one_minus(k);
        if e == 0.0 {
            break;
        }
        let t = (1.0 - e) * d / (2.0 * e - d - e * e);
        min = min.min(t);
    }
    let limit = s.a / (2.0 * r.a - s.a);
    min.min(limit - 1e-12).min(0.999)
}

/// Evaluation points for the product machinery. The structured variants
/// make every functional value an exact scalar.
#[derive(Debug, Clone, Copy)]
pub enum EvalPoint<'a> {
    /// The origin: every L_j vanishes.
    Origin,
    /// The configuration point z_k.
    CanonicalZk(usize),
    /// The curve point w_k(ξ) = η_{r_k}(ξ)·z_k/r_k.
    Curve { k: usize, xi: Complex64 },
    /// A general sequence (requires certified sup-norm below 1).
    Seq(&'a BallSeq),
}

/// A complex value with a rigorous disc enclosure: the true value lies
/// within `tail_bound` of `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEnclosure {
    pub value: Complex64,
    pub tail_bound: f64,
    pub n_truncation: usize,
}

impl ComplexEnclosure {
    /// Upper bound for the modulus of the enclosed value.
    pub fn modulus_hi(&self) -> f64 {
        self.value.norm() + self.tail_bound
    }

    /// Lower bound for the modulus of the enclosed value.
    pub fn modulus_lo(&self) -> f64 {
        (self.value.norm() - self.tail_bound).max(0.0)
    }
}

/// Index sets for restricted products: a finite explicit set joined with an
/// arithmetic progression of stride ≥ 2, so that both the set and its
/// complement stay infinite.
#[derive(Debug, Clone, PartialEq)]
pub struct JSet {
    explicit: BTreeSet<usize>,
    start: usize,
    step: usize,
}

impl JSet {
    pub fn new(explicit: impl IntoIterator<Item = usize>, start: usize, step: usize) -> Result<Self> {
        if step < 2 {
            return Err(Error::UnsupportedPredicate(format!(
                "progression stride {step} leaves a finite complement; it must be at least 2"
            )));
        }
        if start < 1 {
            return Err(Error::UnsupportedPredicate(
                "progression start must be at least 1".into(),
            ));
        }
        let explicit: BTreeSet<usize> = explicit.into_iter().collect();
        if explicit.contains(&0) {
            return Err(Error::UnsupportedPredicate(
                "indices are 1-based; 0 is not a valid index".into(),
            ));
        }
        Ok(JSet {
            explicit,
            start,
            step,
        })
    }

    /// The even indices.
    pub fn evens() -> Self {
        JSet {
            explicit: BTreeSet::new(),
            start: 2,
            step: 2,
        }
    }

    pub fn contains(&self, j: usize) -> bool {
        self.explicit.contains(&j) || (j >= self.start && (j - self.start) % self.step == 0)
    }

    /// First progression member strictly beyond `m`.
    fn first_after(&self, m: usize) -> usize {
        if self.start > m {
            self.start
        } else {
            self.start + (m + 1 - self.start).div_ceil(self.step) * self.step
        }
    }

    /// Σ_{j ∈ J, j > m} (1 − rate(j)), in closed form plus the finite
    /// explicit remainder.
    fn tail_one_minus_sum(&self, rate: &GeomRate, m: usize) -> f64 {
        let mut sum = rate.progression_sum(self.first_after(m), self.step);
        for &j in self.explicit.iter().filter(|&&j| j > m) {
            if j < self.start || (j - self.start) % self.step != 0 {
                sum += rate.one_minus(j);
            }
        }
        sum
    }

    /// Σ_{j ∈ J, j > m} coeff·2^(−j).
    fn tail_geometric_sum(&self, coeff: f64, m: usize) -> f64 {
        let first = self.first_after(m);
        let q = 0.5_f64.powi(self.step as i32);
        let mut sum = coeff * 0.5_f64.powi(first as i32) / (1.0 - q);
        for &j in self.explicit.iter().filter(|&&j| j > m) {
            if j < self.start || (j - self.start) % self.step != 0 {
                sum += coeff * 0.5_f64.powi(j as i32);
            }
        }
        sum
    }
}

/// Relative floating-point allowance per multiplied factor.
fn fp_slack(factors: usize, magnitude: f64) -> f64 {
    16.0 * factors as f64 * f64::EPSILON * magnitude
}

impl BlaschkeConfig {
    /// Core truncated product Π (r_j − L_j(·))/(1 − r_j·L_j(·)) over
    /// j > skip, optionally restricted to an index set, with a certified
    /// tail bound.
    fn product(
        &self,
        point: &EvalPoint<'_>,
        skip: usize,
        jset: Option<&JSet>,
        tol: f64,
        seq_sup: Option<f64>,
    ) -> Result<ComplexEnclosure> {
        assert!(tol > 0.0, "tolerance must be positive");
        // beyond this index every functional value is exactly zero
        let support_end = match point {
            EvalPoint::Origin => Some(0),
            EvalPoint::CanonicalZk(k) | EvalPoint::Curve { k, .. } => Some(*k),
            EvalPoint::Seq(_) => None,
        };
        let tail_sum = |m: usize| -> f64 {
            match jset {
                Some(j) => j.tail_one_minus_sum(&self.r, m),
                None => self.r.tail_sum(m),
            }
        };
        let bound_at = |m: usize| -> f64 {
            let s = tail_sum(m);
            match seq_sup {
                // |1 − factor_j| ≤ 2(1 − r_j)/(1 − m) for a general point
                Some(sup) => (2.0 * s / (1.0 - sup)).exp_m1(),
                // structured points: the tail factors are exactly r_j
                None => s,
            }
        };
        let mut m = skip.max(self.count_hint).max(support_end.unwrap_or(0));
        while bound_at(m) > tol && m < skip + 4096 {
            m += 1;
        }

        let mut value = Complex64::new(1.0, 0.0);
        let mut factors = 0usize;
        for j in (skip + 1)..=m {
            if jset.is_some_and(|set| !set.contains(j)) {
                continue;
            }
            let l = self.functional(j, point);
            let rj = self.r_k(j);
            let factor = (Complex64::new(rj, 0.0) - l)
                / (Complex64::new(1.0, 0.0) - rj * l);
            value *= factor;
            factors += 1;
            if value == Complex64::new(0.0, 0.0) {
                // a vanishing factor zeroes the whole infinite product
                return Ok(ComplexEnclosure {
                    value,
                    tail_bound: 0.0,
                    n_truncation: m,
                });
            }
        }
        let tail_bound = value.norm() * bound_at(m) + fp_slack(factors, value.norm());
        Ok(ComplexEnclosure {
            value,
            tail_bound,
            n_truncation: m,
        })
    }

    fn seq_sup_checked(&self, z: &BallSeq, tol: f64) -> Result<f64> {
        let sup = z.sup_norm(tol);
        if sup.hi() >= 1.0 {
            return Err(Error::NotCertifiedBelow {
                lo: sup.lo(),
                hi: sup.hi(),
                bound: 1.0,
            });
        }
        Ok(sup.hi())
    }
}

/// Certified enclosure of the full Blaschke product
/// G(z) = Π_{j≥1} (r_j − L_j(z))/(1 − r_j·L_j(z)) at a point with
/// certified sup-norm below 1. |G(z)| < 1 on the open ball.
pub fn blaschke_eval(cfg: &BlaschkeConfig, z: &BallSeq, tol: f64) -> Result<ComplexEnclosure> {
    let sup = cfg.seq_sup_checked(z, tol)?;
    cfg.product(&EvalPoint::Seq(z), 0, None, tol, Some(sup))
}

/// [`blaschke_eval`] at a structured point (origin, configuration point,
/// or curve point), where every functional value is exact.
pub fn blaschke_eval_at(
    cfg: &BlaschkeConfig,
    point: &EvalPoint<'_>,
    tol: f64,
) -> Result<ComplexEnclosure> {
    match point {
        EvalPoint::Seq(z) => blaschke_eval(cfg, z, tol),
        structured => cfg.product(structured, 0, None, tol, None),
    }
}

/// The separation function obtained by skipping the first `n` factors:
/// f_n(·) = Π_{j>n} (r_j − L_j(·))/(1 − r_j·L_j(·)).
///
/// At the origin this is Π_{j>n} r_j, which increases to 1 with n; at a
/// configuration point z_k with k > n the k-th factor vanishes and the
/// value is exactly 0.
pub fn tail_blaschke(
    cfg: &BlaschkeConfig,
    n: usize,
    point: &EvalPoint<'_>,
    tol: f64,
) -> Result<ComplexEnclosure> {
    match point {
        EvalPoint::Seq(z) => {
            let sup = cfg.seq_sup_checked(z, tol)?;
            cfg.product(point, n, None, tol, Some(sup))
        }
        structured => cfg.product(structured, n, None, tol, None),
    }
}

/// Result of evaluating a restricted separation function at a
/// configuration point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationEval {
    /// Certified value of Π_{j ∈ J, j > n} factor_j(z_k).
    pub value: ComplexEnclosure,
    /// Certified lower bound Π_{j ∈ J, j > n} (r_j − a_j)/(1 + r_j·a_j),
    /// which the value must exceed in modulus whenever k ∉ J.
    pub product_lower_bound: f64,
    /// Whether the k-th factor lies in the product and kills it.
    pub vanishes: bool,
}

/// The restricted separation function f_{(J,n)} evaluated at z_k:
/// exactly 0 when k ∈ J with k > n, and exactly Π_{j∈J, j>n} r_j
/// (up to the certified truncation bound) otherwise.
pub fn tail_blaschke_over(
    cfg: &BlaschkeConfig,
    jset: &JSet,
    n: usize,
    k: usize,
    tol: f64,
) -> Result<SeparationEval> {
    assert!(k >= 1, "configuration indices are 1-based");
    let value = cfg.product(&EvalPoint::CanonicalZk(k), n, Some(jset), tol, None)?;
    let vanishes = jset.contains(k) && k > n;

    // Π (1 − u_j) ≥ 1 − Σ u_j with
    // u_j = 1 − (r_j − a_j)/(1 + r_j a_j) ≤ (1 − r_j) + 2 a_j.
    let m = value.n_truncation;
    let mut lb = 1.0;
    for j in (n + 1)..=m {
        if jset.contains(j) {
            let (rj, aj) = (cfg.r_k(j), cfg.a_k(j));
            lb *= (rj - aj) / (1.0 + rj * aj);
        }
    }
    let tail_defect = jset.tail_one_minus_sum(&cfg.r, m)
        + 2.0 * jset.tail_geometric_sum(cfg.a_coeff, m);
    let product_lower_bound = (lb * (1.0 - tail_defect)).max(0.0);

    Ok(SeparationEval {
        value,
        product_lower_bound,
        vanishes,
    })
}

/// Smallest stage k₀ past which both restricted products
/// Π_{j∈J, j>k} r_j and Π_{j∈J, j>k} (r_j − a_j)/(1 + r_j·a_j) are
/// certified above 1 − eps, via the 1 − Σ lower bounds.
pub fn separation_certificate(cfg: &BlaschkeConfig, jset: &JSet, eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "eps",
            value: eps,
            domain: "(0, 1)",
        });
    }
    for k0 in 1..=10_000 {
        let defect = jset.tail_one_minus_sum(&cfg.r, k0)
            + 2.0 * jset.tail_geometric_sum(cfg.a_coeff, k0);
        if defect < eps {
            return Ok(k0);
        }
    }
    Err(Error::BadConfig(format!(
        "no certification stage below 10000 for eps = {eps}"
    )))
}

/// The curve point w_k(λ) = η_{r_k}(λ)·z_k/r_k, a single-coordinate
/// sequence with certified sup-norm below 1 for |λ| < the curve radius.
pub fn curve_w(cfg: &BlaschkeConfig, k: usize, lambda: Complex64) -> Result<BallSeq> {
    assert!(k >= 1, "configuration indices are 1-based");
    if lambda.norm() >= cfg.disc_radius() {
        return Err(Error::ParameterOutOfRange {
            name: "lambda",
            value: lambda.norm(),
            domain: "|lambda| < curve radius",
        });
    }
    // grouped so that λ = 0 reproduces the configuration point exactly
    let coord = (mobius_scalar(cfg.r_k(k), lambda) / cfg.r_k(k)) * cfg.s_k(k);
    let mut prefix = vec![Complex64::new(0.0, 0.0); k];
    prefix[k - 1] = coord;
    BallSeq::finite(prefix)
}

/// Closed-form curve preimage for the canonical diagonal configuration:
/// G(w_k(ξ)) = ξ·Π_{j≠k} r_j, so ξ_k(λ) = λ / Π_{j≠k} r_j.
pub fn xi_closed_form(cfg: &BlaschkeConfig, k: usize, lambda: Complex64) -> Complex64 {
    lambda / cfg.product_r_excluding(k)
}

const NEWTON_MAX_ITER: usize = 200;
const NEWTON_DIFF_STEP: f64 = 1e-6;

/// Solves G(w_k(ξ)) = λ for |λ| below half the curve radius by damped
/// complex Newton iteration on the truncated product, the derivative taken
/// by central differences. The solution is checked against the curve
/// domain |ξ| < curve radius.
pub fn solve_xi(cfg: &BlaschkeConfig, k: usize, lambda: Complex64, tol: f64) -> Result<Complex64> {
    assert!(k >= 1, "configuration indices are 1-based");
    assert!(tol > 0.0, "tolerance must be positive");
    if lambda.norm() >= cfg.disc_radius() / 2.0 {
        return Err(Error::ParameterOutOfRange {
            name: "lambda",
            value: lambda.norm(),
            domain: "|lambda| < curve radius / 2",
        });
    }
    let inner_tol = (tol * 1e-3).max(1e-14);
    let eval = |xi: Complex64| -> Result<Complex64> {
        let g = cfg.product(&EvalPoint::Curve { k, xi }, 0, None, inner_tol, None)?;
        Ok(g.value - lambda)
    };

    let mut xi = lambda;
    let mut residual = eval(xi)?;
    for _ in 0..NEWTON_MAX_ITER {
        if residual.norm() <= tol {
            if xi.norm() >= cfg.disc_radius() {
                return Err(Error::IllConditioned(format!(
                    "preimage {xi} converged outside the curve disc of radius {}",
                    cfg.disc_radius()
                )));
            }
            return Ok(xi);
        }
        let h = Complex64::new(NEWTON_DIFF_STEP, 0.0);
        let derivative = (eval(xi + h)? - eval(xi - h)?) / (2.0 * NEWTON_DIFF_STEP);
        if derivative.norm() < 1e-18 {
            return Err(Error::IllConditioned(
                "vanishing derivative in the curve solve".into(),
            ));
        }
        let mut step = residual / derivative;
        // damping: halve the step until the residual decreases and the
        // iterate stays inside the closed disc where the product is defined
        let mut accepted = false;
        for _ in 0..60 {
            let next = xi - step;
            if next.norm() <= 0.999 {
                let next_residual = eval(next)?;
                if next_residual.norm() < residual.norm() {
                    xi = next;
                    residual = next_residual;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if residual.norm() <= tol && xi.norm() < cfg.disc_radius() {
        return Ok(xi);
    }
    Err(Error::SolverDidNotConverge {
        iterations: NEWTON_MAX_ITER,
        last: xi,
        residual: residual.norm(),
    })
}

// ---------------------------------------------------------------------------
// Peak function at a distinguished-boundary point
// ---------------------------------------------------------------------------

/// Angles θ_n given as a finite list followed by a constant tail angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaSeq {
    #[serde(default)]
    pub prefix: Vec<f64>,
    pub tail: f64,
}

impl ThetaSeq {
    pub fn new(prefix: Vec<f64>, tail: f64) -> Self {
        ThetaSeq { prefix, tail }
    }

    pub fn constant(theta: f64) -> Self {
        ThetaSeq {
            prefix: Vec::new(),
            tail: theta,
        }
    }

    pub fn angle(&self, n: usize) -> f64 {
        assert!(n >= 1, "sequence indices are 1-based");
        self.prefix.get(n - 1).copied().unwrap_or(self.tail)
    }
}

/// The distinguished-boundary point a = (e^{iθ_n})_n.
pub fn peak_point(theta: &ThetaSeq) -> BallSeq {
    let prefix: Vec<Complex64> = theta
        .prefix
        .iter()
        .map(|&t| Complex64::new(t.cos(), t.sin()))
        .collect();
    let tail = crate::seqspace::TailForm::constant(Complex64::new(
        theta.tail.cos(),
        theta.tail.sin(),
    ));
    BallSeq::new(prefix, tail).expect("unimodular entries lie in the closed ball")
}

/// Truncation length for peak-function series with non-constant tails.
const PEAK_TRUNCATION: usize = 64;

/// The peak function f(x) = 1 + Σ_{n≥1} e^{−iθ_n}·x_n·2^(−n).
///
/// |f| peaks exactly at the point (e^{iθ_n}) with value 2 and is strictly
/// smaller in modulus everywhere else on the closed ball. Constant tails
/// are summed in closed form; other tails truncate with the geometric
/// bound Σ_{n>N} 2^(−n) ≤ 2^(−N).
pub fn peak_eval(theta: &ThetaSeq, x: &BallSeq) -> ComplexEnclosure {
    let weight = |n: usize| 0.5_f64.powi(n as i32);
    let unit = |t: f64| Complex64::new(t.cos(), t.sin());
    let start_exact = x.tail_start().max(theta.prefix.len() + 1);

    if let crate::seqspace::TailForm::Constant { value } = x.tail() {
        // explicit terms, then the closed-form geometric remainder
        let mut sum = Complex64::new(1.0, 0.0);
        for n in 1..start_exact {
            sum += unit(-theta.angle(n)) * x.entry(n) * weight(n);
        }
        sum += unit(-theta.tail) * value * weight(start_exact - 1);
        ComplexEnclosure {
            value: sum,
            tail_bound: fp_slack(start_exact + 1, 2.0),
            n_truncation: start_exact,
        }
    } else {
        let n_trunc = PEAK_TRUNCATION.max(start_exact);
        let mut sum = Complex64::new(1.0, 0.0);
        for n in 1..=n_trunc {
            sum += unit(-theta.angle(n)) * x.entry(n) * weight(n);
        }
        ComplexEnclosure {
            value: sum,
            tail_bound: weight(n_trunc) + fp_slack(n_trunc, 2.0),
            n_truncation: n_trunc,
        }
    }
}

// ---------------------------------------------------------------------------
// JSON configuration format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ConfigDto {
    sigma: f64,
    rho_gap: f64,
    count_hint: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    disc_radius: Option<f64>,
}

/// Parses `{"sigma": σ, "rho_gap": g, "count_hint": n, "disc_radius": r?}`.
/// A provided radius may shrink the computed safe radius but not exceed it.
pub fn parse_config(text: &str) -> Result<BlaschkeConfig> {
    let dto: ConfigDto = serde_json::from_str(text).map_err(|e| Error::Descriptor {
        field: "<config>".into(),
        message: e.to_string(),
    })?;
    let mut cfg = BlaschkeConfig::canonical(dto.sigma, dto.rho_gap, dto.count_hint)?;
    if let Some(radius) = dto.disc_radius {
        if !(radius > 0.0 && radius <= cfg.disc_radius) {
            return Err(Error::BadConfig(format!(
                "disc_radius = {radius} exceeds the certified curve radius {}",
                cfg.disc_radius
            )));
        }
        cfg.disc_radius = radius;
    }
    Ok(cfg)
}

/// Canonical JSON form of a canonical configuration (parse ∘ serialize is
/// the identity, byte for byte).
pub fn config_to_json(cfg: &BlaschkeConfig) -> Result<String> {
    let (sigma, rho_gap) = cfg.canonical_params.ok_or_else(|| {
        Error::BadConfig("only canonical configurations have a JSON form".into())
    })?;
    let dto = ConfigDto {
        sigma,
        rho_gap,
        count_hint: cfg.count_hint,
        disc_radius: Some(cfg.disc_radius),
    };
    Ok(serde_json::to_string(&dto).expect("config serialization cannot fail"))
}
