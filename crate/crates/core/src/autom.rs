//! The three automorphism families of the unit balls in play:
//! coordinatewise Möbius maps Φ_a on the ℓ∞ ball, the Hilbert-ball
//! automorphism β_x, and the operator-ball automorphism Φ_R, together with
//! the metric identities they induce (ρ(δ_x, δ_y) = ‖Φ_x(y)‖ whenever
//! Φ_x is an automorphism vanishing at x).

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::disc::{self, Attainment, CertifiedValue, DiscPoint};
use crate::error::{Error, Result};
use crate::seqspace::{BallSeq, TailForm};

// ---------------------------------------------------------------------------
// Coordinatewise Möbius map on the ℓ∞ ball
// ---------------------------------------------------------------------------

/// Image of a sequence under Φ_a.
///
/// Constant-against-constant coordinates keep a closed tail form; a radial
/// tail hit by a nonzero constant center does not, and the image degrades
/// to a scan-backed sequence that still supports entries and a certified
/// sup-norm but is rejected by operations needing closed tails.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiImage {
    Closed(BallSeq),
    Scan(ScanSeq),
}

/// Lazily evaluated image (η_{a_n}(z_n))_n without a closed tail form.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSeq {
    center: BallSeq,
    arg: BallSeq,
}

impl ScanSeq {
    pub fn entry(&self, n: usize) -> Complex64 {
        let alpha = DiscPoint::trusted(self.center.entry(n));
        let lambda = DiscPoint::trusted(self.arg.entry(n));
        disc::mobius(alpha, lambda)
            .expect("center sup-norm certified below 1")
            .value()
    }

    /// The degraded case arises exactly when an interior constant center
    /// meets a radial tail, whose image moduli |η_c(z_n)| → |η_c(phase)| = 1.
    pub fn sup_norm(&self, tol: f64) -> CertifiedValue {
        assert!(tol > 0.0, "tolerance must be positive");
        CertifiedValue::exact(1.0, Attainment::SupremumNotAttained)
    }
}

impl PhiImage {
    pub fn entry(&self, n: usize) -> Complex64 {
        match self {
            PhiImage::Closed(seq) => seq.entry(n),
            PhiImage::Scan(scan) => scan.entry(n),
        }
    }

    pub fn sup_norm(&self, tol: f64) -> CertifiedValue {
        match self {
            PhiImage::Closed(seq) => seq.sup_norm(tol),
            PhiImage::Scan(scan) => scan.sup_norm(tol),
        }
    }

    /// The closed-form sequence, or an explicit error naming the limitation.
    pub fn into_closed(self) -> Result<BallSeq> {
        match self {
            PhiImage::Closed(seq) => Ok(seq),
            PhiImage::Scan(_) => Err(Error::ScanBackedTail(
                "a radial tail composed with a nonzero Möbius center has no closed form",
            )),
        }
    }
}

fn mobius_value(alpha: Complex64, lambda: Complex64) -> Complex64 {
    disc::mobius(DiscPoint::trusted(alpha), DiscPoint::trusted(lambda))
        .expect("center sup-norm certified below 1")
        .value()
}

/// Coordinatewise Möbius automorphism Φ_a(z) = (η_{a_n}(z_n))_n for a
/// center with certified sup-norm below 1. Self-inverse on the open ball.
pub fn phi_seq(a: &BallSeq, z: &BallSeq) -> Result<PhiImage> {
    let na = a.sup_norm(1e-12);
    if na.hi() >= 1.0 {
        return Err(Error::NotCertifiedBelow {
            lo: na.lo(),
            hi: na.hi(),
            bound: 1.0,
        });
    }
    let t = a.tail_start().max(z.tail_start());
    let prefix: Vec<Complex64> = (1..t).map(|n| mobius_value(a.entry(n), z.entry(n))).collect();

    let period = num_integer_lcm(a.tail().period(), z.tail().period());
    let mut parts = Vec::with_capacity(period);
    for r in 0..period {
        let first = t + r;
        let fa = a.tail().part_at(first, a.tail_start());
        let fz = z.tail().part_at(first, z.tail_start());
        let ca = match fa {
            TailForm::Constant { value } => *value,
            _ => unreachable!("sup-norm below 1 excludes radial center tails"),
        };
        match fz {
            TailForm::Constant { value } => {
                parts.push(TailForm::constant(mobius_value(ca, *value)));
            }
            TailForm::RadialPowerApproach {
                phase,
                a: rate,
                p,
                offset,
            } => {
                if ca == Complex64::new(0.0, 0.0) {
                    // η_0 = -id preserves the closed form
                    parts.push(TailForm::RadialPowerApproach {
                        phase: -phase,
                        a: *rate,
                        p: *p,
                        offset: *offset,
                    });
                } else {
                    return Ok(PhiImage::Scan(ScanSeq {
                        center: a.clone(),
                        arg: z.clone(),
                    }));
                }
            }
            TailForm::Interleaved { .. } => unreachable!("tail parts are simple"),
        }
    }
    let tail = if parts.len() == 1 {
        parts.pop().expect("one part")
    } else {
        TailForm::Interleaved { parts }
    };
    Ok(PhiImage::Closed(BallSeq::new(prefix, tail)?))
}

fn num_integer_lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// ρ(δ_x, δ_y) computed through the automorphism route ‖Φ_x(y)‖.
/// Agrees with the coordinatewise supremum route within tolerance.
pub fn rho_via_autom(x: &BallSeq, y: &BallSeq, tol: f64) -> Result<CertifiedValue> {
    Ok(phi_seq(x, y)?.sup_norm(tol))
}

// ---------------------------------------------------------------------------
// Hilbert-ball automorphism β_x
// ---------------------------------------------------------------------------

/// A point of a finite-dimensional slice of the ℓ₂ ball.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Vector(Vec<Complex64>);

impl L2Vector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        L2Vector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        L2Vector(vec![Complex64::new(0.0, 0.0); dim])
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    /// Entry with zero-padding past the stored length.
    fn at(&self, i: usize) -> Complex64 {
        self.0.get(i).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Hermitian inner product ⟨u, v⟩ = Σ u_i · conj(v_i), linear in the
    /// first slot.
    pub fn inner(&self, other: &L2Vector) -> Complex64 {
        let len = self.0.len().max(other.0.len());
        (0..len).map(|i| self.at(i) * other.at(i).conj()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// The ℓ₂-ball automorphism
/// β_x(y) = ⟨m, x⟩/(1 + √(1−‖x‖²)) · x + √(1−‖x‖²) · m with
/// m = (x − y)/(1 − ⟨y, x⟩). Swaps x and 0 and is its own inverse.
pub fn beta_ell2(x: &L2Vector, y: &L2Vector) -> Result<L2Vector> {
    let nx = x.norm();
    if nx >= 1.0 {
        return Err(Error::CenterNotInterior(nx));
    }
    let ny = y.norm();
    if ny >= 1.0 {
        return Err(Error::OutsideOpenBall(ny));
    }
    let len = x.0.len().max(y.0.len());
    let denom = Complex64::new(1.0, 0.0) - y.inner(x);
    let m: Vec<Complex64> = (0..len).map(|i| (x.at(i) - y.at(i)) / denom).collect();
    let m = L2Vector(m);
    let s = (1.0 - nx * nx).sqrt();
    let coef = m.inner(x) / (1.0 + s);
    let out = (0..len).map(|i| coef * x.at(i) + s * m.at(i)).collect();
    Ok(L2Vector(out))
}

// ---------------------------------------------------------------------------
// Operator-ball automorphism Φ_R
// ---------------------------------------------------------------------------

/// A strict contraction on a finite-dimensional Hilbert space: a square
/// complex matrix of operator norm (largest singular value) below 1.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPoint {
    m: DMatrix<Complex64>,
}

impl OperatorPoint {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::Descriptor {
                field: "matrix".into(),
                message: format!("expected a nonempty square matrix, got {}x{}", m.nrows(), m.ncols()),
            });
        }
        let point = OperatorPoint { m };
        let norm = point.operator_norm();
        if norm >= 1.0 {
            return Err(Error::NotContraction(norm));
        }
        Ok(point)
    }

    /// Internal constructor for automorphism images, whose norms are below
    /// 1 by the mapping property rather than by re-validation.
    fn from_image(m: DMatrix<Complex64>) -> Self {
        OperatorPoint { m }
    }

    pub fn zeros(dim: usize) -> Self {
        OperatorPoint {
            m: DMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        self.m
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }
}

/// `h^pow` for a Hermitian positive-definite `h`, by eigendecomposition.
pub(crate) fn hermitian_power(h: &DMatrix<Complex64>, pow: f64) -> Result<DMatrix<Complex64>> {
    let eigen = SymmetricEigen::new(h.clone());
    let min = eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::IllConditioned(format!(
            "Gram factor has eigenvalue {min:.3e}; the contraction is too close to the boundary"
        )));
    }
    let d = DMatrix::from_diagonal(&eigen.eigenvalues.map(|l| Complex64::new(l.powf(pow), 0.0)));
    let q = &eigen.eigenvectors;
    Ok(q * d * q.adjoint())
}

/// Operator-ball automorphism with Φ_R(R) = 0 and inverse Φ_{−R}:
///
/// Φ_R(T) = (I − RR*)^{−1/2} (T − R) (I − R*T)^{−1} (I − R*R)^{1/2}.
///
/// The outer factors carry opposite half-powers; with both taken as +1/2
/// the map is not surjective onto the ball and Φ_{−R} fails to invert it
/// (visible already for scalars, where the formula must reduce to the disc
/// Möbius map (t − r)/(1 − r̄t)).
pub fn phi_operator(r: &OperatorPoint, t: &OperatorPoint) -> Result<OperatorPoint> {
    if r.dim() != t.dim() {
        return Err(Error::Descriptor {
            field: "matrix".into(),
            message: format!("dimension mismatch: {} vs {}", r.dim(), t.dim()),
        });
    }
    let id = DMatrix::<Complex64>::identity(r.dim(), r.dim());
    let gram_left = &id - &r.m * r.m.adjoint();
    let gram_right = &id - r.m.adjoint() * &r.m;
    let left = hermitian_power(&gram_left, -0.5)?;
    let right = hermitian_power(&gram_right, 0.5)?;
    let middle = &id - r.m.adjoint() * &t.m;
    let solved = middle.lu().solve(&right).ok_or_else(|| {
        Error::IllConditioned("I - R*T is numerically singular".to_string())
    })?;
    Ok(OperatorPoint::from_image(left * (&t.m - &r.m) * solved))
}

/// ρ(δ_R, δ_S) on the operator ball: the norm of the automorphism image,
/// ‖Φ_R(S)‖.
pub fn rho_operator(r: &OperatorPoint, s: &OperatorPoint) -> Result<f64> {
    Ok(phi_operator(r, s)?.operator_norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn phi_seq_kills_its_center() {
        let a = BallSeq::constant(c(0.5, -0.25)).unwrap();
        let image = phi_seq(&a, &a).unwrap();
        let sup = image.sup_norm(1e-9);
        assert_eq!((sup.lo(), sup.hi()), (0.0, 0.0));
    }

    #[test]
    fn phi_seq_at_zero_center_negates() {
        let z = BallSeq::new(vec![c(0.1, 0.2)], TailForm::radial(c(1.0, 0.0), 1.0, 1.0)).unwrap();
        let image = phi_seq(&BallSeq::zeros(), &z).unwrap();
        for n in [1usize, 2, 5, 10] {
            assert!((image.entry(n) + z.entry(n)).norm() < 1e-15);
        }
        // closed form preserved
        assert!(image.into_closed().is_ok());
    }

    #[test]
    fn phi_seq_constant_coordinate_value() {
        let a = BallSeq::constant(c(0.5, 0.0)).unwrap();
        let z = BallSeq::constant(c(0.0, 0.5)).unwrap();
        let image = phi_seq(&a, &z).unwrap();
        let expected = (c(0.5, 0.0) - c(0.0, 0.5)) / (c(1.0, 0.0) - c(0.5, 0.0) * c(0.0, 0.5));
        assert!((image.entry(3) - expected).norm() < 1e-15);
        assert!((image.sup_norm(1e-9).lo() - 0.6859943405700353).abs() < 1e-12);
    }

    #[test]
    fn phi_seq_rejects_boundary_center() {
        let a = BallSeq::radial(c(1.0, 0.0), 1.0, 1.0).unwrap();
        assert!(matches!(
            phi_seq(&a, &BallSeq::zeros()),
            Err(Error::NotCertifiedBelow { .. })
        ));
    }

    #[test]
    fn phi_seq_degrades_to_scan_on_radial_tail() {
        let a = BallSeq::constant(c(0.5, 0.0)).unwrap();
        let z = BallSeq::radial(c(1.0, 0.0), 1.0, 1.0).unwrap();
        let image = phi_seq(&a, &z).unwrap();
        match &image {
            PhiImage::Scan(scan) => {
                // entries still evaluable
                let e2 = scan.entry(2);
                let expected = mobius_value(c(0.5, 0.0), c(0.5, 0.0));
                assert!((e2 - expected).norm() < 1e-15);
                let sup = scan.sup_norm(1e-9);
                assert_eq!((sup.lo(), sup.hi()), (1.0, 1.0));
            }
            PhiImage::Closed(_) => panic!("expected scan-backed image"),
        }
        assert!(matches!(
            image.into_closed(),
            Err(Error::ScanBackedTail(_))
        ));
    }

    #[test]
    fn phi_seq_involution_on_finite() {
        let a = BallSeq::finite(vec![c(0.4, 0.1), c(-0.2, 0.3)]).unwrap();
        let z = BallSeq::finite(vec![c(0.7, -0.1), c(0.05, 0.6), c(0.3, 0.3)]).unwrap();
        let once = phi_seq(&a, &z).unwrap().into_closed().unwrap();
        let twice = phi_seq(&a, &once).unwrap().into_closed().unwrap();
        for n in 1..=5 {
            assert!((twice.entry(n) - z.entry(n)).norm() < 1e-10);
        }
    }

    #[test]
    fn rho_via_autom_examples() {
        let x = BallSeq::constant(c(0.3, 0.2)).unwrap();
        let v = rho_via_autom(&x, &x, 1e-9).unwrap();
        assert_eq!(v.hi(), 0.0);

        let y = BallSeq::finite(vec![c(0.0, 0.8), c(0.1, 0.0)]).unwrap();
        let v = rho_via_autom(&BallSeq::zeros(), &y, 1e-9).unwrap();
        assert_eq!(v.lo(), y.sup_norm(1e-9).lo());

        let x = BallSeq::constant(c(0.5, 0.0)).unwrap();
        let y = BallSeq::constant(c(-0.5, 0.0)).unwrap();
        let v = rho_via_autom(&x, &y, 1e-9).unwrap();
        assert!((v.lo() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn beta_fixed_points() {
        let x = L2Vector::new(vec![c(0.3, 0.1), c(-0.2, 0.4)]);
        let at_x = beta_ell2(&x, &x).unwrap();
        assert!(at_x.norm() < 1e-15);

        let y = L2Vector::new(vec![c(0.1, -0.5), c(0.2, 0.2)]);
        let neg = beta_ell2(&L2Vector::zeros(2), &y).unwrap();
        for i in 0..2 {
            assert!((neg.at(i) + y.at(i)).norm() < 1e-15);
        }

        let at_zero = beta_ell2(&x, &L2Vector::zeros(2)).unwrap();
        for i in 0..2 {
            assert!((at_zero.at(i) - x.at(i)).norm() < 1e-14);
        }
    }

    #[test]
    fn beta_involution_complex() {
        let x = L2Vector::new(vec![c(0.3, 0.1), c(-0.2, 0.4), c(0.05, -0.3)]);
        let y = L2Vector::new(vec![c(-0.1, 0.25), c(0.4, 0.0), c(0.2, 0.35)]);
        let image = beta_ell2(&x, &y).unwrap();
        assert!(image.norm() < 1.0);
        let back = beta_ell2(&x, &image).unwrap();
        for i in 0..3 {
            assert!(
                (back.at(i) - y.at(i)).norm() < 1e-12,
                "coordinate {i}: {} vs {}",
                back.at(i),
                y.at(i)
            );
        }
    }

    #[test]
    fn beta_domain_errors() {
        let big = L2Vector::new(vec![c(1.0, 0.0)]);
        let ok = L2Vector::new(vec![c(0.1, 0.0)]);
        assert!(matches!(beta_ell2(&big, &ok), Err(Error::CenterNotInterior(_))));
        assert!(matches!(beta_ell2(&ok, &big), Err(Error::OutsideOpenBall(_))));
    }

    fn op1(x: f64) -> OperatorPoint {
        OperatorPoint::new(DMatrix::from_element(1, 1, c(x, 0.0))).unwrap()
    }

    #[test]
    fn operator_scalar_oracle() {
        // d = 1 reduces to the disc Möbius map: Φ_{0.5}(−0.5) = −1/1.25 = −0.8
        let image = phi_operator(&op1(0.5), &op1(-0.5)).unwrap();
        assert!((image.matrix()[(0, 0)] - c(-0.8, 0.0)).norm() < 1e-12);
        let rho = rho_operator(&op1(0.5), &op1(-0.5)).unwrap();
        assert!((rho - 0.8).abs() < 1e-12);
        // matches the disc metric, as the d = 1 identity requires
        let disc_rho = disc::rho_disc(
            DiscPoint::real(0.5).unwrap(),
            DiscPoint::real(-0.5).unwrap(),
        );
        assert!((rho - disc_rho).abs() < 1e-12);
    }

    #[test]
    fn operator_kills_center_and_fixes_zero_center() {
        let r = OperatorPoint::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.3, 0.1), c(0.0, 0.2), c(-0.1, 0.0), c(0.25, -0.15)],
        ))
        .unwrap();
        let at_r = phi_operator(&r, &r).unwrap();
        assert!(at_r.operator_norm() < 1e-12);

        let t = OperatorPoint::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.2, 0.0), c(0.1, -0.3), c(0.0, 0.4), c(-0.2, 0.1)],
        ))
        .unwrap();
        let through_zero = phi_operator(&OperatorPoint::zeros(2), &t).unwrap();
        assert!((through_zero.matrix() - t.matrix()).norm() < 1e-13);
    }

    #[test]
    fn operator_involution() {
        let r = OperatorPoint::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.3, 0.1), c(0.0, 0.2), c(-0.1, 0.0), c(0.25, -0.15)],
        ))
        .unwrap();
        let t = OperatorPoint::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.2, 0.0), c(0.1, -0.3), c(0.0, 0.4), c(-0.2, 0.1)],
        ))
        .unwrap();
        let neg_r = OperatorPoint::new(-r.matrix().clone()).unwrap();
        let image = phi_operator(&r, &t).unwrap();
        assert!(image.operator_norm() < 1.0);
        let back = phi_operator(&neg_r, &image).unwrap();
        assert!(
            (back.matrix() - t.matrix()).norm() < 1e-10,
            "residual {}",
            (back.matrix() - t.matrix()).norm()
        );
    }

    #[test]
    fn hermitian_sqrt_squares_back() {
        let r = DMatrix::from_row_slice(2, 2, &[c(0.3, 0.1), c(0.0, 0.2), c(-0.1, 0.0), c(0.25, -0.15)]);
        let id = DMatrix::<Complex64>::identity(2, 2);
        let gram = &id - &r * r.adjoint();
        let root = hermitian_power(&gram, 0.5).unwrap();
        assert!((&root * &root - &gram).norm() < 1e-10);
    }

    #[test]
    fn operator_point_validates() {
        assert!(OperatorPoint::new(DMatrix::from_element(1, 1, c(1.0, 0.0))).is_err());
        assert!(OperatorPoint::new(DMatrix::from_element(1, 2, c(0.0, 0.0))).is_err());
    }
}
