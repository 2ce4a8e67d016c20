//! Acceptance suite: the release criteria, each checked at its stated
//! tolerance, with one PASS/FAIL line printed per criterion
//! (visible under `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use gleason_core::autom::{self, L2Vector, OperatorPoint};
use gleason_core::blaschke::{self, BlaschkeConfig, EvalPoint, JSet};
use gleason_core::disc::{self, Attainment, DiscPoint};
use gleason_core::metric::{self, DifferentWitness, PartCase, SamePartVerdict};
use gleason_core::seqspace::{BallSeq, KeepSet, TailForm};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_cplx(rng: &mut ChaCha8Rng, max_r: f64) -> Complex64 {
    let r = rng.random_range(0.0..max_r);
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, t)
}

fn random_finite(rng: &mut ChaCha8Rng, max_dim: usize, max_r: f64) -> BallSeq {
    let dim = rng.random_range(1..=max_dim);
    BallSeq::finite((0..dim).map(|_| random_cplx(rng, max_r)).collect()).unwrap()
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

fn example_separation_pair() -> Check {
    let z = BallSeq::radial(c(1.0, 0.0), 1.0, 1.0).unwrap(); // 1 - 1/n
    let u = BallSeq::radial(c(1.0, 0.0), 0.5, 1.0).unwrap(); // 1 - 1/(2n)
    let w = BallSeq::radial(c(1.0, 0.0), 1.0, 2.0).unwrap(); // 1 - 1/n²

    let started = Instant::now();
    let rho_zu = metric::rho_seq(&z, &u, 1e-9);
    ensure!(
        rho_zu.lo() <= 0.5 && 0.5 <= rho_zu.hi(),
        "enclosure [{}, {}] misses 1/2",
        rho_zu.lo(),
        rho_zu.hi()
    );
    ensure!(rho_zu.width() <= 1e-9, "width {} > 1e-9", rho_zu.width());
    ensure!(
        rho_zu.attained() == Attainment::AttainedAt(1),
        "expected attainment at the first coordinate, got {:?}",
        rho_zu.attained()
    );
    match metric::same_part(&z, &u, 1e-9, 1000) {
        SamePartVerdict::Same { .. } => {}
        other => return Err(format!("expected Same, got {other:?}")),
    }
    let first_elapsed = started.elapsed();
    ensure!(
        first_elapsed.as_secs_f64() < 1.0,
        "same-part pair took {first_elapsed:?}"
    );

    let started = Instant::now();
    let rho_zw = metric::rho_seq(&z, &w, 1e-9);
    ensure!(
        (rho_zw.lo(), rho_zw.hi()) == (1.0, 1.0),
        "expected [1, 1], got [{}, {}]",
        rho_zw.lo(),
        rho_zw.hi()
    );
    match metric::same_part(&z, &w, 1e-9, 1000) {
        SamePartVerdict::Different {
            witness: DifferentWitness::TailApproach { .. },
        } => {}
        other => return Err(format!("expected tail-approach Different, got {other:?}")),
    }
    // the per-coordinate distances match the closed form (n² - n)/(n² + n - 1)
    for n in [2usize, 3, 10, 100] {
        let rho_n = disc::rho_disc(
            DiscPoint::new(z.entry(n)).unwrap(),
            DiscPoint::new(w.entry(n)).unwrap(),
        );
        let nf = n as f64;
        let formula = (nf * nf - nf) / (nf * nf + nf - 1.0);
        ensure!(
            (rho_n - formula).abs() <= 1e-12,
            "coordinate {n}: {rho_n} vs formula {formula}"
        );
    }
    let second_elapsed = started.elapsed();
    ensure!(
        second_elapsed.as_secs_f64() < 1.0,
        "different-part pair took {second_elapsed:?}"
    );
    Ok(())
}

fn metric_bijection_suite() -> Check {
    for i in 0..=1000 {
        let rho = i as f64 / 1000.0;
        let norm = disc::gleason_norm_from_rho(rho).map_err(|e| e.to_string())?;
        let back = disc::rho_from_gleason_norm(norm).map_err(|e| e.to_string())?;
        ensure!(
            (back - rho).abs() <= 1e-12,
            "round trip at rho = {rho}: back = {back}"
        );
    }
    let at_four_fifths = disc::gleason_norm_from_rho(0.8).map_err(|e| e.to_string())?;
    ensure!(
        (at_four_fifths - 1.0).abs() <= 1e-12,
        "norm(4/5) = {at_four_fifths}"
    );
    Ok(())
}

fn origin_distance_is_sup_norm() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    const BRUTE_LIMIT: usize = 1_000_000;
    for case in 0..100 {
        let z = match case % 4 {
            0 => random_finite(&mut rng, 8, 0.999),
            1 => {
                let prefix = (0..rng.random_range(0..4))
                    .map(|_| random_cplx(&mut rng, 0.99))
                    .collect();
                BallSeq::new(prefix, TailForm::constant(random_cplx(&mut rng, 0.99))).unwrap()
            }
            2 => {
                let phase = Complex64::from_polar(1.0, rng.random_range(0.0..6.28));
                BallSeq::new(
                    Vec::new(),
                    TailForm::RadialPowerApproach {
                        phase,
                        a: rng.random_range(0.1..1.0),
                        p: rng.random_range(0.3..3.0),
                        offset: 0,
                    },
                )
                .unwrap()
            }
            _ => BallSeq::new(
                Vec::new(),
                TailForm::Interleaved {
                    parts: vec![
                        TailForm::constant(random_cplx(&mut rng, 0.9)),
                        TailForm::radial(
                            Complex64::from_polar(1.0, rng.random_range(0.0..6.28)),
                            rng.random_range(0.1..1.0),
                            rng.random_range(0.3..3.0),
                        ),
                    ],
                },
            )
            .unwrap(),
        };
        let sup = z.sup_norm(1e-9);
        let origin = metric::rho_origin(&z, 1e-9);
        ensure!(origin == sup, "case {case}: rho_origin differs from sup_norm");

        let mut brute = 0.0_f64;
        for n in 1..=BRUTE_LIMIT {
            brute = brute.max(z.entry(n).norm());
        }
        // the enclosure exceeds any finite scan by at most the provable
        // residual of the radial parts past the scanned range
        let residual = z
            .tail()
            .parts()
            .iter()
            .map(|part| match part {
                TailForm::RadialPowerApproach { a, p, offset, .. } => {
                    a * ((BRUTE_LIMIT / 2) as f64 + *offset as f64).powf(-p)
                }
                _ => 0.0,
            })
            .fold(0.0_f64, f64::max);
        ensure!(
            brute <= sup.hi() + 1e-12,
            "case {case}: brute max {brute} above enclosure {}",
            sup.hi()
        );
        ensure!(
            sup.hi() - brute <= residual + 1e-12,
            "case {case}: enclosure {} vs brute {brute}, residual allowance {residual}",
            sup.hi()
        );
    }
    Ok(())
}

fn restriction_laws_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..1000 {
        let dim = rng.random_range(1..=8usize);
        let z = BallSeq::finite((0..dim).map(|_| random_cplx(&mut rng, 0.95)).collect()).unwrap();
        let w = BallSeq::finite((0..dim).map(|_| random_cplx(&mut rng, 0.95)).collect()).unwrap();
        let full = metric::gleason_norm_seq(&z, &w, 1e-9);

        // restriction never expands the distance
        let kept: Vec<usize> = (1..=dim).filter(|_| rng.random_range(0..2) == 1).collect();
        if !kept.is_empty() {
            let keep = KeepSet::finite(kept).unwrap();
            let restricted = metric::gleason_norm_seq(
                &z.restrict(&keep).map_err(|e| e.to_string())?,
                &w.restrict(&keep).map_err(|e| e.to_string())?,
                1e-9,
            );
            ensure!(
                restricted.hi() <= full.hi() + 1e-12,
                "trial {trial}: restricted {} > full {}",
                restricted.hi(),
                full.hi()
            );
        }

        // appending an identical coordinate changes nothing, exactly
        let extra = random_cplx(&mut rng, 0.95);
        let pad = |s: &BallSeq| {
            let mut v: Vec<Complex64> = (1..=dim).map(|n| s.entry(n)).collect();
            v.push(extra);
            BallSeq::finite(v).unwrap()
        };
        let padded = metric::rho_seq(&pad(&z), &pad(&w), 1e-9);
        let plain = metric::rho_seq(&z, &w, 1e-9);
        ensure!(
            padded.lo() == plain.lo() && padded.hi() == plain.hi(),
            "trial {trial}: padding changed the enclosure"
        );

        // finite-stage distances increase into the enclosure
        let mut prev = 0.0;
        for n in 1..=dim {
            let stage =
                metric::gleason_norm_seq(&z.project_prefix(n), &w.project_prefix(n), 1e-9);
            ensure!(
                stage.lo() + 1e-15 >= prev,
                "trial {trial}: stage {n} decreased"
            );
            ensure!(
                stage.hi() <= full.hi() + 1e-12,
                "trial {trial}: stage {n} above the enclosure"
            );
            prev = stage.lo();
        }
        ensure!(
            (prev - full.hi()).abs() <= 1e-12,
            "trial {trial}: final stage {prev} differs from {}",
            full.hi()
        );
    }
    Ok(())
}

fn mobius_distortion_sweep() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..10_000 {
        let s = rng.random_range(0.0..=0.999);
        let alpha = DiscPoint::new(Complex64::from_polar(
            s * rng.random_range(0.0..=1.0),
            rng.random_range(0.0..std::f64::consts::TAU),
        ))
        .unwrap();
        let lambda = DiscPoint::new(Complex64::from_polar(
            s * rng.random_range(0.0..=1.0),
            rng.random_range(0.0..std::f64::consts::TAU),
        ))
        .unwrap();
        let image = disc::mobius(alpha, lambda).map_err(|e| e.to_string())?;
        let bound = disc::mobius_bound(s).map_err(|e| e.to_string())?;
        ensure!(
            image.modulus() <= bound + 1e-12,
            "trial {trial}: |image| = {} above bound {bound} at s = {s}",
            image.modulus()
        );
    }
    Ok(())
}

fn automorphism_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(14);

    // coordinatewise Möbius: involution and the two-route cross-check
    for trial in 0..1000 {
        let x = random_finite(&mut rng, 6, 0.9);
        let y = random_finite(&mut rng, 6, 0.95);
        let once = autom::phi_seq(&x, &y)
            .map_err(|e| e.to_string())?
            .into_closed()
            .map_err(|e| e.to_string())?;
        let twice = autom::phi_seq(&x, &once)
            .map_err(|e| e.to_string())?
            .into_closed()
            .map_err(|e| e.to_string())?;
        for n in 1..=7 {
            ensure!(
                (twice.entry(n) - y.entry(n)).norm() <= 1e-10,
                "trial {trial}: involution residual at {n}"
            );
        }
        let via = autom::rho_via_autom(&x, &y, 1e-9).map_err(|e| e.to_string())?;
        let direct = metric::rho_seq(&x, &y, 1e-9);
        ensure!(
            (via.lo() - direct.lo()).abs() <= 1e-9,
            "trial {trial}: routes differ by {}",
            (via.lo() - direct.lo()).abs()
        );
    }

    // Hilbert-ball automorphism
    for trial in 0..1000 {
        let dim = rng.random_range(1..=16usize);
        let draw = |rng: &mut ChaCha8Rng, target: f64| {
            let raw = L2Vector::new((0..dim).map(|_| random_cplx(rng, 1.0)).collect());
            let norm = raw.norm().max(1e-9);
            let scale = rng.random_range(0.0..target) / norm;
            L2Vector::new(raw.entries().iter().map(|e| e * scale).collect())
        };
        let x = draw(&mut rng, 0.95);
        let y = draw(&mut rng, 0.95);
        let at_x = autom::beta_ell2(&x, &x).map_err(|e| e.to_string())?;
        ensure!(at_x.norm() <= 1e-10, "trial {trial}: beta_x(x) = {}", at_x.norm());
        let at_zero =
            autom::beta_ell2(&x, &L2Vector::zeros(dim)).map_err(|e| e.to_string())?;
        for i in 0..dim {
            ensure!(
                (at_zero.entries()[i] - x.entries()[i]).norm() <= 1e-10,
                "trial {trial}: beta_x(0) differs from x at {i}"
            );
        }
        let image = autom::beta_ell2(&x, &y).map_err(|e| e.to_string())?;
        ensure!(image.norm() < 1.0, "trial {trial}: image norm {}", image.norm());
        let back = autom::beta_ell2(&x, &image).map_err(|e| e.to_string())?;
        for i in 0..dim {
            ensure!(
                (back.entries()[i] - y.entries()[i]).norm() <= 1e-8,
                "trial {trial}: involution residual at {i}"
            );
        }
    }

    // operator ball: the scalar oracle first, then the random sweep
    let scalar_oracle = {
        // full formula at d = 1, R = 0.5, T = -0.5:
        // (1 - R R*)^(-1/2) (T - R) (1 - R* T)^(-1) (1 - R* R)^(1/2)
        let (r, t) = (0.5_f64, -0.5_f64);
        (1.0 - r * r).powf(-0.5) * (t - r) / (1.0 - r * t) * (1.0 - r * r).powf(0.5)
    };
    ensure!(
        (scalar_oracle - (-0.8)).abs() <= 1e-15,
        "scalar oracle evaluated to {scalar_oracle}"
    );
    let r1 = OperatorPoint::new(DMatrix::from_element(1, 1, c(0.5, 0.0))).unwrap();
    let t1 = OperatorPoint::new(DMatrix::from_element(1, 1, c(-0.5, 0.0))).unwrap();
    let image = autom::phi_operator(&r1, &t1).map_err(|e| e.to_string())?;
    ensure!(
        (image.matrix()[(0, 0)] - c(scalar_oracle, 0.0)).norm() <= 1e-12,
        "d = 1 image {} vs oracle {scalar_oracle}",
        image.matrix()[(0, 0)]
    );
    let rho1 = autom::rho_operator(&r1, &t1).map_err(|e| e.to_string())?;
    let disc_rho = disc::rho_disc(
        DiscPoint::real(0.5).unwrap(),
        DiscPoint::real(-0.5).unwrap(),
    );
    ensure!(
        (rho1 - disc_rho).abs() <= 1e-12,
        "d = 1 operator distance {rho1} vs disc distance {disc_rho}"
    );

    for trial in 0..1000 {
        let d = rng.random_range(1..=8usize);
        let draw = |rng: &mut ChaCha8Rng| {
            let raw = DMatrix::from_fn(d, d, |_, _| random_cplx(rng, 1.0));
            let norm = raw
                .clone()
                .svd(false, false)
                .singular_values
                .iter()
                .copied()
                .fold(0.0, f64::max)
                .max(1e-9);
            let target = rng.random_range(0.05..0.9);
            OperatorPoint::new(raw * c(target / norm, 0.0)).unwrap()
        };
        let r = draw(&mut rng);
        let t = draw(&mut rng);
        let at_r = autom::phi_operator(&r, &r).map_err(|e| e.to_string())?;
        ensure!(
            at_r.operator_norm() <= 1e-8,
            "trial {trial}: phi_R(R) norm {}",
            at_r.operator_norm()
        );
        let image = autom::phi_operator(&r, &t).map_err(|e| e.to_string())?;
        ensure!(
            image.operator_norm() < 1.0,
            "trial {trial}: image norm {}",
            image.operator_norm()
        );
        let neg_r = OperatorPoint::new(-r.matrix().clone()).unwrap();
        let back = autom::phi_operator(&neg_r, &image).map_err(|e| e.to_string())?;
        let residual = (back.matrix() - t.matrix()).norm();
        ensure!(
            residual <= 1e-6,
            "trial {trial}: inverse residual {residual}"
        );
    }
    Ok(())
}

/// Double-double product of the configured zero-set rates: the
/// extended-precision route the truncated evaluation must agree with.
fn dd_product_of_rates(cfg: &BlaschkeConfig) -> f64 {
    let two_prod = |a: f64, b: f64| {
        let p = a * b;
        (p, a.mul_add(b, -p))
    };
    let (mut hi, mut lo) = (1.0_f64, 0.0_f64);
    for j in 1..4000 {
        let rj = cfg.r_k(j);
        if rj == 1.0 {
            break;
        }
        let (p, e) = two_prod(hi, rj);
        let e2 = e + lo * rj;
        hi = p + e2;
        lo = e2 - (hi - p);
    }
    hi + lo
}

fn blaschke_suite() -> Check {
    let cfg = BlaschkeConfig::canonical(0.5, 0.1, 16).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);

    // |G(z)| < 1 on random points of the 0.9-ball
    for trial in 0..1000 {
        let z = random_finite(&mut rng, 10, 0.9);
        let v = blaschke::blaschke_eval(&cfg, &z, 1e-10).map_err(|e| e.to_string())?;
        ensure!(
            v.modulus_hi() < 1.0,
            "trial {trial}: |G| enclosure reaches {}",
            v.modulus_hi()
        );
    }

    // the origin value against the extended-precision oracle
    let origin = blaschke::blaschke_eval_at(&cfg, &EvalPoint::Origin, 1e-12)
        .map_err(|e| e.to_string())?;
    let oracle = dd_product_of_rates(&cfg);
    ensure!(
        (origin.value.re - oracle).abs() <= 1e-10 && origin.value.im == 0.0,
        "G(0) = {} vs oracle {oracle}",
        origin.value.re
    );

    // vanishing at configuration points past the skip, exactly
    for n in 0..6usize {
        for k in (n + 1)..=(n + 4) {
            let v = blaschke::tail_blaschke(&cfg, n, &EvalPoint::CanonicalZk(k), 1e-10)
                .map_err(|e| e.to_string())?;
            ensure!(
                v.value == c(0.0, 0.0) && v.tail_bound == 0.0,
                "f_{n} at z_{k} = {:?}",
                v.value
            );
        }
    }

    // monotone climb of f_N(0) toward 1
    let mut prev = 0.0;
    for n in 1..=30 {
        let v = blaschke::tail_blaschke(&cfg, n, &EvalPoint::Origin, 1e-12)
            .map_err(|e| e.to_string())?;
        ensure!(v.value.re > prev, "f_{n}(0) = {} not above {prev}", v.value.re);
        ensure!(v.value.re < 1.0, "f_{n}(0) = {} reached 1", v.value.re);
        prev = v.value.re;
    }
    ensure!(
        1.0 - prev <= 0.6 * 0.5_f64.powi(30) + 0.05 * 0.25_f64.powi(30) + 1e-12,
        "f_30(0) = {prev} too far from 1"
    );

    // curve solve against the closed form
    let tol = 1e-11;
    for k in 1..=10usize {
        for i in 0..20 {
            let angle = i as f64 / 20.0 * std::f64::consts::TAU;
            let radius = (i as f64 + 1.0) / 21.0 * 0.45 * cfg.disc_radius();
            let lambda = Complex64::from_polar(radius, angle);
            let xi = blaschke::solve_xi(&cfg, k, lambda, tol).map_err(|e| e.to_string())?;
            let closed = blaschke::xi_closed_form(&cfg, k, lambda);
            ensure!(
                (xi - closed).norm() <= 10.0 * tol,
                "k = {k}, grid {i}: solver {xi} vs closed form {closed}"
            );
            ensure!(
                xi.norm() < cfg.disc_radius(),
                "k = {k}, grid {i}: |xi| = {} outside the curve disc",
                xi.norm()
            );
        }
    }

    // restricted separation values: certificate and factor-wise bound
    let jset = JSet::evens();
    let eps = 0.1;
    let k0 = blaschke::separation_certificate(&cfg, &jset, eps).map_err(|e| e.to_string())?;
    for k in [k0 + 1, k0 + 3] {
        let sep = blaschke::tail_blaschke_over(&cfg, &jset, k0, k, 1e-12)
            .map_err(|e| e.to_string())?;
        if sep.vanishes {
            ensure!(sep.value.value == c(0.0, 0.0), "vanishing case not exact");
            continue;
        }
        ensure!(
            sep.value.modulus_lo() >= (1.0 - eps) * (1.0 - eps),
            "certificate at k = {k}: |value| = {} below (1-eps)^2",
            sep.value.modulus_lo()
        );
        ensure!(
            sep.value.modulus_lo() >= sep.product_lower_bound,
            "value below the restricted product bound"
        );
    }
    for j in 1..=40usize {
        let (rj, aj) = (cfg.r_k(j), cfg.a_k(j));
        let factor_bound = (rj - aj) / (1.0 + rj * aj);
        ensure!(rj > factor_bound, "factor {j}: r_j not above its bound");
        // both sides on the 1 − r_j scale, free of cancellation:
        // 1 − (r−a)/(1+ra) = ((1−r) + a(1+r)) / (1+ra)  vs  (1−r) + 2a
        let om = cfg.one_minus_r(j);
        let lhs = (om + aj * (2.0 - om)) / (1.0 + rj * aj);
        let rhs = om + 2.0 * aj;
        ensure!(lhs < rhs, "factor {j}: comparison series bound fails");
    }
    Ok(())
}

fn shift_radius_suite() -> Check {
    let r_origin = metric::shift_radius(DiscPoint::ORIGIN, 1e-9).map_err(|e| e.to_string())?;
    ensure!(
        (r_origin - 0.8).abs() <= 1e-8,
        "radius at the origin: {r_origin}"
    );
    let r_half = metric::shift_radius(DiscPoint::real(0.5).unwrap(), 1e-9)
        .map_err(|e| e.to_string())?;
    ensure!(
        (r_half - 3.0 / 7.0).abs() <= 1e-8,
        "radius at 0.5: {r_half}"
    );

    for &b in &[
        DiscPoint::ORIGIN,
        DiscPoint::real(0.5).unwrap(),
        DiscPoint::new(c(0.0, 0.7)).unwrap(),
    ] {
        let r = metric::shift_radius(b, 1e-9).map_err(|e| e.to_string())?;
        for i in 0..1000 {
            let t = i as f64 / 1000.0 * std::f64::consts::TAU;
            let point = DiscPoint::new(b.value() + 0.999 * r * c(t.cos(), t.sin()))
                .map_err(|e| e.to_string())?;
            let norm = disc::gleason_norm_from_rho(disc::rho_disc(b, point))
                .map_err(|e| e.to_string())?;
            ensure!(
                norm < 1.0,
                "sample {i} near {b:?}: norm distance {norm} not below 1"
            );
        }
    }
    Ok(())
}

fn classification_fixtures() -> Check {
    let expect = |z: &BallSeq, want: &str| -> Check {
        let got = metric::classify(z, 1e-9).map_err(|e| e.to_string())?.case;
        ensure!(
            got.roman() == want,
            "expected case {want}, got {}",
            got.roman()
        );
        Ok(())
    };
    expect(&BallSeq::zeros(), "(i)")?;

    let angle = std::f64::consts::FRAC_PI_4;
    expect(
        &BallSeq::constant(c(angle.cos(), angle.sin())).unwrap(),
        "(ii)",
    )?;

    expect(
        &BallSeq::new(vec![c(0.0, 1.0)], TailForm::constant(c(0.5, 0.0))).unwrap(),
        "(iii)",
    )?;

    expect(&BallSeq::radial(c(1.0, 0.0), 1.0, 1.0).unwrap(), "(iv)")?;

    expect(
        &BallSeq::new(
            Vec::new(),
            TailForm::Interleaved {
                parts: vec![TailForm::zero(), TailForm::radial(c(1.0, 0.0), 1.0, 1.0)],
            },
        )
        .unwrap(),
        "(v)",
    )?;

    // the finite-polydisc variant of case (iii) carries its dimension
    let finite_case = metric::classify(
        &BallSeq::new(
            vec![c(0.2, 0.0), c(0.0, -0.4)],
            TailForm::constant(c(0.0, 1.0)),
        )
        .unwrap(),
        1e-9,
    )
    .map_err(|e| e.to_string())?;
    ensure!(
        finite_case.case == PartCase::BoundaryFixedBall(Some(2)),
        "finite fixture classified as {:?}",
        finite_case.case
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// harness
// ---------------------------------------------------------------------------

#[test]
fn acceptance() {
    let criteria: &[(&str, fn() -> Check)] = &[
        ("separation-example-pair", example_separation_pair),
        ("metric-bijection-suite", metric_bijection_suite),
        ("origin-distance-sup-norm", origin_distance_is_sup_norm),
        ("restriction-laws-suite", restriction_laws_suite),
        ("mobius-distortion-sweep", mobius_distortion_sweep),
        ("automorphism-suite", automorphism_suite),
        ("blaschke-suite", blaschke_suite),
        ("shift-radius-suite", shift_radius_suite),
        ("classification-fixtures", classification_fixtures),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("[PASS] {name}"),
            Err(message) => {
                println!("[FAIL] {name}: {message}");
                failures.push(*name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
