//! Certified pseudo-hyperbolic and Gleason distances between evaluations
//! at points of the closed ℓ∞ ball, Gleason-part verdicts, and the derived
//! computable bounds (radial contraction stage bound, shift radius).
//!
//! The distance between δ_z and δ_w is the supremum of the coordinatewise
//! disc distances over the indices where the points differ. Coordinates with
//! z_n = w_n contribute nothing. The supremum over each closed-form tail
//! pair is resolved analytically where the forms allow it; pairs outside
//! the supported shapes produce an honest wide enclosure `[best scanned, 1]`
//! tagged with the examined range, never a guess.
//!
//! The same sup formula holds verbatim for the uniformly continuous algebra
//! on the ball; for the bounded algebra at interior points the identity is
//! used in exactly the finite-stage form computed here.

use num_complex::Complex64;
use serde::Serialize;

use crate::disc::{self, Attainment, CertifiedValue, DiscPoint};
use crate::error::{Error, Result};
use crate::seqspace::{BallSeq, PartLabel, Partition, TailForm};

/// Default coordinate budget for scans over unsupported tail pairs.
pub const DEFAULT_MAX_INDEX: usize = 1_000_000;

/// Residue-class cap for interleaved tail pairing.
const MAX_RESIDUE_CLASSES: usize = 64;

/// Evidence that two evaluations lie in different Gleason parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum DifferentWitness {
    /// A coordinate with a unimodular entry on one side and a different
    /// value on the other: the coordinate distance is exactly 1.
    UnimodularMismatch { index: usize },
    /// A tail pair whose per-coordinate distances approach 1; the first
    /// index of the certifying residue class is recorded.
    TailApproach { from_index: usize },
}

/// Outcome of a Gleason-part comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum SamePartVerdict {
    /// Certified ρ(δ_z, δ_w) < 1.
    Same { rho: CertifiedValue },
    /// Certified ρ(δ_z, δ_w) = 1, with the certificate.
    Different { witness: DifferentWitness },
    /// Certification refused; best lower bound found on the examined range.
    Undetermined { rho_lo: f64, examined_up_to: usize },
}

struct RhoAnalysis {
    value: CertifiedValue,
    witness: Option<DifferentWitness>,
}

/// Supremum of one tail pair over an arithmetic progression of indices.
enum PairSup {
    /// The two forms produce identical values: zero contribution.
    Equal,
    /// Exact supremum; `attained_at` is `None` for a pure limit value.
    Certified { sup: f64, attained_at: Option<usize> },
    Unsupported,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn is_unimodular_value(v: Complex64) -> bool {
    DiscPoint::trusted(v).is_unimodular()
}

/// Resolves the supremum of ρ(z_n, w_n) over the progression starting at
/// `first` on which `fz` and `fw` govern the two sequences.
fn pair_sup(fz: &TailForm, fw: &TailForm, first: usize) -> PairSup {
    use TailForm::*;
    if fz == fw {
        return PairSup::Equal;
    }
    match (fz, fw) {
        (Constant { value: c1 }, Constant { value: c2 }) => {
            let rho = disc::rho_disc(DiscPoint::trusted(*c1), DiscPoint::trusted(*c2));
            PairSup::Certified {
                sup: rho,
                attained_at: Some(first),
            }
        }
        (Constant { value: c }, RadialPowerApproach { .. })
        | (RadialPowerApproach { .. }, Constant { value: c }) => {
            // The radial side approaches its unimodular phase, so the
            // coordinate distances approach 1. A unimodular constant on the
            // other side makes every coordinate distance exactly 1.
            if is_unimodular_value(*c) {
                PairSup::Certified {
                    sup: 1.0,
                    attained_at: Some(first),
                }
            } else {
                PairSup::Certified {
                    sup: 1.0,
                    attained_at: None,
                }
            }
        }
        (
            RadialPowerApproach {
                phase: f1,
                a: a1,
                p: p1,
                offset: o1,
            },
            RadialPowerApproach {
                phase: f2,
                a: a2,
                p: p2,
                offset: o2,
            },
        ) => {
            // Certification requires bitwise-identical phases: nearly equal
            // phases drive the coordinate distance to 1 along the tail, and
            // no closed form distinguishes "nearly" rigorously.
            if f1 != f2 || o1 != o2 {
                return PairSup::Unsupported;
            }
            if p1 == p2 {
                // shared decay s = (n+o)^(-p):
                // ρ_n = |a1 - a2| / (a1 + a2 - a1·a2·s), strictly decreasing.
                let s = (first as f64 + *o1 as f64).powf(-p1);
                PairSup::Certified {
                    sup: (a1 - a2).abs() / (a1 + a2 - a1 * a2 * s),
                    attained_at: Some(first),
                }
            } else {
                // different decay rates: ρ_n → 1 from below
                PairSup::Certified {
                    sup: 1.0,
                    attained_at: None,
                }
            }
        }
        _ => unreachable!("tail parts are simple forms"),
    }
}

fn rho_analysis(z: &BallSeq, w: &BallSeq, max_index: usize) -> RhoAnalysis {
    let t = z.tail_start().max(w.tail_start());

    // best candidate so far: value, attained index (None = limit)
    let mut best: f64 = -1.0;
    let mut best_at: Option<usize> = None;
    let mut witness: Option<DifferentWitness> = None;
    let mut any_unsupported = false;

    let consider = |value: f64, at: Option<usize>, best: &mut f64, best_at: &mut Option<usize>| {
        if value > *best || (value == *best && best_at.is_none() && at.is_some()) {
            *best = value;
            *best_at = at;
        }
    };

    // explicit region: indices where at least one side is still in its prefix
    for n in 1..t {
        let (a, b) = (z.entry(n), w.entry(n));
        if a == b {
            continue;
        }
        if is_unimodular_value(a) || is_unimodular_value(b) {
            consider(1.0, Some(n), &mut best, &mut best_at);
            witness.get_or_insert(DifferentWitness::UnimodularMismatch { index: n });
        } else {
            let rho = disc::rho_disc(DiscPoint::trusted(a), DiscPoint::trusted(b));
            consider(rho, Some(n), &mut best, &mut best_at);
        }
    }

    // tail region, split into residue classes on which both tails are simple
    let period = lcm(z.tail().period(), w.tail().period());
    let mut unsupported_classes: Vec<usize> = Vec::new();
    if period > MAX_RESIDUE_CLASSES {
        unsupported_classes.extend(0..1);
        any_unsupported = true;
    } else {
        for r in 0..period {
            let first = t + r;
            let fz = z.tail().part_at(first, z.tail_start());
            let fw = w.tail().part_at(first, w.tail_start());
            match pair_sup(fz, fw, first) {
                PairSup::Equal => {}
                PairSup::Certified { sup, attained_at } => {
                    consider(sup, attained_at, &mut best, &mut best_at);
                    if sup == 1.0 && witness.is_none() {
                        witness = Some(match attained_at {
                            Some(index) => DifferentWitness::UnimodularMismatch { index },
                            None => DifferentWitness::TailApproach { from_index: first },
                        });
                    }
                }
                PairSup::Unsupported => {
                    unsupported_classes.push(r);
                    any_unsupported = true;
                }
            }
        }
    }

    // honest fallback: scan the unsupported classes up to the index budget
    if any_unsupported && witness.is_none() {
        if period > MAX_RESIDUE_CLASSES {
            for n in t..=max_index {
                let (a, b) = (z.entry(n), w.entry(n));
                if a != b {
                    let rho = disc::rho_disc(DiscPoint::trusted(a), DiscPoint::trusted(b));
                    consider(rho, Some(n), &mut best, &mut best_at);
                }
            }
        } else {
            for &r in &unsupported_classes {
                let mut n = t + r;
                while n <= max_index {
                    let (a, b) = (z.entry(n), w.entry(n));
                    if a != b {
                        let rho = disc::rho_disc(DiscPoint::trusted(a), DiscPoint::trusted(b));
                        consider(rho, Some(n), &mut best, &mut best_at);
                    }
                    n += period;
                }
            }
        }
    }

    if best < 0.0 {
        // no differing coordinate anywhere: the distance is 0
        return RhoAnalysis {
            value: CertifiedValue::exact(0.0, Attainment::AttainedAt(1)),
            witness: None,
        };
    }

    // A distance-1 witness certifies the supremum even if other tail pairs
    // were out of reach: 1 is also the trivial upper bound.
    let value = if let Some(_w) = &witness {
        let attained = match best_at {
            Some(n) => Attainment::AttainedAt(n),
            None => Attainment::SupremumNotAttained,
        };
        CertifiedValue::exact(1.0, attained)
    } else if any_unsupported {
        CertifiedValue::new(
            best,
            1.0,
            Attainment::Unknown {
                examined_up_to: max_index,
            },
        )
    } else {
        let attained = match best_at {
            Some(n) => Attainment::AttainedAt(n),
            None => Attainment::SupremumNotAttained,
        };
        CertifiedValue::exact(best, attained)
    };
    RhoAnalysis { value, witness }
}

/// Certified enclosure of ρ(δ_z, δ_w) = sup_n ρ(z_n, w_n).
///
/// Uses the default scan budget for tail pairs without a closed form;
/// see [`rho_seq_scanned`] to control it.
pub fn rho_seq(z: &BallSeq, w: &BallSeq, tol: f64) -> CertifiedValue {
    rho_seq_scanned(z, w, tol, DEFAULT_MAX_INDEX)
}

/// [`rho_seq`] with an explicit scan budget for the uncertified fallback.
pub fn rho_seq_scanned(z: &BallSeq, w: &BallSeq, tol: f64, max_index: usize) -> CertifiedValue {
    assert!(tol > 0.0, "tolerance must be positive");
    rho_analysis(z, w, max_index).value
}

/// Certified enclosure of the Gleason distance ‖δ_z − δ_w‖ =
/// sup_n ‖δ_{z_n} − δ_{w_n}‖, obtained by pushing the ρ enclosure through
/// the strictly increasing metric bijection.
pub fn gleason_norm_seq(z: &BallSeq, w: &BallSeq, tol: f64) -> CertifiedValue {
    rho_seq(z, w, tol)
        .map_monotone(|r| disc::gleason_norm_from_rho(r).expect("rho lies in [0, 1]"))
}

/// ρ(δ_0, δ_z) = ‖z‖: literally the certified sup-norm of the sequence.
pub fn rho_origin(z: &BallSeq, tol: f64) -> CertifiedValue {
    z.sup_norm(tol)
}

/// Decides whether δ_z and δ_w lie in the same Gleason part.
///
/// `Same` carries the certified distance (strictly below 1), `Different`
/// carries a distance-1 certificate, and `Undetermined` reports the best
/// lower bound found within `max_index` coordinates when the tail shapes
/// admit no certification.
pub fn same_part(z: &BallSeq, w: &BallSeq, tol: f64, max_index: usize) -> SamePartVerdict {
    assert!(tol > 0.0, "tolerance must be positive");
    let analysis = rho_analysis(z, w, max_index);
    if let Some(witness) = analysis.witness {
        return SamePartVerdict::Different { witness };
    }
    if analysis.value.is_certified() {
        debug_assert!(analysis.value.hi() < 1.0);
        SamePartVerdict::Same {
            rho: analysis.value,
        }
    } else {
        SamePartVerdict::Undetermined {
            rho_lo: analysis.value.lo(),
            examined_up_to: max_index,
        }
    }
}

/// The five shapes a Gleason part of an evaluation can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "interior_count")]
pub enum PartCase {
    /// No boundary coordinate and moduli certified below 1: the part is the
    /// whole open ball.
    FullBall,
    /// Every coordinate unimodular: the part is a single point.
    Singleton,
    /// Boundary coordinates pinned, the rest certified below 1: a polydisc
    /// of the given dimension (`Some(k)`), or a full-ball copy (`None`).
    BoundaryFixedBall(Option<usize>),
    /// Moduli escape to 1 along the whole non-boundary index set.
    EscapingModuli,
    /// Infinitely many coordinates bounded below 1 and infinitely many
    /// approaching 1.
    MixedInfinite,
}

impl PartCase {
    /// Conventional roman-numeral label of the case.
    pub fn roman(&self) -> &'static str {
        match self {
            PartCase::FullBall => "(i)",
            PartCase::Singleton => "(ii)",
            PartCase::BoundaryFixedBall(_) => "(iii)",
            PartCase::EscapingModuli => "(iv)",
            PartCase::MixedInfinite => "(v)",
        }
    }
}

/// Structured description of the Gleason part of δ_z:
/// `{ δ_w : w_n = z_n on N₁, sup_{N₂} |w_n| < 1, sup_{N₃} ρ(z_n, w_n) < 1 }`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartDescriptor {
    /// Prefix indices where w must equal z.
    pub fixed_prefix_indices: Vec<usize>,
    /// Tail cycle positions (1-based) where w must equal z.
    pub fixed_tail_parts: Vec<usize>,
    /// Whether the interior clause `sup |w_n| < 1` is active.
    pub interior_clause: bool,
    /// Whether the approach clause `sup ρ(z_n, w_n) < 1` is active.
    pub approach_clause: bool,
    /// Prose rendering of the full set description.
    pub text: String,
}

/// Classification outcome: intrinsic case, canonical partition, and the
/// part description.
#[derive(Debug, Clone, PartialEq)]
pub struct PartClass {
    pub case: PartCase,
    pub partition: Partition,
    pub descriptor: PartDescriptor,
}

/// Classifies the Gleason part containing δ_z into one of the five cases,
/// intrinsically (independent of any particular interior/approach split).
pub fn classify(z: &BallSeq, tol: f64) -> Result<PartClass> {
    let partition = z.partition(tol)?;
    let boundary_nonempty = partition.is_nonempty(PartLabel::Boundary);
    let approach = partition.is_nonempty(PartLabel::Approach);
    let interior_infinite = partition.is_infinite(PartLabel::Interior);
    let rest_nonempty = approach || partition.is_nonempty(PartLabel::Interior);

    let case = if !rest_nonempty {
        PartCase::Singleton
    } else if !approach {
        if boundary_nonempty {
            let count = if interior_infinite {
                None
            } else {
                Some(
                    partition
                        .tail_start()
                        .checked_sub(1)
                        .map(|len| {
                            (1..=len)
                                .filter(|&n| partition.label(n) == PartLabel::Interior)
                                .count()
                        })
                        .unwrap_or(0),
                )
            };
            PartCase::BoundaryFixedBall(count)
        } else {
            PartCase::FullBall
        }
    } else if interior_infinite {
        PartCase::MixedInfinite
    } else {
        PartCase::EscapingModuli
    };

    let fixed_prefix_indices = partition.boundary_prefix_indices();
    let fixed_tail_parts: Vec<usize> = partition
        .tail_part_labels()
        .iter()
        .enumerate()
        .filter(|(_, l)| **l == PartLabel::Boundary)
        .map(|(i, _)| i + 1)
        .collect();
    let interior_clause = partition.is_nonempty(PartLabel::Interior);
    let approach_clause = approach;

    let mut clauses = Vec::new();
    if !fixed_prefix_indices.is_empty() || !fixed_tail_parts.is_empty() {
        clauses.push("w_n = z_n on the boundary set".to_string());
    }
    if interior_clause {
        let sup = partition.interior_sup().unwrap_or(0.0);
        clauses.push(format!(
            "sup over the interior set of |w_n| < 1 (|z_n| there is at most {sup:.6})"
        ));
    }
    if approach_clause {
        clauses.push("sup over the approach set of rho(z_n, w_n) < 1".to_string());
    }
    let text = if clauses.is_empty() {
        "{ delta_z } (single point)".to_string()
    } else {
        format!("{{ delta_w : {} }}", clauses.join("; "))
    };

    Ok(PartClass {
        case,
        partition,
        descriptor: PartDescriptor {
            fixed_prefix_indices,
            fixed_tail_parts,
            interior_clause,
            approach_clause,
            text,
        },
    })
}

/// Coordinate budget used by [`radial_contraction_check`].
const CONTRACTION_SCAN: usize = 4096;

/// Verifies the radial Schwarz–Pick contraction
/// ρ(r·z_n, r·w_n) ≤ ρ(z_n, w_n) + tol coordinatewise: explicitly on an
/// initial index range and through tail limits on the closed forms.
pub fn radial_contraction_check(z: &BallSeq, w: &BallSeq, r: f64, tol: f64) -> Result<bool> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "r",
            value: r,
            domain: "(0, 1)",
        });
    }
    assert!(tol > 0.0, "tolerance must be positive");
    let scaled_rho = |a: Complex64, b: Complex64| {
        disc::rho_disc(DiscPoint::trusted(a * r), DiscPoint::trusted(b * r))
    };
    let plain_rho =
        |a: Complex64, b: Complex64| disc::rho_disc(DiscPoint::trusted(a), DiscPoint::trusted(b));

    let t = z.tail_start().max(w.tail_start());
    let scan_to = (t + CONTRACTION_SCAN).max(CONTRACTION_SCAN);
    for n in 1..=scan_to {
        let (a, b) = (z.entry(n), w.entry(n));
        if scaled_rho(a, b) > plain_rho(a, b) + tol {
            return Ok(false);
        }
    }

    // tail limits per residue class, where the closed forms give them
    let period = lcm(z.tail().period(), w.tail().period());
    if period <= MAX_RESIDUE_CLASSES {
        for off in 0..period {
            let first = t + off;
            let fz = z.tail().part_at(first, z.tail_start());
            let fw = w.tail().part_at(first, w.tail_start());
            let limits: Option<(f64, f64)> = match (fz, fw) {
                _ if fz == fw => Some((0.0, 0.0)),
                (TailForm::Constant { value: c1 }, TailForm::Constant { value: c2 }) => {
                    Some((plain_rho(*c1, *c2), scaled_rho(*c1, *c2)))
                }
                (TailForm::Constant { value: c }, TailForm::RadialPowerApproach { phase, .. })
                | (TailForm::RadialPowerApproach { phase, .. }, TailForm::Constant { value: c }) => {
                    Some((1.0, scaled_rho(*c, *phase)))
                }
                (
                    TailForm::RadialPowerApproach {
                        phase: f1,
                        a: a1,
                        p: p1,
                        ..
                    },
                    TailForm::RadialPowerApproach {
                        phase: f2,
                        a: a2,
                        p: p2,
                        ..
                    },
                ) if f1 == f2 => {
                    // both scaled sequences converge to r·phase: scaled limit 0
                    let plain = if p1 == p2 {
                        (a1 - a2).abs() / (a1 + a2)
                    } else {
                        1.0
                    };
                    Some((plain, 0.0))
                }
                _ => None, // examined-range verification only
            };
            if let Some((plain, scaled)) = limits {
                if scaled > plain + tol {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Finite-stage bound (2 + C)/2 for the limit homomorphisms obtained from
/// radial approach sequences, where C = ‖δ_z − δ_w‖ must be certified
/// strictly below 2.
pub fn reciproca_bound(z: &BallSeq, w: &BallSeq, tol: f64) -> Result<f64> {
    let c = gleason_norm_seq(z, w, tol);
    if !c.is_certified() || c.hi() >= 2.0 {
        return Err(Error::NotCertifiedBelow {
            lo: c.lo(),
            hi: c.hi(),
            bound: 2.0,
        });
    }
    Ok((2.0 + c.hi()) / 2.0)
}

/// Largest Euclidean radius `r` around an interior point `b` of the disc
/// such that |c − b| < r forces the Gleason distance ‖δ_b − δ_c‖ below 1.
///
/// The norm distance reaches 1 exactly at pseudo-hyperbolic distance 4/5,
/// so the guarantee is ρ(b, c) ≤ t with t = (4/5)(1 − margin). The nearest
/// point of the ρ-circle of radius t around b lies toward the closer
/// boundary, at Euclidean distance t(1 − |b|²)/(1 + t|b|); rotation
/// invariance reduces every b to this real case.
pub fn shift_radius(b: DiscPoint, margin: f64) -> Result<f64> {
    if !b.is_interior() {
        return Err(Error::CenterNotInterior(b.modulus()));
    }
    if !(margin > 0.0 && margin < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "margin",
            value: margin,
            domain: "(0, 1)",
        });
    }
    let t = 0.8 * (1.0 - margin);
    let m = b.modulus();
    Ok(t * (1.0 - m * m) / (1.0 + t * m))
}
