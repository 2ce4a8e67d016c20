//! Batch command-line front end: parses sequence descriptors, runs the
//! certified distance / classification / automorphism / Blaschke
//! computations, and emits results as JSON (CSV for the shift-radius
//! sampling output).
//!
//! Exit codes: 0 for a certified result, 2 when the honest answer is
//! undetermined, 1 for any error. Output field order is fixed for
//! diffability; all options are flags, nothing comes from the environment.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use gleason_core::autom::{self, OperatorPoint};
use gleason_core::blaschke::{self, BlaschkeConfig, EvalPoint, JSet, ThetaSeq};
use gleason_core::disc::{Attainment, CertifiedValue, DiscPoint};
use gleason_core::metric::{self, SamePartVerdict};
use gleason_core::seqspace::{parse_descriptor, to_descriptor, BallSeq, PartLabel};

#[derive(Parser)]
#[command(
    name = "gleason",
    version,
    about = "Certified pseudo-hyperbolic and Gleason distance computations \
             on the closed unit ball of l-infinity"
)]
struct Cli {
    /// Requested enclosure tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps: f64,

    /// Coordinate budget for scans when no closed-form certification exists.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_index: usize,

    /// Output format (csv is available for shift-radius sampling only).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Sequence descriptors are read from a file path, from stdin (`-`), or
/// inline when the argument starts with `{`.
#[derive(Subcommand)]
enum Command {
    /// Certified pseudo-hyperbolic distance between two evaluations.
    Rho {
        #[arg(long)]
        z: String,
        #[arg(long)]
        w: String,
    },
    /// Certified Gleason (norm) distance between two evaluations.
    GleasonNorm {
        #[arg(long)]
        z: String,
        #[arg(long)]
        w: String,
    },
    /// Gleason-part classification of one evaluation.
    Classify {
        #[arg(long)]
        z: String,
    },
    /// Same-part / different-part / undetermined verdict for two evaluations.
    SamePart {
        #[arg(long)]
        z: String,
        #[arg(long)]
        w: String,
    },
    /// Coordinatewise Möbius image of a sequence.
    AutomApply {
        #[arg(long)]
        center: String,
        #[arg(long)]
        z: String,
    },
    /// Involution and two-route distance cross-check for a center/argument pair.
    AutomCheck {
        #[arg(long)]
        center: String,
        #[arg(long)]
        z: String,
    },
    /// Operator-ball distance between two matrix contractions.
    OperatorRho {
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
    },
    /// Certified Blaschke-product value at a point.
    BlaschkeEval {
        #[arg(long)]
        config: String,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        at_origin: bool,
        #[arg(long)]
        at_zk: Option<usize>,
    },
    /// Separation report: tail-product climb, vanishing checks, and the
    /// restricted-product certificate.
    BlaschkeSeparate {
        #[arg(long)]
        config: String,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
        #[arg(long, default_value_t = 0.1)]
        eps_cert: f64,
        #[arg(long, default_value_t = 2)]
        j_start: usize,
        #[arg(long, default_value_t = 2)]
        j_step: usize,
    },
    /// Euclidean radius around a disc point within which the Gleason
    /// distance stays below 1, with circle samples for plotting.
    ShiftRadius {
        /// Center as a JSON number or [re, im] pair.
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 0.01)]
        margin: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Peak-function value at a point (or at the peak itself).
    PeakEval {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        at_peak: bool,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_UNDETERMINED: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn read_payload(arg: &str) -> Result<String, String> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(text)
    } else if arg.trim_start().starts_with(['{', '[']) {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("reading {arg}: {e}"))
    }
}

fn load_seq(arg: &str) -> Result<BallSeq, String> {
    parse_descriptor(&read_payload(arg)?).map_err(|e| e.to_string())
}

fn load_config(arg: &str) -> Result<BlaschkeConfig, String> {
    blaschke::parse_config(&read_payload(arg)?).map_err(|e| e.to_string())
}

fn load_matrix(arg: &str) -> Result<OperatorPoint, String> {
    let rows: Vec<Vec<(f64, f64)>> =
        serde_json::from_str(&read_payload(arg)?).map_err(|e| format!("matrix: {e}"))?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err("matrix: expected a square array of [re, im] pairs".into());
    }
    let m = DMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j].0, rows[i][j].1));
    OperatorPoint::new(m).map_err(|e| e.to_string())
}

fn load_disc_point(arg: &str) -> Result<DiscPoint, String> {
    // a bare number is taken inline; otherwise the usual payload rules
    let text = if arg.trim().parse::<f64>().is_ok() {
        arg.to_string()
    } else {
        read_payload(arg)?
    };
    let value: serde_json::Value =
        serde_json::from_str(text.trim()).map_err(|e| format!("b: {e}"))?;
    let c = match &value {
        serde_json::Value::Number(x) => Complex64::new(
            x.as_f64().ok_or_else(|| "b: not a finite number".to_string())?,
            0.0,
        ),
        serde_json::Value::Array(pair) if pair.len() == 2 => {
            let take = |v: &serde_json::Value| {
                v.as_f64().ok_or_else(|| "b: not a finite number".to_string())
            };
            Complex64::new(take(&pair[0])?, take(&pair[1])?)
        }
        _ => return Err("b: expected a number or an [re, im] pair".into()),
    };
    DiscPoint::new(c).map_err(|e| e.to_string())
}

fn require_json(format: Format) -> Result<(), String> {
    if format == Format::Csv {
        return Err("csv output is only available for shift-radius sampling".into());
    }
    Ok(())
}

fn emit<T: Serialize>(doc: &T) {
    println!(
        "{}",
        serde_json::to_string(doc).expect("output serialization cannot fail")
    );
}

// ---------------------------------------------------------------------------
// output documents (field order fixed by struct order)
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Enclosure {
    lo: f64,
    hi: f64,
}

#[derive(Serialize)]
struct AttainmentOut {
    attained: &'static str,
    attained_at: Option<usize>,
    examined_up_to: Option<usize>,
}

fn attainment_out(v: &CertifiedValue) -> AttainmentOut {
    match v.attained() {
        Attainment::AttainedAt(n) => AttainmentOut {
            attained: "at-index",
            attained_at: Some(n),
            examined_up_to: None,
        },
        Attainment::SupremumNotAttained => AttainmentOut {
            attained: "supremum-not-attained",
            attained_at: None,
            examined_up_to: None,
        },
        Attainment::Unknown { examined_up_to } => AttainmentOut {
            attained: "unknown",
            attained_at: None,
            examined_up_to: Some(examined_up_to),
        },
    }
}

fn enclosure(v: &CertifiedValue) -> Enclosure {
    Enclosure {
        lo: v.lo(),
        hi: v.hi(),
    }
}

fn distance_command(
    name: &'static str,
    method: &'static str,
    value: &CertifiedValue,
    key_rho: bool,
) -> u8 {
    #[derive(Serialize)]
    struct DistanceOut {
        command: &'static str,
        method: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        rho: Option<Enclosure>,
        #[serde(skip_serializing_if = "Option::is_none")]
        gleason_norm: Option<Enclosure>,
        attained: &'static str,
        attained_at: Option<usize>,
        examined_up_to: Option<usize>,
        certified: bool,
    }
    let at = attainment_out(value);
    emit(&DistanceOut {
        command: name,
        method,
        rho: key_rho.then(|| enclosure(value)),
        gleason_norm: (!key_rho).then(|| enclosure(value)),
        attained: at.attained,
        attained_at: at.attained_at,
        examined_up_to: at.examined_up_to,
        certified: value.is_certified(),
    });
    if value.is_certified() {
        EXIT_OK
    } else {
        EXIT_UNDETERMINED
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    if !(cli.eps > 0.0) {
        return Err(format!("--eps must be positive, got {}", cli.eps));
    }
    if cli.max_index == 0 {
        return Err("--max-index must be at least 1".into());
    }
    let eps = cli.eps;
    let max_index = cli.max_index;

    match cli.command {
        Command::Rho { z, w } => {
            require_json(cli.format)?;
            let (z, w) = (load_seq(&z)?, load_seq(&w)?);
            let value = metric::rho_seq_scanned(&z, &w, eps, max_index);
            Ok(distance_command(
                "rho",
                "coordinatewise-supremum",
                &value,
                true,
            ))
        }
        Command::GleasonNorm { z, w } => {
            require_json(cli.format)?;
            let (z, w) = (load_seq(&z)?, load_seq(&w)?);
            let value = metric::gleason_norm_seq(&z, &w, eps);
            Ok(distance_command(
                "gleason-norm",
                "metric-bijection-of-coordinatewise-supremum",
                &value,
                false,
            ))
        }
        Command::Classify { z } => {
            require_json(cli.format)?;
            let z = load_seq(&z)?;
            let class = metric::classify(&z, eps).map_err(|e| e.to_string())?;

            #[derive(Serialize)]
            struct PartitionOut {
                boundary_prefix_indices: Vec<usize>,
                tail_part_labels: Vec<PartLabel>,
                threshold: Option<f64>,
                interior_sup: Option<f64>,
            }
            #[derive(Serialize)]
            struct ClassifyOut<'a> {
                command: &'static str,
                method: &'static str,
                case: &'static str,
                interior_count: Option<usize>,
                descriptor: &'a gleason_core::metric::PartDescriptor,
                partition: PartitionOut,
            }
            let interior_count = match class.case {
                gleason_core::metric::PartCase::BoundaryFixedBall(k) => k,
                _ => None,
            };
            emit(&ClassifyOut {
                command: "classify",
                method: "canonical-partition-classification",
                case: class.case.roman(),
                interior_count,
                descriptor: &class.descriptor,
                partition: PartitionOut {
                    boundary_prefix_indices: class.partition.boundary_prefix_indices(),
                    tail_part_labels: class.partition.tail_part_labels(),
                    threshold: class.partition.threshold(),
                    interior_sup: class.partition.interior_sup(),
                },
            });
            Ok(EXIT_OK)
        }
        Command::SamePart { z, w } => {
            require_json(cli.format)?;
            let (z, w) = (load_seq(&z)?, load_seq(&w)?);

            #[derive(Serialize)]
            struct SamePartOut {
                command: &'static str,
                method: &'static str,
                verdict: &'static str,
                #[serde(skip_serializing_if = "Option::is_none")]
                rho: Option<Enclosure>,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<gleason_core::metric::DifferentWitness>,
                #[serde(skip_serializing_if = "Option::is_none")]
                rho_lo: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                examined_up_to: Option<usize>,
            }
            let (out, code) = match metric::same_part(&z, &w, eps, max_index) {
                SamePartVerdict::Same { rho } => (
                    SamePartOut {
                        command: "same-part",
                        method: "certified-distance-comparison",
                        verdict: "same",
                        rho: Some(enclosure(&rho)),
                        witness: None,
                        rho_lo: None,
                        examined_up_to: None,
                    },
                    EXIT_OK,
                ),
                SamePartVerdict::Different { witness } => (
                    SamePartOut {
                        command: "same-part",
                        method: "certified-distance-comparison",
                        verdict: "different",
                        rho: None,
                        witness: Some(witness),
                        rho_lo: None,
                        examined_up_to: None,
                    },
                    EXIT_OK,
                ),
                SamePartVerdict::Undetermined {
                    rho_lo,
                    examined_up_to,
                } => (
                    SamePartOut {
                        command: "same-part",
                        method: "certified-distance-comparison",
                        verdict: "undetermined",
                        rho: None,
                        witness: None,
                        rho_lo: Some(rho_lo),
                        examined_up_to: Some(examined_up_to),
                    },
                    EXIT_UNDETERMINED,
                ),
            };
            emit(&out);
            Ok(code)
        }
        Command::AutomApply { center, z } => {
            require_json(cli.format)?;
            let (center, z) = (load_seq(&center)?, load_seq(&z)?);
            let image = autom::phi_seq(&center, &z)
                .map_err(|e| e.to_string())?
                .into_closed()
                .map_err(|e| e.to_string())?;

            #[derive(Serialize)]
            struct ApplyOut<'a> {
                command: &'static str,
                method: &'static str,
                result: &'a serde_json::value::RawValue,
            }
            let raw = serde_json::value::RawValue::from_string(to_descriptor(&image))
                .expect("canonical descriptors are valid JSON");
            emit(&ApplyOut {
                command: "autom-apply",
                method: "coordinatewise-mobius",
                result: &raw,
            });
            Ok(EXIT_OK)
        }
        Command::AutomCheck { center, z } => {
            require_json(cli.format)?;
            let (center, z) = (load_seq(&center)?, load_seq(&z)?);
            let via = autom::rho_via_autom(&center, &z, eps).map_err(|e| e.to_string())?;
            let direct = metric::rho_seq_scanned(&center, &z, eps, max_index);
            let involution_residual = {
                let image = autom::phi_seq(&center, &z).map_err(|e| e.to_string())?;
                match image {
                    autom::PhiImage::Closed(seq) => {
                        let twice = autom::phi_seq(&center, &seq)
                            .map_err(|e| e.to_string())?;
                        let mut worst = 0.0_f64;
                        for n in 1..=64 {
                            worst = worst.max((twice.entry(n) - z.entry(n)).norm());
                        }
                        Some(worst)
                    }
                    autom::PhiImage::Scan(_) => None,
                }
            };

            #[derive(Serialize)]
            struct CheckOut {
                command: &'static str,
                method: &'static str,
                rho_via_autom: Enclosure,
                rho_direct: Enclosure,
                route_difference: f64,
                involution_residual: Option<f64>,
                certified: bool,
            }
            let certified = via.is_certified() && direct.is_certified();
            emit(&CheckOut {
                command: "autom-check",
                method: "automorphism-route-cross-check",
                rho_via_autom: enclosure(&via),
                rho_direct: enclosure(&direct),
                route_difference: (via.lo() - direct.lo()).abs(),
                involution_residual,
                certified,
            });
            Ok(if certified { EXIT_OK } else { EXIT_UNDETERMINED })
        }
        Command::OperatorRho { r, s } => {
            require_json(cli.format)?;
            let (r, s) = (load_matrix(&r)?, load_matrix(&s)?);
            let rho = autom::rho_operator(&r, &s).map_err(|e| e.to_string())?;

            #[derive(Serialize)]
            struct OperatorOut {
                command: &'static str,
                method: &'static str,
                dim: usize,
                rho: f64,
            }
            emit(&OperatorOut {
                command: "operator-rho",
                method: "operator-mobius-norm",
                dim: r.dim(),
                rho,
            });
            Ok(EXIT_OK)
        }
        Command::BlaschkeEval {
            config,
            z,
            at_origin,
            at_zk,
        } => {
            require_json(cli.format)?;
            let cfg = load_config(&config)?;
            let selected = [z.is_some(), at_origin, at_zk.is_some()]
                .iter()
                .filter(|&&b| b)
                .count();
            if selected != 1 {
                return Err("choose exactly one of --z, --at-origin, --at-zk".into());
            }
            let value = if at_origin {
                blaschke::blaschke_eval_at(&cfg, &EvalPoint::Origin, eps)
            } else if let Some(k) = at_zk {
                if k == 0 {
                    return Err("--at-zk indices are 1-based".into());
                }
                blaschke::blaschke_eval_at(&cfg, &EvalPoint::CanonicalZk(k), eps)
            } else {
                let seq = load_seq(&z.expect("checked above"))?;
                blaschke::blaschke_eval(&cfg, &seq, eps)
            }
            .map_err(|e| e.to_string())?;

            #[derive(Serialize)]
            struct EvalOut {
                command: &'static str,
                method: &'static str,
                value: (f64, f64),
                tail_bound: f64,
                n_truncation: usize,
                modulus_hi: f64,
            }
            emit(&EvalOut {
                command: "blaschke-eval",
                method: "truncated-product-with-certified-tail",
                value: (value.value.re, value.value.im),
                tail_bound: value.tail_bound,
                n_truncation: value.n_truncation,
                modulus_hi: value.modulus_hi(),
            });
            Ok(EXIT_OK)
        }
        Command::BlaschkeSeparate {
            config,
            n_max,
            eps_cert,
            j_start,
            j_step,
        } => {
            require_json(cli.format)?;
            let cfg = load_config(&config)?;
            let jset = JSet::new([], j_start, j_step).map_err(|e| e.to_string())?;

            #[derive(Serialize)]
            struct Stage {
                n: usize,
                value: f64,
                tail_bound: f64,
            }
            let mut stages = Vec::with_capacity(n_max);
            let mut monotone = true;
            let mut prev = 0.0;
            for n in 1..=n_max {
                let v = blaschke::tail_blaschke(&cfg, n, &EvalPoint::Origin, eps)
                    .map_err(|e| e.to_string())?;
                monotone &= v.value.re > prev;
                prev = v.value.re;
                stages.push(Stage {
                    n,
                    value: v.value.re,
                    tail_bound: v.tail_bound,
                });
            }

            let mut vanishing_ok = true;
            for n in 0..4usize {
                for k in (n + 1)..=(n + 3) {
                    let v = blaschke::tail_blaschke(&cfg, n, &EvalPoint::CanonicalZk(k), eps)
                        .map_err(|e| e.to_string())?;
                    vanishing_ok &= v.value == Complex64::new(0.0, 0.0);
                }
            }

            let k0 =
                blaschke::separation_certificate(&cfg, &jset, eps_cert).map_err(|e| e.to_string())?;
            let sample_k = (k0 + 1..).find(|k| !jset.contains(*k)).expect("gaps exist");
            let sep = blaschke::tail_blaschke_over(&cfg, &jset, k0, sample_k, eps)
                .map_err(|e| e.to_string())?;

            #[derive(Serialize)]
            struct Certificate {
                eps: f64,
                k0: usize,
                sample_k: usize,
                value_lo: f64,
                threshold: f64,
                product_lower_bound: f64,
                holds: bool,
            }
            #[derive(Serialize)]
            struct SeparateOut {
                command: &'static str,
                method: &'static str,
                stages: Vec<Stage>,
                monotone: bool,
                vanishing_ok: bool,
                certificate: Certificate,
            }
            let threshold = (1.0 - eps_cert) * (1.0 - eps_cert);
            let holds = monotone && vanishing_ok && sep.value.modulus_lo() >= threshold;
            emit(&SeparateOut {
                command: "blaschke-separate",
                method: "restricted-product-separation",
                stages,
                monotone,
                vanishing_ok,
                certificate: Certificate {
                    eps: eps_cert,
                    k0,
                    sample_k,
                    value_lo: sep.value.modulus_lo(),
                    threshold,
                    product_lower_bound: sep.product_lower_bound,
                    holds,
                },
            });
            Ok(if holds { EXIT_OK } else { EXIT_UNDETERMINED })
        }
        Command::ShiftRadius { b, margin, samples } => {
            let b = load_disc_point(&b)?;
            let radius = metric::shift_radius(b, margin).map_err(|e| e.to_string())?;
            let circle: Vec<(Complex64, f64)> = (0..samples)
                .map(|i| {
                    let t = i as f64 / samples.max(1) as f64 * std::f64::consts::TAU;
                    let point =
                        b.value() + 0.999 * radius * Complex64::new(t.cos(), t.sin());
                    let rho = gleason_core::disc::rho_disc(
                        b,
                        DiscPoint::new(point).expect("sample stays in the closed disc"),
                    );
                    (point, rho)
                })
                .collect();

            if cli.format == Format::Csv {
                println!("re,im,rho_to_center");
                for (point, rho) in &circle {
                    println!("{},{},{}", point.re, point.im, rho);
                }
                return Ok(EXIT_OK);
            }

            let max_norm_distance = circle
                .iter()
                .map(|(_, rho)| {
                    gleason_core::disc::gleason_norm_from_rho(*rho)
                        .expect("rho lies in [0, 1]")
                })
                .fold(0.0_f64, f64::max);

            #[derive(Serialize)]
            struct ShiftOut {
                command: &'static str,
                method: &'static str,
                b: (f64, f64),
                margin: f64,
                radius: f64,
                samples: usize,
                max_norm_distance_on_circle: f64,
            }
            emit(&ShiftOut {
                command: "shift-radius",
                method: "norm-distance-threshold-radius",
                b: (b.value().re, b.value().im),
                margin,
                radius,
                samples,
                max_norm_distance_on_circle: max_norm_distance,
            });
            Ok(EXIT_OK)
        }
        Command::PeakEval { theta, x, at_peak } => {
            require_json(cli.format)?;
            let theta: ThetaSeq = serde_json::from_str(&read_payload(&theta)?)
                .map_err(|e| format!("theta: {e}"))?;
            if at_peak == x.is_some() {
                return Err("choose exactly one of --x, --at-peak".into());
            }
            let point = if at_peak {
                blaschke::peak_point(&theta)
            } else {
                load_seq(&x.expect("checked above"))?
            };
            let value = blaschke::peak_eval(&theta, &point);

            #[derive(Serialize)]
            struct PeakOut {
                command: &'static str,
                method: &'static str,
                value: (f64, f64),
                modulus: f64,
                tail_bound: f64,
                n_truncation: usize,
            }
            emit(&PeakOut {
                command: "peak-eval",
                method: "weighted-coordinate-series",
                value: (value.value.re, value.value.im),
                modulus: value.value.norm(),
                tail_bound: value.tail_bound,
                n_truncation: value.n_truncation,
            });
            Ok(EXIT_OK)
        }
    }
}
