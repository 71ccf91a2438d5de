//! Command-line front end. Every subcommand takes either inline arguments or
//! `--input FILE` with one JSON record per line, and prints one result per
//! record (plus a summary line in batch mode).
//!
//! Exit codes: 0 on success, 1 when any record hit a domain error, 2 on
//! usage errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::cover::{self, SurfaceInvariants};
use crate::cubic::{self, PlaneCubic, PointCoords, SingularLocus};
use crate::elliptic;
use crate::error::Error;
use crate::hermitian::{self, fixed_point::ExactMat2, CMat2, EigenChoice, PolydiskAutomorphism, ProjPoint};
use crate::poly::{parse_poly_in, var_list, Domain, Scalar};
use crate::ruled::{self, HirzebruchDivisor};
use crate::tensor::{self, SpecialTensor2};

pub const TOL_ENV: &str = "POLYCURVE_TOL";
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Human,
    JsonLines,
}

#[derive(Debug, Parser)]
#[command(name = "polycurve", version, about = "Uniformization checks for compact complex surfaces and threefolds")]
pub struct Cli {
    /// Numerical tolerance; falls back to $POLYCURVE_TOL, then 1e-9.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Arithmetic mode; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// File with one JSON record per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Universal cover verdict from surface invariants (JSON record or array).
    ClassifySurface {
        #[arg(allow_hyphen_values = true)]
        record: Option<String>,
        #[command(flatten)]
        input: InputArgs,
        /// Classify a threefold from `--tensor-present` and `--k-ample` instead.
        #[arg(long)]
        threefold: bool,
        #[arg(long)]
        tensor_present: bool,
        #[arg(long)]
        k_ample: bool,
    },
    /// Classify a plane cubic in x0, x1, x2.
    ClassifyCubic {
        #[arg(allow_hyphen_values = true)]
        cubic: Option<String>,
        #[command(flatten)]
        input: InputArgs,
        /// Allow the imaginary unit `i` in coefficients.
        #[arg(long)]
        gaussian: bool,
    },
    /// Analyse a special tensor a11·dx² + 2·a12·dx·dy + a22·dy² in x, y.
    CheckTensor {
        #[arg(long, allow_hyphen_values = true)]
        a11: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a12: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a22: Option<String>,
        /// Blow-up centre as `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        basepoint: Option<String>,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        gaussian: bool,
    },
    /// Sections of O(aΣ + bF) on F_n, or tangent data when a, b are omitted.
    Cohomology {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Canonical bundle arithmetic for elliptic surfaces.
    Elliptic {
        /// Base genus.
        #[arg(long)]
        b: Option<i64>,
        #[arg(long)]
        pg: Option<i64>,
        /// Weierstrass instance over a base of genus 6h + 1.
        #[arg(long)]
        h: Option<u32>,
        /// Fibre component multiplicities, e.g. `1,2,2,3`.
        #[arg(long, allow_hyphen_values = true)]
        fiber: Option<String>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Residual statistics for the SU(2,2) action on the Siegel domain.
    VerifyHolonomy {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Fixed point of x ↦ (ψ_i(x_σ(i)))_i on (P¹)^r.
    FixedPoint {
        /// One-based images σ(1),…,σ(r), e.g. `2,1`.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<String>,
        /// Matrices `a,b,c,d` separated by `;`, entries in ℚ(i) or decimal.
        #[arg(long, allow_hyphen_values = true)]
        psi: Option<String>,
        /// Eigenvalue used to anchor each cycle.
        #[arg(long, value_enum, default_value = "larger")]
        choice: ChoiceArg,
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChoiceArg {
    Larger,
    Smaller,
}

impl From<ChoiceArg> for EigenChoice {
    fn from(c: ChoiceArg) -> Self {
        match c {
            ChoiceArg::Larger => EigenChoice::LargerModulus,
            ChoiceArg::Smaller => EigenChoice::SmallerModulus,
        }
    }
}

/// Resolved global settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliConfig {
    pub tolerance: f64,
    pub seed: u64,
    pub mode: Option<Mode>,
    pub output: OutputFormat,
}

struct Failure {
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Parse(_) => "parse",
            Error::Ambiguous(_) => "ambiguous",
            Error::InvalidFiber(_) => "invalid_fiber",
            Error::NotInvertible(_) => "not_invertible",
            Error::NearSingular(_) => "near_singular",
            _ => "domain",
        };
        Failure {
            kind,
            message: e.to_string(),
        }
    }
}

fn malformed(msg: impl Into<String>) -> Failure {
    Failure {
        kind: "malformed_record",
        message: msg.into(),
    }
}

struct UsageError(String);

/// One evaluated record: a JSON value and the key counted in the summary.
type Outcome = Result<(Value, String), Failure>;

fn resolve_tolerance(flag: Option<f64>) -> Result<f64, UsageError> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| UsageError(format!("{TOL_ENV}={s} is not a number")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(UsageError(format!("tolerance must be positive and finite, got {tol}")));
    }
    Ok(tol)
}

fn domain_of(gaussian: bool) -> Domain {
    if gaussian {
        Domain::Gaussian
    } else {
        Domain::Rational
    }
}

fn reject_mode(cfg: &CliConfig, allowed: Mode, cmd: &str) -> Result<(), UsageError> {
    match cfg.mode {
        Some(m) if m != allowed => Err(UsageError(format!(
            "{cmd} has no {} mode",
            if m == Mode::Exact { "exact" } else { "float" }
        ))),
        _ => Ok(()),
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let tolerance = match resolve_tolerance(cli.tol) {
        Ok(t) => t,
        Err(UsageError(m)) => return usage(out, err, cli.output, &m),
    };
    let cfg = CliConfig {
        tolerance,
        seed: cli.seed,
        mode: cli.mode,
        output: cli.output,
    };
    match dispatch(&cli.command, &cfg) {
        Ok(records) => emit(out, &cfg, records),
        Err(UsageError(m)) => usage(out, err, cfg.output, &m),
    }
}

fn usage(out: &mut dyn Write, err: &mut dyn Write, fmt: OutputFormat, msg: &str) -> i32 {
    match fmt {
        OutputFormat::JsonLines => {
            let _ = writeln!(out, "{}", json!({"error": {"kind": "usage", "message": msg}}));
        }
        OutputFormat::Human => {
            let _ = writeln!(err, "error: {msg}");
        }
    }
    2
}

struct Records {
    batch: bool,
    outcomes: Vec<(usize, Outcome)>,
}

/// Reads the batch file into `(line number, text)` pairs, skipping blank lines.
fn read_lines(path: &PathBuf) -> Result<Vec<(usize, String)>, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.to_string()))
        .collect())
}

fn evaluate_lines<R, F>(lines: Vec<(usize, String)>, f: F) -> Vec<(usize, Outcome)>
where
    R: DeserializeOwned,
    F: Fn(R) -> Outcome + Sync,
{
    lines
        .into_par_iter()
        .map(|(n, line)| {
            let outcome = serde_json::from_str::<R>(&line)
                .map_err(|e| malformed(format!("line {n}: {e}")))
                .and_then(&f);
            (n, outcome)
        })
        .collect()
}

fn single(outcome: Outcome) -> Records {
    Records {
        batch: false,
        outcomes: vec![(1, outcome)],
    }
}

fn batch_or<R, F>(input: &InputArgs, inline: Option<Outcome>, f: F) -> Result<Records, UsageError>
where
    R: DeserializeOwned,
    F: Fn(R) -> Outcome + Sync,
{
    match (&input.input, inline) {
        (Some(_), Some(_)) => Err(UsageError("give either inline arguments or --input, not both".into())),
        (Some(path), None) => Ok(Records {
            batch: true,
            outcomes: evaluate_lines(read_lines(path)?, f),
        }),
        (None, Some(o)) => Ok(single(o)),
        (None, None) => Err(UsageError("missing arguments (or --input FILE)".into())),
    }
}

fn dispatch(cmd: &Command, cfg: &CliConfig) -> Result<Records, UsageError> {
    match cmd {
        Command::ClassifySurface {
            record,
            input,
            threefold,
            tensor_present,
            k_ample,
        } => {
            reject_mode(cfg, Mode::Exact, "classify-surface")?;
            if *threefold {
                let v = cover::classify_threefold(*tensor_present, *k_ample);
                let key = format!("{:?}", v.cover);
                return Ok(single(Ok((serde_json::to_value(v).expect("serializable"), key))));
            }
            match record {
                Some(text) if text.trim_start().starts_with('[') && input.input.is_none() => {
                    let items: Vec<Value> = serde_json::from_str(text)
                        .map_err(|e| UsageError(format!("malformed record array: {e}")))?;
                    let lines = items
                        .into_iter()
                        .enumerate()
                        .map(|(i, v)| (i + 1, v.to_string()))
                        .collect();
                    Ok(Records {
                        batch: true,
                        outcomes: evaluate_lines(lines, surface_record),
                    })
                }
                _ => {
                    let inline = record.as_ref().map(|t| {
                        serde_json::from_str::<SurfaceInvariants>(t)
                            .map_err(|e| malformed(e.to_string()))
                            .and_then(surface_record)
                    });
                    batch_or(input, inline, surface_record)
                }
            }
        }
        Command::ClassifyCubic { cubic, input, gaussian } => {
            let mode = cfg.mode.unwrap_or(Mode::Exact);
            let tol = cfg.tolerance;
            let domain = domain_of(*gaussian);
            let inline = cubic.as_ref().map(|c| cubic_record(CubicRecord { cubic: c.clone() }, mode, tol, domain));
            batch_or(input, inline, |r: CubicRecord| cubic_record(r, mode, tol, domain))
        }
        Command::CheckTensor {
            a11,
            a12,
            a22,
            basepoint,
            input,
            gaussian,
        } => {
            reject_mode(cfg, Mode::Exact, "check-tensor")?;
            let domain = domain_of(*gaussian);
            let inline = match (a11, a12, a22) {
                (None, None, None) if basepoint.is_none() => None,
                _ => Some(tensor_record(
                    TensorRecord {
                        a11: a11.clone().unwrap_or_else(|| "0".into()),
                        a12: a12.clone().unwrap_or_else(|| "0".into()),
                        a22: a22.clone().unwrap_or_else(|| "0".into()),
                        basepoint: basepoint
                            .as_ref()
                            .map(|b| b.split(',').map(|s| s.trim().to_string()).collect()),
                    },
                    domain,
                )),
            };
            batch_or(input, inline, |r: TensorRecord| tensor_record(r, domain))
        }
        Command::Cohomology { n, a, b, input } => {
            reject_mode(cfg, Mode::Exact, "cohomology")?;
            let inline = match (n, a, b) {
                (None, None, None) => None,
                _ => Some(cohomology_record(CohomologyRecord { n: *n, a: *a, b: *b })),
            };
            batch_or(input, inline, cohomology_record)
        }
        Command::Elliptic { b, pg, h, fiber, input } => {
            reject_mode(cfg, Mode::Exact, "elliptic")?;
            let inline = if b.is_none() && pg.is_none() && h.is_none() && fiber.is_none() {
                None
            } else {
                let fiber = match fiber {
                    Some(s) => Some(parse_list::<u32>(s).map_err(UsageError)?),
                    None => None,
                };
                Some(elliptic_record(EllipticRecord {
                    b: *b,
                    p_g: *pg,
                    h: *h,
                    fiber,
                }))
            };
            batch_or(input, inline, elliptic_record)
        }
        Command::VerifyHolonomy { samples } => {
            reject_mode(cfg, Mode::Float, "verify-holonomy")?;
            let outcome = hermitian::verify_holonomy(*samples, cfg.seed, cfg.tolerance)
                .map_err(Failure::from)
                .map(|r| {
                    let key = if r.passed { "pass" } else { "fail" }.to_string();
                    (serde_json::to_value(r).expect("serializable"), key)
                });
            Ok(single(outcome))
        }
        Command::FixedPoint {
            sigma,
            psi,
            choice,
            input,
        } => {
            let mode = cfg.mode.unwrap_or(Mode::Float);
            let choice = EigenChoice::from(*choice);
            let inline = match (sigma, psi) {
                (None, None) => None,
                (Some(s), Some(p)) => {
                    let sigma = parse_list::<usize>(s).map_err(UsageError)?;
                    let psi = p
                        .split(';')
                        .map(|m| m.split(',').map(|e| e.trim().to_string()).collect())
                        .collect();
                    Some(fixed_point_record(FixedPointRecord { sigma, psi }, mode, choice))
                }
                _ => return Err(UsageError("fixed-point needs both --sigma and --psi".into())),
            };
            batch_or(input, inline, |r: FixedPointRecord| fixed_point_record(r, mode, choice))
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| format!("cannot parse `{x}` in `{s}`")))
        .collect()
}

fn emit(out: &mut dyn Write, cfg: &CliConfig, mut records: Records) -> i32 {
    records.outcomes.sort_by_key(|(n, _)| *n);
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut errors = 0usize;
    for (line, outcome) in &records.outcomes {
        let value = match outcome {
            Ok((v, key)) => {
                *counts.entry(key.clone()).or_default() += 1;
                v.clone()
            }
            Err(f) => {
                errors += 1;
                json!({"error": {"kind": f.kind, "message": f.message, "line": line}})
            }
        };
        let _ = match cfg.output {
            OutputFormat::JsonLines => writeln!(out, "{value}"),
            OutputFormat::Human => writeln!(out, "{}", human(&value)),
        };
    }
    if records.batch {
        let summary = json!({"summary": {"records": records.outcomes.len(), "errors": errors, "counts": counts}});
        let _ = match cfg.output {
            OutputFormat::JsonLines => writeln!(out, "{summary}"),
            OutputFormat::Human => writeln!(out, "{}", human(&summary)),
        };
    }
    i32::from(errors > 0)
}

fn human(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::Object(_) => format!("{k}: {{{}}}", human(v)),
                _ => format!("{k}: {}", human(v)),
            })
            .collect::<Vec<_>>()
            .join(", "),
        Value::Array(a) => format!(
            "[{}]",
            a.iter()
                .map(|x| match x {
                    Value::Object(_) => format!("{{{}}}", human(x)),
                    _ => human(x),
                })
                .collect::<Vec<_>>()
                .join(", ")
        ),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn surface_record(s: SurfaceInvariants) -> Outcome {
    let verdict = cover::classify_surface(&s);
    let findings = cover::consistency_report_for(&s, verdict.cover.is_concrete().then_some(verdict.cover));
    let key = verdict.cover.name().to_string();
    let mut v = serde_json::to_value(&verdict).expect("serializable");
    v["findings"] = serde_json::to_value(findings).expect("serializable");
    Ok((v, key))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CubicRecord {
    cubic: String,
}

fn fmt_complex(z: Complex64) -> String {
    // Adding 0.0 turns −0 into 0.
    format!("{}{:+}i", z.re + 0.0, z.im + 0.0)
}

fn cubic_record(r: CubicRecord, mode: Mode, tol: f64, domain: Domain) -> Outcome {
    let c = PlaneCubic::parse(&r.cubic, domain)?;
    let cls = match mode {
        Mode::Exact => cubic::classify(&c)?,
        Mode::Float => cubic::classify_float(&c, tol)?,
    };
    let verdict = cubic::holonomy_verdict(cls.class);
    let singular = match &cls.singular {
        SingularLocus::Finite {
            points, unresolved, ..
        } => json!({
            "points": points.iter().map(|p| json!({
                "coords": match &p.coords {
                    PointCoords::Exact(x) => x.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    PointCoords::Approx(x) => x.iter().map(|z| fmt_complex(*z)).collect(),
                },
                "kind": p.kind.name(),
            })).collect::<Vec<_>>(),
            "unresolved": unresolved,
        }),
        SingularLocus::OneDimensional { line } => json!({
            "one_dimensional": line.as_ref().map(|l| l.to_string()),
        }),
    };
    let lines: Vec<Value> = cls
        .lines
        .iter()
        .map(|l| json!({"form": l.form.as_ref().map(|f| f.to_string()), "multiplicity": l.multiplicity}))
        .collect();
    let v = json!({
        "cubic": r.cubic,
        "class": cls.class.name(),
        "case": cls.class.case_label().to_string(),
        "verdict": verdict.kind.name(),
        "singular": singular,
        "lines": lines,
        "line_conic_intersections": cls.line_conic_intersections,
        "mode": if mode == Mode::Exact { "exact" } else { "float" },
    });
    Ok((v, cls.class.name().to_string()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorRecord {
    a11: String,
    a12: String,
    a22: String,
    #[serde(default)]
    basepoint: Option<Vec<String>>,
}

fn parse_constant(text: &str, domain: Domain) -> Result<Scalar, Failure> {
    let p = parse_poly_in(text, &var_list(&[]), domain).map_err(Error::from)?;
    p.constant_value()
        .ok_or_else(|| malformed(format!("`{text}` is not a constant")))
}

fn tensor_record(r: TensorRecord, domain: Domain) -> Outcome {
    let mut t = SpecialTensor2::parse(&r.a11, &r.a12, &r.a22, domain)?;
    if let Some(bp) = &r.basepoint {
        if bp.len() != 2 {
            return Err(malformed("basepoint needs two coordinates"));
        }
        t = t.with_basepoint([parse_constant(&bp[0], domain)?, parse_constant(&bp[1], domain)?]);
    }
    let m = tensor::to_endomorphism(&t);
    let dc = tensor::determinant_class(&t);
    let mut v = json!({
        "endomorphism": m.to_string(),
        "det": dc.det.to_string(),
        "trace_zero": m.trace().is_zero(),
    });
    let key = if dc.det.is_zero() {
        let d = tensor::nilpotent_from_tensor(&t)?;
        let sq = m.square();
        v["square_zero"] = json!(sq.iter().flatten().all(|e| e.is_zero()));
        v["delta"] = json!(d.delta.to_string());
        v["beta"] = json!(d.beta.to_string());
        v["gamma"] = json!(d.gamma.to_string());
        v["z_length"] = json!(d.z_length);
        v["reconstructs"] = json!(d.reconstruct() == (m.m11.clone(), m.m12.clone(), m.m21.clone()));
        "Nilpotent"
    } else if let Some(k) = &dc.constant {
        v["det_constant"] = json!(k.to_string());
        match tensor::eigen_split(&m) {
            Ok(dirs) => {
                v["eigendirections"] = json!(dirs
                    .iter()
                    .map(|d| json!({
                        "eigenvalue": d.eigenvalue.to_string(),
                        "vector": [d.vector[0].to_string(), d.vector[1].to_string()],
                    }))
                    .collect::<Vec<_>>());
                "Split"
            }
            Err(Error::EigenvalueOutsideField(s)) => {
                v["eigenvalues_outside_field"] = json!(s);
                "SplitOverExtension"
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        "NonConstantDeterminant"
    };
    let bl = tensor::blowup_pullback(&t);
    v["blowup_regular"] = json!(bl.regular);
    v["vanishes_at_basepoint"] = json!(bl.vanishes_at_basepoint);
    v["kind"] = json!(key);
    Ok((v, key.to_string()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CohomologyRecord {
    n: Option<u32>,
    a: Option<i64>,
    b: Option<i64>,
}

fn cohomology_record(r: CohomologyRecord) -> Outcome {
    let n = r.n.ok_or_else(|| malformed("n is required"))?;
    match (r.a, r.b) {
        (Some(a), Some(b)) => {
            let d = HirzebruchDivisor::new(n, a, b);
            let h0 = ruled::h0_line_bundle(d);
            Ok((json!({"n": n, "a": a, "b": b, "divisor": d.to_string(), "h0": h0}), format!("h0={h0}")))
        }
        (None, None) => {
            let t = ruled::h0_tangent(n);
            let verdict = ruled::rational_verdict(n);
            Ok((
                json!({
                    "n": n,
                    "h0_tangent": t.h0,
                    "relative": t.relative,
                    "base": t.base,
                    "minimal": t.minimal,
                    "special_tensor_dim": ruled::special_tensor_space_dim(n),
                    "verdict": verdict.to_string(),
                }),
                verdict.to_string(),
            ))
        }
        _ => Err(malformed("give both a and b, or neither")),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EllipticRecord {
    b: Option<i64>,
    p_g: Option<i64>,
    h: Option<u32>,
    fiber: Option<Vec<u32>>,
}

fn elliptic_record(r: EllipticRecord) -> Outcome {
    let mut v = json!({});
    let mut key = Vec::new();
    match (r.b, r.p_g) {
        (Some(b), Some(p_g)) => {
            let chi = 1 - b + p_g;
            let e = elliptic::exists_special_tensor(b, p_g);
            v["b"] = json!(b);
            v["p_g"] = json!(p_g);
            v["chi"] = json!(chi);
            v["deg_delta"] = json!(elliptic::deg_delta(chi, b));
            v["special_tensor_degree"] = json!(e.degree);
            v["exists"] = json!(e.exists);
            v["status"] = json!(e.status.name());
            v["reason"] = json!(e.reason);
            key.push(e.status.name().to_string());
        }
        (None, None) => {}
        _ => return Err(malformed("give both b and p_g")),
    }
    if let Some(h) = r.h {
        let w = elliptic::weierstrass_instance(h)?;
        v["weierstrass"] = json!({
            "h": w.h, "b": w.b, "deg_K_B": w.deg_k_b, "deg_6M": w.deg_6m,
            "deg_g2": w.deg_g2, "deg_g3": w.deg_g3, "tensor_space_dim": w.tensor_space_dim,
        });
        key.push("Weierstrass".into());
    }
    if let Some(m) = r.fiber {
        let f = elliptic::FiberData::new(m)?;
        let c = elliptic::fiber_saturation_check(&f)?;
        v["fiber"] = json!({
            "multiplicities": f.multiplicities(), "n_p": f.n_p(), "ok": c.ok,
            "two_s_hat": c.two_s_hat, "s_m": c.s_m, "trace": c.trace,
        });
        key.push(if c.ok { "FiberOk" } else { "FiberSaturated" }.into());
    }
    if key.is_empty() {
        return Err(malformed("nothing to compute: give b and p_g, h, or fiber"));
    }
    Ok((v, key.join("+")))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedPointRecord {
    /// One-based.
    sigma: Vec<usize>,
    psi: Vec<Vec<String>>,
}

fn parse_entry(text: &str) -> Result<(Option<Scalar>, Complex64), Failure> {
    if let Ok(s) = parse_constant(text, Domain::Gaussian) {
        let z = s.to_complex();
        return Ok((Some(s), z));
    }
    text.trim()
        .parse::<f64>()
        .map(|x| (None, Complex64::new(x, 0.0)))
        .map_err(|_| malformed(format!("cannot parse matrix entry `{text}`")))
}

fn point_json(p: &ProjPoint) -> Value {
    let [a, b] = p.coords();
    json!({
        "homogeneous": [fmt_complex(a), fmt_complex(b)],
        "affine": if p.is_infinity(1e-12) { "inf".to_string() } else { fmt_complex(p.to_affine().expect("finite")) },
    })
}

fn fixed_point_record(r: FixedPointRecord, mode: Mode, choice: EigenChoice) -> Outcome {
    if r.psi.iter().any(|m| m.len() != 4) {
        return Err(malformed("each ψ needs four entries a,b,c,d"));
    }
    let mut exact: Option<Vec<ExactMat2>> = Some(Vec::new());
    let mut float = Vec::new();
    for m in &r.psi {
        let e: Vec<(Option<Scalar>, Complex64)> = m.iter().map(|t| parse_entry(t)).collect::<Result<_, _>>()?;
        float.push(CMat2::new(e[0].1, e[1].1, e[2].1, e[3].1));
        exact = exact.and_then(|mut acc| {
            let s: Option<Vec<Scalar>> = e.iter().map(|(s, _)| s.clone()).collect();
            let s = s?;
            acc.push([[s[0].clone(), s[1].clone()], [s[2].clone(), s[3].clone()]]);
            Some(acc)
        });
    }
    let a = PolydiskAutomorphism::from_one_based(&r.sigma, float)?;
    let fp = hermitian::polydisk_fixed_point_with(&a, choice, 0);
    let mut v = json!({
        "sigma": r.sigma,
        "point": fp.coords.iter().map(point_json).collect::<Vec<_>>(),
        "residual": fp.residual,
        "eigenvalues": fp.eigenvalues.iter().map(|z| fmt_complex(*z)).collect::<Vec<_>>(),
    });
    if mode == Mode::Exact {
        let mats = exact.ok_or_else(|| malformed("exact mode needs entries in ℚ(i)"))?;
        let sigma0: Vec<usize> = a.sigma().to_vec();
        match hermitian::exact_fixed_point(&sigma0, &mats, choice)? {
            Some(x) => {
                v["exact"] = json!(x
                    .iter()
                    .map(|p| if p[1].is_zero() { "inf".to_string() } else { p[0].to_string() })
                    .collect::<Vec<_>>());
            }
            None => v["exact"] = json!(null),
        }
    }
    let key = if fp.coords.iter().any(|p| p.is_infinity(1e-12)) {
        "HasInfinity"
    } else {
        "Affine"
    };
    Ok((v, key.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("polycurve").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn cubic_example() {
        let (code, out) = run_capture(&["--output", "json-lines", "classify-cubic", "x0*x1*x2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["class"], "ThreeGeneralLines");
        assert_eq!(v["verdict"], "SplitsCompletely");
    }

    #[test]
    fn cohomology_example() {
        let (code, out) = run_capture(&["--output", "json-lines", "cohomology", "--n", "3", "--a", "2", "--b", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["h0"], 2);
    }

    #[test]
    fn surface_example() {
        let (code, out) = run_capture(&["--output", "json-lines", "classify-surface", r#"{"P12":0,"q":1,"K2":0}"#]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["cover"], "P1xC");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["no-such-command"]).0, 2);
        assert_eq!(run_capture(&["--tol", "-1", "cohomology", "--n", "2"]).0, 2);
        assert_eq!(run_capture(&["--mode", "exact", "verify-holonomy", "--samples", "2"]).0, 2);
    }

    #[test]
    fn domain_error_is_a_record() {
        let (code, out) = run_capture(&["--output", "json-lines", "classify-cubic", "x0^2"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert!(v["error"]["message"].is_string());
    }

    #[test]
    fn fixed_point_example() {
        let (code, out) = run_capture(&[
            "--output",
            "json-lines",
            "--mode",
            "exact",
            "fixed-point",
            "--sigma",
            "2,1",
            "--psi",
            "2,0,0,1;1,1,0,1",
            "--choice",
            "smaller",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["exact"], json!(["-2", "-1"]));
    }
}
