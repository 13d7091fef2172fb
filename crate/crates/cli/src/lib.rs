//! Command surface for `logterm`: argument types, the parser for polynomial
//! text, the command runner and the self-test suite.

pub mod parse;
pub mod selftest;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use logterm_core::certifier::{certify_on, Verdict};
use logterm_core::mellin::{linear_grid, FitModel};
use logterm_core::polytope::compact_face_counts;
use logterm_core::suspension::suspended_quotient_dims;
use logterm_core::{
    certify_auto, estimate_leading_pole_mc, newton_number, predict_pole_profile, CertifyOptions, Error, LogForm,
    McOptions, NewtonPolyhedron, Rational, SparsePolynomial,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::parse::{format_polynomial, parse_polynomial_text, ParseError};

/// Environment variable read for the default worker count.
pub const WORKERS_ENV: &str = "LOGTERM_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "logterm", version, about = "Leading terms of period integrals from Newton polyhedra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Master seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0x5EED)]
    pub seed: u64,

    /// Number of variables; inferred from the inputs when absent.
    #[arg(long, global = true)]
    pub nvars: Option<usize>,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = WORKERS_ENV, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polyhedron, faces, convenience and Newton number.
    Newton {
        #[arg(long, required_unless_present = "polyhedron")]
        f: Option<String>,
        /// Rebuild from a serialized polyhedron (a `newton` document or its `polyhedron` field).
        #[arg(long, conflicts_with = "f")]
        polyhedron: Option<PathBuf>,
    },
    /// Newton order, l and the lower bound (v − 1, l) per form.
    Analyze {
        #[arg(long)]
        f: String,
        /// Coefficient h of the top form h dx1∧…∧dxn; repeat for several forms.
        #[arg(long, required = true)]
        form: Vec<String>,
    },
    /// Graded quotient certificate per selected face.
    Certify {
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "1")]
        form: String,
        /// Face id, vertex list such as "2,0;0,3", or "auto".
        #[arg(long, default_value = "auto")]
        face: String,
        /// Trials of the non-degeneracy search.
        #[arg(long, default_value_t = 24)]
        trials: usize,
    },
    /// Dimensions on both sides of the suspension isomorphism.
    SuspendCheck {
        #[arg(long)]
        f: String,
        #[arg(long)]
        face: String,
        /// Degree a, e.g. "5/6"; taken from --form when absent.
        #[arg(long, required_unless_present = "form")]
        a: Option<String>,
        #[arg(long)]
        form: Option<String>,
    },
    /// Monte Carlo estimate of M(λ) and fit of the leading pole.
    MellinFit {
        #[arg(long)]
        f: String,
        /// Amplitude h of the density |h|²; defaults to 1.
        #[arg(long, default_value = "1")]
        form: String,
        /// λ grid as lo:hi:steps; derived from the certificate when absent.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, default_value_t = 10_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Accepted distance between fitted and predicted pole location.
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = ModelArg::TrivialPole)]
        model: ModelArg,
        /// CSV of (λ, M(λ), standard error) rows.
        #[arg(long)]
        dump_curve: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Monte Carlo samples for the pole-fit criterion.
        #[arg(long, default_value_t = 10_000_000)]
        samples: u64,
        /// Run only these criteria (1-8).
        #[arg(long)]
        only: Vec<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    PowerLaw,
    TrivialPole,
}

impl From<ModelArg> for FitModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::PowerLaw => FitModel::PowerLaw,
            ModelArg::TrivialPole => FitModel::PowerLawTrivialPole,
        }
    }
}

/// Largest accepted gap between fitted and predicted pole order.
pub const ORDER_TOLERANCE: f64 = 0.3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error in {what}: {}", .error.render(.text))]
    Parse {
        what: &'static str,
        text: String,
        error: ParseError,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("numeric verification failed: {0}")]
    Numeric(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 3,
            CliError::Invalid(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DivergentGrid(_) | Error::SampleStarvation(_) => CliError::Numeric(e.to_string()),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

/// A finished run: the JSON document and the exit code it maps to.
#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub code: i32,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Self { json, code: 0 }
    }
}

fn parse_pair(
    f: &str,
    form: &str,
    nvars: Option<usize>,
) -> Result<(SparsePolynomial, SparsePolynomial), CliError> {
    let pf = parse_polynomial_text(f).map_err(|error| CliError::Parse {
        what: "--f",
        text: f.into(),
        error,
    })?;
    let ph = parse_polynomial_text(form).map_err(|error| CliError::Parse {
        what: "--form",
        text: form.into(),
        error,
    })?;
    let n = nvars.unwrap_or(pf.min_vars.max(ph.min_vars).max(1));
    let fp = pf.into_polynomial(n).map_err(|error| CliError::Parse {
        what: "--f",
        text: f.into(),
        error,
    })?;
    let hp = ph.into_polynomial(n).map_err(|error| CliError::Parse {
        what: "--form",
        text: form.into(),
        error,
    })?;
    if fp.is_zero() {
        return Err(CliError::Invalid("f is zero".into()));
    }
    Ok((fp, hp))
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Invalid(format!("{what}: expected a rational such as 5/6, got {s:?}")))
}

/// `lo:hi:steps`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Invalid(format!("--grid: expected lo:hi:steps, got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if steps < 2 || !(lo < hi) {
        return Err(bad());
    }
    Ok(linear_grid(lo, hi, steps))
}

/// Face id, `"auto"` (`None`), or a `;`-separated vertex list.
fn select_face(poly: &NewtonPolyhedron, sel: &str) -> Result<Option<usize>, CliError> {
    let sel = sel.trim();
    if sel == "auto" {
        return Ok(None);
    }
    if let Ok(id) = sel.parse::<usize>() {
        poly.face(id).map_err(CliError::from)?;
        return Ok(Some(id));
    }
    let vertices = sel
        .split(';')
        .map(|v| {
            v.split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map(logterm_core::Exponent)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Invalid(format!("--face: expected an id, \"auto\" or a list like 2,0;0,3, got {sel:?}")))?;
    poly.face_by_vertices(&vertices)
        .map(|f| Some(f.id))
        .ok_or_else(|| CliError::Invalid(format!("no face with vertices {sel}")))
}

fn newton_document(f: Option<&SparsePolynomial>, poly: &NewtonPolyhedron) -> Result<Value, CliError> {
    let convenient = poly.is_convenient();
    let nu = if convenient {
        Some(newton_number(poly)?)
    } else {
        None
    };
    let counts: serde_json::Map<String, Value> = compact_face_counts(poly)
        .into_iter()
        .map(|(d, c)| (d.to_string(), json!(c)))
        .collect();
    Ok(json!({
        "command": "newton",
        "f": f.map(format_polynomial),
        "nvars": poly.nvars(),
        "convenient": convenient,
        "newton_number": nu.map(|v| v.to_string()),
        "compact_faces": poly.compact_faces().count(),
        "compact_faces_by_dim": counts,
        "polyhedron": poly,
    }))
}

fn run_newton(cli: &Cli, f: Option<&str>, file: Option<&PathBuf>) -> Result<Outcome, CliError> {
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)?;
        let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        let v = v.get("polyhedron").cloned().unwrap_or(v);
        let stored: NewtonPolyhedron =
            serde_json::from_value(v).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        let rebuilt = NewtonPolyhedron::build(stored.generators())?;
        let mut doc = newton_document(None, &rebuilt)?;
        doc["round_trip"] = json!(rebuilt.facets() == stored.facets() && rebuilt.faces() == stored.faces());
        return Ok(Outcome::ok(doc));
    }
    let f = f.expect("clap enforces --f or --polyhedron");
    let (fp, _) = parse_pair(f, "1", cli.nvars)?;
    let poly = NewtonPolyhedron::build(&fp.support())?;
    Ok(Outcome::ok(newton_document(Some(&fp), &poly)?))
}

fn run_analyze(cli: &Cli, f: &str, forms: &[String]) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut poly: Option<NewtonPolyhedron> = None;
    let mut fp_out = None;
    for form in forms {
        let (fp, hp) = parse_pair(f, form, cli.nvars)?;
        if hp.is_zero() {
            return Err(CliError::Invalid(format!("form {form:?} is zero")));
        }
        let p = match &poly {
            Some(p) if p.nvars() == fp.nvars() => p.clone(),
            _ => NewtonPolyhedron::build(&fp.support())?,
        };
        let phi = LogForm::holomorphic_top(&hp);
        let pair = p.newton_pair_form(&phi)?;
        let bound = p.vasilev_lower_bound(&phi)?;
        rows.push(json!({
            "form": format_polynomial(&hp),
            "log_support": phi.support(),
            "v": pair.v.to_string(),
            "l": pair.l,
            "vasilev_bound": bound,
        }));
        fp_out = Some(format_polynomial(&fp));
        poly = Some(p);
    }
    Ok(Outcome::ok(json!({
        "command": "analyze",
        "f": fp_out,
        "forms": rows,
    })))
}

fn run_certify(cli: &Cli, f: &str, form: &str, face: &str, trials: usize) -> Result<Outcome, CliError> {
    let (fp, hp) = parse_pair(f, form, cli.nvars)?;
    if hp.is_zero() {
        return Err(CliError::Invalid("form is zero".into()));
    }
    let phi = LogForm::holomorphic_top(&hp);
    let opts = CertifyOptions {
        trials,
        seed: cli.seed,
        ..CertifyOptions::default()
    };
    let poly = NewtonPolyhedron::build(&fp.support())?;
    let certs = match select_face(&poly, face)? {
        Some(id) => vec![certify_on(&poly, &fp, id, &phi, &opts)?],
        None => certify_auto(&fp, &phi, &opts)?,
    };
    let invalid = certs.is_empty() || certs.iter().any(|c| matches!(c.verdict, Verdict::InvalidInput { .. }));
    let mut doc = json!({
        "command": "certify",
        "f": format_polynomial(&fp),
        "form": format_polynomial(&hp),
        "certificates": certs,
    });
    if certs.is_empty() {
        doc["error"] = json!("no compact face off the coordinate hyperplanes holds the form's support in its scaled interior");
    }
    Ok(Outcome {
        json: doc,
        code: if invalid { 2 } else { 0 },
    })
}

fn run_suspend_check(cli: &Cli, f: &str, face: &str, a: Option<&str>, form: Option<&str>) -> Result<Outcome, CliError> {
    let (fp, hp) = parse_pair(f, form.unwrap_or("1"), cli.nvars)?;
    let poly = NewtonPolyhedron::build(&fp.support())?;
    let id = select_face(&poly, face)?
        .ok_or_else(|| CliError::Invalid("suspend-check needs an explicit face".into()))?;
    let a = match a {
        Some(a) => parse_rational(a, "--a")?,
        None => {
            let cert = certify_on(&poly, &fp, id, &LogForm::holomorphic_top(&hp), &CertifyOptions::default())?;
            cert.a
                .ok_or_else(|| CliError::Invalid(format!("form does not sit at one degree on face {id}")))?
        }
    };
    let check = suspended_quotient_dims(&fp, id, &a)?;
    let ok = check.lhs_dim == check.rhs_dim && (check.forward_preserved == check.forward_checked);
    Ok(Outcome {
        json: json!({
            "command": "suspend-check",
            "f": format_polynomial(&fp),
            "check": check,
            "dims_equal": check.lhs_dim == check.rhs_dim,
        }),
        code: if ok { 0 } else { 4 },
    })
}

/// `(a, r)` of the first certified face with non-integral `a`.
fn certified_degree(f: &SparsePolynomial, h: &SparsePolynomial, seed: u64) -> Option<(Rational, usize)> {
    let opts = CertifyOptions {
        seed,
        ..CertifyOptions::default()
    };
    certify_auto(f, &LogForm::holomorphic_top(h), &opts)
        .ok()?
        .into_iter()
        .find_map(|c| match (c.verdict, c.a, c.r) {
            (Verdict::Certified(_), Some(a), Some(r)) if !a.is_integer() => Some((a, r)),
            _ => None,
        })
}

#[allow(clippy::too_many_arguments)]
fn run_mellin_fit(
    cli: &Cli,
    f: &str,
    form: &str,
    grid: Option<&str>,
    samples: u64,
    radius: f64,
    tol: f64,
    model: ModelArg,
    dump: Option<&PathBuf>,
) -> Result<Outcome, CliError> {
    let (fp, hp) = parse_pair(f, form, cli.nvars)?;
    if hp.is_zero() {
        return Err(CliError::Invalid("form is zero".into()));
    }
    let certified = certified_degree(&fp, &hp, cli.seed);
    let prediction = match &certified {
        Some((a, r)) => Some(predict_pole_profile(a, *r, fp.nvars())?),
        None => None,
    };
    let grid = match (grid, &certified) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some((a, _))) => {
            let a = rational_f64(a);
            linear_grid(-a + 0.04, -a + 0.25, 11)
        }
        (None, None) => {
            return Err(CliError::Invalid(
                "no certified non-integral degree to place the grid; pass --grid lo:hi:steps".into(),
            ))
        }
    };
    let opts = McOptions {
        radius,
        grid,
        samples,
        seed: cli.seed,
        model: model.into(),
        ..McOptions::default()
    };
    let h = (!is_one(&hp)).then_some(&hp);
    let fit = estimate_leading_pole_mc(&fp, h, &opts)?;
    if let Some(path) = dump {
        let mut csv = String::from("lambda,value,std_error\n");
        for g in &fit.estimate.grid {
            csv.push_str(&format!("{},{},{}\n", g.lambda, g.value, g.std_error));
        }
        std::fs::write(path, csv)?;
    }
    let agrees = prediction.as_ref().map(|p| {
        (fit.location - rational_f64(&p.location)).abs() <= tol
            && (fit.order - p.order as f64).abs() <= ORDER_TOLERANCE
    });
    let code = if agrees == Some(false) { 4 } else { 0 };
    Ok(Outcome {
        json: json!({
            "command": "mellin-fit",
            "f": format_polynomial(&fp),
            "form": format_polynomial(&hp),
            "fit": fit,
            "prediction": prediction,
            "location_tolerance": tol,
            "order_tolerance": ORDER_TOLERANCE,
            "agrees": agrees,
        }),
        code,
    })
}

fn is_one(p: &SparsePolynomial) -> bool {
    p.len() == 1 && p.coefficient(&logterm_core::Exponent::zero(p.nvars())) == logterm_core::GaussianRational::from_integer(1)
}

pub fn rational_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Newton { f, polyhedron } => run_newton(cli, f.as_deref(), polyhedron.as_ref()),
        Command::Analyze { f, form } => run_analyze(cli, f, form),
        Command::Certify { f, form, face, trials } => run_certify(cli, f, form, face, *trials),
        Command::SuspendCheck { f, face, a, form } => run_suspend_check(cli, f, face, a.as_deref(), form.as_deref()),
        Command::MellinFit {
            f,
            form,
            grid,
            samples,
            radius,
            tol,
            model,
            dump_curve,
        } => run_mellin_fit(
            cli,
            f,
            form,
            grid.as_deref(),
            *samples,
            *radius,
            *tol,
            *model,
            dump_curve.as_ref(),
        ),
        Command::Selftest { samples, only } => {
            let report = selftest::run_all(&selftest::SelftestOptions {
                seed: cli.seed,
                mc_samples: *samples,
                only: only.clone(),
            });
            let code = if report.all_passed { 0 } else { 4 };
            Ok(Outcome {
                json: serde_json::to_value(&report).expect("serializable report"),
                code,
            })
        }
    }
}
