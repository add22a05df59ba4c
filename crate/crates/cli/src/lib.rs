//! Subcommand implementations for the `rmtlab` binary.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Signed;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use rmtlab::circle::{self, Density, Model, Phase, PhasePoint};
use rmtlab::exact::{self, format_rational, parse_rational, ExactScalar, SymbolSpec};
use rmtlab::group::{self, GroupKind, GroupTag};
use rmtlab::numeric::C64;
use rmtlab::realline::{StereoDensity, StereoParams};
use rmtlab::Family;

pub const SCHEMA: u32 = 1;
pub const BUDGET_VAR: &str = "RMTLAB_BUDGET";

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const BUDGET: i32 = 3;
}

/// A rejected argument combination.
#[derive(Debug)]
pub struct Validation(pub String);

impl std::fmt::Display for Validation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Validation {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Validation(msg.into()).into()
}

/// Maps an error chain to its exit code.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if cause.downcast_ref::<Validation>().is_some() {
            return exit::VALIDATION;
        }
        if let Some(e) = cause.downcast_ref::<rmtlab::Error>() {
            return match e {
                rmtlab::Error::BudgetExceeded { .. } => exit::BUDGET,
                rmtlab::Error::InvalidInput(_)
                | rmtlab::Error::OutOfRange { .. }
                | rmtlab::Error::NonIntegerExponent
                | rmtlab::Error::WrongPhase { .. }
                | rmtlab::Error::OutsideSupport(_) => exit::VALIDATION,
                _ => exit::VERIFICATION,
            };
        }
    }
    exit::VERIFICATION
}

#[derive(Debug, Parser)]
#[command(name = "rmtlab", version, about = "Exact and large-K analysis of E/H unitary matrix models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check Toeplitz = Schur sum = Meixner sum (and the t = 1 closed form).
    VerifyEquivalence(VerifyArgs),
    /// Sweep the (t, γ, v) phase diagram.
    PhaseDiagram(PhaseArgs),
    /// Sample an eigenvalue density on the circle or the real line.
    Density(DensityArgs),
    /// Exact group averages against their large-K prediction.
    GroupConvergence(GroupArgs),
    /// Compare Chebyshev Wronskian formulas with exact determinant ratios.
    WronskianCheck(WronskianArgs),
    /// Trace the real-potential contour Im V = 0.
    Contour(ContourArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    E,
    H,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::E => Family::E,
            FamilyArg::H => Family::H,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Exact,
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    Circle,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Potential {
    /// Logarithmic E/H potential.
    Log,
    /// Gross-Witten potential `(1-v)z + (1+v)/z`.
    Gw,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n1: u32,
    #[arg(long)]
    pub n2: u32,
    #[arg(long)]
    pub k: u32,
    /// Rational `p/q` in (0, 1].
    #[arg(long)]
    pub t: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct PhaseArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub t: Vec<f64>,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub gamma: Vec<f64>,
    #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "0")]
    pub v: Vec<f64>,
    #[arg(long, value_enum, default_value_t = ModelArg::Exact)]
    pub model: ModelArg,
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub v: f64,
    /// Real-line asymmetry parameter `b`.
    #[arg(long, default_value_t = 0.0)]
    pub shift: f64,
    #[arg(long, value_enum, default_value_t = Domain::Circle)]
    pub domain: Domain,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: GroupTag,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Nonnegative integer exponent.
    #[arg(long)]
    pub beta: u64,
    /// Rational `p/q` in (0, 1).
    #[arg(long)]
    pub t: String,
    #[arg(long)]
    pub k_max: usize,
    /// Terms of the printed series diagnostic (JSON only).
    #[arg(long, default_value_t = 1000)]
    pub series_terms: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct WronskianArgs {
    #[arg(long)]
    pub group: GroupTag,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Integer exponent `N`.
    #[arg(long)]
    pub beta: usize,
    #[arg(long)]
    pub k: usize,
    /// Rationals `p/q` in (0, 1).
    #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "1/4,1/2,3/4")]
    pub t: Vec<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct ContourArgs {
    #[arg(long, value_enum, default_value_t = Potential::Log)]
    pub potential: Potential,
    #[arg(long, value_enum, default_value_t = FamilyArg::E)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 0.5)]
    pub t: f64,
    #[arg(long, default_value_t = 0.0)]
    pub v: f64,
    #[arg(long, default_value_t = 64)]
    pub points: usize,
    #[command(flatten)]
    pub output: Output,
}

/// Rendered output of a command and whether its checks passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub ok: bool,
}

/// Runs a parsed command and writes its output.
pub fn run(cli: &Cli) -> anyhow::Result<bool> {
    let (outcome, output) = match &cli.command {
        Command::VerifyEquivalence(a) => (verify_equivalence(a, budget()?)?, &a.output),
        Command::PhaseDiagram(a) => (phase_diagram(a)?, &a.output),
        Command::Density(a) => (density(a)?, &a.output),
        Command::GroupConvergence(a) => (group_convergence(a)?, &a.output),
        Command::WronskianCheck(a) => (wronskian_check(a)?, &a.output),
        Command::Contour(a) => (contour(a)?, &a.output),
    };
    match &output.out {
        Some(path) => std::fs::write(path, &outcome.body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(outcome.body.as_bytes())?,
    }
    Ok(outcome.ok)
}

/// Enumeration budget from the environment.
pub fn budget() -> anyhow::Result<u64> {
    match std::env::var(BUDGET_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| invalid(format!("{BUDGET_VAR}='{s}' is not a nonnegative integer"))),
        Err(_) => Ok(exact::DEFAULT_BUDGET),
    }
}

/// Float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(fmt_f64(x).parse().expect("formatted float is valid JSON"))
    } else {
        Value::Null
    }
}

fn document(command: &str, body: Map<String, Value>) -> String {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(command));
    doc.extend(body);
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON serialization");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?)
}

fn table_json(header: &[&str], rows: &[Vec<Value>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect()))
            .collect(),
    )
}

fn rational_in_unit(s: &str, closed: bool) -> anyhow::Result<ExactScalar> {
    let t = parse_rational(s).map_err(|e| invalid(e.to_string()))?;
    let one = ExactScalar::from_integer(1.into());
    if !t.is_positive() || t > one || (!closed && t == one) {
        return Err(invalid(format!("t = {s} is outside {}", if closed { "(0, 1]" } else { "(0, 1)" })));
    }
    Ok(t)
}

fn nonempty(name: &str, v: &[f64]) -> anyhow::Result<()> {
    if v.is_empty() {
        return Err(invalid(format!("{name} grid is empty")));
    }
    if let Some(x) = v.iter().find(|x| !x.is_finite()) {
        return Err(invalid(format!("{name} grid contains {x}")));
    }
    Ok(())
}

pub fn verify_equivalence(a: &VerifyArgs, budget: u64) -> anyhow::Result<Outcome> {
    let t = rational_in_unit(&a.t, true)?;
    let sym = SymbolSpec::integer(Family::E, t.clone(), a.n1.into(), a.n2.into())?;
    let toeplitz = exact::toeplitz_det(&sym, a.k as usize)?.value;
    let schur = exact::ensembles::schur_sum_oracle_with_budget(a.n1, a.n2, a.k, &t, budget)?;
    let meixner = exact::ensembles::meixner_sum_with_budget(a.n1, a.n2, a.k, &t, budget)?;
    let mut values = vec![("toeplitz", toeplitz.clone()), ("schur", schur), ("meixner", meixner)];
    if t == ExactScalar::from_integer(1.into()) {
        values.push(("closed_form", exact::bs_closed_form(a.n1, a.n2, a.k)));
    }
    let ok = values.iter().all(|(_, v)| *v == toeplitz);
    let body = match a.output.format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("n1".into(), json!(a.n1));
            m.insert("n2".into(), json!(a.n2));
            m.insert("k".into(), json!(a.k));
            m.insert("t".into(), json!(format_rational(&t)));
            m.insert(
                "values".into(),
                Value::Object(values.iter().map(|(k, v)| (k.to_string(), json!(format_rational(v)))).collect()),
            );
            m.insert("pass".into(), json!(ok));
            document("verify-equivalence", m)
        }
        Format::Csv => {
            let mut s = String::new();
            for (k, v) in &values {
                writeln!(s, "{k} = {}", format_rational(v))?;
            }
            writeln!(s, "{}", if ok { "PASS" } else { "FAIL" })?;
            s
        }
    };
    Ok(Outcome { body, ok })
}

fn pool(workers: Option<usize>) -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(invalid("--workers must be at least 1"));
        }
        b = b.num_threads(w);
    }
    Ok(b.build()?)
}

const FD_STEP: f64 = 1e-4;

struct GridRow {
    t: f64,
    gamma: f64,
    v: f64,
    phase: Option<Phase>,
    f: f64,
    f1: f64,
    f2: f64,
    error: Option<String>,
}

fn grid_point(family: Family, model: Model, t: f64, gamma: f64, v: f64) -> GridRow {
    let eval = || -> rmtlab::Result<(Phase, f64, f64, f64)> {
        let p = PhasePoint::new(family, t, gamma, v)?.with_model(model);
        let f = circle::free_energy_closed(&p)?;
        let f1 = circle::dfdt(&p)?;
        let h = FD_STEP.min(0.5 * t).min(0.5 * (1.0 - t));
        let f2 = (circle::dfdt(&p.with_t(t + h))? - circle::dfdt(&p.with_t(t - h))?) / (2.0 * h);
        Ok((p.phase(), f, f1, f2))
    };
    match eval() {
        Ok((phase, f, f1, f2)) => GridRow {
            t,
            gamma,
            v,
            phase: Some(phase),
            f,
            f1,
            f2,
            error: None,
        },
        Err(e) => GridRow {
            t,
            gamma,
            v,
            phase: None,
            f: f64::NAN,
            f1: f64::NAN,
            f2: f64::NAN,
            error: Some(e.to_string()),
        },
    }
}

const PHASE_HEADER: [&str; 14] = [
    "family",
    "model",
    "t",
    "gamma",
    "v",
    "phase",
    "F",
    "dF_dt",
    "d2F_dt2",
    "gamma_c",
    "t_c",
    "transition_order",
    "jump",
    "error",
];

pub fn phase_diagram(a: &PhaseArgs) -> anyhow::Result<Outcome> {
    nonempty("t", &a.t)?;
    nonempty("gamma", &a.gamma)?;
    nonempty("v", &a.v)?;
    let family: Family = a.family.into();
    let model = match a.model {
        ModelArg::Exact => Model::Exact,
        ModelArg::Printed => Model::Printed,
    };
    for &t in &a.t {
        PhasePoint::new(family, t, 0.0, 0.0).map_err(|e| invalid(e.to_string()))?;
    }
    for &v in &a.v {
        PhasePoint::new(family, 0.5, 0.0, v).map_err(|e| invalid(e.to_string()))?;
    }
    if let Some(g) = a.gamma.iter().find(|g| **g < 0.0) {
        return Err(invalid(format!("gamma = {g} is negative")));
    }
    let slices: Vec<(f64, f64)> = a.t.iter().flat_map(|&t| a.v.iter().map(move |&v| (t, v))).collect();
    let points: Vec<(f64, f64, f64)> = slices
        .iter()
        .flat_map(|&(t, v)| a.gamma.iter().map(move |&g| (t, g, v)))
        .collect();
    let pool = pool(a.workers)?;
    let (orders, rows): (Vec<_>, Vec<_>) = pool.install(|| {
        let orders: Vec<_> = slices
            .par_iter()
            .map(|&(t, v)| circle::phase_order(family, t, v, model).map_err(|e| e.to_string()))
            .collect();
        let rows: Vec<_> = points.par_iter().map(|&(t, g, v)| grid_point(family, model, t, g, v)).collect();
        (orders, rows)
    });
    let mut failures = 0;
    let mut csv_rows = Vec::with_capacity(rows.len());
    let mut json_rows = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let order = &orders[i / a.gamma.len()];
        let (gc, tc, ord, jump) = match order {
            Ok(o) => (o.gamma_c, o.t_c, Some(o.order), o.jump),
            Err(_) => (f64::NAN, f64::NAN, None, f64::NAN),
        };
        let error = r.error.clone().or_else(|| order.as_ref().err().map(|e| format!("transition: {e}")));
        if let Some(e) = &error {
            failures += 1;
            eprintln!("t={} gamma={} v={}: {e}", r.t, r.gamma, r.v);
        }
        let phase = r.phase.map(|p| p.to_string()).unwrap_or_default();
        csv_rows.push(vec![
            family.to_string(),
            format!("{:?}", a.model).to_lowercase(),
            fmt_f64(r.t),
            fmt_f64(r.gamma),
            fmt_f64(r.v),
            phase.clone(),
            fmt_f64(r.f),
            fmt_f64(r.f1),
            fmt_f64(r.f2),
            fmt_f64(gc),
            fmt_f64(tc),
            ord.map(|o| o.to_string()).unwrap_or_default(),
            fmt_f64(jump),
            error.clone().unwrap_or_default(),
        ]);
        json_rows.push(vec![
            json!(family.to_string()),
            json!(format!("{:?}", a.model).to_lowercase()),
            num(r.t),
            num(r.gamma),
            num(r.v),
            if phase.is_empty() { Value::Null } else { json!(phase) },
            num(r.f),
            num(r.f1),
            num(r.f2),
            num(gc),
            num(tc),
            ord.map(|o| json!(o)).unwrap_or(Value::Null),
            num(jump),
            error.map(Value::String).unwrap_or(Value::Null),
        ]);
    }
    let body = match a.output.format {
        Format::Csv => csv_table(&PHASE_HEADER, &csv_rows)?,
        Format::Json => {
            let mut m = Map::new();
            m.insert("failures".into(), json!(failures));
            m.insert("rows".into(), table_json(&PHASE_HEADER, &json_rows));
            document("phase-diagram", m)
        }
    };
    Ok(Outcome { body, ok: true })
}

const DENSITY_HEADER: [&str; 5] = ["s", "x_re", "x_im", "rho_re", "rho_im"];

pub fn density(a: &DensityArgs) -> anyhow::Result<Outcome> {
    if a.points < 2 {
        return Err(invalid("--points must be at least 2"));
    }
    let family: Family = a.family.into();
    let (range, samples): ((f64, f64), Vec<(f64, C64, C64)>) = match a.domain {
        Domain::Circle => {
            if a.shift != 0.0 {
                return Err(invalid("--shift applies to the real line only"));
            }
            let d = Density::new(&PhasePoint::new(family, a.t, a.gamma, a.v)?)?;
            let h = d.half_width();
            let s = grid(-h, h, a.points, d.phase() == Phase::Strong);
            ((-h, h), s.into_iter().map(|s| (s, d.position(s), d.eval_unchecked(s))).collect())
        }
        Domain::Real => {
            let d = StereoDensity::solve(&StereoParams::new(family, a.t, a.gamma, a.v)?.with_shift(a.shift))?;
            let (lo, hi) = d.range();
            let s = grid(lo, hi, a.points, true);
            ((lo, hi), s.into_iter().map(|s| (s, d.position(s), d.eval_per_dx(s))).collect())
        }
    };
    let body = match a.output.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = samples
                .iter()
                .map(|(s, x, r)| vec![fmt_f64(*s), fmt_f64(x.re), fmt_f64(x.im), fmt_f64(r.re), fmt_f64(r.im)])
                .collect();
            csv_table(&DENSITY_HEADER, &rows)?
        }
        Format::Json => {
            let rows: Vec<Vec<Value>> = samples
                .iter()
                .map(|(s, x, r)| vec![num(*s), num(x.re), num(x.im), num(r.re), num(r.im)])
                .collect();
            let mut m = Map::new();
            m.insert("family".into(), json!(family.to_string()));
            m.insert("domain".into(), json!(format!("{:?}", a.domain).to_lowercase()));
            m.insert("t".into(), num(a.t));
            m.insert("gamma".into(), num(a.gamma));
            m.insert("v".into(), num(a.v));
            m.insert("shift".into(), num(a.shift));
            m.insert("range".into(), json!([num(range.0), num(range.1)]));
            m.insert("samples".into(), table_json(&DENSITY_HEADER, &rows));
            document("density", m)
        }
    };
    Ok(Outcome { body, ok: true })
}

/// `n` points on `[lo, hi]`; interior (cell midpoints) when `open`, so that
/// square-root edges are never sampled exactly. A full circle is periodic.
fn grid(lo: f64, hi: f64, n: usize, open: bool) -> Vec<f64> {
    let w = hi - lo;
    if open {
        (0..n).map(|k| lo + w * (k as f64 + 0.5) / n as f64).collect()
    } else {
        (0..n).map(|k| lo + w * k as f64 / n as f64).collect()
    }
}

const GROUP_HEADER: [&str; 7] = ["group", "family", "K", "exact", "exact_f64", "prediction", "abs_error"];

pub fn group_convergence(a: &GroupArgs) -> anyhow::Result<Outcome> {
    if !(1..=24).contains(&a.k_max) {
        return Err(invalid(format!("--k-max = {} is outside [1, 24]", a.k_max)));
    }
    GroupKind::new(a.group, 1)?;
    let t = rational_in_unit(&a.t, false)?;
    let tf = exact::to_f64(&t);
    let family: Family = a.family.into();
    let sym = SymbolSpec::integer(family, t.clone(), a.beta, a.beta)?;
    let prediction = group::basor_chen_asymptotic(family, a.group, a.beta as f64, tf)?;
    let limit = prediction.value();
    let exact: Vec<ExactScalar> = (1..=a.k_max)
        .into_par_iter()
        .map(|k| group::th_determinant(a.group, &sym, k))
        .collect::<rmtlab::Result<_>>()?;
    let errors: Vec<f64> = exact.iter().map(|z| (exact::to_f64(z) - limit).abs()).collect();
    let rows: Vec<Vec<String>> = exact
        .iter()
        .enumerate()
        .map(|(i, z)| {
            vec![
                a.group.to_string(),
                family.to_string(),
                (i + 1).to_string(),
                format_rational(z),
                fmt_f64(exact::to_f64(z)),
                fmt_f64(limit),
                fmt_f64(errors[i]),
            ]
        })
        .collect();
    let body = match a.output.format {
        Format::Csv => csv_table(&GROUP_HEADER, &rows)?,
        Format::Json => {
            let series = group::printed_series_partial(family, a.beta as f64, tf, a.series_terms)?;
            let json_rows: Vec<Vec<Value>> = rows
                .iter()
                .zip(&exact)
                .zip(&errors)
                .map(|((r, z), e)| {
                    vec![
                        json!(r[0]),
                        json!(r[1]),
                        json!(r[2].parse::<usize>().unwrap_or(0)),
                        json!(r[3]),
                        num(exact::to_f64(z)),
                        num(limit),
                        num(*e),
                    ]
                })
                .collect();
            let ratios: Vec<Value> = errors.windows(2).map(|w| num(w[1] / w[0])).collect();
            let mut m = Map::new();
            m.insert("group".into(), json!(a.group.to_string()));
            m.insert("family".into(), json!(family.to_string()));
            m.insert("beta".into(), json!(a.beta));
            m.insert("t".into(), json!(format_rational(&t)));
            m.insert(
                "prediction".into(),
                json!({
                    "log_z": num(prediction.log_z),
                    "value": num(limit),
                    "prefactor": num(prediction.prefactor),
                    "barnes": num(prediction.barnes),
                    "single": num(prediction.single),
                    "endpoint": num(prediction.endpoint),
                    "double": num(prediction.double),
                }),
            );
            m.insert("rows".into(), table_json(&GROUP_HEADER, &json_rows));
            m.insert("successive_error_ratios".into(), Value::Array(ratios));
            let last = *series.partial_sums.last().unwrap_or(&f64::NAN);
            m.insert(
                "printed_series".into(),
                json!({
                    "terms": a.series_terms,
                    "last_partial_sum": num(last),
                    "log_slope": num(series.log_slope),
                    "divergent": series.divergent,
                    "matches_double_integral": series.matches(prediction.double, 1e-6),
                }),
            );
            document("group-convergence", m)
        }
    };
    Ok(Outcome { body, ok: true })
}

const WRONSKIAN_HEADER: [&str; 9] = ["group", "family", "N", "K", "t", "exact_value", "prediction", "ratio", "pi_power"];

pub fn wronskian_check(a: &WronskianArgs) -> anyhow::Result<Outcome> {
    if a.t.is_empty() {
        return Err(invalid("t list is empty"));
    }
    let ts: Vec<ExactScalar> = a.t.iter().map(|s| rational_in_unit(s, false)).collect::<anyhow::Result<_>>()?;
    let family: Family = a.family.into();
    let check = group::wronskian_check(a.group, family, a.beta, a.k, &ts)?;
    let ok = check.is_constant();
    let rows: Vec<Vec<String>> = (0..ts.len())
        .map(|i| {
            vec![
                a.group.to_string(),
                family.to_string(),
                a.beta.to_string(),
                a.k.to_string(),
                format_rational(&ts[i]),
                format_rational(&check.exact[i]),
                format_rational(&(&check.ratios[i] * &check.exact[i])),
                format_rational(&check.ratios[i]),
                check.pi_power.to_string(),
            ]
        })
        .collect();
    let body = match a.output.format {
        Format::Csv => csv_table(&WRONSKIAN_HEADER, &rows)?,
        Format::Json => {
            let json_rows: Vec<Vec<Value>> = rows
                .iter()
                .map(|r| {
                    let mut v: Vec<Value> = r.iter().map(|s| json!(s)).collect();
                    v[2] = json!(a.beta);
                    v[3] = json!(a.k);
                    v[8] = json!(check.pi_power);
                    v
                })
                .collect();
            let mut m = Map::new();
            m.insert("rows".into(), table_json(&WRONSKIAN_HEADER, &json_rows));
            m.insert("constant".into(), json!(ok));
            m.insert("relative_spread".into(), num(check.relative_spread()));
            document("wronskian-check", m)
        }
    };
    Ok(Outcome { body, ok })
}

const CONTOUR_HEADER: [&str; 4] = ["phi", "radius", "x", "y"];

pub fn contour(a: &ContourArgs) -> anyhow::Result<Outcome> {
    if a.points < 4 {
        return Err(invalid("--points must be at least 4"));
    }
    if !(a.v > -1.0 && a.v < 1.0) {
        return Err(invalid(format!("v = {} is outside (-1, 1)", a.v)));
    }
    let trace = match a.potential {
        Potential::Gw => circle::deformed_contour(&[1.0], a.v, a.points)?,
        Potential::Log => circle::log_potential_contour(a.family.into(), a.t, a.v, a.points)?,
    };
    let cell = |r: Option<f64>, f: fn(f64) -> f64| r.map(f).unwrap_or(f64::NAN);
    let rows: Vec<(f64, f64, f64, f64)> = trace
        .phis
        .iter()
        .zip(&trace.radii)
        .map(|(&p, &r)| (p, cell(r, |r| r), r.map(|r| r * p.cos()).unwrap_or(f64::NAN), r.map(|r| r * p.sin()).unwrap_or(f64::NAN)))
        .collect();
    let body = match a.output.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|&(p, r, x, y)| [p, r, x, y].iter().map(|&v| if v.is_nan() { String::new() } else { fmt_f64(v) }).collect())
                .collect();
            csv_table(&CONTOUR_HEADER, &rows)?
        }
        Format::Json => {
            let rows: Vec<Vec<Value>> = rows.iter().map(|&(p, r, x, y)| vec![num(p), num(r), num(x), num(y)]).collect();
            let mut m = Map::new();
            m.insert("potential".into(), json!(format!("{:?}", a.potential).to_lowercase()));
            if a.potential == Potential::Log {
                m.insert("family".into(), json!(Family::from(a.family).to_string()));
                m.insert("t".into(), num(a.t));
            }
            m.insert("v".into(), num(a.v));
            m.insert("connected".into(), json!(trace.is_connected()));
            m.insert("points".into(), table_json(&CONTOUR_HEADER, &rows));
            document("contour", m)
        }
    };
    Ok(Outcome { body, ok: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(1.0 / 3.0), "3.3333333333333331e-1");
        assert_eq!(fmt_f64(f64::NAN), "NaN");
        assert_eq!(num(f64::INFINITY), Value::Null);
    }

    #[test]
    fn exit_codes() {
        let budget = anyhow::Error::from(rmtlab::Error::BudgetExceeded { required: 2, budget: 1 });
        assert_eq!(exit_code(&budget), exit::BUDGET);
        assert_eq!(exit_code(&invalid("bad")), exit::VALIDATION);
        let nc = anyhow::Error::from(rmtlab::Error::NoConvergence("x".into()));
        assert_eq!(exit_code(&nc), exit::VERIFICATION);
        assert_eq!(exit_code(&nc.context("while sweeping")), exit::VERIFICATION);
    }

    #[test]
    fn grids() {
        assert_eq!(grid(0.0, 1.0, 2, true), vec![0.25, 0.75]);
        assert_eq!(grid(0.0, 1.0, 2, false), vec![0.0, 0.5]);
        assert!(nonempty("t", &[]).is_err());
        assert!(rational_in_unit("1", false).is_err());
        assert!(rational_in_unit("1", true).is_ok());
    }
}
