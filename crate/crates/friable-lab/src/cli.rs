//! Command-line front end: parameter parsing, single-point queries, sweeps,
//! verification suites and chart emission.
//!
//! Exit codes: 0 on success, 1 on assertion/suite failure or surfaced
//! computation errors, 2 on usage errors.

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use friable_core::counts::{
    self, expectation_gap, factorial, power, psi_perm_oracle, psi_poly_oracle, Kind,
};
use friable_core::dickman::{self, RhoTable};
use friable_core::saddle::{ratio_prediction, saddle_data};
use friable_core::{ExactRatio, IrreducibleTable, Params, PrimePower};

use crate::chart;
use crate::report::{self, csv_float, RunConfig};
use crate::suites::{self, GridSpec};

/// CLI validation cap on field orders; keeps sweeps at desk scale.
pub const MAX_Q: u64 = 1 << 20;

#[derive(Parser)]
#[command(
    name = "friable-lab",
    version,
    about = "Exact friable counting over F_q[T] and S_n, with its asymptotic machinery"
)]
pub struct Cli {
    /// Write output to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Perm,
    Poly,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Count,
    Ratio,
    Dickman,
    Saddle,
    Gap,
    Verify,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table of monic irreducible counts pi_q(d) as CSV
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        max_degree: u32,
    },
    /// Exact friable count and probability for one (kind, q, n, m)
    Count {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Exact big-integer output (default)
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        /// Float-recurrence probability only
        #[arg(long)]
        float: bool,
        /// Force the brute-force oracle instead of the recurrence
        #[arg(long)]
        oracle: bool,
    },
    /// Dickman rho, xi and I(xi) at a point or over a grid
    Dickman {
        #[arg(long)]
        u: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Emit log-domain values only
        #[arg(long)]
        log: bool,
        /// Grid "start:stop:step" -> CSV sweep
        #[arg(long)]
        u_grid: Option<String>,
    },
    /// Saddle-point bundle for one (q, n, m)
    Saddle {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Exact polynomial/permutation probability ratio vs the predicted form
    Ratio {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Exact expectation gap E L(pi_n) - E L_q(f_n)
    Gap {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
    },
    /// Run verification suites; nonzero exit iff an exact assertion fails
    Verify {
        /// positivity, ratio, delta, gap, envelopes, counterexample, golomb,
        /// dickman, saddle, or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Comma-separated prime powers (default 2,3,4,5,8,9)
        #[arg(long)]
        q_list: Option<String>,
        #[arg(long, default_value_t = 40)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Parameter sweep to CSV
    Sweep {
        #[arg(long, value_enum)]
        kind: SweepKind,
        #[arg(long)]
        q_list: Option<String>,
        /// "start:stop" or "start:stop:step" over n
        #[arg(long)]
        n_range: String,
        /// "all", "fixed:K", or "clog:C" (m = round(C ln n), clamped to [1,n])
        #[arg(long, default_value = "all")]
        m_rule: String,
    },
    /// Render an SVG line chart from a sweep CSV
    Chart {
        #[arg(long)]
        input: PathBuf,
        /// x column name
        #[arg(long)]
        x: String,
        /// comma-separated y column names
        #[arg(long)]
        y: String,
        #[arg(long)]
        log_y: bool,
    },
}

/// Parses argv and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

fn dispatch(cli: Cli) -> Result<i32> {
    let out = cli.out.clone();
    let result = match cli.command {
        Command::Census { q, max_degree } => cmd_census(&out, q, max_degree),
        Command::Count {
            kind,
            q,
            n,
            m,
            float,
            oracle,
            ..
        } => cmd_count(&out, kind, q, n, m, float, oracle),
        Command::Dickman {
            u,
            tol,
            log,
            u_grid,
        } => cmd_dickman(&out, u, tol, log, u_grid),
        Command::Saddle { q, n, m } => cmd_saddle(&out, q, n, m),
        Command::Ratio { q, n, m } => cmd_ratio(&out, q, n, m),
        Command::Gap { q, n } => cmd_gap(&out, q, n),
        Command::Verify {
            suite,
            q_list,
            n_max,
            report,
        } => {
            return cmd_verify(&out, &suite, q_list, n_max, report);
        }
        Command::Sweep {
            kind,
            q_list,
            n_range,
            m_rule,
        } => cmd_sweep(&out, kind, q_list, &n_range, &m_rule),
        Command::Chart { input, x, y, log_y } => cmd_chart(&out, &input, &x, &y, log_y),
    };
    match result {
        Ok(()) => Ok(0),
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("usage error: {e}");
            Ok(2)
        }
        Err(e) => Err(e),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn emit_json(out: &Option<PathBuf>, value: &Value) -> Result<()> {
    emit(out, &serde_json::to_string_pretty(value)?)
}

fn checked_q(q: u64) -> Result<PrimePower> {
    if q > MAX_Q {
        return Err(usage(format!("q = {q} exceeds the CLI cap {MAX_Q}")));
    }
    PrimePower::new(q).map_err(|e| usage(e.to_string()))
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn cmd_census(out: &Option<PathBuf>, q: u64, max_degree: u32) -> Result<()> {
    let pp = checked_q(q)?;
    if max_degree < 1 {
        return Err(usage("census needs --max-degree >= 1"));
    }
    let table = IrreducibleTable::new(pp, max_degree);
    let mut csv = String::from("d,pi_q_d\n");
    for d in 1..=max_degree {
        csv.push_str(&format!("{d},{}\n", table.count(d)));
    }
    emit(out, csv.trim_end())
}

fn cmd_count(
    out: &Option<PathBuf>,
    kind: KindArg,
    q: Option<u64>,
    n: u32,
    m: u32,
    float: bool,
    oracle: bool,
) -> Result<()> {
    if m < 1 || m > n {
        return Err(usage(format!("need 1 <= m <= n, got n={n} m={m}")));
    }
    let (kind, pp) = match kind {
        KindArg::Perm => (Kind::Perm, None),
        KindArg::Poly => {
            let q = q.ok_or_else(|| usage("--kind poly needs --q"))?;
            (Kind::Poly, Some(checked_q(q)?))
        }
    };
    let kind_str = match kind {
        Kind::Perm => "perm",
        Kind::Poly => "poly",
    };
    if float {
        let prob = match kind {
            Kind::Perm => counts::perm_friable_prob_f64(n, m),
            Kind::Poly => counts::poly_friable_prob_f64(pp.unwrap().value(), n, m)?,
        };
        return emit_json(
            out,
            &json!({
                "kind": kind_str,
                "q": pp.map(|p| p.value()),
                "n": n, "m": m,
                "mode": "float",
                "prob_float": finite_or_null(prob),
            }),
        );
    }
    let (psi, total) = match (kind, oracle) {
        (Kind::Perm, false) => (counts::psi_perm(n, m), factorial(n)),
        (Kind::Perm, true) => (psi_perm_oracle(n, m)?, factorial(n)),
        (Kind::Poly, false) => {
            let pp = pp.unwrap();
            (
                counts::PolyFriableTable::new(pp, m, n).psi(n).clone(),
                power(pp.value(), n),
            )
        }
        (Kind::Poly, true) => {
            let pp = pp.unwrap();
            (psi_poly_oracle(pp.value(), n, m)?, power(pp.value(), n))
        }
    };
    let prob = ExactRatio::new(psi.clone(), total.clone());
    emit_json(
        out,
        &json!({
            "kind": kind_str,
            "q": pp.map(|p| p.value()),
            "n": n, "m": m,
            "mode": if oracle { "oracle" } else { "exact" },
            "psi": psi.to_string(),
            "total": total.to_string(),
            "prob_num": prob.numerator().to_string(),
            "prob_den": prob.denominator().to_string(),
            "prob_float": finite_or_null(prob.to_f64()),
        }),
    )
}

fn dickman_row(rho: &RhoTable, u: f64, log_only: bool) -> Result<Value> {
    let r = rho.rho(u)?;
    let (xi, i_xi) = if u > 1.0 {
        let x = dickman::xi(u)?;
        let i = dickman::exp_integral(friable_core::Complex64::new(x, 0.0))?.re;
        (Some(x), Some(i))
    } else {
        (None, None)
    };
    Ok(json!({
        "u": u,
        "rho": if log_only { Value::Null } else { finite_or_null(r.value()) },
        "log_rho": finite_or_null(r.log_value()),
        "xi": xi,
        "I_xi": i_xi,
    }))
}

fn cmd_dickman(
    out: &Option<PathBuf>,
    u: Option<f64>,
    tol: f64,
    log_only: bool,
    u_grid: Option<String>,
) -> Result<()> {
    if tol < dickman::RHO_TOL_FLOOR {
        return Err(usage(format!(
            "tolerance below the {} floor",
            dickman::RHO_TOL_FLOOR
        )));
    }
    match (u, u_grid) {
        (Some(_), Some(_)) => Err(usage("--u and --u-grid are mutually exclusive")),
        (None, None) => Err(usage("dickman needs --u or --u-grid")),
        (Some(u), None) => {
            if !(0.0..=dickman::DEFAULT_U_MAX as f64).contains(&u) {
                return Err(usage(format!(
                    "u must lie in [0, {}]",
                    dickman::DEFAULT_U_MAX
                )));
            }
            let rho = RhoTable::new(dickman::DEFAULT_U_MAX);
            let mut row = dickman_row(&rho, u, log_only)?;
            row["tol"] = json!(tol);
            row["certified_log_err"] = json!(rho.certified_log_err());
            emit_json(out, &row)
        }
        (None, Some(grid)) => {
            let (start, stop, step) = parse_grid(&grid)?;
            if !(0.0 <= start && start <= stop && stop <= dickman::DEFAULT_U_MAX as f64) {
                return Err(usage(format!(
                    "u grid must lie in [0, {}]",
                    dickman::DEFAULT_U_MAX
                )));
            }
            let rho = RhoTable::new(dickman::DEFAULT_U_MAX);
            let mut csv = String::from("u,rho,log_rho,xi,I_xi\n");
            let mut u = start;
            while u <= stop + 1e-12 {
                let row = dickman_row(&rho, u.min(stop), log_only)?;
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    csv_float(u),
                    row["rho"].as_f64().map_or(String::new(), csv_float),
                    row["log_rho"].as_f64().map_or(String::new(), csv_float),
                    row["xi"].as_f64().map_or(String::new(), csv_float),
                    row["I_xi"].as_f64().map_or(String::new(), csv_float),
                ));
                u += step;
            }
            emit(out, csv.trim_end())
        }
    }
}

fn parse_grid(spec: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| usage(format!("bad grid number '{s}'")))
    };
    match parts.as_slice() {
        [a, b] => Ok((parse(a)?, parse(b)?, 1.0)),
        [a, b, c] => {
            let step = parse(c)?;
            if step <= 0.0 {
                return Err(usage("grid step must be positive"));
            }
            Ok((parse(a)?, parse(b)?, step))
        }
        _ => Err(usage("grid must be start:stop or start:stop:step")),
    }
}

fn saddle_json(params: &Params) -> Result<Value> {
    let d = saddle_data(params)?;
    Ok(json!({
        "q": params.q(), "n": params.n(), "m": params.m(),
        "x": d.x,
        "lambda": d.lambda,
        "lambda2": d.lambda2,
        "log_Q": d.amplitude.log_value(),
        "Gq_x": d.g_q_x.map(|g| g.value),
        "tail_bound": d.g_q_x.map(|g| g.tail_bound),
        "estimate_log": d.estimate_log,
        "applicable_theorem": d.regime.as_str(),
        "envelope": d.envelope.map(finite_or_null).unwrap_or(Value::Null),
        "range_conflict": d.range_conflict,
    }))
}

fn cmd_saddle(out: &Option<PathBuf>, q: u64, n: u32, m: u32) -> Result<()> {
    let pp = checked_q(q)?;
    let params = Params::from_prime_power(pp, n, m).map_err(|e| usage(e.to_string()))?;
    emit_json(out, &saddle_json(&params)?)
}

fn ratio_json(params: &Params) -> Result<Value> {
    let pred = ratio_prediction(params)?;
    let (q, n, m) = (params.q(), params.n(), params.m());
    let poly = counts::PolyFriableTable::new(params.prime_power(), m, n);
    let perm = counts::PermFriableTable::new(m, n);
    let exact = ExactRatio::new(poly.psi(n) * factorial(n), perm.psi(n) * power(q, n));
    let ratio = exact.to_f64();
    let main = if pred.regime.uses_correction() {
        pred.g_q_x.map(|g| g.value)
    } else {
        Some(1.0)
    };
    let residual = main.map(|mt| (ratio / mt - 1.0).abs());
    let normalized = match (residual, pred.envelope) {
        (Some(r), Some(e)) if e > 0.0 => Some(r / e),
        _ => None,
    };
    Ok(json!({
        "q": q, "n": n, "m": m,
        "ratio_num": exact.numerator().to_string(),
        "ratio_den": exact.denominator().to_string(),
        "ratio_float": finite_or_null(ratio),
        "main_term": main,
        "abs_residual": residual,
        "envelope": pred.envelope.map(finite_or_null).unwrap_or(Value::Null),
        "normalized_residual": normalized,
        "Gq_x": pred.g_q_x.map(|g| g.value),
        "applicable_theorem": pred.regime.as_str(),
        "range_conflict": pred.range_conflict,
    }))
}

fn cmd_ratio(out: &Option<PathBuf>, q: u64, n: u32, m: u32) -> Result<()> {
    let pp = checked_q(q)?;
    let params = Params::from_prime_power(pp, n, m).map_err(|e| usage(e.to_string()))?;
    emit_json(out, &ratio_json(&params)?)
}

fn gap_json(q: u64, n: u32) -> Result<Value> {
    let gap = expectation_gap(n, q)?;
    let scale = ((n as f64) * (n as f64).ln() * (q as f64).ln())
        .sqrt()
        .max((q as f64).ln());
    Ok(json!({
        "q": q, "n": n,
        "gap_num": gap.numerator().to_string(),
        "gap_den": gap.denominator().to_string(),
        "gap_float": finite_or_null(gap.to_f64()),
        "log_gap": finite_or_null(gap.ln()),
        "decay_scale": scale,
    }))
}

fn cmd_gap(out: &Option<PathBuf>, q: u64, n: u32) -> Result<()> {
    checked_q(q)?;
    if n < 1 {
        return Err(usage("gap needs n >= 1"));
    }
    emit_json(out, &gap_json(q, n)?)
}

fn parse_q_list(spec: &Option<String>) -> Result<Vec<u64>> {
    let Some(spec) = spec else {
        return Ok(GridSpec::default().q_list);
    };
    let mut out = Vec::new();
    for part in spec.split(',') {
        let q: u64 = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad q value '{part}'")))?;
        checked_q(q)?;
        out.push(q);
    }
    if out.is_empty() {
        return Err(usage("empty q list"));
    }
    Ok(out)
}

fn cmd_verify(
    out: &Option<PathBuf>,
    suite: &str,
    q_list: Option<String>,
    n_max: u32,
    format: ReportFormat,
) -> Result<i32> {
    let q_list = match parse_q_list(&q_list) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("usage error: {}", e.root_cause());
            return Ok(2);
        }
    };
    if n_max < 2 {
        eprintln!("usage error: --n-max must be at least 2");
        return Ok(2);
    }
    let grid = GridSpec::new(q_list.clone(), n_max);
    let Some(reports) = suites::run_suite(suite, &grid) else {
        eprintln!(
            "usage error: unknown suite '{suite}' (expected one of {:?} or all)",
            suites::SUITE_NAMES
        );
        return Ok(2);
    };
    let config = RunConfig::new("verify")
        .flag("suite", suite)
        .flag(
            "q-list",
            q_list
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(","),
        )
        .flag("n-max", n_max);
    let text = match format {
        ReportFormat::Text => report::suite_reports_text(&reports),
        ReportFormat::Json => {
            serde_json::to_string_pretty(&report::suite_reports_json(&config, &reports))?
        }
        ReportFormat::Csv => report::suite_reports_csv(&reports),
    };
    emit(out, text.trim_end())?;
    Ok(if reports.iter().all(|r| r.passed) {
        0
    } else {
        1
    })
}

enum MRule {
    All,
    Fixed(u32),
    CLog(f64),
}

fn parse_m_rule(spec: &str) -> Result<MRule> {
    if spec == "all" {
        return Ok(MRule::All);
    }
    if let Some(k) = spec.strip_prefix("fixed:") {
        return Ok(MRule::Fixed(
            k.parse().map_err(|_| usage("bad fixed:K m-rule"))?,
        ));
    }
    if let Some(c) = spec.strip_prefix("clog:") {
        let c: f64 = c.parse().map_err(|_| usage("bad clog:C m-rule"))?;
        if c <= 0.0 {
            return Err(usage("clog constant must be positive"));
        }
        return Ok(MRule::CLog(c));
    }
    Err(usage(format!(
        "unknown m-rule '{spec}' (use all, fixed:K, clog:C)"
    )))
}

fn m_values(rule: &MRule, n: u32) -> Vec<u32> {
    match rule {
        MRule::All => (1..=n).collect(),
        MRule::Fixed(k) => vec![(*k).clamp(1, n)],
        MRule::CLog(c) => vec![((c * (n as f64).ln()).round() as u32).clamp(1, n)],
    }
}

fn parse_n_range(spec: &str) -> Result<Vec<u32>> {
    let (start, stop, step) = parse_grid(spec)?;
    let (start, stop, step) = (start as u32, stop as u32, (step as u32).max(1));
    if start < 1 || stop < start {
        return Err(usage("n range must satisfy 1 <= start <= stop"));
    }
    Ok((start..=stop).step_by(step as usize).collect())
}

fn cmd_sweep(
    out: &Option<PathBuf>,
    kind: SweepKind,
    q_list: Option<String>,
    n_range: &str,
    m_rule: &str,
) -> Result<()> {
    let q_list = parse_q_list(&q_list)?;
    let ns = parse_n_range(n_range)?;
    let rule = parse_m_rule(m_rule)?;
    let mut csv = String::new();
    match kind {
        SweepKind::Count => {
            csv.push_str("q,n,m,psi,total,prob_float\n");
            for &q in &q_list {
                let pp = PrimePower::new(q).unwrap();
                for &n in &ns {
                    for m in m_values(&rule, n) {
                        let table = counts::PolyFriableTable::new(pp, m, n);
                        let psi = table.psi(n);
                        let total = power(q, n);
                        let p = ExactRatio::new(psi.clone(), total.clone()).to_f64();
                        csv.push_str(&format!("{q},{n},{m},{psi},{total},{}\n", csv_float(p)));
                    }
                }
            }
        }
        SweepKind::Ratio => {
            csv.push_str("q,n,m,ratio,Gq_x,envelope,regime,normalized_residual\n");
            for &q in &q_list {
                for &n in &ns {
                    for m in m_values(&rule, n) {
                        let params = Params::new(q, n, m).map_err(|e| usage(e.to_string()))?;
                        let row = ratio_json(&params)?;
                        csv.push_str(&format!(
                            "{q},{n},{m},{},{},{},{},{}\n",
                            row["ratio_float"].as_f64().map_or(String::new(), csv_float),
                            row["Gq_x"].as_f64().map_or(String::new(), csv_float),
                            row["envelope"].as_f64().map_or(String::new(), csv_float),
                            row["applicable_theorem"].as_str().unwrap(),
                            row["normalized_residual"]
                                .as_f64()
                                .map_or(String::new(), csv_float),
                        ));
                    }
                }
            }
        }
        SweepKind::Dickman => {
            csv.push_str("u,rho,log_rho,xi,I_xi\n");
            let top = ns.iter().copied().max().unwrap() as f64;
            if top > dickman::DEFAULT_U_MAX as f64 {
                return Err(usage(format!(
                    "dickman sweep capped at u = {}",
                    dickman::DEFAULT_U_MAX
                )));
            }
            let rho = RhoTable::new(dickman::DEFAULT_U_MAX);
            for &n in &ns {
                let row = dickman_row(&rho, n as f64, false)?;
                csv.push_str(&format!(
                    "{n},{},{},{},{}\n",
                    row["rho"].as_f64().map_or(String::new(), csv_float),
                    row["log_rho"].as_f64().map_or(String::new(), csv_float),
                    row["xi"].as_f64().map_or(String::new(), csv_float),
                    row["I_xi"].as_f64().map_or(String::new(), csv_float),
                ));
            }
        }
        SweepKind::Saddle => {
            csv.push_str(
                "q,n,m,x,lambda,lambda2,log_Q,Gq_x,tail_bound,estimate_log,regime,envelope\n",
            );
            for &q in &q_list {
                for &n in &ns {
                    for m in m_values(&rule, n) {
                        let params = Params::new(q, n, m).map_err(|e| usage(e.to_string()))?;
                        let row = saddle_json(&params)?;
                        csv.push_str(&format!(
                            "{q},{n},{m},{},{},{},{},{},{},{},{},{}\n",
                            csv_float(row["x"].as_f64().unwrap()),
                            csv_float(row["lambda"].as_f64().unwrap()),
                            csv_float(row["lambda2"].as_f64().unwrap()),
                            csv_float(row["log_Q"].as_f64().unwrap()),
                            row["Gq_x"].as_f64().map_or(String::new(), csv_float),
                            row["tail_bound"].as_f64().map_or(String::new(), csv_float),
                            csv_float(row["estimate_log"].as_f64().unwrap()),
                            row["applicable_theorem"].as_str().unwrap(),
                            row["envelope"].as_f64().map_or(String::new(), csv_float),
                        ));
                    }
                }
            }
        }
        SweepKind::Gap => {
            csv.push_str("q,n,gap_num,gap_den,gap_float,log_gap,decay_scale\n");
            for &q in &q_list {
                for &n in &ns {
                    let row = gap_json(q, n)?;
                    csv.push_str(&format!(
                        "{q},{n},{},{},{},{},{}\n",
                        row["gap_num"].as_str().unwrap(),
                        row["gap_den"].as_str().unwrap(),
                        row["gap_float"].as_f64().map_or(String::new(), csv_float),
                        row["log_gap"].as_f64().map_or(String::new(), csv_float),
                        csv_float(row["decay_scale"].as_f64().unwrap()),
                    ));
                }
            }
        }
        SweepKind::Verify => {
            let grid = GridSpec::new(q_list.clone(), ns.iter().copied().max().unwrap());
            let reports = suites::run_suite("all", &grid).unwrap();
            csv = report::suite_reports_csv(&reports);
        }
    }
    emit(out, csv.trim_end())
}

fn cmd_chart(out: &Option<PathBuf>, input: &PathBuf, x: &str, y: &str, log_y: bool) -> Result<()> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let y_cols: Vec<String> = y.split(',').map(|s| s.trim().to_string()).collect();
    let svg = chart::emit_chart(&text, x, &y_cols, log_y)?;
    emit(out, &svg)
}
