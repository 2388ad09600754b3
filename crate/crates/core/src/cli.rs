//! Command-line front end. [`run`] returns the process exit code: 0 when
//! everything passes, 1 on a failed check, 2 on usage or configuration errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use crate::closed_forms::{self as cf, Scenario};
use crate::error::{Error, Result};
use crate::hardy;
use crate::harness::{self, config::parse_point, ExperimentConfig};
use crate::matrix;
use crate::wlft::WeightedLFT;

#[derive(Debug, Parser)]
#[command(
    name = "aluthge",
    version,
    about = "Iterated Aluthge transforms of weighted composition operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct ScenarioArgs {
    /// Contraction parameter in (0, 1).
    #[arg(long)]
    pub a: f64,
    /// Weight exponent, greater than -1.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form symbols of the n-th iterate.
    Symbols {
        #[command(flatten)]
        sc: ScenarioArgs,
        #[arg(long)]
        n: usize,
        /// Iterates of the adjoint instead.
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        json: bool,
    },
    /// Numeric Aluthge iteration of sections against the closed form.
    Iterate {
        #[command(flatten)]
        sc: ScenarioArgs,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long = "N", value_delimiter = ',', default_values_t = vec![64, 128, 256])]
        sections: Vec<usize>,
        #[arg(long, default_value_t = matrix::DEFAULT_CORNER)]
        corner: usize,
        #[arg(long, default_value_t = matrix::DEFAULT_REL_CUTOFF)]
        rel_cutoff: f64,
    },
    /// Section norms and numerical radii against the closed norm.
    Norms {
        #[command(flatten)]
        sc: ScenarioArgs,
        #[arg(long)]
        n: usize,
        #[arg(long = "Nlist", value_delimiter = ',', default_values_t = vec![64, 128, 256])]
        sections: Vec<usize>,
        #[arg(long, default_value_t = 64)]
        angles: usize,
    },
    /// Decay of the iterates on kernel functions.
    Sot {
        #[command(flatten)]
        sc: ScenarioArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec!["0".to_string()])]
        omega: Vec<String>,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        /// Also apply the N×N section.
        #[arg(long = "N")]
        section: Option<usize>,
    },
    /// Iterates of the dual composition operator on the weighted Hardy space.
    Hardy {
        #[command(flatten)]
        sc: ScenarioArgs,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        #[arg(long = "N", default_value_t = 128)]
        section: usize,
    },
    /// Runs every experiment and writes the report.
    Verify(Box<VerifyArgs>),
}

#[derive(Debug, Args, Default)]
pub struct VerifyArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub a: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,
    #[arg(long)]
    pub n_max_symbolic: Option<usize>,
    #[arg(long)]
    pub n_max_numeric: Option<usize>,
    #[arg(long)]
    pub n_max_sot: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub sections: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub omega: Option<Vec<String>>,
    #[arg(long)]
    pub angles: Option<usize>,
    #[arg(long)]
    pub radius_angles: Option<usize>,
    #[arg(long)]
    pub rel_cutoff: Option<f64>,
    #[arg(long)]
    pub margin: Option<f64>,
    #[arg(long)]
    pub corner: Option<usize>,
    #[arg(long)]
    pub random_samples: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub hyponormal_p: Option<Vec<f64>>,
    #[arg(long)]
    pub hyponormal_section: Option<usize>,
}

pub const DEFAULT_OUT: &str = "aluthge-report";

impl VerifyArgs {
    /// Config file (or defaults) with flags applied on top.
    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        macro_rules! over {
            ($($f:ident),*) => { $( if let Some(v) = &self.$f { cfg.$f = v.clone(); } )* };
        }
        over!(
            seed,
            a,
            alpha,
            n_max_symbolic,
            n_max_numeric,
            n_max_sot,
            sections,
            omega,
            angles,
            radius_angles,
            rel_cutoff,
            margin,
            corner,
            random_samples,
            hyponormal_p,
            hyponormal_section
        );
        if let Some(o) = &self.out {
            cfg.out = Some(o.display().to_string());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Ten significant digits, integers without a fraction.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() && (x - x.round()).abs() <= 1e-12 * x.abs().max(1.0) {
        return format!("{}", x.round() as i64);
    }
    let r: f64 = format!("{x:.9e}").parse().unwrap_or(x);
    if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e10) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn coeff_z(c: f64) -> String {
    match fmt_num(c).as_str() {
        "1" => "z".into(),
        "-1" => "-z".into(),
        s => format!("{s}z"),
    }
}

/// `cz + d` with the usual sign handling.
fn linear(c: f64, d: f64) -> String {
    match (fmt_num(c).as_str(), fmt_num(d).as_str()) {
        ("0", ds) => ds.to_string(),
        (_, "0") => coeff_z(c),
        (_, ds) if d < 0.0 => format!("{} - {}", coeff_z(c), ds.trim_start_matches('-')),
        (_, ds) => format!("{} + {}", coeff_z(c), ds),
    }
}

/// Denominator written constant first when `r < 0`, e.g. `9 - z`.
fn denominator(r: f64, s: f64) -> String {
    if r < 0.0 && fmt_num(r) != "0" {
        format!("{} - {}", fmt_num(s), coeff_z(-r))
    } else {
        linear(r, s)
    }
}

/// Smallest integer multiplier (≤ 10⁴) making every entry an integer.
fn integer_scale(entries: &[f64]) -> Option<f64> {
    let big = entries.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    (1..=10_000).map(|m| m as f64).find(|&m| {
        entries
            .iter()
            .all(|&x| (m * x - (m * x).round()).abs() <= 1e-9 * m * big)
    })
}

/// Human-readable `(f, ψ)` of a real element `T_f C_ψ`.
pub fn describe(w: &WeightedLFT) -> (String, String) {
    let m = w.matrix();
    let e = w.space().kernel_exponent();
    let (p, q, r, s) = (m.p.re, m.q.re, m.r.re, m.s.re);
    let lam = w.lambda().re;
    let power = |base: String| {
        if fmt_num(e) == "1" {
            base
        } else {
            format!("({base})^{}", fmt_num(e))
        }
    };
    if fmt_num(r) == "0" {
        let f = lam / s.powf(e);
        let f = if fmt_num(f) == "1" {
            "1".to_string()
        } else {
            fmt_num(f)
        };
        return (f, linear(p / s, q / s));
    }
    let scale = integer_scale(&[p, q, r, s]).unwrap_or(1.0);
    let (p, q, r, s) = (p * scale, q * scale, r * scale, s * scale);
    let k = (lam * scale.powf(e)).powf(1.0 / e);
    let f = power(format!("{}/({})", fmt_num(k), denominator(r, s)));
    let psi = format!("({})/({})", linear(p, q), denominator(r, s));
    (f, psi)
}

fn scenario(sc: &ScenarioArgs, n: usize) -> Result<Scenario> {
    Scenario::new(sc.a, sc.alpha, n)
}

fn usage(e: Error) -> (i32, String) {
    (2, e.to_string())
}

fn check_sections(sections: &[usize]) -> Result<()> {
    if sections.is_empty() || sections.iter().any(|&n| n < 2) {
        return Err(Error::Config("section sizes must be at least 2".into()));
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type CmdResult = std::result::Result<i32, (i32, String)>;

fn io(e: std::io::Error) -> (i32, String) {
    (1, e.to_string())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Symbols { sc, n, dual, json } => symbols(&sc, n, dual, json, out),
        Command::Iterate {
            sc,
            nmax,
            sections,
            corner,
            rel_cutoff,
        } => iterate(&sc, nmax, &sections, corner, rel_cutoff, out),
        Command::Norms {
            sc,
            n,
            sections,
            angles,
        } => norms(&sc, n, &sections, angles, out),
        Command::Sot {
            sc,
            omega,
            nmax,
            section,
        } => sot(&sc, &omega, nmax, section, out),
        Command::Hardy { sc, nmax, section } => hardy_cmd(&sc, nmax, section, out),
        Command::Verify(args) => verify(&args, out),
    }
}

fn symbols(
    sc: &ScenarioArgs,
    n: usize,
    dual: bool,
    as_json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let s = scenario(sc, n).map_err(usage)?;
    let w = if dual {
        cf::adjoint_iterate_symbols(&s)
    } else {
        cf::iterate_symbols(&s)
    };
    let (f, psi) = describe(&w);
    let m = w.matrix();
    let (fname, pname) = if dual { ("g", "θ") } else { ("f", "ψ") };
    if as_json {
        let v = json!({
            "a": sc.a, "alpha": sc.alpha, "n": n, "dual": dual,
            "lambda": w.lambda().re,
            "matrix": [[m.p.re, m.q.re], [m.r.re, m.s.re]],
            "weight": f, "symbol": psi,
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&v).map_err(|e| (1, e.to_string()))?
        )
        .map_err(io)?;
    } else {
        writeln!(out, "lambda = {}", fmt_num(w.lambda().re)).map_err(io)?;
        writeln!(
            out,
            "M = [[{}, {}], [{}, {}]]",
            fmt_num(m.p.re),
            fmt_num(m.q.re),
            fmt_num(m.r.re),
            fmt_num(m.s.re)
        )
        .map_err(io)?;
        writeln!(out, "{fname}(z) = {f}").map_err(io)?;
        writeln!(out, "{pname}(z) = {psi}").map_err(io)?;
    }
    Ok(0)
}

fn iterate(
    sc: &ScenarioArgs,
    nmax: usize,
    sections: &[usize],
    corner: usize,
    cutoff: f64,
    out: &mut dyn Write,
) -> CmdResult {
    check_sections(sections).map_err(usage)?;
    let base = scenario(sc, 0).map_err(usage)?;
    base.with_n(nmax).map_err(usage)?;
    if !(cutoff > 0.0 && cutoff <= 1e-3) {
        return Err((2, format!("rel-cutoff must lie in (0, 1e-3], got {cutoff}")));
    }
    let mut table = vec![vec![0.0; sections.len()]; nmax];
    for (k, &size) in sections.iter().enumerate() {
        let mut t = matrix::truncate(&cf::c_phi(&base), size).map_err(|e| (1, e.to_string()))?;
        for n in 1..=nmax {
            t = matrix::aluthge_numeric(&t, cutoff).map_err(|e| (1, e.to_string()))?;
            let closed =
                matrix::truncate(&cf::iterate_symbols(&base.with_n(n).map_err(usage)?), size)
                    .map_err(|e| (1, e.to_string()))?;
            table[n - 1][k] = matrix::corner_distance(&t, &closed, corner);
        }
    }
    write!(out, "{:>4}", "n").map_err(io)?;
    for size in sections {
        write!(out, " {:>18}", format!("err(N={size})")).map_err(io)?;
    }
    writeln!(out).map_err(io)?;
    for (i, row) in table.iter().enumerate() {
        write!(out, "{:>4}", i + 1).map_err(io)?;
        for e in row {
            write!(out, " {:>18}", fmt_num(*e)).map_err(io)?;
        }
        writeln!(out).map_err(io)?;
    }
    Ok(0)
}

fn norms(
    sc: &ScenarioArgs,
    n: usize,
    sections: &[usize],
    angles: usize,
    out: &mut dyn Write,
) -> CmdResult {
    check_sections(sections).map_err(usage)?;
    let s = scenario(sc, n).map_err(usage)?;
    if angles < 16 {
        return Err((2, "angles must be at least 16".into()));
    }
    let w = cf::iterate_symbols(&s);
    let expected = cf::norm_value(&s);
    writeln!(
        out,
        "{:>6} {:>18} {:>18} {:>18}",
        "N", "norm", "numerical_radius", "expected"
    )
    .map_err(io)?;
    let mut ok = true;
    for &size in sections {
        let t = matrix::truncate(&w, size).map_err(|e| (1, e.to_string()))?;
        let nm = matrix::operator_norm(&t).map_err(|e| (1, e.to_string()))?;
        let rad = matrix::numerical_radius(&t, angles).map_err(|e| (1, e.to_string()))?;
        ok &= nm <= expected * (1.0 + harness::experiments::NORM_SLACK)
            && rad <= expected * (1.0 + harness::experiments::NORM_SLACK);
        writeln!(
            out,
            "{:>6} {:>18} {:>18} {:>18}",
            size,
            fmt_num(nm),
            fmt_num(rad),
            fmt_num(expected)
        )
        .map_err(io)?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn sot(
    sc: &ScenarioArgs,
    omega: &[String],
    nmax: usize,
    section: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    let base = scenario(sc, 0).map_err(usage)?;
    base.with_n(nmax).map_err(usage)?;
    let pts: Vec<Complex64> = omega
        .iter()
        .map(|s| parse_point(s))
        .collect::<Result<_>>()
        .map_err(usage)?;
    if let Some(p) = pts.iter().find(|p| !(p.norm() < 1.0)) {
        return Err((2, format!("omega = {p} is not in the open unit disk")));
    }
    if section.is_some_and(|n| n < 2) {
        return Err((2, "section size must be at least 2".into()));
    }
    let rows =
        matrix::sot_decay_curve(&base, &pts, nmax, section).map_err(|e| (1, e.to_string()))?;
    write!(
        out,
        "{:>4} {:>10} {:>18} {:>18} {:>18}",
        "n", "omega", "norm", "closed_form", "bound"
    )
    .map_err(io)?;
    if section.is_some() {
        write!(out, " {:>18}", "section").map_err(io)?;
    }
    writeln!(out).map_err(io)?;
    let mut ok = true;
    for r in &rows {
        ok &= r.expanded <= r.bound * (1.0 + 1e-12);
        let label = omega[pts.iter().position(|p| *p == r.omega).unwrap_or(0)].trim();
        write!(
            out,
            "{:>4} {:>10} {:>18} {:>18} {:>18}",
            r.n,
            label,
            fmt_num(r.exact),
            fmt_num(r.expanded),
            fmt_num(r.bound)
        )
        .map_err(io)?;
        if let Some(t) = r.truncated {
            write!(out, " {:>18}", fmt_num(t)).map_err(io)?;
        }
        writeln!(out).map_err(io)?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn hardy_cmd(sc: &ScenarioArgs, nmax: usize, section: usize, out: &mut dyn Write) -> CmdResult {
    let base = scenario(sc, 0).map_err(usage)?;
    base.with_n(nmax + 1).map_err(usage)?;
    if section < 2 {
        return Err((2, "section size must be at least 2".into()));
    }
    let e = |x: Error| (1, x.to_string());
    let inner = section - 1;
    let direct = hardy::direct_c_sigma(&base, section).map_err(e)?;
    let blk0 = hardy::sigma_iterate_block(&base, inner).map_err(e)?;
    let gap = matrix::corner_distance(&blk0, &direct, matrix::DEFAULT_CORNER);
    let sup = cf::sigma_norm_value(&base);
    writeln!(out, "block vs direct C_sigma, 8x8 corner: {}", fmt_num(gap)).map_err(io)?;
    writeln!(out, "norm bound sup(1, a^(-alpha/2)) = {}", fmt_num(sup)).map_err(io)?;
    let lim = hardy::sigma_sot_limit(&base, inner).map_err(e)?;
    let alim = hardy::sigma_adjoint_limit(sc.alpha, inner).map_err(e)?;
    let count = matrix::DEFAULT_CORNER + 1;
    writeln!(
        out,
        "{:>4} {:>18} {:>18} {:>18} {:>18}",
        "n", "norm", "residual", "adjoint_residual", "a*g(0)"
    )
    .map_err(io)?;
    let mut ok = gap <= harness::experiments::BLOCK_TOL;
    for n in 0..=nmax {
        let s = base.with_n(n).map_err(usage)?;
        let b = hardy::sigma_iterate_block(&s, inner).map_err(e)?;
        let nm = matrix::operator_norm(&b).map_err(e)?;
        ok &= nm <= sup * (1.0 + harness::experiments::NORM_SLACK);
        let r = hardy::column_residual(&b, &lim, count);
        let ra = hardy::column_residual(
            &hardy::sigma_adjoint_iterate_block(&s, inner).map_err(e)?,
            &alim,
            count,
        );
        let g0 = s.a * cf::adjoint_iterate_g0(&s);
        writeln!(
            out,
            "{:>4} {:>18} {:>18} {:>18} {:>18}",
            n,
            fmt_num(nm),
            fmt_num(r),
            fmt_num(ra),
            fmt_num(g0)
        )
        .map_err(io)?;
    }
    writeln!(
        out,
        "limit commutator, 8x8 corner: {}",
        fmt_num(matrix::normal_commutator_corner(
            &lim,
            matrix::DEFAULT_CORNER
        ))
    )
    .map_err(io)?;
    Ok(if ok { 0 } else { 1 })
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let cfg = args.resolve().map_err(usage)?;
    let dir = PathBuf::from(cfg.out.clone().unwrap_or_else(|| DEFAULT_OUT.to_string()));
    let report = harness::run_all(&cfg).map_err(usage)?;
    report.write(&dir).map_err(|e| (1, e.to_string()))?;
    writeln!(
        out,
        "{:<28} {:>6} {:>6} {:>9} {:>6}",
        "experiment", "pass", "fail", "evidence", "error"
    )
    .map_err(io)?;
    for e in &report.experiments {
        let count = |s: harness::Status| e.records.iter().filter(|r| r.status == s).count();
        writeln!(
            out,
            "{:<28} {:>6} {:>6} {:>9} {:>6}",
            e.name,
            count(harness::Status::Pass),
            count(harness::Status::Fail),
            count(harness::Status::Evidence),
            count(harness::Status::Error)
        )
        .map_err(io)?;
    }
    for r in report
        .records()
        .filter(|r| matches!(r.status, harness::Status::Fail | harness::Status::Error))
    {
        writeln!(
            out,
            "FAILED {} {}",
            r.claim,
            serde_json::to_string(&r.inputs).unwrap_or_default()
        )
        .map_err(io)?;
    }
    writeln!(out, "report written to {}", dir.display()).map_err(io)?;
    Ok(if report.all_passed() { 0 } else { 1 })
}
