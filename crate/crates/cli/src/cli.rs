//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use trinotool_core::bounds::{check_extremality, comparison_bounds, house_lower_bound, BoundsError};
use trinotool_core::factor::{factorize, is_irreducible, FactorError, IrreducibilityVerdict};
use trinotool_core::mahler::{
    limit_case, limit_measure, measure_from_roots, measure_jensen, series_measure, MeasureError, SeriesConfig,
};
use trinotool_core::poly::{
    all_roots, classify_real_roots, normalize, Family, FamilyForm, IntPolynomial, PolyError, RootConfig, TrinomialSpec,
};
use trinotool_core::quad::QuadConfig;

use crate::cache::Cache;
use crate::converge::{convergence_table, ConvergeError, MRule};
use crate::output::{error_json, Format, Report};
use crate::record::ScanRecord;
use crate::scan::{scan_conjecture, ScanConfig, ScanError};

#[derive(Debug, Parser)]
#[command(
    name = "trinotool",
    version,
    about = "Mahler measure, house bounds and irreducibility of trinomials z^n + a z^m + b"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON-lines file of finished scan records, reused and extended across runs.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads for scans.
    #[arg(long, global = true, env = "TRINOTOOL_THREADS")]
    pub threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Absolute tolerance for quadrature, series truncation and checks.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Roots,
    Jensen,
    Series,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum FamilyArg {
    R,
    S,
    T,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::R => Family::R,
            FamilyArg::S => Family::S,
            FamilyArg::T => Family::T,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Mahler measure of z^n + a z^m + b (a, b may be complex, e.g. 1+2i).
    #[command(allow_negative_numbers = true)]
    Measure {
        n: u32,
        m: u32,
        a: Complex<f64>,
        b: Complex<f64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Roots)]
        method: MethodArg,
    },
    /// Largest root modulus.
    #[command(allow_negative_numbers = true)]
    House {
        n: u32,
        m: u32,
        a: Complex<f64>,
        b: Complex<f64>,
    },
    /// All complex roots; with --classify, label the real roots of the R/S/T form.
    #[command(allow_negative_numbers = true)]
    Roots {
        n: u32,
        m: u32,
        a: Complex<f64>,
        b: Complex<f64>,
        #[arg(long)]
        classify: bool,
    },
    /// Complete factorization over the integers.
    #[command(allow_negative_numbers = true)]
    Factor {
        n: u32,
        m: u32,
        #[serde(serialize_with = "as_string")]
        a: BigInt,
        #[serde(serialize_with = "as_string")]
        b: BigInt,
    },
    /// Irreducibility over the rationals, with the cheapest certificate.
    #[command(allow_negative_numbers = true)]
    Irreducible {
        n: u32,
        m: u32,
        #[serde(serialize_with = "as_string")]
        a: BigInt,
        #[serde(serialize_with = "as_string")]
        b: BigInt,
    },
    /// Limit of M(z^n + a z^m + b) as n grows.
    #[command(allow_negative_numbers = true)]
    Limit { a: Complex<f64>, b: Complex<f64> },
    /// Exact series for the measure when |a| - |b| >= 1 and gcd(m, n) = 1.
    #[command(allow_negative_numbers = true)]
    Series {
        n: u32,
        m: u32,
        a: Complex<f64>,
        b: Complex<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        kmax: Option<usize>,
        /// Also list every summand.
        #[arg(long)]
        trace: bool,
    },
    /// House lower bound for R, S or T.
    #[command(allow_negative_numbers = true)]
    Bounds {
        n: u32,
        m: u32,
        a: f64,
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Known general lower bounds on the house in degree n.
    CompareBounds { n: u32 },
    /// Compare the house of R, S or T against 2^(1/n).
    #[command(allow_negative_numbers = true)]
    Extremal {
        n: u32,
        m: u32,
        a: f64,
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Search x^n + a x^m + b, b = +-1, for reducible cases.
    Scan {
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        /// Middle coefficients, comma separated.
        #[arg(long = "a", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a_values: Vec<i64>,
        /// Constant terms, comma separated.
        #[arg(long = "b", value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1i64, 1])]
        signs: Vec<i64>,
        /// Include m with gcd(m, n) > 1.
        #[arg(long)]
        all_m: bool,
        /// Emit irreducible records too.
        #[arg(long)]
        all: bool,
        /// Record per-item wall time (output then varies between runs).
        #[arg(long)]
        timings: bool,
    },
    /// Measure against its limit along a sequence of degrees.
    Converge {
        #[arg(long, allow_hyphen_values = true)]
        a: Complex<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Complex<f64>,
        #[arg(long = "n", value_delimiter = ',', required = true)]
        ns: Vec<u32>,
        /// An integer m, fixed:K, n-1 or half.
        #[arg(long, default_value = "1")]
        #[serde(serialize_with = "as_string")]
        m_rule: MRule,
    },
    /// Randomized cross-checks of the three measure routes (uses --seed).
    Check {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        n_max: u32,
    },
}

fn as_string<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Scan(#[from] ScanError),
    #[error(transparent)]
    Converge(#[from] ConvergeError),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Poly(_) => "polynomial",
            CliError::Measure(_) => "measure",
            CliError::Factor(_) => "factor",
            CliError::Bounds(_) => "bounds",
            CliError::Scan(_) => "scan",
            CliError::Converge(_) => "converge",
            CliError::Domain(_) => "domain",
            CliError::Io(_) => "io",
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code:
/// 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli).and_then(|report| emit(&cli, &report.render(cli.format))) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if cli.format == Format::Json {
                let _ = emit(&cli, &error_json(e.kind(), &e.to_string()));
            }
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn config(cli: &Cli) -> Value {
    let mut v = serde_json::to_value(&cli.command).expect("commands serialize");
    if let (Value::Object(map), Some(t)) = (&mut v, cli.tolerance) {
        map.insert("tolerance".into(), json!(t));
    }
    if let (Value::Object(map), Command::Check { .. }) = (&mut v, &cli.command) {
        map.insert("seed".into(), json!(cli.seed));
    }
    v
}

fn quad_config(cli: &Cli) -> QuadConfig<f64> {
    let q = QuadConfig::default();
    match cli.tolerance {
        Some(t) => q.with_abs_tol(t),
        None => q,
    }
}

fn spec(n: u32, m: u32, a: Complex<f64>, b: Complex<f64>) -> Result<TrinomialSpec<f64>, CliError> {
    Ok(TrinomialSpec::new(n, m, a, b)?)
}

fn int_trinomial(n: u32, m: u32, a: &BigInt, b: &BigInt) -> Result<IntPolynomial, CliError> {
    if m == 0 || m >= n {
        return Err(PolyError::ExponentOrder { n, m }.into());
    }
    let mut c = vec![BigInt::from(0); n as usize + 1];
    c[n as usize] = BigInt::from(1);
    c[m as usize] += a;
    c[0] += b;
    Ok(IntPolynomial::new(c))
}

fn form(family: FamilyArg, n: u32, m: u32, a: f64) -> Result<FamilyForm<f64>, CliError> {
    Ok(FamilyForm::new(family.into(), n, m, a)?)
}

fn measure_record(method: &str, r: &trinotool_core::Measure) -> Value {
    json!({ "method": method, "value": r.value, "log_value": r.log_value, "error_bound": r.error_bound })
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let mut rep = Report::new(config(cli));
    let roots_cfg = RootConfig::default();
    match &cli.command {
        Command::Measure { n, m, a, b, method } => {
            let t = spec(*n, *m, *a, *b)?;
            let all = *method == MethodArg::All;
            if all || *method == MethodArg::Roots {
                rep.push(&measure_record("roots", &measure_from_roots(&t, &roots_cfg)?));
            }
            if all || *method == MethodArg::Jensen {
                rep.push(&measure_record("jensen", &measure_jensen(&t, &quad_config(cli))?));
            }
            if all || *method == MethodArg::Series {
                match series_measure(*n, *m, *a, *b, &series_config(cli, None, None)) {
                    Ok(s) => rep.push(&measure_record("series", &s.result)),
                    Err(e) if all => rep.push(&json!({ "method": "series", "skipped": e.to_string() })),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Command::House { n, m, a, b } => {
            let set = all_roots(&spec(*n, *m, *a, *b)?, &roots_cfg)?;
            rep.push(&json!({ "house": set.max_modulus(), "residual_bound": set.residual_bound, "certified": set.certified }));
        }
        Command::Roots { n, m, a, b, classify } => roots_report(&mut rep, *n, *m, *a, *b, *classify)?,
        Command::Factor { n, m, a, b } => {
            let f = factorize(&int_trinomial(*n, *m, a, b)?)?;
            if f.content != BigInt::from(1) {
                rep.push(&json!({ "factor": f.content.to_string(), "degree": 0, "multiplicity": 1 }));
            }
            for (g, e) in &f.factors {
                rep.push(&json!({ "factor": g.to_string(), "degree": g.deg(), "multiplicity": e }));
            }
        }
        Command::Irreducible { n, m, a, b } => match is_irreducible(&int_trinomial(*n, *m, a, b)?)? {
            IrreducibilityVerdict::Irreducible(c) => {
                rep.push(&json!({ "verdict": "irreducible", "certificate": c.to_string() }))
            }
            IrreducibilityVerdict::Reducible { witness, cofactor } => rep.push(&json!({
                "verdict": "reducible", "witness": witness.to_string(), "cofactor": cofactor.to_string()
            })),
        },
        Command::Limit { a, b } => {
            let case = limit_case(*a, *b)?;
            let v = limit_measure(*a, *b, &quad_config(cli))?;
            rep.push(
                &json!({ "case": case.name(), "gamma": case.gamma(), "value": v.value, "error_bound": v.error_bound }),
            );
        }
        Command::Series {
            n,
            m,
            a,
            b,
            tol,
            kmax,
            trace,
        } => {
            let s = series_measure(*n, *m, *a, *b, &series_config(cli, *tol, *kmax))?;
            rep.push(&json!({
                "value": s.result.value, "log_value": s.result.log_value, "error_bound": s.result.error_bound,
                "terms": s.terms.len(), "converged": s.converged
            }));
            if *trace {
                for t in &s.terms {
                    rep.push(&json!({ "k": t.k, "term": t.value, "magnitude": t.magnitude }));
                }
            }
        }
        Command::Bounds { n, m, a, family } => {
            let r = house_lower_bound(&form(*family, *n, *m, *a)?, &roots_cfg)?;
            rep.push(&json!({
                "family": r.family.family.to_string(), "n": n, "m": m, "a": a,
                "bound": r.bound, "t0": r.t0, "house": r.house,
                "real_root_label": r.real_root.label.to_string(), "real_root": r.real_root.value,
                "satisfied": r.satisfied
            }));
        }
        Command::CompareBounds { n } => {
            let c = comparison_bounds::<f64>(*n)?;
            rep.push(&json!({
                "n": c.n, "dimitrov": c.dimitrov, "matveev": c.matveev, "rhin_wu": c.rhin_wu, "loglog_cube": c.loglog_cube,
                "verger_gaugry": c.verger_gaugry,
                "verger_gaugry_scope": "inverse of the root in (0,1) of z^n + z - 1 only",
                "smyth_boyd_house": c.smyth_boyd_house, "trivial_mn": c.trivial_mn
            }));
        }
        Command::Extremal { n, m, a, family } => {
            let v = check_extremality(&form(*family, *n, *m, *a)?, &roots_cfg)?;
            rep.push(&json!({
                "family": v.family.family.to_string(), "n": n, "m": m, "a": a,
                "house": v.house, "threshold": v.threshold, "slack": v.slack,
                "verdict": v.verdict.to_string(), "sign_certificate": v.sign_certificate
            }));
        }
        Command::Scan {
            n_max,
            n_min,
            a_values,
            signs,
            all_m,
            all,
            timings,
        } => {
            let cfg = ScanConfig {
                n_min: *n_min,
                n_max: *n_max,
                a_values: a_values.clone(),
                signs: signs.clone(),
                coprime_only: !*all_m,
                timings: *timings,
            };
            let threads = cli
                .threads
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let mut cache = cli.cache.as_deref().map(Cache::open).transpose()?;
            let records = scan_conjecture(&cfg, threads, cache.as_mut())?;
            let total = records.len();
            let mut reducible = 0;
            rep.streaming = true;
            rep.columns = scan_columns();
            for r in &records {
                reducible += usize::from(r.reducible);
                if *all || r.reducible || r.errored() {
                    rep.push(r);
                }
            }
            rep.footer = Some(format!(
                "{reducible} reducible of {total} trinomials; complete for {n_min} <= n <= {n_max}, a in {a_values:?}, b in {signs:?}"
            ));
        }
        Command::Converge { a, b, ns, m_rule } => {
            for row in convergence_table(*a, *b, ns, *m_rule, &quad_config(cli))? {
                rep.push(&row);
            }
        }
        Command::Check { samples, n_max } => check_report(&mut rep, cli, *samples, *n_max)?,
    }
    Ok(rep)
}

fn scan_columns() -> Vec<String> {
    [
        "n",
        "m",
        "a",
        "b",
        "reducible",
        "factor_degrees",
        "certificate",
        "measure",
        "house",
        "elapsed_ms",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn series_config(cli: &Cli, tol: Option<f64>, kmax: Option<usize>) -> SeriesConfig<f64> {
    let d = SeriesConfig::default();
    SeriesConfig {
        tol: tol.or(cli.tolerance).unwrap_or(d.tol),
        k_max: kmax.unwrap_or(d.k_max),
        ..d
    }
}

fn roots_report(
    rep: &mut Report,
    n: u32,
    m: u32,
    a: Complex<f64>,
    b: Complex<f64>,
    classify: bool,
) -> Result<(), CliError> {
    let set = all_roots(&spec(n, m, a, b)?, &RootConfig::default())?;
    let mut labels: Vec<Option<String>> = vec![None; set.roots.len()];
    if classify {
        let as_int = |z: Complex<f64>| (z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() < 9e15).then_some(z.re as i64);
        let (Some(ai), Some(bi)) = (as_int(a), as_int(b)) else {
            return Err(CliError::Domain("--classify needs integer a and b = +-1".into()));
        };
        let norm = normalize::<f64>(n, m, ai, bi)?;
        let classified = classify_real_roots(&norm.form)?;
        let sign = if norm.flipped { -1.0 } else { 1.0 };
        for lr in &classified.roots {
            let target = sign * lr.value;
            let best = set
                .roots
                .iter()
                .enumerate()
                .filter(|(i, _)| labels[*i].is_none())
                .min_by(|x, y| (x.1 - target).norm().total_cmp(&(y.1 - target).norm()));
            if let Some((i, _)) = best {
                labels[i] = Some(lr.label.to_string());
            }
        }
        rep.config["family"] = json!(norm.form.family.to_string());
        rep.config["flipped"] = json!(norm.flipped);
    }
    let mut rows: Vec<(Complex<f64>, f64, Option<String>)> = set
        .roots
        .iter()
        .zip(&set.residuals)
        .zip(labels)
        .map(|((z, r), l)| (*z, *r, l))
        .collect();
    rows.sort_by(|x, y| y.0.norm().total_cmp(&x.0.norm()).then(x.0.arg().total_cmp(&y.0.arg())));
    for (z, res, label) in rows {
        let mut rec = json!({ "re": z.re, "im": z.im, "modulus": z.norm(), "residual": res });
        if classify {
            rec["label"] = json!(label);
        }
        rep.push(&rec);
    }
    Ok(())
}

fn check_report(rep: &mut Report, cli: &Cli, samples: usize, n_max: u32) -> Result<(), CliError> {
    if n_max < 3 {
        return Err(CliError::Domain("check needs --n-max >= 3".into()));
    }
    let tol = cli.tolerance.unwrap_or(1e-6);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut failures = 0;
    for _ in 0..samples {
        let n = rng.gen_range(3..=n_max);
        let m = loop {
            let m = rng.gen_range(1..n);
            if m.gcd(&n) == 1 {
                break m;
            }
        };
        let a = loop {
            let a: i64 = rng.gen_range(-8..=8);
            if a != 0 {
                break a as f64;
            }
        };
        let b = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let t = TrinomialSpec::real(n, m, a, b)?;
        let roots = measure_from_roots(&t, &RootConfig::default())?.value;
        let jensen = measure_jensen(&t, &quad_config(cli))?.value;
        let series = series_measure(
            n,
            m,
            Complex::new(a, 0.0),
            Complex::new(b, 0.0),
            &series_config(cli, None, None),
        )
        .ok()
        .filter(|s| s.converged)
        .map(|s| s.result.value);
        let ok = (roots - jensen).abs() <= tol && series.is_none_or(|s| (roots - s).abs() <= tol);
        failures += usize::from(!ok);
        rep.push(
            &json!({ "n": n, "m": m, "a": a, "b": b, "roots": roots, "jensen": jensen, "series": series, "ok": ok }),
        );
    }
    rep.footer = Some(format!(
        "{} of {samples} samples agree within {tol:e}",
        samples - failures
    ));
    if failures > 0 {
        return Err(CliError::Domain(format!(
            "{failures} of {samples} samples disagree beyond {tol:e}"
        )));
    }
    Ok(())
}

/// Parses one JSON-lines scan output back into records, skipping the header line.
pub fn parse_scan_lines(text: &str) -> Result<Vec<ScanRecord>, serde_json::Error> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}
