//! `zlab` command-line front end. Every subcommand prints a table (CSV or
//! JSON) to stdout or `--out`. Exit codes: 0 success, 2 usage error,
//! 3 evaluation error with a JSON error record on stderr.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use zlab::dirichlet::{self, DirichletKind, EvalPolicy, LerchArgs, Method};
use zlab::greens::{self, Geometry, SPoint};
use zlab::numerics::{c, QuadratureSpec};
use zlab::scan::ScanTable;
use zlab::statmech::{self, FactorMode, Statistics, SumMethod};
use zlab::string_series::{self, DegeneracySpec, StringModel};
use zlab::transitions::{self, MixingCase, MixingSpec};
use zlab::{par, zeros, Error};

#[derive(Parser)]
#[command(name = "zlab", version, about = "Lerch zeta propagators, transition probabilities and partition functions")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance for quadratures and series tails where the command has one.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads (falls back to ZLAB_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a zeta-family function at complex s.
    Eval(EvalArgs),
    /// Two-point function of one dispersion case.
    Green(GreenArgs),
    /// Transition probability scan over t.
    Transition(TransitionArgs),
    /// Grand canonical log Z and one-particle Z over a beta range.
    Partition(PartitionArgs),
    /// Free energy, energy, pressure and occupation over a beta range.
    Thermo(ThermoArgs),
    /// Antiperiodic thermal Green's function.
    ThermalGreen(ThermalGreenArgs),
    /// Unordered factorizations of n.
    Factorize(FactorizeArgs),
    /// Zeros of zeta on the critical line.
    Zeros(ZerosArgs),
    /// Case-4 transition probability over a sigma x t grid.
    RhScan(RhScanArgs),
    /// Potential |zeta(sigma + i y)|^2.
    Susy(SusyArgs),
    /// Duality map and functional-equation residual.
    DualityCheck(DualityArgs),
    /// Theta-function integral of zeta against its closed form.
    ThetaZeta(ThetaZetaArgs),
    /// Exact q-expansion degeneracies.
    Qseries(QseriesArgs),
    /// Truncated Ramanujan Dirichlet series.
    Ramanujan(RamanujanArgs),
    /// String-modified two-point function.
    StringGreen(StringGreenArgs),
    /// Logarithmic oscillator partition function.
    OscZ(OscArgs),
}

#[derive(Args, Clone, Copy)]
struct GeomArgs {
    #[arg(long = "r", default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
}

impl GeomArgs {
    fn geometry(&self, gauge: f64) -> zlab::Result<Geometry> {
        Geometry::new(self.r, self.a, gauge)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionKind {
    Zeta,
    Eta,
    Lambda,
    Beta,
    Hurwitz,
    Lerch,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Series,
    EulerMaclaurin,
    FunctionalEquation,
    Integral,
    ThetaIntegral,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    kind: FunctionKind,
    #[arg(long, value_parser = parse_complex)]
    s: Complex64,
    /// Twist for the Lerch function.
    #[arg(long, default_value_t = 0.0)]
    x: f64,
    /// Shift for the Lerch and Hurwitz functions.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    em_order: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GreenCase {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "3p")]
    ThreeP,
    #[value(name = "4")]
    Four,
}

#[derive(Args)]
struct GreenArgs {
    #[arg(long, value_enum)]
    case: GreenCase,
    #[arg(long)]
    x: f64,
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    #[arg(long)]
    sigma: f64,
    #[command(flatten)]
    geom: GeomArgs,
    /// Gauge shift of the circle momenta (case 4).
    #[arg(long, default_value_t = 0.0)]
    gauge: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransitionCase {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "3p")]
    ThreeP,
    #[value(name = "4")]
    Four,
}

#[derive(Args)]
struct TransitionArgs {
    #[arg(long, value_enum, default_value_t = TransitionCase::Four, conflicts_with = "n")]
    case: TransitionCase,
    /// Use the first N modes at R = a instead of a dispersion case.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    sigma: f64,
    /// Time grid lo:hi:step.
    #[arg(long, value_parser = parse_range)]
    t: Grid,
    #[command(flatten)]
    geom: GeomArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatisticsArg {
    Fermi,
    Bose,
}

#[derive(Clone, Copy, ValueEnum)]
enum SumArg {
    Direct,
    Series,
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long, value_enum, default_value_t = StatisticsArg::Fermi)]
    statistics: StatisticsArg,
    #[arg(long, value_parser = parse_range)]
    beta: Grid,
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    #[arg(long, value_enum, default_value_t = SumArg::Series)]
    method: SumArg,
    #[arg(long, default_value_t = 200)]
    terms: usize,
    #[command(flatten)]
    geom: GeomArgs,
}

#[derive(Args)]
struct ThermoArgs {
    #[arg(long, value_parser = parse_range)]
    beta: Grid,
    /// Fugacity exponent in the occupation sums.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, default_value_t = 200)]
    terms: usize,
    #[command(flatten)]
    geom: GeomArgs,
}

#[derive(Args)]
struct ThermalGreenArgs {
    #[arg(long, default_value_t = 0.0)]
    x: f64,
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    #[arg(long)]
    sigma: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 3)]
    m_max: usize,
    #[command(flatten)]
    geom: GeomArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Distinct,
    WithRepeats,
}

#[derive(Args)]
struct FactorizeArgs {
    n: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Distinct)]
    mode: ModeArg,
    /// Largest n accepted.
    #[arg(long, default_value_t = statmech::DEFAULT_FACTOR_LIMIT)]
    limit: u64,
}

#[derive(Args)]
struct ZerosArgs {
    /// lo:hi or lo:hi:step (default step 0.05).
    #[arg(long, value_parser = parse_span)]
    range: (f64, f64, Option<f64>),
}

#[derive(Args)]
struct RhScanArgs {
    #[arg(long, value_parser = parse_range)]
    sigma: Grid,
    #[arg(long, value_parser = parse_range)]
    t: Grid,
}

#[derive(Args)]
struct SusyArgs {
    /// sigma / a
    #[arg(long)]
    sigma: f64,
    #[arg(long, value_parser = parse_range)]
    y: Grid,
}

#[derive(Args)]
struct DualityArgs {
    #[arg(long, default_value_t = PI)]
    x: f64,
    #[arg(long, value_parser = parse_complex, default_value = "0.3+2i")]
    s: Complex64,
    #[command(flatten)]
    geom: GeomArgs,
    /// Check this many random points in the strip instead (uses --seed).
    #[arg(long)]
    random: Option<usize>,
}

#[derive(Args)]
struct ThetaZetaArgs {
    #[arg(long, value_parser = parse_complex)]
    s: Complex64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Heterotic12,
    RamanujanTau,
    OpenFermionic,
    Massless,
}

impl From<ModelArg> for StringModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Heterotic12 => StringModel::Heterotic12,
            ModelArg::RamanujanTau => StringModel::RamanujanTau,
            ModelArg::OpenFermionic => StringModel::OpenFermionic,
            ModelArg::Massless => StringModel::Massless,
        }
    }
}

#[derive(Args)]
struct QseriesArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::RamanujanTau)]
    model: ModelArg,
    #[arg(long, default_value_t = 10)]
    order: usize,
}

#[derive(Args)]
struct RamanujanArgs {
    #[arg(long, value_parser = parse_complex)]
    s: Complex64,
    #[arg(long, default_value_t = 200)]
    n_max: usize,
}

#[derive(Args)]
struct StringGreenArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::RamanujanTau)]
    model: ModelArg,
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    #[arg(long)]
    sigma: f64,
    #[command(flatten)]
    geom: GeomArgs,
    #[arg(long, default_value_t = 1.0)]
    alpha_prime: f64,
    /// Momentum shift A.
    #[arg(long, default_value_t = 0.0)]
    shift: f64,
    #[arg(long, default_value_t = 50)]
    n_max: usize,
    #[arg(long = "big-n-max", default_value_t = 50)]
    big_n_max: usize,
}

#[derive(Args)]
struct OscArgs {
    #[arg(long, value_parser = parse_complex)]
    beta: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    mu: Complex64,
    #[arg(long)]
    a_omega: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
}

#[derive(Clone, Debug)]
struct Grid(Vec<f64>);

/// `re+imi`, `re`, or `imi`, e.g. `0.5+14.1347i`, `-2`, `3i`, `1e-3-2.5e1i`.
fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    let bad = || format!("cannot parse complex number {text:?}; expected re+imi");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| c(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |s: &str| -> Result<f64, String> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => Ok(c(body[..k].parse::<f64>().map_err(|_| bad())?, imag(&body[k..])?)),
        None => Ok(c(0.0, imag(body)?)),
    }
}

/// `lo:hi:step`, inclusive of both ends.
fn parse_range(text: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || format!("cannot parse range {text:?}; expected lo:hi:step");
    let [lo, hi, step] = parts.as_slice() else {
        return Err(bad());
    };
    let (lo, hi, step): (f64, f64, f64) =
        (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?, step.parse().map_err(|_| bad())?);
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(format!("range {text:?} needs lo <= hi and step > 0"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 50_000_000 {
        return Err(format!("range {text:?} has too many points"));
    }
    Ok(Grid((0..count).map(|k| lo + k as f64 * step).collect()))
}

fn parse_span(text: &str) -> Result<(f64, f64, Option<f64>), String> {
    let bad = || format!("cannot parse range {text:?}; expected lo:hi or lo:hi:step");
    let parts: Vec<f64> = text.split(':').map(|p| p.parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    match parts.as_slice() {
        [lo, hi] => Ok((*lo, *hi, None)),
        [lo, hi, step] => Ok((*lo, *hi, Some(*step))),
        _ => Err(bad()),
    }
}

/// What a subcommand produced.
enum Output {
    Table(ScanTable),
    Raw { csv: String, json: Value },
}

fn complex_table(columns: &[&str], meta: &[(&str, String)], values: Vec<f64>) -> ScanTable {
    let mut table = ScanTable::new(columns.iter().copied());
    for (k, v) in meta {
        table = table.with_meta(k, v);
    }
    table.push(values);
    table
}

fn policy_for(args: &EvalArgs, tol: Option<f64>) -> EvalPolicy {
    let method = match args.method {
        MethodArg::Auto => Method::Auto,
        MethodArg::Series => Method::Series,
        MethodArg::EulerMaclaurin => Method::EulerMaclaurin,
        MethodArg::FunctionalEquation => Method::FunctionalEquation,
        MethodArg::Integral => Method::Integral,
        MethodArg::ThetaIntegral => Method::ThetaIntegral,
    };
    let mut policy = EvalPolicy::with_method(method);
    if let Some(m) = args.max_terms {
        policy.max_terms = m;
    }
    if let Some(o) = args.em_order {
        policy.em_order = o;
    }
    if let Some(t) = tol {
        policy.tail_tol = t;
    }
    policy
}

fn run(cli: &Cli) -> zlab::Result<Output> {
    let out = match &cli.command {
        Command::Eval(args) => {
            let policy = policy_for(args, cli.tol);
            let v = match args.kind {
                FunctionKind::Zeta => dirichlet::dirichlet_function(DirichletKind::Zeta, args.s, &policy)?,
                FunctionKind::Eta => dirichlet::dirichlet_function(DirichletKind::Eta, args.s, &policy)?,
                FunctionKind::Lambda => dirichlet::dirichlet_function(DirichletKind::Lambda, args.s, &policy)?,
                FunctionKind::Beta => dirichlet::dirichlet_function(DirichletKind::Beta, args.s, &policy)?,
                FunctionKind::Hurwitz => dirichlet::hurwitz_zeta(args.s, args.alpha, &policy)?,
                FunctionKind::Lerch => dirichlet::lerch_phi(&LerchArgs::new(args.x, args.s, args.alpha)?, &policy)?,
            };
            Output::Table(complex_table(
                &["re", "im"],
                &[("s", args.s.to_string()), ("x", args.x.to_string()), ("alpha", args.alpha.to_string())],
                vec![v.re, v.im],
            ))
        }
        Command::Green(args) => {
            let geom = args.geom.geometry(args.gauge)?;
            let pt = SPoint::new(args.t, args.sigma, args.geom.a)?;
            let v = match args.case {
                GreenCase::One => greens::green_case1(args.x, &pt)?,
                GreenCase::Two => greens::green_case2(args.x, &pt, &geom)?,
                GreenCase::Three => greens::green_case3(args.x, &pt)?,
                GreenCase::ThreeP => greens::green_case3p(args.x, &pt)?,
                GreenCase::Four => greens::green_gauge(args.x, &pt, &geom)?,
            };
            Output::Table(complex_table(
                &["re", "im"],
                &[
                    ("x", args.x.to_string()),
                    ("t", args.t.to_string()),
                    ("sigma", args.sigma.to_string()),
                    ("R", args.geom.r.to_string()),
                    ("a", args.geom.a.to_string()),
                    ("gauge", args.gauge.to_string()),
                ],
                vec![v.re, v.im],
            ))
        }
        Command::Transition(args) => {
            let case = match (args.n, args.case) {
                (Some(n), _) => MixingCase::Partial(n),
                (None, TransitionCase::One) => MixingCase::C1,
                (None, TransitionCase::Two) => MixingCase::C2,
                (None, TransitionCase::Three) => MixingCase::C3,
                (None, TransitionCase::ThreeP) => MixingCase::C3p,
                (None, TransitionCase::Four) => MixingCase::C4,
            };
            let spec = MixingSpec::new(case, args.sigma, args.geom.geometry(0.0)?)?;
            Output::Table(transitions::transition_scan(&spec, &args.t.0))
        }
        Command::Partition(args) => {
            let geom = args.geom.geometry(0.0)?;
            let statistics = match args.statistics {
                StatisticsArg::Fermi => Statistics::Fermi,
                StatisticsArg::Bose => Statistics::Bose,
            };
            let method = match args.method {
                SumArg::Direct => SumMethod::DirectProduct,
                SumArg::Series => SumMethod::Series,
            };
            let rows = par::map(&args.beta.0, |&beta| -> zlab::Result<Vec<f64>> {
                Ok(vec![
                    statmech::grand_log_z(statistics, beta, args.mu, &geom, method, args.terms)?,
                    statmech::one_particle_z(beta, &geom)?,
                ])
            });
            let mut table = ScanTable::new(["beta", "log_z", "z1"])
                .with_meta("statistics", format!("{statistics:?}").to_lowercase())
                .with_meta("method", format!("{method:?}"))
                .with_meta("mu", args.mu)
                .with_meta("terms", args.terms)
                .with_meta("R", args.geom.r)
                .with_meta("a", args.geom.a);
            for (&beta, r) in args.beta.0.iter().zip(rows) {
                table.push_result(&[beta], r);
            }
            Output::Table(table)
        }
        Command::Thermo(args) => {
            let geom = args.geom.geometry(0.0)?;
            let rows = par::map(&args.beta.0, |&beta| {
                statmech::thermodynamics_with_fugacity(beta, args.alpha, &geom, args.terms).map(|s| vec![s.f, s.u, s.p, s.n])
            });
            let mut table = ScanTable::new(["beta", "f", "u", "p", "n"])
                .with_meta("alpha", args.alpha)
                .with_meta("terms", args.terms)
                .with_meta("R", args.geom.r)
                .with_meta("a", args.geom.a);
            for (&beta, r) in args.beta.0.iter().zip(rows) {
                table.push_result(&[beta], r);
            }
            Output::Table(table)
        }
        Command::ThermalGreen(args) => {
            let geom = args.geom.geometry(0.0)?;
            let v = statmech::thermal_green(args.x, args.t, args.sigma, args.beta, &geom, args.m_max)?;
            Output::Table(complex_table(
                &["re", "im"],
                &[
                    ("x", args.x.to_string()),
                    ("t", args.t.to_string()),
                    ("sigma", args.sigma.to_string()),
                    ("beta", args.beta.to_string()),
                    ("m_max", args.m_max.to_string()),
                    ("R", args.geom.r.to_string()),
                    ("a", args.geom.a.to_string()),
                ],
                vec![v.re, v.im],
            ))
        }
        Command::Factorize(args) => {
            let mode = match args.mode {
                ModeArg::Distinct => FactorMode::Distinct,
                ModeArg::WithRepeats => FactorMode::WithRepeats,
            };
            let report = statmech::count_factorizations_with_limit(args.n, mode, args.limit)?;
            let mut csv = String::new();
            let _ = writeln!(csv, "# n={}", report.n);
            let _ = writeln!(csv, "# mode={}", json!(report.mode).as_str().unwrap_or_default());
            let _ = writeln!(csv, "# count={}", report.count);
            csv.push_str("factors\n");
            for f in &report.listing {
                let parts: Vec<String> = f.iter().map(u64::to_string).collect();
                csv.push_str(&parts.join("*"));
                csv.push('\n');
            }
            Output::Raw { csv, json: json!(report) }
        }
        Command::Zeros(args) => {
            let (lo, hi, step) = args.range;
            let scan = zeros::find_zeros_checked(lo, hi, step.unwrap_or(0.05))?;
            if let Some(w) = &scan.warning {
                eprintln!("warning: {w}");
            }
            let mut table = ScanTable::new(["index", "t", "err"])
                .with_meta("t_lo", lo)
                .with_meta("t_hi", hi)
                .with_meta("step", step.unwrap_or(0.05))
                .with_meta("expected", scan.expected);
            for z in &scan.zeros {
                table.push(vec![z.index as f64, z.t, z.refinement_error]);
            }
            Output::Table(table)
        }
        Command::RhScan(args) => {
            let (table, min) = transitions::rh_scan(&args.sigma.0, &args.t.0)?;
            Output::Table(
                table.with_meta("min_p", min.p).with_meta("min_sigma", min.sigma).with_meta("min_t", min.t),
            )
        }
        Command::Susy(args) => {
            let rows = par::map(&args.y.0, |&y| transitions::susy_potential(args.sigma, y).map(|v| vec![v]));
            let mut table = ScanTable::new(["y", "v"]).with_meta("sigma", args.sigma);
            for (&y, r) in args.y.0.iter().zip(rows) {
                table.push_result(&[y], r);
            }
            Output::Table(table)
        }
        Command::DualityCheck(args) => duality_check(args, cli.seed)?,
        Command::ThetaZeta(args) => {
            let mut spec = QuadratureSpec { abs_tol: 1e-13, rel_tol: 1e-11, ..QuadratureSpec::default() };
            if let Some(t) = cli.tol {
                spec.rel_tol = t;
                spec.abs_tol = t;
            }
            let r = zeros::theta_integral_zeta(args.s, &spec)?;
            Output::Table(complex_table(
                &["re", "im", "closed_re", "closed_im", "quad_err"],
                &[("s", args.s.to_string())],
                vec![r.quadrature.re, r.quadrature.im, r.closed_form.re, r.closed_form.im, r.quadrature_error],
            ))
        }
        Command::Qseries(args) => {
            let spec = DegeneracySpec { model: args.model.into(), order: args.order };
            let series = string_series::degeneracies(&spec)?;
            let step = series.step.as_f64();
            let mut csv = String::new();
            let _ = writeln!(csv, "# model={}", json!(spec.model).as_str().unwrap_or_default());
            let _ = writeln!(csv, "# order={}", args.order);
            csv.push_str("level,coefficient\n");
            let mut coeffs = Vec::new();
            for (k, v) in series.coeffs.iter().enumerate() {
                let level = k as f64 * step;
                let _ = writeln!(csv, "{level},{v}");
                coeffs.push(json!({"level": level, "coefficient": v.to_string()}));
            }
            Output::Raw {
                csv,
                json: json!({"model": spec.model, "order": args.order, "coefficients": coeffs}),
            }
        }
        Command::Ramanujan(args) => {
            let v = string_series::ramanujan_f(args.s, args.n_max)?;
            Output::Table(complex_table(
                &["re", "im", "tail"],
                &[("s", args.s.to_string()), ("n_max", args.n_max.to_string())],
                vec![v.value.re, v.value.im, v.tail_estimate],
            ))
        }
        Command::StringGreen(args) => {
            let geom = args.geom.geometry(0.0)?;
            let pt = SPoint::new(args.t, args.sigma, args.geom.a)?;
            let spec = DegeneracySpec { model: args.model.into(), order: args.big_n_max };
            let v = string_series::string_green_series(
                &pt,
                &geom,
                &spec,
                args.alpha_prime,
                args.shift,
                args.n_max,
                args.big_n_max,
            )?;
            Output::Table(complex_table(
                &["re", "im", "tail"],
                &[
                    ("model", json!(spec.model).as_str().unwrap_or_default().to_string()),
                    ("t", args.t.to_string()),
                    ("sigma", args.sigma.to_string()),
                    ("R", args.geom.r.to_string()),
                    ("a", args.geom.a.to_string()),
                    ("alpha_prime", args.alpha_prime.to_string()),
                    ("shift", args.shift.to_string()),
                    ("n_max", args.n_max.to_string()),
                    ("big_n_max", args.big_n_max.to_string()),
                ],
                vec![v.value.re, v.value.im, v.tail_estimate],
            ))
        }
        Command::OscZ(args) => {
            let v = statmech::log_oscillator_z(args.beta, args.mu, args.a_omega, args.a)?;
            Output::Table(complex_table(
                &["re", "im"],
                &[
                    ("beta", args.beta.to_string()),
                    ("mu", args.mu.to_string()),
                    ("a_omega", args.a_omega.to_string()),
                    ("a", args.a.to_string()),
                ],
                vec![v.re, v.im],
            ))
        }
    };
    Ok(out)
}

fn duality_check(args: &DualityArgs, seed: u64) -> zlab::Result<Output> {
    let mut table = ScanTable::new(["x", "R", "a", "s_re", "s_im", "r_prime", "x_prime", "r_double_prime", "x_double_prime", "residual"]);
    let mut points = Vec::new();
    match args.random {
        None => points.push((args.x, args.geom.r, args.s)),
        Some(count) => {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            for _ in 0..count {
                let r = rng.gen_range(0.3..2.0) * args.geom.a;
                let x = rng.gen_range(0.02..0.98) * 2.0 * PI * r;
                let s = c(rng.gen_range(0.2..0.9), rng.gen_range(-30.0..30.0));
                points.push((x, r, s));
            }
            table = table.with_meta("seed", seed).with_meta("draws", count);
        }
    }
    let rows = par::map(&points, |&(x, r, s)| -> zlab::Result<Vec<f64>> {
        let geom = Geometry::new(r, args.geom.a, 0.0)?;
        let map = zeros::duality_map(x, &geom)?;
        let pt = SPoint::continued(s, args.geom.a)?;
        let residual = zeros::duality_residual(x, &pt, &geom)?;
        Ok(vec![map.r_prime, map.x_prime, map.r_double_prime, map.x_double_prime, residual])
    });
    for (&(x, r, s), row) in points.iter().zip(rows) {
        table.push_result(&[x, r, args.geom.a, s.re, s.im], row);
    }
    Ok(Output::Table(table.with_meta("sigma_rule", "sigma' = sigma'' = a - sigma, t' = t'' = -t")))
}

fn render(output: &Output, format: Format) -> String {
    match (output, format) {
        (Output::Table(t), Format::Csv) => t.to_csv(),
        (Output::Table(t), Format::Json) => serde_json::to_string(t).unwrap_or_default() + "\n",
        (Output::Raw { csv, .. }, Format::Csv) => csv.clone(),
        (Output::Raw { json, .. }, Format::Json) => json.to_string() + "\n",
    }
}

fn error_exit(e: &Error) -> ExitCode {
    eprintln!("{}", json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
    ExitCode::from(if matches!(e, Error::Invalid(_)) { 2 } else { 3 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| std::env::var("ZLAB_THREADS").ok().and_then(|v| v.parse().ok()));
    if let Some(n) = threads {
        par::set_threads(n);
    }
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => return error_exit(&e),
    };
    let text = render(&output, cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("{}", json!({"error": {"kind": "io", "message": e.to_string()}}));
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5+14.1347i").unwrap(), c(0.5, 14.1347));
        assert_eq!(parse_complex("-2").unwrap(), c(-2.0, 0.0));
        assert_eq!(parse_complex("3i").unwrap(), c(0.0, 3.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3-2.5e1i").unwrap(), c(1e-3, -25.0));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn ranges_are_inclusive() {
        assert_eq!(parse_range("0:50:0.05").unwrap().0.len(), 1001);
        assert_eq!(parse_range("1:1:0.5").unwrap().0, vec![1.0]);
        assert!(parse_range("2:1:0.1").is_err());
        assert!(parse_range("0:1").is_err());
    }
}
