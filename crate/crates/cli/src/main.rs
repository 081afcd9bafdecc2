//! `octspec` command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 1 failed computation or check.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use octspec::cdnum::{self, kappa};
use octspec::diagmodel::{self, DiagSymbol, PowerVector};
use octspec::funcalc::{self, Builtin, FunctionFile};
use octspec::identities::identity_report;
use octspec::qlop::OperatorFile;
use octspec::{random, spectral, QlOperator};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] octspec::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("malformed {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Read { .. } | CliError::Parse { .. } | CliError::Invalid(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "octspec", version, about = "Spectral analysis over Cayley-Dickson algebras")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplication table, identity suite or zero-divisor search.
    Algebra {
        #[arg(long = "v")]
        level: u32,
        action: AlgebraAction,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Graded resolution of a self-adjoint operator.
    Spectral {
        operator: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        mesh: f64,
        /// Breakpoints and ranks as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Resolution as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include projection matrices in the JSON.
        #[arg(long)]
        full: bool,
    },
    /// Apply a function to a self-adjoint operator.
    Calc {
        operator: PathBuf,
        function: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diagonal operators with power-law symbols.
    Diag {
        #[command(subcommand)]
        action: DiagAction,
    },
    /// Naive versus closed sums and products of diagonal operators.
    Example52 {
        #[arg(long, default_value_t = diagmodel::DEFAULT_HORIZON)]
        horizon: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quick end-to-end checks.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraAction {
    Table,
    Identities,
    Zerodivisor,
}

#[derive(Subcommand)]
enum DiagAction {
    /// Whether a vector lies in the domain of a symbol.
    Domain {
        symbol: PathBuf,
        vector: PathBuf,
        #[arg(long, default_value_t = diagmodel::DEFAULT_HORIZON)]
        horizon: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounding projections `|t_n| ≤ m`.
    Bounding {
        symbol: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        thresholds: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closure of the symbol's values.
    Spectrum { symbol: PathBuf },
    /// Normality of the symbol.
    Affiliation {
        symbol: PathBuf,
        #[arg(long, default_value_t = 1000)]
        horizon: u64,
    },
    /// Closed sum or product of two symbols.
    Combine {
        op: CombineOp,
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CombineOp {
    Add,
    Mul,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn write_json<T: serde::Serialize + ?Sized>(path: &Path, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(octspec::Error::from)?;
    fs::write(path, text + "\n").map_err(|source| CliError::Write { path: path.into(), source })
}

fn load_operator(path: &Path) -> CliResult<QlOperator> {
    Ok(read_json::<OperatorFile>(path)?.into_operator()?)
}

fn check_level(level: u32) -> CliResult<()> {
    let vmax = cdnum::vmax();
    if level > vmax {
        return Err(octspec::Error::LevelOutOfRange { level, vmax }.into());
    }
    Ok(())
}

fn cmd_algebra(level: u32, action: AlgebraAction, trials: usize, rng: &mut ChaCha8Rng) -> CliResult<()> {
    check_level(level)?;
    match action {
        AlgebraAction::Table => {
            let table = cdnum::multiplication_table(level)?;
            let width = format!("-i{}", table.len() - 1).len();
            for row in &table {
                let cells: Vec<String> = row
                    .iter()
                    .map(|p| {
                        let s = if p.sign < 0 { "-" } else { "" };
                        format!("{:>width$}", format!("{s}i{}", p.index))
                    })
                    .collect();
                println!("{}", cells.join(" "));
            }
        }
        AlgebraAction::Identities => {
            let report = identity_report(level, trials, rng)?;
            let dim = 1usize << level;
            let kappa_ok = (0..dim).all(|j| {
                (0..dim).all(|k| {
                    let a = cdnum::basis_mul(j, k, level).expect("index in range");
                    let b = cdnum::basis_mul(k, j, level).expect("index in range");
                    let s = if kappa(j, k) == 0 { 1 } else { -1 };
                    a.index == b.index && a.sign == s * b.sign
                })
            });
            println!("level {level}, {trials} random triples");
            println!("{:<24} {:>12} {:>9} {:>6}", "identity", "max resid", "expected", "pass");
            for c in &report.checks {
                let pass = if c.passed { "yes" } else { "no" };
                let exp = if c.expected { "holds" } else { "fails" };
                println!("{:<24} {:>12.3e} {exp:>9} {pass:>6}", c.name, c.max_residual);
            }
            println!("{:<24} {:>12} {:>9} {:>6}", "kappa commutation", "exact", "holds", if kappa_ok { "yes" } else { "no" });
            if !report.all_passed() || !kappa_ok {
                return Err(CliError::CheckFailed("an identity expected at this level failed".into()));
            }
            println!("summary: pass");
        }
        AlgebraAction::Zerodivisor => {
            if level < 4 {
                return Err(octspec::Error::DivisionAlgebra(level).into());
            }
            match cdnum::find_zero_divisor(level)? {
                Some((a, b)) => {
                    let p = &a * &b;
                    println!("a = {}", fmt_cd(&a));
                    println!("b = {}", fmt_cd(&b));
                    println!("|a| = {}, |b| = {}, |a b| = {}", a.norm(), b.norm(), p.norm());
                }
                None => return Err(CliError::CheckFailed("no two-term zero divisor found".into())),
            }
        }
    }
    Ok(())
}

fn fmt_cd(c: &octspec::CdNumber) -> String {
    let terms: Vec<String> = c
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0.0)
        .map(|(j, &x)| if j == 0 { format!("{x}") } else { format!("{x}*i{j}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn cmd_spectral(
    path: &Path,
    mesh: f64,
    csv_path: Option<&Path>,
    out: Option<&Path>,
    full: bool,
    rng: &mut ChaCha8Rng,
) -> CliResult<()> {
    if !(mesh > 0.0) || !mesh.is_finite() {
        return Err(CliError::Invalid(format!("mesh must be positive, got {mesh}")));
    }
    let t = load_operator(path)?;
    let r = spectral::resolution_of_identity(&t)?;
    println!("level {}, n = {}, real dimension {}", t.level(), t.n(), t.real_dim());
    println!("{:>22} {:>6}", "breakpoint", "rank");
    for (b, k) in r.csv_rows() {
        println!("{b:>22.15e} {k:>6}");
    }
    let rep = spectral::resolvents(&t)?.report(&t);
    println!("resolvent identities:");
    println!("  2iB+B- = B- - B+        residual {:.3e}", rep.difference_identity);
    println!("  T B+B- = (B+ + B-)/2    residual {:.3e}", rep.sum_identity);
    println!("  |B+| = {:.15}, |B-| = {:.15}", rep.norm_plus, rep.norm_minus);

    let x = random::module_vector(rng, t.level(), t.n());
    let tx = t.apply(&x)?;
    let err = spectral::riemann_reconstruct(&r, &x, mesh)?.distance(&tx)?;
    let bound = mesh * x.norm();
    println!("Riemann sum at mesh {mesh:e}: error {err:.3e} (bound {bound:.3e})");
    let mut points = vec![r.breakpoints()[0] - 1.0];
    points.extend_from_slice(r.breakpoints());
    let exact = spectral::riemann_reconstruct_with_partition(&r, &x, &points)?.distance(&tx)?;
    println!("breakpoint partition: error {exact:.3e}");

    if let Some(p) = csv_path {
        let mut w = csv::Writer::from_path(p).map_err(|e| CliError::Write { path: p.into(), source: e.into() })?;
        let wrap = |e: csv::Error| CliError::Write { path: p.into(), source: e.into() };
        w.write_record(["breakpoint", "rank"]).map_err(wrap)?;
        for (b, k) in r.csv_rows() {
            w.write_record([b.to_string(), k.to_string()]).map_err(wrap)?;
        }
        w.flush().map_err(|source| CliError::Write { path: p.into(), source })?;
    }
    if let Some(p) = out {
        write_json(p, &r.to_json(full))?;
    }
    if err > bound {
        return Err(CliError::CheckFailed("Riemann reconstruction exceeds its mesh bound".into()));
    }
    Ok(())
}

fn cmd_calc(op_path: &Path, fn_path: &Path, out: Option<&Path>) -> CliResult<()> {
    let t = load_operator(op_path)?;
    let file: FunctionFile = read_json(fn_path)?;
    let f = file.at_level(t.level())?;
    let bound = funcalc::norm_bound(&*f, &t)?;
    // id(T) = T, returned verbatim
    let ft = match file {
        FunctionFile::Builtin { builtin: Builtin::Id } => t.clone(),
        _ => funcalc::apply(&*f, &t)?,
    };
    println!("|f(T)| = {:.15}, sup |f| on sp(T) = {:.15}, bound holds: {}", bound.norm, bound.sup, bound.holds);
    match out {
        Some(p) => write_json(p, &ft)?,
        None => println!("{}", serde_json::to_string(&ft).map_err(octspec::Error::from)?),
    }
    if !bound.holds {
        return Err(CliError::CheckFailed("norm bound violated".into()));
    }
    Ok(())
}

fn cmd_diag(action: DiagAction) -> CliResult<()> {
    match action {
        DiagAction::Domain { symbol, vector, horizon, out } => {
            if horizon == 0 {
                return Err(CliError::Invalid("horizon must be positive".into()));
            }
            let t: DiagSymbol = read_json(&symbol)?;
            let x: PowerVector = read_json(&vector)?;
            let v = diagmodel::domain_contains_with(&t, &x, horizon)?;
            println!("exponent of |t_n x_n|^2: {}", v.exponent);
            println!("member: {}{}", v.member, if v.borderline { " (borderline, harmonic)" } else { "" });
            for s in &v.partial_sums {
                println!("  S_{} = {:.15}", s.n, s.value);
            }
            if let Some([lo, hi]) = v.tail_bracket {
                println!("sum in [{lo:.15}, {hi:.15}]");
            }
            if let Some(c) = v.crossing {
                println!("partial sums exceed {} at N = {} ({})", c.bound, c.n, if c.exact { "observed" } else { "extrapolated" });
            }
            if let Some(p) = out {
                write_json(&p, &v)?;
            }
        }
        DiagAction::Bounding { symbol, thresholds, out } => {
            let t: DiagSymbol = read_json(&symbol)?;
            let seq = diagmodel::bounding_sequence(&t, &thresholds)?;
            println!("{:>12} {:>14} {:>22}", "threshold", "support size", "norm");
            for p in &seq.projections {
                let size = p.support.size().map_or("infinite".to_string(), |s| s.to_string());
                println!("{:>12} {size:>14} {:>22.15}", p.threshold, p.norm);
            }
            if let Some(p) = out {
                write_json(&p, &seq)?;
            }
        }
        DiagAction::Spectrum { symbol } => {
            let t: DiagSymbol = read_json(&symbol)?;
            let c = diagmodel::spectrum_closure(&t);
            println!("head values: {}", c.head.len());
            for l in &c.limit_points {
                println!("limit point: {}", fmt_cd(l));
            }
            println!("unbounded: {}", c.unbounded);
        }
        DiagAction::Affiliation { symbol, horizon } => {
            if horizon == 0 {
                return Err(CliError::Invalid("horizon must be positive".into()));
            }
            let t: DiagSymbol = read_json(&symbol)?;
            let r = diagmodel::is_affiliated_normal(&t, horizon)?;
            println!("normal: {} (max residual {:.3e}, symbolic {})", r.normal, r.max_residual, r.symbolic);
            println!("T* T real nonnegative: {}", r.modulus_nonnegative);
            println!("bounding projections commute: {}", r.bounding_commutes);
        }
        DiagAction::Combine { op, left, right, out } => {
            let a: DiagSymbol = read_json(&left)?;
            let b: DiagSymbol = read_json(&right)?;
            let c = match op {
                CombineOp::Add => diagmodel::hat_add(&a, &b)?,
                CombineOp::Mul => diagmodel::hat_mul(&a, &b)?,
            };
            println!("leading exponent: {}", c.seq().leading_exponent());
            match out {
                Some(p) => write_json(&p, &c)?,
                None => println!("{}", serde_json::to_string(&c).map_err(octspec::Error::from)?),
            }
        }
    }
    Ok(())
}

fn cmd_example52(horizon: u64, out: Option<&Path>) -> CliResult<()> {
    if horizon < diagmodel::MIN_HORIZON {
        return Err(CliError::Invalid(format!("horizon must be at least {}", diagmodel::MIN_HORIZON)));
    }
    let report = diagmodel::example52_report(horizon)?;
    println!("{report}");
    if let Some(p) = out {
        write_json(p, &report)?;
    }
    if !report.all_match {
        return Err(CliError::CheckFailed("membership verdicts deviate from the expected ones".into()));
    }
    Ok(())
}

fn cmd_selftest(rng: &mut ChaCha8Rng) -> CliResult<()> {
    let mut failures = 0;
    let mut line = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };
    for level in [2, 3] {
        line(&format!("identities at level {level}"), identity_report(level, 1000, rng)?.all_passed());
    }
    let zd = cdnum::find_zero_divisor(4)?.is_some_and(|(a, b)| (&a * &b).is_zero());
    line("zero divisor at level 4", zd);
    let mut recon = true;
    for (level, n) in [(2, 4), (3, 3)] {
        let t = random::self_adjoint(rng, level, n);
        let r = spectral::resolution_of_identity(&t)?;
        let x = random::module_vector(rng, level, n);
        let err = spectral::riemann_reconstruct(&r, &x, 1e-3)?.distance(&t.apply(&x)?)?;
        let res = spectral::resolvents(&t)?.report(&t);
        recon &= err <= 1e-3 * x.norm() && res.difference_identity <= 1e-10 && res.sum_identity <= 1e-10;
    }
    line("resolution and resolvents", recon);
    line("diagonal model memberships", diagmodel::example52_report(10_000)?.all_match);
    if failures > 0 {
        return Err(CliError::CheckFailed(format!("{failures} self-test(s) failed")));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match cli.command {
        Command::Algebra { level, action, trials } => cmd_algebra(level, action, trials, &mut rng),
        Command::Spectral { operator, mesh, csv, out, full } => {
            cmd_spectral(&operator, mesh, csv.as_deref(), out.as_deref(), full, &mut rng)
        }
        Command::Calc { operator, function, out } => cmd_calc(&operator, &function, out.as_deref()),
        Command::Diag { action } => cmd_diag(action),
        Command::Example52 { horizon, out } => cmd_example52(horizon, out.as_deref()),
        Command::Selftest => cmd_selftest(&mut rng),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
