//! `hyperpic`: experiment runner for specialising divisor classes of
//! `y^2 = f(x)` into class groups of `Z[sqrt(f(n))]`.
//!
//! Exit codes: 0 success, 1 nothing found, 2 invalid input.

mod config;
mod output;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperpic::integral_forms::congruence_data_with_bound;
use hyperpic::polyarith::factor::{is_squarefree_integer, DEFAULT_WORK_BOUND};
use hyperpic::quadring::{class_number, class_number_of_discriminant};
use hyperpic::specialize::{find_order_at_least, scan, ScanOptions};
use hyperpic::{AltMumfordForm, Error, IntPoly, OddHyperellipticCurve};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use config::{ConfigError, ExperimentConfig, OutputFormat};
use output::ScanTable;

#[derive(Parser)]
#[command(
    name = "hyperpic",
    version,
    about = "Specialise divisor classes of y^2 = f(x) into quadratic class groups"
)]
struct Cli {
    /// Worker threads (output does not depend on this).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a config: genus, n_f, discriminant, fixed divisor, divisor.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Tabulate the specialisation over n = to, to - 1, ..., from.
    Scan {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        from: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<BigInt>,
        #[arg(long)]
        format: Option<OutputFormat>,
        #[arg(long)]
        squarefree_only: bool,
        #[arg(long)]
        factor_bound: Option<u64>,
    },
    /// Largest n >= floor whose pairing value has order at least K.
    Search {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        min_order: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        floor: Option<BigInt>,
        #[arg(long)]
        squarefree_only: bool,
        #[arg(long)]
        factor_bound: Option<u64>,
    },
    /// Class number h(4D) of Z[sqrt(D)].
    ClassNumber {
        #[arg(long = "D", visible_alias = "d", allow_hyphen_values = true)]
        d: BigInt,
    },
    /// Jacobian arithmetic on the configured divisor(s).
    Jac {
        #[command(subcommand)]
        op: JacOp,
    },
    /// The integral form (A, B, C, e) of the divisor and its congruence data.
    Altmumford {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        format: Option<OutputFormat>,
        #[arg(long)]
        factor_bound: Option<u64>,
    },
}

#[derive(Subcommand)]
enum JacOp {
    /// First divisor plus second (`point2` or `mumford2_a`/`mumford2_b`).
    Add {
        #[arg(long)]
        config: PathBuf,
    },
    Neg {
        #[arg(long)]
        config: PathBuf,
    },
    /// k times the divisor.
    Smul {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: BigInt,
    },
}

enum Failure {
    Invalid(String),
    NotFound(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(format!("write failed: {e}"))
    }
}

fn invalid(e: Error) -> Failure {
    Failure::Invalid(e.to_string())
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = io::stdout().lock();
    let res = match cli.command {
        Command::Validate { config } => cmd_validate(&config, &mut out),
        Command::Scan {
            config,
            from,
            to,
            format,
            squarefree_only,
            factor_bound,
        } => cmd_scan(&config, from, to, format, squarefree_only, factor_bound, &mut out),
        Command::Search {
            config,
            min_order,
            floor,
            squarefree_only,
            factor_bound,
        } => cmd_search(&config, min_order, floor, squarefree_only, factor_bound, &mut out),
        Command::ClassNumber { d } => cmd_class_number(&d, &mut out),
        Command::Jac { op } => cmd_jac(op, &mut out),
        Command::Altmumford {
            config,
            format,
            factor_bound,
        } => cmd_altmumford(&config, format, factor_bound, &mut out),
    };
    let flushed = out.flush();
    match (res, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Ok(()), Err(e)) => {
            eprintln!("error: write failed: {e}");
            ExitCode::from(2)
        }
        (Err(Failure::NotFound(m)), _) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        (Err(Failure::Invalid(m)), _) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<(ExperimentConfig, OddHyperellipticCurve), Failure> {
    let cfg = ExperimentConfig::load(path)?;
    let curve = cfg.curve()?;
    Ok((cfg, curve))
}

fn cmd_validate(path: &Path, out: &mut impl Write) -> CmdResult {
    let (cfg, curve) = load(path)?;
    writeln!(out, "curve: y^2 = {}", curve.f())?;
    writeln!(out, "genus {}, n_f={}, valid", curve.genus(), curve.n_f())?;
    writeln!(out, "discriminant: {}", curve.discriminant())?;
    writeln!(out, "fixed divisor of f: {}", curve.fixed_divisor())?;
    if cfg.divisor.is_none() {
        writeln!(out, "divisor: none given (identity)")?;
        return Ok(());
    }
    match cfg.divisor(&curve) {
        Ok(d) => {
            writeln!(out, "divisor: {d} valid")?;
            Ok(())
        }
        Err(e) => {
            writeln!(out, "divisor: invalid")?;
            Err(e.into())
        }
    }
}

fn cmd_scan(
    path: &Path,
    from: Option<BigInt>,
    to: Option<BigInt>,
    format: Option<OutputFormat>,
    squarefree_only: bool,
    factor_bound: Option<u64>,
    out: &mut impl Write,
) -> CmdResult {
    let (cfg, curve) = load(path)?;
    let q = cfg.divisor(&curve)?;
    let hi = to.or(cfg.to.clone()).unwrap_or_else(|| curve.n_f().clone());
    let lo = from.or(cfg.from.clone()).unwrap_or_else(|| &hi - 99);
    let work_bound = factor_bound.or(cfg.factor_bound).unwrap_or(DEFAULT_WORK_BOUND);
    let opts = ScanOptions {
        work_bound,
        ..ScanOptions::default()
    };
    let mut rows = scan(&curve, &q, &lo, &hi, &opts).map_err(invalid)?;
    if squarefree_only || cfg.squarefree_only == Some(true) {
        let fd = curve.fixed_divisor();
        // rows whose square-freeness cannot be decided within the bound are kept
        rows.retain(|r| is_squarefree_integer(&r.f_n.div_floor(&fd), work_bound).unwrap_or(true));
    }
    let table = ScanTable::new(&rows);
    match format.or(cfg.format).unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => {
            output::write_csv(&table, &mut *out)?;
            for line in table.summary.footer_lines() {
                eprintln!("# {line}");
            }
        }
        OutputFormat::Json => output::write_json(&table, &mut *out)?,
    }
    if !rows.is_empty() && table.summary.computed == 0 {
        return Err(Failure::NotFound(format!("no row in [{lo}, {hi}] could be computed")));
    }
    Ok(())
}

fn cmd_search(
    path: &Path,
    min_order: Option<u64>,
    floor: Option<BigInt>,
    squarefree_only: bool,
    factor_bound: Option<u64>,
    out: &mut impl Write,
) -> CmdResult {
    let (cfg, curve) = load(path)?;
    let q = cfg.divisor(&curve)?;
    let k = min_order
        .or(cfg.min_order)
        .ok_or_else(|| Failure::Invalid("--min-order (or min_order in the config) is required".into()))?;
    if k == 0 {
        return Err(Failure::Invalid("--min-order must be at least 1".into()));
    }
    let floor = floor.or(cfg.floor.clone()).unwrap_or_else(|| curve.n_f() - 1000);
    let work_bound = factor_bound.or(cfg.factor_bound).unwrap_or(DEFAULT_WORK_BOUND);
    let squarefree_only = squarefree_only || cfg.squarefree_only == Some(true);
    match find_order_at_least(&curve, &q, k, &floor, squarefree_only, work_bound) {
        Ok(hit) => {
            let disc = hit.pairing.disc();
            writeln!(out, "n = {}", hit.n)?;
            writeln!(out, "f(n) = {}", curve.eval(&hit.n))?;
            writeln!(out, "reduced form = {}", hit.pairing.rep())?;
            writeln!(out, "discriminant = {disc}")?;
            writeln!(out, "order = {}", hit.order)?;
            match class_number_of_discriminant(disc) {
                Ok(h) => writeln!(out, "class number = {h}")?,
                Err(e) => writeln!(out, "class number = unavailable ({e})")?,
            }
            writeln!(out, "examined = {}", hit.examined)?;
            Ok(())
        }
        Err(e @ Error::NotFound { .. }) => {
            let examined = if &floor > curve.n_f() {
                BigInt::from(0)
            } else {
                curve.n_f() - &floor + 1
            };
            Err(Failure::NotFound(format!(
                "not found: {e}\nexamined {examined} values of n (k = {k}, square-free only: {squarefree_only})"
            )))
        }
        Err(e) => Err(invalid(e)),
    }
}

fn cmd_class_number(d: &BigInt, out: &mut impl Write) -> CmdResult {
    let h = class_number(d).map_err(invalid)?;
    writeln!(out, "{h}")?;
    Ok(())
}

fn cmd_jac(op: JacOp, out: &mut impl Write) -> CmdResult {
    let result = match op {
        JacOp::Add { config } => {
            let (cfg, curve) = load(&config)?;
            cfg.divisor(&curve)?.add(&cfg.second_divisor(&curve)?, &curve)
        }
        JacOp::Neg { config } => {
            let (cfg, curve) = load(&config)?;
            cfg.divisor(&curve)?.neg()
        }
        JacOp::Smul { config, k } => {
            let (cfg, curve) = load(&config)?;
            cfg.divisor(&curve)?.smul(&k, &curve)
        }
    };
    writeln!(out, "{result}")?;
    Ok(())
}

#[derive(Serialize)]
struct AltMumfordRecord {
    a: Vec<String>,
    b: Vec<String>,
    c: Vec<String>,
    e: String,
    congruence: hyperpic::CongruenceData,
}

fn coeff_strings(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn cmd_altmumford(
    path: &Path,
    format: Option<OutputFormat>,
    factor_bound: Option<u64>,
    out: &mut impl Write,
) -> CmdResult {
    let (cfg, curve) = load(path)?;
    let q = cfg.divisor(&curve)?;
    let form = AltMumfordForm::from_divisor(&curve, &q).map_err(invalid)?;
    let work_bound = factor_bound.or(cfg.factor_bound).unwrap_or(DEFAULT_WORK_BOUND);
    let cong = congruence_data_with_bound(&form, work_bound).map_err(invalid)?;
    match format.or(cfg.format).unwrap_or(OutputFormat::Csv) {
        OutputFormat::Json => {
            let rec = AltMumfordRecord {
                a: coeff_strings(&form.a),
                b: coeff_strings(&form.b),
                c: coeff_strings(&form.c),
                e: form.e.to_string(),
                congruence: cong,
            };
            serde_json::to_writer_pretty(&mut *out, &rec).map_err(|e| Failure::Invalid(e.to_string()))?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "A = {}", form.a)?;
            writeln!(out, "B = {}", form.b)?;
            writeln!(out, "C = {}", form.c)?;
            writeln!(out, "e = {}", form.e)?;
            writeln!(
                out,
                "d_L = {}, Delta_L = {}, N_L = {}",
                cong.d_l, cong.delta_l, cong.n_l
            )?;
        }
    }
    Ok(())
}
