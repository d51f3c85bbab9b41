//! `k3gon`: command-line front end for the lattice and gonality checks.
//!
//! Exit codes: 0 on success, 2 for argument or configuration errors, 3 when a
//! value guaranteed by the gonality theorem is contradicted.

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use k3gon_core::invariants::{brill_noether_number, expected_gonality, is_perfect_square, rho};
use k3gon_core::lattice::Ampleness;
use k3gon_core::parallel::Execution;
use k3gon_core::qform::{represents, BinaryQuadForm, DEFAULT_BOUND};
use k3gon_core::report::{write_csv, write_json, write_table};
use k3gon_core::scan::{run_scan, ScanConfig, ScanFilter};
use k3gon_core::verifier::{
    bn_divisor_solutions, check_very_ample_order, compute_alpha, h1_normal_vanishes,
    mori_exists, rathmann_exists, theorem1_applicable, theorem3_applicable_with_bound,
    AlphaOptions, HypothesisReport, VeryAmpleSearch,
};
use k3gon_core::{DivClass, Error, K3Lattice, Params};

#[derive(Parser, Debug)]
#[command(name = "k3gon", version, about = "Exact checks for gonality of curves on K3 sections")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Search bound for representability of -1.
    #[arg(long, default_value_t = DEFAULT_BOUND, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,

    /// Add (C-D)^2 > 0 to the constraint set A.
    #[arg(long, global = true)]
    strict_a: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    Thm1,
    Thm3,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for one (d, g, r).
    Check { d: i64, g: i64, r: i64 },
    /// Sweep a box of parameters.
    Scan {
        /// Degree range, `A..B` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range)]
        d: RangeInclusive<i64>,
        /// Genus range.
        #[arg(long, value_parser = parse_range)]
        g: RangeInclusive<i64>,
        /// Ambient dimension range.
        #[arg(long, value_parser = parse_range, default_value = "3")]
        r: RangeInclusive<i64>,
        /// Keep only rows where the given hypotheses hold.
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Evaluate on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// All (r, d) with rho(g, r, d) = -1.
    BnDivisors { g: i64 },
    /// Representability of a target by (r-1)m^2 + dmn + (g-1)n^2.
    Qform {
        d: i64,
        g: i64,
        r: i64,
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        target: i64,
    },
    /// Minimize D.C - D^2 over the constraint set A.
    Alpha {
        d: i64,
        g: i64,
        r: i64,
        /// Fail unless the theorem's hypotheses hold.
        #[arg(long)]
        enforce: bool,
    },
    /// Vanishing of H^1 of the normal bundle for curves on quartics.
    H1 { d: i64, g: i64 },
}

/// Accepts `A..B`, `A..=B` or a single integer.
fn parse_range(text: &str) -> Result<RangeInclusive<i64>, String> {
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|e| format!("bad integer {s:?}: {e}"));
    match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok(parse(lo)?..=parse(hi)?)
        }
        None => {
            let v = parse(text)?;
            Ok(v..=v)
        }
    }
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInvariantViolation(_) => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(bytes) => match emit(&bytes, cli.common.out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Writes to stdout, or to a sibling temp file renamed into place so a
/// failed run never leaves partial output.
fn emit(bytes: &[u8], out: Option<&Path>) -> io::Result<()> {
    let Some(path) = out else {
        let mut stdout = io::stdout().lock();
        stdout.write_all(bytes)?;
        return stdout.flush();
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Vec<u8>, Failure> {
    let common = &cli.common;
    match &cli.command {
        Command::Check { d, g, r } => cmd_check(Params::new(*d, *g, *r)?, common),
        Command::Scan { d, g, r, filter, sequential } => {
            let filter = match filter {
                Filter::All => ScanFilter::All,
                Filter::Thm1 => ScanFilter::Thm1,
                Filter::Thm3 => ScanFilter::Thm3,
            };
            let cfg = ScanConfig::new(d.clone(), g.clone(), r.clone())?
                .with_filter(filter)
                .with_bound(common.bound)?
                .with_strict_a(common.strict_a);
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            let rows = run_scan(&cfg, exec)?;
            let mut buf = Vec::new();
            match common.format {
                Format::Csv => write_csv(&rows, &mut buf)?,
                Format::Json => write_json(&rows, &mut buf)?,
                Format::Table => write_table(&rows, &mut buf)?,
            }
            Ok(buf)
        }
        Command::BnDivisors { g } => cmd_bn_divisors(*g, common.format),
        Command::Qform { d, g, r, target } => {
            cmd_qform(Params::new(*d, *g, *r)?, *target, common)
        }
        Command::Alpha { d, g, r, enforce } => {
            let opts = AlphaOptions {
                strict_a: common.strict_a,
                enforce_hypotheses: *enforce,
                bound: Some(common.bound),
            };
            let report = compute_alpha(&Params::new(*d, *g, *r)?, opts)?;
            match common.format {
                Format::Json => Ok(json_bytes(&serde_json::to_value(&report).expect("serializable"))),
                _ => {
                    let mut out = String::new();
                    out += &format!("alpha: {}\n", opt(report.alpha));
                    out += &format!("minimizers: {}\n", classes(&report.minimizers));
                    out += &format!("enumerated: {}\n", classes(&report.enumerated));
                    out += &format!("n-range: {}..{}\n", report.n_min, report.n_max);
                    out += &format!("strict-a: {}\n", report.strict_a);
                    out += &format!("guaranteed: {}\n", report.guaranteed);
                    Ok(out.into_bytes())
                }
            }
        }
        Command::H1 { d, g } => cmd_h1(*d, *g, common),
    }
}

fn json_bytes(value: &Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("serializable");
    bytes.push(b'\n');
    bytes
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".to_string())
}

fn classes(list: &[DivClass]) -> String {
    if list.is_empty() {
        return "{}".to_string();
    }
    list.iter().map(DivClass::to_string).collect::<Vec<_>>().join(" ")
}

fn flags_text(report: &HypothesisReport) -> String {
    report
        .flags
        .iter()
        .map(|f| format!("  [{}] {} ({})\n", if f.holds { "x" } else { " " }, f.name, f.detail))
        .collect()
}

fn cmd_check(p: Params, common: &Common) -> Result<Vec<u8>, Failure> {
    let hypotheses = theorem3_applicable_with_bound(&p, common.bound);
    let alpha = if hypotheses.ok() {
        let opts = AlphaOptions {
            strict_a: common.strict_a,
            enforce_hypotheses: true,
            bound: Some(common.bound),
        };
        Some(compute_alpha(&p, opts)?)
    } else {
        None
    };
    let k = p.d() - 2 * p.r() - 1;
    let lattice = K3Lattice::certified_with_bound(p, common.bound);
    let very_ample = match &lattice {
        Ok(l) => Ok(check_very_ample_order(l, k)?),
        Err(e) => Err(e.to_string()),
    };
    let ample = K3Lattice::new(p).c_is_ample();
    let (h1, thm1) = if p.r() == 3 {
        (Some(h1_normal_vanishes(p.d(), p.g())), Some(theorem1_applicable(p.d(), p.g())))
    } else {
        (None, None)
    };

    if common.format == Format::Json {
        let value = json!({
            "d": p.d().to_string(),
            "g": p.g().to_string(),
            "r": p.r().to_string(),
            "rho": brill_noether_number(&p).value().to_string(),
            "expected_gonality": expected_gonality(&p).to_string(),
            "thm3": hypotheses,
            "thm3_ok": hypotheses.ok(),
            "alpha": alpha,
            "c_ample": ample,
            "very_ample": {
                "k": k.to_string(),
                "result": match &very_ample {
                    Ok(v) => serde_json::to_value(v).expect("serializable"),
                    Err(reason) => json!({ "verdict": "not-certified", "reason": reason }),
                },
            },
            "h1_vanishes": h1,
            "thm1": thm1,
            "mori": (p.r() == 3).then(|| mori_exists(p.d(), p.g())),
            "rathmann": (p.r() >= 3).then(|| rathmann_exists(&p)),
        });
        return Ok(json_bytes(&value));
    }

    let mut out = String::new();
    out += &format!("params: {p}\n");
    out += &format!("rho: {}\n", brill_noether_number(&p));
    out += &format!("expected gonality: {}\n", expected_gonality(&p));
    out += &format!("theorem 3 hypotheses: {}\n", hypotheses.ok());
    out += &flags_text(&hypotheses);
    match &alpha {
        Some(rep) => {
            out += &format!("alpha: {}\n", opt(rep.alpha));
            out += &format!("minimizers: {}\n", classes(&rep.minimizers));
        }
        None => out += "alpha: -\n",
    }
    out += &format!(
        "C ample: {}\n",
        match ample {
            Ampleness::Yes => "yes",
            Ampleness::Unknown => "unknown",
        }
    );
    out += &match &very_ample {
        Ok(VeryAmpleSearch::NoViolatorFound) => format!("{k}-very ample: yes (no violator)\n"),
        Ok(VeryAmpleSearch::ViolatorFound { witness }) => {
            format!("{k}-very ample: inconclusive (violator {witness})\n")
        }
        Err(reason) => format!("{k}-very ample: n/a ({reason})\n"),
    };
    if let Some(h1) = h1 {
        out += &format!("h1 vanishes: {h1}\n");
    }
    if let Some(thm1) = &thm1 {
        out += &format!("theorem 1 hypotheses: {}\n", thm1.ok());
        out += &flags_text(&thm1.hypotheses);
        for pair in &thm1.derived {
            out += &format!("  ({}, {}) -> gonality {}\n", pair.d, pair.g, pair.gonality);
        }
    }
    Ok(out.into_bytes())
}

fn cmd_bn_divisors(g: i64, format: Format) -> Result<Vec<u8>, Failure> {
    let pairs = bn_divisor_solutions(g)?;
    let out = match format {
        Format::Json => {
            let rows: Vec<Value> = pairs
                .iter()
                .map(|&(r, d)| {
                    json!({ "r": r.to_string(), "d": d.to_string(), "rho": rho(g, r, d).to_string() })
                })
                .collect();
            return Ok(json_bytes(&Value::Array(rows)));
        }
        Format::Csv => {
            let mut s = "r,d,rho\n".to_string();
            for &(r, d) in &pairs {
                s += &format!("{r},{d},{}\n", rho(g, r, d));
            }
            s
        }
        Format::Table => pairs
            .iter()
            .map(|&(r, d)| format!("({r},{d}) rho={}\n", rho(g, r, d)))
            .collect(),
    };
    Ok(out.into_bytes())
}

fn cmd_qform(p: Params, target: i64, common: &Common) -> Result<Vec<u8>, Failure> {
    let form = BinaryQuadForm::from_params(&p);
    let result = represents(&form, target, common.bound);
    let disc = form.discriminant();
    let square = is_perfect_square(disc).is_some();
    if common.format == Format::Json {
        return Ok(json_bytes(&json!({
            "form": form.to_string(),
            "target": target.to_string(),
            "verdict": result.to_string(),
            "witness": result.witness().map(|(m, n)| [m.to_string(), n.to_string()]),
            "discriminant": disc.to_string(),
            "discriminant_square": square,
        })));
    }
    Ok(format!("{result}, Δ={disc}, square={square}\n").into_bytes())
}

fn cmd_h1(d: i64, g: i64, common: &Common) -> Result<Vec<u8>, Failure> {
    let p = Params::new(d, g, 3)?;
    let vanishes = h1_normal_vanishes(d, g);
    let lattice = K3Lattice::new(p);
    let residual = DivClass::C - 4 * DivClass::H;
    let certified = K3Lattice::certified_with_bound(p, common.bound).is_ok();
    let effective = lattice.passes_effectivity_test(residual);
    if common.format == Format::Json {
        return Ok(json_bytes(&json!({
            "d": d.to_string(),
            "g": g.to_string(),
            "h1_vanishes": vanishes,
            "c_minus_4h_squared": lattice.self_int(residual).to_string(),
            "c_minus_4h_degree": lattice.degree(residual).to_string(),
            "lattice_certified": certified,
            "c_minus_4h_effective": certified.then_some(effective),
        })));
    }
    let mut out = format!("h1 vanishes: {vanishes}\n");
    out += &format!(
        "(C-4H)^2 = {}, (C-4H).H = {}\n",
        lattice.self_int(residual),
        lattice.degree(residual)
    );
    if certified {
        out += &format!("C-4H effective: {effective}\n");
    } else {
        out += "lattice not certified; effectiveness criterion does not apply\n";
    }
    Ok(out.into_bytes())
}
