//! `baileyforge` — batch verification runner, coefficient inspector, and
//! benchmark driver over the identity catalog.
//!
//! Subcommands: `list | verify | coeffs | bench`. Exit codes: 0 when every
//! requested check passes, 1 when any check fails, 2 on usage or
//! configuration errors. `BAILEYFORGE_THREADS` caps the worker pool.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use baileyforge::catalog::{
    euler, euler_q2, prefactor, prefactor_q2, series_g2_cleared, series_g3_cleared, series_h,
    series_k, series_r, IdentityCatalog,
};
use baileyforge::exec;
use baileyforge::series::{HalfExp, QSeries};
use baileyforge::{Error as CoreError, VerificationReport};

const SCHEMA_VERSION: &str = "report-v1";

#[derive(Parser)]
#[command(
    name = "baileyforge",
    version,
    about = "Exact truncated-series verification of Hecke-Rogers identities for the universal mock theta functions",
    after_help = "Every pass is a statement about truncated series (verified to the requested \
                  q-order), not a proof. Orders are half-integer rationals such as 30 or 61/2."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every identity id with its catalog location.
    List {
        /// Emit the listing as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Verify identities to a truncation order.
    Verify(VerifyArgs),
    /// Dump the coefficients of a named series.
    Coeffs(CoeffsArgs),
    /// Time representative kernel operations and identity verifications.
    Bench(BenchArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated identity ids (see `list`).
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    identity: Vec<String>,
    /// Verify every registered identity.
    #[arg(long)]
    all: bool,
    /// Truncation order as a rational with denominator 1 or 2 (e.g. 30, 61/2).
    #[arg(long, default_value = "30")]
    order: String,
    /// Family depths k (each >= 2) for the family identities.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u32, 3])]
    k: Vec<u32>,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Write the report to a file (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Audit every double-sum enumeration bound before verifying.
    #[arg(long)]
    self_audit: bool,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Series id: R | H | K | g2_cleared | g3_cleared | euler | euler2 |
    /// prefactor | prefactor_q2, or `<identity-id>:lhs` / `<identity-id>:rhs`.
    series: String,
    /// Truncation order (rational, denominator 1 or 2).
    #[arg(long)]
    order: String,
    /// Print only the coefficient of this z-power per q-exponent.
    #[arg(long)]
    z_slice: Option<i64>,
    /// Family depth k, required when dumping a family identity side.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args)]
struct BenchArgs {
    /// Truncation order for the timed operations.
    #[arg(long, default_value = "30")]
    order: String,
    /// Repetitions per row (the minimum is reported).
    #[arg(long, default_value_t = 3)]
    reps: u32,
    /// Emit the table as JSON.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads() {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::List { json } => cmd_list(json),
        Command::Verify(args) => return cmd_verify(&args),
        Command::Coeffs(args) => cmd_coeffs(&args),
        Command::Bench(args) => cmd_bench(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    match std::env::var("BAILEYFORGE_THREADS") {
        Ok(v) => {
            let n: usize = v
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| anyhow!("BAILEYFORGE_THREADS must be a positive integer, got `{v}`"))?;
            exec::configure_threads(Some(n));
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

fn parse_order(s: &str) -> anyhow::Result<HalfExp> {
    let order = HalfExp::parse_rational(s).map_err(|e| anyhow!("{e}"))?;
    if order <= HalfExp::ZERO {
        return Err(anyhow!("order must be positive, got {order}"));
    }
    Ok(order)
}

// ---------------------------------------------------------------------------
// list
// ---------------------------------------------------------------------------

fn cmd_list(as_json: bool) -> anyhow::Result<()> {
    let catalog = IdentityCatalog::standard();
    if as_json {
        let entries: Vec<_> = catalog
            .cases()
            .iter()
            .map(|c| {
                json!({
                    "id": c.id(),
                    "paper_location": c.location(),
                    "family": c.is_family(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&entries)?);
    } else {
        for c in catalog.cases() {
            let k = if c.is_family() { " (takes k)" } else { "" };
            println!("{:<18} {}{}", c.id(), c.location(), k);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    match run_verify(args) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run_verify(args: &VerifyArgs) -> anyhow::Result<bool> {
    let order = parse_order(&args.order)?;
    let catalog = IdentityCatalog::standard();

    let ids: Vec<String> = if args.all {
        catalog.ids().map(str::to_string).collect()
    } else if args.identity.is_empty() {
        return Err(anyhow!("pass --identity <id[,id...]> or --all"));
    } else {
        args.identity.clone()
    };

    for k in &args.k {
        if *k < 2 {
            return Err(anyhow!("family parameter k must be >= 2, got {k}"));
        }
    }

    // Usage-level validation happens before any verification work.
    let mut jobs: Vec<(String, Option<u32>)> = Vec::new();
    for id in &ids {
        let case = catalog
            .get(id)
            .ok_or_else(|| anyhow!("unknown identity id `{id}` (see `baileyforge list`)"))?;
        if case.is_family() {
            for &k in &args.k {
                jobs.push((id.clone(), Some(k)));
            }
        } else {
            jobs.push((id.clone(), None));
        }
    }

    if args.self_audit {
        for spec in catalog.all_double_sum_specs(&args.k) {
            spec.audit(order)
                .map_err(|e| anyhow!("self-audit failed: {e}"))?;
        }
    }

    let catalog = &catalog;
    let mut reports: Vec<VerificationReport> = exec::map_collect(jobs, move |(id, k)| {
        catalog
            .verify(&id, order, k)
            .expect("ids and k pre-validated")
    });
    reports.sort_by(|a, b| (a.id.as_str(), a.k).cmp(&(b.id.as_str(), b.k)));

    let all_passed = reports.iter().all(VerificationReport::passed);
    let payload = render_verify(&reports, order, args)?;
    match &args.out {
        Some(path) => write_atomic(path, &payload)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{payload}"),
    }
    Ok(all_passed)
}

fn render_verify(
    reports: &[VerificationReport],
    order: HalfExp,
    args: &VerifyArgs,
) -> anyhow::Result<String> {
    if args.json {
        let doc = json!({
            "schema": SCHEMA_VERSION,
            "order": order.to_string(),
            "self_audit": args.self_audit,
            "note": format!(
                "verified to order {order} (truncated-series equality), not a proof"
            ),
            "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
        });
        Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
    } else {
        let mut out = String::new();
        for r in reports {
            out.push_str(&r.text_line());
            out.push('\n');
        }
        let (pass, total) = (
            reports.iter().filter(|r| r.passed()).count(),
            reports.len(),
        );
        out.push_str(&format!("{pass}/{total} checks passed at order {order}\n"));
        Ok(out)
    }
}

fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// coeffs
// ---------------------------------------------------------------------------

fn build_series(name: &str, order: HalfExp, k: Option<u32>) -> anyhow::Result<QSeries> {
    let s = match name {
        "R" => series_r(order),
        "H" => series_h(order),
        "K" => series_k(order),
        "g2_cleared" => series_g2_cleared(order),
        "g3_cleared" => series_g3_cleared(order),
        "euler" => euler(order),
        "euler2" => euler_q2(order),
        "prefactor" => prefactor(order),
        "prefactor_q2" => prefactor_q2(order),
        other => {
            let (id, side) = other
                .rsplit_once(':')
                .filter(|(_, side)| matches!(*side, "lhs" | "rhs"))
                .ok_or_else(|| anyhow!(CoreError::UnknownSeries(other.to_string())))?;
            let catalog = IdentityCatalog::standard();
            let case = catalog
                .get(id)
                .ok_or_else(|| anyhow!(CoreError::UnknownSeries(other.to_string())))?;
            let k = if case.is_family() {
                let k = k.ok_or_else(|| anyhow!("series `{other}` needs --k (k >= 2)"))?;
                if k < 2 {
                    return Err(anyhow!("family parameter k must be >= 2, got {k}"));
                }
                k
            } else {
                1
            };
            if side == "lhs" {
                case.lhs(order, k)?
            } else {
                case.rhs(order, k)?
            }
        }
    };
    Ok(s)
}

/// Line-oriented dump: one line per nonzero q-exponent,
/// `q^<e>: <z1>:<c1> <z2>:<c2> ...` with z-exponents ascending.
fn cmd_coeffs(args: &CoeffsArgs) -> anyhow::Result<()> {
    let order = parse_order(&args.order)?;
    let series = build_series(&args.series, order, args.k)?;
    let mut out = String::new();
    for (e, poly) in series.terms() {
        match args.z_slice {
            Some(z) => {
                let c = poly.coeff(z);
                if c != 0.into() {
                    out.push_str(&format!("q^{e}: {c}\n"));
                }
            }
            None => {
                let cols: Vec<String> = poly.iter().map(|(z, c)| format!("{z}:{c}")).collect();
                out.push_str(&format!("q^{e}: {}\n", cols.join(" ")));
            }
        }
    }
    print!("{out}");
    Ok(())
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

fn time_best(reps: u32, mut f: impl FnMut()) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..reps.max(1) {
        let t = Instant::now();
        f();
        best = best.min(t.elapsed().as_secs_f64() * 1e3);
    }
    best
}

fn cmd_bench(args: &BenchArgs) -> anyhow::Result<()> {
    let order = parse_order(&args.order)?;
    let reps = args.reps;
    let catalog = IdentityCatalog::standard();

    let p = prefactor(order);
    let r = series_r(order);
    let e = euler(order);
    let mut rows: Vec<(String, f64)> = Vec::new();
    rows.push((
        format!("kernel/mul(prefactor, R) order={order}"),
        time_best(reps, || {
            std::hint::black_box(p.mul(&r));
        }),
    ));
    rows.push((
        format!("kernel/invert_unit((q;q)_inf) order={order}"),
        time_best(reps, || {
            std::hint::black_box(e.invert_unit().unwrap());
        }),
    ));
    for id in ["thm1.1-compact", "eq1.5-H"] {
        rows.push((
            format!("identity/{id} order={order}"),
            time_best(reps, || {
                let report = catalog.verify(id, order, None).unwrap();
                assert!(report.passed(), "{}", report.text_line());
            }),
        ));
    }

    if args.json {
        let doc = json!({
            "order": order.to_string(),
            "reps": reps,
            "rows": rows
                .iter()
                .map(|(name, ms)| json!({ "name": name, "best_ms": ms }))
                .collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        for (name, ms) in &rows {
            println!("{name:<55} {ms:>10.3} ms");
        }
    }
    Ok(())
}
