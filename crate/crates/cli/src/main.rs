//! Command-line front end: verify one field, scan a range with
//! machine-readable export, or inspect class groups and fundamental units.
//!
//! Exit codes: 0 success, 1 at least one verification check failed,
//! 2 usage or input error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use quadgenus::forms::class_group;
use quadgenus::quadfield::{fundamental_discriminants, fundamental_unit, DEFAULT_FACTOR_BOUND};
use quadgenus::{
    verify_discriminant, FinAbGroup, FundamentalDiscriminant, QuadInt, VerificationReport,
    VerifyConfig,
};

/// Environment override for the largest tolerated prime factor; the
/// --factor-bound flag wins over it.
const FACTOR_BOUND_ENV: &str = "QUADGENUS_FACTOR_BOUND";

const CSV_HEADER: &str = "delta,h,h_narrow,t,ramified_primes,norm_eps,idx_Q,idx_E,idx_coh,\
                          am_actual,am_predicted,amst_actual,amst_predicted,all_checks_pass,\
                          ms_elapsed";

#[derive(Parser)]
#[command(name = "quadgenus", version, about = "Ambiguous class groups of quadratic fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify every class-number identity for one fundamental discriminant.
    Verify(VerifyArgs),
    /// Verify a range of fields and export one record per discriminant.
    Scan(ScanArgs),
    /// Print the class group with its reduced representative forms.
    Classgroup(DiscArg),
    /// Print the fundamental unit and its norm.
    Pell(DiscArg),
}

#[derive(Args)]
struct VerifyArgs {
    /// Fundamental discriminant.
    #[arg(long, allow_hyphen_values = true)]
    disc: i64,
    /// Largest prime factor tolerated when factoring ideals.
    #[arg(long)]
    factor_bound: Option<u64>,
}

#[derive(Args)]
struct DiscArg {
    /// Fundamental discriminant.
    #[arg(long, allow_hyphen_values = true)]
    disc: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sign {
    Negative,
    Positive,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct ScanArgs {
    /// Smallest discriminant (default: -10000, or 5 with --sign positive).
    #[arg(long, allow_hyphen_values = true)]
    min: Option<i64>,
    /// Largest discriminant (default: 5000, or -3 with --sign negative).
    #[arg(long, allow_hyphen_values = true)]
    max: Option<i64>,
    #[arg(long, value_enum, default_value_t = Sign::Both)]
    sign: Sign,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Largest prime factor tolerated when factoring ideals.
    #[arg(long)]
    factor_bound: Option<u64>,
    /// Stop at the first discriminant with a failing check.
    #[arg(long)]
    fail_fast: bool,
}

fn main() {
    std::process::exit(match Cli::parse().cmd {
        Cmd::Verify(args) => cmd_verify(&args),
        Cmd::Scan(args) => cmd_scan(&args),
        Cmd::Classgroup(args) => cmd_classgroup(&args),
        Cmd::Pell(args) => cmd_pell(&args),
    })
}

fn field_or_usage(disc: i64) -> Result<FundamentalDiscriminant, i32> {
    FundamentalDiscriminant::new(disc).map_err(|e| {
        eprintln!("error: {e}");
        2
    })
}

fn resolve_factor_bound(flag: Option<u64>) -> Result<u64, i32> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(FACTOR_BOUND_ENV) {
        Ok(s) => s.trim().parse().map_err(|e| {
            eprintln!("error: bad {FACTOR_BOUND_ENV} value {s:?}: {e}");
            2
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_FACTOR_BOUND),
        Err(e) => {
            eprintln!("error: bad {FACTOR_BOUND_ENV} value: {e}");
            Err(2)
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let fd = match field_or_usage(args.disc) {
        Ok(fd) => fd,
        Err(code) => return code,
    };
    let factor_bound = match resolve_factor_bound(args.factor_bound) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let report = match verify_discriminant(&fd, &VerifyConfig { factor_bound }) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    print_report(&report);
    i32::from(!report.all_checks_pass())
}

fn print_report(r: &VerificationReport) {
    let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
    println!("delta: {}", r.delta);
    println!("h: {} (narrow {})", r.h, r.h_narrow);
    println!("t: {} (ramified primes {})", r.t, join_primes(&r.ramified_primes));
    println!("norm_eps: {}", r.norm_eps);
    println!("idx_Q: {}, idx_E: {}, idx_coh: {}", r.idx_q, r.idx_e, r.idx_coh);
    println!("am: {} (predicted {})", r.am_actual, r.am_predicted);
    println!("amst: {} (predicted {})", r.amst_actual, r.amst_predicted);
    println!("checks:");
    println!("  eq1: {}", status(r.checks.eq1));
    println!("  eq2: {}", status(r.checks.eq2));
    println!("  prop2_sequence: {}", status(r.checks.prop2_sequence));
    println!("  lemma4: {}", status(r.checks.lemma4));
    println!("  eq56_index: {}", status(r.checks.eq56_index));
    println!("  thm5: {}", status(r.checks.thm5));
    println!("  sigma_inversion: {}", status(r.checks.sigma_inversion));
    println!(
        "overall: {} ({} ms)",
        status(r.checks.all_pass()),
        r.ms_elapsed
    );
}

fn join_primes(primes: &[i64]) -> String {
    primes
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_row(r: &VerificationReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.delta,
        r.h,
        r.h_narrow,
        r.t,
        join_primes(&r.ramified_primes),
        r.norm_eps,
        r.idx_q,
        r.idx_e,
        r.idx_coh,
        r.am_actual,
        r.am_predicted,
        r.amst_actual,
        r.amst_predicted,
        r.all_checks_pass(),
        r.ms_elapsed,
    )
}

fn cmd_scan(args: &ScanArgs) -> i32 {
    let (default_min, default_max) = match args.sign {
        Sign::Negative => (-10_000, -3),
        Sign::Positive => (5, 5_000),
        Sign::Both => (-10_000, 5_000),
    };
    let min = args.min.unwrap_or(default_min);
    let max = args.max.unwrap_or(default_max);
    if min > max {
        eprintln!("error: empty range {min}..{max}");
        return 2;
    }
    let factor_bound = match resolve_factor_bound(args.factor_bound) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let cfg = VerifyConfig { factor_bound };

    let mut fields: Vec<FundamentalDiscriminant> = fundamental_discriminants(min, max)
        .into_iter()
        .filter(|fd| match args.sign {
            Sign::Negative => fd.value() < 0,
            Sign::Positive => fd.value() > 0,
            Sign::Both => true,
        })
        .collect();
    fields.sort_by_key(|fd| (fd.value().unsigned_abs(), fd.value()));

    // Open the sink before computing anything so a bad path fails fast.
    let mut out: BufWriter<Box<dyn Write>> = match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => BufWriter::new(Box::new(f)),
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        },
        None => BufWriter::new(Box::new(io::stdout())),
    };

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return 2;
        }
    };

    eprintln!(
        "scanning {} fundamental discriminants in [{min}, {max}]",
        fields.len()
    );
    let start = Instant::now();
    let stop = AtomicBool::new(false);
    // Ordered collect keeps the output independent of completion order.
    let results: Vec<Option<_>> = pool.install(|| {
        fields
            .par_iter()
            .map(|fd| {
                if stop.load(Ordering::Relaxed) {
                    return None;
                }
                let res = verify_discriminant(fd, &cfg);
                let failed = match &res {
                    Ok(r) => !r.all_checks_pass(),
                    Err(_) => true,
                };
                if args.fail_fast && failed {
                    stop.store(true, Ordering::Relaxed);
                }
                Some(res)
            })
            .collect()
    });

    let mut written = 0u64;
    let mut failures = 0u64;
    let mut errors = 0u64;
    let mut io_result = write_header(&mut out, args.format);
    if io_result.is_ok() {
        'records: for (fd, slot) in fields.iter().zip(results) {
            let Some(res) = slot else {
                break; // remainder skipped after a fail-fast stop
            };
            match res {
                Ok(report) => {
                    io_result = write_record(&mut out, args.format, &report);
                    if io_result.is_err() {
                        break 'records;
                    }
                    written += 1;
                    if !report.all_checks_pass() {
                        failures += 1;
                        eprintln!("FAIL: delta {} {:?}", report.delta, report.checks);
                        if args.fail_fast {
                            break;
                        }
                    }
                }
                Err(e) => {
                    errors += 1;
                    eprintln!("error: delta {}: {e}", fd.value());
                    if args.fail_fast {
                        break;
                    }
                }
            }
        }
    }
    if io_result.is_ok() {
        io_result = out.flush();
    }
    if let Err(e) = io_result {
        eprintln!("error: cannot write output: {e}");
        return 2;
    }

    eprintln!(
        "scanned {written} fields in {:.1} s: {failures} with failing checks, {errors} errors",
        start.elapsed().as_secs_f64()
    );
    if errors > 0 {
        2
    } else {
        i32::from(failures > 0)
    }
}

fn write_header(out: &mut impl Write, format: Format) -> io::Result<()> {
    match format {
        Format::Csv => writeln!(out, "{CSV_HEADER}"),
        Format::Jsonl => Ok(()),
    }
}

fn write_record(out: &mut impl Write, format: Format, r: &VerificationReport) -> io::Result<()> {
    match format {
        Format::Csv => writeln!(out, "{}", csv_row(r)),
        Format::Jsonl => {
            let line = serde_json::to_string(r).expect("report serializes");
            writeln!(out, "{line}")
        }
    }
}

fn group_name(g: &FinAbGroup) -> String {
    let factors = g.invariant_factors();
    if factors.is_empty() {
        return "trivial".to_string();
    }
    factors
        .iter()
        .map(|f| format!("Z/{f}"))
        .collect::<Vec<_>>()
        .join(" x ")
}

fn cmd_classgroup(args: &DiscArg) -> i32 {
    let fd = match field_or_usage(args.disc) {
        Ok(fd) => fd,
        Err(code) => return code,
    };
    let g = class_group(&fd);
    let reps = g
        .reps()
        .iter()
        .map(|f| format!("({}, {}, {})", f.a(), f.b(), f.c()))
        .collect::<Vec<_>>()
        .join(", ");
    // The reduced forms represent the narrow classes; they only collapse
    // further for real fields whose ordinary group is smaller.
    println!("{}; representatives {}", group_name(g.narrow_group()), reps);
    if g.h() != g.h_narrow() {
        println!("ordinary class group: {}", group_name(g.wide_group()));
    }
    0
}

/// The fundamental unit in terms of the square root of the radicand
/// rather than the discriminant, e.g. 1 + sqrt(2) instead of
/// (2 + sqrt(8)) / 2.
fn unit_in_radical_form(eps: &QuadInt, delta: i64) -> String {
    let two = BigInt::from(2);
    let one = BigInt::from(1);
    let radical = |b: &BigInt, m: i64| {
        if *b == one {
            format!("sqrt({m})")
        } else {
            format!("{b} sqrt({m})")
        }
    };
    if delta % 4 == 0 {
        // sqrt(delta) = 2 sqrt(m), and the rational part is always even.
        let (m, a) = (delta / 4, eps.u() / &two);
        format!("{a} + {}", radical(eps.v(), m))
    } else if eps.u().is_multiple_of(&two) && eps.v().is_multiple_of(&two) {
        let (a, b) = (eps.u() / &two, eps.v() / &two);
        format!("{a} + {}", radical(&b, delta))
    } else {
        format!("({} + {}) / 2", eps.u(), radical(eps.v(), delta))
    }
}

fn cmd_pell(args: &DiscArg) -> i32 {
    let fd = match field_or_usage(args.disc) {
        Ok(fd) => fd,
        Err(code) => return code,
    };
    if fd.is_imaginary() {
        eprintln!("error: {} is imaginary and has no fundamental unit", args.disc);
        return 2;
    }
    let eps = fundamental_unit(args.disc);
    println!(
        "{}, norm {}",
        unit_in_radical_form(&eps, args.disc),
        eps.norm()
    );
    0
}
