//! Command-line surface: theorem checks, DDT spectra, monodromy statistics,
//! threshold arithmetic, and reproduction of the built-in worked examples.
//! Exit codes: 0 concluded/success, 2 theorem inapplicable, 1 error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use diffuni::gf2n::FieldContext;
use diffuni::poly::{Degree10Coeffs, Poly};
use diffuni::theorems::{self, Conclusion, ConditionReport, StatsMode};
use diffuni::uniformity::{
    ddt_row_with_guard, delta_full_with_guard, row_to_csv, DEFAULT_ROW_GUARD_BITS,
    DELTA_FULL_MAX_N,
};
use serde_json::{json, Value};

mod reproduce;

#[derive(Parser)]
#[command(
    name = "diffuni",
    version,
    about = "Differential-uniformity toolkit for polynomials over GF(2^n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the theorem conditions on a degree-10 polynomial
    Check(CheckArgs),
    /// Compute one DDT row (CSV) or the full differential uniformity
    Analyze(AnalyzeArgs),
    /// Sample factorization statistics of specializations g(x) - t0
    Stats(StatsArgs),
    /// Genus bound and certification threshold from the point-count estimate
    Bounds(BoundsArgs),
    /// Re-run the built-in worked examples against stored reports
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Extension degree n of GF(2^n)
    #[arg(long)]
    n: u32,
    /// Irreducible modulus bits in hex (default: smallest for this n)
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn context(&self) -> Result<FieldContext> {
        let modulus = self
            .modulus
            .as_deref()
            .map(|s| u64::from_str_radix(s.trim_start_matches("0x"), 16))
            .transpose()
            .context("modulus must be a hex integer")?;
        Ok(FieldContext::new(self.n, modulus)?)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Emit machine-readable JSON
    #[arg(long)]
    json: bool,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, text: String) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .with_context(|| format!("writing {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Coefficients a_0,...,a_10 in hex, leading coefficient first
    #[arg(long)]
    poly: String,
    /// Direction alpha in hex (a_1 = a_3 = 0 family only; sweeps when omitted)
    #[arg(long)]
    alpha: Option<String>,
    /// Cap the alpha sweep at this many directions
    #[arg(long)]
    sweep_cap: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Coefficients in hex, leading first; any degree
    #[arg(long)]
    poly: String,
    /// Row direction alpha in hex
    #[arg(long)]
    alpha: Option<String>,
    /// Scan all directions for the full differential uniformity
    #[arg(long)]
    full: bool,
    /// Largest n a single-row scan accepts
    #[arg(long, default_value_t = DEFAULT_ROW_GUARD_BITS)]
    guard_bits: u32,
    /// Largest n a --full scan accepts
    #[arg(long, default_value_t = DELTA_FULL_MAX_N)]
    full_max_n: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Cubic companion g = L_{a_1} f, generic S_3 monodromy
    CubicS3,
    /// Reduced quartic at a split direction, Klein monodromy
    QuarticKlein,
}

impl From<ModeArg> for StatsMode {
    fn from(m: ModeArg) -> StatsMode {
        match m {
            ModeArg::CubicS3 => StatsMode::CubicS3,
            ModeArg::QuarticKlein => StatsMode::QuarticKlein,
        }
    }
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Coefficients a_0,...,a_10 in hex, leading first
    #[arg(long)]
    poly: String,
    /// Direction alpha in hex
    #[arg(long)]
    alpha: String,
    /// Which specialization family to sample
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, default_value_t = theorems::DEFAULT_STATS_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = theorems::DEFAULT_STATS_SEED)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BoundsArgs {
    /// Number of omega-classes d
    #[arg(long)]
    d_omega: u64,
    /// Degree of the discriminant-style polynomial D(t)
    #[arg(long)]
    deg_d: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Emit machine-readable JSON
    #[arg(long)]
    json: bool,
    /// Print freshly computed scenario reports (baseline regeneration aid)
    #[arg(long)]
    print_actual: bool,
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn hex_width(n: u32, v: u64) -> String {
    format!("{:0width$x}", v, width = n.div_ceil(4) as usize)
}

fn render_report(report: &ConditionReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("theorem: {}\n", report.theorem.as_str()));
    s.push_str(&format!(
        "field: n = {}, modulus = {:x}\n",
        report.n, report.modulus
    ));
    for c in &report.conditions {
        let tag = if c.pass { "pass" } else { "FAIL" };
        s.push_str(&format!("  [{tag}] {}: {}\n", c.name, c.witness));
    }
    match report.alpha_used {
        Some(a) => s.push_str(&format!("alpha: {}\n", hex_width(report.n, a))),
        None => s.push_str("alpha: none\n"),
    }
    s.push_str(&format!(
        "conclusion: {} (threshold n >= {})\n",
        report.conclusion.as_str(),
        report.min_n
    ));
    s
}

fn run_check(args: CheckArgs) -> Result<u8> {
    let ctx = args.field.context()?;
    let coeffs = Degree10Coeffs::parse(&ctx, &args.poly)?;
    let monic = coeffs.monic(&ctx)?;
    let report = if monic.a[1] == 0 && monic.a[3] == 0 {
        let alpha = args
            .alpha
            .as_deref()
            .map(|s| ctx.parse_element(s))
            .transpose()?;
        theorems::thm2_check(&ctx, &coeffs, alpha, args.sweep_cap)?
    } else {
        if args.alpha.is_some() {
            bail!("--alpha applies to the a_1 = a_3 = 0 family; the main criterion fixes alpha = a_1");
        }
        if args.sweep_cap.is_some() {
            bail!("--sweep-cap applies to the a_1 = a_3 = 0 family sweep");
        }
        theorems::thm_main_check(&ctx, &coeffs)?
    };
    let text = if args.output.json {
        pretty(&report.to_json())
    } else {
        render_report(&report)
    };
    args.output.emit(text)?;
    Ok(if report.conclusion == Conclusion::Inapplicable {
        2
    } else {
        0
    })
}

fn run_analyze(args: AnalyzeArgs) -> Result<u8> {
    let ctx = args.field.context()?;
    let f = Poly::parse(&ctx, &args.poly)?;
    if args.full == args.alpha.is_some() {
        bail!("pass exactly one of --alpha or --full");
    }
    if args.full {
        let clock = Instant::now();
        let summary = delta_full_with_guard(&ctx, &f, args.full_max_n)?;
        let runtime_ms = clock.elapsed().as_millis() as u64;
        let text = if args.output.json {
            pretty(&json!({
                "delta": summary.delta,
                "alpha": hex_width(ctx.n(), summary.alpha),
                "beta": hex_width(ctx.n(), summary.beta),
                "runtime_ms": runtime_ms,
            }))
        } else {
            format!(
                "delta = {} at (alpha, beta) = ({}, {}) in {} ms\n",
                summary.delta,
                hex_width(ctx.n(), summary.alpha),
                hex_width(ctx.n(), summary.beta),
                runtime_ms
            )
        };
        args.output.emit(text)?;
        return Ok(0);
    }
    let alpha = ctx.parse_element(args.alpha.as_deref().expect("checked above"))?;
    let row = ddt_row_with_guard(&ctx, &f, alpha, args.guard_bits)?;
    let text = if args.output.json {
        pretty(&json!({
            "alpha": hex_width(ctx.n(), row.alpha),
            "d_degree": row.d_degree,
            "delta_alpha": row.delta_alpha,
            "counts": row.counts.iter().map(|&(beta, count)| json!({
                "beta": hex_width(ctx.n(), beta),
                "count": count,
            })).collect::<Vec<_>>(),
            "split_betas": row.split_betas.iter()
                .map(|&b| hex_width(ctx.n(), b))
                .collect::<Vec<_>>(),
        }))
    } else {
        row_to_csv(&ctx, &row)
    };
    args.output.emit(text)?;
    Ok(0)
}

fn run_stats(args: StatsArgs) -> Result<u8> {
    let ctx = args.field.context()?;
    let coeffs = Degree10Coeffs::parse(&ctx, &args.poly)?;
    let alpha = ctx.parse_element(&args.alpha)?;
    let mode: StatsMode = args.mode.into();
    let hist = theorems::monodromy_stats(&ctx, &coeffs, alpha, mode, args.samples, args.seed)?;
    let text = if args.output.json {
        pretty(&hist.to_json(mode))
    } else {
        let mut s = format!(
            "mode: {}\nsamples: {} ({} excluded as non-squarefree)\n",
            mode.as_str(),
            hist.samples,
            hist.excluded
        );
        for (pattern, count) in &hist.counts {
            let shape = pattern
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let freq = hist.frequency(pattern);
            match theorems::expected_density(mode, pattern) {
                Some(e) => s.push_str(&format!(
                    "  pattern {shape}: {count} (frequency {freq:.4}, expected {e:.4})\n"
                )),
                None => s.push_str(&format!("  pattern {shape}: {count} (frequency {freq:.4})\n")),
            }
        }
        s
    };
    args.output.emit(text)?;
    Ok(0)
}

fn run_bounds(args: BoundsArgs) -> Result<u8> {
    let params = theorems::chebotarev_threshold(args.d_omega, args.deg_d)?;
    let text = if args.output.json {
        pretty(&params.to_json())
    } else {
        format!(
            "g_bound = {}\nmin_n = {}\nvalue lower bound at n = {}: {}/{} per omega-class\n",
            params.g_bound, params.min_n, params.n, params.v_lower_bound.0, params.v_lower_bound.1
        )
    };
    args.output.emit(text)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check(args) => run_check(args),
        Command::Analyze(args) => run_analyze(args),
        Command::Stats(args) => run_stats(args),
        Command::Bounds(args) => run_bounds(args),
        Command::Reproduce(args) => reproduce::run(args.json, args.print_actual),
    }
}

/// Restore the default SIGPIPE disposition so `diffuni ... | head` dies
/// quietly like any other filter instead of panicking on a closed pipe.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
