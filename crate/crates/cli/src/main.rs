//! `permut3`: sweeps of the characteristic-3 trinomial criterion, the
//! symbolic replay, single-pair diagnostics and one-shot polynomial queries.

mod poly;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use permut3::ppcheck::sweep::{run_sweep, SweepConfig, SweepMode, SweepSummary};
use permut3::ppcheck::{condition_1_4, is_pp_bruteforce, MuChecker, TrinomialInstance};
use permut3::replay::{run_all, FixtureSet, FIXTURES_ENV, SCHEMA};
use permut3::{make_tower, FieldCtx};

#[derive(Parser)]
#[command(name = "permut3", version, about = "Permutation trinomials over F_{q^2}, q = 3^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the permutation property with the closed-form condition.
    Sweep(SweepArgs),
    /// Re-run every symbolic computation against the fixtures.
    Replay(ReplayArgs),
    /// Diagnostics for a single (a, b).
    Pair(PairArgs),
    /// Resultant, gcd, irreducibility or reduction of polynomials over F_3.
    Poly(poly::PolyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Sample,
}

#[derive(Args)]
struct SweepArgs {
    /// q = 3^n.
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Mode::Full)]
    mode: Mode,
    #[arg(long, default_value_t = 100_000)]
    sample_size: usize,
    /// Required in sample mode.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// JSONL output; the summary goes next to it as `<out>.summary.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    /// Directory of `.fix` files; the built-in copies are used otherwise.
    #[arg(long, env = FIXTURES_ENV)]
    fixtures: Option<PathBuf>,
    /// Run the steps one after another.
    #[arg(long)]
    serial: bool,
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flip the leading sign of one fixture (fault injection).
    #[arg(long, hide = true)]
    corrupt: Option<String>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    n: u32,
    /// An element of F_{q^2} written `d0,..,d{n-1}+e0,..,e{n-1}*z`.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Replay(a) => cmd_replay(&a),
        Command::Pair(a) => cmd_pair(&a),
        Command::Poly(a) => poly::run(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            bail!("--jobs must be positive");
        }
        b = b.num_threads(j);
    }
    Ok(b.build()?)
}

fn tower(n: u32) -> Result<FieldCtx> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    make_tower(n).with_context(|| format!("building F_(3^{n})"))
}

#[derive(Serialize)]
struct Header {
    generated_at: String,
    command: String,
    jobs: usize,
}

#[derive(Serialize)]
struct SweepReport<'a> {
    schema: &'static str,
    header: Header,
    summary: &'a SweepSummary,
}

fn summary_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".summary.json");
    PathBuf::from(s)
}

fn cmd_sweep(a: &SweepArgs) -> Result<bool> {
    let mode = match (a.mode, a.seed) {
        (Mode::Full, _) if a.n > 3 => bail!("full sweeps are limited to n <= 3; use --mode sample"),
        (Mode::Full, _) => SweepMode::Full,
        (Mode::Sample, Some(seed)) => SweepMode::Sample { size: a.sample_size, seed },
        (Mode::Sample, None) => bail!("--mode sample requires --seed"),
    };
    let ctx = tower(a.n)?;
    let out = a.out.clone().unwrap_or_else(|| {
        let tag = if mode == SweepMode::Full { "full" } else { "sample" };
        PathBuf::from(format!("sweep-n{}-{tag}.jsonl", a.n))
    });
    // fail on an unwritable path before the sweep runs
    let file = File::create(&out).with_context(|| format!("cannot write {}", out.display()))?;
    let pool = pool(a.jobs)?;
    let outcome = pool.install(|| run_sweep(&ctx, &SweepConfig::standard(a.n, mode)))?;

    let mut w = BufWriter::new(file);
    for row in &outcome.rows {
        serde_json::to_writer(&mut w, row)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;

    let report = SweepReport {
        schema: SCHEMA,
        header: Header {
            generated_at: chrono::Utc::now().to_rfc3339(),
            command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
            jobs: pool.current_num_threads(),
        },
        summary: &outcome.summary,
    };
    let text = serde_json::to_string_pretty(&report)?;
    std::fs::write(summary_path(&out), format!("{text}\n"))?;
    println!("{text}");
    Ok(outcome.summary.mismatches == 0)
}

fn cmd_replay(a: &ReplayArgs) -> Result<bool> {
    let corrupt = a.corrupt.as_deref();
    let fx = match &a.fixtures {
        Some(dir) => FixtureSet::load_dir_with(dir, corrupt)?,
        None => FixtureSet::from_sources(&permut3::replay::fixtures::EMBEDDED, corrupt)?,
    };
    let report = pool(a.jobs)?.install(|| run_all(&fx, !a.serial));
    let text = serde_json::to_string_pretty(&report)?;
    match &a.out {
        Some(p) => std::fs::write(p, format!("{text}\n")).with_context(|| format!("cannot write {}", p.display()))?,
        None => println!("{text}"),
    }
    eprint!("{}", report.summary());
    Ok(report.all_pass())
}

#[derive(Serialize)]
struct PairReport {
    schema: &'static str,
    q: u32,
    a: String,
    b: String,
    /// Zeros of b x^3 + x + a on μ_{q+1}.
    poles: Vec<String>,
    /// h permutes μ_{q+1}.
    pp: bool,
    /// Direct check over F_{q^2}, when it is small enough.
    pp_bruteforce: Option<bool>,
    cond14: bool,
    agree: bool,
}

fn cmd_pair(a: &PairArgs) -> Result<bool> {
    let ctx = tower(a.n)?;
    let x = ctx.parse(&a.a).context("--a")?;
    let y = ctx.parse(&a.b).context("--b")?;
    let inst = TrinomialInstance::new(&ctx, x, y)?;
    let checker = MuChecker::new(&ctx);
    let pp = checker.is_pp(x, y);
    let pp_bruteforce = if a.n <= 3 { Some(is_pp_bruteforce(&inst)?) } else { None };
    let cond14 = condition_1_4(&inst);
    let report = PairReport {
        schema: SCHEMA,
        q: ctx.q(),
        a: ctx.format(x),
        b: ctx.format(y),
        poles: checker.poles(x, y).into_iter().map(|p| ctx.format(p)).collect(),
        pp,
        pp_bruteforce,
        cond14,
        agree: pp == cond14 && pp_bruteforce.map_or(true, |b| b == pp),
    };
    serde_json::to_writer_pretty(io::stdout().lock(), &report)?;
    println!();
    Ok(report.agree)
}
