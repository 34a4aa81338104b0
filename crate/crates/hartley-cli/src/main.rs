//! `hartley` — fast discrete Hartley transforms for small blocklengths.
//!
//! Subcommands:
//! * `transform` applies the forward or inverse transform to every signal
//!   in a CSV or JSON file.
//! * `verify` checks each fast kernel against the direct-summation oracle
//!   on random inputs.
//! * `counts` audits achieved operation counts against the claimed targets.
//! * `bench` times the fast kernels against direct summation.
//!
//! Exit codes: 0 on success, 1 when verification or input validation
//! fails, 2 on command-line usage errors.

mod audit;
mod io;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hartley::{
    batch_transform, fast_dht, inverse_dht, naive_dht, registry, Direction, Signal, Spectrum,
    SUPPORTED_LENGTHS,
};
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(
    name = "hartley",
    version,
    about = "Minimal-multiplication discrete Hartley transforms for blocklengths 3, 5, 6, 12, and 24"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform every signal in a file and write the results.
    Transform(TransformArgs),
    /// Check the fast kernels against the direct-summation oracle.
    Verify(VerifyArgs),
    /// Report achieved operation counts against the claimed targets.
    Counts(CountsArgs),
    /// Time the fast kernels against direct summation.
    Bench(BenchArgs),
}

#[derive(Args)]
struct TransformArgs {
    /// File containing the input signals.
    #[arg(long)]
    input: PathBuf,
    /// File the transformed signals are written to.
    #[arg(long)]
    output: PathBuf,
    /// Transform direction.
    #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
    direction: DirectionArg,
    /// Evaluation strategy: factored kernels or direct summation.
    #[arg(long, value_enum, default_value_t = ModeArg::Fast)]
    mode: ModeArg,
    /// File format for both input and output.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Print the per-call operation counts (fast mode only).
    #[arg(long)]
    counts: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["n", "all"])))]
struct VerifyArgs {
    /// Blocklength to verify.
    n: Option<usize>,
    /// Verify every supported blocklength.
    #[arg(long)]
    all: bool,
    /// Largest acceptable deviation from the oracle.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Emit the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CountsArgs {
    /// Emit the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["n", "all"])))]
struct BenchArgs {
    /// Blocklength to benchmark.
    n: Option<usize>,
    /// Benchmark every supported blocklength.
    #[arg(long)]
    all: bool,
    /// Number of random signals to transform per strategy.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    iters: u64,
    /// Seed for the random signal generator.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Fast,
    Naive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for io::SignalFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Csv => io::SignalFormat::Csv,
            FormatArg::Json => io::SignalFormat::Json,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Transform(args) => cmd_transform(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Counts(args) => cmd_counts(&args),
        Command::Bench(args) => cmd_bench(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn cmd_transform(args: &TransformArgs) -> Result<ExitCode, String> {
    let format: io::SignalFormat = args.format.into();
    let rows = io::read_signals(&args.input, format)?;
    let signals = rows
        .into_iter()
        .enumerate()
        .map(|(idx, row)| {
            Signal::new(row).map_err(|e| format!("{}: signal {}: {}", args.input.display(), idx, e))
        })
        .collect::<Result<Vec<Signal<f64>>, String>>()?;
    let n = signals[0].len();

    let transformed: Vec<Vec<f64>> = match args.mode {
        ModeArg::Fast => {
            let direction = match args.direction {
                DirectionArg::Forward => Direction::Forward,
                DirectionArg::Inverse => Direction::Inverse,
            };
            batch_transform(&signals, direction)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(Spectrum::into_vec)
                .collect()
        }
        ModeArg::Naive => signals
            .iter()
            .map(|signal| match args.direction {
                DirectionArg::Forward => naive_dht(signal).into_vec(),
                DirectionArg::Inverse => inverse_dht(&Spectrum::from(signal.clone())).into_vec(),
            })
            .collect(),
    };

    io::write_signals(&args.output, format, &transformed)?;

    if args.counts {
        match args.mode {
            ModeArg::Fast => {
                let count = registry()
                    .get(n)
                    .expect("batch transform succeeded, so the length is supported")
                    .op_count();
                println!(
                    "N={}: {} multiplications ({} rational), {} additions per transform; {} signal(s) processed",
                    n,
                    count.multiplications,
                    count.rational_multiplications,
                    count.additions,
                    transformed.len()
                );
            }
            ModeArg::Naive => {
                println!("operation counts are only tracked in fast mode");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn requested_lengths(n: Option<usize>, all: bool) -> Result<Vec<usize>, String> {
    if all {
        return Ok(audit::all_lengths());
    }
    let n = n.expect("clap guarantees a blocklength when --all is absent");
    if SUPPORTED_LENGTHS.contains(&n) {
        Ok(vec![n])
    } else {
        Err(format!(
            "blocklength {} is not supported; supported blocklengths are {{3, 5, 6, 12, 24}}",
            n
        ))
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let lengths = requested_lengths(args.n, args.all)?;
    if !args.tol.is_finite() || args.tol <= 0.0 {
        return Err(format!("tolerance must be positive and finite, got {}", args.tol));
    }
    let report = audit::build_report(&lengths, args.tol);
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
        );
    } else {
        print!("{}", audit::render_verify_table(&report));
    }
    if report.all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_counts(args: &CountsArgs) -> Result<ExitCode, String> {
    let report = audit::build_report(&audit::all_lengths(), 1e-12);
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
        );
    } else {
        print!("{}", audit::render_counts_table(&report));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode, String> {
    let lengths = requested_lengths(args.n, args.all)?;
    let iters = args.iters as usize;
    println!("benchmark: {} random signal(s) per strategy, seed {}", iters, args.seed);
    println!("(timings are informational; numerical outputs are deterministic for a fixed seed)");
    for &n in &lengths {
        bench_one(n, iters, args.seed)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn bench_one(n: usize, iters: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let amplitude = Uniform::new_inclusive(-1.0f64, 1.0);
    let signals: Vec<Signal<f64>> = (0..iters)
        .map(|_| {
            Signal::new((0..n).map(|_| amplitude.sample(&mut rng)).collect())
                .expect("sampled values are finite")
        })
        .collect();

    let mut fast_times = Vec::with_capacity(iters);
    let mut check = 0.0f64;
    for signal in &signals {
        let start = Instant::now();
        let spectrum = fast_dht(signal).map_err(|e| e.to_string())?;
        fast_times.push(start.elapsed());
        check += spectrum.iter().map(|x| x.abs()).sum::<f64>();
    }

    let mut naive_times = Vec::with_capacity(iters);
    for signal in &signals {
        let start = Instant::now();
        let spectrum = naive_dht(signal);
        naive_times.push(start.elapsed());
        std::hint::black_box(&spectrum);
    }

    let count = registry()
        .get(n)
        .expect("benchmarked lengths are supported")
        .op_count();
    let fast_median = median_micros(&mut fast_times);
    let naive_median = median_micros(&mut naive_times);
    println!("N={}", n);
    println!(
        "  fast : median {:.3} us/transform; {} mult, {} add per transform",
        fast_median, count.multiplications, count.additions
    );
    println!(
        "  naive: median {:.3} us/transform; {} mult, {} add per transform",
        naive_median,
        n * n,
        n * (n - 1)
    );
    println!("  output check: {}", check);
    Ok(())
}

fn median_micros(times: &mut [Duration]) -> f64 {
    times.sort_unstable();
    let mid = times.len() / 2;
    let median = if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2
    };
    median.as_nanos() as f64 / 1000.0
}
