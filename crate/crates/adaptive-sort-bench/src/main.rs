//! Benchmark CLI: runs an (algorithm x profile x S x repetition) grid, checks
//! the analytic cost bounds, and emits one CSV row per verified experiment.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use adaptive_sort::MinRun;
use adaptive_sort_bench::{
    check_bounds, emit_csv, run_grid, seed_from_env, Algo, GridSpec, Profile, RunConfig,
    DEFAULT_REPS, DEFAULT_SCALE, DEFAULT_S_VALUES,
};
use clap::Parser;

#[derive(Parser, Debug)]
#[command(
    name = "adaptive-sort-bench",
    about = "Instrumented benchmark grid for the adaptive-sort merge strategies",
    after_help = "Exit code 0 on success, 2 on any bound or correctness-oracle failure.\n\
                  The default seed comes from ADAPTIVE_SORT_SEED when set."
)]
struct Args {
    /// Algorithms to run (comma separated); all four by default.
    #[arg(long, value_delimiter = ',', value_parser = Algo::from_str)]
    algo: Vec<Algo>,

    /// Data-type profiles to run (comma separated); all four by default.
    #[arg(long, value_delimiter = ',', value_parser = Profile::from_str)]
    profile: Vec<Profile>,

    /// Scale N; input lengths are drawn uniformly from [ceil(9N/10), N].
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    size: u64,

    /// Presortedness values S (comma separated, each >= 2);
    /// defaults to 2,100,1000,10000,100000,1000000.
    #[arg(long, value_delimiter = ',')]
    presort: Vec<u64>,

    /// Base seed; repetitions derive per-row seeds from it deterministically.
    #[arg(long)]
    seed: Option<u64>,

    /// Repetitions per (algorithm, profile, S) cell.
    #[arg(long, default_value_t = DEFAULT_REPS)]
    reps: u32,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Evaluate the analytic cost bounds on every row; failures are reported
    /// on stderr and make the exit code 2.
    #[arg(long)]
    check_bounds: bool,

    /// Additionally compare every output against a reference stable sort
    /// (the sortedness and stability oracle always runs).
    #[arg(long)]
    verify: bool,

    /// Minimum run length: a number (1 disables boosting and keeps the move
    /// and comparison budgets exact), or `auto` for the halving rule.
    #[arg(long, default_value = "1")]
    min_run: String,
}

fn parse_min_run(value: &str) -> Result<MinRun, String> {
    if value == "auto" {
        return Ok(MinRun::TimsortRule);
    }
    match value.parse::<usize>() {
        Ok(len) if len >= 1 => Ok(MinRun::Fixed(len)),
        _ => Err(format!("--min-run expects a positive integer or `auto`, got `{value}`")),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let min_run = match parse_min_run(&args.min_run) {
        Ok(min_run) => min_run,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(1);
        }
    };

    let grid = GridSpec {
        algos: if args.algo.is_empty() { Algo::ALL.to_vec() } else { args.algo.clone() },
        profiles: if args.profile.is_empty() {
            Profile::ALL.to_vec()
        } else {
            args.profile.clone()
        },
        scale: args.size,
        s_values: if args.presort.is_empty() {
            DEFAULT_S_VALUES.to_vec()
        } else {
            args.presort.clone()
        },
        reps: args.reps,
        base_seed: args.seed.unwrap_or_else(seed_from_env),
    };
    if grid.scale < 1 {
        eprintln!("error: --size must be at least 1");
        return ExitCode::from(1);
    }
    if let Some(bad) = grid.s_values.iter().find(|&&s| s < 2) {
        eprintln!("error: presortedness values must be >= 2, got {bad}");
        return ExitCode::from(1);
    }
    let cfg = RunConfig { min_run, verify_reference: args.verify, pingpong_last_pop: true };

    eprintln!(
        "running {} experiments ({} algos x {} profiles x {} S values x {} reps, N = {}, seed = {})",
        grid.cells().len(),
        grid.algos.len(),
        grid.profiles.len(),
        grid.s_values.len(),
        grid.reps,
        grid.scale,
        grid.base_seed,
    );

    let rows = match run_grid(&grid, &cfg) {
        Ok(rows) => rows,
        Err(error) => {
            eprintln!("error: {error}");
            return ExitCode::from(2);
        }
    };

    let mut bound_failures = 0usize;
    if args.check_bounds {
        for row in &rows {
            for check in check_bounds(row) {
                if !check.pass {
                    bound_failures += 1;
                    eprintln!(
                        "bound failure: {} on algo={} profile={} S={} seed={} (slack {:.1})",
                        check.name, row.algo, row.profile, row.presort, row.seed, check.slack,
                    );
                }
            }
        }
        eprintln!(
            "bound checks: {} rows, {} failures",
            rows.len(),
            bound_failures
        );
    }

    let emitted = match &args.out {
        Some(path) => File::create(path)
            .map(BufWriter::new)
            .and_then(|mut file| {
                emit_csv(&rows, &mut file)?;
                file.flush()
            }),
        None => {
            let stdout = io::stdout();
            let mut handle = stdout.lock();
            emit_csv(&rows, &mut handle).and_then(|()| handle.flush())
        }
    };
    if let Err(error) = emitted {
        eprintln!("error: failed to write CSV: {error}");
        return ExitCode::from(1);
    }

    if bound_failures > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
