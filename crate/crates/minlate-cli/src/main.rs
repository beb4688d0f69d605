//! Command-line front end for the `minlate` library.
//!
//! Four subcommands: `solve` an instance file, `verify` the solver against
//! the brute-force oracle and the correctness-argument checkers on random
//! instances, `gen` reproducible instances, and `bench` the solvers on a
//! large input.
//!
//! Exit codes: 0 success, 1 usage error or unreadable/invalid input,
//! 2 precondition violation (weighted solve on an instance whose weights
//! are not oppositely ordered to its processing times), 3 verification
//! failure.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::hint::black_box;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use minlate::generator::{adversarial_family, generate, DueDateMode, Family, GenSpec, SplitMix64};
use minlate::io::{parse_instance, render_trace, write_instance};
use minlate::oracle::{
    brute_force, check_induction_step, check_lemma1, check_prop1, SEARCH_CAP,
};
use minlate::solver::{solve_no_trace, solve_weighted_opposite};
use minlate::{solve, solve_fast, Instance, Solution};

const EXIT_USAGE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// Hard ceiling on generated instance sizes, to keep memory use sane.
const MAX_GEN_N: usize = 100_000_000;

#[derive(Parser)]
#[command(
    name = "minlate",
    version,
    about = "Minimize the (weighted) number of late jobs on a single machine",
    after_help = "Exit codes: 0 success, 1 usage or input error, \
                  2 precondition violation, 3 verification failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print the schedule
    Solve {
        /// Instance file (CSV with a `job,p,d` or `job,p,d,w` header)
        file: PathBuf,
        /// Minimize total weight of late jobs instead of their count
        /// (requires oppositely ordered weights: shorter jobs weigh no less)
        #[arg(long)]
        weighted: bool,
        /// Solver to run: the literal rejection loop or the heap variant
        #[arg(long, value_enum, default_value_t = Algo::Naive)]
        algo: Algo,
        /// Print the iteration-by-iteration completion-time table
        /// (only the naive solver records one)
        #[arg(long)]
        trace: bool,
        /// Print the solution as a single JSON object on the last line
        #[arg(long)]
        json: bool,
    },
    /// Cross-check the solvers against the exact oracle on random instances
    Verify {
        /// Seed for the instance stream
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances to check
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Largest instance size to draw (at most 20, the oracle's cap;
        /// p stays at most 30 and due-date modes alternate uniform/tight)
        #[arg(long = "max-n", default_value_t = 10)]
        max_n: usize,
        /// Draw weighted instances and compare weighted objectives
        #[arg(long)]
        weighted: bool,
        /// Comma-separated checks to run (default: all of
        /// opt,prop1,lemma1,induction,fast-equiv)
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
    },
    /// Generate a reproducible instance and print or save it
    Gen {
        /// Number of jobs
        #[arg(short = 'n', long = "n", value_name = "N")]
        n: usize,
        /// RNG seed
        #[arg(long, default_value_t = 0, conflicts_with = "family")]
        seed: u64,
        /// Largest processing time to draw
        #[arg(long = "p-max", default_value_t = 30, conflicts_with = "family")]
        p_max: u64,
        /// Due-date distribution: uniform, tight, or loose
        #[arg(long = "d-mode", default_value = "uniform", conflicts_with = "family")]
        d_mode: DueDateMode,
        /// Give shorter jobs larger weights (emits a `w` column)
        #[arg(long = "weighted-opposite", conflicts_with = "family")]
        weighted_opposite: bool,
        /// Deterministic stress family instead of a random draw:
        /// all_late, none_late, all_ties, or staircase
        #[arg(long)]
        family: Option<Family>,
        /// Write to a file instead of stdout
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Time a solver on one large generated instance
    Bench {
        /// Number of jobs (p stays at most 100, due dates are tight)
        #[arg(short = 'n', long = "n", value_name = "N", default_value_t = 1_000_000)]
        n: usize,
        /// RNG seed for the instance
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Solver to time
        #[arg(long, value_enum, default_value_t = Algo::Fast)]
        algo: Algo,
        /// Timed runs to take (min and median are reported)
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        repeat: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Literal rejection loop; records a trace
    Naive,
    /// Heap variant, O(n log n); same answers, no trace
    Fast,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Naive => "naive",
            Algo::Fast => "fast",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    /// Solver objective equals the brute-force optimum
    Opt,
    /// Step 1: a job set is feasible exactly when its EDD order is on time
    Prop1,
    /// Step 2: every optimal on-time set excludes the rejection candidate
    Lemma1,
    /// Step 3: rejecting the candidate lowers the optimum by exactly one
    Induction,
    /// Heap solver returns the same solution as the literal loop
    FastEquiv,
}

const ALL_CHECKS: [Check; 5] = [
    Check::Opt,
    Check::Prop1,
    Check::Lemma1,
    Check::Induction,
    Check::FastEquiv,
];

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Opt => "opt",
            Check::Prop1 => "prop1",
            Check::Lemma1 => "lemma1",
            Check::Induction => "induction",
            Check::FastEquiv => "fast-equiv",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version print to stdout and are not errors.
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Solve {
            file,
            weighted,
            algo,
            trace,
            json,
        } => cmd_solve(&file, weighted, algo, trace, json),
        Command::Verify {
            seed,
            count,
            max_n,
            weighted,
            checks,
        } => cmd_verify(seed, count, max_n, weighted, &checks),
        Command::Gen {
            n,
            seed,
            p_max,
            d_mode,
            weighted_opposite,
            family,
            out,
        } => cmd_gen(n, seed, p_max, d_mode, weighted_opposite, family, out.as_deref()),
        Command::Bench {
            n,
            seed,
            algo,
            repeat,
        } => cmd_bench(n, seed, algo, repeat as usize),
    };
    ExitCode::from(code)
}

fn cmd_solve(file: &std::path::Path, weighted: bool, algo: Algo, trace: bool, json: bool) -> u8 {
    if trace && algo == Algo::Fast {
        eprintln!("error: the fast solver records no trace; drop --trace or use --algo naive");
        return EXIT_USAGE;
    }
    if weighted && algo == Algo::Fast {
        eprintln!("error: the weighted solver has no heap variant; use --algo naive");
        return EXIT_USAGE;
    }
    let text = match fs::read_to_string(file) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", file.display());
            return EXIT_USAGE;
        }
    };
    let instance = match parse_instance(&text) {
        Ok(instance) => instance,
        Err(err) => {
            eprintln!("error: {}: {err}", file.display());
            return EXIT_USAGE;
        }
    };
    let (solution, recorded) = if weighted {
        match solve_weighted_opposite(&instance) {
            Ok((solution, recorded)) => (solution, Some(recorded)),
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_PRECONDITION;
            }
        }
    } else if algo == Algo::Fast {
        (solve_fast(&instance), None)
    } else {
        let (solution, recorded) = solve(&instance);
        (solution, Some(recorded))
    };
    if trace {
        let table = render_trace(&instance, recorded.as_ref().expect("naive solver traces"))
            .expect("trace matches its own instance");
        print!("{table}");
        println!();
    }
    if json {
        println!("{}", solution_json(&solution));
    } else {
        print_solution(&solution, weighted);
    }
    0
}

fn solution_json(solution: &Solution) -> serde_json::Value {
    let completions: BTreeMap<String, u64> = solution
        .completion_times
        .iter()
        .map(|(id, c)| (id.to_string(), *c))
        .collect();
    serde_json::json!({
        "on_time": solution.on_time.ids(),
        "rejected": solution.rejected,
        "completions": completions,
        "num_late": solution.num_late,
        "weighted_late": solution.weighted_late,
    })
}

fn print_solution(solution: &Solution, weighted: bool) {
    let on_time = solution
        .on_time
        .ids()
        .iter()
        .map(|id| id.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let rejected = if solution.rejected.is_empty() {
        "(none)".to_string()
    } else {
        solution
            .rejected
            .iter()
            .map(|id| id.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let completions = solution
        .completion_times
        .iter()
        .map(|(id, c)| format!("{id}={c}"))
        .collect::<Vec<_>>()
        .join(" ");
    println!("On-time jobs: {on_time}");
    println!("Rejected Jobs: {rejected}");
    println!("Completion times: {completions}");
    if weighted {
        println!("Late weight: {}", solution.weighted_late);
    }
    println!(
        "{} late, {} on time",
        solution.num_late,
        solution.on_time.len()
    );
}

/// One check's tally across the verified instances.
#[derive(Default)]
struct Tally {
    pass: usize,
    fail: usize,
    skip: usize,
    first_failure: Option<(usize, GenSpec)>,
}

impl Tally {
    fn record(&mut self, index: usize, spec: GenSpec, outcome: Option<bool>) {
        match outcome {
            Some(true) => self.pass += 1,
            Some(false) => {
                self.fail += 1;
                self.first_failure.get_or_insert((index, spec));
            }
            None => self.skip += 1,
        }
    }
}

fn cmd_verify(seed: u64, count: usize, max_n: usize, weighted: bool, checks: &[Check]) -> u8 {
    if max_n > SEARCH_CAP {
        eprintln!("error: --max-n must be at most {SEARCH_CAP} (the oracle's search cap)");
        return EXIT_USAGE;
    }
    let requested: Vec<Check> = ALL_CHECKS
        .into_iter()
        .filter(|c| checks.is_empty() || checks.contains(c))
        .collect();
    let mut tallies: BTreeMap<&str, Tally> = requested
        .iter()
        .map(|check| (check.name(), Tally::default()))
        .collect();
    let mut meta = SplitMix64::new(seed);
    let started = Instant::now();
    for index in 0..count {
        let spec = GenSpec {
            n: meta.next_bounded(max_n as u64) as usize,
            seed: meta.next_u64(),
            p_max: 30,
            d_mode: if index % 2 == 0 {
                DueDateMode::Uniform
            } else {
                DueDateMode::Tight
            },
            weighted_opposite: weighted,
        };
        let instance = match generate(&spec) {
            Ok(instance) => instance,
            Err(err) => {
                eprintln!("error: generating instance {index}: {err}");
                return EXIT_USAGE;
            }
        };
        for &check in &requested {
            let outcome = run_check(check, &instance, weighted);
            tallies
                .get_mut(check.name())
                .expect("tallies cover every requested check")
                .record(index, spec, outcome);
        }
    }
    println!(
        "verify: seed={seed} count={count} max-n={max_n} weighted={weighted} ({:?})",
        started.elapsed()
    );
    let mut failed: Option<(usize, GenSpec)> = None;
    for &check in &requested {
        let tally = &tallies[check.name()];
        let ran = tally.pass + tally.fail;
        let skipped = if tally.skip > 0 {
            format!(" ({} skipped: nothing late)", tally.skip)
        } else {
            String::new()
        };
        if tally.fail == 0 {
            println!("  {:<10} {}/{} pass{}", check.name(), tally.pass, ran, skipped);
        } else {
            let (index, _) = tally.first_failure.expect("failures record a witness");
            println!(
                "  {:<10} {}/{} pass, {} FAILED (first at instance {}){}",
                check.name(),
                tally.pass,
                ran,
                tally.fail,
                index,
                skipped
            );
            if failed.is_none() {
                failed = tally.first_failure;
            }
        }
    }
    match failed {
        None => {
            println!("all checks passed");
            0
        }
        Some((index, spec)) => {
            let instance = generate(&spec).expect("failing instance regenerates");
            println!("first failing instance (index {index}):");
            print!("{}", write_instance(&instance));
            println!("verification failed");
            EXIT_VERIFY
        }
    }
}

/// Runs one check; `None` means it did not apply to this instance.
fn run_check(check: Check, instance: &Instance, weighted: bool) -> Option<bool> {
    match check {
        Check::Opt => {
            let oracle = brute_force(instance, weighted).expect("n is capped");
            let got = if weighted {
                solve_weighted_opposite(instance)
                    .map(|(solution, _)| solution.weighted_late)
                    .ok()?
            } else {
                solve(instance).0.num_late as u64
            };
            Some(got == oracle.min_objective)
        }
        Check::Prop1 => Some(check_prop1(instance).unwrap_or(false)),
        Check::Lemma1 => match check_lemma1(instance) {
            Ok(holds) => Some(holds),
            Err(minlate::Error::NoLateJob) => None,
            Err(_) => Some(false),
        },
        Check::Induction => match check_induction_step(instance) {
            Ok(holds) => Some(holds),
            Err(minlate::Error::NoLateJob) => None,
            Err(_) => Some(false),
        },
        Check::FastEquiv => Some(solve(instance).0 == solve_fast(instance)),
    }
}

fn cmd_gen(
    n: usize,
    seed: u64,
    p_max: u64,
    d_mode: DueDateMode,
    weighted_opposite: bool,
    family: Option<Family>,
    out: Option<&std::path::Path>,
) -> u8 {
    if n > MAX_GEN_N {
        eprintln!("error: refusing to generate more than {MAX_GEN_N} jobs");
        return EXIT_USAGE;
    }
    let built = match family {
        Some(family) => adversarial_family(family, n),
        None => generate(&GenSpec {
            seed,
            n,
            p_max,
            d_mode,
            weighted_opposite,
        }),
    };
    let instance = match built {
        Ok(instance) => instance,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    let text = write_instance(&instance);
    match out {
        Some(path) => {
            if let Err(err) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{text}"),
    }
    0
}

fn cmd_bench(n: usize, seed: u64, algo: Algo, repeat: usize) -> u8 {
    if n > MAX_GEN_N {
        eprintln!("error: refusing to benchmark more than {MAX_GEN_N} jobs");
        return EXIT_USAGE;
    }
    let spec = GenSpec {
        seed,
        n,
        p_max: 100,
        d_mode: DueDateMode::Tight,
        weighted_opposite: false,
    };
    let instance = match generate(&spec) {
        Ok(instance) => instance,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    // Both solvers must agree on this instance before either is timed.
    let literal = solve_no_trace(&instance);
    let heap = solve_fast(&instance);
    if literal != heap {
        eprintln!("verification failed: literal and heap solvers disagree on n={n} seed={seed}");
        return EXIT_VERIFY;
    }
    println!(
        "instance: n={n} seed={seed} p-max=100 d-mode=tight ({} rejected)",
        heap.rejected.len()
    );
    println!("check: literal and heap solvers agree");
    let solver: fn(&Instance) -> Solution = match algo {
        Algo::Naive => solve_no_trace,
        Algo::Fast => solve_fast,
    };
    let mut times: Vec<Duration> = (0..repeat)
        .map(|_| {
            let start = Instant::now();
            black_box(solver(black_box(&instance)));
            start.elapsed()
        })
        .collect();
    times.sort();
    let min = times[0];
    let median = times[times.len() / 2];
    let denom = median.max(Duration::from_nanos(1)).as_secs_f64();
    println!(
        "algo={algo} repeat={repeat} min={min:?} median={median:?} throughput={:.0} jobs/s",
        n as f64 / denom
    );
    0
}
