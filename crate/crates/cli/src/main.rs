//! `tempex` — command-line front end for the temporal-graph exploration
//! toolkit.
//!
//! Exit codes are the process-level contract: 0 when the command succeeds
//! and the checked property holds, 1 when a property fails (infeasible
//! instance, invalid walk or decomposition, equivalence mismatch), 2 for
//! usage and parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tempex_core::genbench::{
    gen_connected, gen_star, run_equivalence_experiment, ExperimentConfig, GenConfig, GenMode,
};
use tempex_core::graph::{StarInstance, TemporalGraph};
use tempex_core::pathwidth::{
    build_reduction_decomposition, exact_pathwidth, parse_decomposition, serialize_decomposition,
    validate_decomposition, EXACT_PATHWIDTH_MAX,
};
use tempex_core::reduction::{parse_reduced, reduce_star, serialize_reduced, ReductionFault};
use tempex_core::solver::{solve, DEFAULT_WALK_BUDGET};
use tempex_core::walk::SolveMode;
use tempex_core::{parse_instance, parse_walk, serialize_instance, serialize_walk, validate_walk};

#[derive(Parser)]
#[command(
    name = "tempex",
    about = "Temporal graph exploration: generators, exact solvers, the star-to-path gadget, and validators",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Explore,
    Rtb,
}

impl From<ModeArg> for SolveMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Explore => SolveMode::Explore,
            ModeArg::Rtb => SolveMode::Rtb,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenModeArg {
    Star,
    Connected,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    ShortPath,
    AnchorOrigin,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance and write it to a file.
    Gen {
        #[arg(long, value_enum)]
        mode: GenModeArg,
        /// Vertex count.
        #[arg(long)]
        n: usize,
        /// Lifetime (number of time steps).
        #[arg(long = "L")]
        lifetime: usize,
        /// Per-edge appearance cap (star mode only).
        #[arg(long, default_value_t = 6)]
        cap: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the tree-per-step instance for a temporal star.
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        /// 2 = exploration target, 3 = return-to-base target.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        variant: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide explorability within a horizon and optionally print a witness.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Defaults to the instance lifetime.
        #[arg(long)]
        horizon: Option<usize>,
        /// Print the optimal walk on its own line.
        #[arg(long)]
        witness: bool,
    },
    /// Check a walk file against an instance and goal.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        walk: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Path decomposition tools: build (for reduced instances), validate a
    /// decomposition file, or compute exact pathwidth.
    Pathwidth {
        #[arg(long = "in")]
        input: PathBuf,
        /// Validate this decomposition against the underlying graph.
        #[arg(long, conflicts_with = "exact")]
        decomposition: Option<PathBuf>,
        /// Compute the exact pathwidth of the underlying graph (n <= 20).
        #[arg(long)]
        exact: bool,
        /// Write the built decomposition here (build mode only).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the star/reduction equivalence experiment.
    Experiment {
        #[arg(long)]
        trials: usize,
        #[arg(long = "n-min")]
        n_min: usize,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long = "L-min")]
        l_min: usize,
        #[arg(long = "L-max")]
        l_max: usize,
        #[arg(long)]
        seed: u64,
        /// 2 = exploration goal on the reduced side, 3 = return-to-base.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        variant: u8,
        #[arg(long, default_value_t = 6)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_WALK_BUDGET)]
        budget: u64,
        /// Deliberately miswire the construction to demonstrate detection.
        #[arg(long = "inject-fault", value_enum)]
        inject_fault: Option<FaultArg>,
        /// Write the deterministic JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the per-trial CSV (includes wall-clock) here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Failures that map to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_to_string(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {}", path.display(), e)))
}

fn write_file(path: &Path, contents: &str) -> Result<(), UsageError> {
    fs::write(path, contents).map_err(|e| UsageError(format!("{}: {}", path.display(), e)))
}

fn load_instance(path: &Path) -> Result<(TemporalGraph, usize), UsageError> {
    let text = read_to_string(path)?;
    let (tg, start) = parse_instance(&text)?;
    let report = tg.validate();
    if let Some(v) = report.violations.first() {
        return Err(UsageError(format!("{}: {}", path.display(), v)));
    }
    Ok((tg, start))
}

fn variant_mode(variant: u8) -> SolveMode {
    if variant == 3 {
        SolveMode::Rtb
    } else {
        SolveMode::Explore
    }
}

fn run(cli: Cli) -> Result<u8, UsageError> {
    match cli.command {
        Command::Gen {
            mode,
            n,
            lifetime,
            cap,
            seed,
            out,
        } => {
            if n == 0 {
                return Err(UsageError("--n must be at least 1".to_string()));
            }
            let cfg = GenConfig {
                n,
                lifetime,
                max_appearances: cap,
                seed,
                mode: match mode {
                    GenModeArg::Star => GenMode::Star,
                    GenModeArg::Connected => GenMode::ConnectedEachStep,
                },
            };
            let (text, label) = match mode {
                GenModeArg::Star => (serialize_instance(gen_star(&cfg).graph(), 0), "star"),
                GenModeArg::Connected => {
                    (serialize_instance(&gen_connected(&cfg), 0), "connected")
                }
            };
            let edges = text.lines().filter(|l| l.starts_with("edge ")).count();
            write_file(&out, &text)?;
            println!(
                "wrote {} ({} n={} L={} seed={}, {} edges)",
                out.display(),
                label,
                n,
                lifetime,
                seed,
                edges
            );
            Ok(0)
        }

        Command::Reduce {
            input,
            variant,
            out,
        } => {
            let (tg, start) = load_instance(&input)?;
            if start != 0 {
                return Err(UsageError(format!(
                    "reduction needs the start vertex to be the star center 0, found {}",
                    start
                )));
            }
            let star = StarInstance::new(tg)?;
            let reduced = reduce_star(&star, variant_mode(variant))?;
            write_file(&out, &serialize_reduced(&reduced))?;
            println!(
                "n'={} Q={} horizon={}",
                reduced.graph.n,
                reduced.q,
                reduced.horizon()
            );
            Ok(0)
        }

        Command::Solve {
            input,
            mode,
            horizon,
            witness,
        } => {
            let (tg, start) = load_instance(&input)?;
            let horizon = horizon.unwrap_or(tg.lifetime);
            let result = solve(&tg, start, mode.into(), horizon)?;
            match result.min_time {
                Some(t) => {
                    println!("FEASIBLE min_time={}", t);
                    if witness {
                        let w = result.witness.expect("feasible solves carry a witness");
                        print!("{}", serialize_walk(&w));
                    }
                    Ok(0)
                }
                None => {
                    println!("INFEASIBLE");
                    Ok(1)
                }
            }
        }

        Command::Verify { input, walk, mode } => {
            let (tg, start) = load_instance(&input)?;
            let w = parse_walk(&read_to_string(&walk)?)?;
            let report = validate_walk(&tg, start, &w);
            println!("valid: {}", report.valid);
            if let Some((step, reason)) = &report.first_violation {
                println!("violation: step {}: {}", step, reason);
            }
            let visited: Vec<String> = report.visited.iter().map(|v| v.to_string()).collect();
            println!("visited: {}/{} [{}]", report.visited.len(), tg.n, visited.join(" "));
            match report.completion_time_explore {
                Some(t) => println!("explore_time: {}", t),
                None => println!("explore_time: -"),
            }
            match report.completion_time_rtb {
                Some(t) => println!("rtb_time: {}", t),
                None => println!("rtb_time: -"),
            }
            let achieved = report.achieves(mode.into());
            println!("goal: {}", if achieved { "met" } else { "not met" });
            Ok(if achieved { 0 } else { 1 })
        }

        Command::Pathwidth {
            input,
            decomposition,
            exact,
            out,
        } => {
            let text = read_to_string(&input)?;
            let (tg, _) = parse_instance(&text)?;
            let under = tg.underlying();

            if exact {
                if under.n > EXACT_PATHWIDTH_MAX {
                    return Err(UsageError(format!(
                        "--exact supports at most {} vertices, instance has {}",
                        EXACT_PATHWIDTH_MAX, under.n
                    )));
                }
                println!("pathwidth={}", exact_pathwidth(&under)?);
                return Ok(0);
            }

            if let Some(dec_path) = decomposition {
                let dec = parse_decomposition(&read_to_string(&dec_path)?)?;
                let report = validate_decomposition(&under, &dec);
                for v in &report.violations {
                    println!("violation: {}", v);
                }
                let width = report
                    .width
                    .map(|w| w.to_string())
                    .unwrap_or_else(|| "none".to_string());
                let ok = report.is_valid();
                println!("width={} {}", width, if ok { "valid" } else { "invalid" });
                return Ok(if ok { 0 } else { 1 });
            }

            // Build mode: needs the reduction metadata.
            let reduced = parse_reduced(&text)?;
            let dec = build_reduction_decomposition(&reduced)?;
            let report = validate_decomposition(&under, &dec);
            if let Some(path) = out {
                write_file(&path, &serialize_decomposition(&dec))?;
            } else {
                print!("{}", serialize_decomposition(&dec));
            }
            let width = report
                .width
                .map(|w| w.to_string())
                .unwrap_or_else(|| "none".to_string());
            let ok = report.is_valid();
            println!("width={} {}", width, if ok { "valid" } else { "invalid" });
            Ok(if ok { 0 } else { 1 })
        }

        Command::Experiment {
            trials,
            n_min,
            n_max,
            l_min,
            l_max,
            seed,
            variant,
            cap,
            budget,
            inject_fault,
            json,
            csv,
        } => {
            let cfg = ExperimentConfig {
                trials,
                n_range: (n_min, n_max),
                l_range: (l_min, l_max),
                seed,
                max_appearances: cap,
                variant: variant_mode(variant),
                fault: inject_fault.map(|f| match f {
                    FaultArg::ShortPath => ReductionFault::ShortPath,
                    FaultArg::AnchorOrigin => ReductionFault::AnchorAtOrigin,
                }),
                budget,
            };
            let report = run_equivalence_experiment(&cfg)?;
            if let Some(path) = json {
                write_file(&path, &report.to_json())?;
            }
            if let Some(path) = csv {
                write_file(&path, &report.to_csv())?;
            }
            println!(
                "trials={} held={} mismatched={} solvable={} unsolvable={} skipped={} tree_failures={}",
                report.trials(),
                report.equivalences_held(),
                report.mismatches().len(),
                report.star_solvable(),
                report.star_unsolvable(),
                report.skipped(),
                report.tree_failures()
            );
            for m in report.mismatches() {
                println!("mismatch: seed={} n={} L={}", m.seed, m.n, m.lifetime);
            }
            Ok(if report.all_held() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(message)) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}
