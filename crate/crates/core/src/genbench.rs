//! Seeded instance generators and the equivalence experiment harness.
//!
//! All randomness flows through ChaCha8 keyed by a 64-bit seed, with
//! sampling done by a partial Fisher-Yates shuffle, so identical
//! configurations reproduce byte-identical instances and reports anywhere.

use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::format::serialize_instance;
use crate::graph::{edge, Edge, StarInstance, TemporalGraph};
use crate::reduction::{reduce_star, reduce_star_faulty, ReducedInstance, ReductionFault};
use crate::solver::{brute_force_solvable, solve, SolveError, DEFAULT_WALK_BUDGET};
use crate::walk::SolveMode;

/// Name of the PRNG recorded in reports.
pub const GENERATOR_NAME: &str = "chacha8";

/// Per-edge appearance cap default.
pub const DEFAULT_MAX_APPEARANCES: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    Star,
    ConnectedEachStep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub lifetime: usize,
    pub max_appearances: usize,
    pub seed: u64,
    pub mode: GenMode,
}

/// First `k` elements of a seeded partial Fisher-Yates shuffle of `pool`.
fn sample_distinct<R: Rng, T: Copy>(rng: &mut R, mut pool: Vec<T>, k: usize) -> Vec<T> {
    let k = k.min(pool.len());
    for i in 0..k {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

/// Generates a temporal star: each leaf edge `{0, j}` appears in a uniformly
/// chosen number (between 0 and `max_appearances`) of uniformly chosen
/// distinct steps.
pub fn gen_star(cfg: &GenConfig) -> StarInstance {
    debug_assert_eq!(cfg.mode, GenMode::Star);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut steps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cfg.lifetime];
    for j in 1..cfg.n {
        let cap = cfg.max_appearances.min(cfg.lifetime);
        let appearances = rng.gen_range(0..=cap);
        let chosen = sample_distinct(&mut rng, (1..=cfg.lifetime).collect(), appearances);
        for t in chosen {
            steps[t - 1].push((0, j));
        }
    }
    StarInstance::new(TemporalGraph::new(cfg.n, steps)).expect("generated stars are valid")
}

/// Uniform random labelled tree on `0..n` (decoded Pruefer sequence).
fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Vec<Edge> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            let mut degree = vec![1usize; n];
            for &x in &seq {
                degree[x] += 1;
            }
            let mut leaves: std::collections::BTreeSet<usize> =
                (0..n).filter(|&v| degree[v] == 1).collect();
            let mut edges = Vec::with_capacity(n - 1);
            for &x in &seq {
                let leaf = *leaves.iter().next().expect("a tree always has a leaf");
                leaves.remove(&leaf);
                edges.push(edge(leaf, x));
                degree[leaf] -= 1;
                degree[x] -= 1;
                if degree[x] == 1 {
                    leaves.insert(x);
                }
            }
            let mut last = leaves.into_iter();
            let (a, b) = (last.next().unwrap(), last.next().unwrap());
            edges.push(edge(a, b));
            edges
        }
    }
}

/// Generates a temporal graph whose every snapshot is connected: a uniform
/// random spanning tree plus up to two extra edges per step.
pub fn gen_connected(cfg: &GenConfig) -> TemporalGraph {
    debug_assert_eq!(cfg.mode, GenMode::ConnectedEachStep);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut steps: Vec<Vec<(usize, usize)>> = Vec::with_capacity(cfg.lifetime);
    for _ in 0..cfg.lifetime {
        let tree = random_tree(&mut rng, cfg.n);
        let in_tree: std::collections::BTreeSet<Edge> = tree.iter().copied().collect();
        let mut candidates = Vec::new();
        for u in 0..cfg.n {
            for v in u + 1..cfg.n {
                if !in_tree.contains(&(u, v)) {
                    candidates.push((u, v));
                }
            }
        }
        let extras = rng.gen_range(0..=2usize);
        let mut es = tree;
        es.extend(sample_distinct(&mut rng, candidates, extras));
        steps.push(es);
    }
    TemporalGraph::new(cfg.n, steps)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExperimentError {
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error(
        "ranges exceed the solver cap: n={n}, L={lifetime} builds a reduced instance with {reduced} > 63 vertices"
    )]
    CapExceeded {
        n: usize,
        lifetime: usize,
        reduced: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub trials: usize,
    pub n_range: (usize, usize),
    pub l_range: (usize, usize),
    pub seed: u64,
    pub max_appearances: usize,
    /// Reduction variant, and with it the goal checked on the reduced side.
    pub variant: SolveMode,
    /// Optional deliberate miswiring, for demonstrating mismatch detection.
    pub fault: Option<ReductionFault>,
    pub budget: u64,
}

impl ExperimentConfig {
    pub fn new(trials: usize, n_range: (usize, usize), l_range: (usize, usize), seed: u64) -> Self {
        ExperimentConfig {
            trials,
            n_range,
            l_range,
            seed,
            max_appearances: DEFAULT_MAX_APPEARANCES,
            variant: SolveMode::Explore,
            fault: None,
            budget: DEFAULT_WALK_BUDGET,
        }
    }
}

/// How the reduced side of a trial was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducedOracle {
    /// Exhaustive walk enumeration (the unpruned oracle).
    Enumeration,
    /// Exact layered solve; used when enumeration would blow the budget.
    LayeredSolve,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrialResult {
    Compared {
        star_rtb: bool,
        reduced_ok: bool,
        oracle: ReducedOracle,
    },
    /// The star-side oracle ran out of budget; nothing to compare.
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub seed: u64,
    pub n: usize,
    pub lifetime: usize,
    pub snapshots_are_trees: bool,
    pub result: TrialResult,
    /// Star document, retained only for mismatching trials.
    pub star_document: Option<String>,
    pub micros: u64,
}

impl TrialOutcome {
    pub fn matched(&self) -> bool {
        matches!(
            self.result,
            TrialResult::Compared {
                star_rtb,
                reduced_ok,
                ..
            } if star_rtb == reduced_ok
        )
    }

    pub fn mismatched(&self) -> bool {
        matches!(
            self.result,
            TrialResult::Compared {
                star_rtb,
                reduced_ok,
                ..
            } if star_rtb != reduced_ok
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    /// Sorted by trial seed.
    pub outcomes: Vec<TrialOutcome>,
}

impl ExperimentReport {
    pub fn trials(&self) -> usize {
        self.outcomes.len()
    }

    pub fn star_solvable(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| matches!(o.result, TrialResult::Compared { star_rtb: true, .. }))
            .count()
    }

    pub fn star_unsolvable(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| matches!(o.result, TrialResult::Compared { star_rtb: false, .. }))
            .count()
    }

    pub fn equivalences_held(&self) -> usize {
        self.outcomes.iter().filter(|o| o.matched()).count()
    }

    pub fn mismatches(&self) -> Vec<&TrialOutcome> {
        self.outcomes.iter().filter(|o| o.mismatched()).collect()
    }

    pub fn skipped(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| matches!(o.result, TrialResult::Skipped { .. }))
            .count()
    }

    pub fn tree_failures(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| !o.snapshots_are_trees)
            .count()
    }

    pub fn all_held(&self) -> bool {
        self.mismatches().is_empty() && self.tree_failures() == 0
    }

    /// Deterministic JSON document (keys sorted, no timing data).
    pub fn to_json(&self) -> String {
        let counterexamples: Vec<Value> = self
            .outcomes
            .iter()
            .filter(|o| o.mismatched())
            .map(|o| {
                let (star_rtb, reduced_ok) = match o.result {
                    TrialResult::Compared {
                        star_rtb,
                        reduced_ok,
                        ..
                    } => (star_rtb, reduced_ok),
                    TrialResult::Skipped { .. } => unreachable!("mismatched implies compared"),
                };
                json!({
                    "seed": o.seed,
                    "n": o.n,
                    "L": o.lifetime,
                    "star_rtb": star_rtb,
                    "reduced_ok": reduced_ok,
                    "star": o.star_document.clone().unwrap_or_default(),
                })
            })
            .collect();
        let value = json!({
            "budget": self.config.budget,
            "counterexamples": counterexamples,
            "equivalences_held": self.equivalences_held(),
            "fault": self.config.fault.map(|f| format!("{:?}", f)),
            "generator": GENERATOR_NAME,
            "l_range": [self.config.l_range.0, self.config.l_range.1],
            "max_appearances": self.config.max_appearances,
            "n_range": [self.config.n_range.0, self.config.n_range.1],
            "reduced_by_enumeration": self.outcomes.iter().filter(|o| matches!(
                o.result,
                TrialResult::Compared { oracle: ReducedOracle::Enumeration, .. }
            )).count(),
            "reduced_by_solver": self.outcomes.iter().filter(|o| matches!(
                o.result,
                TrialResult::Compared { oracle: ReducedOracle::LayeredSolve, .. }
            )).count(),
            "seed": self.config.seed,
            "skipped": self.skipped(),
            "star_solvable": self.star_solvable(),
            "star_unsolvable": self.star_unsolvable(),
            "tree_failures": self.tree_failures(),
            "trials": self.trials(),
            "variant": match self.config.variant { SolveMode::Explore => 2, SolveMode::Rtb => 3 },
        });
        // serde_json maps are BTree-backed, so keys come out sorted.
        let mut out = serde_json::to_string_pretty(&value).expect("report serializes");
        out.push('\n');
        out
    }

    /// One row per trial. Timing makes this file non-deterministic; the JSON
    /// report is the canonical artifact.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("seed,n,L,star_rtb,reduced_ok,match,us\n");
        for o in &self.outcomes {
            let row = match &o.result {
                TrialResult::Compared {
                    star_rtb,
                    reduced_ok,
                    ..
                } => format!(
                    "{},{},{},{},{},{},{}\n",
                    o.seed,
                    o.n,
                    o.lifetime,
                    *star_rtb as u8,
                    *reduced_ok as u8,
                    o.matched() as u8,
                    o.micros
                ),
                TrialResult::Skipped { .. } => format!(
                    "{},{},{},,,skip,{}\n",
                    o.seed, o.n, o.lifetime, o.micros
                ),
            };
            out.push_str(&row);
        }
        out
    }
}

fn reduced_vertices(n: usize, lifetime: usize) -> usize {
    n + lifetime * (n + 3) + 1
}

/// Regenerates the star a given trial seed produces under `cfg`. The
/// harness itself draws stars through this function, so reports can be
/// re-expanded into instances after the fact.
pub fn trial_star(cfg: &ExperimentConfig, trial_seed: u64) -> (StarInstance, usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let n = rng.gen_range(cfg.n_range.0..=cfg.n_range.1);
    let lifetime = rng.gen_range(cfg.l_range.0..=cfg.l_range.1);
    let star_seed = rng.next_u64();
    let star = gen_star(&GenConfig {
        n,
        lifetime,
        max_appearances: cfg.max_appearances,
        seed: star_seed,
        mode: GenMode::Star,
    });
    (star, n, lifetime)
}

/// Builds the (possibly deliberately miswired) reduction for a trial.
pub fn trial_reduction(cfg: &ExperimentConfig, star: &StarInstance) -> ReducedInstance {
    match cfg.fault {
        None => reduce_star(star, cfg.variant),
        Some(fault) => reduce_star_faulty(star, cfg.variant, fault),
    }
    .expect("trial stars are non-degenerate")
}

/// Runs the equivalence experiment: per trial, generate a star, decide
/// return-to-base solvability by exhaustive enumeration, reduce it, decide
/// the reduced goal within the reduction horizon, and record whether the two
/// answers agree. Every snapshot of every reduction is also tree-checked.
///
/// The star side always uses the unpruned enumeration oracle. The reduced
/// side uses it too whenever the walk budget allows, falling back to the
/// exact layered solver on budget overruns (the fallback is recorded per
/// trial).
pub fn run_equivalence_experiment(
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport, ExperimentError> {
    let (n_lo, n_hi) = cfg.n_range;
    let (l_lo, l_hi) = cfg.l_range;
    if n_lo == 0 || n_lo > n_hi {
        return Err(ExperimentError::InvalidRange(format!(
            "vertex range {}..={} (need 1 <= min <= max)",
            n_lo, n_hi
        )));
    }
    if l_lo == 0 || l_lo > l_hi {
        return Err(ExperimentError::InvalidRange(format!(
            "lifetime range {}..={} (need 1 <= min <= max)",
            l_lo, l_hi
        )));
    }
    let worst = reduced_vertices(n_hi, l_hi);
    if worst > 63 {
        return Err(ExperimentError::CapExceeded {
            n: n_hi,
            lifetime: l_hi,
            reduced: worst,
        });
    }

    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trial_seeds: Vec<u64> = (0..cfg.trials).map(|_| master.next_u64()).collect();

    let mut outcomes = Vec::with_capacity(cfg.trials);
    for trial_seed in trial_seeds {
        let started = Instant::now();
        let (star, n, lifetime) = trial_star(cfg, trial_seed);
        let reduced = trial_reduction(cfg, &star);
        let snapshots_are_trees = (1..=reduced.graph.lifetime)
            .all(|t| reduced.graph.snapshot_is_tree(t).unwrap_or(false));

        let result = match brute_force_solvable(star.graph(), 0, SolveMode::Rtb, lifetime, cfg.budget)
        {
            Err(err) => TrialResult::Skipped {
                reason: err.to_string(),
            },
            Ok(star_rtb) => {
                let horizon = reduced.horizon();
                match brute_force_solvable(&reduced.graph, 0, cfg.variant, horizon, cfg.budget) {
                    Ok(reduced_ok) => TrialResult::Compared {
                        star_rtb,
                        reduced_ok,
                        oracle: ReducedOracle::Enumeration,
                    },
                    Err(SolveError::WalkBudgetExceeded { .. }) => {
                        match solve(&reduced.graph, 0, cfg.variant, horizon) {
                            Ok(res) => TrialResult::Compared {
                                star_rtb,
                                reduced_ok: res.feasible(),
                                oracle: ReducedOracle::LayeredSolve,
                            },
                            Err(err) => TrialResult::Skipped {
                                reason: err.to_string(),
                            },
                        }
                    }
                    Err(err) => TrialResult::Skipped {
                        reason: err.to_string(),
                    },
                }
            }
        };

        let star_document = match &result {
            TrialResult::Compared {
                star_rtb,
                reduced_ok,
                ..
            } if star_rtb != reduced_ok => Some(serialize_instance(star.graph(), 0)),
            _ => None,
        };
        outcomes.push(TrialOutcome {
            seed: trial_seed,
            n,
            lifetime,
            snapshots_are_trees,
            result,
            star_document,
            micros: started.elapsed().as_micros() as u64,
        });
    }

    outcomes.sort_by_key(|o| o.seed);
    Ok(ExperimentReport {
        config: cfg.clone(),
        outcomes,
    })
}
