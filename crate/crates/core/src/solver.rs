//! Exact exploration solvers and the unpruned enumeration oracle.
//!
//! [`solve`] runs a layered search over `(vertex, visited-set)` states: time
//! steps are processed in order, so each layer only feeds the next and no
//! priority queue is needed. Visited sets are `u64` bitmasks, which caps
//! instances at [`MAX_SOLVER_VERTICES`] vertices; anything larger is an
//! explicit error, never a silent truncation.
//!
//! [`for_each_walk`]/[`enumerate_walks`] walk the full tree of legal
//! position sequences in lexicographic order without any state merging.
//! They are deliberately kept structurally independent from the layered
//! search so the two can cross-check each other.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::TemporalGraph;
use crate::reduction::ReducedInstance;
use crate::walk::{SolveMode, TemporalWalk};

/// Hard cap for the bitmask state representation.
pub const MAX_SOLVER_VERTICES: usize = 63;

/// Default cap on the number of walks an enumeration may produce.
pub const DEFAULT_WALK_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance too large: {n} vertices exceeds the {MAX_SOLVER_VERTICES}-vertex cap")]
    InstanceTooLarge { n: usize },
    #[error("start vertex {start} out of range 0..{n}")]
    StartOutOfRange { start: usize, n: usize },
    #[error("horizon {horizon} exceeds lifetime {lifetime}")]
    HorizonBeyondLifetime { horizon: usize, lifetime: usize },
    #[error("walk budget of {budget} walks exceeded")]
    WalkBudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    /// Drop a state `(v, m)` when `(v, m')` with `m ⊂ m'` survives the same
    /// layer. Extra visited vertices never hurt (staying is always legal),
    /// so this cannot change feasibility or the minimum completion time.
    /// Off by default.
    pub dominance_prune: bool,
}

/// Result of an exact solve: the true minimum completion step over all walks
/// within the horizon, plus a witness walk achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub min_time: Option<usize>,
    pub witness: Option<TemporalWalk>,
}

impl SolveResult {
    pub fn feasible(&self) -> bool {
        self.min_time.is_some()
    }
}

type State = (usize, u64);

fn check_bounds(
    tg: &TemporalGraph,
    start: usize,
    horizon: usize,
) -> Result<(), SolveError> {
    if start >= tg.n {
        return Err(SolveError::StartOutOfRange { start, n: tg.n });
    }
    if horizon > tg.lifetime {
        return Err(SolveError::HorizonBeyondLifetime {
            horizon,
            lifetime: tg.lifetime,
        });
    }
    Ok(())
}

fn step_adjacency(tg: &TemporalGraph, t: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); tg.n];
    for &(u, v) in &tg.steps[t - 1] {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

fn prune_dominated(layer: &mut HashMap<State, State>) {
    let mut by_vertex: HashMap<usize, Vec<u64>> = HashMap::new();
    for &(v, m) in layer.keys() {
        by_vertex.entry(v).or_default().push(m);
    }
    let mut dead: Vec<State> = Vec::new();
    for (v, mut masks) in by_vertex {
        masks.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
        let mut maxima: Vec<u64> = Vec::new();
        for m in masks {
            if maxima.iter().any(|&mx| mx & m == m && mx != m) {
                dead.push((v, m));
            } else {
                maxima.push(m);
            }
        }
    }
    for st in dead {
        layer.remove(&st);
    }
}

/// Exact solve with default options.
pub fn solve(
    tg: &TemporalGraph,
    start: usize,
    mode: SolveMode,
    horizon: usize,
) -> Result<SolveResult, SolveError> {
    solve_with(tg, start, mode, horizon, SolveOptions::default())
}

/// Exact solve: layered reachability over `(vertex, visited-mask)` states.
///
/// Acceptance (all vertices visited, and at the start vertex for
/// [`SolveMode::Rtb`]) is checked at every layer, so `min_time` is the first
/// step at which the goal holds. Witness reconstruction follows stored
/// predecessors; ties pick the lexicographically smallest `(vertex, mask)`
/// so output is deterministic.
pub fn solve_with(
    tg: &TemporalGraph,
    start: usize,
    mode: SolveMode,
    horizon: usize,
    options: SolveOptions,
) -> Result<SolveResult, SolveError> {
    if tg.n > MAX_SOLVER_VERTICES {
        return Err(SolveError::InstanceTooLarge { n: tg.n });
    }
    check_bounds(tg, start, horizon)?;

    let full: u64 = (1u64 << tg.n) - 1;
    let accepts = |&(v, m): &State| m == full && (mode == SolveMode::Explore || v == start);

    // history[t] maps each layer-t state to its predecessor in layer t-1;
    // the layer-0 state points at itself.
    let init: State = (start, 1u64 << start);
    let mut history: Vec<HashMap<State, State>> = vec![HashMap::from([(init, init)])];
    let mut found: Option<(usize, State)> = history[0].keys().find(|s| accepts(s)).map(|&s| (0, s));

    let mut t = 1;
    while found.is_none() && t <= horizon {
        let adj = step_adjacency(tg, t);
        let mut next: HashMap<State, State> = HashMap::new();
        let mut push = |state: State, pred: State| {
            next.entry(state)
                .and_modify(|p| {
                    if pred < *p {
                        *p = pred;
                    }
                })
                .or_insert(pred);
        };
        for &(v, m) in history[t - 1].keys() {
            push((v, m), (v, m)); // stay
            for &w in &adj[v] {
                push((w, m | (1u64 << w)), (v, m));
            }
        }
        found = next
            .keys()
            .filter(|s| accepts(s))
            .min()
            .copied()
            .map(|s| (t, s));
        if options.dominance_prune {
            prune_dominated(&mut next);
        }
        history.push(next);
        t += 1;
    }

    let Some((end_time, end_state)) = found else {
        return Ok(SolveResult {
            min_time: None,
            witness: None,
        });
    };

    let mut positions = vec![0usize; end_time + 1];
    let mut cur = end_state;
    for i in (1..=end_time).rev() {
        positions[i] = cur.0;
        cur = history[i][&cur];
    }
    positions[0] = cur.0;
    Ok(SolveResult {
        min_time: Some(end_time),
        witness: Some(TemporalWalk::new(positions)),
    })
}

struct WalkTree<'a, F> {
    succ: Vec<Vec<Vec<usize>>>, // succ[t-1][v], sorted ascending, includes v
    horizon: usize,
    budget: u64,
    emitted: u64,
    buf: Vec<usize>,
    visit: &'a mut F,
}

impl<F: FnMut(&[usize])> WalkTree<'_, F> {
    fn dfs(&mut self, t: usize) -> Result<(), SolveError> {
        if t == self.horizon {
            if self.emitted == self.budget {
                return Err(SolveError::WalkBudgetExceeded {
                    budget: self.budget,
                });
            }
            self.emitted += 1;
            (self.visit)(&self.buf);
            return Ok(());
        }
        let v = *self.buf.last().expect("buffer holds the start position");
        for i in 0..self.succ[t][v].len() {
            let w = self.succ[t][v][i];
            self.buf.push(w);
            self.dfs(t + 1)?;
            self.buf.pop();
        }
        Ok(())
    }
}

/// Calls `visit` once for every legal walk of length exactly `horizon`
/// starting at `start`, in lexicographic order of position sequences, and
/// returns how many walks there were. Errs once more than `budget` walks
/// would be produced.
pub fn for_each_walk<F: FnMut(&[usize])>(
    tg: &TemporalGraph,
    start: usize,
    horizon: usize,
    budget: u64,
    mut visit: F,
) -> Result<u64, SolveError> {
    check_bounds(tg, start, horizon)?;
    let mut succ = Vec::with_capacity(horizon);
    for t in 1..=horizon {
        let mut lists = step_adjacency(tg, t);
        for (v, list) in lists.iter_mut().enumerate() {
            let pos = list.partition_point(|&w| w < v);
            list.insert(pos, v); // staying put is always an option
        }
        succ.push(lists);
    }
    let mut tree = WalkTree {
        succ,
        horizon,
        budget,
        emitted: 0,
        buf: vec![start],
        visit: &mut visit,
    };
    tree.dfs(0)?;
    Ok(tree.emitted)
}

/// Materializes the full enumeration of [`for_each_walk`].
pub fn enumerate_walks(
    tg: &TemporalGraph,
    start: usize,
    horizon: usize,
    budget: u64,
) -> Result<Vec<TemporalWalk>, SolveError> {
    let mut walks = Vec::new();
    for_each_walk(tg, start, horizon, budget, |w| {
        walks.push(TemporalWalk::new(w.to_vec()));
    })?;
    Ok(walks)
}

/// Minimum completion time over the exhaustive enumeration, or `None` when
/// no walk within `horizon` meets the goal. Independent of [`solve`]: no
/// layered state merging is involved.
pub fn brute_force_min_time(
    tg: &TemporalGraph,
    start: usize,
    mode: SolveMode,
    horizon: usize,
    budget: u64,
) -> Result<Option<usize>, SolveError> {
    if tg.n > MAX_SOLVER_VERTICES {
        return Err(SolveError::InstanceTooLarge { n: tg.n });
    }
    let full: u64 = (1u64 << tg.n) - 1;
    let mut best: Option<usize> = None;
    for_each_walk(tg, start, horizon, budget, |w| {
        let mut mask = 0u64;
        for (t, &p) in w.iter().enumerate() {
            mask |= 1u64 << p;
            if mask == full && (mode == SolveMode::Explore || p == start) {
                if best.map_or(true, |b| t < b) {
                    best = Some(t);
                }
                break;
            }
        }
    })?;
    Ok(best)
}

/// True iff some enumerated walk achieves the goal within `horizon`.
pub fn brute_force_solvable(
    tg: &TemporalGraph,
    start: usize,
    mode: SolveMode,
    horizon: usize,
    budget: u64,
) -> Result<bool, SolveError> {
    Ok(brute_force_min_time(tg, start, mode, horizon, budget)?.is_some())
}

const MAX_STORED_EXAMPLES: usize = 8;

/// One walk falsifying an enumerated property, with the offending step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyViolation {
    pub walk: TemporalWalk,
    pub step: usize,
    pub position: usize,
}

/// Outcome of an exhaustive walk-property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub walks_checked: u64,
    pub violations: u64,
    /// At most the first few counterexample walks, for reporting.
    pub examples: Vec<PropertyViolation>,
}

impl PropertyCheck {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Enumerates every walk of the reduced instance that starts at the center
/// and lasts for the embedded star's lifetime, and checks that whenever such
/// a walk stands on a path vertex its offset `i` satisfies
/// `lifetime < i < q - lifetime`. In a sound construction the anchor edges
/// make leaving that band impossible this early.
pub fn check_path_band(
    reduced: &ReducedInstance,
    budget: u64,
) -> Result<PropertyCheck, SolveError> {
    let (n, l, q) = (reduced.n, reduced.lifetime, reduced.q);
    let mut violations = 0u64;
    let mut examples = Vec::new();
    let walks_checked = for_each_walk(&reduced.graph, 0, l, budget, |w| {
        for (t, &p) in w.iter().enumerate().skip(1) {
            if p >= n {
                let offset = p - n;
                if offset <= l || offset + l >= q {
                    violations += 1;
                    if examples.len() < MAX_STORED_EXAMPLES {
                        examples.push(PropertyViolation {
                            walk: TemporalWalk::new(w.to_vec()),
                            step: t,
                            position: p,
                        });
                    }
                    break;
                }
            }
        }
    })?;
    Ok(PropertyCheck {
        walks_checked,
        violations,
        examples,
    })
}

/// Enumerates every walk of length `horizon` from the center and checks that
/// each one that visits all vertices of the reduced instance stands on the
/// center at the end of the star phase (step `lifetime`).
pub fn check_center_at_phase_end(
    reduced: &ReducedInstance,
    horizon: usize,
    budget: u64,
) -> Result<PropertyCheck, SolveError> {
    let g = &reduced.graph;
    if g.n > MAX_SOLVER_VERTICES {
        return Err(SolveError::InstanceTooLarge { n: g.n });
    }
    let full: u64 = (1u64 << g.n) - 1;
    let l = reduced.lifetime;
    let mut violations = 0u64;
    let mut examples = Vec::new();
    let walks_checked = for_each_walk(g, 0, horizon, budget, |w| {
        let mut mask = 0u64;
        for &p in w {
            mask |= 1u64 << p;
        }
        if mask == full && w[l] != 0 {
            violations += 1;
            if examples.len() < MAX_STORED_EXAMPLES {
                examples.push(PropertyViolation {
                    walk: TemporalWalk::new(w.to_vec()),
                    step: l,
                    position: w[l],
                });
            }
        }
    })?;
    Ok(PropertyCheck {
        walks_checked,
        violations,
        examples,
    })
}
