//! Temporal walks and their validation.
//!
//! A walk stores the explorer's position at the end of each time step:
//! `positions[0]` is where the explorer stands before step 1 and
//! `positions[t]` is where it stands after step `t`. At every step the
//! explorer either stays put (always legal, even at an isolated vertex) or
//! crosses an edge that exists at that step.

use std::fmt;

use crate::graph::{edge, TemporalGraph};

/// Exploration goal: visit every vertex, optionally returning to the start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveMode {
    Explore,
    Rtb,
}

impl fmt::Display for SolveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveMode::Explore => write!(f, "explore"),
            SolveMode::Rtb => write!(f, "rtb"),
        }
    }
}

/// Position sequence `w_0, w_1, ..., w_T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TemporalWalk {
    pub positions: Vec<usize>,
}

impl TemporalWalk {
    pub fn new(positions: Vec<usize>) -> Self {
        TemporalWalk { positions }
    }

    /// Number of steps `T` (one less than the number of positions).
    pub fn steps(&self) -> usize {
        self.positions.len().saturating_sub(1)
    }

    pub fn start(&self) -> Option<usize> {
        self.positions.first().copied()
    }

    pub fn end(&self) -> Option<usize> {
        self.positions.last().copied()
    }
}

/// Outcome of checking a walk against a temporal graph.
///
/// `visited` covers the longest valid prefix; the completion times are only
/// reported for fully valid walks. `completion_time_explore` is the first
/// step by whose end every vertex has been visited, `completion_time_rtb`
/// additionally requires standing on the start vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkReport {
    pub valid: bool,
    pub first_violation: Option<(usize, String)>,
    pub visited: Vec<usize>,
    pub completion_time_explore: Option<usize>,
    pub completion_time_rtb: Option<usize>,
}

impl WalkReport {
    /// True when the walk is valid and meets the goal of `mode`.
    pub fn achieves(&self, mode: SolveMode) -> bool {
        self.valid
            && match mode {
                SolveMode::Explore => self.completion_time_explore.is_some(),
                SolveMode::Rtb => self.completion_time_rtb.is_some(),
            }
    }
}

/// Checks `walk` against `tg` starting from `start`.
pub fn validate_walk(tg: &TemporalGraph, start: usize, walk: &TemporalWalk) -> WalkReport {
    let pos = &walk.positions;
    let mut violation: Option<(usize, String)> = None;

    if pos.is_empty() {
        violation = Some((0, "walk has no positions".to_string()));
    } else if pos[0] >= tg.n {
        violation = Some((0, format!("position {} out of range 0..{}", pos[0], tg.n)));
    } else if pos[0] != start {
        violation = Some((0, format!("walk starts at {} instead of {}", pos[0], start)));
    } else {
        for t in 1..pos.len() {
            if t > tg.lifetime {
                violation = Some((t, "walk exceeds lifetime".to_string()));
                break;
            }
            let (a, b) = (pos[t - 1], pos[t]);
            if b >= tg.n {
                violation = Some((t, format!("position {} out of range 0..{}", b, tg.n)));
                break;
            }
            if a != b && !tg.has_edge(t, a, b) {
                let (u, v) = edge(a, b);
                violation = Some((t, format!("no edge {{{},{}}} at step {}", u, v, t)));
                break;
            }
        }
    }

    // Visited covers positions up to (excluding) the violating step.
    let valid_prefix = match &violation {
        None => pos.len(),
        Some((t, _)) => *t,
    };
    let mut visited: Vec<usize> = pos[..valid_prefix].to_vec();
    visited.sort_unstable();
    visited.dedup();

    let (mut explore, mut rtb) = (None, None);
    if violation.is_none() {
        let mut seen = vec![false; tg.n];
        let mut remaining = tg.n;
        for (t, &p) in pos.iter().enumerate() {
            if !seen[p] {
                seen[p] = true;
                remaining -= 1;
            }
            if remaining == 0 {
                if explore.is_none() {
                    explore = Some(t);
                }
                if rtb.is_none() && p == start {
                    rtb = Some(t);
                    break;
                }
            }
        }
    }

    WalkReport {
        valid: violation.is_none(),
        first_violation: violation,
        visited,
        completion_time_explore: explore,
        completion_time_rtb: rtb,
    }
}
