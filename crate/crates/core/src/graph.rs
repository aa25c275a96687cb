//! Temporal graphs, their static snapshots, and star-shaped instances.
//!
//! A temporal graph is a fixed vertex set `0..n` together with one edge set
//! per time step `1..=lifetime`. All edges are undirected and stored in the
//! canonical `(min, max)` form.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Undirected edge with endpoints ordered `u < v`.
pub type Edge = (usize, usize);

/// Normalizes an endpoint pair into canonical `(min, max)` form.
pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("no such time step {step} (lifetime {lifetime})")]
    StepOutOfRange { step: usize, lifetime: usize },
}

/// One invariant violation found by [`TemporalGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphViolation {
    EndpointOutOfRange { step: usize, edge: Edge, n: usize },
    SelfLoop { step: usize, vertex: usize },
    StepCountMismatch { lifetime: usize, step_sets: usize },
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphViolation::EndpointOutOfRange { step, edge, n } => write!(
                f,
                "endpoint {} out of range 0..{} in edge {{{},{}}} at step {}",
                edge.1.max(edge.0),
                n,
                edge.0,
                edge.1,
                step
            ),
            GraphViolation::SelfLoop { step, vertex } => {
                write!(f, "self-loop at vertex {} at step {}", vertex, step)
            }
            GraphViolation::StepCountMismatch {
                lifetime,
                step_sets,
            } => write!(
                f,
                "lifetime is {} but {} edge sets are present",
                lifetime, step_sets
            ),
        }
    }
}

/// Validation never aborts; it reports every violation it finds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<GraphViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The series of graphs `G_1, ..., G_L` over the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    pub n: usize,
    /// Number of time steps `L`; equals `steps.len()` on valid graphs.
    pub lifetime: usize,
    /// `steps[t - 1]` is the edge set active at time step `t`.
    pub steps: Vec<BTreeSet<Edge>>,
}

impl TemporalGraph {
    /// Builds a graph from raw per-step edge lists. Endpoint pairs are
    /// normalized and duplicates within a step are dropped; index range and
    /// self-loop problems are left for [`TemporalGraph::validate`] to report.
    pub fn new(n: usize, steps: Vec<Vec<(usize, usize)>>) -> Self {
        let steps: Vec<BTreeSet<Edge>> = steps
            .into_iter()
            .map(|es| es.into_iter().map(|(u, v)| edge(u, v)).collect())
            .collect();
        TemporalGraph {
            n,
            lifetime: steps.len(),
            steps,
        }
    }

    /// Graph with `lifetime` edgeless steps.
    pub fn edgeless(n: usize, lifetime: usize) -> Self {
        TemporalGraph {
            n,
            lifetime,
            steps: vec![BTreeSet::new(); lifetime],
        }
    }

    /// Edge set of time step `t` (1-based).
    pub fn step_edges(&self, t: usize) -> Result<&BTreeSet<Edge>, GraphError> {
        if t == 0 || t > self.steps.len() {
            return Err(GraphError::StepOutOfRange {
                step: t,
                lifetime: self.lifetime,
            });
        }
        Ok(&self.steps[t - 1])
    }

    /// True when `{u, v}` is usable at step `t`.
    pub fn has_edge(&self, t: usize, u: usize, v: usize) -> bool {
        self.step_edges(t)
            .map(|es| es.contains(&edge(u, v)))
            .unwrap_or(false)
    }

    /// The current graph at step `t` as a static graph.
    pub fn snapshot(&self, t: usize) -> Result<StaticGraph, GraphError> {
        Ok(StaticGraph {
            n: self.n,
            edges: self.step_edges(t)?.clone(),
        })
    }

    /// True iff the snapshot at step `t` is connected with exactly `n - 1`
    /// edges.
    pub fn snapshot_is_tree(&self, t: usize) -> Result<bool, GraphError> {
        Ok(self.snapshot(t)?.is_tree())
    }

    /// Union of all per-step edge sets over the same vertex set.
    pub fn underlying(&self) -> StaticGraph {
        let mut edges = BTreeSet::new();
        for es in &self.steps {
            edges.extend(es.iter().copied());
        }
        StaticGraph { n: self.n, edges }
    }

    /// Reports every invariant violation: endpoints out of `0..n`,
    /// self-loops, and a lifetime that disagrees with the number of stored
    /// edge sets.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.lifetime != self.steps.len() {
            violations.push(GraphViolation::StepCountMismatch {
                lifetime: self.lifetime,
                step_sets: self.steps.len(),
            });
        }
        for (i, es) in self.steps.iter().enumerate() {
            let step = i + 1;
            for &(u, v) in es {
                if u == v {
                    violations.push(GraphViolation::SelfLoop { step, vertex: u });
                } else if v >= self.n {
                    violations.push(GraphViolation::EndpointOutOfRange {
                        step,
                        edge: (u, v),
                        n: self.n,
                    });
                }
            }
        }
        ValidationReport { violations }
    }
}

/// A plain undirected graph on the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticGraph {
    pub n: usize,
    pub edges: BTreeSet<Edge>,
}

impl StaticGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        StaticGraph {
            n,
            edges: edges.into_iter().map(|(u, v)| edge(u, v)).collect(),
        }
    }

    /// Sorted adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Connected components, each listed in ascending vertex order (so the
    /// first entry is the component's lowest-numbered vertex) and the
    /// components themselves ordered by that minimum.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut index_of = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let root = find(&mut parent, v);
            if index_of[root] == usize::MAX {
                index_of[root] = comps.len();
                comps.push(Vec::new());
            }
            comps[index_of[root]].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Connected with exactly `n - 1` edges. The empty graph is not a tree.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StarError {
    #[error("a star instance needs at least one vertex")]
    Empty,
    #[error("graph fails validation: {0}")]
    InvalidGraph(GraphViolation),
    #[error("edge {{{},{}}} at step {step} is not incident to the center", edge.0, edge.1)]
    NotIncidentToCenter { step: usize, edge: Edge },
}

/// A temporal graph whose every edge is incident to the center vertex `0`,
/// i.e. every snapshot is a subgraph of the star on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarInstance {
    tg: TemporalGraph,
}

impl StarInstance {
    pub fn new(tg: TemporalGraph) -> Result<Self, StarError> {
        if tg.n == 0 {
            return Err(StarError::Empty);
        }
        let report = tg.validate();
        if let Some(v) = report.violations.into_iter().next() {
            return Err(StarError::InvalidGraph(v));
        }
        for (i, es) in tg.steps.iter().enumerate() {
            for &e in es {
                if e.0 != 0 {
                    return Err(StarError::NotIncidentToCenter { step: i + 1, edge: e });
                }
            }
        }
        Ok(StarInstance { tg })
    }

    /// The center `s`, always vertex `0`.
    pub fn center(&self) -> usize {
        0
    }

    pub fn graph(&self) -> &TemporalGraph {
        &self.tg
    }

    pub fn into_graph(self) -> TemporalGraph {
        self.tg
    }
}
