//! Path decompositions: validation, the explicit width-2 decomposition of a
//! reduced instance's underlying graph, and an exact pathwidth oracle for
//! small graphs.
//!
//! A path decomposition is an ordered sequence of bags covering all vertices
//! and all edges, in which every vertex occupies a contiguous run of bags.
//! Its width is the largest bag size minus one. The exact oracle computes
//! the vertex separation number by a dynamic program over vertex subsets,
//! which equals the pathwidth.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::format::ParseError;
use crate::graph::{Edge, StaticGraph};
use crate::reduction::ReducedInstance;

/// Subset-DP bound for [`exact_pathwidth`].
pub const EXACT_PATHWIDTH_MAX: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathwidthError {
    #[error("instance too large for exact oracle: {n} vertices exceeds {EXACT_PATHWIDTH_MAX}")]
    TooLargeForExact { n: usize },
    #[error("underlying graph minus the center is not a caterpillar: {reason}")]
    NotACaterpillar { reason: String },
}

/// Ordered bag sequence `X_1, ..., X_r`; each bag is sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut bag| {
                bag.sort_unstable();
                bag.dedup();
                bag
            })
            .collect();
        PathDecomposition { bags }
    }

    /// Largest bag size minus one; `None` when there are no bags.
    pub fn width(&self) -> Option<usize> {
        self.bags.iter().map(|b| b.len()).max().map(|m| m.saturating_sub(1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionViolation {
    UncoveredVertex(usize),
    ForeignVertex { bag: usize, vertex: usize },
    UncoveredEdge(Edge),
    NonContiguousVertex { vertex: usize, gap_bag: usize },
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionViolation::UncoveredVertex(v) => {
                write!(f, "vertex {} appears in no bag", v)
            }
            DecompositionViolation::ForeignVertex { bag, vertex } => {
                write!(f, "bag {} contains unknown vertex {}", bag + 1, vertex)
            }
            DecompositionViolation::UncoveredEdge((u, v)) => {
                write!(f, "edge {{{},{}}} lies inside no bag", u, v)
            }
            DecompositionViolation::NonContiguousVertex { vertex, gap_bag } => write!(
                f,
                "vertex {} is missing from bag {} inside its run",
                vertex,
                gap_bag + 1
            ),
        }
    }
}

/// Validity report plus the decomposition's width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub violations: Vec<DecompositionViolation>,
    pub width: Option<usize>,
}

impl DecompositionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks vertex coverage, edge coverage, and the contiguity of each
/// vertex's bag interval against `g`.
pub fn validate_decomposition(g: &StaticGraph, pd: &PathDecomposition) -> DecompositionReport {
    let mut violations = Vec::new();

    let mut first = vec![usize::MAX; g.n];
    let mut last = vec![usize::MAX; g.n];
    for (i, bag) in pd.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n {
                violations.push(DecompositionViolation::ForeignVertex { bag: i, vertex: v });
                continue;
            }
            if first[v] == usize::MAX {
                first[v] = i;
            }
            last[v] = i;
        }
    }

    for v in 0..g.n {
        if first[v] == usize::MAX {
            violations.push(DecompositionViolation::UncoveredVertex(v));
        }
    }

    for &(u, v) in &g.edges {
        let covered = pd
            .bags
            .iter()
            .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok());
        if !covered {
            violations.push(DecompositionViolation::UncoveredEdge((u, v)));
        }
    }

    for v in 0..g.n {
        if first[v] == usize::MAX {
            continue;
        }
        for i in first[v]..=last[v] {
            if pd.bags[i].binary_search(&v).is_err() {
                violations.push(DecompositionViolation::NonContiguousVertex {
                    vertex: v,
                    gap_bag: i,
                });
                break;
            }
        }
    }

    DecompositionReport {
        violations,
        width: pd.width(),
    }
}

fn caterpillar_over(vertices: &BTreeSet<usize>, edges: &[Edge]) -> Result<(), String> {
    if vertices.len() <= 1 {
        return Ok(());
    }
    if edges.len() + 1 != vertices.len() {
        return Err(format!(
            "{} vertices but {} edges, not a tree",
            vertices.len(),
            edges.len()
        ));
    }
    let mut degree: std::collections::BTreeMap<usize, usize> =
        vertices.iter().map(|&v| (v, 0)).collect();
    let mut parent: std::collections::BTreeMap<usize, usize> =
        vertices.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut std::collections::BTreeMap<usize, usize>, mut x: usize) -> usize {
        while parent[&x] != x {
            let up = parent[&parent[&x]];
            parent.insert(x, up);
            x = up;
        }
        x
    }
    for &(u, v) in edges {
        *degree.get_mut(&u).ok_or_else(|| format!("edge endpoint {} outside subgraph", u))? += 1;
        *degree.get_mut(&v).ok_or_else(|| format!("edge endpoint {} outside subgraph", v))? += 1;
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return Err("contains a cycle".to_string());
        }
        parent.insert(ru, rv);
    }
    let root = *vertices.iter().next().expect("nonempty");
    let root = find(&mut parent, root);
    for &v in vertices {
        if find(&mut parent, v) != root {
            return Err("not connected".to_string());
        }
    }
    // Removing all leaves from a tree leaves a tree; it is a path iff every
    // remaining degree is at most two.
    for &v in vertices {
        if degree[&v] <= 1 {
            continue;
        }
        let inner_degree = edges
            .iter()
            .filter(|&&(a, b)| {
                (a == v && degree[&b] > 1) || (b == v && degree[&a] > 1)
            })
            .count();
        if inner_degree > 2 {
            return Err(format!("vertex {} keeps degree {} after leaf removal", v, inner_degree));
        }
    }
    Ok(())
}

/// True iff `g` is connected, acyclic, and removing all leaves yields a path
/// (or nothing at all). Graphs with at most one vertex qualify.
pub fn is_caterpillar(g: &StaticGraph) -> bool {
    let vertices: BTreeSet<usize> = (0..g.n).collect();
    let edges: Vec<Edge> = g.edges.iter().copied().collect();
    caterpillar_over(&vertices, &edges).is_ok()
}

/// Builds the width-2 decomposition of a reduced instance's underlying
/// graph: one bag per path spine edge, pendant star vertices duplicated into
/// a bag next to their anchor, and the center added to every bag.
///
/// Star vertices whose only underlying neighbour is the center (they were
/// never a component minimum, so they have no anchor) get a trailing
/// `{center, v}` bag of their own.
pub fn build_reduction_decomposition(
    reduced: &ReducedInstance,
) -> Result<PathDecomposition, PathwidthError> {
    let under = reduced.graph.underlying();
    let n = reduced.n;
    let q = reduced.q;

    // Anchor position of each non-center star vertex, from the underlying
    // edges it has into the path.
    let mut anchor: Vec<Option<usize>> = vec![None; n];
    let mut lonely: Vec<usize> = Vec::new();
    for j in 1..n {
        let hooks: Vec<usize> = under
            .edges
            .iter()
            .filter(|&&(u, v)| u == j && v >= n)
            .map(|&(_, v)| v - n)
            .collect();
        match hooks.len() {
            0 => lonely.push(j),
            1 => anchor[j] = Some(hooks[0]),
            more => {
                return Err(PathwidthError::NotACaterpillar {
                    reason: format!("star vertex {} attaches to {} path positions", j, more),
                })
            }
        }
        let star_side = under
            .edges
            .iter()
            .any(|&(u, v)| v == j && u != 0 || u == j && v < n && v != 0);
        if star_side {
            return Err(PathwidthError::NotACaterpillar {
                reason: format!("star vertex {} has a non-center star neighbour", j),
            });
        }
    }

    // Cross-check the caterpillar shape of the underlying graph without the
    // center and without the center-only pendants.
    let mut vertices: BTreeSet<usize> = (1..n).filter(|j| anchor[*j].is_some()).collect();
    vertices.extend(n..n + q + 1);
    let edges: Vec<Edge> = under
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| vertices.contains(&u) && vertices.contains(&v))
        .collect();
    caterpillar_over(&vertices, &edges)
        .map_err(|reason| PathwidthError::NotACaterpillar { reason })?;

    let mut pendants_at: Vec<Vec<usize>> = vec![Vec::new(); q + 1];
    for j in 1..n {
        if let Some(a) = anchor[j] {
            pendants_at[a].push(j);
        }
    }

    let path = |k: usize| n + k;
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(q + n);
    for k in 0..q {
        for &j in &pendants_at[k] {
            bags.push(vec![0, j, path(k)]);
        }
        bags.push(vec![0, path(k), path(k + 1)]);
    }
    for &j in &pendants_at[q] {
        bags.push(vec![0, j, path(q)]);
    }
    for &j in &lonely {
        bags.push(vec![0, j]);
    }
    Ok(PathDecomposition::new(bags))
}

/// Exact pathwidth of `g` via the vertex separation number: minimize over
/// vertex orderings the maximum number of already-placed vertices that still
/// have unplaced neighbours. Subset DP, so `n` is capped at
/// [`EXACT_PATHWIDTH_MAX`].
pub fn exact_pathwidth(g: &StaticGraph) -> Result<usize, PathwidthError> {
    let n = g.n;
    if n > EXACT_PATHWIDTH_MAX {
        return Err(PathwidthError::TooLargeForExact { n });
    }
    if n == 0 {
        return Ok(0);
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in &g.edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let size = 1usize << n;
    let mut best = vec![u8::MAX; size];
    best[0] = 0;
    for s in 1..size {
        let su = s as u32;
        let mut active = 0u8;
        let mut rest = su;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[v] & !su != 0 {
                active += 1;
            }
        }
        let mut over_last = u8::MAX;
        let mut rest = su;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            over_last = over_last.min(best[s & !(1usize << v)]);
        }
        best[s] = active.max(over_last);
    }
    Ok(best[size - 1] as usize)
}

/// Decomposition text format: one line per bag, vertices space-separated in
/// ascending order. `#` comments and blank lines are ignored.
pub fn serialize_decomposition(pd: &PathDecomposition) -> String {
    let mut out = String::new();
    for bag in &pd.bags {
        let words: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<PathDecomposition, ParseError> {
    let mut bags = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut bag = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| ParseError {
                line: idx + 1,
                message: format!("invalid vertex `{}`", tok),
            })?;
            if let Some(&prev) = bag.last() {
                if v <= prev {
                    return Err(ParseError {
                        line: idx + 1,
                        message: format!("bag vertices must be strictly ascending, got {} after {}", v, prev),
                    });
                }
            }
            bag.push(v);
        }
        bags.push(bag);
    }
    Ok(PathDecomposition { bags })
}
