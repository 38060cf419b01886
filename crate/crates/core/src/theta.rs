//! Theta graphs `θ(ℓ1, …, ℓm)`: two hubs joined by internally disjoint paths.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::equivalence::local_orbit;
use crate::graph::{Graph, GraphError};
use crate::ground::{positions, Ground, VertexId, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("path lengths must be positive")]
    ZeroLength,
    #[error("at most one path may have length 1")]
    ParallelEdges,
    #[error("a theta graph needs at least one path")]
    Empty,
    #[error("theta graph with {0} vertices is too large")]
    TooLarge(usize),
    #[error("{0} is outside the range of the closed form")]
    OutOfRange(ThetaSpec),
    #[error("handle endpoints must be distinct")]
    SameEndpoints,
    #[error("a handle needs length at least 3, got {0}")]
    ShortHandle(usize),
    #[error("cannot parse theta spec {0:?}")]
    Parse(String),
}

/// Sorted path lengths of a theta graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaSpec {
    lengths: Vec<usize>,
}

impl ThetaSpec {
    pub fn new(mut lengths: Vec<usize>) -> Result<Self, ThetaError> {
        if lengths.is_empty() {
            return Err(ThetaError::Empty);
        }
        if lengths.contains(&0) {
            return Err(ThetaError::ZeroLength);
        }
        if lengths.iter().filter(|&&l| l == 1).count() > 1 {
            return Err(ThetaError::ParallelEdges);
        }
        lengths.sort_unstable();
        let spec = ThetaSpec { lengths };
        if spec.vertex_count() > MAX_VERTICES {
            return Err(ThetaError::TooLarge(spec.vertex_count()));
        }
        Ok(spec)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Number of paths `m`.
    pub fn paths(&self) -> usize {
        self.lengths.len()
    }

    /// `2 + Σ (ℓ_i − 1)`.
    pub fn vertex_count(&self) -> usize {
        2 + self.lengths.iter().map(|l| l - 1).sum::<usize>()
    }

    /// Number of paths of length 2, i.e. common neighbors of the hubs.
    pub fn common_neighbors(&self) -> usize {
        self.lengths.iter().filter(|&&l| l == 2).count()
    }

    /// Every spec with `m ≥ min_paths` paths and at most `max_vertices` vertices.
    pub fn enumerate(min_paths: usize, max_vertices: usize) -> Vec<ThetaSpec> {
        fn go(
            start: usize,
            budget: usize,
            current: &mut Vec<usize>,
            min_paths: usize,
            out: &mut Vec<ThetaSpec>,
        ) {
            if current.len() >= min_paths.max(1) {
                out.push(ThetaSpec {
                    lengths: current.clone(),
                });
            }
            for l in start..=budget + 1 {
                current.push(l);
                // non-decreasing, and only one path of length 1
                go(l.max(2), budget - (l - 1), current, min_paths, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        if max_vertices >= 2 {
            go(1, max_vertices - 2, &mut Vec::new(), min_paths, &mut out);
        }
        out.sort();
        out
    }
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(usize::to_string).collect();
        write!(f, "theta:{}", parts.join(","))
    }
}

impl FromStr for ThetaSpec {
    type Err = ThetaError;

    /// Accepts `theta:1,3,3` or the bare list `1,3,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        let body = body.strip_prefix("theta:").unwrap_or(body);
        let lengths = body
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ThetaError::Parse(s.to_string()))?;
        ThetaSpec::new(lengths)
    }
}

/// Hubs are vertices 0 and 1; internal vertices follow path by path.
pub fn build_theta(spec: &ThetaSpec) -> Graph {
    let n = spec.vertex_count();
    let mut g = Graph::empty(n);
    let mut next = 2;
    for &l in &spec.lengths {
        let mut prev = 0;
        for _ in 1..l {
            g.set_edge_index(prev, next, true);
            prev = next;
            next += 1;
        }
        g.set_edge_index(prev, 1, true);
    }
    g
}

/// Recognizes a theta graph from degrees. A cycle `C_k` is reported as
/// `θ(1, k−1)` split at its least-labeled edge; otherwise there must be
/// exactly two vertices of degree `m ≥ 3`, every other vertex of degree 2,
/// and every path leaving one hub must arrive at the other.
pub fn recognize_theta(g: &Graph) -> Option<ThetaSpec> {
    recognize_with_hubs(g).map(|(spec, _, _)| spec)
}

/// As [`recognize_theta`], also returning the hubs.
pub fn recognize_with_hubs(g: &Graph) -> Option<(ThetaSpec, VertexId, VertexId)> {
    let n = g.n();
    if n < 3 || !g.is_connected() {
        return None;
    }
    if g.is_cycle_graph() {
        let (i, j) = g
            .edge_indices()
            .into_iter()
            .min_by_key(|&(i, j)| {
                let (a, b) = (g.ground().id(i), g.ground().id(j));
                (a.min(b), a.max(b))
            })
            .expect("cycle has edges");
        let spec = ThetaSpec {
            lengths: vec![1, n - 1],
        };
        return Some((spec, g.ground().id(i), g.ground().id(j)));
    }
    let hubs: Vec<usize> = (0..n).filter(|&i| g.degree_index(i) != 2).collect();
    let [x, y] = hubs[..] else {
        return None;
    };
    let m = g.degree_index(x);
    if m < 3 || g.degree_index(y) != m {
        return None;
    }
    let mut lengths = Vec::with_capacity(m);
    let mut seen = (1u64 << x) | (1u64 << y);
    for start in positions(g.row(x)) {
        let (mut prev, mut cur, mut len) = (x, start, 1);
        while cur != y {
            if cur == x || seen >> cur & 1 == 1 {
                return None;
            }
            seen |= 1u64 << cur;
            let next = positions(g.row(cur) & !(1u64 << prev)).next()?;
            prev = cur;
            cur = next;
            len += 1;
        }
        lengths.push(len);
    }
    if seen != g.full_mask() {
        return None;
    }
    let spec = ThetaSpec::new(lengths).ok()?;
    Some((spec, g.ground().id(x), g.ground().id(y)))
}

/// A theta graph with at least two paths and no path of length 2, so the
/// hubs have no common neighbor.
pub fn is_theta_without_common_neighbor(g: &Graph) -> bool {
    recognize_theta(g).is_some_and(|s| s.paths() >= 2 && s.common_neighbors() == 0)
}

/// Whether some graph locally equivalent to `g` is a theta graph whose
/// hubs have no common neighbor.
pub fn good_theta_for_theorem(g: &Graph) -> bool {
    local_orbit(g)
        .members()
        .any(is_theta_without_common_neighbor)
}

/// Closed-form primality: prime iff at most one path has length 2.
/// Defined for `m ≥ 2` and at least 5 vertices.
pub fn theta_is_prime(spec: &ThetaSpec) -> Result<bool, ThetaError> {
    if spec.paths() < 2 || spec.vertex_count() < 5 {
        return Err(ThetaError::OutOfRange(spec.clone()));
    }
    Ok(spec.common_neighbors() <= 1)
}

/// Which row of the non-essential count table applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaCase {
    /// `ℓ1 = 1`, `m = 3`, `ℓ2 ≤ 3`: locally equivalent to a cycle.
    CycleEquivalent,
    /// `ℓ1 = 1`, `m = 3`, `ℓ2 ≥ 4`.
    EdgeWithTwoLongPaths,
    /// `ℓ1 = 1`, `m ≥ 4`, `ℓ2 = 2`.
    EdgeAndCommonNeighbor,
    /// `ℓ1 = 1`, `m ≥ 4`, `ℓ2 ≥ 3`.
    EdgeWithLongPaths,
    /// `ℓ1 = 2`.
    CommonNeighbor,
    /// `ℓ1 ≥ 3`.
    AllLong,
}

impl ThetaCase {
    pub fn non_essential_count(self) -> usize {
        match self {
            ThetaCase::CycleEquivalent => 0,
            ThetaCase::EdgeWithTwoLongPaths | ThetaCase::EdgeWithLongPaths | ThetaCase::AllLong => {
                2
            }
            ThetaCase::EdgeAndCommonNeighbor | ThetaCase::CommonNeighbor => 3,
        }
    }
}

/// Requires `m ≥ 3`, `ℓ3 ≥ 3`, and `ℓ2 ≥ 3` or `(ℓ1, ℓ2) = (1, 2)`.
pub fn within_count_hypotheses(spec: &ThetaSpec) -> bool {
    let l = &spec.lengths;
    l.len() >= 3 && l[2] >= 3 && (l[1] >= 3 || (l[0], l[1]) == (1, 2))
}

/// Exact number of non-essential vertices, checked row by row in table order.
pub fn theta_non_essential_count(spec: &ThetaSpec) -> Result<(usize, ThetaCase), ThetaError> {
    if !within_count_hypotheses(spec) {
        return Err(ThetaError::OutOfRange(spec.clone()));
    }
    let l = &spec.lengths;
    let m = l.len();
    let case = if l[0] == 1 && m == 3 && l[1] <= 3 {
        ThetaCase::CycleEquivalent
    } else if l[0] == 1 && m == 3 && l[1] >= 4 {
        ThetaCase::EdgeWithTwoLongPaths
    } else if l[0] == 1 && m >= 4 && l[1] == 2 {
        ThetaCase::EdgeAndCommonNeighbor
    } else if l[0] == 1 && m >= 4 && l[1] >= 3 {
        ThetaCase::EdgeWithLongPaths
    } else if l[0] == 2 {
        ThetaCase::CommonNeighbor
    } else {
        ThetaCase::AllLong
    };
    Ok((case.non_essential_count(), case))
}

/// Adds a path of `length` edges from `u` to `v` through `length − 1` new
/// vertices with fresh ids.
pub fn add_handle(g: &Graph, u: VertexId, v: VertexId, length: usize) -> Result<Graph, ThetaError> {
    if length < 3 {
        return Err(ThetaError::ShortHandle(length));
    }
    if u == v {
        return Err(ThetaError::SameEndpoints);
    }
    let iu = g.ground().require(u).map_err(GraphError::from)?;
    let iv = g.ground().require(v).map_err(GraphError::from)?;
    let n = g.n();
    let total = n + length - 1;
    if total > MAX_VERTICES {
        return Err(ThetaError::TooLarge(total));
    }
    let first = g.ground().next_free_id();
    let mut ids = g.ground().ids().to_vec();
    ids.extend((0..length as VertexId - 1).map(|k| first + k));
    let mut out = Graph::edgeless(Ground::new(ids).map_err(GraphError::from)?);
    for (i, j) in g.edge_indices() {
        out.set_edge_index(i, j, true);
    }
    let mut prev = iu;
    for k in 0..length - 1 {
        out.set_edge_index(prev, n + k, true);
        prev = n + k;
    }
    out.set_edge_index(prev, iv, true);
    Ok(out)
}
