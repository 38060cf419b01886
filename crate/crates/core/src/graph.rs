//! Simple graphs and the vertex-minor operations on them.
//!
//! Adjacency is kept as one `u64` row per vertex position, so local
//! complementation, pivoting and cut-rank are a handful of word operations.
//! Public methods take vertex ids; the `*_index` variants take positions and
//! are the fast paths used by the exhaustive sweeps.

use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::gf2::rank_of_masks;
use crate::ground::{full_mask, positions, Ground, GroundError, VertexId, MAX_VERTICES};

type Rows = SmallVec<[u64; 12]>;

/// Largest vertex count for which [`Graph::code`] fits in a `u64`.
pub const MAX_CODE_VERTICES: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("{0}{1} is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("graph with {0} vertices is too large for this operation")]
    TooLarge(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A bipartition `(A, B)` with both sides of size at least 2 and cut-rank at most 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
}

/// Degree-based facts about a graph, in ground order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub isolated: Vec<VertexId>,
    pub pendant: Vec<VertexId>,
    pub twins: Vec<(VertexId, VertexId)>,
    pub is_bipartite: bool,
    pub is_cycle: bool,
    pub degrees: Vec<usize>,
}

/// A labeled simple graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    ground: Ground,
    rows: Rows,
}

impl Graph {
    /// Edgeless graph on `0..n`.
    pub fn empty(n: usize) -> Self {
        Graph::edgeless(Ground::range(n))
    }

    pub fn edgeless(ground: Ground) -> Self {
        let n = ground.len();
        Graph {
            ground,
            rows: SmallVec::from_elem(0, n),
        }
    }

    /// Graph on `0..n` from position pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GroundError::UnknownVertex(u as VertexId).into());
            }
            if v >= n {
                return Err(GroundError::UnknownVertex(v as VertexId).into());
            }
            if u == v {
                return Err(GraphError::Loop(u as VertexId));
            }
            g.set_edge_index(u, v, true);
        }
        Ok(g)
    }

    /// Graph on an arbitrary ground from id pairs.
    pub fn from_labeled_edges(
        ground: Ground,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let mut g = Graph::edgeless(ground);
        for &(u, v) in edges {
            let i = g.ground.require(u)?;
            let j = g.ground.require(v)?;
            if i == j {
                return Err(GraphError::Loop(u));
            }
            g.set_edge_index(i, j, true);
        }
        Ok(g)
    }

    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Graph::from_edges(k, &edges).expect("valid cycle")
    }

    pub fn path(k: usize) -> Self {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Graph::from_edges(k, &edges).expect("valid path")
    }

    pub fn complete(k: usize) -> Self {
        let edges: Vec<_> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        Graph::from_edges(k, &edges).expect("valid complete graph")
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.n())
    }

    /// Neighbor mask of position `i`.
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn adjacent_index(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        let i = self.ground.require(u)?;
        let j = self.ground.require(v)?;
        Ok(self.adjacent_index(i, j))
    }

    pub fn set_edge_index(&mut self, i: usize, j: usize, present: bool) {
        assert!(i != j, "loops are not allowed");
        if present {
            self.rows[i] |= 1 << j;
            self.rows[j] |= 1 << i;
        } else {
            self.rows[i] &= !(1 << j);
            self.rows[j] &= !(1 << i);
        }
    }

    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>, GraphError> {
        let i = self.ground.require(v)?;
        Ok(self.ground.ids_of(self.rows[i]))
    }

    pub fn degree_index(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges as position pairs `(i, j)` with `i < j`, sorted.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in positions(self.rows[i] & !full_mask(i + 1)) {
                out.push((i, j));
            }
        }
        out
    }

    /// Edges as id pairs, in position order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.edge_indices()
            .into_iter()
            .map(|(i, j)| (self.ground.id(i), self.ground.id(j)))
            .collect()
    }

    /// Same adjacency, different vertex ids.
    pub fn relabel(&self, ground: Ground) -> Result<Graph, GraphError> {
        if ground.len() != self.n() {
            return Err(GraphError::Parse(format!(
                "relabel needs {} ids, got {}",
                self.n(),
                ground.len()
            )));
        }
        Ok(Graph {
            ground,
            rows: self.rows.clone(),
        })
    }

    // -- vertex-minor operations ------------------------------------------

    /// `G*v`: complements the subgraph induced on the neighborhood of `v`.
    pub fn local_complement(&self, v: VertexId) -> Result<Graph, GraphError> {
        Ok(self.local_complement_index(self.ground.require(v)?))
    }

    pub fn local_complement_index(&self, i: usize) -> Graph {
        let mut g = self.clone();
        let nb = g.rows[i];
        for u in positions(nb) {
            g.rows[u] ^= nb & !(1u64 << u);
        }
        g
    }

    /// `G∧vw`, computed by the three-set toggle followed by exchanging the
    /// labels of `v` and `w`.
    pub fn pivot(&self, v: VertexId, w: VertexId) -> Result<Graph, GraphError> {
        let i = self.ground.require(v)?;
        let j = self.ground.require(w)?;
        self.pivot_index(i, j).ok_or(GraphError::NotAnEdge(v, w))
    }

    /// Pivot on the edge between positions `i` and `j`; `None` if not an edge.
    pub fn pivot_index(&self, i: usize, j: usize) -> Option<Graph> {
        if i == j || !self.adjacent_index(i, j) {
            return None;
        }
        let nv = self.rows[i];
        let nw = self.rows[j];
        let only_v = nv & !nw & !(1u64 << j);
        let only_w = nw & !nv & !(1u64 << i);
        let both = nv & nw;
        let mut g = self.clone();
        g.toggle_between(only_v, only_w);
        g.toggle_between(only_v, both);
        g.toggle_between(only_w, both);
        g.swap_positions(i, j);
        Some(g)
    }

    /// Toggles every pair `xy` with `x ∈ xs`, `y ∈ ys`; the sets are disjoint.
    fn toggle_between(&mut self, xs: u64, ys: u64) {
        for x in positions(xs) {
            self.rows[x] ^= ys;
        }
        for y in positions(ys) {
            self.rows[y] ^= xs;
        }
    }

    fn swap_positions(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
        for r in self.rows.iter_mut() {
            let bi = *r >> i & 1;
            let bj = *r >> j & 1;
            if bi != bj {
                *r ^= (1u64 << i) | (1u64 << j);
            }
        }
    }

    /// `G \ v`.
    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph, GraphError> {
        Ok(self.delete_index(self.ground.require(v)?))
    }

    pub fn delete_index(&self, i: usize) -> Graph {
        self.induced(self.full_mask() & !(1u64 << i))
    }

    /// Induced subgraph on the positions in `mask`.
    pub fn induced(&self, mask: u64) -> Graph {
        let mask = mask & self.full_mask();
        let rows = positions(mask)
            .map(|i| compress_u64(self.rows[i] & mask, mask))
            .collect();
        Graph {
            ground: self.ground.restrict(mask),
            rows,
        }
    }

    /// Position of the least-labeled neighbor of position `i`.
    pub fn least_neighbor_index(&self, i: usize) -> Option<usize> {
        positions(self.rows[i]).min_by_key(|&j| self.ground.id(j))
    }

    /// `G/v`: `G \ v` if `v` is isolated, else `G∧vw \ v` for the
    /// least-labeled neighbor `w`.
    pub fn contract_vertex(&self, v: VertexId) -> Result<Graph, GraphError> {
        Ok(self.contract_index(self.ground.require(v)?))
    }

    pub fn contract_index(&self, i: usize) -> Graph {
        match self.least_neighbor_index(i) {
            None => self.delete_index(i),
            Some(j) => self
                .pivot_index(i, j)
                .expect("least neighbor is adjacent")
                .delete_index(i),
        }
    }

    /// The pivoted graph whose deletion at `i` gives `G/v`, or `self` when
    /// `i` is isolated. Position `i` still carries the label of `v`.
    pub fn contraction_base_index(&self, i: usize) -> Graph {
        match self.least_neighbor_index(i) {
            None => self.clone(),
            Some(j) => self.pivot_index(i, j).expect("least neighbor is adjacent"),
        }
    }

    // -- cut-rank, splits, primality -----------------------------------------

    /// `ρ_G(X) = rank A_G[X, V − X]`.
    pub fn cut_rank(&self, set: &[VertexId]) -> Result<usize, GraphError> {
        Ok(self.cut_rank_mask(self.ground.mask_of(set)?))
    }

    pub fn cut_rank_mask(&self, mask: u64) -> usize {
        let mask = mask & self.full_mask();
        let other = self.full_mask() & !mask;
        let mut rows: SmallVec<[u64; 16]> = positions(mask).map(|i| self.rows[i] & other).collect();
        rank_of_masks(&mut rows)
    }

    /// First split found by scanning bipartitions, if any.
    pub fn find_split(&self) -> Option<Split> {
        let side = self.split_within(self.full_mask())?;
        Some(Split {
            a: self.ground.ids_of(side),
            b: self.ground.ids_of(self.full_mask() & !side),
        })
    }

    /// A split side `X` of the induced subgraph on `mask`; `X` contains the
    /// lowest position of `mask`.
    pub fn split_within(&self, mask: u64) -> Option<u64> {
        let size = mask.count_ones();
        if size < 4 {
            return None;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = 0u64;
        loop {
            // ascending walk over the submasks of `rest`
            sub = (sub | !rest).wrapping_add(1) & rest;
            if sub == rest || sub == 0 {
                return None;
            }
            let side_size = sub.count_ones() + 1;
            if side_size < 2 || side_size > size - 2 {
                continue;
            }
            let side = sub | low;
            if self.cross_rank_at_most_one(side, mask & !side) {
                return Some(side);
            }
        }
    }

    fn cross_rank_at_most_one(&self, side: u64, other: u64) -> bool {
        let mut seen = 0u64;
        for i in positions(side) {
            let r = self.rows[i] & other;
            if r != 0 {
                if seen == 0 {
                    seen = r;
                } else if seen != r {
                    return false;
                }
            }
        }
        true
    }

    /// A graph is prime if it has no split.
    pub fn is_prime(&self) -> bool {
        self.is_prime_within(self.full_mask())
    }

    /// Primality of the induced subgraph on `mask`, with an isolated /
    /// pendant / twin prefilter before the bipartition scan.
    pub fn is_prime_within(&self, mask: u64) -> bool {
        if mask.count_ones() < 4 {
            return true;
        }
        for i in positions(mask) {
            if (self.rows[i] & mask).count_ones() <= 1 {
                return false;
            }
        }
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            for j in positions(rest) {
                let pair = (1u64 << i) | (1u64 << j);
                if (self.rows[i] ^ self.rows[j]) & mask & !pair == 0 {
                    return false;
                }
            }
        }
        self.split_within(mask).is_none()
    }

    // -- structure ------------------------------------------------------------

    pub fn is_connected(&self) -> bool {
        self.component_of(0, self.full_mask()) == self.full_mask()
    }

    fn component_of(&self, start: usize, mask: u64) -> u64 {
        if mask == 0 {
            return 0;
        }
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for i in positions(frontier) {
                next |= self.rows[i] & mask;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_bipartite(&self) -> bool {
        let mut uncolored = self.full_mask();
        while uncolored != 0 {
            let start = uncolored.trailing_zeros() as usize;
            let mut even = 1u64 << start;
            let mut odd = 0u64;
            let mut frontier = even;
            let mut parity = false;
            while frontier != 0 {
                let mut next = 0;
                for i in positions(frontier) {
                    next |= self.rows[i];
                }
                let (same, other) = if parity {
                    (&mut odd, &mut even)
                } else {
                    (&mut even, &mut odd)
                };
                if next & *same != 0 {
                    return false;
                }
                let fresh = next & !*other;
                *other |= fresh;
                frontier = fresh;
                parity = !parity;
            }
            uncolored &= !(even | odd);
        }
        true
    }

    /// Connected, at least 3 vertices, every degree 2.
    pub fn is_cycle_graph(&self) -> bool {
        self.n() >= 3 && self.rows.iter().all(|r| r.count_ones() == 2) && self.is_connected()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n()).map(|i| self.degree_index(i)).collect()
    }

    pub fn structure(&self) -> Structure {
        let degrees = self.degree_sequence();
        let isolated = (0..self.n())
            .filter(|&i| degrees[i] == 0)
            .map(|i| self.ground.id(i))
            .collect();
        let pendant = (0..self.n())
            .filter(|&i| degrees[i] == 1)
            .map(|i| self.ground.id(i))
            .collect();
        let mut twins = Vec::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let pair = (1u64 << i) | (1u64 << j);
                if (self.rows[i] ^ self.rows[j]) & !pair == 0 {
                    twins.push((self.ground.id(i), self.ground.id(j)));
                }
            }
        }
        Structure {
            isolated,
            pendant,
            twins,
            is_bipartite: self.is_bipartite(),
            is_cycle: self.is_cycle_graph(),
            degrees,
        }
    }

    // -- encodings -------------------------------------------------------------

    /// Upper-triangle bit code, pair `(i, j)` with `i < j` at bit `j(j−1)/2 + i`.
    ///
    /// # Panics
    /// Panics above [`MAX_CODE_VERTICES`] vertices.
    pub fn code(&self) -> u64 {
        assert!(
            self.n() <= MAX_CODE_VERTICES,
            "graph too large for a u64 code"
        );
        let mut code = 0u64;
        let mut base = 0;
        for j in 1..self.n() {
            code |= (self.rows[j] & full_mask(j)) << base;
            base += j;
        }
        code
    }

    /// Inverse of [`Graph::code`] on the ground `0..n`.
    pub fn from_code(n: usize, code: u64) -> Graph {
        assert!(n <= MAX_CODE_VERTICES, "graph too large for a u64 code");
        let mut g = Graph::empty(n);
        let mut base = 0;
        for j in 1..n {
            let bits = (code >> base) & full_mask(j);
            g.rows[j] = bits;
            for i in positions(bits) {
                g.rows[i] |= 1u64 << j;
            }
            base += j;
        }
        g
    }

    pub fn to_graph6(&self) -> String {
        let n = self.n();
        let mut out = Vec::new();
        if n <= 62 {
            out.push(n as u8 + 63);
        } else {
            out.extend([
                126,
                ((n >> 12) & 63) as u8 + 63,
                ((n >> 6) & 63) as u8 + 63,
                (n & 63) as u8 + 63,
            ]);
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | u8::from(self.adjacent_index(i, j));
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        String::from_utf8(out).expect("graph6 is printable ascii")
    }

    pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
        let text = text.trim();
        let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
        let bytes = text.as_bytes();
        if bytes.is_empty() {
            return Err(GraphError::Parse("empty graph6 string".into()));
        }
        if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
            return Err(GraphError::Parse("graph6 byte out of range".into()));
        }
        let (n, body) = if bytes[0] == 126 {
            if bytes.len() < 4 || bytes[1] == 126 {
                return Err(GraphError::Parse("unsupported graph6 size prefix".into()));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &bytes[4..])
        } else {
            ((bytes[0] - 63) as usize, &bytes[1..])
        };
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let pairs = n * n.saturating_sub(1) / 2;
        if body.len() != pairs.div_ceil(6) {
            return Err(GraphError::Parse(format!(
                "graph6 body for {n} vertices needs {} bytes, got {}",
                pairs.div_ceil(6),
                body.len()
            )));
        }
        let mut g = Graph::empty(n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = body[k / 6] - 63;
                if byte >> (5 - k % 6) & 1 == 1 {
                    g.set_edge_index(i, j, true);
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Edge-list text: `n m` followed by `m` lines `u v` of 0-based positions.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edge_indices();
        let mut out = format!("{} {}\n", self.n(), edges.len());
        for (i, j) in edges {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut numbers = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| GraphError::Parse(format!("not a number: {t:?}")))
        });
        let mut next = |what: &str| {
            numbers
                .next()
                .unwrap_or_else(|| Err(GraphError::Parse(format!("missing {what}"))))
        };
        let n = next("vertex count")?;
        let m = next("edge count")?;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            edges.push((next("edge endpoint")?, next("edge endpoint")?));
        }
        if numbers.next().is_some() {
            return Err(GraphError::Parse("trailing tokens after edge list".into()));
        }
        let g = Graph::from_edges(n, &edges)?;
        if g.edge_count() != m {
            return Err(GraphError::Parse("duplicate edges in edge list".into()));
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(V={:?}, E=[", self.ground)?;
        for (k, (u, v)) in self.edges().into_iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

fn compress_u64(bits: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    for (k, i) in positions(mask).enumerate() {
        out |= (bits >> i & 1) << k;
    }
    out
}
