//! 3-uniform hypergraphs, tight paths and the five-type edge decomposition
//! relative to a vertex set `N`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ground::{positions, Ground, GroundError, VertexId};
use crate::isotropic::IsotropicSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("edge {0:?} does not have three distinct vertices")]
    NotThreeSet([VertexId; 3]),
    #[error("{0:?} is not an edge")]
    NotAnEdge([VertexId; 3]),
    #[error("{0:?} is not a tight path")]
    NotTightPath(Vec<VertexId>),
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A hypergraph whose edges are 3-element vertex sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThreeUniformHypergraph {
    ground: Ground,
    /// Sorted, distinct position masks with three bits each.
    edges: Vec<u64>,
}

/// A vertex sequence `v_0 … v_{k+1}` whose consecutive triples are edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TightPath {
    sequence: Vec<VertexId>,
}

impl TightPath {
    pub fn sequence(&self) -> &[VertexId] {
        &self.sequence
    }

    /// Number of edges `k`.
    pub fn length(&self) -> usize {
        self.sequence.len() - 2
    }

    /// `{v_0, v_{k+1}}` when `k ≥ 2`; every vertex when `k = 1`.
    pub fn ends(&self) -> Vec<VertexId> {
        if self.length() == 1 {
            self.sequence.clone()
        } else {
            vec![self.sequence[0], *self.sequence.last().expect("nonempty")]
        }
    }

    pub fn internal(&self) -> Vec<VertexId> {
        if self.length() == 1 {
            Vec::new()
        } else {
            self.sequence[1..self.sequence.len() - 1].to_vec()
        }
    }

    /// Edges `{v_{i−1}, v_i, v_{i+1}}`, each sorted.
    pub fn edges(&self) -> Vec<[VertexId; 3]> {
        self.sequence
            .windows(3)
            .map(|w| {
                let mut e = [w[0], w[1], w[2]];
                e.sort_unstable();
                e
            })
            .collect()
    }
}

impl fmt::Display for TightPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sequence.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

type EdgeList = Vec<[VertexId; 3]>;

/// The five partial-hypergraph types and the edges left over.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Structures {
    pub ears: Vec<TightPath>,
    pub triangles: Vec<[VertexId; 3]>,
    /// Center and its edges.
    pub windmills: Vec<(VertexId, EdgeList)>,
    /// The two vertices outside `N` and the three edges.
    pub tripods: Vec<((VertexId, VertexId), EdgeList)>,
    /// The edge `f ⊆ V − N` and the four edges meeting it.
    pub tables: Vec<([VertexId; 3], EdgeList)>,
    pub uncovered: Vec<[VertexId; 3]>,
}

impl Structures {
    pub fn is_complete(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Positions as a sequence; used by the internal path routines.
type Seq = Vec<usize>;

impl ThreeUniformHypergraph {
    pub fn new(ground: Ground, edges: Vec<[VertexId; 3]>) -> Result<Self, HypergraphError> {
        let mut masks = Vec::with_capacity(edges.len());
        for e in edges {
            let m = ground.mask_of(&e)?;
            if m.count_ones() != 3 {
                return Err(HypergraphError::NotThreeSet(e));
            }
            masks.push(m);
        }
        masks.sort_unstable();
        masks.dedup();
        Ok(ThreeUniformHypergraph {
            ground,
            edges: masks,
        })
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn edge_masks(&self) -> &[u64] {
        &self.edges
    }

    /// Edges as sorted id triples.
    pub fn edges(&self) -> Vec<[VertexId; 3]> {
        self.edges.iter().map(|&m| self.triple(m)).collect()
    }

    fn triple(&self, mask: u64) -> [VertexId; 3] {
        let mut ids = self.ground.ids_of(mask);
        ids.sort_unstable();
        [ids[0], ids[1], ids[2]]
    }

    pub fn has_edge_mask(&self, mask: u64) -> bool {
        self.edges.binary_search(&mask).is_ok()
    }

    fn has_triple(&self, a: usize, b: usize, c: usize) -> bool {
        self.has_edge_mask((1u64 << a) | (1u64 << b) | (1u64 << c))
    }

    fn positions_of(&self, seq: &[VertexId]) -> Option<Seq> {
        seq.iter().map(|&v| self.ground.position(v)).collect()
    }

    fn ids(&self, seq: &[usize]) -> Vec<VertexId> {
        seq.iter().map(|&i| self.ground.id(i)).collect()
    }

    fn seq_is_tight(&self, seq: &[usize]) -> bool {
        let distinct = seq
            .iter()
            .fold(0u64, |acc, &i| acc | 1u64 << i)
            .count_ones() as usize;
        seq.len() >= 3
            && distinct == seq.len()
            && seq.windows(3).all(|w| self.has_triple(w[0], w[1], w[2]))
    }

    pub fn is_tight_path(&self, seq: &[VertexId]) -> bool {
        self.positions_of(seq)
            .is_some_and(|s| self.seq_is_tight(&s))
    }

    pub fn tight_path(&self, seq: &[VertexId]) -> Result<TightPath, HypergraphError> {
        if self.is_tight_path(seq) {
            Ok(TightPath {
                sequence: seq.to_vec(),
            })
        } else {
            Err(HypergraphError::NotTightPath(seq.to_vec()))
        }
    }

    /// The orderings whose one-vertex extensions decide maximality.
    fn extension_bases(seq: &[usize]) -> Vec<Seq> {
        let mut bases = vec![seq.to_vec()];
        match seq.len() {
            3 => bases.push(vec![seq[1], seq[0], seq[2]]),
            4 => bases.push(vec![seq[0], seq[2], seq[1], seq[3]]),
            _ => {}
        }
        bases
    }

    /// First extension in tie-break order: right, left, then the reordered
    /// bases, each with the least-labeled new vertex.
    fn extend_once(&self, seq: &[usize]) -> Option<Seq> {
        let used = seq.iter().fold(0u64, |acc, &i| acc | 1u64 << i);
        let mut free: Vec<usize> = positions(self.ground.full_mask() & !used).collect();
        free.sort_by_key(|&i| self.ground.id(i));
        for base in Self::extension_bases(seq) {
            let k = base.len();
            if let Some(&w) = free
                .iter()
                .find(|&&w| self.has_triple(base[k - 2], base[k - 1], w))
            {
                let mut out = base.clone();
                out.push(w);
                return Some(out);
            }
            if let Some(&w) = free.iter().find(|&&w| self.has_triple(w, base[0], base[1])) {
                let mut out = vec![w];
                out.extend_from_slice(&base);
                return Some(out);
            }
        }
        None
    }

    /// A tight path is maximal when none of the one-vertex extensions of
    /// its orderings exists.
    pub fn is_maximal(&self, path: &TightPath) -> bool {
        match self.positions_of(&path.sequence) {
            Some(seq) if self.seq_is_tight(&seq) => self.extend_once(&seq).is_none(),
            _ => false,
        }
    }

    /// Grows the edge `e` into a maximal tight path.
    pub fn maximal_tight_path_containing(
        &self,
        e: [VertexId; 3],
    ) -> Result<TightPath, HypergraphError> {
        let mask = self.ground.mask_of(&e)?;
        if !self.has_edge_mask(mask) {
            return Err(HypergraphError::NotAnEdge(e));
        }
        let mut seq: Seq = self
            .positions_of(&self.triple(mask))
            .expect("edge in ground");
        while let Some(next) = self.extend_once(&seq) {
            seq = next;
        }
        Ok(TightPath {
            sequence: self.ids(&seq),
        })
    }

    /// Every tight path, once per edge set, in the lexicographically least
    /// id ordering found.
    pub fn tight_paths(&self) -> Vec<TightPath> {
        let mut by_edges: std::collections::BTreeMap<Vec<u64>, Vec<VertexId>> = Default::default();
        let mut stack: Vec<Seq> = Vec::new();
        for &m in &self.edges {
            let p: Vec<usize> = positions(m).collect();
            for perm in [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ] {
                stack.push(perm.iter().map(|&k| p[k]).collect());
            }
        }
        while let Some(seq) = stack.pop() {
            let mut key: Vec<u64> = seq
                .windows(3)
                .map(|w| (1u64 << w[0]) | (1u64 << w[1]) | (1u64 << w[2]))
                .collect();
            key.sort_unstable();
            let ids = self.ids(&seq);
            by_edges
                .entry(key)
                .and_modify(|best| {
                    if ids < *best {
                        *best = ids.clone();
                    }
                })
                .or_insert_with(|| ids.clone());
            let used = seq.iter().fold(0u64, |acc, &i| acc | 1u64 << i);
            let k = seq.len();
            for w in positions(self.ground.full_mask() & !used) {
                if self.has_triple(seq[k - 2], seq[k - 1], w) {
                    let mut next = seq.clone();
                    next.push(w);
                    stack.push(next);
                }
            }
        }
        by_edges
            .into_values()
            .map(|sequence| TightPath { sequence })
            .collect()
    }

    /// Tight paths whose edge set is not strictly contained in another's.
    pub fn maximal_tight_paths(&self) -> Vec<TightPath> {
        self.tight_paths()
            .into_iter()
            .filter(|p| self.is_maximal(p))
            .collect()
    }

    // -- five types ---------------------------------------------------------------

    /// Recognizes ears, triangles, windmills, tripods and tables relative to
    /// `n_mask` (a position mask), directly from their definitions.
    pub fn classify_structures(&self, n_mask: u64) -> Structures {
        let full = self.ground.full_mask();
        let outside = full & !n_mask;
        let mut covered: BTreeSet<u64> = BTreeSet::new();
        let mut out = Structures::default();
        let incident = |v: usize| -> Vec<u64> {
            self.edges
                .iter()
                .copied()
                .filter(|&e| e >> v & 1 == 1)
                .collect()
        };

        for p in self.tight_paths() {
            if p.length() < 2 {
                continue;
            }
            let seq = self.positions_of(&p.sequence).expect("path in ground");
            let ends = (1u64 << seq[0]) | (1u64 << seq[seq.len() - 1]);
            let internal = seq[1..seq.len() - 1]
                .iter()
                .fold(0u64, |acc, &i| acc | 1u64 << i);
            let own: Vec<u64> = seq
                .windows(3)
                .map(|w| (1u64 << w[0]) | (1u64 << w[1]) | (1u64 << w[2]))
                .collect();
            let isolated = self
                .edges
                .iter()
                .all(|e| e & internal == 0 || own.contains(e));
            if ends & !n_mask == 0 && internal & n_mask == 0 && isolated {
                covered.extend(own);
                out.ears.push(p);
            }
        }

        for &e in &self.edges {
            if e & !n_mask == 0
                && !self
                    .edges
                    .iter()
                    .any(|&f| f != e && (e & f).count_ones() == 2)
            {
                covered.insert(e);
                out.triangles.push(self.triple(e));
            }
        }

        for v in positions(outside) {
            let xs = incident(v);
            let bit = 1u64 << v;
            let ok = !xs.is_empty()
                && xs.iter().all(|&e| {
                    let rest = e & !bit;
                    rest & !n_mask == 0
                        && self.edges.iter().filter(|&&f| f & rest == rest).count() == 1
                })
                && xs
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| xs[i + 1..].iter().all(|&f| e & f == bit));
            if ok {
                covered.extend(xs.iter().copied());
                out.windmills.push((
                    self.ground.id(v),
                    xs.iter().map(|&e| self.triple(e)).collect(),
                ));
            }
        }

        for v in positions(outside) {
            for w in positions(outside & !((2u64 << v) - 1)) {
                let pair = (1u64 << v) | (1u64 << w);
                let xs: Vec<u64> = self
                    .edges
                    .iter()
                    .copied()
                    .filter(|&e| e & pair != 0)
                    .collect();
                let ok = xs.len() == 3
                    && xs
                        .iter()
                        .all(|&e| e & pair == pair && e & !(n_mask | pair) == 0);
                if ok {
                    covered.extend(xs.iter().copied());
                    let (a, b) = (self.ground.id(v), self.ground.id(w));
                    out.tripods.push((
                        (a.min(b), a.max(b)),
                        xs.iter().map(|&e| self.triple(e)).collect(),
                    ));
                }
            }
        }

        for &f in &self.edges {
            if f & n_mask != 0 {
                continue;
            }
            let xs: Vec<u64> = self.edges.iter().copied().filter(|&e| e & f != 0).collect();
            let rests: BTreeSet<u64> = xs.iter().map(|&e| e & !f).collect();
            let ok = xs.len() == 4
                && rests.len() == 4
                && xs
                    .iter()
                    .all(|&e| (e & f).count_ones() >= 2 && e & !f & !n_mask == 0);
            if ok {
                covered.extend(xs.iter().copied());
                out.tables
                    .push((self.triple(f), xs.iter().map(|&e| self.triple(e)).collect()));
            }
        }

        out.uncovered = self
            .edges
            .iter()
            .filter(|e| !covered.contains(e))
            .map(|&e| self.triple(e))
            .collect();
        out
    }

    /// `V(P) − N` and `V(Q) − N` are equal or disjoint for all maximal tight
    /// paths `P`, `Q`.
    pub fn partition_holds(&self, n_mask: u64) -> bool {
        let classes: Vec<u64> = self
            .maximal_tight_paths()
            .iter()
            .map(|p| self.ground.mask_of(&p.sequence).expect("path in ground") & !n_mask)
            .collect();
        classes
            .iter()
            .enumerate()
            .all(|(i, &a)| classes[i + 1..].iter().all(|&b| a == b || a & b == 0))
    }

    // -- text format ----------------------------------------------------------------

    /// One edge per line, three ids separated by whitespace.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for [a, b, c] in self.edges() {
            out.push_str(&format!("{a} {b} {c}\n"));
        }
        out
    }

    /// Parses the edge-per-line format; the ground is the sorted set of ids
    /// unless a `ground:` line gives it explicitly.
    pub fn from_text(text: &str) -> Result<Self, HypergraphError> {
        let parse = |t: &str| {
            t.parse::<VertexId>()
                .map_err(|_| HypergraphError::Parse(format!("bad vertex id {t:?}")))
        };
        let mut ground = None;
        let mut edges = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(ids) = line.strip_prefix("ground:") {
                let ids = ids
                    .split_whitespace()
                    .map(parse)
                    .collect::<Result<Vec<_>, _>>()?;
                ground = Some(Ground::new(ids)?);
                continue;
            }
            let ids = line
                .split_whitespace()
                .map(parse)
                .collect::<Result<Vec<_>, _>>()?;
            if ids.len() != 3 {
                return Err(HypergraphError::Parse(format!(
                    "edge line needs 3 ids, got {}",
                    ids.len()
                )));
            }
            edges.push([ids[0], ids[1], ids[2]]);
        }
        let ground = match ground {
            Some(g) => g,
            None => {
                let ids: BTreeSet<VertexId> = edges.iter().flatten().copied().collect();
                Ground::new(ids.into_iter().collect())?
            }
        };
        ThreeUniformHypergraph::new(ground, edges)
    }
}

impl fmt::Debug for ThreeUniformHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThreeUniformHypergraph")
            .field("ground", &self.ground)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Checks that maximal tight paths of `H(S)` have equal or disjoint vertex
/// sets outside the non-essential set. `S` must be 3-connected, non-cyclic
/// and have at least 5 vertices.
pub fn verify_partition_corollary(s: &IsotropicSystem) -> Result<bool, HypergraphError> {
    if s.n() < 5 {
        return Err(HypergraphError::Precondition("at least 5 vertices"));
    }
    if !s.is_three_connected() {
        return Err(HypergraphError::Precondition("3-connected system"));
    }
    if s.is_cyclic() {
        return Err(HypergraphError::Precondition("non-cyclic system"));
    }
    let h = s
        .build_h()
        .map_err(|_| HypergraphError::Precondition("system small enough for triangles"))?;
    Ok(h.partition_holds(s.non_essential_mask()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyper(n: usize, edges: &[[u32; 3]]) -> ThreeUniformHypergraph {
        ThreeUniformHypergraph::new(Ground::range(n), edges.to_vec()).unwrap()
    }

    fn tight_cycle(n: u32) -> ThreeUniformHypergraph {
        let edges: Vec<[u32; 3]> = (0..n).map(|i| [i, (i + 1) % n, (i + 2) % n]).collect();
        hyper(n as usize, &edges)
    }

    /// Oracle: some tight path has a strictly larger edge set.
    fn brute_maximal(h: &ThreeUniformHypergraph, p: &TightPath) -> bool {
        let mine: BTreeSet<[u32; 3]> = p.edges().into_iter().collect();
        h.tight_paths().iter().all(|q| {
            let theirs: BTreeSet<[u32; 3]> = q.edges().into_iter().collect();
            !(mine.is_subset(&theirs) && theirs.len() > mine.len())
        })
    }

    #[test]
    fn tight_path_examples() {
        let h = tight_cycle(5);
        assert!(h.is_tight_path(&[0, 1, 2]));
        assert!(h.is_tight_path(&[4, 0, 1, 2, 3]));
        assert!(!h.is_tight_path(&[0, 1, 2, 0]));
        let p = h.tight_path(&[4, 0, 1, 2, 3]).unwrap();
        assert_eq!(p.length(), 3);
        assert!(h.is_maximal(&p));
        assert_eq!(p.ends(), vec![4, 3]);
        let short = h.tight_path(&[0, 1, 2]).unwrap();
        assert!(!h.is_maximal(&short));
        assert_eq!(short.ends(), vec![0, 1, 2]);
    }

    #[test]
    fn reorder_cases_are_detected() {
        // k = 1: {0,1,2} extends only through the ordering 1 0 2 w.
        let h = hyper(4, &[[0, 1, 2], [0, 2, 3]]);
        let p = h.tight_path(&[0, 1, 2]).unwrap();
        assert!(!h.is_maximal(&p));
        assert!(!brute_maximal(&h, &p));
        // k = 2: 0 1 2 3 with an edge {1,3,4} extends only as 0 2 1 3 4.
        let h = hyper(5, &[[0, 1, 2], [1, 2, 3], [1, 3, 4]]);
        let p = h.tight_path(&[0, 1, 2, 3]).unwrap();
        assert!(!h.is_maximal(&p));
        assert!(!brute_maximal(&h, &p));
        let grown = h.maximal_tight_path_containing([0, 1, 2]).unwrap();
        assert_eq!(grown.sequence(), &[0, 2, 1, 3, 4]);
        assert!(h.is_maximal(&grown));
    }

    #[test]
    fn lemma_maximality_matches_brute_force() {
        // All hypergraphs on 5 vertices built from subsets of the 10 triples.
        let triples: Vec<[u32; 3]> = (0..5u32)
            .flat_map(|a| (a + 1..5).flat_map(move |b| (b + 1..5).map(move |c| [a, b, c])))
            .collect();
        for pick in 0..1u32 << triples.len() {
            let edges: Vec<[u32; 3]> = (0..triples.len())
                .filter(|&i| pick >> i & 1 == 1)
                .map(|i| triples[i])
                .collect();
            let h = hyper(5, &edges);
            for p in h.tight_paths() {
                assert_eq!(h.is_maximal(&p), brute_maximal(&h, &p), "{h:?} {p}");
            }
            for &e in &edges {
                let m = h.maximal_tight_path_containing(e).unwrap();
                assert!(h.is_maximal(&m));
                assert!(m.edges().contains(&e));
            }
        }
    }

    #[test]
    fn isolated_edge_is_its_own_maximal_path() {
        let h = hyper(6, &[[0, 1, 2], [3, 4, 5]]);
        let p = h.maximal_tight_path_containing([1, 2, 0]).unwrap();
        assert_eq!(p.sequence(), &[0, 1, 2]);
        assert_eq!(
            h.maximal_tight_path_containing([0, 1, 3]),
            Err(HypergraphError::NotAnEdge([0, 1, 3]))
        );
    }

    #[test]
    fn c5_grows_to_length_three() {
        let h = tight_cycle(5);
        let p = h.maximal_tight_path_containing([0, 1, 2]).unwrap();
        assert_eq!(p.length(), 3);
    }

    #[test]
    fn five_types_on_hand_built_hypergraphs() {
        let empty = hyper(4, &[]);
        assert_eq!(empty.classify_structures(0b11), Structures::default());

        // ear 0 2 3 1 with N = {0, 1}
        let ear = hyper(4, &[[0, 2, 3], [2, 3, 1]]);
        let s = ear.classify_structures(0b0011);
        assert_eq!(s.ears.len(), 1);
        assert!(s.is_complete());

        // triangle inside N
        let tri = hyper(4, &[[0, 1, 2]]);
        assert_eq!(tri.classify_structures(0b0111).triangles, vec![[0, 1, 2]]);

        // windmill centered at 4 with blades {0,1}, {2,3}
        let wind = hyper(5, &[[0, 1, 4], [2, 3, 4]]);
        let s = wind.classify_structures(0b01111);
        assert_eq!(s.windmills.len(), 1);
        assert!(s.is_complete());

        // tripod: v = 3, w = 4 with N = {0, 1, 2}
        let tripod = hyper(5, &[[0, 3, 4], [1, 3, 4], [2, 3, 4]]);
        let s = tripod.classify_structures(0b00111);
        assert_eq!(s.tripods.len(), 1);
        assert!(s.is_complete());

        // table: f = {3,4,5}, legs {0,3,4}, {1,4,5}, {2,3,5}
        let table = hyper(6, &[[3, 4, 5], [0, 3, 4], [1, 4, 5], [2, 3, 5]]);
        let s = table.classify_structures(0b000111);
        assert_eq!(s.tables.len(), 1);
        assert!(s.is_complete());

        // a lone edge meeting N in one vertex is none of the five
        let stray = hyper(4, &[[0, 2, 3]]);
        let s = stray.classify_structures(0b0001);
        assert_eq!(s.uncovered, vec![[0, 2, 3]]);
    }

    #[test]
    fn text_roundtrip() {
        let h = tight_cycle(5);
        let text = h.to_text();
        assert_eq!(ThreeUniformHypergraph::from_text(&text).unwrap(), h);
        assert!(ThreeUniformHypergraph::from_text("0 1\n").is_err());
        assert!(ThreeUniformHypergraph::from_text("0 1 1\n").is_err());
    }
}
