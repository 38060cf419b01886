//! Isotropic systems over `K`: graphic presentations, Eulerian vectors,
//! fundamental graphs, elementary minors, connectivity and triangles.

use std::fmt;

use thiserror::Error;

use crate::equivalence::local_orbit;
use crate::gf2::{
    compress_bits, element_at, expand_bits, form_bits, insert, pair_mask, pointwise_form,
    support_bits, with_element, Gf2Error, KElement, KVector, Subspace,
};
use crate::graph::{Graph, GraphError};
use crate::ground::{full_mask, positions, Ground, GroundError, VertexId};
use crate::hypergraph::ThreeUniformHypergraph;

/// Largest system for which triangles are enumerated (`2^n` vectors).
pub const MAX_TRIANGLE_VERTICES: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsotropicError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("subspace is not totally isotropic")]
    NotTotallyIsotropic,
    #[error("subspace has dimension {got}, expected {expected}")]
    WrongDimension { expected: usize, got: usize },
    #[error("vectors a and b are not supplementary")]
    NotSupplementary,
    #[error("vector is not Eulerian")]
    NotEulerian,
    #[error("elementary minors need a nonzero element")]
    ZeroElement,
    #[error("vertex {0} is constrained twice")]
    DuplicateConstraint(VertexId),
    #[error("no witness vector for the constraint at vertex {0}")]
    WitnessNotFound(VertexId),
    #[error("no Eulerian vector satisfies the constraints")]
    NoEulerianVector,
    #[error("system with {0} vertices is too large for this operation")]
    TooLarge(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// `(V, L)` with `L` totally isotropic and `dim L = |V|`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IsotropicSystem {
    space: Subspace,
}

/// `(G, a, b)` such that `L` is spanned by `a[N(v)] + b[{v}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicPresentation {
    pub graph: Graph,
    pub a: KVector,
    pub b: KVector,
}

impl GraphicPresentation {
    pub fn new(graph: Graph, a: KVector, b: KVector) -> Result<Self, IsotropicError> {
        if a.ground() != graph.ground() || b.ground() != graph.ground() {
            return Err(Gf2Error::GroundMismatch.into());
        }
        if !a.is_supplementary_to(&b) {
            return Err(IsotropicError::NotSupplementary);
        }
        Ok(GraphicPresentation { graph, a, b })
    }

    /// `a ≡ α`, `b ≡ β`.
    pub fn standard(graph: &Graph) -> Self {
        let ground = graph.ground();
        GraphicPresentation {
            graph: graph.clone(),
            a: KVector::constant(ground, KElement::ALPHA),
            b: KVector::constant(ground, KElement::BETA),
        }
    }

    /// Generator `a[N(v)] + b[{v}]` of the vertex at position `i`.
    pub fn generator_bits(&self, i: usize) -> u128 {
        (self.a.bits() & pair_mask(self.graph.row(i))) | (self.b.bits() & (3u128 << (2 * i)))
    }

    pub fn system(&self) -> IsotropicSystem {
        let gens = (0..self.graph.n()).map(|i| self.generator_bits(i));
        IsotropicSystem {
            space: Subspace::from_bits(self.graph.ground(), gens),
        }
    }

    /// A graphic presentation of `S|^v_x` read off this one: `G\v` when
    /// `x = a(v)` or `v` is isolated, `G∧vw\v` when `x = b(v)` (with `w` the
    /// least-labeled neighbor), and `G*v\v` otherwise.
    pub fn minor_presentation(
        &self,
        v: VertexId,
        x: KElement,
    ) -> Result<GraphicPresentation, IsotropicError> {
        if x.is_zero() {
            return Err(IsotropicError::ZeroElement);
        }
        let g = &self.graph;
        let i = g.ground().require(v)?;
        let keep = g.full_mask() & !(1u64 << i);
        let ground = g.ground().restrict(keep);
        let (a, b) = (self.a.bits(), self.b.bits());
        let (graph, a2, b2) = match g.least_neighbor_index(i) {
            None => (g.delete_index(i), a, b),
            Some(_) if x == self.a.at(i) => (g.delete_index(i), a, b),
            Some(w) if x == self.b.at(i) => {
                let vw = pair_mask((1u64 << i) | (1u64 << w));
                let pivoted = g.pivot_index(i, w).expect("w is a neighbor");
                (
                    pivoted.delete_index(i),
                    (a & !vw) | (b & vw),
                    (a & vw) | (b & !vw),
                )
            }
            Some(_) => {
                let lc = g.local_complement_index(i).delete_index(i);
                (lc, a, (a & pair_mask(g.row(i))) ^ b)
            }
        };
        Ok(GraphicPresentation {
            graph,
            a: KVector::from_bits(&ground, compress_bits(a2, keep)),
            b: KVector::from_bits(&ground, compress_bits(b2, keep)),
        })
    }
}

/// A vector of `L` whose support has exactly three vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub vector: KVector,
}

impl Triangle {
    pub fn support(&self) -> Vec<VertexId> {
        self.vector.support()
    }
}

/// How [`IsotropicSystem::find_eulerian_vector`] produced its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerianRoute {
    /// Witnesses were found and the vector was built through minors.
    Constructive,
    /// The witness search failed; the vector came from exhaustive search.
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianSearch {
    pub vector: KVector,
    pub route: EulerianRoute,
}

impl IsotropicSystem {
    /// Validates total isotropy and `dim L = |V|`.
    pub fn new(space: Subspace) -> Result<Self, IsotropicError> {
        let n = space.ground().len();
        if space.dim() != n {
            return Err(IsotropicError::WrongDimension {
                expected: n,
                got: space.dim(),
            });
        }
        if !space.is_totally_isotropic() {
            return Err(IsotropicError::NotTotallyIsotropic);
        }
        Ok(IsotropicSystem { space })
    }

    pub fn from_graphic_presentation(
        graph: &Graph,
        a: &KVector,
        b: &KVector,
    ) -> Result<Self, IsotropicError> {
        let p = GraphicPresentation::new(graph.clone(), a.clone(), b.clone())?;
        IsotropicSystem::new(p.system().space)
    }

    /// The system of `(G, α, β)`.
    pub fn from_graph(graph: &Graph) -> Self {
        GraphicPresentation::standard(graph).system()
    }

    pub fn ground(&self) -> &Ground {
        self.space.ground()
    }

    pub fn n(&self) -> usize {
        self.space.ground().len()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, v: &KVector) -> bool {
        self.space.contains(v)
    }

    // -- Eulerian vectors -------------------------------------------------------

    /// Complete, and `a[X] ∉ L` for every nonempty `X`. The vectors `a[X]`
    /// form the span of the `a[{v}]`, so this is a rank test.
    pub fn is_eulerian(&self, a: &KVector) -> bool {
        a.ground() == self.ground() && a.is_complete() && self.eulerian_bits(a.bits())
    }

    fn eulerian_bits(&self, a: u128) -> bool {
        let mut rows = self.space.basis_bits().to_vec();
        (0..self.n()).all(|i| insert(&mut rows, a & (3u128 << (2 * i))))
    }

    /// The fundamental basis `b_v` in ground order.
    pub fn fundamental_basis(&self, a: &KVector) -> Result<Vec<KVector>, IsotropicError> {
        if !self.is_eulerian(a) {
            return Err(IsotropicError::NotEulerian);
        }
        Ok(self
            .fundamental_bits(a.bits())
            .into_iter()
            .map(|b| KVector::from_bits(self.ground(), b))
            .collect())
    }

    /// Inverts `x ↦ (⟨x(w), a(w)⟩)_w` on `L`; `a` must be Eulerian.
    fn fundamental_bits(&self, a: u128) -> Vec<u128> {
        let n = self.n();
        let mut rows: Vec<(u64, u128)> = self
            .space
            .basis_bits()
            .iter()
            .map(|&x| (pointwise_form(x, a), x))
            .collect();
        for w in 0..n {
            let bit = 1u64 << w;
            let p = (w..n)
                .find(|&r| rows[r].0 & bit != 0)
                .expect("Eulerian vector makes the form map invertible");
            rows.swap(w, p);
            let (pf, pv) = rows[w];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != w && row.0 & bit != 0 {
                    row.0 ^= pf;
                    row.1 ^= pv;
                }
            }
        }
        rows.into_iter().map(|(_, v)| v).collect()
    }

    /// The fundamental graph with respect to `a`, with the unique `b`
    /// making `(G, a, b)` a graphic presentation.
    pub fn fundamental_graph(&self, a: &KVector) -> Result<GraphicPresentation, IsotropicError> {
        if !self.is_eulerian(a) {
            return Err(IsotropicError::NotEulerian);
        }
        Ok(self.fundamental_presentation_bits(a.bits()))
    }

    fn fundamental_presentation_bits(&self, a: u128) -> GraphicPresentation {
        let n = self.n();
        let basis = self.fundamental_bits(a);
        let mut graph = Graph::edgeless(self.ground().clone());
        let mut b = 0u128;
        for (v, &bv) in basis.iter().enumerate() {
            for w in positions(support_bits(bv) & !full_mask(v + 1) & full_mask(n)) {
                graph.set_edge_index(v, w, true);
            }
            b = with_element(b, v, element_at(bv, v));
        }
        GraphicPresentation {
            graph,
            a: KVector::from_bits(self.ground(), a),
            b: KVector::from_bits(self.ground(), b),
        }
    }

    /// `a*v`: the Eulerian one of the two complete vectors that differ from
    /// `a` exactly at `v`.
    pub fn eulerian_switch(&self, a: &KVector, v: VertexId) -> Result<KVector, IsotropicError> {
        if !self.is_eulerian(a) {
            return Err(IsotropicError::NotEulerian);
        }
        let i = self.ground().require(v)?;
        let current = a.at(i);
        let mut found = None;
        for x in KElement::NONZERO {
            if x == current {
                continue;
            }
            let candidate = a.with_value_at(i, x);
            if self.is_eulerian(&candidate) {
                if found.is_some() {
                    return Err(IsotropicError::NotEulerian);
                }
                found = Some(candidate);
            }
        }
        found.ok_or(IsotropicError::NotEulerian)
    }

    /// Witnesses `a_i ∈ L` with `⟨a_i(w_i), x_i⟩ = 1` and `⟨a_i(w_j), x_j⟩ = 0`
    /// for `j < i`, solved in order over shrinking kernels.
    pub fn eulerian_witnesses(
        &self,
        constraints: &[(VertexId, KElement)],
    ) -> Result<Vec<KVector>, IsotropicError> {
        let resolved = self.resolve_constraints(constraints)?;
        self.witness_bits(&resolved)
            .map(|ws| {
                ws.into_iter()
                    .map(|w| KVector::from_bits(self.ground(), w))
                    .collect()
            })
            .map_err(|i| IsotropicError::WitnessNotFound(self.ground().id(resolved[i].0)))
    }

    fn resolve_constraints(
        &self,
        constraints: &[(VertexId, KElement)],
    ) -> Result<Vec<(usize, KElement)>, IsotropicError> {
        let mut seen = 0u64;
        let mut out = Vec::with_capacity(constraints.len());
        for &(v, x) in constraints {
            let i = self.ground().require(v)?;
            if x.is_zero() {
                return Err(IsotropicError::ZeroElement);
            }
            if seen >> i & 1 == 1 {
                return Err(IsotropicError::DuplicateConstraint(v));
            }
            seen |= 1u64 << i;
            out.push((i, x));
        }
        Ok(out)
    }

    /// On failure returns the index of the constraint without a witness.
    fn witness_bits(&self, constraints: &[(usize, KElement)]) -> Result<Vec<u128>, usize> {
        let mut kernel = self.space.basis_bits().to_vec();
        let mut out = Vec::with_capacity(constraints.len());
        for (k, &(i, x)) in constraints.iter().enumerate() {
            let probe = (x.code() as u128) << (2 * i);
            let Some(p) = kernel.iter().position(|&y| form_bits(y, probe)) else {
                return Err(k);
            };
            let pivot = kernel.swap_remove(p);
            for y in kernel.iter_mut() {
                if form_bits(*y, probe) {
                    *y ^= pivot;
                }
            }
            out.push(pivot);
        }
        Ok(out)
    }

    /// An Eulerian vector taking the prescribed values. Witnesses are solved
    /// first and the vector is built through elementary minors; if some
    /// witness is missing, all complete vectors matching the constraints are
    /// searched instead.
    pub fn find_eulerian_vector(
        &self,
        constraints: &[(VertexId, KElement)],
    ) -> Result<EulerianSearch, IsotropicError> {
        let resolved = self.resolve_constraints(constraints)?;
        if self.witness_bits(&resolved).is_ok() {
            let bits = self.construct(&resolved);
            debug_assert!(self.eulerian_bits(bits));
            return Ok(EulerianSearch {
                vector: KVector::from_bits(self.ground(), bits),
                route: EulerianRoute::Constructive,
            });
        }
        self.brute_force_eulerian(&resolved)
            .map(|bits| EulerianSearch {
                vector: KVector::from_bits(self.ground(), bits),
                route: EulerianRoute::BruteForce,
            })
            .ok_or(IsotropicError::NoEulerianVector)
    }

    /// Any Eulerian vector, built through minors.
    pub fn some_eulerian_vector(&self) -> KVector {
        KVector::from_bits(self.ground(), self.construct(&[]))
    }

    fn construct(&self, constraints: &[(usize, KElement)]) -> u128 {
        let n = self.n();
        if n == 0 {
            return 0;
        }
        let (i, x, rest) = match constraints.split_first() {
            Some((&(i, x), rest)) => (i, x, rest),
            None => {
                // some x with x[{v}] ∉ L exists since L is totally isotropic
                let x = KElement::NONZERO
                    .into_iter()
                    .find(|x| !self.space.contains_bits(x.code() as u128))
                    .expect("at most one single-vertex vector lies in L");
                (0, x, &[][..])
            }
        };
        let keep = full_mask(n) & !(1u64 << i);
        let minor = self.minor_at(i, x);
        let shifted: Vec<(usize, KElement)> = rest
            .iter()
            .map(|&(j, y)| (if j > i { j - 1 } else { j }, y))
            .collect();
        let inner = minor.construct(&shifted);
        with_element(expand_bits(inner, keep), i, x)
    }

    fn brute_force_eulerian(&self, constraints: &[(usize, KElement)]) -> Option<u128> {
        let n = self.n();
        let mut fixed = 0u128;
        let mut fixed_mask = 0u64;
        for &(i, x) in constraints {
            fixed = with_element(fixed, i, x);
            fixed_mask |= 1u64 << i;
        }
        let free: Vec<usize> = positions(full_mask(n) & !fixed_mask).collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut bits = fixed;
            for (&i, &d) in free.iter().zip(&digits) {
                bits = with_element(bits, i, KElement::NONZERO[d]);
            }
            if self.eulerian_bits(bits) {
                return Some(bits);
            }
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return None;
                }
                digits[k] += 1;
                if digits[k] < 3 {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
        }
    }

    // -- minors and connectivity ------------------------------------------------

    /// `S|^v_x`.
    pub fn elementary_minor(
        &self,
        v: VertexId,
        x: KElement,
    ) -> Result<IsotropicSystem, IsotropicError> {
        if x.is_zero() {
            return Err(IsotropicError::ZeroElement);
        }
        Ok(self.minor_at(self.ground().require(v)?, x))
    }

    pub(crate) fn minor_at(&self, i: usize, x: KElement) -> IsotropicSystem {
        let probe = (x.code() as u128) << (2 * i);
        let mut rows = self.space.basis_bits().to_vec();
        // {y ∈ L : y(v) ∈ {0, x}} is the kernel of y ↦ ⟨y(v), x⟩
        if let Some(p) = rows.iter().position(|&y| form_bits(y, probe)) {
            let pivot = rows.swap_remove(p);
            for y in rows.iter_mut() {
                if form_bits(*y, probe) {
                    *y ^= pivot;
                }
            }
        }
        let keep = self.ground().full_mask() & !(1u64 << i);
        let ground = self.ground().restrict(keep);
        IsotropicSystem {
            space: Subspace::from_bits(&ground, rows.into_iter().map(|y| compress_bits(y, keep))),
        }
    }

    /// `c(X) = |X| − dim(L|⊆X)`.
    pub fn connectivity(&self, set: &[VertexId]) -> Result<usize, IsotropicError> {
        Ok(self.connectivity_mask(self.ground().mask_of(set)?))
    }

    pub fn connectivity_mask(&self, mask: u64) -> usize {
        let mask = mask & self.ground().full_mask();
        mask.count_ones() as usize - self.space.dim_restrict_into_mask(mask)
    }

    /// No 1-separation and no 2-separation. Systems on at most 3 vertices
    /// count as 3-connected, as every graph that small is prime.
    pub fn is_three_connected(&self) -> bool {
        let n = self.n();
        if n <= 3 {
            return true;
        }
        let full = full_mask(n);
        // X always contains position 0; X = V is not a partition
        for rest in 0..(1u64 << (n - 1)) - 1 {
            let x = (rest << 1) | 1;
            let small = (x.count_ones() as usize).min(n - x.count_ones() as usize);
            let c = self.connectivity_mask(x & full);
            if c == 0 || (small >= 2 && c <= 1) {
                return false;
            }
        }
        true
    }

    /// At least two of the three elementary minors at `v` are 3-connected.
    pub fn is_non_essential(&self, v: VertexId) -> Result<bool, IsotropicError> {
        Ok(self.is_non_essential_at(self.ground().require(v)?))
    }

    pub(crate) fn is_non_essential_at(&self, i: usize) -> bool {
        KElement::NONZERO
            .into_iter()
            .filter(|&x| self.minor_at(i, x).is_three_connected())
            .count()
            >= 2
    }

    pub fn non_essential_mask(&self) -> u64 {
        (0..self.n())
            .filter(|&i| self.is_non_essential_at(i))
            .fold(0, |acc, i| acc | 1u64 << i)
    }

    pub fn non_essential_vertices(&self) -> Vec<VertexId> {
        self.ground().ids_of(self.non_essential_mask())
    }

    /// Some fundamental graph is a cycle of length at least 5.
    pub fn is_cyclic(&self) -> bool {
        if self.n() < 5 {
            return false;
        }
        let g = self
            .fundamental_presentation_bits(self.construct(&[]))
            .graph;
        local_orbit(&g).members().any(Graph::is_cycle_graph)
    }

    // -- triangles ----------------------------------------------------------------

    pub fn triangles(&self) -> Result<Vec<Triangle>, IsotropicError> {
        if self.n() > MAX_TRIANGLE_VERTICES {
            return Err(IsotropicError::TooLarge(self.n()));
        }
        let mut out: Vec<u128> = self
            .space
            .vector_bits()
            .filter(|&y| support_bits(y).count_ones() == 3)
            .collect();
        out.sort_unstable();
        Ok(out
            .into_iter()
            .map(|y| Triangle {
                vector: KVector::from_bits(self.ground(), y),
            })
            .collect())
    }

    /// `H(S)`: one edge per distinct triangle support.
    pub fn build_h(&self) -> Result<ThreeUniformHypergraph, IsotropicError> {
        let edges: Vec<[VertexId; 3]> = self
            .triangles()?
            .iter()
            .map(|t| {
                let s = t.support();
                [s[0], s[1], s[2]]
            })
            .collect();
        Ok(ThreeUniformHypergraph::new(self.ground().clone(), edges)
            .expect("triangle supports are 3-subsets of the ground"))
    }

    // -- text format ------------------------------------------------------------------

    /// `ground: ids...` followed by one basis vector per line, one digit
    /// `0..3` per vertex.
    pub fn to_text(&self) -> String {
        let ids: Vec<String> = self.ground().ids().iter().map(u32::to_string).collect();
        let mut out = format!("ground: {}\n", ids.join(" "));
        for v in self.space.basis() {
            out.push_str(&v.to_digits());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, IsotropicError> {
        let mut ground = None;
        let mut rows: Vec<Vec<KElement>> = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(ids) = line.strip_prefix("ground:") {
                let ids = ids
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<VertexId>()
                            .map_err(|_| IsotropicError::Parse(format!("bad vertex id {t:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                ground = Some(Ground::new(ids)?);
                continue;
            }
            let row = line
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    c.to_digit(4)
                        .ok_or_else(|| IsotropicError::Parse(format!("bad digit {c:?}")))
                        .and_then(|d| Ok(KElement::from_code(d as u8)?))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let ground = match ground {
            Some(g) => g,
            None => Ground::range(rows.first().map_or(0, Vec::len)),
        };
        let vectors = rows
            .iter()
            .map(|r| KVector::from_elements(&ground, r))
            .collect::<Result<Vec<_>, _>>()?;
        IsotropicSystem::new(Subspace::span(&ground, &vectors)?)
    }
}

impl fmt::Debug for IsotropicSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IsotropicSystem")
            .field("ground", self.ground())
            .field("basis", &self.space.basis())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use KElement as K;

    fn brute_eulerian(s: &IsotropicSystem, a: &KVector) -> bool {
        a.is_complete() && (1..1u64 << s.n()).all(|x| !s.contains(&a.mask_positions(x)))
    }

    #[test]
    fn construction_examples() {
        let e = Graph::empty(3);
        let s = IsotropicSystem::from_graph(&e);
        for i in 0..3 {
            let b = KVector::zero(e.ground()).with_value_at(i, K::BETA);
            assert!(s.contains(&b));
        }
        let c5 = IsotropicSystem::from_graph(&Graph::cycle(5));
        let gen = GraphicPresentation::standard(&Graph::cycle(5)).generator_bits(0);
        assert_eq!(support_bits(gen), 0b10011);
        assert!(c5.space().is_totally_isotropic());
        let a = KVector::constant(e.ground(), K::ALPHA);
        assert_eq!(
            IsotropicSystem::from_graphic_presentation(&e, &a, &a),
            Err(IsotropicError::NotSupplementary)
        );
    }

    #[test]
    fn every_small_presentation_is_isotropic() {
        for n in 0..=6usize {
            for code in 0..1u64 << (n * n.saturating_sub(1) / 2) {
                let g = Graph::from_code(n, code);
                let p = GraphicPresentation::standard(&g);
                let s = IsotropicSystem::from_graphic_presentation(&g, &p.a, &p.b).unwrap();
                assert!(s.is_eulerian(&p.a));
                let back = s.fundamental_graph(&p.a).unwrap();
                assert_eq!(back, p);
            }
        }
    }

    #[test]
    fn eulerian_rank_test_matches_subset_scan() {
        for code in 0..1u64 << 6 {
            let g = Graph::from_code(4, code);
            let s = IsotropicSystem::from_graph(&g);
            for digits in 0..81u32 {
                let mut d = digits;
                let elems: Vec<K> = (0..4)
                    .map(|_| {
                        let x = K::NONZERO[(d % 3) as usize];
                        d /= 3;
                        x
                    })
                    .collect();
                let a = KVector::from_elements(g.ground(), &elems).unwrap();
                assert_eq!(s.is_eulerian(&a), brute_eulerian(&s, &a));
            }
        }
        let edgeless = IsotropicSystem::from_graph(&Graph::empty(3));
        assert!(!edgeless.is_eulerian(&KVector::constant(&Ground::range(3), K::BETA)));
        let not_complete = KVector::zero(&Ground::range(4));
        assert!(!IsotropicSystem::from_graph(&Graph::cycle(4)).is_eulerian(&not_complete));
    }

    #[test]
    fn c5_fundamental_basis() {
        let g = Graph::cycle(5);
        let s = IsotropicSystem::from_graph(&g);
        let a = KVector::constant(g.ground(), K::ALPHA);
        let basis = s.fundamental_basis(&a).unwrap();
        for (v, bv) in basis.iter().enumerate() {
            let expected = a.mask_positions(g.row(v)).with_value_at(v, K::BETA);
            assert_eq!(bv, &expected);
        }
        assert_eq!(s.fundamental_graph(&a).unwrap().graph, g);
    }

    #[test]
    fn switching_is_an_involution_with_one_candidate() {
        for code in 0..1u64 << 10 {
            let g = Graph::from_code(5, code);
            let s = IsotropicSystem::from_graph(&g);
            let a = KVector::constant(g.ground(), K::ALPHA);
            for v in 0..5 {
                let b = s.eulerian_switch(&a, v).unwrap();
                assert_eq!(s.eulerian_switch(&b, v).unwrap(), a);
                let h = s.fundamental_graph(&b).unwrap().graph;
                assert!(crate::equivalence::are_locally_equivalent(&g, &h));
            }
        }
    }

    #[test]
    fn minors_are_isotropic_and_distinct() {
        let s = IsotropicSystem::from_graph(&Graph::cycle(5));
        let minors: Vec<_> = K::NONZERO
            .iter()
            .map(|&x| s.elementary_minor(0, x).unwrap())
            .collect();
        for m in &minors {
            assert!(IsotropicSystem::new(m.space().clone()).is_ok());
        }
        assert_ne!(minors[0], minors[1]);
        assert_ne!(minors[1], minors[2]);
        assert_ne!(minors[0], minors[2]);
        assert_eq!(
            s.elementary_minor(0, K::ZERO),
            Err(IsotropicError::ZeroElement)
        );
    }

    #[test]
    fn connectivity_examples() {
        let s = IsotropicSystem::from_graph(&Graph::cycle(5));
        assert_eq!(s.connectivity(&[]).unwrap(), 0);
        assert_eq!(s.connectivity(&[0, 1]).unwrap(), 2);
        assert!(s.is_three_connected());
        assert!(s.is_cyclic());
        assert!(IsotropicSystem::from_graph(&Graph::cycle(6)).is_three_connected());
        for code in 0..1u64 << 6 {
            assert!(!IsotropicSystem::from_graph(&Graph::from_code(4, code)).is_three_connected());
        }
    }

    #[test]
    fn c5_has_one_triangle_per_three_subset() {
        // dim(L|⊆X) = |X| − ρ(X) and every 2-set of C5 has cut-rank 2, so
        // each 3-set carries exactly one triangle.
        let g = Graph::cycle(5);
        let s = IsotropicSystem::from_graph(&g);
        let supports: Vec<u64> = s
            .triangles()
            .unwrap()
            .iter()
            .map(|t| t.vector.support_mask())
            .collect();
        let expected: Vec<u64> = (0..32u64)
            .filter(|x| x.count_ones() == 3 && g.cut_rank_mask(*x) == 2)
            .collect();
        let mut sorted = supports.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, expected);
        assert_eq!(supports.len(), 10);
        assert_eq!(s.build_h().unwrap().edges().len(), 10);
        assert!(IsotropicSystem::from_graph(&Graph::complete(2))
            .triangles()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn eulerian_construction() {
        let s = IsotropicSystem::from_graph(&Graph::cycle(5));
        let found = s.find_eulerian_vector(&[]).unwrap();
        assert_eq!(found.route, EulerianRoute::Constructive);
        assert!(s.is_eulerian(&found.vector));
        let a = KVector::constant(s.ground(), K::ALPHA);
        assert!(s.is_eulerian(&a));
        let fixed = s
            .find_eulerian_vector(&[(0, K::ALPHA), (2, K::ALPHA)])
            .unwrap();
        assert_eq!(fixed.route, EulerianRoute::Constructive);
        assert_eq!(fixed.vector.at(0), K::ALPHA);
        assert_eq!(fixed.vector.at(2), K::ALPHA);
        assert_eq!(
            s.find_eulerian_vector(&[(0, K::ALPHA), (0, K::BETA)]),
            Err(IsotropicError::DuplicateConstraint(0))
        );
    }

    #[test]
    fn witness_failure_is_distinct_from_absence() {
        // Edgeless graph: b[{v}] = β at v lies in L, so no Eulerian vector has
        // value β at v, and no witness exists for it.
        let s = IsotropicSystem::from_graph(&Graph::empty(2));
        assert_eq!(
            s.eulerian_witnesses(&[(0, K::BETA)]),
            Err(IsotropicError::WitnessNotFound(0))
        );
        assert_eq!(
            s.find_eulerian_vector(&[(0, K::BETA)]),
            Err(IsotropicError::NoEulerianVector)
        );
    }

    #[test]
    fn constructive_route_agrees_with_brute_force_on_small_systems() {
        for code in 0..1u64 << 10 {
            let s = IsotropicSystem::from_graph(&Graph::from_code(5, code));
            for x in K::NONZERO {
                for y in K::NONZERO {
                    let cons = [(1, x), (3, y)];
                    let resolved = s.resolve_constraints(&cons).unwrap();
                    let exists = s.brute_force_eulerian(&resolved).is_some();
                    match s.find_eulerian_vector(&cons) {
                        Ok(found) => {
                            assert!(brute_eulerian(&s, &found.vector));
                            assert_eq!(found.vector.at(1), x);
                            assert_eq!(found.vector.at(3), y);
                        }
                        Err(e) => {
                            assert_eq!(e, IsotropicError::NoEulerianVector);
                            assert!(!exists);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn text_roundtrip() {
        let s = IsotropicSystem::from_graph(&Graph::cycle(5));
        let text = s.to_text();
        assert_eq!(IsotropicSystem::from_text(&text).unwrap(), s);
        let commented = format!(
            "# a comment\n{}",
            text.lines().skip(1).collect::<Vec<_>>().join("\n")
        );
        assert_eq!(IsotropicSystem::from_text(&commented).unwrap(), s);
        assert!(IsotropicSystem::from_text("12\n").is_err());
        assert!(IsotropicSystem::from_text("14\n").is_err());
    }

    #[test]
    fn minor_presentations_span_the_minor() {
        for n in 1..=5 {
            for code in 0..1u64 << (n * (n - 1) / 2) {
                let g = Graph::from_code(n, code);
                let s = IsotropicSystem::from_graph(&g);
                let mut a = s.some_eulerian_vector();
                for step in 0..n {
                    let p = s.fundamental_graph(&a).unwrap();
                    for v in 0..n as VertexId {
                        for x in KElement::NONZERO {
                            let predicted = p.minor_presentation(v, x).unwrap();
                            assert_eq!(predicted.system(), s.elementary_minor(v, x).unwrap());
                        }
                    }
                    a = s.eulerian_switch(&a, step as VertexId).unwrap();
                }
            }
        }
    }
}
