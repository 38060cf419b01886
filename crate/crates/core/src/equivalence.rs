//! Local and pivot equivalence orbits, and the per-vertex reduction
//! classifiers (non-essential / non-pivotal vertices).

use std::collections::VecDeque;

use indexmap::IndexSet;

use crate::graph::{Graph, GraphError};
use crate::ground::{positions, VertexId};

/// Which operation closes the orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Local,
    Pivot,
}

/// The labeled graphs reachable from a seed by repeated local
/// complementations or pivots. Members keep BFS discovery order.
#[derive(Debug, Clone)]
pub struct Orbit {
    generator: Generator,
    members: IndexSet<Graph>,
}

impl Orbit {
    pub fn seed(&self) -> &Graph {
        &self.members[0]
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.members.contains(g)
    }

    pub fn members(&self) -> impl Iterator<Item = &Graph> + '_ {
        self.members.iter()
    }
}

fn closure(seed: &Graph, generator: Generator) -> Orbit {
    let mut members = IndexSet::new();
    members.insert(seed.clone());
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let g = members[k].clone();
        let mut visit = |h: Graph| {
            let (idx, fresh) = members.insert_full(h);
            if fresh {
                queue.push_back(idx);
            }
        };
        match generator {
            Generator::Local => {
                for i in 0..g.n() {
                    if g.row(i) != 0 {
                        visit(g.local_complement_index(i));
                    }
                }
            }
            Generator::Pivot => {
                for (i, j) in g.edge_indices() {
                    visit(g.pivot_index(i, j).expect("edge"));
                }
            }
        }
    }
    Orbit { generator, members }
}

/// BFS closure of `g` under local complementation at every vertex.
pub fn local_orbit(g: &Graph) -> Orbit {
    closure(g, Generator::Local)
}

/// BFS closure of `g` under pivoting on every edge.
pub fn pivot_orbit(g: &Graph) -> Orbit {
    closure(g, Generator::Pivot)
}

pub fn are_locally_equivalent(g: &Graph, h: &Graph) -> bool {
    g.ground() == h.ground() && local_orbit(g).contains(h)
}

/// Length of a cycle graph in the local orbit of `g`, if there is one.
pub fn is_locally_equivalent_to_cycle(g: &Graph) -> Option<usize> {
    if g.n() < 3 {
        return None;
    }
    local_orbit(g)
        .members()
        .any(Graph::is_cycle_graph)
        .then_some(g.n())
}

/// Whether an even cycle lies in the pivot orbit of `g`.
pub fn is_pivot_equivalent_to_even_cycle(g: &Graph) -> bool {
    g.n().is_multiple_of(2) && g.n() >= 4 && pivot_orbit(g).members().any(Graph::is_cycle_graph)
}

/// Primality of the three vertex-minor reductions at one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexClass {
    /// `G \ v` is prime.
    pub prime_delete: bool,
    /// `G*v \ v` is prime.
    pub prime_star_delete: bool,
    /// `G / v` is prime.
    pub prime_contract: bool,
}

impl VertexClass {
    pub fn prime_count(self) -> usize {
        usize::from(self.prime_delete)
            + usize::from(self.prime_star_delete)
            + usize::from(self.prime_contract)
    }

    /// At least two of the three reductions are prime.
    pub fn is_non_essential(self) -> bool {
        self.prime_count() >= 2
    }

    /// `G \ v` or `G / v` is prime.
    pub fn is_non_pivotal(self) -> bool {
        self.prime_delete || self.prime_contract
    }
}

pub fn classify_vertex(g: &Graph, v: VertexId) -> Result<VertexClass, GraphError> {
    Ok(classify_index(g, g.ground().require(v)?))
}

pub fn classify_index(g: &Graph, i: usize) -> VertexClass {
    let rest = g.full_mask() & !(1u64 << i);
    VertexClass {
        prime_delete: g.is_prime_within(rest),
        prime_star_delete: g.local_complement_index(i).is_prime_within(rest),
        prime_contract: g.contraction_base_index(i).is_prime_within(rest),
    }
}

/// Position mask of the non-essential vertices.
pub fn non_essential_mask(g: &Graph) -> u64 {
    (0..g.n())
        .filter(|&i| classify_index(g, i).is_non_essential())
        .fold(0, |acc, i| acc | 1u64 << i)
}

pub fn non_pivotal_mask(g: &Graph) -> u64 {
    (0..g.n())
        .filter(|&i| classify_index(g, i).is_non_pivotal())
        .fold(0, |acc, i| acc | 1u64 << i)
}

pub fn non_essential_vertices(g: &Graph) -> Vec<VertexId> {
    g.ground().ids_of(non_essential_mask(g))
}

pub fn non_pivotal_vertices(g: &Graph) -> Vec<VertexId> {
    g.ground().ids_of(non_pivotal_mask(g))
}

/// The reductions `(G\v, G*v\v, G/v)`.
pub fn reductions(g: &Graph, i: usize) -> [Graph; 3] {
    [
        g.delete_index(i),
        g.local_complement_index(i).delete_index(i),
        g.contract_index(i),
    ]
}

/// Checks that the reductions of `G*w` at `v` are locally equivalent to the
/// reductions of `G` at `v` in the order dictated by how `v` and `w` relate:
/// non-adjacent keeps the order, adjacent swaps the last two, and `v = w`
/// swaps the first two.
pub fn check_reduction_triple(g: &Graph, v: VertexId, w: VertexId) -> Result<bool, GraphError> {
    let i = g.ground().require(v)?;
    let j = g.ground().require(w)?;
    let base = reductions(g, i);
    let moved = reductions(&g.local_complement_index(j), i);
    let order = if i == j {
        [1, 0, 2]
    } else if g.adjacent_index(i, j) {
        [0, 2, 1]
    } else {
        [0, 1, 2]
    };
    Ok(moved
        .iter()
        .zip(order)
        .all(|(h, k)| are_locally_equivalent(&base[k], h)))
}

/// Positions of vertices of degree 2 that have a degree-2 neighbor.
pub fn adjacent_degree_two_mask(g: &Graph) -> u64 {
    let two: u64 = (0..g.n())
        .filter(|&i| g.degree_index(i) == 2)
        .fold(0, |acc, i| acc | 1u64 << i);
    positions(two)
        .filter(|&i| g.row(i) & two != 0)
        .fold(0, |acc, i| acc | 1u64 << i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_examples() {
        assert_eq!(local_orbit(&Graph::empty(4)).len(), 1);
        assert_eq!(pivot_orbit(&Graph::empty(4)).len(), 1);
        // K3 and its three labeled paths.
        let k3 = local_orbit(&Graph::complete(3));
        assert_eq!(k3.len(), 4);
        assert!(k3.contains(&Graph::path(3)));
        let p4 = pivot_orbit(&Graph::path(4));
        assert!(p4.contains(&Graph::path(4).pivot(1, 2).unwrap()));
        let c6_local = local_orbit(&Graph::cycle(6));
        assert!(pivot_orbit(&Graph::cycle(6))
            .members()
            .all(|g| c6_local.contains(g)));
        assert!(local_orbit(&Graph::cycle(5))
            .members()
            .all(|g| !g.is_bipartite()));
    }

    #[test]
    fn cycle_recognition() {
        assert_eq!(is_locally_equivalent_to_cycle(&Graph::cycle(7)), Some(7));
        assert!(is_pivot_equivalent_to_even_cycle(&Graph::cycle(6)));
        assert!(is_pivot_equivalent_to_even_cycle(&Graph::cycle(4)));
        assert!(!is_pivot_equivalent_to_even_cycle(&Graph::cycle(5)));
        assert!(!is_pivot_equivalent_to_even_cycle(&Graph::complete(4)));
    }

    #[test]
    fn cycles_have_no_non_essential_vertex() {
        for k in 5..=8 {
            let c = Graph::cycle(k);
            assert!(non_essential_vertices(&c).is_empty());
            for i in 0..k {
                let class = classify_index(&c, i);
                assert!(!class.prime_delete && !class.prime_contract);
                // C_k * v \ v is C_{k-1}
                assert_eq!(class.prime_star_delete, k >= 6);
            }
        }
        assert!(non_pivotal_vertices(&Graph::cycle(6)).is_empty());
    }

    #[test]
    fn reduction_triples_hold_on_small_graphs() {
        for n in 1..=5usize {
            for code in 0..1u64 << (n * (n - 1) / 2) {
                let g = Graph::from_code(n, code);
                for v in 0..n as u32 {
                    for w in 0..n as u32 {
                        assert!(check_reduction_triple(&g, v, w).unwrap(), "{g:?} {v} {w}");
                    }
                }
            }
        }
    }

    #[test]
    fn non_essential_set_is_stable_under_local_complementation() {
        for code in 0..1u64 << 15 {
            let g = Graph::from_code(6, code);
            let base = non_essential_mask(&g);
            for i in 0..6 {
                assert_eq!(non_essential_mask(&g.local_complement_index(i)), base);
            }
            assert_eq!(base & !non_pivotal_mask(&g), 0);
        }
    }
}
