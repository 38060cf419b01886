//! Triangle and tight-path lemmas, checked on one system per local orbit of
//! prime graphs with 5 to 7 vertices.

use vmcalc::{Graph, IsotropicSystem, TightPath, Triangle, VertexId};

fn pair_count(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

/// Least-code representative of every local orbit of prime graphs on `n` vertices.
fn prime_orbit_reps(n: usize) -> Vec<Graph> {
    let total = 1u64 << pair_count(n);
    let mut seen = vec![false; total as usize];
    let mut reps = Vec::new();
    for code in 0..total {
        if seen[code as usize] {
            continue;
        }
        let g = Graph::from_code(n, code);
        let mut stack = vec![code];
        seen[code as usize] = true;
        while let Some(c) = stack.pop() {
            let h = Graph::from_code(n, c);
            for v in 0..n {
                let d = h.local_complement_index(v).code();
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    stack.push(d);
                }
            }
        }
        if g.is_prime() {
            reps.push(g);
        }
    }
    reps
}

struct Case {
    graph: Graph,
    system: IsotropicSystem,
    triangles: Vec<Triangle>,
    paths: Vec<TightPath>,
    non_essential: Vec<VertexId>,
    cyclic: bool,
}

fn cases() -> Vec<Case> {
    (5..=7)
        .flat_map(prime_orbit_reps)
        .map(|graph| {
            let system = IsotropicSystem::from_graph(&graph);
            assert!(system.is_three_connected());
            let triangles = system.triangles().unwrap();
            let paths = system.build_h().unwrap().tight_paths();
            let non_essential = system.non_essential_vertices();
            let cyclic = system.is_cyclic();
            Case {
                graph,
                system,
                triangles,
                paths,
                non_essential,
                cyclic,
            }
        })
        .collect()
}

fn value(t: &Triangle, v: VertexId) -> vmcalc::KElement {
    t.vector.get(v).unwrap()
}

fn edges_at(c: &Case, v: VertexId) -> Vec<Vec<VertexId>> {
    c.triangles
        .iter()
        .map(Triangle::support)
        .filter(|s| s.contains(&v))
        .collect()
}

fn path_edges(p: &[VertexId]) -> Vec<Vec<VertexId>> {
    p.windows(3)
        .map(|w| {
            let mut e = w.to_vec();
            e.sort_unstable();
            e
        })
        .collect()
}

#[test]
fn tight_path_lemmas_on_prime_orbits() {
    let cases = cases();
    assert!(cases.len() > 10);
    let mut long_paths = 0;
    for c in &cases {
        let code = c.graph.code();
        let n = c.graph.n();

        // two triangles meet in nothing, one agreeing vertex, two
        // disagreeing vertices, or are equal
        for (i, t) in c.triangles.iter().enumerate() {
            for u in &c.triangles[i + 1..] {
                let common: Vec<VertexId> = t
                    .support()
                    .into_iter()
                    .filter(|v| u.support().contains(v))
                    .collect();
                match common.len() {
                    0 => {}
                    1 => assert_eq!(value(t, common[0]), value(u, common[0]), "{code}"),
                    2 => assert!(common.iter().all(|&v| value(t, v) != value(u, v)), "{code}"),
                    _ => panic!("distinct triangles share a support in {code}"),
                }
            }
        }

        for &u in c.graph.ground().ids() {
            let at_u = edges_at(c, u);
            for &v in c.graph.ground().ids().iter().filter(|&&v| v != u) {
                let both: Vec<&Vec<VertexId>> = at_u.iter().filter(|e| e.contains(&v)).collect();
                assert!(both.len() <= 3, "{code}");
                for (i, e1) in both.iter().enumerate() {
                    for e2 in &both[i + 1..] {
                        let w1 = e1.iter().find(|&&x| x != u && x != v).unwrap();
                        let w2 = e2.iter().find(|&&x| x != u && x != v).unwrap();
                        for e in &at_u {
                            assert!(e.contains(&v) || e.contains(w1) || e.contains(w2), "{code}");
                        }
                    }
                }
            }
        }

        let essential = |v: VertexId| !c.non_essential.contains(&v);
        for p in &c.paths {
            for v in p.internal() {
                assert!(essential(v), "{code}: internal {v} of {p:?}");
            }
            let seq = p.sequence();
            let k = p.length();
            let mine = path_edges(seq);
            if k == 3 && !(c.cyclic && (n == 5 || n == 6)) {
                for e in edges_at(c, seq[2]) {
                    assert!(mine.contains(&e), "{code}: {p:?}");
                }
            }
            if k == 4 && !(c.cyclic && n == 6) {
                let reversed: Vec<VertexId> = seq.iter().rev().copied().collect();
                for s in [seq.to_vec(), reversed] {
                    if !essential(s[0]) {
                        for e in edges_at(c, s[1]) {
                            assert!(mine.contains(&e), "{code}: {p:?}");
                        }
                    }
                }
            }
            if k >= 3 {
                long_paths += 1;
                let mut closing = vec![seq[k], seq[k + 1], seq[0]];
                closing.sort_unstable();
                if c.triangles.iter().any(|t| t.support() == closing) {
                    assert!(c.cyclic && n == k + 2, "{code}: {p:?}");
                }
            }
        }

        if !c.cyclic {
            let h = c.system.build_h().unwrap();
            for p in c.paths.iter().filter(|p| h.is_maximal(p)) {
                let free = p.ends().into_iter().filter(|&v| !essential(v)).count();
                assert!(free >= 2, "{code}: {p:?}");
            }
        }
    }
    assert!(long_paths > 0);
}
