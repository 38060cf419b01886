use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vmcalc::equivalence::{classify_index, non_essential_mask};
use vmcalc::theta::{
    add_handle, build_theta, recognize_theta, theta_is_prime, theta_non_essential_count,
    within_count_hypotheses, ThetaSpec,
};
use vmcalc::Graph;

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs).map(move |c| Graph::from_code(n, c))
}

/// Internal-vertex masks of each path of `build_theta(spec)`.
fn path_masks(spec: &ThetaSpec) -> Vec<u64> {
    let mut next = 2;
    spec.lengths()
        .iter()
        .map(|&l| {
            let mask = ((1u64 << (l - 1)) - 1) << next;
            next += l - 1;
            mask
        })
        .collect()
}

fn two_connected(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && (0..g.n()).all(|i| g.delete_index(i).is_connected())
}

#[test]
fn primality_closed_form_agrees() {
    let mut checked = 0;
    for spec in ThetaSpec::enumerate(2, 10) {
        if spec.vertex_count() < 5 {
            assert!(theta_is_prime(&spec).is_err());
            continue;
        }
        assert_eq!(
            theta_is_prime(&spec).unwrap(),
            build_theta(&spec).is_prime(),
            "{spec}"
        );
        checked += 1;
    }
    assert!(checked > 50);
}

#[test]
fn non_essential_counts_agree() {
    let mut checked = 0;
    for spec in ThetaSpec::enumerate(3, 10) {
        let g = build_theta(&spec);
        match theta_non_essential_count(&spec) {
            Ok((count, _)) => {
                assert_eq!(
                    non_essential_mask(&g).count_ones() as usize,
                    count,
                    "{spec}"
                );
                checked += 1;
            }
            Err(_) => assert!(!within_count_hypotheses(&spec)),
        }
    }
    assert!(checked > 20);
}

#[test]
fn recognition_roundtrip() {
    for spec in ThetaSpec::enumerate(3, 9) {
        assert_eq!(recognize_theta(&build_theta(&spec)), Some(spec));
    }
}

#[test]
fn degree_two_neighbors_are_essential() {
    for n in 5..=7 {
        for g in all_graphs(n) {
            for (i, j) in g.edge_indices() {
                if g.degree_index(i) == 2 && g.degree_index(j) == 2 {
                    assert!(!classify_index(&g, i).is_non_essential(), "{g:?}");
                    assert!(!classify_index(&g, j).is_non_essential(), "{g:?}");
                }
            }
        }
    }
}

#[test]
fn twin_free_extension_stays_prime() {
    for base in all_graphs(5).filter(Graph::is_prime) {
        for nbrs in 0..1u64 << 5 {
            if nbrs.count_ones() < 2 {
                continue;
            }
            let mut g = Graph::empty(6);
            for (i, j) in base.edge_indices() {
                g.set_edge_index(i, j, true);
            }
            for j in 0..5 {
                if nbrs >> j & 1 == 1 {
                    g.set_edge_index(5, j, true);
                }
            }
            let twin = g.structure().twins.iter().any(|&(a, b)| a == 5 || b == 5);
            if !twin {
                assert!(g.is_prime(), "{g:?}");
            }
        }
    }
}

#[test]
fn handles_keep_primality() {
    for base in all_graphs(5).filter(Graph::is_prime) {
        for u in 0..5 {
            for v in u + 1..5 {
                for len in 3..=4 {
                    let g = add_handle(&base, u, v, len).unwrap();
                    assert!(g.is_prime(), "{g:?}");
                }
            }
        }
    }
}

#[test]
fn contracting_degree_two_edge_reflects_primality() {
    for n in 5..=7 {
        for g in all_graphs(n) {
            let found = g
                .edge_indices()
                .into_iter()
                .find(|&(i, j)| g.degree_index(i) == 2 && g.degree_index(j) == 2);
            if let Some((i, _)) = found {
                // contracting an edge at a degree-2 end is G*v\v
                if g.local_complement_index(i).delete_index(i).is_prime() {
                    assert!(g.is_prime(), "{g:?}");
                }
            }
        }
    }
}

/// Triangulations of the convex polygon `0..n`, as edge-pair lists.
fn triangulations(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn inner(i: usize, j: usize) -> Vec<Vec<(usize, usize)>> {
        if j - i < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in i + 1..j {
            for left in inner(i, k) {
                for right in inner(k, j) {
                    let mut t = left.clone();
                    t.extend(&right);
                    if k - i > 1 {
                        t.push((i, k));
                    }
                    if j - k > 1 {
                        t.push((k, j));
                    }
                    out.push(t);
                }
            }
        }
        out
    }
    let boundary: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    inner(0, n - 1)
        .into_iter()
        .map(|mut t| {
            t.extend(&boundary);
            t
        })
        .collect()
}

#[test]
fn outerplanar_prime_iff_two_connected() {
    for n in 5..=7 {
        let mut seen = HashSet::new();
        for tri in triangulations(n) {
            assert_eq!(tri.len(), 2 * n - 3);
            for subset in 0..1u32 << tri.len() {
                let mut g = Graph::empty(n);
                for (k, &(i, j)) in tri.iter().enumerate() {
                    if subset >> k & 1 == 1 {
                        g.set_edge_index(i, j, true);
                    }
                }
                if seen.insert(g.code()) {
                    assert_eq!(g.is_prime(), two_connected(&g), "{g:?}");
                }
            }
        }
        assert!(seen.len() > 100);
    }
}

#[test]
fn prime_parts_on_theta_instances() {
    let mut applied = 0;
    for spec in ThetaSpec::enumerate(2, 11) {
        let g = build_theta(&spec);
        let masks = path_masks(&spec);
        let parts: Vec<u64> = masks
            .iter()
            .copied()
            .filter(|m| m.count_ones() >= 2)
            .collect();
        if parts.len() < 2 {
            continue;
        }
        let w = g.full_mask() & !parts.iter().fold(0, |a, m| a | m);
        let all_prime = (0..parts.len())
            .all(|i| (i + 1..parts.len()).all(|j| g.is_prime_within(w | parts[i] | parts[j])));
        if all_prime {
            assert!(g.is_prime(), "{spec}");
            applied += 1;
        }
    }
    assert!(applied > 10);
}

#[test]
fn prime_parts_on_random_partitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut applied = 0;
    for _ in 0..20_000 {
        let n = rng.gen_range(6..=9);
        let g = Graph::from_code(n, rng.gen::<u64>() & ((1u64 << (n * (n - 1) / 2)) - 1));
        let r = rng.gen_range(2..=3);
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=r)).collect();
        let part = |k: usize| -> u64 {
            (0..n)
                .filter(|&i| labels[i] == k)
                .fold(0, |a, i| a | 1 << i)
        };
        let w = part(0);
        let parts: Vec<u64> = (1..=r).map(part).collect();
        if parts.iter().any(|m| m.count_ones() < 2) {
            continue;
        }
        let all_prime =
            (0..r).all(|i| (i + 1..r).all(|j| g.is_prime_within(w | parts[i] | parts[j])));
        if all_prime {
            assert!(g.is_prime(), "{g:?}");
            applied += 1;
        }
    }
    assert!(applied > 0);
}

#[test]
fn essential_iff_degree_two_without_short_paths() {
    for spec in ThetaSpec::enumerate(3, 11) {
        let l = spec.lengths();
        let m = l.len();
        if l[0] == 2 || l[1] < 3 || (m == 3 && l[0] < 3 && l[1] < 4) {
            continue;
        }
        let g = build_theta(&spec);
        let noness = non_essential_mask(&g);
        for i in 0..g.n() {
            assert_eq!(
                noness >> i & 1 == 0,
                g.degree_index(i) == 2,
                "{spec} vertex {i}"
            );
        }
    }
}

#[test]
fn essential_iff_degree_two_pair_with_common_neighbor() {
    for spec in ThetaSpec::enumerate(3, 11) {
        let l = spec.lengths();
        let rest = match l {
            [1, 2, rest @ ..] | [2, rest @ ..] => rest,
            _ => continue,
        };
        if rest.len() < 2 || rest[0] < 3 {
            continue;
        }
        let g = build_theta(&spec);
        let noness = non_essential_mask(&g);
        for i in 0..g.n() {
            let expected = g.degree_index(i) == 2
                && (0..g.n()).any(|j| g.adjacent_index(i, j) && g.degree_index(j) == 2);
            assert_eq!(noness >> i & 1 == 0, expected, "{spec} vertex {i}");
        }
    }
}
