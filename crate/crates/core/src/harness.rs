//! Exhaustive verification over all labeled graphs of a given size.
//!
//! Graphs are handled as upper-triangle codes (see [`Graph::code`]). Orbit
//! theorems first mark every prime code, then split the prime codes into
//! local orbits in ascending code order, and finally evaluate the orbits on
//! a worker pool. Results are merged in orbit order, so reports do not
//! depend on the number of workers.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::equivalence::classify_index;
use crate::gf2::KElement;
use crate::graph::{Graph, MAX_CODE_VERTICES};
use crate::ground::VertexId;
use crate::isotropic::{GraphicPresentation, IsotropicSystem};
use crate::theta::is_theta_without_common_neighbor;
use crate::words::verify_odd_cycle_lemma;

/// Largest `n` for plain exhaustive enumeration.
pub const DEFAULT_MAX_N: usize = 7;
/// Largest `n` when orbit deduplication is enabled.
pub const DEDUP_MAX_N: usize = 8;
/// Counterexamples kept in a report; the total is always counted.
pub const MAX_LISTED_COUNTEREXAMPLES: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("n = {n} is outside the supported range (at most {limit})")]
    Bounds { n: usize, limit: usize },
    #[error("empty range {0}..{1}")]
    EmptyRange(usize, usize),
    #[error("unknown theorem {0:?}")]
    UnknownTheorem(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Statements the harness can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// At least two non-essential vertices, or locally equivalent to a cycle.
    Thm1,
    /// At least three non-essential vertices iff no theta without a common
    /// hub neighbor in the local orbit.
    Thm3,
    /// Prime bipartite: two non-pivotal vertices iff not pivot equivalent to
    /// an even cycle; non-pivotal and non-essential sets coincide.
    CorBippiv,
    /// Every edge of `H(S)` lies in one of the five structure types.
    Fan,
    /// Maximal tight paths are equal or disjoint outside `N`.
    Partition,
    /// Connectivity function equals cut-rank.
    PropIgconn,
    /// Elementary minors match the predicted reductions.
    PropIgmin,
    /// No bipartite graph in the local orbit of an odd cycle.
    LemmaOddcyc,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::Thm1,
        Theorem::Thm3,
        Theorem::CorBippiv,
        Theorem::Fan,
        Theorem::Partition,
        Theorem::PropIgconn,
        Theorem::PropIgmin,
        Theorem::LemmaOddcyc,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::Thm3 => "thm3",
            Theorem::CorBippiv => "cor-bippiv",
            Theorem::Fan => "fan",
            Theorem::Partition => "partition",
            Theorem::PropIgconn => "prop-igconn",
            Theorem::PropIgmin => "prop-igmin",
            Theorem::LemmaOddcyc => "lemma-oddcyc",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| HarnessError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub workers: usize,
    /// Evaluate one representative per local orbit instead of every member.
    pub dedup_orbits: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_min: 5,
            n_max: DEFAULT_MAX_N,
            workers: 1,
            dedup_orbits: false,
        }
    }
}

/// Upper bound on `n`: `VMCALC_MAX_N` if set, else 7, or 8 with dedup.
pub fn max_n(dedup_orbits: bool) -> usize {
    let default = if dedup_orbits {
        DEDUP_MAX_N
    } else {
        DEFAULT_MAX_N
    };
    std::env::var("VMCALC_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
        .min(MAX_CODE_VERTICES)
}

fn check_bounds(n: usize, dedup_orbits: bool) -> Result<(), HarnessError> {
    let limit = max_n(dedup_orbits);
    if n > limit {
        return Err(HarnessError::Bounds { n, limit });
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub n_min: usize,
    pub n_max: usize,
    pub instances: u64,
    pub counterexample_count: u64,
    /// graph6 strings, at most [`MAX_LISTED_COUNTEREXAMPLES`].
    pub counterexamples: Vec<String>,
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.counterexample_count == 0
    }

    /// Equal in everything except wall time.
    pub fn same_outcome(&self, other: &VerificationReport) -> bool {
        self.theorem == other.theorem
            && (self.n_min, self.n_max) == (other.n_min, other.n_max)
            && self.instances == other.instances
            && self.counterexample_count == other.counterexample_count
            && self.counterexamples == other.counterexamples
    }

    /// Key/value lines followed by one `counterexample:` line per graph.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "theorem: {}\nn_min: {}\nn_max: {}\ninstances: {}\ncounterexamples: {}\npass: {}\nwall_time_ms: {}\n",
            self.theorem,
            self.n_min,
            self.n_max,
            self.instances,
            self.counterexample_count,
            self.pass(),
            self.wall_time.as_millis()
        );
        for g6 in &self.counterexamples {
            out.push_str("counterexample: ");
            out.push_str(g6);
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Default)]
struct Tally {
    instances: u64,
    failures: u64,
    listed: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, g: impl FnOnce() -> Graph) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.listed.len() < MAX_LISTED_COUNTEREXAMPLES {
                self.listed.push(g().to_graph6());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.failures += other.failures;
        let room = MAX_LISTED_COUNTEREXAMPLES - self.listed.len();
        self.listed.extend(other.listed.into_iter().take(room));
        self
    }
}

/// Which labeled graphs [`enumerate_graphs`] yields.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GraphFilter {
    pub connected: bool,
    pub prime: bool,
    pub bipartite: bool,
}

impl GraphFilter {
    pub fn accepts(&self, g: &Graph) -> bool {
        (!self.connected || g.is_connected())
            && (!self.bipartite || g.is_bipartite())
            && (!self.prime || g.is_prime())
    }
}

fn pair_count(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Every labeled graph on `0..n` passing `filter`, in code order.
pub fn enumerate_graphs(
    n: usize,
    filter: GraphFilter,
) -> Result<impl Iterator<Item = Graph>, HarnessError> {
    check_bounds(n, false)?;
    Ok((0..1u64 << pair_count(n))
        .map(move |c| Graph::from_code(n, c))
        .filter(move |g| filter.accepts(g)))
}

/// Local orbits of the prime graphs on `n` vertices, each listed from its
/// least code in breadth-first order.
pub struct OrbitCatalog {
    pub n: usize,
    pub orbits: Vec<Vec<u64>>,
}

impl OrbitCatalog {
    pub fn prime(n: usize, pool: &rayon::ThreadPool) -> OrbitCatalog {
        let total = 1u64 << pair_count(n);
        let words = total.div_ceil(64);
        let prime: Vec<u64> = pool.install(|| {
            (0..words)
                .into_par_iter()
                .map(|w| {
                    let mut bits = 0u64;
                    for k in 0..64.min(total - w * 64) {
                        if Graph::from_code(n, w * 64 + k).is_prime() {
                            bits |= 1 << k;
                        }
                    }
                    bits
                })
                .collect()
        });
        let mut seen = vec![0u64; words as usize];
        let mut orbits = Vec::new();
        for code in 0..total {
            let (w, b) = ((code / 64) as usize, code % 64);
            if prime[w] >> b & 1 == 0 || seen[w] >> b & 1 == 1 {
                continue;
            }
            seen[w] |= 1 << b;
            let mut members = vec![code];
            let mut head = 0;
            while head < members.len() {
                let g = Graph::from_code(n, members[head]);
                head += 1;
                for v in 0..n {
                    let c = g.local_complement_index(v).code();
                    let (w, b) = ((c / 64) as usize, c % 64);
                    if seen[w] >> b & 1 == 0 {
                        seen[w] |= 1 << b;
                        members.push(c);
                    }
                }
            }
            orbits.push(members);
        }
        OrbitCatalog { n, orbits }
    }

    pub fn graph_count(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }
}

/// Orbit id (least member code) of every graph on `n` vertices.
fn orbit_ids(n: usize) -> Vec<u64> {
    let total = 1u64 << pair_count(n);
    let mut id = vec![u64::MAX; total as usize];
    for code in 0..total {
        if id[code as usize] != u64::MAX {
            continue;
        }
        id[code as usize] = code;
        let mut stack = vec![code];
        while let Some(c) = stack.pop() {
            let g = Graph::from_code(n, c);
            for v in 0..n {
                let d = g.local_complement_index(v).code();
                if id[d as usize] == u64::MAX {
                    id[d as usize] = code;
                    stack.push(d);
                }
            }
        }
    }
    id
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))
}

/// Runs `theorem` for every `n` in the configured range.
pub fn verify(theorem: Theorem, config: &VerifyConfig) -> Result<VerificationReport, HarnessError> {
    if config.n_min > config.n_max {
        return Err(HarnessError::EmptyRange(config.n_min, config.n_max));
    }
    check_bounds(config.n_max, config.dedup_orbits)?;
    let pool = build_pool(config.workers)?;
    let start = Instant::now();
    let mut tally = Tally::default();
    for n in config.n_min..=config.n_max {
        let part = match theorem {
            Theorem::Thm1
            | Theorem::Thm3
            | Theorem::CorBippiv
            | Theorem::Fan
            | Theorem::Partition => verify_orbits(theorem, n, config.dedup_orbits, &pool),
            Theorem::PropIgconn => verify_all_codes(n, &pool, check_igconn),
            Theorem::PropIgmin => {
                let ids = if n >= 2 { orbit_ids(n - 1) } else { Vec::new() };
                verify_all_codes(n, &pool, |g, t| check_igmin(g, &ids, t))
            }
            Theorem::LemmaOddcyc => verify_odd_cycle(n),
        };
        tally = tally.merge(part);
    }
    Ok(VerificationReport {
        theorem,
        n_min: config.n_min,
        n_max: config.n_max,
        instances: tally.instances,
        counterexample_count: tally.failures,
        counterexamples: tally.listed,
        wall_time: start.elapsed(),
    })
}

fn verify_all_codes(
    n: usize,
    pool: &rayon::ThreadPool,
    check: impl Fn(&Graph, &mut Tally) + Sync,
) -> Tally {
    const CHUNK: u64 = 4096;
    let total = 1u64 << pair_count(n);
    let parts: Vec<Tally> = pool.install(|| {
        (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|k| {
                let mut t = Tally::default();
                for code in k * CHUNK..((k + 1) * CHUNK).min(total) {
                    check(&Graph::from_code(n, code), &mut t);
                }
                t
            })
            .collect()
    });
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

fn verify_orbits(theorem: Theorem, n: usize, dedup: bool, pool: &rayon::ThreadPool) -> Tally {
    let catalog = OrbitCatalog::prime(n, pool);
    let parts: Vec<Tally> = pool.install(|| {
        catalog
            .orbits
            .par_iter()
            .map(|orbit| {
                let members: Vec<Graph> = orbit.iter().map(|&c| Graph::from_code(n, c)).collect();
                let mut t = Tally::default();
                match theorem {
                    Theorem::Thm1 | Theorem::Thm3 => {
                        check_noness_orbit(theorem, &members, dedup, &mut t)
                    }
                    Theorem::CorBippiv => check_bipartite_orbit(&members, dedup, &mut t),
                    _ => check_system_orbit(theorem, &members, dedup, &mut t),
                }
                t
            })
            .collect()
    });
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

struct Classes {
    non_essential: u64,
    non_pivotal: u64,
}

fn classes(g: &Graph) -> Classes {
    let mut out = Classes {
        non_essential: 0,
        non_pivotal: 0,
    };
    for i in 0..g.n() {
        let c = classify_index(g, i);
        if c.is_non_essential() {
            out.non_essential |= 1 << i;
        }
        if c.is_non_pivotal() {
            out.non_pivotal |= 1 << i;
        }
    }
    out
}

fn check_noness_orbit(theorem: Theorem, members: &[Graph], dedup: bool, t: &mut Tally) {
    let has_cycle = members.iter().any(Graph::is_cycle_graph);
    let has_good_theta = members.iter().any(is_theta_without_common_neighbor);
    let evaluated = if dedup { &members[..1] } else { members };
    for g in evaluated {
        let count = classes(g).non_essential.count_ones();
        let ok = match theorem {
            Theorem::Thm1 => count >= 2 || has_cycle,
            _ => (count >= 3) == !has_good_theta,
        };
        t.check(ok, || g.clone());
    }
}

fn check_bipartite_orbit(members: &[Graph], dedup: bool, t: &mut Tally) {
    let index: HashMap<u64, usize> = members
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_bipartite())
        .map(|(k, g)| (g.code(), k))
        .collect();
    let mut done: HashSet<usize> = HashSet::new();
    for &start in index.values().collect::<std::collections::BTreeSet<_>>() {
        if done.contains(&start) {
            continue;
        }
        // pivot classes stay bipartite, so they live inside `index`
        let mut class = vec![start];
        done.insert(start);
        let mut head = 0;
        while head < class.len() {
            let g = &members[class[head]];
            head += 1;
            for (i, j) in g.edge_indices() {
                let h = g.pivot_index(i, j).expect("edge");
                let k = index[&h.code()];
                if done.insert(k) {
                    class.push(k);
                }
            }
        }
        class.sort_unstable();
        let even_cycle = class.iter().any(|&k| members[k].is_cycle_graph());
        let evaluated = if dedup { &class[..1] } else { &class[..] };
        for &k in evaluated {
            let g = &members[k];
            let c = classes(g);
            let ok = (c.non_pivotal.count_ones() >= 2) == !even_cycle
                && c.non_pivotal == c.non_essential;
            t.check(ok, || g.clone());
        }
    }
}

/// With `dedup`, one system per orbit: systems whose fundamental graphs are
/// locally equivalent differ by a relabeling of `K` at each vertex, which
/// keeps `H(S)`, the non-essential set and the tight paths unchanged.
fn check_system_orbit(theorem: Theorem, members: &[Graph], dedup: bool, t: &mut Tally) {
    if members[0].n() < 5 || members.iter().any(Graph::is_cycle_graph) {
        return;
    }
    let evaluated = if dedup { &members[..1] } else { members };
    for g in evaluated {
        let s = IsotropicSystem::from_graph(g);
        if !s.is_three_connected() {
            t.check(false, || g.clone());
            continue;
        }
        let n_mask = s.non_essential_mask();
        let h = s.build_h().expect("small system");
        let ok = match theorem {
            Theorem::Fan => h.classify_structures(n_mask).is_complete(),
            _ => h.partition_holds(n_mask),
        };
        t.check(ok, || g.clone());
    }
}

fn check_igconn(g: &Graph, t: &mut Tally) {
    let s = IsotropicSystem::from_graph(g);
    let ok = (0..1u64 << g.n()).all(|x| s.connectivity_mask(x) == g.cut_rank_mask(x));
    t.check(ok, || g.clone());
}

fn check_igmin(g: &Graph, ids: &[u64], t: &mut Tally) {
    let s = IsotropicSystem::from_graph(g);
    let p = GraphicPresentation::standard(g);
    let mut ok = true;
    for i in 0..g.n() {
        let v = i as VertexId;
        let mut prime_minors = 0;
        for x in KElement::NONZERO {
            let minor = s.elementary_minor(v, x).expect("vertex in ground");
            let predicted = p.minor_presentation(v, x).expect("vertex in ground");
            ok &= predicted.system() == minor;
            let fundamental = minor
                .fundamental_graph(&minor.some_eulerian_vector())
                .expect("Eulerian")
                .graph;
            ok &= ids[fundamental.code() as usize] == ids[predicted.graph.code() as usize];
            prime_minors += usize::from(minor.is_three_connected());
        }
        ok &= (prime_minors >= 2) == classify_index(g, i).is_non_essential();
    }
    t.check(ok, || g.clone());
}

fn verify_odd_cycle(n: usize) -> Tally {
    let mut t = Tally::default();
    if n >= 5 && n % 2 == 1 {
        let ok = verify_odd_cycle_lemma(n).unwrap_or(false);
        t.check(ok, || Graph::cycle(n));
    }
    t
}
