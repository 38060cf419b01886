//! Double occurrence words, their interlacement graphs and chord diagrams.
//!
//! Letters are lowercase ASCII; letter `c` is vertex `c - 'a'` in every
//! graph built from a word.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::equivalence::local_orbit;
use crate::graph::Graph;
use crate::ground::{Ground, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("{0:?} is not a double occurrence word")]
    Malformed(String),
    #[error("letter {0:?} does not occur in the word")]
    UnknownLetter(char),
    #[error("canonical cycle words need k in 4..=26, got {0}")]
    CycleLength(usize),
    #[error("odd cycle check needs an odd k ≥ 5, got {0}")]
    NotOddCycle(usize),
}

/// A word in which every letter occurs exactly twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoubleOccurrenceWord {
    letters: Vec<u8>,
}

impl DoubleOccurrenceWord {
    pub fn new(text: &str) -> Result<Self, WordError> {
        let bad = || WordError::Malformed(text.to_string());
        let mut counts = [0u8; 26];
        for b in text.bytes() {
            if !b.is_ascii_lowercase() {
                return Err(bad());
            }
            counts[usize::from(b - b'a')] += 1;
        }
        if counts.iter().any(|&c| c != 0 && c != 2) {
            return Err(bad());
        }
        Ok(DoubleOccurrenceWord {
            letters: text.as_bytes().to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of distinct letters.
    pub fn letter_count(&self) -> usize {
        self.letters.len() / 2
    }

    /// Distinct letters in alphabetical order.
    pub fn alphabet(&self) -> Vec<char> {
        let mut out: Vec<char> = self.letters.iter().map(|&b| char::from(b)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.letters).expect("ascii")
    }

    fn occurrences(&self, letter: u8) -> Option<(usize, usize)> {
        let mut it = self
            .letters
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b == letter);
        let (p, _) = it.next()?;
        let (q, _) = it.next()?;
        Some((p, q))
    }

    /// Letter `i` of the returned ground is `alphabet()[i]`.
    fn ground(&self) -> Ground {
        let ids = self.alphabet().iter().map(|&c| letter_id(c)).collect();
        Ground::new(ids).expect("distinct letters")
    }

    /// Calls `f` on every word over `a, b, …` with `k` letters, up to
    /// renaming: first occurrences appear in alphabetical order.
    pub fn for_each(k: usize, mut f: impl FnMut(&DoubleOccurrenceWord)) {
        fn go(slots: &mut [u8], next: u8, f: &mut dyn FnMut(&DoubleOccurrenceWord)) {
            let Some(first) = slots.iter().position(|&b| b == 0) else {
                f(&DoubleOccurrenceWord {
                    letters: slots.to_vec(),
                });
                return;
            };
            slots[first] = next;
            for second in first + 1..slots.len() {
                if slots[second] == 0 {
                    slots[second] = next;
                    go(slots, next + 1, f);
                    slots[second] = 0;
                }
            }
            slots[first] = 0;
        }
        go(&mut vec![0; 2 * k], b'a', &mut f);
    }
}

impl fmt::Display for DoubleOccurrenceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DoubleOccurrenceWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DoubleOccurrenceWord::new(s.trim())
    }
}

pub fn letter_id(c: char) -> VertexId {
    u32::from(c) - u32::from('a')
}

pub fn id_letter(v: VertexId) -> char {
    char::from(b'a' + v as u8)
}

/// `A(m)`: letters are adjacent iff they alternate in `m`.
pub fn interlacement_graph(m: &DoubleOccurrenceWord) -> Graph {
    let alphabet = m.alphabet();
    let spans: Vec<(usize, usize)> = alphabet
        .iter()
        .map(|&c| m.occurrences(c as u8).expect("letter occurs"))
        .collect();
    let mut g = Graph::edgeless(m.ground());
    for i in 0..spans.len() {
        let (p1, p2) = spans[i];
        for (j, &(q1, q2)) in spans.iter().enumerate().skip(i + 1) {
            let inside = |q: usize| p1 < q && q < p2;
            if inside(q1) != inside(q2) {
                g.set_edge_index(i, j, true);
            }
        }
    }
    g
}

/// `m*v`: reverses the subword strictly between the two occurrences of `v`.
pub fn word_local_complement(
    m: &DoubleOccurrenceWord,
    v: char,
) -> Result<DoubleOccurrenceWord, WordError> {
    let (p, q) = u8::try_from(v)
        .ok()
        .and_then(|b| m.occurrences(b))
        .ok_or(WordError::UnknownLetter(v))?;
    let mut letters = m.letters.clone();
    letters[p + 1..q].reverse();
    Ok(DoubleOccurrenceWord { letters })
}

/// A multigraph with loops and parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .map(|(u, v)| {
                assert!(u < n && v < n, "edge endpoint out of range");
                (u.min(v), u.max(v))
            })
            .collect();
        Multigraph { n, edges }
    }

    pub fn from_graph(g: &Graph) -> Self {
        Multigraph::new(g.n(), g.edge_indices())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// A loop adds 2 to the degree of its vertex.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let e = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&f| f == e).count()
    }

    fn counts(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.n]; self.n];
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }

    /// Backtracking search for a bijection preserving all multiplicities.
    pub fn is_isomorphic(&self, other: &Multigraph) -> bool {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut da: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = (0..other.n).map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return false;
        }
        let (a, b) = (self.counts(), other.counts());
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        extend_iso(&a, &b, 0, &mut map, &mut used)
    }
}

fn extend_iso(
    a: &[Vec<usize>],
    b: &[Vec<usize>],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == a.len() {
        return true;
    }
    for w in 0..b.len() {
        if used[w] || a[v][v] != b[w][w] {
            continue;
        }
        if (0..v).any(|u| a[v][u] != b[w][map[u]]) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend_iso(a, b, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

/// `D(m)`: word positions on a circle, joined by circle segments and by a
/// chord between the two occurrences of each letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordDiagram {
    labels: Vec<u8>,
    segments: Vec<(usize, usize)>,
    chords: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn positions(&self) -> usize {
        self.labels.len()
    }

    pub fn segments(&self) -> &[(usize, usize)] {
        &self.segments
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    /// The cubic multigraph of segments and chords.
    pub fn multigraph(&self) -> Multigraph {
        let mut edges = self.segments.clone();
        edges.extend(&self.chords);
        Multigraph::new(self.positions(), edges)
    }
}

pub fn chord_diagram(m: &DoubleOccurrenceWord) -> ChordDiagram {
    let len = m.len();
    let segments = (0..len).map(|p| (p, (p + 1) % len)).collect();
    let chords = m
        .alphabet()
        .iter()
        .map(|&c| m.occurrences(c as u8).expect("letter occurs"))
        .collect();
    ChordDiagram {
        labels: m.letters.clone(),
        segments,
        chords,
    }
}

/// `T(m)`: contracts every chord of `D(m)`. Vertex `i` is the `i`-th letter
/// of the alphabet; the result is 4-regular.
pub fn contract_chords(d: &ChordDiagram) -> Multigraph {
    let mut alphabet = d.labels.clone();
    alphabet.sort_unstable();
    alphabet.dedup();
    let vertex = |p: usize| alphabet.binary_search(&d.labels[p]).expect("label");
    let edges = d
        .segments
        .iter()
        .map(|&(p, q)| (vertex(p), vertex(q)))
        .collect();
    Multigraph::new(alphabet.len(), edges)
}

/// `m_k`: letter `i` sits at circle positions `2i` and `2i + 3 (mod 2k)`,
/// so that `A(m_k)` is the cycle `C_k`.
pub fn canonical_cycle_word(k: usize) -> Result<DoubleOccurrenceWord, WordError> {
    if !(4..=26).contains(&k) {
        return Err(WordError::CycleLength(k));
    }
    let mut letters = vec![0u8; 2 * k];
    for i in 0..k {
        let letter = b'a' + i as u8;
        letters[2 * i] = letter;
        letters[(2 * i + 3) % (2 * k)] = letter;
    }
    let word = DoubleOccurrenceWord { letters };
    debug_assert!(interlacement_graph(&word).is_cycle_graph());
    Ok(word)
}

/// `C_k²`: the circulant graph with offsets 1 and 2.
pub fn square_of_cycle(k: usize) -> Graph {
    assert!(k >= 3, "square of a cycle needs k ≥ 3");
    let mut g = Graph::empty(k);
    for i in 0..k {
        g.set_edge_index(i, (i + 1) % k, true);
        g.set_edge_index(i, (i + 2) % k, true);
    }
    g
}

/// No graph locally equivalent to the odd cycle `C_k` is bipartite,
/// checked by enumerating the whole local orbit.
pub fn verify_odd_cycle_lemma(k: usize) -> Result<bool, WordError> {
    if k < 5 || k.is_multiple_of(2) || k > 64 {
        return Err(WordError::NotOddCycle(k));
    }
    Ok(!local_orbit(&Graph::cycle(k))
        .members()
        .any(Graph::is_bipartite))
}
