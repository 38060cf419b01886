//! Linear algebra over GF(2) and over the four-element space `K`.
//!
//! `K = {0, α, β, γ}` is stored in two bits (`α = 01`, `β = 10`, `γ = 11`),
//! so addition is XOR and the symplectic form is `hi(x)·lo(y) + lo(x)·hi(y)`.
//! A vector of `K^V` packs the pair for position `i` into bits `2i` (α-bit)
//! and `2i + 1` (β-bit) of a `u128`; subspaces of `K^V` are kept as fully
//! reduced row-echelon bases in that column order, so equal subspaces have
//! equal bases.

use std::fmt;

use thiserror::Error;

use crate::ground::{positions, Ground, GroundError, VertexId};

/// Vectors of `K^V` are packed into a `u128`, two bits per vertex.
pub const MAX_K_VERTICES: usize = 64;

const LOW_BITS: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("vectors live on different ground sets")]
    GroundMismatch,
    #[error("invalid K element code {0}; expected 0..=3")]
    InvalidElement(u8),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ground set of {0} vertices exceeds the K-vector limit of {MAX_K_VERTICES}")]
    TooLarge(usize),
}

// ---------------------------------------------------------------------------
// BitMatrix
// ---------------------------------------------------------------------------

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    /// Builds a matrix from rows of 0/1 entries; any nonzero entry counts as 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Gf2Error::LengthMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x != 0);
            }
        }
        Ok(m)
    }

    /// Rows given as bit masks over at most 64 columns.
    pub fn from_masks(masks: &[u64], cols: usize) -> Self {
        assert!(cols <= 64);
        let mut m = BitMatrix::zeros(masks.len(), cols);
        for (r, &mask) in masks.iter().enumerate() {
            if m.words_per_row > 0 {
                m.data[r * m.words_per_row] = mask & crate::ground::full_mask(cols);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) out of range"
        );
        (self.data[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) out of range"
        );
        let w = &mut self.data[r * self.words_per_row + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words_per_row;
        for k in 0..w {
            let x = self.data[src * w + k];
            self.data[dst * w + k] ^= x;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// Reduced row-echelon form; zero rows are moved to the bottom.
    pub fn rref(&self) -> BitMatrix {
        let mut m = self.clone();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(p, lead);
            for r in 0..m.rows {
                if r != lead && m.get(r, c) {
                    m.xor_row_into(lead, r);
                }
            }
            lead += 1;
        }
        m
    }

    /// Row rank over GF(2).
    pub fn rank(&self) -> usize {
        let m = self.rref();
        (0..m.rows)
            .filter(|&r| m.row_words(r).iter().any(|&w| w != 0))
            .count()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Rank of rows packed in `u64` masks; the slice is used as scratch space.
pub fn rank_of_masks(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// K
// ---------------------------------------------------------------------------

/// An element of `K = {0, α, β, γ}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct KElement(u8);

impl KElement {
    pub const ZERO: KElement = KElement(0);
    pub const ALPHA: KElement = KElement(1);
    pub const BETA: KElement = KElement(2);
    pub const GAMMA: KElement = KElement(3);
    pub const NONZERO: [KElement; 3] = [KElement::ALPHA, KElement::BETA, KElement::GAMMA];

    pub fn from_code(code: u8) -> Result<Self, Gf2Error> {
        if code < 4 {
            Ok(KElement(code))
        } else {
            Err(Gf2Error::InvalidElement(code))
        }
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The symbol used in text output: `0`, `a`, `b`, `c`.
    pub fn symbol(self) -> char {
        ['0', 'a', 'b', 'c'][self.0 as usize]
    }
}

impl std::ops::Add for KElement {
    type Output = KElement;
    // addition in K is XOR of the two-bit codes
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: KElement) -> KElement {
        KElement(self.0 ^ rhs.0)
    }
}

impl fmt::Debug for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["0", "α", "β", "γ"][self.0 as usize])
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The bilinear form on `K`: 1 iff `0 ≠ x ≠ y ≠ 0`.
pub fn form_k(x: KElement, y: KElement) -> bool {
    let (xh, xl) = (x.0 >> 1, x.0 & 1);
    let (yh, yl) = (y.0 >> 1, y.0 & 1);
    (xh & yl) ^ (xl & yh) == 1
}

#[inline]
pub(crate) fn swap_pairs(bits: u128) -> u128 {
    ((bits >> 1) & LOW_BITS) | ((bits & LOW_BITS) << 1)
}

/// Symplectic form on packed vectors.
#[inline]
pub(crate) fn form_bits(a: u128, b: u128) -> bool {
    (a & swap_pairs(b)).count_ones() & 1 == 1
}

/// Bits of the pairs of positions in `mask`.
#[inline]
pub(crate) fn pair_mask(mask: u64) -> u128 {
    let mut out = 0u128;
    for i in positions(mask) {
        out |= 3u128 << (2 * i);
    }
    out
}

/// Position mask of the nonzero pairs.
#[inline]
pub(crate) fn support_bits(bits: u128) -> u64 {
    let merged = (bits | (bits >> 1)) & LOW_BITS;
    let mut out = 0u64;
    let mut m = merged;
    while m != 0 {
        let b = m.trailing_zeros();
        out |= 1u64 << (b / 2);
        m &= m - 1;
    }
    out
}

/// Keeps only the pairs at positions in `mask`, packed down in order.
#[inline]
pub(crate) fn compress_bits(bits: u128, mask: u64) -> u128 {
    let mut out = 0u128;
    for (j, i) in positions(mask).enumerate() {
        out |= ((bits >> (2 * i)) & 3) << (2 * j);
    }
    out
}

/// Inverse of [`compress_bits`]: spreads packed pairs onto the positions in `mask`.
#[inline]
pub(crate) fn expand_bits(bits: u128, mask: u64) -> u128 {
    let mut out = 0u128;
    for (j, i) in positions(mask).enumerate() {
        out |= ((bits >> (2 * j)) & 3) << (2 * i);
    }
    out
}

/// Position mask of `{w : ⟨x(w), a(w)⟩ = 1}`.
#[inline]
pub(crate) fn pointwise_form(x: u128, a: u128) -> u64 {
    let t = x & swap_pairs(a);
    let mut odd = (t ^ (t >> 1)) & LOW_BITS;
    let mut out = 0u64;
    while odd != 0 {
        let b = odd.trailing_zeros();
        out |= 1u64 << (b / 2);
        odd &= odd - 1;
    }
    out
}

#[inline]
pub(crate) fn element_at(bits: u128, i: usize) -> KElement {
    KElement(((bits >> (2 * i)) & 3) as u8)
}

#[inline]
pub(crate) fn with_element(bits: u128, i: usize, x: KElement) -> u128 {
    (bits & !(3u128 << (2 * i))) | ((x.0 as u128) << (2 * i))
}

// ---------------------------------------------------------------------------
// KVector
// ---------------------------------------------------------------------------

/// A function `V → K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KVector {
    ground: Ground,
    bits: u128,
}

impl KVector {
    pub fn zero(ground: &Ground) -> Self {
        KVector {
            ground: ground.clone(),
            bits: 0,
        }
    }

    /// The vector taking the value `x` at every vertex.
    pub fn constant(ground: &Ground, x: KElement) -> Self {
        let bits = (0..ground.len()).fold(0u128, |b, i| with_element(b, i, x));
        KVector {
            ground: ground.clone(),
            bits,
        }
    }

    pub fn from_elements(ground: &Ground, entries: &[KElement]) -> Result<Self, Gf2Error> {
        if ground.len() > MAX_K_VERTICES {
            return Err(Gf2Error::TooLarge(ground.len()));
        }
        if entries.len() != ground.len() {
            return Err(Gf2Error::LengthMismatch {
                expected: ground.len(),
                got: entries.len(),
            });
        }
        let bits = entries
            .iter()
            .enumerate()
            .fold(0u128, |b, (i, &x)| with_element(b, i, x));
        Ok(KVector {
            ground: ground.clone(),
            bits,
        })
    }

    pub(crate) fn from_bits(ground: &Ground, bits: u128) -> Self {
        KVector {
            ground: ground.clone(),
            bits,
        }
    }

    pub(crate) fn bits(&self) -> u128 {
        self.bits
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn elements(&self) -> Vec<KElement> {
        (0..self.len()).map(|i| element_at(self.bits, i)).collect()
    }

    /// Entry at position `i` of the ground.
    pub fn at(&self, i: usize) -> KElement {
        assert!(i < self.len(), "position {i} out of range");
        element_at(self.bits, i)
    }

    pub fn get(&self, v: VertexId) -> Result<KElement, Gf2Error> {
        Ok(element_at(self.bits, self.ground.require(v)?))
    }

    pub fn with_value(&self, v: VertexId, x: KElement) -> Result<KVector, Gf2Error> {
        let i = self.ground.require(v)?;
        Ok(KVector {
            ground: self.ground.clone(),
            bits: with_element(self.bits, i, x),
        })
    }

    pub(crate) fn with_value_at(&self, i: usize, x: KElement) -> KVector {
        KVector {
            ground: self.ground.clone(),
            bits: with_element(self.bits, i, x),
        }
    }

    pub fn support(&self) -> Vec<VertexId> {
        self.ground.ids_of(self.support_mask())
    }

    pub fn support_mask(&self) -> u64 {
        support_bits(self.bits)
    }

    pub fn is_complete(&self) -> bool {
        self.support_mask() == self.ground.full_mask()
    }

    /// Both complete and pointwise distinct.
    pub fn is_supplementary_to(&self, other: &KVector) -> bool {
        self.ground == other.ground
            && self.is_complete()
            && other.is_complete()
            && support_bits(self.bits ^ other.bits) == self.ground.full_mask()
    }

    pub fn add(&self, other: &KVector) -> Result<KVector, Gf2Error> {
        if self.ground != other.ground {
            return Err(Gf2Error::GroundMismatch);
        }
        Ok(KVector {
            ground: self.ground.clone(),
            bits: self.bits ^ other.bits,
        })
    }

    /// `p_X(a)`: the vector restricted to the sub-ground `X`.
    pub fn restrict(&self, set: &[VertexId]) -> Result<KVector, Gf2Error> {
        let mask = self.ground.mask_of(set)?;
        Ok(self.restrict_mask(mask))
    }

    pub fn restrict_mask(&self, mask: u64) -> KVector {
        KVector {
            ground: self.ground.restrict(mask),
            bits: compress_bits(self.bits, mask),
        }
    }

    /// `a[X]`: agrees with `a` on `X`, zero elsewhere.
    pub fn mask(&self, set: &[VertexId]) -> Result<KVector, Gf2Error> {
        let mask = self.ground.mask_of(set)?;
        Ok(self.mask_positions(mask))
    }

    pub fn mask_positions(&self, mask: u64) -> KVector {
        KVector {
            ground: self.ground.clone(),
            bits: self.bits & pair_mask(mask),
        }
    }

    /// Two-bit text encoding: one digit `0..=3` per vertex.
    pub fn to_digits(&self) -> String {
        self.elements()
            .iter()
            .map(|x| char::from(b'0' + x.code()))
            .collect()
    }
}

impl fmt::Debug for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{:?}", self.ground.id(i), x)?;
        }
        write!(f, ")")
    }
}

/// `⟨a, b⟩ = Σ_v ⟨a(v), b(v)⟩`.
pub fn form_v(a: &KVector, b: &KVector) -> Result<bool, Gf2Error> {
    if a.ground != b.ground {
        return Err(Gf2Error::GroundMismatch);
    }
    Ok(form_bits(a.bits, b.bits))
}

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

/// Reduces `v` against a fully reduced basis.
#[inline]
pub(crate) fn reduce(basis: &[u128], mut v: u128) -> u128 {
    for &row in basis {
        let pivot = row & row.wrapping_neg();
        if v & pivot != 0 {
            v ^= row;
        }
    }
    v
}

/// Inserts `v` into a fully reduced basis sorted by pivot; returns whether
/// the dimension grew.
pub(crate) fn insert(basis: &mut Vec<u128>, v: u128) -> bool {
    let v = reduce(basis, v);
    if v == 0 {
        return false;
    }
    let pivot = v & v.wrapping_neg();
    for row in basis.iter_mut() {
        if *row & pivot != 0 {
            *row ^= v;
        }
    }
    let at = basis
        .iter()
        .position(|&r| (r & r.wrapping_neg()) > pivot)
        .unwrap_or(basis.len());
    basis.insert(at, v);
    true
}

/// Dimension of `{a ∈ span(rows) : supp(a) ⊆ X}` given the pairs outside `X`.
pub(crate) fn dim_confined(rows: &[u128], outside: u128) -> usize {
    let mut pool: smallvec::SmallVec<[u128; 16]> = rows.iter().copied().collect();
    let mut cols = outside;
    while cols != 0 {
        let c = cols & cols.wrapping_neg();
        cols ^= c;
        if let Some(p) = pool.iter().position(|&r| r & c != 0) {
            let row = pool.swap_remove(p);
            for r in pool.iter_mut() {
                if *r & c != 0 {
                    *r ^= row;
                }
            }
        }
    }
    pool.iter().filter(|&&r| r != 0).count()
}

/// Rows of `span(rows)` whose support lies inside `X` (a spanning set).
pub(crate) fn confined_rows(rows: &[u128], outside: u128) -> Vec<u128> {
    let mut pool: Vec<u128> = rows.to_vec();
    let mut cols = outside;
    while cols != 0 {
        let c = cols & cols.wrapping_neg();
        cols ^= c;
        if let Some(p) = pool.iter().position(|&r| r & c != 0) {
            let row = pool.swap_remove(p);
            for r in pool.iter_mut() {
                if *r & c != 0 {
                    *r ^= row;
                }
            }
        }
    }
    pool.retain(|&r| r != 0);
    pool
}

/// A subspace of `K^V` stored as a fully reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ground: Ground,
    basis: Vec<u128>,
}

impl Subspace {
    pub fn zero(ground: &Ground) -> Self {
        Subspace {
            ground: ground.clone(),
            basis: Vec::new(),
        }
    }

    /// All of `K^V`.
    pub fn full(ground: &Ground) -> Self {
        let bits = (0..2 * ground.len()).map(|c| 1u128 << c).collect();
        Subspace {
            ground: ground.clone(),
            basis: bits,
        }
    }

    pub fn span<'a, I>(ground: &Ground, vectors: I) -> Result<Self, Gf2Error>
    where
        I: IntoIterator<Item = &'a KVector>,
    {
        if ground.len() > MAX_K_VERTICES {
            return Err(Gf2Error::TooLarge(ground.len()));
        }
        let mut basis = Vec::new();
        for v in vectors {
            if &v.ground != ground {
                return Err(Gf2Error::GroundMismatch);
            }
            insert(&mut basis, v.bits);
        }
        Ok(Subspace {
            ground: ground.clone(),
            basis,
        })
    }

    pub(crate) fn from_bits<I: IntoIterator<Item = u128>>(ground: &Ground, vectors: I) -> Self {
        let mut basis = Vec::new();
        for v in vectors {
            insert(&mut basis, v);
        }
        Subspace {
            ground: ground.clone(),
            basis,
        }
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn basis_bits(&self) -> &[u128] {
        &self.basis
    }

    pub fn basis(&self) -> Vec<KVector> {
        self.basis
            .iter()
            .map(|&b| KVector::from_bits(&self.ground, b))
            .collect()
    }

    pub fn contains(&self, v: &KVector) -> bool {
        v.ground == self.ground && reduce(&self.basis, v.bits) == 0
    }

    pub(crate) fn contains_bits(&self, bits: u128) -> bool {
        reduce(&self.basis, bits) == 0
    }

    /// Every vector of the subspace, the zero vector first.
    pub fn vectors(&self) -> impl Iterator<Item = KVector> + '_ {
        self.vector_bits()
            .map(|b| KVector::from_bits(&self.ground, b))
    }

    /// Gray-code walk over all `2^dim` combinations of the basis.
    pub(crate) fn vector_bits(&self) -> impl Iterator<Item = u128> + '_ {
        let total: u64 = 1u64 << self.basis.len();
        let mut current = 0u128;
        (0..total).map(move |k| {
            if k > 0 {
                current ^= self.basis[k.trailing_zeros() as usize];
            }
            current
        })
    }

    /// `L^⊥ = {a : ⟨a, b⟩ = 0 for every b ∈ L}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        let mut rows = Vec::new();
        for &b in &self.basis {
            insert(&mut rows, swap_pairs(b));
        }
        let pivots: u128 = rows.iter().fold(0, |acc, &r| acc | (r & r.wrapping_neg()));
        let mut out = Vec::new();
        for f in 0..2 * self.ground.len() {
            let col = 1u128 << f;
            if pivots & col != 0 {
                continue;
            }
            let mut x = col;
            for &r in &rows {
                if r & col != 0 {
                    x |= r & r.wrapping_neg();
                }
            }
            out.push(x);
        }
        Subspace::from_bits(&self.ground, out)
    }

    /// `L|⊆X = {p_X(a) : a ∈ L, supp(a) ⊆ X}`.
    pub fn restrict_into(&self, set: &[VertexId]) -> Result<Subspace, Gf2Error> {
        Ok(self.restrict_into_mask(self.ground.mask_of(set)?))
    }

    pub fn restrict_into_mask(&self, mask: u64) -> Subspace {
        let mask = mask & self.ground.full_mask();
        let outside = pair_mask(self.ground.full_mask() & !mask);
        let rows = confined_rows(&self.basis, outside);
        let ground = self.ground.restrict(mask);
        Subspace::from_bits(&ground, rows.into_iter().map(|r| compress_bits(r, mask)))
    }

    /// `dim(L|⊆X)` without building the subspace.
    pub(crate) fn dim_restrict_into_mask(&self, mask: u64) -> usize {
        let outside = pair_mask(self.ground.full_mask() & !mask);
        dim_confined(&self.basis, outside)
    }

    /// `L|_X = {p_X(a) : a ∈ L}`.
    pub fn project(&self, set: &[VertexId]) -> Result<Subspace, Gf2Error> {
        Ok(self.project_mask(self.ground.mask_of(set)?))
    }

    pub fn project_mask(&self, mask: u64) -> Subspace {
        let mask = mask & self.ground.full_mask();
        let ground = self.ground.restrict(mask);
        Subspace::from_bits(&ground, self.basis.iter().map(|&r| compress_bits(r, mask)))
    }

    /// Whether `⟨a, b⟩ = 0` for all basis pairs.
    pub fn is_totally_isotropic(&self) -> bool {
        self.basis
            .iter()
            .enumerate()
            .all(|(i, &a)| self.basis[i + 1..].iter().all(|&b| !form_bits(a, b)))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("ground", &self.ground)
            .field("basis", &self.basis())
            .finish()
    }
}
