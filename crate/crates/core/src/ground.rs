//! Ordered vertex ground sets shared by graphs, vectors and subspaces.
//!
//! Every object in the crate lives on a `Ground`: an ordered list of distinct
//! vertex ids. Positions in that list index adjacency rows and vector
//! coordinates; vertex subsets are carried internally as `u64` position masks.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Identifier of a vertex. Ids are small non-negative integers.
pub type VertexId = u32;

/// Largest supported ground set; positions must fit a `u64` mask.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("vertex {0} is not in the ground set")]
    UnknownVertex(VertexId),
    #[error("vertex {0} appears more than once")]
    DuplicateVertex(VertexId),
    #[error("ground set of {0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
}

/// An ordered list of distinct vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ground(Arc<[VertexId]>);

impl Ground {
    pub fn new(ids: Vec<VertexId>) -> Result<Self, GroundError> {
        if ids.len() > MAX_VERTICES {
            return Err(GroundError::TooLarge(ids.len()));
        }
        for (i, v) in ids.iter().enumerate() {
            if ids[..i].contains(v) {
                return Err(GroundError::DuplicateVertex(*v));
            }
        }
        Ok(Ground(ids.into()))
    }

    /// The ground `0, 1, ..., n-1`.
    ///
    /// # Panics
    /// Panics if `n > MAX_VERTICES`.
    pub fn range(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "ground of {n} vertices is too large");
        Ground((0..n as VertexId).collect::<Vec<_>>().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.0
    }

    pub fn id(&self, position: usize) -> VertexId {
        self.0[position]
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.0.iter().position(|&u| u == v)
    }

    pub fn require(&self, v: VertexId) -> Result<usize, GroundError> {
        self.position(v).ok_or(GroundError::UnknownVertex(v))
    }

    /// Mask with one bit per position.
    pub fn full_mask(&self) -> u64 {
        full_mask(self.len())
    }

    /// Position mask of a vertex subset; fails on ids outside the ground.
    pub fn mask_of(&self, set: &[VertexId]) -> Result<u64, GroundError> {
        set.iter()
            .try_fold(0u64, |acc, &v| Ok(acc | 1u64 << self.require(v)?))
    }

    /// Vertex ids at the positions in `mask`, in ground order.
    pub fn ids_of(&self, mask: u64) -> Vec<VertexId> {
        positions(mask).map(|i| self.0[i]).collect()
    }

    /// The sub-ground made of the positions in `mask`, keeping ground order.
    pub fn restrict(&self, mask: u64) -> Ground {
        Ground(self.ids_of(mask & self.full_mask()).into())
    }

    /// Largest id plus one; the first id not used by this ground.
    pub fn next_free_id(&self) -> VertexId {
        self.0.iter().max().map_or(0, |m| m + 1)
    }
}

impl fmt::Debug for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bit positions of `mask` in increasing order.
pub(crate) fn positions(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
