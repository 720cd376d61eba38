use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex id plus one.
pub const MAX_VERTICES: u32 = 128;

/// A set of vertex ids in `0..128`, stored as a bitset.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(u128);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u128) -> Self {
        Face(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(v: u32) -> Self {
        assert!(v < MAX_VERTICES);
        Face(1 << v)
    }

    pub fn try_from_vertices(vs: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut bits = 0u128;
        for v in vs {
            if v >= MAX_VERTICES {
                return Err(Error::VertexOutOfRange(v));
            }
            bits |= 1 << v;
        }
        Ok(Face(bits))
    }

    /// First `n` vertex ids.
    pub fn range(n: u32) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            Face(u128::MAX)
        } else {
            Face((1u128 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: u32) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: u32) -> Face {
        self.union(Face::singleton(v))
    }

    pub fn without(self, v: u32) -> Face {
        self.difference(Face::singleton(v))
    }

    pub fn first(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Every subset of `self` (including the empty set and `self`).
    pub fn subsets(self) -> Subsets {
        assert!(self.len() < 64, "too many subsets to enumerate");
        Subsets {
            verts: self.to_vec(),
            next: 0,
            end: 1u64 << self.len(),
        }
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u32> for Face {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        iter.into_iter().fold(Face::EMPTY, Face::with)
    }
}

pub struct Vertices(u128);

impl Iterator for Vertices {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

pub struct Subsets {
    verts: Vec<u32>,
    next: u64,
    end: u64,
}

impl Iterator for Subsets {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut bits = 0u128;
        let mut m = mask;
        while m != 0 {
            let k = m.trailing_zeros() as usize;
            bits |= 1 << self.verts[k];
            m &= m - 1;
        }
        Some(Face(bits))
    }
}
