//! Fixed-width bit vectors used to represent subsets of a finite carrier.
//!
//! All set arithmetic in this crate goes through [`BitSet`]; element lists
//! only appear at the parsing/printing boundary.

use std::fmt;

const BLOCK: usize = 64;

/// A subset of `{0, .., width-1}` stored as a fixed-width bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    width: usize,
    blocks: Vec<u64>,
}

impl BitSet {
    pub fn empty(width: usize) -> Self {
        BitSet {
            width,
            blocks: vec![0; width.div_ceil(BLOCK)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for i in 0..width {
            s.insert(i);
        }
        s
    }

    pub fn singleton(width: usize, i: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, it: I) -> Self {
        let mut s = Self::empty(width);
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `width` bits of `mask`. Requires `width <= 64`.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        assert!(width <= 64, "mask constructor limited to width 64");
        let mut s = Self::empty(width);
        if width > 0 {
            s.blocks[0] = mask & mask_of(width);
        }
        s
    }

    /// The numeric mask, when the width fits in one block.
    pub fn as_mask(&self) -> Option<u64> {
        if self.width <= 64 {
            Some(self.blocks.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width);
        self.blocks[i / BLOCK] |= 1 << (i % BLOCK);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.width);
        self.blocks[i / BLOCK] &= !(1 << (i % BLOCK));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.blocks[i / BLOCK] >> (i % BLOCK) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a & !b)
    }

    /// Complement within the carrier `{0, .., width-1}`.
    pub fn complement(&self) -> BitSet {
        Self::full(self.width).difference(self)
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        assert_eq!(self.width, other.width);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_in_place(&mut self, other: &BitSet) {
        assert_eq!(self.width, other.width);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_in_place(&mut self, other: &BitSet) {
        assert_eq!(self.width, other.width);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(move |&i| self.contains(i))
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn zip(&self, other: &BitSet, f: impl Fn(u64, u64) -> u64) -> BitSet {
        assert_eq!(self.width, other.width, "bit set width mismatch");
        BitSet {
            width: self.width,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

fn mask_of(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

// Numeric order (element 0 is the least significant bit), so enumeration in
// mask order and sort order agree.
impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        assert_eq!(self.width, other.width);
        self.blocks
            .iter()
            .rev()
            .cmp(other.blocks.iter().rev())
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// All non-empty subsets of `{0, .., width-1}` in increasing mask order.
pub fn nonempty_subsets(width: usize) -> impl Iterator<Item = BitSet> {
    assert!(width <= 32, "subset enumeration limited to width 32");
    (1u64..1 << width).map(move |m| BitSet::from_mask(width, m))
}

/// All subsets, including the empty one, in increasing mask order.
pub fn all_subsets(width: usize) -> impl Iterator<Item = BitSet> {
    assert!(width <= 32, "subset enumeration limited to width 32");
    (0u64..1 << width).map(move |m| BitSet::from_mask(width, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = BitSet::from_indices(4, [0, 2]);
        let b = BitSet::from_indices(4, [2, 3]);
        assert_eq!(a.union(&b), BitSet::from_indices(4, [0, 2, 3]));
        assert_eq!(a.intersect(&b), BitSet::singleton(4, 2));
        assert_eq!(a.complement(), BitSet::from_indices(4, [1, 3]));
        assert!(BitSet::singleton(4, 2).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
    }

    #[test]
    fn subset_count() {
        assert_eq!(nonempty_subsets(3).count(), 7);
        assert_eq!(all_subsets(3).count(), 8);
    }

    #[test]
    fn order_is_numeric() {
        let subs: Vec<BitSet> = nonempty_subsets(3).collect();
        let mut sorted = subs.clone();
        sorted.sort();
        assert_eq!(subs, sorted);
    }
}
