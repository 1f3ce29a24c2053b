//! Fixed-universe element subsets.

use std::cmp::Ordering;
use std::fmt;

/// A subset of `0..universe` stored as machine-word blocks.
///
/// Ordering compares subsets as binary numbers (bit `i` has weight `2^i`),
/// which gives every enumeration a reproducible canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl serde::Serialize for ElemSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet { universe, blocks: vec![0; universe.div_ceil(64)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = Self::empty(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        Self::from_iter(universe, [x])
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.blocks[x / 64] >> (x % 64) & 1 == 1
    }

    /// Returns `true` if `x` was not already present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.universe, "element {x} outside universe {}", self.universe);
        let (b, bit) = (x / 64, 1u64 << (x % 64));
        let fresh = self.blocks[b] & bit == 0;
        self.blocks[b] |= bit;
        fresh
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.universe {
            self.blocks[x / 64] &= !(1u64 << (x % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    /// Ascending iteration.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut w = block;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(bi * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElemSet) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a | b).collect();
        ElemSet { universe: self.universe, blocks }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & b).collect();
        ElemSet { universe: self.universe, blocks }
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.blocks.iter().rev().cmp(other.blocks.iter().rev()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_order() {
        let a = ElemSet::from_iter(70, [0, 1]);
        let b = ElemSet::from_iter(70, [2]);
        let c = ElemSet::from_iter(70, [65]);
        assert!(a < b);
        assert!(b < c);
        assert_eq!(c.to_vec(), vec![65]);
    }

    #[test]
    fn set_ops() {
        let a = ElemSet::from_iter(10, [1, 3, 5]);
        let b = ElemSet::from_iter(10, [3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 3, 4, 5]);
        assert!(!a.is_subset(&b));
        assert!(ElemSet::from_iter(10, [3]).is_subset(&b));
        assert_eq!(format!("{a}"), "{1,3,5}");
    }
}
