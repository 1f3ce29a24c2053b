use std::fmt;

use crate::bitset::ElemSet;

/// An equivalence relation on `0..n`, stored as canonical class ids.
///
/// Class ids are assigned in order of first appearance, so two partitions are
/// equal exactly when their `class_of` vectors are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: usize,
}

/// Serialized as its list of classes.
impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.classes())
    }
}

impl Partition {
    /// Normalizes arbitrary labels into canonical class ids.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap: Vec<Option<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut next = 0;
        for &l in labels {
            if l >= remap.len() {
                remap.resize(l + 1, None);
            }
            let id = *remap[l].get_or_insert_with(|| {
                next += 1;
                next - 1
            });
            class_of.push(id);
        }
        Partition { class_of, classes: next }
    }

    /// The identity relation.
    pub fn discrete(n: usize) -> Self {
        Partition { class_of: (0..n).collect(), classes: n }
    }

    /// The all relation.
    pub fn full(n: usize) -> Self {
        Partition { class_of: vec![0; n], classes: usize::from(n > 0) }
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_discrete(&self) -> bool {
        self.classes == self.class_of.len()
    }

    pub fn is_full(&self) -> bool {
        self.classes <= 1
    }

    /// The members of class `c`.
    pub fn class(&self, c: usize) -> ElemSet {
        ElemSet::from_iter(self.len(), (0..self.len()).filter(|&x| self.class_of[x] == c))
    }

    pub fn classes(&self) -> Vec<ElemSet> {
        (0..self.classes).map(|c| self.class(c)).collect()
    }

    /// Smallest member of every class, indexed by class id.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        reps
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        let reps = self.representatives();
        (0..self.len()).all(|x| other.related(x, reps[self.class_of[x]]))
    }

    /// Generating pairs `(rep, x)` for every non-representative `x`.
    pub fn spanning_pairs(&self) -> Vec<(usize, usize)> {
        let reps = self.representatives();
        (0..self.len())
            .filter_map(|x| {
                let r = reps[self.class_of[x]];
                (r != x).then_some((r, x))
            })
            .collect()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.classes().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Union-find with path halving, used by every closure computation.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labels() {
        let p = Partition::from_labels(&[7, 3, 7, 9]);
        assert_eq!(p.labels(), &[0, 1, 0, 2]);
        assert_eq!(p.class_count(), 3);
        assert_eq!(format!("{p}"), "{{0,2},{1},{3}}");
    }

    #[test]
    fn refinement() {
        let d = Partition::discrete(3);
        let p = Partition::from_labels(&[0, 1, 1]);
        assert!(d.refines(&p));
        assert!(p.refines(&Partition::full(3)));
        assert!(!p.refines(&d));
    }
}
