//! Commutative monoids and the closure machinery shared by every structure
//! built on one (semirings, semimodules, Hom-monoids).
//!
//! Anything "with operators" is described by its additive [`Monoid`] plus a
//! list of unary operation tables. For a semimodule those are the scalar
//! actions `m ↦ s·m`; for two-sided ideals of a semiring, left and right
//! multiplications. Substructures are subsets closed under both, congruences
//! are partitions compatible with both.

use std::collections::{HashSet, VecDeque};

use crate::bitset::ElemSet;
use crate::error::AxiomViolation;
use crate::limits::{Enumerated, Limits};

use super::partition::{Partition, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monoid {
    order: usize,
    add: Vec<usize>,
    zero: usize,
}

impl Monoid {
    /// Builds without checking the axioms; see [`Monoid::violations`].
    pub fn from_table(order: usize, add: Vec<usize>, zero: usize) -> Self {
        debug_assert_eq!(add.len(), order * order);
        Monoid { order, add, zero }
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        Monoid { order: 1, add: vec![0], zero: 0 }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.add
    }

    /// Commutative monoid axioms with `zero` as identity.
    pub fn violations(&self) -> Vec<AxiomViolation> {
        let n = self.order;
        let mut out = Vec::new();
        if self.zero >= n {
            out.push(AxiomViolation { law: "zero-in-range", witness: vec![self.zero] });
            return out;
        }
        for a in 0..n {
            if self.add(self.zero, a) != a {
                out.push(AxiomViolation { law: "additive-identity", witness: vec![a] });
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    out.push(AxiomViolation { law: "additive-commutativity", witness: vec![a, b] });
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        out.push(AxiomViolation { law: "additive-associativity", witness: vec![a, b, c] });
                    }
                }
            }
        }
        out
    }

    /// `{m : m + l = l′ for some l, l′ ∈ set}`.
    pub fn subtractive_closure(&self, set: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.order);
        for m in 0..self.order {
            if set.iter().any(|l| set.contains(self.add(m, l))) {
                out.insert(m);
            }
        }
        out
    }

    pub fn is_subtractive(&self, set: &ElemSet) -> bool {
        self.subtractive_closure(set) == *set
    }

    /// The Bourne relation `m ≡ m′ ⇔ m + n = m′ + n′ for some n, n′ ∈ set`.
    ///
    /// For a submonoid this is generated by the pairs `(m, m + n)`.
    pub fn bourne(&self, set: &ElemSet) -> Partition {
        let mut uf = UnionFind::new(self.order);
        for n in set.iter() {
            for m in 0..self.order {
                uf.union(m, self.add(m, n));
            }
        }
        uf.into_partition()
    }

    /// `{a : f(a) = 0}` for a map into `self`.
    pub fn kernel_of(&self, f: &[usize]) -> ElemSet {
        ElemSet::from_iter(f.len(), (0..f.len()).filter(|&a| f[a] == self.zero))
    }

    /// `f(source)` as a subset of `self`.
    pub fn image_of(&self, f: &[usize]) -> ElemSet {
        ElemSet::from_iter(self.order, f.iter().copied())
    }

    /// Whether `f : source → self` identifies only what its kernel forces:
    /// `f(m) = f(m′) ⇒ m + k = m′ + k′` with `k, k′ ∈ Ker f`.
    ///
    /// Returns a pair violating the condition, if any.
    pub fn k_normal_violation(&self, source: &Monoid, f: &[usize]) -> Option<(usize, usize)> {
        let kernel = self.kernel_of(f);
        let bourne = source.bourne(&kernel);
        let mut first_with_image = vec![usize::MAX; self.order];
        for m in 0..source.order() {
            let slot = &mut first_with_image[f[m]];
            if *slot == usize::MAX {
                *slot = m;
            } else if !bourne.related(*slot, m) {
                return Some((*slot, m));
            }
        }
        None
    }

    /// Additive homomorphism check for `f : source → self`.
    pub fn is_additive_map(&self, source: &Monoid, f: &[usize]) -> bool {
        f.len() == source.order()
            && f[source.zero()] == self.zero
            && (0..source.order())
                .all(|a| (0..source.order()).all(|b| f[source.add(a, b)] == self.add(f[a], f[b])))
    }
}

/// Smallest subset containing `seed ∪ {0}` closed under `+` and every op.
pub fn generate(monoid: &Monoid, ops: &[&[usize]], seed: &ElemSet) -> ElemSet {
    let mut set = ElemSet::empty(monoid.order());
    let mut members: Vec<usize> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for x in std::iter::once(monoid.zero()).chain(seed.iter()) {
        if set.insert(x) {
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        members.push(x);
        for &z in &members {
            let y = monoid.add(x, z);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
        for op in ops {
            let y = op[x];
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}

pub fn is_closed(monoid: &Monoid, ops: &[&[usize]], set: &ElemSet) -> bool {
    set.contains(monoid.zero())
        && set.iter().all(|x| {
            set.iter().all(|y| set.contains(monoid.add(x, y))) && ops.iter().all(|op| set.contains(op[x]))
        })
}

/// Smallest congruence containing `base` and `pairs`.
///
/// Every merged pair `(a, b)` pushes its translates `(a+c, b+c)` and
/// `(op a, op b)`; by transitivity that is enough for full compatibility.
pub fn congruence_closure(
    monoid: &Monoid,
    ops: &[&[usize]],
    base: &Partition,
    pairs: &[(usize, usize)],
) -> Partition {
    let n = monoid.order();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = base.spanning_pairs();
    work.extend_from_slice(pairs);
    while let Some((a, b)) = work.pop() {
        if !uf.union(a, b) {
            continue;
        }
        for c in 0..n {
            work.push((monoid.add(a, c), monoid.add(b, c)));
        }
        for op in ops {
            work.push((op[a], op[b]));
        }
    }
    uf.into_partition()
}

/// A pair of related elements whose translate is not related, if any.
pub fn compatibility_violation(
    monoid: &Monoid,
    ops: &[&[usize]],
    p: &Partition,
) -> Option<(usize, usize, String)> {
    let n = monoid.order();
    for (a, b) in p.spanning_pairs() {
        for c in 0..n {
            if !p.related(monoid.add(a, c), monoid.add(b, c)) {
                return Some((a, b, format!("translation by {c}")));
            }
        }
        for (k, op) in ops.iter().enumerate() {
            if !p.related(op[a], op[b]) {
                return Some((a, b, format!("operator {k}")));
            }
        }
    }
    None
}

/// All closed subsets, optionally only the subtractive ones, in bitset order.
///
/// Every closed subset arises from `{0}` by repeatedly adding one element and
/// re-closing, so a breadth-first walk over that step reaches all of them.
pub fn enumerate_closed(
    monoid: &Monoid,
    ops: &[&[usize]],
    subtractive_only: bool,
    limits: &Limits,
) -> Enumerated<ElemSet> {
    let n = monoid.order();
    let close = |seed: &ElemSet| {
        let g = generate(monoid, ops, seed);
        if subtractive_only {
            monoid.subtractive_closure(&g)
        } else {
            g
        }
    };
    let start = close(&ElemSet::empty(n));
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut exhaustive = true;
    // each closure is charged n² steps
    let cost = (n * n) as u64;
    let mut steps = 0u64;
    'outer: while let Some(k) = queue.pop_front() {
        for x in 0..n {
            if k.contains(x) {
                continue;
            }
            steps += cost;
            if steps > limits.max_steps {
                exhaustive = false;
                break 'outer;
            }
            let mut seed = k.clone();
            seed.insert(x);
            let next = close(&seed);
            if !seen.contains(&next) {
                if seen.len() >= limits.max_results {
                    exhaustive = false;
                    break 'outer;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut items: Vec<ElemSet> = seen.into_iter().collect();
    items.sort();
    Enumerated { items, exhaustive }
}

/// All congruences, as joins of principal ones, in canonical label order.
pub fn enumerate_congruences(monoid: &Monoid, ops: &[&[usize]], limits: &Limits) -> Enumerated<Partition> {
    let n = monoid.order();
    let start = Partition::discrete(n);
    let mut seen: HashSet<Partition> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut exhaustive = true;
    let cost = (n * n) as u64;
    let mut steps = 0u64;
    'outer: while let Some(theta) = queue.pop_front() {
        for a in 0..n {
            for b in a + 1..n {
                if theta.related(a, b) {
                    continue;
                }
                steps += cost;
                if steps > limits.max_steps {
                    exhaustive = false;
                    break 'outer;
                }
                let next = congruence_closure(monoid, ops, &theta, &[(a, b)]);
                if !seen.contains(&next) {
                    if seen.len() >= limits.max_results {
                        exhaustive = false;
                        break 'outer;
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    let mut items: Vec<Partition> = seen.into_iter().collect();
    items.sort();
    Enumerated { items, exhaustive }
}
