use std::fmt;
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::error::{AxiomViolation, Error, Result};
use crate::limits::{Enumerated, Limits};

use super::monoid::{self, Monoid};
use super::partition::Partition;
use super::semiring::Semiring;

/// A finite left semimodule: an additive table plus a scalar action table
/// with `act[s·order + m] = s·m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semimodule {
    base: Arc<Semiring>,
    additive: Monoid,
    act: Vec<usize>,
}

impl Semimodule {
    pub fn new(base: Arc<Semiring>, order: usize, add: Vec<usize>, act: Vec<usize>, zero: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Shape("empty carrier".into()));
        }
        if add.len() != order * order || act.len() != base.order() * order {
            return Err(Error::Shape(format!(
                "semimodule of order {order} over a semiring of order {} needs {}+{} entries",
                base.order(),
                order * order,
                base.order() * order
            )));
        }
        if zero >= order || add.iter().chain(&act).any(|&x| x >= order) {
            return Err(Error::Shape(format!("entry out of range for order {order}")));
        }
        let m = Semimodule { base, additive: Monoid::from_table(order, add, zero), act };
        let v = m.violations();
        if v.is_empty() {
            Ok(m)
        } else {
            Err(Error::Axioms(v))
        }
    }

    fn violations(&self) -> Vec<AxiomViolation> {
        let s = &self.base;
        let n = self.order();
        let zero = self.zero();
        let mut out = self.additive.violations();
        let mut push = |law, witness: Vec<usize>| {
            if out.len() < 64 {
                out.push(AxiomViolation { law, witness });
            }
        };
        for m in 0..n {
            if self.act(s.one(), m) != m {
                push("unit-action", vec![m]);
            }
            if self.act(s.zero(), m) != zero {
                push("zero-scalar-action", vec![m]);
            }
        }
        for a in 0..s.order() {
            if self.act(a, zero) != zero {
                push("action-on-zero", vec![a]);
            }
            for m in 0..n {
                for m2 in 0..n {
                    if self.act(a, self.add(m, m2)) != self.add(self.act(a, m), self.act(a, m2)) {
                        push("action-distributes-over-sum", vec![a, m, m2]);
                    }
                }
                for b in 0..s.order() {
                    if self.act(s.add(a, b), m) != self.add(self.act(a, m), self.act(b, m)) {
                        push("scalar-sum-distributes", vec![a, b, m]);
                    }
                    if self.act(s.mul(a, b), m) != self.act(a, self.act(b, m)) {
                        push("action-associativity", vec![a, b, m]);
                    }
                }
            }
        }
        out
    }

    /// `S` as a left module over itself.
    pub fn regular(base: Arc<Semiring>) -> Self {
        let additive = base.additive().clone();
        let act = base.mul_table().to_vec();
        Semimodule { base, additive, act }
    }

    /// The zero semimodule.
    pub fn zero_module(base: Arc<Semiring>) -> Self {
        let act = vec![0; base.order()];
        Semimodule { base, additive: Monoid::trivial(), act }
    }

    #[inline]
    pub fn base(&self) -> &Arc<Semiring> {
        &self.base
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.additive.order()
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.additive.zero()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.additive.add(a, b)
    }

    #[inline]
    pub fn act(&self, s: usize, m: usize) -> usize {
        self.act[s * self.order() + m]
    }

    pub fn additive(&self) -> &Monoid {
        &self.additive
    }

    pub fn add_table(&self) -> &[usize] {
        self.additive.table()
    }

    pub fn act_table(&self) -> &[usize] {
        &self.act
    }

    pub fn is_zero_module(&self) -> bool {
        self.order() == 1
    }

    pub(crate) fn ops(&self) -> Vec<&[usize]> {
        let n = self.order();
        self.act.chunks(n).collect()
    }

    /// Smallest subsemimodule containing `seed`.
    pub fn generated(&self, seed: &ElemSet) -> ElemSet {
        monoid::generate(&self.additive, &self.ops(), seed)
    }

    pub fn is_subsemimodule(&self, set: &ElemSet) -> bool {
        monoid::is_closed(&self.additive, &self.ops(), set)
    }

    /// `{m : m + l = l′ for some l, l′ ∈ set}`.
    pub fn subtractive_closure(&self, set: &ElemSet) -> ElemSet {
        self.additive.subtractive_closure(set)
    }

    pub fn is_subtractive(&self, set: &ElemSet) -> bool {
        self.additive.is_subtractive(set)
    }

    /// The Bourne congruence of a subsemimodule.
    pub fn bourne(&self, n: &ElemSet) -> Partition {
        self.additive.bourne(n)
    }

    pub fn congruence_closure(&self, pairs: &[(usize, usize)]) -> Partition {
        monoid::congruence_closure(&self.additive, &self.ops(), &Partition::discrete(self.order()), pairs)
    }

    /// Joins `base` with the congruence generated by `pairs`.
    pub fn congruence_join(&self, base: &Partition, pairs: &[(usize, usize)]) -> Partition {
        monoid::congruence_closure(&self.additive, &self.ops(), base, pairs)
    }

    pub fn is_congruence(&self, p: &Partition) -> bool {
        p.len() == self.order() && monoid::compatibility_violation(&self.additive, &self.ops(), p).is_none()
    }

    pub fn enumerate_subsemimodules(&self, limits: &Limits, subtractive_only: bool) -> Enumerated<ElemSet> {
        monoid::enumerate_closed(&self.additive, &self.ops(), subtractive_only, limits)
    }

    pub fn enumerate_congruences(&self, limits: &Limits) -> Enumerated<Partition> {
        monoid::enumerate_congruences(&self.additive, &self.ops(), limits)
    }

    /// `M/ρ` on class ids, plus the canonical projection.
    pub fn quotient(&self, rho: &Partition) -> Result<(Semimodule, Vec<usize>)> {
        if rho.len() != self.order() {
            return Err(Error::IncompatiblePartition(format!(
                "partition of {} elements for a carrier of {}",
                rho.len(),
                self.order()
            )));
        }
        if let Some((a, b, why)) = monoid::compatibility_violation(&self.additive, &self.ops(), rho) {
            return Err(Error::IncompatiblePartition(format!("{a} ~ {b} is not preserved by {why}")));
        }
        let k = rho.class_count();
        let reps = rho.representatives();
        let mut add = vec![0; k * k];
        for x in 0..k {
            for y in 0..k {
                add[x * k + y] = rho.class_of(self.add(reps[x], reps[y]));
            }
        }
        let s = self.base.order();
        let mut act = vec![0; s * k];
        for a in 0..s {
            for x in 0..k {
                act[a * k + x] = rho.class_of(self.act(a, reps[x]));
            }
        }
        let q = Semimodule { base: self.base.clone(), additive: Monoid::from_table(k, add, rho.class_of(self.zero())), act };
        Ok((q, rho.labels().to_vec()))
    }

    /// `N` as a semimodule in its own right, with the embedding
    /// (new index `i` ↦ old element `embedding[i]`, ascending).
    pub fn restrict(&self, members: &ElemSet) -> Result<(Semimodule, Vec<usize>)> {
        if !self.is_subsemimodule(members) {
            return Err(Error::Shape(format!("{members} is not a subsemimodule")));
        }
        let embedding = members.to_vec();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &m) in embedding.iter().enumerate() {
            index[m] = i;
        }
        let k = embedding.len();
        let add = (0..k * k).map(|c| index[self.add(embedding[c / k], embedding[c % k])]).collect();
        let s = self.base.order();
        let act = (0..s * k).map(|c| index[self.act(c / k, embedding[c % k])]).collect();
        let sub = Semimodule {
            base: self.base.clone(),
            additive: Monoid::from_table(k, add, index[self.zero()]),
            act,
        };
        Ok((sub, embedding))
    }

    /// `A ⊕ B` on pairs, `(a, b) ↦ a·|B| + b`.
    pub fn direct_sum(a: &Semimodule, b: &Semimodule) -> Result<Semimodule> {
        if a.base != b.base {
            return Err(Error::Shape("direct sum needs a common base semiring".into()));
        }
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let pair = |x: usize| (x / nb, x % nb);
        let mut add = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let ((xa, xb), (ya, yb)) = (pair(x), pair(y));
                add[x * n + y] = a.add(xa, ya) * nb + b.add(xb, yb);
            }
        }
        let s = a.base.order();
        let mut act = vec![0; s * n];
        for r in 0..s {
            for x in 0..n {
                let (xa, xb) = pair(x);
                act[r * n + x] = a.act(r, xa) * nb + b.act(r, xb);
            }
        }
        Ok(Semimodule {
            base: a.base.clone(),
            additive: Monoid::from_table(n, add, a.zero() * nb + b.zero()),
            act,
        })
    }
}

impl fmt::Debug for Semimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semimodule")
            .field("order", &self.order())
            .field("zero", &self.zero())
            .field("add", &self.add_table())
            .field("act", &self.act)
            .finish()
    }
}
