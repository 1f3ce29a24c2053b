use std::fmt;

use crate::bitset::ElemSet;
use crate::error::{AxiomViolation, Error, Result};
use crate::limits::{Enumerated, Limits};

use super::monoid::{self, Monoid};
use super::partition::Partition;

const MAX_REPORTED: usize = 64;

/// A finite semiring given by validated Cayley tables.
///
/// Elements are indices `0..order`; `zero` and `one` are explicit and need not
/// be `0` and `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semiring {
    additive: Monoid,
    mul: Vec<usize>,
    one: usize,
    commutative: bool,
    zerosumfree: bool,
    cancellative: bool,
}

impl Semiring {
    /// Validates flat row-major tables. All failed axiom instances are
    /// reported (up to a cap), each naming its witness elements.
    pub fn new(order: usize, add: Vec<usize>, mul: Vec<usize>, zero: usize, one: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Shape("empty carrier".into()));
        }
        if add.len() != order * order || mul.len() != order * order {
            return Err(Error::Shape(format!("tables must have {} entries", order * order)));
        }
        if let Some(&bad) = add.iter().chain(&mul).find(|&&x| x >= order) {
            return Err(Error::Shape(format!("entry {bad} out of range for order {order}")));
        }
        if zero >= order || one >= order {
            return Err(Error::Shape("zero/one out of range".into()));
        }
        let additive = Monoid::from_table(order, add, zero);
        let mut s = Semiring { additive, mul, one, commutative: false, zerosumfree: false, cancellative: false };
        let violations = s.violations();
        if !violations.is_empty() {
            return Err(Error::Axioms(violations));
        }
        s.commutative = (0..order).all(|a| (0..order).all(|b| s.mul(a, b) == s.mul(b, a)));
        let (v, k) = s.v_and_k_sets();
        s.zerosumfree = v.len() == 1;
        s.cancellative = k.is_full();
        Ok(s)
    }

    /// Validates nested rows; ragged input is a shape error.
    pub fn from_rows(add: &[Vec<usize>], mul: &[Vec<usize>], zero: usize, one: usize) -> Result<Self> {
        let n = add.len();
        if mul.len() != n || add.iter().chain(mul).any(|r| r.len() != n) {
            return Err(Error::Shape(format!("tables must be {n}x{n}")));
        }
        Semiring::new(n, add.concat(), mul.concat(), zero, one)
    }

    fn violations(&self) -> Vec<AxiomViolation> {
        let n = self.order();
        let (zero, one) = (self.zero(), self.one);
        let mut out = self.additive.violations();
        let mut push = |law, witness: Vec<usize>| {
            if out.len() < MAX_REPORTED {
                out.push(AxiomViolation { law, witness });
            }
        };
        if zero == one {
            push("zero-distinct-from-one", vec![zero]);
        }
        for a in 0..n {
            if self.mul(one, a) != a || self.mul(a, one) != a {
                push("multiplicative-identity", vec![a]);
            }
            if self.mul(zero, a) != zero || self.mul(a, zero) != zero {
                push("zero-absorbing", vec![a]);
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        push("multiplicative-associativity", vec![a, b, c]);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        push("left-distributivity", vec![a, b, c]);
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        push("right-distributivity", vec![a, b, c]);
                    }
                }
            }
        }
        out.truncate(MAX_REPORTED);
        out
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
    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.additive.add(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn additive(&self) -> &Monoid {
        &self.additive
    }

    pub fn add_table(&self) -> &[usize] {
        self.additive.table()
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    /// Row `a` of the multiplication table: `x ↦ a·x`.
    pub fn left_mul_row(&self, a: usize) -> &[usize] {
        let n = self.order();
        &self.mul[a * n..(a + 1) * n]
    }

    /// `x ↦ x·a` as a table.
    pub fn right_mul_table(&self, a: usize) -> Vec<usize> {
        (0..self.order()).map(|x| self.mul(x, a)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_zerosumfree(&self) -> bool {
        self.zerosumfree
    }

    pub fn is_cancellative(&self) -> bool {
        self.cancellative
    }

    /// `V(S)` (elements with an additive inverse) and `K⁺(S)` (additively
    /// cancellable elements).
    pub fn v_and_k_sets(&self) -> (ElemSet, ElemSet) {
        let n = self.order();
        let zero = self.zero();
        let v = ElemSet::from_iter(n, (0..n).filter(|&s| (0..n).any(|t| self.add(s, t) == zero)));
        let k = ElemSet::from_iter(
            n,
            (0..n).filter(|&x| {
                let mut seen = ElemSet::empty(n);
                (0..n).all(|y| seen.insert(self.add(x, y)))
            }),
        );
        (v, k)
    }

    /// `V(S) = S`.
    pub fn is_ring(&self) -> bool {
        self.v_and_k_sets().0.is_full()
    }

    /// Left and right multiplication tables, the operators of two-sided ideals.
    fn two_sided_ops(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut ops: Vec<Vec<usize>> = (0..n).map(|a| self.left_mul_row(a).to_vec()).collect();
        ops.extend((0..n).map(|a| self.right_mul_table(a)));
        ops
    }

    /// Two-sided ideals of the semiring.
    pub fn ideals(&self, limits: &Limits) -> Enumerated<ElemSet> {
        let ops = self.two_sided_ops();
        let refs: Vec<&[usize]> = ops.iter().map(Vec::as_slice).collect();
        monoid::enumerate_closed(&self.additive, &refs, false, limits)
    }

    /// Semiring congruences (compatible with `+` and `·` on both sides).
    pub fn congruences(&self, limits: &Limits) -> Enumerated<Partition> {
        let ops = self.two_sided_ops();
        let refs: Vec<&[usize]> = ops.iter().map(Vec::as_slice).collect();
        monoid::enumerate_congruences(&self.additive, &refs, limits)
    }

    /// Whether the only two-sided ideals are `0` and `S`, decided on the
    /// principal ideals generated by single non-zero elements.
    pub fn is_ideal_simple(&self) -> bool {
        let ops = self.two_sided_ops();
        let refs: Vec<&[usize]> = ops.iter().map(Vec::as_slice).collect();
        let n = self.order();
        (0..n)
            .filter(|&x| x != self.zero())
            .all(|x| monoid::generate(&self.additive, &refs, &ElemSet::singleton(n, x)).is_full())
    }

    /// Whether `Δ` and `S×S` are the only semiring congruences, decided on
    /// principal congruences.
    pub fn is_congruence_simple(&self) -> bool {
        let ops = self.two_sided_ops();
        let refs: Vec<&[usize]> = ops.iter().map(Vec::as_slice).collect();
        let n = self.order();
        let delta = Partition::discrete(n);
        (0..n).all(|a| {
            (a + 1..n).all(|b| monoid::congruence_closure(&self.additive, &refs, &delta, &[(a, b)]).is_full())
        })
    }

    /// Relabels so that `perm[x]` is the new index of `x`.
    pub fn permuted(&self, perm: &[usize]) -> Semiring {
        let n = self.order();
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[self.add(a, b)];
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Semiring {
            additive: Monoid::from_table(n, add, perm[self.zero()]),
            mul,
            one: perm[self.one],
            ..self.clone()
        }
    }
}

impl fmt::Debug for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semiring")
            .field("order", &self.order())
            .field("zero", &self.zero())
            .field("one", &self.one)
            .field("add", &self.add_table())
            .field("mul", &self.mul)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn boolean() -> Semiring {
        Semiring::new(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 0, 1).unwrap()
    }

    #[test]
    fn boolean_flags() {
        let b = boolean();
        assert!(b.is_commutative());
        assert!(b.is_zerosumfree());
        assert!(!b.is_cancellative());
        let (v, k) = b.v_and_k_sets();
        assert_eq!(v.to_vec(), vec![0]);
        // 1+0 = 1+1 kills cancellativity of 1
        assert_eq!(k.to_vec(), vec![0]);
    }

    #[test]
    fn zero_equal_one_is_rejected() {
        let err = Semiring::new(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 0, 0).unwrap_err();
        assert!(err.violations().iter().any(|v| v.law == "zero-distinct-from-one"));
    }

    #[test]
    fn ragged_rows_are_shape_errors() {
        let err = Semiring::from_rows(&[vec![0, 1], vec![1]], &[vec![0, 0], vec![0, 1]], 0, 1).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn distributivity_witness_is_named() {
        // (ℤ₂,+) with 1·1 = 0 and 1 as identity breaks identity and more
        let err = Semiring::new(2, vec![0, 1, 1, 0], vec![0, 0, 0, 0], 0, 1).unwrap_err();
        assert!(err.violations().iter().any(|v| v.law == "multiplicative-identity" && v.witness == vec![1]));
    }

    #[test]
    fn z2_is_a_ring() {
        let z2 = Semiring::new(2, vec![0, 1, 1, 0], vec![0, 0, 0, 1], 0, 1).unwrap();
        assert!(z2.is_ring());
        assert!(z2.is_cancellative());
        assert!(!z2.is_zerosumfree());
    }
}
