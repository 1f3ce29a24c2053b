//! Constructors for named finite families.

use std::sync::Arc;

use crate::algebra::text::RawLattice;
use crate::algebra::{Semimodule, Semiring};
use crate::error::{AxiomViolation, Error, Result};
use crate::homs;
use crate::limits::Limits;

/// `𝔹 = {0, 1}` with `1 + 1 = 1`.
pub fn boolean() -> Semiring {
    Semiring::new(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 0, 1).expect("boolean tables are valid")
}

/// Wraps `x ≥ n` back into `[i, n)` modulo `n − i`.
fn fold(x: usize, n: usize, i: usize) -> usize {
    if x < n {
        x
    } else {
        i + (x - i) % (n - i)
    }
}

/// `B(n, i)` on `{0, …, n−1}` with wrap-around into `[i, n)`.
pub fn make_b(n: usize, i: usize) -> Result<Semiring> {
    if n < 2 || i >= n {
        return Err(Error::InvalidParameters(format!("B(n,i) needs n ≥ 2 and 0 ≤ i < n, got n={n}, i={i}")));
    }
    let add = (0..n * n).map(|c| fold(c / n + c % n, n, i)).collect();
    let mul = (0..n * n).map(|c| fold((c / n) * (c % n), n, i)).collect();
    Semiring::new(n, add, mul, 0, 1)
}

/// A finite lattice given by its join table; the meet is derived when absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpec {
    order: usize,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl LatticeSpec {
    pub fn new(raw: RawLattice) -> Result<Self> {
        let RawLattice { order: n, bottom, top, join, meet } = raw;
        if n == 0 || join.len() != n * n || meet.as_ref().is_some_and(|m| m.len() != n * n) {
            return Err(Error::Shape(format!("lattice tables must be {n}x{n}")));
        }
        if bottom >= n || top >= n || join.iter().chain(meet.iter().flatten()).any(|&x| x >= n) {
            return Err(Error::Shape(format!("entry out of range for order {n}")));
        }
        let j = |a: usize, b: usize| join[a * n + b];
        let mut bad = Vec::new();
        for a in 0..n {
            if j(a, a) != a {
                bad.push(AxiomViolation { law: "join-idempotent", witness: vec![a] });
            }
            if j(a, bottom) != a {
                bad.push(AxiomViolation { law: "bottom-identity", witness: vec![a] });
            }
            if j(a, top) != top {
                bad.push(AxiomViolation { law: "top-absorbing", witness: vec![a] });
            }
            for b in 0..n {
                if j(a, b) != j(b, a) {
                    bad.push(AxiomViolation { law: "join-commutative", witness: vec![a, b] });
                }
                for c in 0..n {
                    if j(j(a, b), c) != j(a, j(b, c)) {
                        bad.push(AxiomViolation { law: "join-associative", witness: vec![a, b, c] });
                    }
                }
            }
        }
        if !bad.is_empty() {
            bad.truncate(64);
            return Err(Error::Axioms(bad));
        }
        let meet = match meet {
            Some(m) => {
                for a in 0..n {
                    for b in 0..n {
                        let ab = m[a * n + b];
                        if ab != m[b * n + a] || j(a, ab) != a || m[a * n + j(a, b)] != a {
                            bad.push(AxiomViolation { law: "absorption", witness: vec![a, b] });
                        }
                    }
                }
                if !bad.is_empty() {
                    bad.truncate(64);
                    return Err(Error::Axioms(bad));
                }
                m
            }
            None => (0..n * n)
                .map(|c| {
                    let (a, b) = (c / n, c % n);
                    (0..n).filter(|&x| j(x, a) == a && j(x, b) == b).fold(bottom, j)
                })
                .collect(),
        };
        Ok(LatticeSpec { order: n, join, meet, bottom, top })
    }

    /// Builds the lattice of a partial order given as `leq(a, b)`.
    fn from_order(n: usize, bottom: usize, top: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let lub = |a: usize, b: usize| {
            let ups: Vec<usize> = (0..n).filter(|&u| leq(a, u) && leq(b, u)).collect();
            *ups.iter().find(|&&u| ups.iter().all(|&v| leq(u, v))).expect("finite lattice")
        };
        let join = (0..n * n).map(|c| lub(c / n, c % n)).collect();
        Self::new(RawLattice { order: n, bottom, top, join, meet: None }).expect("order-derived lattice is valid")
    }

    /// `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        Self::from_order(n, 0, n - 1, |a, b| a <= b)
    }

    /// The diamond: `0 < a, b, c < 1` with indices `0, 1, 2, 3, 4`.
    pub fn m3() -> Self {
        Self::from_order(5, 0, 4, |a, b| a == b || a == 0 || b == 4)
    }

    /// The pentagon: `0 < a < b < 1`, `0 < c < 1`, indices `0, 1, 2, 3, 4`.
    pub fn n5() -> Self {
        Self::from_order(5, 0, 4, |a, b| a == b || a == 0 || b == 4 || (a, b) == (1, 2))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.order + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.order + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn to_raw(&self) -> RawLattice {
        RawLattice {
            order: self.order,
            bottom: self.bottom,
            top: self.top,
            join: self.join.clone(),
            meet: Some(self.meet.clone()),
        }
    }

    /// First `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)))
    }

    /// `(L, ∨, ⊥)` as a semimodule over `𝔹`.
    pub fn join_semimodule(&self) -> Semimodule {
        let n = self.order;
        let act = (0..2 * n).map(|c| if c < n { self.bottom } else { c - n }).collect();
        Semimodule::new(Arc::new(boolean()), n, self.join.clone(), act, self.bottom)
            .expect("a join semilattice with bottom is a 𝔹-semimodule")
    }
}

/// `(L, ∨, ⊥, ∧, ⊤)` for a distributive lattice.
pub fn make_lattice_semiring(l: &LatticeSpec) -> Result<Semiring> {
    if let Some((a, b, c)) = l.distributivity_failure() {
        return Err(Error::NotDistributive(a, b, c));
    }
    Semiring::new(l.order, l.join.clone(), l.meet.clone(), l.bottom, l.top)
}

/// Join endomorphisms of `L` fixing `⊥`, under pointwise join and composition
/// (`f·g = f ∘ g`). With `top_preserving`, only the zero map and maps fixing
/// `⊤` are kept.
pub fn make_end_semiring(l: &LatticeSpec, top_preserving: bool, limits: &Limits) -> Result<Semiring> {
    if l.order < 2 {
        return Err(Error::Degenerate("the one-element lattice has a one-element endomorphism semiring".into()));
    }
    let m = l.join_semimodule();
    let homs = homs::enumerate_homs(&m, &m, limits)?.require_exhaustive("join endomorphisms")?;
    let maps: Vec<Vec<usize>> = homs
        .into_iter()
        .map(|f| f.images().to_vec())
        .filter(|f| !top_preserving || f[l.top] == l.top || f.iter().all(|&y| y == l.bottom))
        .collect();
    let k = maps.len();
    if k > limits.max_carrier {
        return Err(Error::LimitExceeded(format!("End has {k} elements, above max_carrier={}", limits.max_carrier)));
    }
    let index: std::collections::HashMap<&[usize], usize> = maps.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut add = vec![0; k * k];
    let mut mul = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            let sum: Vec<usize> = (0..l.order).map(|x| l.join(maps[a][x], maps[b][x])).collect();
            let comp: Vec<usize> = (0..l.order).map(|x| maps[a][maps[b][x]]).collect();
            add[a * k + b] = index[sum.as_slice()];
            mul[a * k + b] = index[comp.as_slice()];
        }
    }
    let zero = maps.iter().position(|f| f.iter().all(|&y| y == l.bottom)).expect("zero map");
    let one = maps.iter().position(|f| f.iter().enumerate().all(|(x, &y)| x == y)).expect("identity");
    Semiring::new(k, add, mul, zero, one)
}

/// `M_k(S)`; a matrix with row-major entries `e₀, e₁, …` has index `Σ eⱼ·|S|ʲ`.
pub fn make_matrix_semiring(s: &Semiring, k: usize, limits: &Limits) -> Result<Semiring> {
    if k == 0 {
        return Err(Error::InvalidParameters("matrix size must be positive".into()));
    }
    let n = s.order();
    let cells = k * k;
    let order = (n as u128).checked_pow(cells as u32).filter(|&o| o <= limits.max_carrier as u128).ok_or_else(|| {
        Error::LimitExceeded(format!("M_{k} over an order-{n} semiring exceeds max_carrier={}", limits.max_carrier))
    })? as usize;
    let decode = |mut x: usize| {
        let mut e = vec![0; cells];
        for slot in e.iter_mut() {
            *slot = x % n;
            x /= n;
        }
        e
    };
    let encode = |e: &[usize]| e.iter().rev().fold(0, |acc, &v| acc * n + v);
    let mats: Vec<Vec<usize>> = (0..order).map(decode).collect();
    let mut add = vec![0; order * order];
    let mut mul = vec![0; order * order];
    for a in 0..order {
        for b in 0..order {
            let (x, y) = (&mats[a], &mats[b]);
            let sum: Vec<usize> = (0..cells).map(|c| s.add(x[c], y[c])).collect();
            let prod: Vec<usize> = (0..cells)
                .map(|c| {
                    let (i, j) = (c / k, c % k);
                    (0..k).fold(s.zero(), |acc, l| s.add(acc, s.mul(x[i * k + l], y[l * k + j])))
                })
                .collect();
            add[a * order + b] = encode(&sum);
            mul[a * order + b] = encode(&prod);
        }
    }
    let zero = encode(&vec![s.zero(); cells]);
    let one = encode(&(0..cells).map(|c| if c / k == c % k { s.one() } else { s.zero() }).collect::<Vec<_>>());
    Semiring::new(order, add, mul, zero, one)
}

/// Componentwise product; `(x₁, …, xₜ)` has mixed-radix index with `x₁` most
/// significant.
pub fn make_product(factors: &[Semiring]) -> Result<Semiring> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::InvalidParameters("empty product".into()))?;
    let mut acc = first.clone();
    for t in rest {
        let (na, nb) = (acc.order(), t.order());
        let n = na * nb;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb, ya, yb) = (x / nb, x % nb, y / nb, y % nb);
                add[x * n + y] = acc.add(xa, ya) * nb + t.add(xb, yb);
                mul[x * n + y] = acc.mul(xa, ya) * nb + t.mul(xb, yb);
            }
        }
        acc = Semiring::new(n, add, mul, acc.zero() * nb + t.zero(), acc.one() * nb + t.one())?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b31_tables() {
        let s = make_b(3, 1).unwrap();
        assert_eq!(s.add_table(), &[0, 1, 2, 1, 2, 1, 2, 1, 2]);
        assert_eq!(s.mul_table(), &[0, 0, 0, 0, 1, 2, 0, 2, 2]);
        assert_eq!(make_b(2, 1).unwrap(), boolean());
    }

    #[test]
    fn b_rejects_bad_parameters() {
        assert!(matches!(make_b(1, 0), Err(Error::InvalidParameters(_))));
        assert!(matches!(make_b(3, 3), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn b_n_0_is_cyclic_group_ring() {
        for n in 2..=6 {
            let s = make_b(n, 0).unwrap();
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(s.add(a, b), (a + b) % n);
                    assert_eq!(s.mul(a, b), (a * b) % n);
                }
            }
            assert!(s.is_ring());
        }
    }

    #[test]
    fn lattices() {
        assert_eq!(make_lattice_semiring(&LatticeSpec::chain(2)).unwrap(), boolean());
        let c4 = make_lattice_semiring(&LatticeSpec::chain(4)).unwrap();
        assert!(c4.is_commutative());
        assert!(matches!(make_lattice_semiring(&LatticeSpec::m3()), Err(Error::NotDistributive(..))));
        assert!(LatticeSpec::n5().distributivity_failure().is_some());
    }

    #[test]
    fn end_semirings() {
        let l = Limits::default();
        assert_eq!(make_end_semiring(&LatticeSpec::chain(2), false, &l).unwrap().order(), 2);
        assert_eq!(make_end_semiring(&LatticeSpec::m3(), false, &l).unwrap().order(), 50);
    }

    #[test]
    fn matrices_and_products() {
        let l = Limits::default();
        let b = boolean();
        assert_eq!(make_matrix_semiring(&b, 1, &l).unwrap(), b);
        assert_eq!(make_matrix_semiring(&b, 2, &l).unwrap().order(), 16);
        assert_eq!(make_matrix_semiring(&make_b(3, 1).unwrap(), 2, &l).unwrap().order(), 81);
        let bz = make_product(&[b.clone(), make_b(2, 0).unwrap()]).unwrap();
        assert_eq!(bz.order(), 4);
        assert!(!bz.is_zerosumfree());
        assert_eq!(make_product(std::slice::from_ref(&b)).unwrap(), b);
    }
}
