//! All semirings of a given order up to isomorphism.
//!
//! Tables are normalized to `zero = 0`, `one = 1`. Cells are filled in
//! row-major order with partial associativity/distributivity checks after
//! every assignment; a completed table is kept only if it is the minimal
//! `(add, mul)` pair among its relabelings fixing `0` and `1`.

use crate::algebra::Semiring;
use crate::error::{Error, Result};
use crate::limits::Limits;

const UNSET: usize = usize::MAX;

/// Rearranges `v` into the next permutation in lexicographic order.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn relabel(n: usize, table: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[perm[a] * n + perm[b]] = perm[table[a * n + b]];
        }
    }
    out
}

/// Minimal `(add, mul)` over all relabelings sending zero to 0 and one to 1.
pub fn canonical_form(s: &Semiring) -> (Vec<usize>, Vec<usize>) {
    let n = s.order();
    let rest: Vec<usize> = (0..n).filter(|&x| x != s.zero() && x != s.one()).collect();
    let mut targets: Vec<usize> = (2..n).collect();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    loop {
        let mut perm = vec![0; n];
        perm[s.zero()] = 0;
        perm[s.one()] = 1;
        for (x, &t) in rest.iter().zip(&targets) {
            perm[*x] = t;
        }
        let cand = (relabel(n, s.add_table(), &perm), relabel(n, s.mul_table(), &perm));
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
        if !next_permutation(&mut targets) {
            break;
        }
    }
    best.unwrap()
}

pub fn canonicalize(s: &Semiring) -> Semiring {
    let (add, mul) = canonical_form(s);
    Semiring::new(s.order(), add, mul, 0, 1).expect("relabeling preserves the axioms")
}

struct Builder {
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    commutative_only: bool,
    steps: u64,
    max_steps: u64,
    out: Vec<Semiring>,
}

impl Builder {
    fn a(&self, x: usize, y: usize) -> usize {
        if x == UNSET || y == UNSET { UNSET } else { self.add[x * self.n + y] }
    }

    fn m(&self, x: usize, y: usize) -> usize {
        if x == UNSET || y == UNSET { UNSET } else { self.mul[x * self.n + y] }
    }

    fn add_consistent(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = self.a(self.a(x, y), z);
                    let r = self.a(x, self.a(y, z));
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn mul_consistent(&self) -> bool {
        let n = self.n;
        let clash = |l: usize, r: usize| l != UNSET && r != UNSET && l != r;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if clash(self.m(self.m(x, y), z), self.m(x, self.m(y, z)))
                        || clash(self.m(x, self.a(y, z)), self.a(self.m(x, y), self.m(x, z)))
                        || clash(self.m(self.a(x, y), z), self.a(self.m(x, z), self.m(y, z)))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.max_steps {
            return Err(Error::LimitExceeded(format!("semiring enumeration exceeded {} steps", self.max_steps)));
        }
        Ok(())
    }

    fn fill_add(&mut self, cells: &[(usize, usize)], k: usize, mul_cells: &[(usize, usize)]) -> Result<()> {
        if k == cells.len() {
            return self.fill_mul(mul_cells, 0);
        }
        let (x, y) = cells[k];
        let n = self.n;
        for v in 0..n {
            self.tick()?;
            self.add[x * n + y] = v;
            self.add[y * n + x] = v;
            if self.add_consistent() {
                self.fill_add(cells, k + 1, mul_cells)?;
            }
        }
        self.add[x * n + y] = UNSET;
        self.add[y * n + x] = UNSET;
        Ok(())
    }

    fn fill_mul(&mut self, cells: &[(usize, usize)], k: usize) -> Result<()> {
        let n = self.n;
        if k == cells.len() {
            if let Ok(s) = Semiring::new(n, self.add.clone(), self.mul.clone(), 0, 1) {
                let (add, mul) = canonical_form(&s);
                if add == self.add && mul == self.mul {
                    self.out.push(s);
                }
            }
            return Ok(());
        }
        let (x, y) = cells[k];
        for v in 0..n {
            self.tick()?;
            self.mul[x * n + y] = v;
            if self.commutative_only {
                self.mul[y * n + x] = v;
            }
            if self.mul_consistent() {
                self.fill_mul(cells, k + 1)?;
            }
        }
        self.mul[x * n + y] = UNSET;
        if self.commutative_only {
            self.mul[y * n + x] = UNSET;
        }
        Ok(())
    }
}

/// Every semiring of `order` elements up to isomorphism, in ascending
/// canonical `(add, mul)` order.
pub fn enumerate_semirings(order: usize, commutative_only: bool, limits: &Limits) -> Result<Vec<Semiring>> {
    if order > limits.max_order {
        return Err(Error::LimitExceeded(format!("order {order} above max_order {}", limits.max_order)));
    }
    if order < 2 {
        // zero and one must differ
        return Ok(Vec::new());
    }
    let n = order;
    let mut add = vec![UNSET; n * n];
    let mut mul = vec![UNSET; n * n];
    for x in 0..n {
        add[x] = x;
        add[x * n] = x;
        mul[x] = 0;
        mul[x * n] = 0;
        mul[n + x] = x;
        mul[x * n + 1] = x;
    }
    mul[n] = 0;
    let add_cells: Vec<(usize, usize)> = (1..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    let mul_cells: Vec<(usize, usize)> = (2..n)
        .flat_map(|x| (2..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !commutative_only || x <= y)
        .collect();
    let mut b = Builder { n, add, mul, commutative_only, steps: 0, max_steps: limits.max_steps, out: Vec::new() };
    b.fill_add(&add_cells, 0, &mul_cells)?;
    let mut out = b.out;
    out.sort_by(|x, y| (x.add_table(), x.mul_table()).cmp(&(y.add_table(), y.mul_table())));
    Ok(out)
}
