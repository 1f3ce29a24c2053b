//! Linear maps, Hom-set search, normality, exactness and splitting.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{Monoid, Semimodule};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::limits::{Enumerated, Limits, Search};

/// A map table `images[m] = f(m)`. The source and target travel alongside;
/// [`LinearMap::new`] checks linearity against them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LinearMap {
    images: Vec<usize>,
}

impl LinearMap {
    pub fn new(source: &Semimodule, target: &Semimodule, images: Vec<usize>) -> Result<Self> {
        if let Some(why) = linearity_violation(source, target, &images) {
            return Err(Error::NotLinear(why));
        }
        Ok(LinearMap { images })
    }

    pub(crate) fn from_images(images: Vec<usize>) -> Self {
        LinearMap { images }
    }

    pub fn identity(m: &Semimodule) -> Self {
        LinearMap { images: (0..m.order()).collect() }
    }

    pub fn zero(source: &Semimodule, target: &Semimodule) -> Self {
        LinearMap { images: vec![target.zero(); source.order()] }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn source_order(&self) -> usize {
        self.images.len()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &LinearMap) -> LinearMap {
        LinearMap { images: inner.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn is_zero(&self, target: &Semimodule) -> bool {
        self.images.iter().all(|&y| y == target.zero())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.images.len());
        self.images.iter().all(|y| seen.insert(*y))
    }

    pub fn image(&self, target: &Semimodule) -> ElemSet {
        ElemSet::from_iter(target.order(), self.images.iter().copied())
    }

    pub fn is_surjective(&self, target: &Semimodule) -> bool {
        self.image(target).is_full()
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

pub fn linearity_violation(source: &Semimodule, target: &Semimodule, f: &[usize]) -> Option<String> {
    if source.base() != target.base() {
        return Some("source and target have different base semirings".into());
    }
    if f.len() != source.order() {
        return Some(format!("map has {} entries for a source of order {}", f.len(), source.order()));
    }
    if let Some(&y) = f.iter().find(|&&y| y >= target.order()) {
        return Some(format!("image {y} is outside the target"));
    }
    if f[source.zero()] != target.zero() {
        return Some("zero is not sent to zero".into());
    }
    for a in 0..source.order() {
        for b in a..source.order() {
            if f[source.add(a, b)] != target.add(f[a], f[b]) {
                return Some(format!("f({a}+{b}) != f({a})+f({b})"));
            }
        }
        for s in 0..source.base().order() {
            if f[source.act(s, a)] != target.act(s, f[a]) {
                return Some(format!("f({s}·{a}) != {s}·f({a})"));
            }
        }
    }
    None
}

/// A small generating set, chosen greedily so that each new generator
/// enlarges the generated subsemimodule as much as possible.
pub fn greedy_generators(m: &Semimodule) -> Vec<usize> {
    let n = m.order();
    let mut current = m.generated(&ElemSet::empty(n));
    let mut gens = Vec::new();
    while !current.is_full() {
        let mut best: Option<(usize, ElemSet)> = None;
        for x in 0..n {
            if current.contains(x) {
                continue;
            }
            let mut seed = current.clone();
            seed.insert(x);
            let g = m.generated(&seed);
            if best.as_ref().is_none_or(|(_, b)| g.len() > b.len()) {
                best = Some((x, g));
            }
        }
        let (x, g) = best.expect("a missing element exists");
        gens.push(x);
        current = g;
    }
    gens
}

const UNSET: usize = usize::MAX;

/// Backtracking search over linear maps with constraint propagation.
///
/// `allowed[x]`, when given, restricts the image of `x`; `injective` rejects
/// collisions as soon as they appear.
pub(crate) struct HomSearch<'a> {
    src: &'a Semimodule,
    tgt: &'a Semimodule,
    gens: Vec<usize>,
    allowed: Option<Vec<ElemSet>>,
    injective: bool,
    steps: u64,
    max_steps: u64,
}

struct State {
    f: Vec<usize>,
    preimage: Vec<usize>,
    known: Vec<usize>,
    queue: Vec<(usize, usize)>,
}

impl<'a> HomSearch<'a> {
    pub(crate) fn new(src: &'a Semimodule, tgt: &'a Semimodule, limits: &Limits) -> Self {
        HomSearch {
            src,
            tgt,
            gens: greedy_generators(src),
            allowed: None,
            injective: false,
            steps: 0,
            max_steps: limits.max_steps,
        }
    }

    pub(crate) fn allowed(mut self, allowed: Vec<ElemSet>) -> Self {
        self.allowed = Some(allowed);
        self
    }

    pub(crate) fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    fn assign(&self, st: &mut State, x: usize, v: usize) -> bool {
        st.queue.clear();
        st.queue.push((x, v));
        let scalars = self.src.base().order();
        while let Some((x, v)) = st.queue.pop() {
            if st.f[x] != UNSET {
                if st.f[x] != v {
                    return false;
                }
                continue;
            }
            if let Some(allowed) = &self.allowed {
                if !allowed[x].contains(v) {
                    return false;
                }
            }
            if self.injective {
                if st.preimage[v] != UNSET {
                    return false;
                }
                st.preimage[v] = x;
            }
            st.f[x] = v;
            st.known.push(x);
            for s in 0..scalars {
                st.queue.push((self.src.act(s, x), self.tgt.act(s, v)));
            }
            for i in 0..st.known.len() {
                let y = st.known[i];
                st.queue.push((self.src.add(x, y), self.tgt.add(v, st.f[y])));
            }
        }
        true
    }

    fn undo(&self, st: &mut State, mark: usize) {
        while st.known.len() > mark {
            let x = st.known.pop().unwrap();
            if self.injective {
                st.preimage[st.f[x]] = UNSET;
            }
            st.f[x] = UNSET;
        }
    }

    /// Calls `visit` on every solution until it returns `false`. Returns
    /// `false` if the step budget ran out.
    pub(crate) fn run(&mut self, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
        if self.src.base() != self.tgt.base() {
            return true;
        }
        if self.injective && self.src.order() > self.tgt.order() {
            return true;
        }
        let mut st = State {
            f: vec![UNSET; self.src.order()],
            preimage: vec![UNSET; self.tgt.order()],
            known: Vec::new(),
            queue: Vec::new(),
        };
        if !self.assign(&mut st, self.src.zero(), self.tgt.zero()) {
            return true;
        }
        if let Some(allowed) = &self.allowed {
            let forced: Vec<(usize, usize)> = allowed
                .iter()
                .enumerate()
                .filter(|(_, a)| a.len() == 1)
                .map(|(x, a)| (x, a.iter().next().unwrap()))
                .collect();
            for (x, v) in forced {
                if !self.assign(&mut st, x, v) {
                    return true;
                }
            }
        }
        let mut stop = false;
        self.descend(&mut st, 0, &mut visit, &mut stop)
    }

    fn descend(&mut self, st: &mut State, depth: usize, visit: &mut impl FnMut(&[usize]) -> bool, stop: &mut bool) -> bool {
        let mut depth = depth;
        while depth < self.gens.len() && st.f[self.gens[depth]] != UNSET {
            depth += 1;
        }
        if depth == self.gens.len() {
            debug_assert!(st.f.iter().all(|&v| v != UNSET));
            if !visit(&st.f) {
                *stop = true;
            }
            return true;
        }
        let g = self.gens[depth];
        for v in 0..self.tgt.order() {
            if *stop {
                return true;
            }
            self.steps += 1;
            if self.steps > self.max_steps {
                return false;
            }
            let mark = st.known.len();
            if self.assign(st, g, v) && !self.descend(st, depth + 1, visit, stop) {
                return false;
            }
            self.undo(st, mark);
        }
        true
    }
}

fn check_bases(m: &Semimodule, n: &Semimodule) -> Result<()> {
    if m.base() != n.base() {
        return Err(Error::Shape("semimodules over different semirings".into()));
    }
    Ok(())
}

/// All of `Hom(M, N)`, sorted by image table.
pub fn enumerate_homs(m: &Semimodule, n: &Semimodule, limits: &Limits) -> Result<Enumerated<LinearMap>> {
    check_bases(m, n)?;
    let mut items = Vec::new();
    let mut truncated = false;
    let finished = HomSearch::new(m, n, limits).run(|f| {
        if items.len() >= limits.max_results {
            truncated = true;
            return false;
        }
        items.push(LinearMap { images: f.to_vec() });
        true
    });
    items.sort();
    Ok(Enumerated { items, exhaustive: finished && !truncated })
}

/// First linear map (in search order) whose values lie in `allowed`.
pub fn find_constrained(
    m: &Semimodule,
    n: &Semimodule,
    allowed: Vec<ElemSet>,
    limits: &Limits,
) -> Result<Search<LinearMap>> {
    check_bases(m, n)?;
    let mut found = None;
    let finished = HomSearch::new(m, n, limits).allowed(allowed).run(|f| {
        found = Some(LinearMap { images: f.to_vec() });
        false
    });
    Ok(match found {
        Some(f) => Search::Present(f),
        None if finished => Search::Absent,
        None => Search::Unknown,
    })
}

/// Per-element invariants preserved by isomorphisms.
fn signatures(m: &Semimodule) -> Vec<(usize, usize, usize)> {
    let n = m.order();
    (0..n)
        .map(|x| {
            let cyclic = m.generated(&ElemSet::singleton(n, x)).len();
            let absorbs = (0..n).filter(|&y| m.add(x, y) == x).count();
            let fixes = (0..m.base().order()).filter(|&s| m.act(s, x) == x).count();
            (cyclic, absorbs, fixes)
        })
        .collect()
}

/// A bijective linear map `a → b`, if one exists.
pub fn find_isomorphism(a: &Semimodule, b: &Semimodule, limits: &Limits) -> Result<Search<LinearMap>> {
    check_bases(a, b)?;
    if a.order() != b.order() {
        return Ok(Search::Absent);
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb {
        return Ok(Search::Absent);
    }
    let n = a.order();
    let allowed = sa.iter().map(|s| ElemSet::from_iter(n, (0..n).filter(|&y| sb[y] == *s))).collect();
    let mut found = None;
    let finished = HomSearch::new(a, b, limits).allowed(allowed).injective().run(|f| {
        found = Some(LinearMap { images: f.to_vec() });
        false
    });
    Ok(match found {
        Some(f) => Search::Present(f),
        None if finished => Search::Absent,
        None => Search::Unknown,
    })
}

pub fn are_isomorphic(a: &Semimodule, b: &Semimodule, limits: &Limits) -> Result<Search<LinearMap>> {
    find_isomorphism(a, b, limits)
}

/// `(Ker f, f(L), closure of f(L))`.
pub fn kernel_image(source: &Semimodule, target: &Semimodule, f: &LinearMap) -> (ElemSet, ElemSet, ElemSet) {
    let kernel = ElemSet::from_iter(source.order(), (0..source.order()).filter(|&x| f.apply(x) == target.zero()));
    let image = f.image(target);
    let closure = target.subtractive_closure(&image);
    (kernel, image, closure)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalityProfile {
    pub k_normal: bool,
    pub i_normal: bool,
    pub normal: bool,
    /// `(m, m′)` with `f(m) = f(m′)` but not Bourne-related modulo `Ker f`.
    pub k_witness: Option<(usize, usize)>,
}

pub fn normality_profile(source: &Semimodule, target: &Semimodule, f: &LinearMap) -> NormalityProfile {
    let k_witness = target.additive().k_normal_violation(source.additive(), f.images());
    let image = f.image(target);
    let i_normal = target.is_subtractive(&image);
    let k_normal = k_witness.is_none();
    NormalityProfile { k_normal, i_normal, normal: k_normal && i_normal, k_witness }
}

/// Exactness flags at the middle of `A -f-> B -g-> C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Junction {
    pub exact: bool,
    pub proper_exact: bool,
    pub semi_exact: bool,
}

/// Classifies a junction using only the additive structure, so the same
/// routine serves semimodules and Hom monoids.
pub fn classify_junction(b: &Monoid, c: &Monoid, f: &[usize], g: &[usize]) -> Junction {
    let image = b.image_of(f);
    let kernel = c.kernel_of(g);
    let closure = b.subtractive_closure(&image);
    let proper_exact = image == kernel;
    let semi_exact = closure == kernel;
    let exact = proper_exact && c.k_normal_violation(b, g).is_none();
    Junction { exact, proper_exact, semi_exact }
}

/// `M₀ → M₁ → … → Mₖ` with `maps[i] : Mᵢ → Mᵢ₊₁`.
#[derive(Debug, Clone)]
pub struct SequenceSpec {
    pub modules: Vec<Semimodule>,
    pub maps: Vec<LinearMap>,
}

impl SequenceSpec {
    /// `0 → L → M → N → 0`.
    pub fn short(l: Semimodule, m: Semimodule, n: Semimodule, f: LinearMap, g: LinearMap) -> Self {
        let zero = Semimodule::zero_module(m.base().clone());
        let into_l = LinearMap::zero(&zero, &l);
        let out_of_n = LinearMap::zero(&n, &zero);
        SequenceSpec { modules: vec![zero.clone(), l, m, n, zero], maps: vec![into_l, f, g, out_of_n] }
    }

    fn check(&self) -> Result<()> {
        if self.modules.len() != self.maps.len() + 1 {
            return Err(Error::NotComposable(format!("{} modules for {} maps", self.modules.len(), self.maps.len())));
        }
        for (i, f) in self.maps.iter().enumerate() {
            let (src, tgt) = (&self.modules[i], &self.modules[i + 1]);
            if let Some(why) = linearity_violation(src, tgt, f.images()) {
                return Err(Error::NotComposable(format!("map {i}: {why}")));
            }
        }
        Ok(())
    }

    fn is_short(&self) -> bool {
        self.modules.len() == 5 && self.modules[0].is_zero_module() && self.modules[4].is_zero_module()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceReport {
    pub junctions: Vec<Junction>,
    pub exact: bool,
    pub proper_exact: bool,
    pub semi_exact: bool,
}

/// Per-junction classification. For `0 → L → M → N → 0` classified exact,
/// the isomorphisms `L ≅ Ker g` and `N ≅ M/f(L)` are confirmed by search.
pub fn classify_sequence(seq: &SequenceSpec, limits: &Limits) -> Result<SequenceReport> {
    seq.check()?;
    let junctions: Vec<Junction> = (0..seq.maps.len().saturating_sub(1))
        .map(|i| {
            classify_junction(
                seq.modules[i + 1].additive(),
                seq.modules[i + 2].additive(),
                seq.maps[i].images(),
                seq.maps[i + 1].images(),
            )
        })
        .collect();
    let report = SequenceReport {
        exact: junctions.iter().all(|j| j.exact),
        proper_exact: junctions.iter().all(|j| j.proper_exact),
        semi_exact: junctions.iter().all(|j| j.semi_exact),
        junctions,
    };
    if seq.is_short() {
        let (l, m, n) = (&seq.modules[1], &seq.modules[2], &seq.modules[3]);
        let (f, g) = (&seq.maps[1], &seq.maps[2]);
        // 0 → L → M is exact iff f is injective; M → N → 0 iff g is surjective.
        if report.junctions[0].exact != f.is_injective() || report.junctions[2].exact != g.is_surjective(n) {
            return Err(Error::Crosscheck("end junctions disagree with injectivity/surjectivity".into()));
        }
        if report.exact {
            let (kernel, _, _) = kernel_image(m, n, g);
            let (ker_mod, _) = m.restrict(&kernel)?;
            let (q, _) = m.quotient(&m.bourne(&f.image(m)))?;
            let l_iso = find_isomorphism(l, &ker_mod, limits)?;
            let n_iso = find_isomorphism(n, &q, limits)?;
            if l_iso.is_absent() || n_iso.is_absent() {
                return Err(Error::Crosscheck("exact sequence without L ≅ Ker g and N ≅ M/f(L)".into()));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct SplittingProfile {
    /// `f′ : M → L` with `f′ ∘ f = id`.
    pub left: Search<LinearMap>,
    /// `g′ : N → M` with `g ∘ g′ = id`.
    pub right: Search<LinearMap>,
}

pub fn retraction(l: &Semimodule, m: &Semimodule, f: &LinearMap, limits: &Limits) -> Result<Search<LinearMap>> {
    extension(l, m, l, f, &LinearMap::identity(l), limits)
}

pub fn section(m: &Semimodule, n: &Semimodule, g: &LinearMap, limits: &Limits) -> Result<Search<LinearMap>> {
    lift(n, m, n, g, &LinearMap::identity(n), limits)
}

pub fn splitting_profile(
    l: &Semimodule,
    m: &Semimodule,
    n: &Semimodule,
    f: &LinearMap,
    g: &LinearMap,
    limits: &Limits,
) -> Result<SplittingProfile> {
    Ok(SplittingProfile { left: retraction(l, m, f, limits)?, right: section(m, n, g, limits)? })
}

/// `h : M → J` with `h ∘ f = g`, for `f : L → M` and `g : L → J`.
pub fn extension(
    l: &Semimodule,
    m: &Semimodule,
    j: &Semimodule,
    f: &LinearMap,
    g: &LinearMap,
    limits: &Limits,
) -> Result<Search<LinearMap>> {
    let mut allowed = vec![ElemSet::full(j.order()); m.order()];
    for x in 0..l.order() {
        let slot = &mut allowed[f.apply(x)];
        let v = g.apply(x);
        if !slot.contains(v) {
            return Ok(Search::Absent);
        }
        *slot = ElemSet::singleton(j.order(), v);
    }
    find_constrained(m, j, allowed, limits)
}

/// `h : P → M` with `f ∘ h = g`, for `f : M → N` and `g : P → N`.
pub fn lift(
    p: &Semimodule,
    m: &Semimodule,
    n: &Semimodule,
    f: &LinearMap,
    g: &LinearMap,
    limits: &Limits,
) -> Result<Search<LinearMap>> {
    let fibres: Vec<ElemSet> =
        (0..n.order()).map(|y| ElemSet::from_iter(m.order(), (0..m.order()).filter(|&x| f.apply(x) == y))).collect();
    let allowed = (0..p.order()).map(|x| fibres[g.apply(x)].clone()).collect();
    find_constrained(p, m, allowed, limits)
}

/// `Hom(X, Y)` as a commutative monoid under pointwise addition.
#[derive(Debug, Clone)]
pub struct HomMonoid {
    pub maps: Vec<LinearMap>,
    pub monoid: Monoid,
    index: HashMap<LinearMap, usize>,
}

impl HomMonoid {
    pub fn new(x: &Semimodule, y: &Semimodule, limits: &Limits) -> Result<Self> {
        let homs = enumerate_homs(x, y, limits)?.require_exhaustive("Hom set")?;
        Ok(Self::from_maps(y, homs))
    }

    pub fn from_maps(target: &Semimodule, maps: Vec<LinearMap>) -> Self {
        let index: HashMap<LinearMap, usize> = maps.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let k = maps.len();
        let mut table = vec![0; k * k];
        for a in 0..k {
            for b in a..k {
                let sum = LinearMap {
                    images: maps[a].images.iter().zip(&maps[b].images).map(|(&u, &v)| target.add(u, v)).collect(),
                };
                let c = index[&sum];
                table[a * k + b] = c;
                table[b * k + a] = c;
            }
        }
        let zero = maps.iter().position(|f| f.is_zero(target)).expect("the zero map is linear");
        HomMonoid { monoid: Monoid::from_table(k, table, zero), maps, index }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn index_of(&self, f: &LinearMap) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// `h ↦ g ∘ h` from `Hom(P, X)` (self) into `Hom(P, Y)`.
    pub fn post_compose(&self, g: &LinearMap, into: &HomMonoid) -> Vec<usize> {
        self.maps.iter().map(|h| into.index[&g.after(h)]).collect()
    }

    /// `h ↦ h ∘ f` from `Hom(Y, J)` (self) into `Hom(X, J)`.
    pub fn pre_compose(&self, f: &LinearMap, into: &HomMonoid) -> Vec<usize> {
        self.maps.iter().map(|h| into.index[&h.after(f)]).collect()
    }
}

/// Flags of `0 → A → B → C → 0` for commutative monoids.
pub fn classify_monoid_short(a: &Monoid, b: &Monoid, c: &Monoid, f: &[usize], g: &[usize]) -> [Junction; 3] {
    let zero = Monoid::trivial();
    let into_a = vec![a.zero()];
    let out_of_c = vec![0; c.order()];
    [classify_junction(a, b, &into_a, f), classify_junction(b, c, f, g), classify_junction(c, &zero, g, &out_of_c)]
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Semiring;

    fn boolean() -> Arc<Semiring> {
        Arc::new(Semiring::new(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 0, 1).unwrap())
    }

    fn b31() -> Arc<Semiring> {
        Arc::new(Semiring::new(3, vec![0, 1, 2, 1, 2, 1, 2, 1, 2], vec![0, 0, 0, 0, 1, 2, 0, 2, 2], 0, 1).unwrap())
    }

    fn brute_homs(m: &Semimodule, n: &Semimodule) -> Vec<Vec<usize>> {
        let (a, b) = (m.order(), n.order());
        let total = b.pow(a as u32);
        (0..total)
            .map(|mut code| {
                (0..a)
                    .map(|_| {
                        let v = code % b;
                        code /= b;
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|f| linearity_violation(m, n, f).is_none())
            .map(|mut f| {
                f.shrink_to_fit();
                f
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    #[test]
    fn boolean_endomorphisms() {
        let b = Semimodule::regular(boolean());
        let homs = enumerate_homs(&b, &b, &Limits::default()).unwrap();
        assert!(homs.exhaustive);
        let tables: Vec<_> = homs.items.iter().map(|f| f.images().to_vec()).collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn b31_endomorphisms_are_right_multiplications() {
        let s = b31();
        let m = Semimodule::regular(s.clone());
        let homs = enumerate_homs(&m, &m, &Limits::default()).unwrap().items;
        let mut expected: Vec<Vec<usize>> = (0..3).map(|c| (0..3).map(|x| s.mul(x, c)).collect()).collect();
        expected.sort();
        assert_eq!(homs.iter().map(|f| f.images().to_vec()).collect::<Vec<_>>(), expected);
        assert_eq!(brute_homs(&m, &m), expected);
    }

    #[test]
    fn search_matches_brute_force_on_sums() {
        let s = b31();
        let m = Semimodule::regular(s.clone());
        let (i, _) = m.restrict(&ElemSet::from_iter(3, [0, 2])).unwrap();
        let (q, _) = m.quotient(&m.bourne(&ElemSet::from_iter(3, [0, 2]))).unwrap();
        let sum = Semimodule::direct_sum(&m, &q).unwrap();
        for (x, y) in [(&sum, &m), (&m, &sum), (&i, &sum), (&sum, &q), (&q, &m)] {
            let got: Vec<Vec<usize>> =
                enumerate_homs(x, y, &Limits::default()).unwrap().items.iter().map(|f| f.images().to_vec()).collect();
            assert_eq!(got, brute_homs(x, y));
        }
    }

    #[test]
    fn homs_into_zero() {
        let m = Semimodule::regular(b31());
        let z = Semimodule::zero_module(m.base().clone());
        assert_eq!(enumerate_homs(&m, &z, &Limits::default()).unwrap().items.len(), 1);
    }

    #[test]
    fn kernels_and_normality() {
        let m = Semimodule::regular(b31());
        let i = ElemSet::from_iter(3, [0, 2]);
        let (q, proj) = m.quotient(&m.bourne(&i)).unwrap();
        let pi = LinearMap::new(&m, &q, proj).unwrap();
        assert_eq!(kernel_image(&m, &q, &pi).0, i);
        let p = normality_profile(&m, &q, &pi);
        assert!(p.k_normal && p.i_normal);

        let times2 = LinearMap::new(&m, &m, vec![0, 2, 2]).unwrap();
        let (_, image, closure) = kernel_image(&m, &m, &times2);
        assert_eq!(image.to_vec(), vec![0, 2]);
        assert_eq!(closure.to_vec(), vec![0, 2]);

        // the quotient by {{0},{1,2}} is a congruence quotient that is not k-normal
        let rho = crate::algebra::Partition::from_labels(&[0, 1, 1]);
        let (q2, proj2) = m.quotient(&rho).unwrap();
        let p2 = normality_profile(&m, &q2, &LinearMap::new(&m, &q2, proj2).unwrap());
        assert!(!p2.k_normal);
    }

    #[test]
    fn b31_short_sequence() {
        let m = Semimodule::regular(b31());
        let i = ElemSet::from_iter(3, [0, 2]);
        let (l, emb) = m.restrict(&i).unwrap();
        let (q, proj) = m.quotient(&m.bourne(&i)).unwrap();
        let f = LinearMap::new(&l, &m, emb).unwrap();
        let g = LinearMap::new(&m, &q, proj).unwrap();
        let seq = SequenceSpec::short(l.clone(), m.clone(), q.clone(), f.clone(), g.clone());
        let report = classify_sequence(&seq, &Limits::default()).unwrap();
        assert!(report.exact);
        let split = splitting_profile(&l, &m, &q, &f, &g, &Limits::default()).unwrap();
        assert!(split.right.is_absent());
        // x ↦ x·2 written in the coordinates of I = {0,2}
        assert_eq!(split.left.witness().unwrap().images(), &[0, 1, 1]);
    }

    #[test]
    fn isomorphism_search() {
        let s = b31();
        let m = Semimodule::regular(s.clone());
        let (i, _) = m.restrict(&ElemSet::from_iter(3, [0, 2])).unwrap();
        let (q, _) = m.quotient(&m.bourne(&ElemSet::from_iter(3, [0, 2]))).unwrap();
        assert!(find_isomorphism(&m, &m.clone(), &Limits::default()).unwrap().is_present());
        // I is idempotent, S/I is ℤ₂-like
        assert!(find_isomorphism(&i, &q, &Limits::default()).unwrap().is_absent());
    }

    #[test]
    fn non_linear_maps_are_rejected() {
        let m = Semimodule::regular(b31());
        assert!(matches!(LinearMap::new(&m, &m, vec![0, 2, 1]), Err(Error::NotLinear(_))));
        assert!(matches!(LinearMap::new(&m, &m, vec![1, 1, 1]), Err(Error::NotLinear(_))));
    }
}
