//! Direct sums, End(M), complemented idempotents and decompositions.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Semimodule, Semiring};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::homs::{self, LinearMap};
use crate::limits::{Limits, Search};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DirectSumFailure {
    /// No representation at all.
    Missing(usize),
    /// Two representations, one component per part.
    Twice { element: usize, first: Vec<usize>, second: Vec<usize> },
}

/// Unique representations `x = p₁ + … + pₖ`, or the first failure found.
fn representations(m: &Semimodule, parts: &[ElemSet]) -> std::result::Result<HashMap<usize, Vec<usize>>, DirectSumFailure> {
    let mut reps: HashMap<usize, Vec<usize>> = HashMap::from([(m.zero(), Vec::new())]);
    for part in parts {
        let mut next: HashMap<usize, Vec<usize>> = HashMap::with_capacity(reps.len() * part.len());
        let mut keys: Vec<usize> = reps.keys().copied().collect();
        keys.sort_unstable();
        for x in keys {
            for p in part.iter() {
                let y = m.add(x, p);
                let mut rep = reps[&x].clone();
                rep.push(p);
                if let Some(prev) = next.get(&y) {
                    return Err(DirectSumFailure::Twice { element: y, first: prev.clone(), second: rep });
                }
                next.insert(y, rep);
            }
        }
        reps = next;
    }
    match (0..m.order()).find(|x| !reps.contains_key(x)) {
        Some(x) => Err(DirectSumFailure::Missing(x)),
        None => Ok(reps),
    }
}

/// Whether every element is uniquely a sum with one summand from each part.
pub fn is_direct_sum(m: &Semimodule, parts: &[ElemSet]) -> std::result::Result<(), DirectSumFailure> {
    representations(m, parts).map(|_| ())
}

/// Component projections of a direct decomposition.
pub fn projections(m: &Semimodule, parts: &[ElemSet]) -> std::result::Result<Vec<LinearMap>, DirectSumFailure> {
    let reps = representations(m, parts)?;
    Ok((0..parts.len())
        .map(|i| LinearMap::from_images((0..m.order()).map(|x| reps[&x][i]).collect()))
        .collect())
}

/// `End(M)` with pointwise addition and `f·g = f ∘ g`.
#[derive(Debug, Clone)]
pub struct EndSemiring {
    pub semiring: Arc<Semiring>,
    pub maps: Vec<LinearMap>,
}

pub fn end_semiring(m: &Semimodule, limits: &Limits) -> Result<EndSemiring> {
    if m.is_zero_module() {
        return Err(Error::Degenerate("End of the zero semimodule has 0 = 1".into()));
    }
    let hom = homs::HomMonoid::new(m, m, limits)?;
    let k = hom.len();
    let mut mul = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            mul[a * k + b] = hom.index_of(&hom.maps[a].after(&hom.maps[b])).expect("End is closed under composition");
        }
    }
    let one = hom.index_of(&LinearMap::identity(m)).expect("identity is linear");
    let semiring = Semiring::new(k, hom.monoid.table().to_vec(), mul, hom.monoid.zero(), one)
        .map_err(|e| Error::Crosscheck(format!("End(M) failed validation: {e}")))?;
    Ok(EndSemiring { semiring: Arc::new(semiring), maps: hom.maps })
}

/// `Comp(T)`: each complemented element with all of its complements.
pub fn comp_elements(t: &Semiring) -> Vec<(usize, Vec<usize>)> {
    let n = t.order();
    (0..n)
        .filter_map(|a| {
            let complements: Vec<usize> = (0..n)
                .filter(|&b| t.add(a, b) == t.one() && t.mul(a, b) == t.zero() && t.mul(b, a) == t.zero())
                .collect();
            (!complements.is_empty()).then_some((a, complements))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SummandNode {
    pub members: ElemSet,
    pub complement: ElemSet,
    /// Complemented idempotent with image `members`.
    pub idempotent: LinearMap,
}

#[derive(Debug, Clone, Serialize)]
pub struct SummandPoset {
    /// Canonically ordered; the first is `{0}` and the last is `M`.
    pub nodes: Vec<SummandNode>,
    /// Longest strictly increasing chain, counted in steps.
    pub longest_chain: usize,
}

impl SummandPoset {
    pub fn contains(&self, n: &ElemSet) -> bool {
        self.nodes.iter().any(|node| &node.members == n)
    }

    pub fn find(&self, n: &ElemSet) -> Option<&SummandNode> {
        self.nodes.iter().find(|node| &node.members == n)
    }

    pub fn is_irreducible(&self) -> bool {
        self.nodes.len() == 2
    }
}

/// Trivial restrictions of Bourne relations: `≡_N` on `N′` and `≡_{N′}` on `N`.
pub fn bourne_restrictions_trivial(m: &Semimodule, n: &ElemSet, n2: &ElemSet) -> bool {
    let trivial_on = |rel: &crate::algebra::Partition, set: &ElemSet| {
        let v = set.to_vec();
        v.iter().enumerate().all(|(i, &a)| v[i + 1..].iter().all(|&b| !rel.related(a, b)))
    };
    trivial_on(&m.bourne(n), n2) && trivial_on(&m.bourne(n2), n)
}

fn sum_set(m: &Semimodule, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut out = ElemSet::empty(m.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(m.add(x, y));
        }
    }
    out
}

/// All direct summands `α(M)` for `α ∈ Comp(End M)`, each confirmed as a
/// direct sum with its complement, by trivial restricted Bourne relations,
/// and by `M/N ≅ N′`.
pub fn summand_poset(m: &Semimodule, limits: &Limits) -> Result<SummandPoset> {
    if m.is_zero_module() {
        let zero = ElemSet::full(1);
        let node = SummandNode { members: zero.clone(), complement: zero, idempotent: LinearMap::identity(m) };
        return Ok(SummandPoset { nodes: vec![node], longest_chain: 0 });
    }
    let end = end_semiring(m, limits)?;
    let mut nodes: Vec<SummandNode> = Vec::new();
    for (a, complements) in comp_elements(&end.semiring) {
        let alpha = &end.maps[a];
        let members = alpha.image(m);
        if nodes.iter().any(|n| n.members == members) {
            continue;
        }
        let complement = end.maps[complements[0]].image(m);
        nodes.push(SummandNode { members, complement, idempotent: alpha.clone() });
    }
    nodes.sort_by(|a, b| a.members.cmp(&b.members));
    for node in &nodes {
        if let Err(w) = is_direct_sum(m, &[node.members.clone(), node.complement.clone()]) {
            return Err(Error::Crosscheck(format!("complemented image {} is not a direct summand: {w:?}", node.members)));
        }
        if sum_set(m, &node.members, &node.complement) != ElemSet::full(m.order())
            || !bourne_restrictions_trivial(m, &node.members, &node.complement)
        {
            return Err(Error::Crosscheck(format!("summand {} fails the Bourne characterization", node.members)));
        }
        let (q, _) = m.quotient(&m.bourne(&node.members))?;
        let (c, _) = m.restrict(&node.complement)?;
        if homs::find_isomorphism(&q, &c, limits)?.is_absent() {
            return Err(Error::Crosscheck(format!("M/{} is not isomorphic to its complement", node.members)));
        }
    }
    let longest_chain = longest_chain(&nodes);
    Ok(SummandPoset { nodes, longest_chain })
}

fn longest_chain(nodes: &[SummandNode]) -> usize {
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by_key(|&i| nodes[i].members.len());
    let mut best = vec![0usize; nodes.len()];
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[..pos] {
            if nodes[j].members.len() < nodes[i].members.len() && nodes[j].members.is_subset(&nodes[i].members) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// An idempotent endomorphism with image `n`.
pub fn retract_check(m: &Semimodule, n: &ElemSet, limits: &Limits) -> Result<Search<LinearMap>> {
    if !m.is_subsemimodule(n) {
        return Err(Error::Shape(format!("{n} is not a subsemimodule")));
    }
    let allowed = (0..m.order()).map(|x| if n.contains(x) { ElemSet::singleton(m.order(), x) } else { n.clone() }).collect();
    homs::find_constrained(m, m, allowed, limits)
}

#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub parts: Vec<ElemSet>,
    pub projections: Vec<LinearMap>,
    /// The chain of summands the parts were cut from.
    pub chain: Vec<ElemSet>,
}

/// Splits `M` into irreducible summands along a saturated chain
/// `0 = D₀ ⊊ D₁ ⊊ … ⊊ Dₙ = M`, taking `Kᵢ₊₁ = Dᵢ₊₁ ∩ Lᵢ` where `M = Dᵢ ⊕ Lᵢ`.
pub fn irreducible_decomposition(m: &Semimodule, limits: &Limits) -> Result<Decomposition> {
    let poset = summand_poset(m, limits)?;
    let nodes = &poset.nodes;
    let mut chain = vec![0usize];
    loop {
        let cur = &nodes[*chain.last().unwrap()].members;
        if cur.is_full() {
            break;
        }
        let above: Vec<usize> =
            (0..nodes.len()).filter(|&j| nodes[j].members.len() > cur.len() && cur.is_subset(&nodes[j].members)).collect();
        let cover = above
            .iter()
            .copied()
            .filter(|&j| !above.iter().any(|&k| k != j && nodes[k].members.len() < nodes[j].members.len() && nodes[k].members.is_subset(&nodes[j].members)))
            .min_by(|&a, &b| nodes[a].members.cmp(&nodes[b].members))
            .expect("M lies above every summand");
        chain.push(cover);
    }
    let parts: Vec<ElemSet> = chain
        .windows(2)
        .map(|w| nodes[w[1]].members.intersection(&nodes[w[0]].complement))
        .collect();
    let projections = projections(m, &parts)
        .map_err(|w| Error::Crosscheck(format!("chain pieces do not form a direct sum: {w:?}")))?;
    check_projections(m, &projections)?;
    for part in &parts {
        let (sub, _) = m.restrict(part)?;
        if !summand_poset(&sub, limits)?.is_irreducible() {
            return Err(Error::Crosscheck(format!("part {part} is reducible")));
        }
    }
    Ok(Decomposition { parts, projections, chain: chain.iter().map(|&i| nodes[i].members.clone()).collect() })
}

/// `eᵢ` linear, `eᵢeⱼ = 0` for `i ≠ j`, `eᵢ² = eᵢ`, `Σ eᵢ = id`.
pub fn check_projections(m: &Semimodule, es: &[LinearMap]) -> Result<()> {
    for (i, e) in es.iter().enumerate() {
        if let Some(why) = homs::linearity_violation(m, m, e.images()) {
            return Err(Error::Crosscheck(format!("projection {i} is not linear: {why}")));
        }
        for (j, f) in es.iter().enumerate() {
            let ef = e.after(f);
            let ok = if i == j { &ef == e } else { ef.is_zero(m) };
            if !ok {
                return Err(Error::Crosscheck(format!("projections {i},{j} are not orthogonal idempotents")));
            }
        }
    }
    for x in 0..m.order() {
        let total = es.iter().fold(m.zero(), |acc, e| m.add(acc, e.apply(x)));
        if total != x {
            return Err(Error::Crosscheck(format!("projections do not sum to the identity at {x}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn regular(s: Semiring) -> Semimodule {
        Semimodule::regular(Arc::new(s))
    }

    #[test]
    fn coordinate_axes_are_direct() {
        let b = catalog::boolean();
        let bb = regular(catalog::make_product(&[b.clone(), b]).unwrap());
        // (x, y) ↦ 2x + y
        assert!(is_direct_sum(&bb, &[ElemSet::from_iter(4, [0, 2]), ElemSet::from_iter(4, [0, 1])]).is_ok());
        match is_direct_sum(&bb, &[ElemSet::from_iter(4, [0, 3]), ElemSet::from_iter(4, [0, 2])]) {
            Err(DirectSumFailure::Twice { element: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn b31_summands_and_retracts() {
        let m = regular(catalog::make_b(3, 1).unwrap());
        let i = ElemSet::from_iter(3, [0, 2]);
        assert!(is_direct_sum(&m, &[i.clone(), ElemSet::full(3)]).is_err());
        let poset = summand_poset(&m, &Limits::default()).unwrap();
        let members: Vec<Vec<usize>> = poset.nodes.iter().map(|n| n.members.to_vec()).collect();
        assert_eq!(members, vec![vec![0], vec![0, 1, 2]]);
        let r = retract_check(&m, &i, &Limits::default()).unwrap();
        assert_eq!(r.witness().unwrap().images(), &[0, 2, 2]);
        let d = irreducible_decomposition(&m, &Limits::default()).unwrap();
        assert_eq!(d.parts, vec![ElemSet::full(3)]);
    }

    #[test]
    fn comp_of_small_semirings() {
        let b = catalog::boolean();
        assert_eq!(comp_elements(&b).iter().map(|c| c.0).collect::<Vec<_>>(), vec![0, 1]);
        let b31 = catalog::make_b(3, 1).unwrap();
        assert_eq!(comp_elements(&b31).iter().map(|c| c.0).collect::<Vec<_>>(), vec![0, 1]);
        let bb = catalog::make_product(&[b.clone(), b]).unwrap();
        assert_eq!(comp_elements(&bb).len(), 4);
    }

    #[test]
    fn product_splits_into_two_booleans() {
        let b = catalog::boolean();
        let bb = regular(catalog::make_product(&[b.clone(), b]).unwrap());
        let poset = summand_poset(&bb, &Limits::default()).unwrap();
        assert_eq!(poset.nodes.len(), 4);
        assert_eq!(poset.longest_chain, 2);
        let d = irreducible_decomposition(&bb, &Limits::default()).unwrap();
        assert_eq!(d.parts.len(), 2);
        assert!(d.parts.iter().all(|p| p.len() == 2));
    }

    #[test]
    fn end_of_zero_is_degenerate() {
        let z = Semimodule::zero_module(Arc::new(catalog::boolean()));
        assert!(matches!(end_semiring(&z, &Limits::default()), Err(Error::Degenerate(_))));
    }
}
