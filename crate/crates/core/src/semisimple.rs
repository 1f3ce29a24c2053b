//! Simplicity, semisimplicity and the C1 / C2 / C2′ conditions.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::{Partition, Semimodule, Semiring};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::homs;
use crate::limits::Limits;
use crate::summands::{self, SummandPoset};

/// Smallest proper non-zero cyclic subsemimodule, if any.
pub fn ideal_simplicity_witness(m: &Semimodule) -> Option<ElemSet> {
    let n = m.order();
    (0..n)
        .filter(|&x| x != m.zero())
        .map(|x| m.generated(&ElemSet::singleton(n, x)))
        .filter(|g| !g.is_full())
        .min()
}

/// First non-trivial proper principal congruence, if any.
pub fn congruence_simplicity_witness(m: &Semimodule) -> Option<Partition> {
    let n = m.order();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|p| m.congruence_closure(&[p])).find(|c| !c.is_full())
}

pub fn is_ideal_simple(m: &Semimodule) -> bool {
    !m.is_zero_module() && ideal_simplicity_witness(m).is_none()
}

pub fn is_congruence_simple(m: &Semimodule) -> bool {
    !m.is_zero_module() && congruence_simplicity_witness(m).is_none()
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicityReport {
    pub ideal_simple: bool,
    pub congruence_simple: bool,
    pub ideal_witness: Option<ElemSet>,
    pub congruence_witness: Option<Partition>,
    /// Full enumerations agree with the principal decisions; `None` when an
    /// enumeration hit its limits.
    pub enumeration_agrees: Option<bool>,
    /// Both map characterizations agree over the test family (quotients and
    /// subsemimodules of M, and M itself); `None` when the family could not
    /// be enumerated.
    pub lemma_crosscheck: Option<bool>,
}

/// The bounded test family: every quotient, every subsemimodule, and `M`.
pub struct TestFamily {
    pub quotients: Vec<Semimodule>,
    pub subs: Vec<Semimodule>,
}

pub fn test_family(m: &Semimodule, limits: &Limits) -> Option<TestFamily> {
    let congs = m.enumerate_congruences(limits);
    let subs = m.enumerate_subsemimodules(limits, false);
    if !congs.exhaustive || !subs.exhaustive {
        return None;
    }
    let quotients = congs.items.iter().map(|c| m.quotient(c).expect("enumerated congruence").0).collect();
    let subs = subs.items.iter().map(|s| m.restrict(s).expect("enumerated subsemimodule").0).collect();
    Some(TestFamily { quotients, subs })
}

/// `(every non-zero map out of M is injective, every non-zero map into M is
/// surjective)` over the test family.
pub fn map_characterizations(m: &Semimodule, family: &TestFamily, limits: &Limits) -> Result<(bool, bool)> {
    let members = || family.quotients.iter().chain(&family.subs).chain(std::iter::once(m));
    let mut out_injective = true;
    for x in members() {
        let homs = homs::enumerate_homs(m, x, limits)?.require_exhaustive("Hom out of M")?;
        if homs.iter().any(|f| !f.is_zero(x) && !f.is_injective()) {
            out_injective = false;
            break;
        }
    }
    let mut in_surjective = true;
    for x in members() {
        let homs = homs::enumerate_homs(x, m, limits)?.require_exhaustive("Hom into M")?;
        if homs.iter().any(|f| !f.is_zero(m) && !f.is_surjective(m)) {
            in_surjective = false;
            break;
        }
    }
    Ok((out_injective, in_surjective))
}

pub fn simplicity_profile(m: &Semimodule, limits: &Limits) -> Result<SimplicityReport> {
    let ideal_witness = ideal_simplicity_witness(m);
    let congruence_witness = congruence_simplicity_witness(m);
    let ideal_simple = !m.is_zero_module() && ideal_witness.is_none();
    let congruence_simple = !m.is_zero_module() && congruence_witness.is_none();

    let subs = m.enumerate_subsemimodules(limits, false);
    let congs = m.enumerate_congruences(limits);
    let enumeration_agrees = (subs.exhaustive && congs.exhaustive).then(|| {
        let n = m.order();
        let by_subs = n > 1 && subs.items.len() == 2;
        let by_congs = n > 1 && congs.items.len() == 2;
        by_subs == ideal_simple && by_congs == congruence_simple
    });
    if enumeration_agrees == Some(false) {
        return Err(Error::Crosscheck("principal and enumerated simplicity disagree".into()));
    }

    let lemma_crosscheck = match (m.is_zero_module(), test_family(m, limits)) {
        (false, Some(family)) => {
            let (out_injective, in_surjective) = map_characterizations(m, &family, limits)?;
            if out_injective != congruence_simple || in_surjective != ideal_simple {
                return Err(Error::Crosscheck(format!(
                    "map characterizations disagree: out-injective={out_injective}, congruence-simple={congruence_simple}, \
                     in-surjective={in_surjective}, ideal-simple={ideal_simple}"
                )));
            }
            Some(true)
        }
        _ => None,
    };
    Ok(SimplicityReport { ideal_simple, congruence_simple, ideal_witness, congruence_witness, enumeration_agrees, lemma_crosscheck })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SimpleKind {
    Ideal,
    Congruence,
}

impl SimpleKind {
    pub fn holds(self, m: &Semimodule) -> bool {
        match self {
            SimpleKind::Ideal => is_ideal_simple(m),
            SimpleKind::Congruence => is_congruence_simple(m),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SemisimplicityReport {
    pub ideal_semisimple: bool,
    pub congruence_semisimple: bool,
    pub ideal_parts: Option<Vec<ElemSet>>,
    pub congruence_parts: Option<Vec<ElemSet>>,
    /// Non-zero direct summands examined as candidate parts.
    pub summands: usize,
}

/// A direct decomposition of `M` into `kind`-simple summands, if one exists.
/// Every part of such a decomposition is a direct summand, so searching the
/// summand poset is exhaustive.
pub fn simple_decomposition(m: &Semimodule, poset: &SummandPoset, kind: SimpleKind) -> Result<Option<Vec<ElemSet>>> {
    if m.is_zero_module() {
        return Ok(None);
    }
    let mut candidates = Vec::new();
    for node in &poset.nodes {
        if node.members.len() > 1 && kind.holds(&m.restrict(&node.members)?.0) {
            candidates.push(node.members.clone());
        }
    }
    let mut chosen = Vec::new();
    let mut reached = HashSet::from([m.zero()]);
    Ok(extend(m, &candidates, 0, &mut chosen, &mut reached).then_some(chosen))
}

fn extend(m: &Semimodule, candidates: &[ElemSet], from: usize, chosen: &mut Vec<ElemSet>, reached: &mut HashSet<usize>) -> bool {
    if reached.len() == m.order() {
        return true;
    }
    for i in from..candidates.len() {
        let mut next = HashSet::with_capacity(reached.len() * candidates[i].len());
        let mut clash = false;
        'sums: for &x in reached.iter() {
            for p in candidates[i].iter() {
                if !next.insert(m.add(x, p)) {
                    clash = true;
                    break 'sums;
                }
            }
        }
        if clash {
            continue;
        }
        let saved = std::mem::replace(reached, next);
        chosen.push(candidates[i].clone());
        if extend(m, candidates, i + 1, chosen, reached) {
            return true;
        }
        chosen.pop();
        *reached = saved;
    }
    false
}

pub fn semisimplicity_profile(m: &Semimodule, limits: &Limits) -> Result<SemisimplicityReport> {
    if m.is_zero_module() {
        return Ok(SemisimplicityReport {
            ideal_semisimple: false,
            congruence_semisimple: false,
            ideal_parts: None,
            congruence_parts: None,
            summands: 0,
        });
    }
    let poset = summands::summand_poset(m, limits)?;
    let ideal_parts = simple_decomposition(m, &poset, SimpleKind::Ideal)?;
    let congruence_parts = simple_decomposition(m, &poset, SimpleKind::Congruence)?;
    Ok(SemisimplicityReport {
        ideal_semisimple: ideal_parts.is_some(),
        congruence_semisimple: congruence_parts.is_some(),
        ideal_parts,
        congruence_parts,
        summands: poset.nodes.len() - 1,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionProfile {
    pub c1: bool,
    pub c2: bool,
    pub c2_prime: bool,
    /// A subtractive subsemimodule that is not a direct summand.
    pub c1_witness: Option<ElemSet>,
    /// `(M, L)` with `L` maximal subtractive in `M` and `M/L` not ideal-simple.
    pub c2_witness: Option<(ElemSet, ElemSet)>,
    /// Same, for congruence-simplicity.
    pub c2_prime_witness: Option<(ElemSet, ElemSet)>,
    pub subtractive: Vec<ElemSet>,
    /// Every `(M, L)` pair examined.
    pub pairs: Vec<(ElemSet, ElemSet)>,
}

/// Maximal members of `within` that are proper subsets of `m`.
pub fn maximal_below(m: &ElemSet, within: &[ElemSet]) -> Vec<ElemSet> {
    let below: Vec<&ElemSet> = within.iter().filter(|l| l.is_subset(m) && *l != m).collect();
    below
        .iter()
        .filter(|l| !below.iter().any(|k| k != *l && l.is_subset(k)))
        .map(|l| (*l).clone())
        .collect()
}

/// `M/L` for `L ≤ M ≤ N`, as a semimodule in its own right.
pub fn section_quotient(n: &Semimodule, m: &ElemSet, l: &ElemSet) -> Result<Semimodule> {
    let (sub, emb) = n.restrict(m)?;
    let local = ElemSet::from_iter(sub.order(), (0..sub.order()).filter(|&i| l.contains(emb[i])));
    Ok(sub.quotient(&sub.bourne(&local))?.0)
}

pub fn condition_profile(n: &Semimodule, limits: &Limits) -> Result<ConditionProfile> {
    let subtractive = n.enumerate_subsemimodules(limits, true).require_exhaustive("subtractive subsemimodules")?;
    let poset = summands::summand_poset(n, limits)?;
    let c1_witness = subtractive.iter().find(|s| !poset.contains(s)).cloned();
    let mut pairs = Vec::new();
    let mut c2_witness = None;
    let mut c2_prime_witness = None;
    for m in &subtractive {
        for l in maximal_below(m, &subtractive) {
            let q = section_quotient(n, m, &l)?;
            if c2_witness.is_none() && !is_ideal_simple(&q) {
                c2_witness = Some((m.clone(), l.clone()));
            }
            if c2_prime_witness.is_none() && !is_congruence_simple(&q) {
                c2_prime_witness = Some((m.clone(), l.clone()));
            }
            pairs.push((m.clone(), l));
        }
    }
    Ok(ConditionProfile {
        c1: c1_witness.is_none(),
        c2: c2_witness.is_none(),
        c2_prime: c2_prime_witness.is_none(),
        c1_witness,
        c2_witness,
        c2_prime_witness,
        subtractive,
        pairs,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ComsumCertificate {
    pub ideal: ElemSet,
    /// Indices of the simple parts meeting the ideal non-trivially.
    pub parts: Vec<usize>,
    pub equals_subsum: bool,
    pub is_summand: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComsumReport {
    pub kind: SimpleKind,
    pub decomposition: Vec<ElemSet>,
    pub certificates: Vec<ComsumCertificate>,
    pub holds: bool,
}

fn subsum(m: &Semimodule, parts: &[&ElemSet]) -> ElemSet {
    let mut acc = ElemSet::singleton(m.order(), m.zero());
    for p in parts {
        let mut next = ElemSet::empty(m.order());
        for x in acc.iter() {
            for y in p.iter() {
                next.insert(m.add(x, y));
            }
        }
        acc = next;
    }
    acc
}

/// For a commutative semiring that is `kind`-semisimple: each subtractive
/// ideal is the sum of the simple parts it meets, and is a direct summand.
pub fn comsum_check(s: &Semiring, kind: SimpleKind, limits: &Limits) -> Result<ComsumReport> {
    if !s.is_commutative() {
        return Err(Error::HypothesisUnmet("semiring is not commutative".into()));
    }
    let m = Semimodule::regular(std::sync::Arc::new(s.clone()));
    let poset = summands::summand_poset(&m, limits)?;
    let decomposition = simple_decomposition(&m, &poset, kind)?
        .ok_or_else(|| Error::HypothesisUnmet(format!("semiring is not {kind:?}-semisimple")))?;
    let ideals = m.enumerate_subsemimodules(limits, true).require_exhaustive("subtractive ideals")?;
    let certificates: Vec<ComsumCertificate> = ideals
        .into_iter()
        .map(|ideal| {
            let parts: Vec<usize> =
                (0..decomposition.len()).filter(|&i| ideal.intersection(&decomposition[i]).len() > 1).collect();
            let chosen: Vec<&ElemSet> = parts.iter().map(|&i| &decomposition[i]).collect();
            let equals_subsum = subsum(&m, &chosen) == ideal;
            let is_summand = poset.contains(&ideal);
            ComsumCertificate { ideal, parts, equals_subsum, is_summand }
        })
        .collect();
    let holds = certificates.iter().all(|c| c.equals_subsum && c.is_summand);
    Ok(ComsumReport { kind, decomposition, certificates, holds })
}

/// Two-sided simplicity of a semiring, by enumeration and by principal
/// generators.
#[derive(Debug, Clone, Serialize)]
pub struct SemiringSimplicity {
    pub ideal_simple: bool,
    pub congruence_simple: bool,
    pub ideals: usize,
    pub congruences: usize,
}

pub fn semiring_simplicity(s: &Semiring, limits: &Limits) -> Result<SemiringSimplicity> {
    let ideals = s.ideals(limits).require_exhaustive("two-sided ideals")?;
    let congruences = s.congruences(limits).require_exhaustive("semiring congruences")?;
    let ideal_simple = ideals.len() == 2;
    let congruence_simple = congruences.len() == 2;
    if ideal_simple != s.is_ideal_simple() || congruence_simple != s.is_congruence_simple() {
        return Err(Error::Crosscheck("enumerated and principal semiring simplicity disagree".into()));
    }
    Ok(SemiringSimplicity { ideal_simple, congruence_simple, ideals: ideals.len(), congruences: congruences.len() })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;

    fn regular(s: Semiring) -> Semimodule {
        Semimodule::regular(Arc::new(s))
    }

    #[test]
    fn boolean_is_simple_both_ways() {
        let r = simplicity_profile(&regular(catalog::boolean()), &Limits::default()).unwrap();
        assert!(r.ideal_simple && r.congruence_simple);
        assert_eq!(r.enumeration_agrees, Some(true));
        assert_eq!(r.lemma_crosscheck, Some(true));
    }

    #[test]
    fn b31_is_neither() {
        let m = regular(catalog::make_b(3, 1).unwrap());
        let r = simplicity_profile(&m, &Limits::default()).unwrap();
        assert!(!r.ideal_simple && !r.congruence_simple);
        assert_eq!(r.ideal_witness.unwrap().to_vec(), vec![0, 2]);
        let ss = semisimplicity_profile(&m, &Limits::default()).unwrap();
        assert!(!ss.ideal_semisimple && !ss.congruence_semisimple);
    }

    #[test]
    fn zero_module_is_not_simple() {
        let z = Semimodule::zero_module(Arc::new(catalog::boolean()));
        let r = simplicity_profile(&z, &Limits::default()).unwrap();
        assert!(!r.ideal_simple && !r.congruence_simple);
    }

    #[test]
    fn product_of_booleans_is_semisimple() {
        let b = catalog::boolean();
        let bb = catalog::make_product(&[b.clone(), b]).unwrap();
        let ss = semisimplicity_profile(&regular(bb.clone()), &Limits::default()).unwrap();
        assert!(ss.ideal_semisimple && ss.congruence_semisimple);
        assert_eq!(ss.ideal_parts.unwrap().len(), 2);
        let c = comsum_check(&bb, SimpleKind::Ideal, &Limits::default()).unwrap();
        assert!(c.holds);
        assert_eq!(c.certificates.len(), 4);
    }

    #[test]
    fn condition_profiles() {
        let l = Limits::default();
        let b32 = condition_profile(&regular(catalog::make_b(3, 2).unwrap()), &l).unwrap();
        assert!(b32.c1 && !b32.c2 && !b32.c2_prime);
        let b31 = condition_profile(&regular(catalog::make_b(3, 1).unwrap()), &l).unwrap();
        assert!(!b31.c1 && b31.c2);
        assert_eq!(b31.c1_witness.unwrap().to_vec(), vec![0, 2]);
    }

    #[test]
    fn comsum_needs_its_hypotheses() {
        let err = comsum_check(&catalog::make_b(3, 1).unwrap(), SimpleKind::Ideal, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::HypothesisUnmet(_)));
    }

    #[test]
    fn end_of_diamond_at_semiring_level() {
        let e = catalog::make_end_semiring(&catalog::LatticeSpec::m3(), false, &Limits::default()).unwrap();
        let r = semiring_simplicity(&e, &Limits::default()).unwrap();
        assert!(r.congruence_simple);
        assert!(!r.ideal_simple);
    }
}
