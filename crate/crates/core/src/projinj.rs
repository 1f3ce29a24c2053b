//! k-/e-projectivity and i-/e-injectivity relative to a fixed semimodule.
//!
//! Normal surjections out of `M` are, up to isomorphism, the quotient maps
//! `M → M/≡_L` for subtractive `L`; normal injections into `M` are the
//! inclusions of subtractive `L`. Short exact sequences with middle term `M`
//! are therefore `0 → L → M → M/L → 0`, one per subtractive `L`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Semimodule, Semiring};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::homs::{self, classify_monoid_short, HomMonoid, LinearMap, SequenceSpec};
use crate::limits::Limits;

#[derive(Debug, Clone)]
pub struct ShortExact {
    pub kernel: ElemSet,
    pub l: Semimodule,
    pub n: Semimodule,
    pub f: LinearMap,
    pub g: LinearMap,
}

/// `0 → L → M → M/L → 0` for every subtractive `L`, each confirmed exact.
pub fn short_exact_sequences(m: &Semimodule, limits: &Limits) -> Result<Vec<ShortExact>> {
    let subs = m.enumerate_subsemimodules(limits, true).require_exhaustive("subtractive subsemimodules")?;
    subs.into_iter()
        .map(|kernel| {
            let (l, emb) = m.restrict(&kernel)?;
            let (n, proj) = m.quotient(&m.bourne(&kernel))?;
            let f = LinearMap::from_images(emb);
            let g = LinearMap::from_images(proj);
            let spec = SequenceSpec::short(l.clone(), m.clone(), n.clone(), f.clone(), g.clone());
            if !homs::classify_sequence(&spec, limits)?.exact {
                return Err(Error::Crosscheck(format!("0 → {kernel} → M → M/{kernel} → 0 is not exact")));
            }
            Ok(ShortExact { kernel, l, n, f, g })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// The subtractive `L` naming the sequence.
    pub kernel: ElemSet,
    pub reason: String,
    /// The map with no lift / extension, when that is the failure.
    pub map: Option<LinearMap>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub holds: bool,
    pub failure: Option<Failure>,
}

impl Decision {
    fn pass() -> Self {
        Decision { holds: true, failure: None }
    }

    fn fail(kernel: &ElemSet, reason: impl Into<String>, map: Option<LinearMap>) -> Self {
        Decision { holds: false, failure: Some(Failure { kernel: kernel.clone(), reason: reason.into(), map }) }
    }
}

/// Context for one fixed `M`: its short exact sequences and a Hom cache.
pub struct Relative<'a> {
    pub m: &'a Semimodule,
    pub sequences: Vec<ShortExact>,
    limits: Limits,
}

impl<'a> Relative<'a> {
    pub fn new(m: &'a Semimodule, limits: &Limits) -> Result<Self> {
        Ok(Relative { m, sequences: short_exact_sequences(m, limits)?, limits: *limits })
    }

    fn hom(&self, x: &Semimodule, y: &Semimodule) -> Result<HomMonoid> {
        HomMonoid::new(x, y, &self.limits)
    }

    /// Lifting against every normal surjection `M → M/L`.
    pub fn is_k_projective(&self, p: &Semimodule) -> Result<Decision> {
        let hm = self.hom(p, self.m)?;
        for seq in &self.sequences {
            let hn = self.hom(p, &seq.n)?;
            let image = hm.post_compose(&seq.g, &hn);
            let mut hit = vec![false; hn.len()];
            for i in image {
                hit[i] = true;
            }
            if let Some(miss) = hit.iter().position(|h| !h) {
                return Ok(Decision::fail(&seq.kernel, "no lift through M → M/L", Some(hn.maps[miss].clone())));
            }
        }
        Ok(Decision::pass())
    }

    /// `0 → Hom(P,L) → Hom(P,M) → Hom(P,N) → 0` exact for every sequence.
    pub fn is_e_projective(&self, p: &Semimodule) -> Result<Decision> {
        let hm = self.hom(p, self.m)?;
        for seq in &self.sequences {
            let hl = self.hom(p, &seq.l)?;
            let hn = self.hom(p, &seq.n)?;
            let pf = hl.post_compose(&seq.f, &hm);
            let pg = hm.post_compose(&seq.g, &hn);
            let flags = classify_monoid_short(&hl.monoid, &hm.monoid, &hn.monoid, &pf, &pg);
            if let Some(pos) = flags.iter().position(|j| !j.exact) {
                return Ok(Decision::fail(&seq.kernel, format!("Hom(P,-) sequence not exact at position {pos}"), None));
            }
        }
        Ok(Decision::pass())
    }

    /// Extension along every normal injection `L → M`.
    pub fn is_i_injective(&self, j: &Semimodule) -> Result<Decision> {
        let hm = self.hom(self.m, j)?;
        for seq in &self.sequences {
            let hl = self.hom(&seq.l, j)?;
            let image = hm.pre_compose(&seq.f, &hl);
            let mut hit = vec![false; hl.len()];
            for i in image {
                hit[i] = true;
            }
            if let Some(miss) = hit.iter().position(|h| !h) {
                return Ok(Decision::fail(&seq.kernel, "no extension along L → M", Some(hl.maps[miss].clone())));
            }
        }
        Ok(Decision::pass())
    }

    /// `0 → Hom(N,J) → Hom(M,J) → Hom(L,J) → 0` exact for every sequence.
    pub fn is_e_injective(&self, j: &Semimodule) -> Result<Decision> {
        let hm = self.hom(self.m, j)?;
        for seq in &self.sequences {
            let hn = self.hom(&seq.n, j)?;
            let hl = self.hom(&seq.l, j)?;
            let gj = hn.pre_compose(&seq.g, &hm);
            let fj = hm.pre_compose(&seq.f, &hl);
            let flags = classify_monoid_short(&hn.monoid, &hm.monoid, &hl.monoid, &gj, &fj);
            if let Some(pos) = flags.iter().position(|j| !j.exact) {
                return Ok(Decision::fail(&seq.kernel, format!("Hom(-,J) sequence not exact at position {pos}"), None));
            }
        }
        Ok(Decision::pass())
    }
}

pub fn is_m_k_projective(p: &Semimodule, m: &Semimodule, limits: &Limits) -> Result<Decision> {
    Relative::new(m, limits)?.is_k_projective(p)
}

pub fn is_m_e_projective(p: &Semimodule, m: &Semimodule, limits: &Limits) -> Result<Decision> {
    Relative::new(m, limits)?.is_e_projective(p)
}

pub fn is_m_i_injective(j: &Semimodule, m: &Semimodule, limits: &Limits) -> Result<Decision> {
    Relative::new(m, limits)?.is_i_injective(j)
}

pub fn is_m_e_injective(j: &Semimodule, m: &Semimodule, limits: &Limits) -> Result<Decision> {
    Relative::new(m, limits)?.is_e_injective(j)
}

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub name: String,
    pub module: Semimodule,
}

/// Stand-in for "every semimodule": `S`, its left ideals, its quotients by
/// left congruences, and binary direct sums of these, one per isomorphism
/// class.
#[derive(Debug, Clone)]
pub struct Family {
    pub members: Vec<FamilyMember>,
    /// False when a size bound dropped some member.
    pub complete: bool,
}

impl Family {
    pub fn base_len(&self) -> usize {
        self.members.iter().take_while(|m| !m.name.contains('⊕')).count()
    }
}

fn is_new(members: &[FamilyMember], cand: &Semimodule, limits: &Limits) -> Result<bool> {
    for m in members {
        if m.module.order() == cand.order() && !homs::find_isomorphism(&m.module, cand, limits)?.is_absent() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn bounded_family(s: &Arc<Semiring>, limits: &Limits) -> Result<Family> {
    let r = Semimodule::regular(s.clone());
    let ideals = r.enumerate_subsemimodules(limits, false).require_exhaustive("left ideals")?;
    let congs = r.enumerate_congruences(limits).require_exhaustive("left congruences")?;
    let mut members = vec![FamilyMember { name: "S".into(), module: r.clone() }];
    let mut complete = true;
    // false when the family cap dropped the candidate
    let push = |members: &mut Vec<FamilyMember>, name: String, module: Semimodule| -> Result<bool> {
        if members.len() >= limits.max_family {
            return Ok(false);
        }
        if is_new(members, &module, limits)? {
            members.push(FamilyMember { name, module });
        }
        Ok(true)
    };
    for ideal in &ideals {
        complete &= push(&mut members, format!("ideal{ideal}"), r.restrict(ideal)?.0)?;
    }
    for c in &congs {
        complete &= push(&mut members, format!("S/{c}"), r.quotient(c)?.0)?;
    }
    let base = members.len();
    for a in 0..base {
        for b in a..base {
            let (x, y) = (&members[a].module, &members[b].module);
            if x.is_zero_module() || y.is_zero_module() {
                continue;
            }
            if x.order() * y.order() > limits.max_carrier {
                complete = false;
                continue;
            }
            let sum = Semimodule::direct_sum(x, y)?;
            let name = format!("{}⊕{}", members[a].name, members[b].name);
            complete &= push(&mut members, name, sum)?;
        }
    }
    Ok(Family { members, complete })
}

/// For `S = I ⊕ N` and `h : S → J`, rebuilds `h = g∘π + h₁` with
/// `h₁(s) = (s·e_N)·h(1)`, where `g = h|_I`, `π` projects onto `I` and
/// `e_N` is the `N`-component of `1`. Returns the first `h` where this fails.
pub fn split_extension_check(
    s: &Semimodule,
    ideal: &ElemSet,
    complement: &ElemSet,
    j: &Semimodule,
    limits: &Limits,
) -> Result<Option<LinearMap>> {
    let base = s.base().clone();
    let projections = crate::summands::projections(s, &[ideal.clone(), complement.clone()])
        .map_err(|w| Error::HypothesisUnmet(format!("{ideal} is not a direct summand: {w:?}")))?;
    let pi = &projections[0];
    let e_n = projections[1].apply(base.one());
    for h in homs::enumerate_homs(s, j, limits)?.require_exhaustive("Hom(S, J)")? {
        let j0 = h.apply(base.one());
        let h1: Vec<usize> = (0..s.order()).map(|x| j.act(base.mul(x, e_n), j0)).collect();
        let rebuilt: Vec<usize> = (0..s.order()).map(|x| j.add(h.apply(pi.apply(x)), h1[x])).collect();
        let h1_ok = homs::linearity_violation(s, j, &h1).is_none() && ideal.iter().all(|x| h1[x] == j.zero());
        if !h1_ok || rebuilt != h.images() {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Index of every subtractive kernel among the sequences.
pub fn sequence_index(seqs: &[ShortExact]) -> HashMap<ElemSet, usize> {
    seqs.iter().enumerate().map(|(i, s)| (s.kernel.clone(), i)).collect()
}
