//! Per-instance evaluation of the chain items and the records built from them.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Semimodule, Semiring};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::homs::{self, LinearMap, SequenceSpec};
use crate::limits::{Limits, Search};
use crate::projinj::{self, Decision, Family, Relative, ShortExact};
use crate::semisimple::{self, SimpleKind};
use crate::summands::{self, SummandPoset};

use super::enumerate::canonical_form;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    /// A hard claim (implication, lemma, pin) is violated.
    Fails,
    /// The two sides of a claimed equivalence disagree.
    Discrepancy,
    Unknown,
    /// The claim's hypothesis does not hold on this instance.
    Vacuous,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub instance: String,
    pub claim_id: String,
    pub verdict: Verdict,
    pub witness: Value,
    pub exhaustive: bool,
}

/// An item value (`None` when a limit prevented a decision) with its
/// certificate. `exhaustive` is false when the bounded family was truncated.
#[derive(Debug, Clone)]
pub struct Item {
    pub value: Option<bool>,
    pub cert: Value,
    pub exhaustive: bool,
}

impl Item {
    fn new(value: bool, cert: Value) -> Self {
        Item { value: Some(value), cert, exhaustive: true }
    }

    fn unknown(reason: impl Into<String>) -> Self {
        Item { value: None, cert: json!({ "unknown": reason.into() }), exhaustive: false }
    }

    fn over_family(mut self, complete: bool) -> Self {
        self.exhaustive &= complete;
        self
    }

    fn and(&self, other: &Item) -> Item {
        let value = match (self.value, other.value) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        };
        Item { value, cert: json!({ "conjuncts": [self.cert, other.cert] }), exhaustive: self.exhaustive && other.exhaustive }
    }
}

fn limit_or(e: Error) -> Result<String> {
    match e {
        Error::LimitExceeded(msg) => Ok(msg),
        other => Err(other),
    }
}

fn search_item(s: Result<Search<LinearMap>>) -> Result<Option<Option<LinearMap>>> {
    match s {
        Ok(Search::Present(w)) => Ok(Some(Some(w))),
        Ok(Search::Absent) => Ok(Some(None)),
        Ok(Search::Unknown) => Ok(None),
        Err(e) => limit_or(e).map(|_| None),
    }
}

/// Everything the claims are evaluated from.
pub struct Facts {
    pub regular: Semimodule,
    pub commutative: bool,
    pub ideals: Vec<ElemSet>,
    pub subtractive: Vec<ElemSet>,
    pub poset: SummandPoset,
    pub sequences: Vec<ShortExact>,
    pub family: Family,
    /// Subtractive left ideals are summands.
    pub c1: Item,
    pub c2: Item,
    pub c2p: Item,
    pub ep: Item,
    pub kp: Item,
    pub ei: Item,
    pub ii: Item,
    /// `S/I` is k-projective for every subtractive `I`.
    pub quotients_kp: Item,
    pub right_split: Item,
    /// Every subtractive `I` is i-injective.
    pub ideals_ii: Item,
    pub left_split: Item,
    pub k_noetherian: Item,
    pub acc: Item,
    pub dcc: Item,
    pub decomposition: Item,
    pub iss: Item,
    pub css: Item,
    pub ideals_summands: Item,
    /// Members where e-projective holds and k-projective fails.
    pub eproj_not_kproj: Vec<String>,
    pub undecided_members: usize,
}

struct MemberOutcome {
    name: String,
    kp: std::result::Result<Decision, String>,
    ep: std::result::Result<Decision, String>,
    ii: std::result::Result<Decision, String>,
    ei: std::result::Result<Decision, String>,
}

fn decide(r: Result<Decision>) -> Result<std::result::Result<Decision, String>> {
    match r {
        Ok(d) => Ok(Ok(d)),
        Err(e) => limit_or(e).map(Err),
    }
}

fn family_item(members: &[MemberOutcome], pick: impl Fn(&MemberOutcome) -> &std::result::Result<Decision, String>) -> Item {
    let mut unknown = None;
    for m in members {
        match pick(m) {
            Ok(d) if !d.holds => return Item::new(false, json!({ "member": m.name, "failure": d.failure })),
            Ok(_) => {}
            Err(msg) => unknown = unknown.or(Some(msg.clone())),
        }
    }
    match unknown {
        Some(msg) => Item::unknown(msg),
        None => Item::new(true, json!({ "members": members.len() })),
    }
}

fn per_sequence(
    seqs: &[ShortExact],
    mut check: impl FnMut(&ShortExact) -> Result<std::result::Result<(bool, Value), String>>,
) -> Result<Item> {
    let mut certs = Vec::new();
    for seq in seqs {
        match check(seq)? {
            Ok((true, c)) => certs.push(c),
            Ok((false, c)) => return Ok(Item::new(false, c)),
            Err(msg) => return Ok(Item::unknown(msg)),
        }
    }
    Ok(Item::new(true, Value::Array(certs)))
}

pub fn gather(s: &Arc<Semiring>, limits: &Limits) -> Result<Facts> {
    let regular = Semimodule::regular(s.clone());
    let m = &regular;
    let ideals = m.enumerate_subsemimodules(limits, false).require_exhaustive("left ideals")?;
    let subtractive: Vec<ElemSet> = ideals.iter().filter(|i| m.is_subtractive(i)).cloned().collect();
    let poset = summands::summand_poset(m, limits)?;
    let cond = semisimple::condition_profile(m, limits)?;
    let semis = semisimple::semisimplicity_profile(m, limits)?;
    let family = projinj::bounded_family(s, limits)?;
    let rel = Relative::new(m, limits)?;

    let mut members = Vec::new();
    for fm in &family.members {
        let p = &fm.module;
        members.push(MemberOutcome {
            name: fm.name.clone(),
            kp: decide(rel.is_k_projective(p))?,
            ep: decide(rel.is_e_projective(p))?,
            ii: decide(rel.is_i_injective(p))?,
            ei: decide(rel.is_e_injective(p))?,
        });
    }
    let complete = family.complete;
    let ep = family_item(&members, |m| &m.ep).over_family(complete);
    let kp = family_item(&members, |m| &m.kp).over_family(complete);
    let ei = family_item(&members, |m| &m.ei).over_family(complete);
    let ii = family_item(&members, |m| &m.ii).over_family(complete);
    let eproj_not_kproj = members
        .iter()
        .filter(|m| matches!((&m.ep, &m.kp), (Ok(e), Ok(k)) if e.holds && !k.holds))
        .map(|m| m.name.clone())
        .collect();
    let undecided_members =
        members.iter().filter(|m| m.kp.is_err() || m.ep.is_err() || m.ii.is_err() || m.ei.is_err()).count();

    let quotients_kp = per_sequence(&rel.sequences, |seq| {
        Ok(decide(rel.is_k_projective(&seq.n))?.map(|d| (d.holds, json!({ "kernel": seq.kernel, "failure": d.failure }))))
    })?;
    let ideals_ii = per_sequence(&rel.sequences, |seq| {
        Ok(decide(rel.is_i_injective(&seq.l))?.map(|d| (d.holds, json!({ "kernel": seq.kernel, "failure": d.failure }))))
    })?;
    let right_split = per_sequence(&rel.sequences, |seq| {
        Ok(match search_item(homs::section(m, &seq.n, &seq.g, limits))? {
            Some(w) => Ok((w.is_some(), json!({ "kernel": seq.kernel, "section": w }))),
            None => Err(format!("section search for {} undecided", seq.kernel)),
        })
    })?;
    let left_split = per_sequence(&rel.sequences, |seq| {
        Ok(match search_item(homs::retraction(&seq.l, m, &seq.f, limits))? {
            Some(w) => {
                let endo = w.as_ref().map(|r| seq.f.after(r));
                Ok((w.is_some(), json!({ "kernel": seq.kernel, "retraction": w, "as_endomorphism": endo })))
            }
            None => Err(format!("retraction search for {} undecided", seq.kernel)),
        })
    })?;

    let summand_list: Vec<&ElemSet> = poset.nodes.iter().map(|n| &n.members).collect();
    let idempotents: Vec<&LinearMap> = poset.nodes.iter().map(|n| &n.idempotent).collect();
    let c1 = Item::new(
        cond.c1,
        json!({
            "not_summand": cond.c1_witness,
            "subtractive": cond.subtractive,
            "summands": summand_list,
            "complemented_idempotents": idempotents,
        }),
    );
    let c2 = Item::new(cond.c2, json!({ "failing_pair": cond.c2_witness, "pairs": cond.pairs.len() }));
    let c2p = Item::new(cond.c2_prime, json!({ "failing_pair": cond.c2_prime_witness, "pairs": cond.pairs.len() }));
    let chain = json!({ "longest_summand_chain": poset.longest_chain });
    let k_noetherian = Item::new(true, json!({ "subtractive_ideals": subtractive.len() }));
    let acc = Item::new(true, chain.clone());
    let dcc = Item::new(true, chain);
    let decomposition = match summands::irreducible_decomposition(m, limits) {
        Ok(d) => Item::new(true, json!({ "parts": d.parts })),
        Err(e) => Item::unknown(limit_or(e)?),
    };
    let iss = Item::new(semis.ideal_semisimple, json!({ "parts": semis.ideal_parts }));
    let css = Item::new(semis.congruence_semisimple, json!({ "parts": semis.congruence_parts }));
    let first_non_summand = ideals.iter().find(|i| !poset.contains(i));
    let ideals_summands = Item::new(first_non_summand.is_none(), json!({ "not_summand": first_non_summand }));

    let sequences = rel.sequences;
    Ok(Facts {
        commutative: s.is_commutative(),
        ideals,
        subtractive,
        poset,
        sequences,
        family,
        c1,
        c2,
        c2p,
        ep,
        kp,
        ei,
        ii,
        quotients_kp,
        right_split,
        ideals_ii,
        left_split,
        k_noetherian,
        acc,
        dcc,
        decomposition,
        iss,
        css,
        ideals_summands,
        eproj_not_kproj,
        undecided_members,
        regular,
    })
}

pub struct Recorder {
    pub instance: String,
    pub records: Vec<Record>,
}

fn side(label: &str, item: &Item) -> Value {
    json!({ "item": label, "value": item.value, "certificate": item.cert })
}

impl Recorder {
    pub fn new(instance: &str) -> Self {
        Recorder { instance: instance.to_string(), records: Vec::new() }
    }

    pub fn push(&mut self, claim_id: impl Into<String>, verdict: Verdict, witness: Value, exhaustive: bool) {
        self.records.push(Record { instance: self.instance.clone(), claim_id: claim_id.into(), verdict, witness, exhaustive });
    }

    /// A hard `a ⟹ b`.
    pub fn implication(&mut self, id: &str, (la, a): (&str, &Item), (lb, b): (&str, &Item)) {
        let verdict = match (a.value, b.value) {
            (Some(true), Some(false)) => Verdict::Fails,
            (Some(false), _) | (_, Some(true)) => Verdict::Holds,
            _ => Verdict::Unknown,
        };
        self.two_sided(id, verdict, (la, a), (lb, b));
    }

    /// `a ⟺ b`; a mismatch is a failure only when `hard`.
    pub fn equivalence(&mut self, id: &str, (la, a): (&str, &Item), (lb, b): (&str, &Item), hard: bool) {
        let verdict = match (a.value, b.value) {
            (Some(x), Some(y)) if x == y => Verdict::Holds,
            (Some(_), Some(_)) if hard => Verdict::Fails,
            (Some(_), Some(_)) => Verdict::Discrepancy,
            _ => Verdict::Unknown,
        };
        self.two_sided(id, verdict, (la, a), (lb, b));
    }

    fn two_sided(&mut self, id: &str, verdict: Verdict, (la, a): (&str, &Item), (lb, b): (&str, &Item)) {
        let witness = if verdict == Verdict::Holds {
            json!({ la: a.value, lb: b.value })
        } else {
            json!({ "lhs": side(la, a), "rhs": side(lb, b) })
        };
        self.push(id, verdict, witness, a.exhaustive && b.exhaustive);
    }

    /// A hard single-fact claim.
    pub fn check(&mut self, id: &str, ok: bool, witness: Value) {
        self.push(id, if ok { Verdict::Holds } else { Verdict::Fails }, witness, true);
    }

    /// A claim asserted by a worked example, where a mismatch is reported
    /// rather than enforced.
    pub fn example(&mut self, id: &str, ok: bool, witness: Value) {
        self.push(id, if ok { Verdict::Holds } else { Verdict::Discrepancy }, witness, true);
    }

    pub fn engine_error(&mut self, e: Error) {
        let verdict = if matches!(e, Error::LimitExceeded(_)) { Verdict::Unknown } else { Verdict::Fails };
        self.push("engine", verdict, json!({ "error": e.to_string() }), false);
    }
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}({k})")).collect()
}

fn chain(rec: &mut Recorder, id: &str, items: &[&Item], steps: &[(usize, usize, bool)]) {
    let names = labels("", items.len());
    for &(a, b, both) in steps {
        let la = &names[a - 1];
        let lb = &names[b - 1];
        if both {
            rec.equivalence(&format!("{id}.{a}<=>{b}"), (la, items[a - 1]), (lb, items[b - 1]), true);
        } else {
            rec.implication(&format!("{id}.{a}=>{b}"), (la, items[a - 1]), (lb, items[b - 1]));
        }
    }
}

/// Every listed item against item `anchor`, recorded as audited
/// equivalences `(k)<=>(anchor)` or `(anchor)<=>(k)`.
fn audited(rec: &mut Recorder, id: &str, items: &[(&str, &Item)], anchor: usize, anchor_first: bool) {
    let (la, a) = items.iter().find(|(l, _)| *l == format!("({anchor})")).copied().expect("anchor item");
    for &(lk, k) in items {
        if lk == la {
            continue;
        }
        if anchor_first {
            rec.equivalence(&format!("{id}.{la}<=>{lk}"), (la, a), (lk, k), false);
        } else {
            rec.equivalence(&format!("{id}.{lk}<=>{la}"), (lk, k), (la, a), false);
        }
    }
}

fn chain_claims(rec: &mut Recorder, f: &Facts) {
    // each item implies its successor; ACC and DCC coincide
    chain(
        rec,
        "prop-proj-impl",
        &[&f.c1, &f.ep, &f.kp, &f.quotients_kp, &f.right_split, &f.acc, &f.dcc, &f.decomposition],
        &[(1, 2, false), (2, 3, false), (3, 4, false), (4, 5, false), (5, 6, false), (6, 7, true), (7, 8, false)],
    );
    chain(
        rec,
        "prop-sum-einj",
        &[&f.c1, &f.ei, &f.ii, &f.ideals_ii, &f.left_split, &f.k_noetherian, &f.acc, &f.dcc, &f.decomposition],
        &[(1, 2, false), (2, 3, false), (3, 4, false), (4, 5, false), (5, 6, false), (6, 7, false), (7, 8, true), (7, 9, false)],
    );
    rec.implication("lem-sumproj", ("subtractive-summands", &f.c1), ("all-e-projective", &f.ep));
    rec.check(
        "lem-eproj-kproj",
        f.eproj_not_kproj.is_empty(),
        json!({ "violating_members": f.eproj_not_kproj, "undecided_members": f.undecided_members }),
    );
}

fn split_extension_claim(rec: &mut Recorder, f: &Facts, limits: &Limits) -> Result<()> {
    if f.c1.value != Some(true) {
        rec.push("prop-sum-einj.extension", Verdict::Vacuous, json!({ "reason": "a subtractive left ideal is not a summand" }), true);
        return Ok(());
    }
    let base = f.family.base_len();
    let mut checked = 0;
    for seq in &f.sequences {
        let node = f.poset.find(&seq.kernel).ok_or_else(|| Error::Crosscheck("C1 holds but summand missing".into()))?;
        for j in &f.family.members[..base] {
            match projinj::split_extension_check(&f.regular, &seq.kernel, &node.complement, &j.module, limits) {
                Ok(None) => checked += 1,
                Ok(Some(h)) => {
                    rec.check(
                        "prop-sum-einj.extension",
                        false,
                        json!({ "ideal": seq.kernel, "complement": node.complement, "target": j.name, "h": h }),
                    );
                    return Ok(());
                }
                Err(e) => {
                    let msg = limit_or(e)?;
                    rec.push("prop-sum-einj.extension", Verdict::Unknown, json!({ "unknown": msg }), false);
                    return Ok(());
                }
            }
        }
    }
    rec.check("prop-sum-einj.extension", true, json!({ "checked": checked }));
    Ok(())
}

fn theorem_claims(rec: &mut Recorder, f: &Facts) {
    let left_subtractive = f.ideals.len() == f.subtractive.len();
    if left_subtractive {
        let items =
            [("(1)", &f.ep), ("(2)", &f.kp), ("(3)", &f.right_split), ("(4)", &f.ideals_summands), ("(5)", &f.iss)];
        audited(rec, "thm-idsske", &items, 5, false);
    } else {
        let extra: Vec<&ElemSet> = f.ideals.iter().filter(|i| !f.subtractive.contains(i)).collect();
        rec.push("thm-idsske", Verdict::Vacuous, json!({ "non_subtractive_ideals": extra }), true);
    }

    if !f.commutative {
        for id in ["thm-idssc1", "thm-congc2", "thm-isscomm", "thm-csscomm", "thm-comidss", "thm-comcss", "lem-comsum"] {
            rec.push(id, Verdict::Vacuous, json!({ "reason": "not commutative" }), true);
        }
        return;
    }

    for (id, cond, ss) in [("thm-idssc1", &f.c2, &f.iss), ("thm-congc2", &f.c2p, &f.css)] {
        let with = |i: &Item| i.and(cond);
        let lhs = [
            with(&f.c1),
            with(&f.ep),
            with(&f.kp),
            with(&f.quotients_kp),
            with(&f.right_split),
            with(&f.acc),
            with(&f.dcc),
            with(&f.decomposition),
        ];
        let names = labels("", 9);
        let mut items: Vec<(&str, &Item)> = lhs.iter().enumerate().map(|(k, i)| (names[k].as_str(), i)).collect();
        items.push(("(9)", ss));
        audited(rec, id, &items, 9, false);
    }

    for (id, cond, ss) in [("thm-isscomm", &f.c2, &f.iss), ("thm-csscomm", &f.c2p, &f.css)] {
        if cond.value != Some(true) {
            rec.push(id, Verdict::Vacuous, json!({ "reason": "hypothesis fails", "condition": cond.cert }), true);
            continue;
        }
        let items = [
            ("(1)", &f.c1),
            ("(2)", &f.ei),
            ("(3)", &f.ii),
            ("(4)", &f.ideals_ii),
            ("(5)", &f.left_split),
            ("(6)", &f.k_noetherian),
            ("(7)", &f.acc),
            ("(8)", &f.dcc),
            ("(9)", &f.decomposition),
            ("(10)", ss),
        ];
        audited(rec, id, &items, 1, true);
    }

    for (id, cond, ss) in [("thm-comidss", &f.c2, &f.iss), ("thm-comcss", &f.c2p, &f.css)] {
        if cond.value != Some(true) {
            rec.push(id, Verdict::Vacuous, json!({ "reason": "hypothesis fails", "condition": cond.cert }), true);
            continue;
        }
        // parenthesised alternatives are audited as separate readings a/b
        let items = [
            ("(1)", &f.c1),
            ("(2a)", &f.ep),
            ("(2b)", &f.kp),
            ("(3a)", &f.ei),
            ("(3b)", &f.ii),
            ("(4a)", &f.quotients_kp),
            ("(4b)", &f.ideals_ii),
            ("(5a)", &f.right_split),
            ("(5b)", &f.left_split),
            ("(6)", &f.k_noetherian),
            ("(7)", &f.acc),
            ("(8)", &f.dcc),
            ("(9)", &f.decomposition),
            ("(10)", ss),
        ];
        audited(rec, id, &items, 1, true);
    }
}

fn comsum_claims(rec: &mut Recorder, s: &Semiring, f: &Facts, limits: &Limits) -> Result<()> {
    if !f.commutative {
        return Ok(());
    }
    for (suffix, kind, ss) in [("ideal", SimpleKind::Ideal, &f.iss), ("congruence", SimpleKind::Congruence, &f.css)] {
        let id = format!("lem-comsum.{suffix}");
        if ss.value != Some(true) {
            rec.push(id, Verdict::Vacuous, json!({ "reason": "not semisimple" }), true);
            continue;
        }
        let report = semisimple::comsum_check(s, kind, limits)?;
        rec.check(&id, report.holds, serde_json::to_value(&report).expect("serializable"));
    }
    Ok(())
}

/// `N = L ⊕ (K ∩ N)` whenever `M = L ⊕ K` and `L ⊆ N` with `N` subtractive.
fn intersection_violation(m: &Semimodule, poset: &SummandPoset, subtractive: &[ElemSet]) -> Option<Value> {
    for node in &poset.nodes {
        let (l, k) = (&node.members, &node.complement);
        for n in subtractive.iter().filter(|n| l.is_subset(n)) {
            let kn = k.intersection(n);
            for x in n.iter() {
                if !l.iter().any(|a| kn.iter().any(|b| m.add(a, b) == x)) {
                    return Some(json!({ "summand": l, "complement": k, "subtractive": n, "element": x }));
                }
            }
        }
    }
    None
}

/// For every `L ≤ M` and congruence `ρ`, the sequence `0 → L → M → M/ρ → 0`
/// is exact iff `L = Ker g` with `M/L → M/ρ` bijective, iff `g` is k-normal
/// with kernel `L`.
fn quotient_sequence_violation(m: &Semimodule, limits: &Limits) -> Result<(usize, Option<Value>)> {
    let subs = m.enumerate_subsemimodules(limits, false).require_exhaustive("subsemimodules")?;
    let congs = m.enumerate_congruences(limits).require_exhaustive("congruences")?;
    let mut checked = 0;
    for l in &subs {
        let (lm, emb) = m.restrict(l)?;
        let f = LinearMap::from_images(emb);
        for rho in &congs {
            let (n, labels) = m.quotient(rho)?;
            let g = LinearMap::from_images(labels);
            let spec = SequenceSpec::short(lm.clone(), m.clone(), n.clone(), f.clone(), g.clone());
            let exact = match homs::classify_sequence(&spec, limits) {
                Ok(r) => r.exact,
                Err(Error::Crosscheck(msg)) => {
                    return Ok((checked, Some(json!({ "sub": l, "congruence": rho, "crosscheck": msg }))));
                }
                Err(e) => return Err(e),
            };
            let (kernel, _, _) = homs::kernel_image(m, &n, &g);
            let by_iso = kernel == *l && *rho == m.bourne(l);
            let by_maps = f.is_injective()
                && kernel == *l
                && g.is_surjective(&n)
                && homs::normality_profile(m, &n, &g).k_normal;
            checked += 1;
            if exact != by_iso || by_iso != by_maps {
                let w = json!({ "sub": l, "congruence": rho, "exact": exact, "isomorphisms": by_iso, "maps": by_maps });
                return Ok((checked, Some(w)));
            }
        }
    }
    Ok((checked, None))
}

#[derive(Default)]
struct LemmaTally {
    checked: usize,
    first: Option<Value>,
}

impl LemmaTally {
    fn note(&mut self, module: &str, violation: Option<Value>) {
        self.checked += 1;
        if self.first.is_none() {
            if let Some(v) = violation {
                self.first = Some(json!({ "module": module, "violation": v }));
            }
        }
    }

    fn emit(self, rec: &mut Recorder, id: &str) {
        let ok = self.first.is_none();
        rec.check(id, ok, json!({ "modules": self.checked, "first_violation": self.first }));
    }
}

/// Module-level lemmas on `S`, its left ideals and its quotients.
fn lemma_claims(rec: &mut Recorder, f: &Facts, limits: &Limits) -> Result<()> {
    let mut cong_char = LemmaTally::default();
    let mut ideal_char = LemmaTally::default();
    let mut summand_char = LemmaTally::default();
    let mut chains = LemmaTally::default();
    let mut intersect = LemmaTally::default();
    let mut sequences = LemmaTally::default();
    let mut sequence_count = 0;
    for member in &f.family.members[..f.family.base_len()] {
        let (name, m) = (member.name.as_str(), &member.module);
        if !m.is_zero_module() {
            if let Some(tf) = semisimple::test_family(m, limits) {
                let (out_injective, in_surjective) = semisimple::map_characterizations(m, &tf, limits)?;
                let cs = semisimple::is_congruence_simple(m);
                let is = semisimple::is_ideal_simple(m);
                cong_char.note(name, (out_injective != cs).then(|| json!({ "congruence_simple": cs, "maps_out_injective": out_injective })));
                ideal_char.note(name, (in_surjective != is).then(|| json!({ "ideal_simple": is, "maps_in_surjective": in_surjective })));
            }
        }
        let poset = match summands::summand_poset(m, limits) {
            Ok(p) => p,
            Err(Error::Crosscheck(msg)) => {
                summand_char.note(name, Some(json!(msg)));
                continue;
            }
            Err(e) => return Err(e),
        };
        summand_char.note(name, None);
        chains.note(name, (poset.longest_chain > poset.nodes.len()).then(|| json!({ "chain": poset.longest_chain })));
        let subtractive = m.enumerate_subsemimodules(limits, true).require_exhaustive("subtractive subsemimodules")?;
        intersect.note(name, intersection_violation(m, &poset, &subtractive));
        let (n, violation) = quotient_sequence_violation(m, limits)?;
        sequence_count += n;
        sequences.note(name, violation);
    }
    cong_char.emit(rec, "lem-cong-s-char");
    ideal_char.emit(rec, "lem-id-ss-char");
    summand_char.emit(rec, "lem-summand-char");
    chains.emit(rec, "lem-dcc-acc");
    intersect.emit(rec, "lem-lemint");
    rec.push("cor-ml.sequences", Verdict::Info, json!({ "sequences": sequence_count }), true);
    sequences.emit(rec, "cor-ml");
    Ok(())
}

pub fn instance_info(rec: &mut Recorder, s: &Semiring, family: Option<&Family>) {
    let canonical = (s.order() <= 8).then(|| {
        let (add, mul) = canonical_form(s);
        json!({ "add": add, "mul": mul })
    });
    let names: Option<Vec<&str>> = family.map(|f| f.members.iter().map(|m| m.name.as_str()).collect());
    rec.push(
        "instance",
        Verdict::Info,
        json!({
            "order": s.order(),
            "zero": s.zero(),
            "one": s.one(),
            "add": s.add_table(),
            "mul": s.mul_table(),
            "commutative": s.is_commutative(),
            "canonical": canonical,
            "family": names,
            "family_complete": family.map(|f| f.complete),
            "normal_maps": "quotients by Bourne congruences of subtractive subsemimodules; inclusions of subtractive subsemimodules",
        }),
        true,
    );
}

/// All claims for one semiring; `extra` appends instance-specific pins.
pub fn audit_with(
    name: &str,
    s: &Arc<Semiring>,
    limits: &Limits,
    extra: impl FnOnce(&mut Recorder, &Facts) -> Result<()>,
) -> Vec<Record> {
    let mut rec = Recorder::new(name);
    let run = |rec: &mut Recorder| -> Result<()> {
        let facts = gather(s, limits)?;
        instance_info(rec, s, Some(&facts.family));
        chain_claims(rec, &facts);
        split_extension_claim(rec, &facts, limits)?;
        theorem_claims(rec, &facts);
        comsum_claims(rec, s, &facts, limits)?;
        lemma_claims(rec, &facts, limits)?;
        extra(rec, &facts)
    };
    if let Err(e) = run(&mut rec) {
        if rec.records.is_empty() {
            instance_info(&mut rec, s, None);
        }
        rec.engine_error(e);
    }
    rec.records
}

pub fn audit_instance(name: &str, s: &Arc<Semiring>, limits: &Limits) -> Vec<Record> {
    audit_with(name, s, limits, |_, _| Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn find<'a>(records: &'a [Record], id: &str) -> &'a Record {
        records.iter().find(|r| r.claim_id == id).unwrap_or_else(|| panic!("no record {id}"))
    }

    #[test]
    fn b31_separates_left_splitting_from_summands() {
        let s = Arc::new(catalog::make_b(3, 1).unwrap());
        let records = audit_instance("B(3,1)", &s, &Limits::default());
        assert!(records.iter().all(|r| r.verdict != Verdict::Fails), "{records:#?}");
        let r = find(&records, "thm-isscomm.(1)<=>(5)");
        assert_eq!(r.verdict, Verdict::Discrepancy);
        let w = &r.witness;
        assert_eq!(w["lhs"]["value"], json!(false));
        assert_eq!(w["lhs"]["certificate"]["not_summand"], json!([0, 2]));
        assert_eq!(w["lhs"]["certificate"]["summands"], json!([[0], [0, 1, 2]]));
        let retr = w["rhs"]["certificate"].as_array().unwrap();
        let i = retr.iter().find(|c| c["kernel"] == json!([0, 2])).unwrap();
        assert_eq!(i["as_endomorphism"], json!([0, 2, 2]));
        assert_eq!(find(&records, "thm-idssc1.(8)<=>(9)").verdict, Verdict::Discrepancy);
        assert_eq!(find(&records, "thm-idssc1.(1)<=>(9)").verdict, Verdict::Holds);
    }

    #[test]
    fn boolean_square_is_green_everywhere() {
        let b = catalog::boolean();
        let s = Arc::new(catalog::make_product(&[b.clone(), b]).unwrap());
        let records = audit_instance("BxB", &s, &Limits::default());
        for r in &records {
            assert!(matches!(r.verdict, Verdict::Holds | Verdict::Info), "{r:?}");
        }
    }

    #[test]
    fn implication_verdicts() {
        let t = Item::new(true, Value::Null);
        let f = Item::new(false, Value::Null);
        let u = Item::unknown("x");
        let mut rec = Recorder::new("x");
        rec.implication("a", ("p", &t), ("q", &f));
        rec.implication("b", ("p", &f), ("q", &u));
        rec.implication("c", ("p", &u), ("q", &f));
        rec.equivalence("d", ("p", &t), ("q", &f), false);
        let v: Vec<Verdict> = rec.records.iter().map(|r| r.verdict).collect();
        assert_eq!(v, vec![Verdict::Fails, Verdict::Holds, Verdict::Unknown, Verdict::Discrepancy]);
    }
}
