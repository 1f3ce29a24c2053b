//! Named instances with pinned facts.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{Monoid, Semimodule, Semiring};
use crate::bitset::ElemSet;
use crate::catalog::{self, LatticeSpec};
use crate::error::Result;
use crate::limits::Limits;
use crate::semisimple;

use super::claims::{audit_with, Facts, Record, Recorder, Verdict};
use super::enumerate::next_permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pins {
    None,
    B31,
    B32,
    /// `B(p+1, p)`.
    Wrap(usize),
    BooleanPower,
}

pub fn fixtures() -> Vec<(String, Arc<Semiring>, Pins)> {
    let b = catalog::boolean();
    let bn = |i: usize, j: usize| catalog::make_b(i, j).expect("valid parameters");
    vec![
        ("B".into(), Arc::new(b.clone()), Pins::None),
        ("Z2".into(), Arc::new(bn(2, 0)), Pins::None),
        ("B(3,1)".into(), Arc::new(bn(3, 1)), Pins::B31),
        ("B(3,2)".into(), Arc::new(bn(3, 2)), Pins::B32),
        ("B(4,3)".into(), Arc::new(bn(4, 3)), Pins::Wrap(3)),
        ("B(6,5)".into(), Arc::new(bn(6, 5)), Pins::Wrap(5)),
        ("BxB".into(), Arc::new(catalog::make_product(&[b.clone(), b.clone()]).unwrap()), Pins::BooleanPower),
        ("BxBxB".into(), Arc::new(catalog::make_product(&[b.clone(), b.clone(), b]).unwrap()), Pins::BooleanPower),
    ]
}

/// Additive monoids isomorphic, by trying every bijection fixing zero.
fn monoids_isomorphic(a: &Monoid, b: &Monoid) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let rest_a: Vec<usize> = (0..n).filter(|&x| x != a.zero()).collect();
    let mut rest_b: Vec<usize> = (0..n).filter(|&x| x != b.zero()).collect();
    loop {
        let mut perm = vec![0; n];
        perm[a.zero()] = b.zero();
        for (x, &y) in rest_a.iter().zip(&rest_b) {
            perm[*x] = y;
        }
        if (0..n).all(|x| (0..n).all(|y| perm[a.add(x, y)] == b.add(perm[x], perm[y]))) {
            return true;
        }
        if !next_permutation(&mut rest_b) {
            return false;
        }
    }
}

fn pins(rec: &mut Recorder, pins: Pins, f: &Facts) -> Result<()> {
    let m = &f.regular;
    match pins {
        Pins::None => {}
        Pins::B31 => {
            let i = ElemSet::from_iter(3, [0, 2]);
            rec.check("pin.b31.not-semisimple", f.iss.value == Some(false) && f.css.value == Some(false), json!({
                "ideal_semisimple": f.iss.value,
                "congruence_semisimple": f.css.value,
            }));
            rec.check(
                "pin.b31.ideal-subtractive-not-summand",
                m.is_subtractive(&i) && !f.poset.contains(&i),
                json!({ "ideal": i, "summands": f.poset.nodes.iter().map(|n| &n.members).collect::<Vec<_>>() }),
            );
            let boolean = catalog::boolean();
            let (quotient, _) = m.quotient(&m.bourne(&i))?;
            let (ideal, _) = m.restrict(&i)?;
            let q_iso = monoids_isomorphic(quotient.additive(), boolean.additive());
            let i_iso = monoids_isomorphic(ideal.additive(), boolean.additive());
            rec.example("ex-b31.quotient-is-boolean", q_iso, json!({ "quotient_add": quotient.add_table() }));
            rec.example("ex-b31.ideal-is-boolean", i_iso, json!({ "ideal_add": ideal.add_table() }));
            rec.example(
                "rem-indp.2",
                f.c2.value == Some(true) && f.c1.value == Some(false),
                json!({ "c1": f.c1.value, "c2": f.c2.value }),
            );
        }
        Pins::B32 => {
            let profile = json!({ "c1": f.c1.value, "c2": f.c2.value, "c2_prime": f.c2p.value });
            rec.check(
                "pin.b32.c-profile",
                f.c1.value == Some(true) && f.c2.value == Some(false) && f.c2p.value == Some(false),
                profile.clone(),
            );
            rec.example("rem-indp.1", f.iss.value == Some(false), json!({ "ideal_semisimple": f.iss.value }));
        }
        Pins::Wrap(p) => {
            let n = p + 1;
            let trivial = vec![ElemSet::singleton(n, 0), ElemSet::full(n)];
            rec.check("pin.wrap.not-ideal-semisimple", f.iss.value == Some(false), json!({ "p": p }));
            rec.check("pin.wrap.trivial-subtractive", f.subtractive == trivial, json!({ "subtractive": f.subtractive }));
            rec.check("pin.wrap.all-e-projective", f.ep.value == Some(true), f.ep.cert.clone());
            let expected = vec![ElemSet::singleton(n, 0), ElemSet::from_iter(n, [0, p]), ElemSet::full(n)];
            rec.example("ex-exb32.ideals", f.ideals == expected, json!({ "claimed": expected, "found": f.ideals }));
            rec.example("ex-exb32.not-congruence-semisimple", f.css.value == Some(false), json!({ "p": p }));
        }
        Pins::BooleanPower => {
            let all = [&f.c1, &f.c2, &f.ep, &f.kp, &f.quotients_kp, &f.right_split, &f.decomposition, &f.iss];
            rec.check(
                "pin.boolean-power.ideal-semisimple-chain",
                all.iter().all(|i| i.value == Some(true)),
                json!({ "values": all.iter().map(|i| i.value).collect::<Vec<_>>() }),
            );
        }
    }
    Ok(())
}

pub fn audit_fixture(name: &str, s: &Arc<Semiring>, which: Pins, limits: &Limits) -> Vec<Record> {
    audit_with(name, s, limits, |rec, f| pins(rec, which, f))
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EndVariant {
    pub top_preserving: bool,
    pub order: usize,
    pub ideal_simple: bool,
    pub congruence_simple: bool,
    pub left_congruence_simple: bool,
    pub c2: bool,
    pub c2_prime: bool,
}

pub fn end_variant(l: &LatticeSpec, top_preserving: bool, limits: &Limits) -> Result<EndVariant> {
    let s = Arc::new(catalog::make_end_semiring(l, top_preserving, limits)?);
    let simp = semisimple::semiring_simplicity(&s, limits)?;
    let m = Semimodule::regular(s.clone());
    let cond = semisimple::condition_profile(&m, limits)?;
    Ok(EndVariant {
        top_preserving,
        order: s.order(),
        ideal_simple: simp.ideal_simple,
        congruence_simple: simp.congruence_simple,
        left_congruence_simple: semisimple::is_congruence_simple(&m),
        c2: cond.c2,
        c2_prime: cond.c2_prime,
    })
}

/// Endomorphism semirings of a non-distributive lattice, in both readings
/// (all join-endomorphisms fixing bottom, or also fixing top).
pub fn audit_end(name: &str, l: &LatticeSpec, limits: &Limits) -> Vec<Record> {
    let mut rec = Recorder::new(name);
    let run = |rec: &mut Recorder| -> Result<()> {
        let all = end_variant(l, false, limits)?;
        let top = end_variant(l, true, limits)?;
        let simplicity = |v: &EndVariant| v.congruence_simple && !v.ideal_simple;
        let profile = |v: &EndVariant| v.c2_prime && !v.c2;
        rec.check("pin.end.simplicity", simplicity(&all), serde_json::to_value(&all).unwrap());
        for v in [&all, &top] {
            let tag = if v.top_preserving { "top-preserving" } else { "all" };
            let w: Value = serde_json::to_value(v).unwrap();
            rec.example(&format!("rem-indp.5[{tag}]"), profile(v), w.clone());
            rec.example(&format!("ex-end.left-congruence-simple[{tag}]"), v.left_congruence_simple, w.clone());
            if v.top_preserving {
                rec.example(&format!("ex-end.simplicity[{tag}]"), simplicity(v), w);
            }
        }
        let matching = |pred: &dyn Fn(&EndVariant) -> bool| -> Vec<&str> {
            [&all, &top].iter().filter(|v| pred(v)).map(|v| if v.top_preserving { "top-preserving" } else { "all" }).collect()
        };
        rec.push(
            "catalog.end-variant",
            Verdict::Info,
            json!({
                "simplicity_claim_matches": matching(&simplicity),
                "c2_prime_not_c2_matches": matching(&profile),
            }),
            true,
        );
        Ok(())
    };
    if let Err(e) = run(&mut rec) {
        rec.engine_error(e);
    }
    rec.records
}
