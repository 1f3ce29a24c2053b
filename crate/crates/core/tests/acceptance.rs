//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use finsemi::auditor::fixtures::{self, Pins};
use finsemi::auditor::{audit_corpus, CorpusConfig, CorpusReport, Record, Verdict};
use finsemi::catalog::{self, LatticeSpec};
use finsemi::homs;
use finsemi::projinj;
use finsemi::semisimple::{self, SimpleKind};
use finsemi::summands;
use finsemi::{ElemSet, Limits, Monoid, Semimodule, Semiring};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg.into()) }
}

fn limits() -> Limits {
    Limits::default()
}

fn regular(s: Semiring) -> Semimodule {
    Semimodule::regular(Arc::new(s))
}

/// Order ≤ 3 in full and order 4 commutative, audited once.
fn small_corpus() -> &'static (CorpusReport, Duration) {
    static CELL: OnceLock<(CorpusReport, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = Instant::now();
        let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
        let mut all = audit_corpus(&CorpusConfig { order: Some(3), jobs, ..Default::default() }).unwrap();
        let four = CorpusConfig { order: Some(4), commutative_only: true, jobs, ..Default::default() };
        let four = audit_corpus(&four).unwrap();
        let keep: Vec<String> = four.instances.iter().filter(|i| i.starts_with("o4")).cloned().collect();
        all.records.extend(four.records.into_iter().filter(|r| r.instance.starts_with("o4")));
        all.instances.extend(keep);
        (all, t.elapsed())
    })
}

fn records_for<'a>(report: &'a CorpusReport, prefix: &str) -> Vec<&'a Record> {
    report.records.iter().filter(|r| r.claim_id.starts_with(prefix)).collect()
}

fn z_n(n: usize) -> (Vec<usize>, Vec<usize>) {
    let add = (0..n * n).map(|k| (k / n + k % n) % n).collect();
    let mul = (0..n * n).map(|k| (k / n) * (k % n) % n).collect();
    (add, mul)
}

fn criterion_1() -> Outcome {
    let b = catalog::make_b(2, 1).unwrap();
    ensure(b.add_table() == [0, 1, 1, 1] && b.mul_table() == [0, 0, 0, 1], "B(2,1) is not the Boolean semiring")?;
    ensure(b.zero() == 0 && b.one() == 1, "B(2,1) zero/one")?;
    for n in 2..=6 {
        let s = catalog::make_b(n, 0).unwrap();
        let (add, mul) = z_n(n);
        ensure(s.add_table() == add && s.mul_table() == mul, format!("B({n},0) differs from Z_{n}"))?;
    }
    Ok("B(2,1) = Boolean, B(n,0) = Z_n for n in 2..=6, exact tables".into())
}

fn monoid_iso(a: &Monoid, b: &Monoid) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if perm[a.zero()] == b.zero() && (0..n).all(|x| (0..n).all(|y| perm[a.add(x, y)] == b.add(perm[x], perm[y]))) {
            return true;
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { return false };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

fn criterion_2() -> Outcome {
    let m = regular(catalog::make_b(3, 1).unwrap());
    let l = limits();
    let i = ElemSet::from_iter(3, [0, 2]);
    let poset = summands::summand_poset(&m, &l).unwrap();
    let semis = semisimple::semisimplicity_profile(&m, &l).unwrap();
    let (q, _) = m.quotient(&m.bourne(&i)).unwrap();
    let (sub, _) = m.restrict(&i).unwrap();
    let boolean = catalog::boolean();
    let facts = [
        ("I subtractive", m.is_subsemimodule(&i) && m.is_subtractive(&i)),
        ("I not a summand", !poset.contains(&i)),
        ("not ideal-semisimple", !semis.ideal_semisimple),
        ("not congruence-semisimple", !semis.congruence_semisimple),
        (
            "S/I ≅ B ≅ I",
            homs::are_isomorphic(&q, &sub, &l).unwrap().is_present()
                && monoid_iso(q.additive(), boolean.additive())
                && monoid_iso(sub.additive(), boolean.additive()),
        ),
    ];
    let failed: Vec<&str> = facts.iter().filter(|f| !f.1).map(|f| f.0).collect();
    ensure(
        failed.is_empty(),
        format!("{:?} (S/I add table {:?}, I add table {:?})", failed, q.add_table(), sub.add_table()),
    )?;
    Ok("all five facts".into())
}

fn criterion_3() -> Outcome {
    let l = limits();
    let mut problems = Vec::new();
    for p in [3usize, 5] {
        let n = p + 1;
        let s = Arc::new(catalog::make_b(n, p).unwrap());
        let m = Semimodule::regular(s.clone());
        let ideals = s.ideals(&l).require_exhaustive("ideals").unwrap();
        let expected = vec![ElemSet::singleton(n, 0), ElemSet::from_iter(n, [0, p]), ElemSet::full(n)];
        if ideals != expected {
            problems.push(format!("p={p}: ideals {:?}", ideals.iter().map(|i| i.to_string()).collect::<Vec<_>>()));
        }
        let sub = m.enumerate_subsemimodules(&l, true).require_exhaustive("subtractive").unwrap();
        if sub != vec![ElemSet::singleton(n, 0), ElemSet::full(n)] {
            problems.push(format!("p={p}: non-trivial subtractive ideals"));
        }
        let family = projinj::bounded_family(&s, &l).unwrap();
        let rel = projinj::Relative::new(&m, &l).unwrap();
        for member in &family.members {
            if !rel.is_e_projective(&member.module).unwrap().holds {
                problems.push(format!("p={p}: {} not e-projective", member.name));
            }
        }
        let semis = semisimple::semisimplicity_profile(&m, &l).unwrap();
        if semis.ideal_semisimple || semis.congruence_semisimple {
            problems.push(format!("p={p}: semisimple"));
        }
    }
    ensure(problems.is_empty(), problems.join("; "))?;
    Ok("p = 3, 5".into())
}

fn criterion_4() -> Outcome {
    let l = limits();
    let mut problems = Vec::new();
    let profile = |s: Semiring| semisimple::condition_profile(&regular(s), &l).unwrap();
    let b32 = profile(catalog::make_b(3, 2).unwrap());
    if !(b32.c1 && !b32.c2 && !b32.c2_prime) {
        problems.push(format!("B(3,2): C1={} C2={} C2'={}", b32.c1, b32.c2, b32.c2_prime));
    }
    let b31 = profile(catalog::make_b(3, 1).unwrap());
    if !(!b31.c1 && b31.c2) {
        problems.push(format!("B(3,1): C1={} C2={}", b31.c1, b31.c2));
    }
    for (name, lat) in [("E(M3)", LatticeSpec::m3()), ("E(N5)", LatticeSpec::n5())] {
        let s = catalog::make_end_semiring(&lat, false, &l).unwrap();
        let simp = semisimple::semiring_simplicity(&s, &l).unwrap();
        let c = profile(s);
        if !(c.c2_prime && !c.c2) {
            problems.push(format!("{name}: C2'={} C2={}", c.c2_prime, c.c2));
        }
        if !(simp.congruence_simple && !simp.ideal_simple) {
            problems.push(format!("{name}: congruence-simple={} ideal-simple={}", simp.congruence_simple, simp.ideal_simple));
        }
    }
    ensure(problems.is_empty(), problems.join("; "))?;
    Ok("B(3,2), B(3,1), E(M3), E(N5)".into())
}

fn criterion_5() -> Outcome {
    let (report, elapsed) = small_corpus();
    ensure(*elapsed < Duration::from_secs(600), format!("took {elapsed:?}"))?;
    let chain = [records_for(report, "prop-proj-impl."), records_for(report, "prop-sum-einj.")].concat();
    let bad: Vec<String> = chain
        .iter()
        .filter(|r| !matches!(r.verdict, Verdict::Holds | Verdict::Vacuous))
        .map(|r| format!("{} {} {:?}", r.instance, r.claim_id, r.verdict))
        .collect();
    ensure(bad.is_empty(), bad.join("; "))?;
    let per_instance = 7 + 8 + 1;
    ensure(
        chain.len() == report.instances.len() * per_instance,
        format!("{} chain records for {} instances", chain.len(), report.instances.len()),
    )?;
    Ok(format!("{} instances, {} chain records, {:.1?}", report.instances.len(), chain.len(), elapsed))
}

fn criterion_6() -> Outcome {
    let (report, _) = small_corpus();
    let ids = ["lem-cong-s-char", "lem-id-ss-char", "lem-dcc-acc", "lem-lemint", "lem-summand-char", "cor-ml"];
    let mut checked = 0;
    for id in ids {
        for r in report.records.iter().filter(|r| r.claim_id == id && r.instance.starts_with("o") && !r.instance.starts_with("o4")) {
            ensure(r.verdict == Verdict::Holds, format!("{} {}: {}", r.instance, id, r.witness))?;
            checked += 1;
        }
    }
    let order3 = report.instances.iter().filter(|i| !i.starts_with("o4")).count();
    ensure(checked == ids.len() * order3, format!("{checked} lemma records for {order3} instances"))?;
    Ok(format!("{order3} semirings, {checked} lemma records"))
}

fn criterion_7() -> Outcome {
    let (report, _) = small_corpus();
    let mut applied = 0;
    for r in records_for(report, "lem-comsum.ideal") {
        match r.verdict {
            Verdict::Holds => applied += 1,
            Verdict::Vacuous => {}
            _ => return Err(format!("{}: {:?}", r.instance, r.verdict)),
        }
    }
    let b = catalog::boolean();
    for k in [2, 3] {
        let s = catalog::make_product(&vec![b.clone(); k]).unwrap();
        let c = semisimple::comsum_check(&s, SimpleKind::Ideal, &limits()).map_err(|e| format!("B^{k}: {e}"))?;
        ensure(c.holds, format!("B^{k}: {:?}", c.certificates))?;
        applied += 1;
    }
    Ok(format!("{applied} ideal-semisimple instances"))
}

fn criterion_8() -> Outcome {
    let (name, s, pins) = fixtures::fixtures().into_iter().find(|f| f.0 == "B(3,1)").unwrap();
    assert_eq!(pins, Pins::B31);
    let records = fixtures::audit_fixture(&name, &s, pins, &limits());
    ensure(!records.iter().any(|r| r.claim_id == "engine"), "audit crashed")?;
    let r = records
        .iter()
        .find(|r| r.claim_id == "thm-isscomm.(1)<=>(5)")
        .ok_or("no record for thm-isscomm.(1)<=>(5)")?;
    ensure(r.verdict == Verdict::Discrepancy, format!("verdict {:?}", r.verdict))?;
    let w = &r.witness;
    ensure(w["lhs"]["item"] == "(1)" && w["rhs"]["item"] == "(5)", "items not named")?;
    ensure(w["lhs"]["certificate"]["not_summand"] == serde_json::json!([0, 2]), "no non-summand certificate")?;
    ensure(w["lhs"]["certificate"]["summands"].is_array(), "no Comp(End) images")?;
    let retractions = w["rhs"]["certificate"].as_array().ok_or("no retraction tables")?;
    let on_i = retractions.iter().find(|c| c["kernel"] == serde_json::json!([0, 2])).ok_or("no retraction for I")?;
    ensure(on_i["as_endomorphism"] == serde_json::json!([0, 2, 2]), format!("retraction {}", on_i))?;
    Ok("discrepancy with retraction x -> 2x and non-summand certificate".into())
}

fn criterion_9() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_finsemi");
    let run = |jobs: &str| {
        let out = Command::new(exe).args(["audit", "--order", "3", "--format", "json", "--jobs", jobs]).output().unwrap();
        (out.status.code(), out.stdout)
    };
    let (c1, one) = run("1");
    let (c8, eight) = run("8");
    ensure(c1 == Some(0) && c8 == Some(0), format!("exit codes {c1:?} {c8:?}"))?;
    ensure(!one.is_empty() && one == eight, "reports differ")?;
    Ok(format!("{} bytes identical", one.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("B(n,i) fixtures", criterion_1),
        ("B(3,1) example", criterion_2),
        ("B(p+1,p) example", criterion_3),
        ("C1/C2/C2' independence matrix", criterion_4),
        ("implication chains", criterion_5),
        ("lemma suite", criterion_6),
        ("subtractive ideals of semisimple commutative semirings", criterion_7),
        ("discrepancy channel", criterion_8),
        ("determinism", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
