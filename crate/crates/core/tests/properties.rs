//! Invariants checked against brute-force oracles on small semirings.

use std::sync::{Arc, OnceLock};

use finsemi::auditor::{canonical_form, enumerate_semirings};
use finsemi::{homs, semisimple, summands};
use finsemi::{ElemSet, Limits, Partition, Semimodule, Semiring};
use proptest::prelude::*;
use proptest::sample::Index;

fn pool() -> &'static [Arc<Semiring>] {
    static POOL: OnceLock<Vec<Arc<Semiring>>> = OnceLock::new();
    POOL.get_or_init(|| {
        let limits = Limits::default();
        (2..=4)
            .flat_map(|n| enumerate_semirings(n, false, &limits).unwrap())
            .map(Arc::new)
            .collect()
    })
}

fn pick(i: &Index) -> Arc<Semiring> {
    let p = pool();
    p[i.index(p.len())].clone()
}

fn subset(n: usize, bits: u32) -> ElemSet {
    ElemSet::from_iter(n, (0..n).filter(|x| bits >> x & 1 == 1))
}

fn all_subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    (0u32..1 << n).map(move |b| subset(n, b))
}

fn shuffle(n: usize, seed: &[Index]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, seed[i].index(i + 1));
    }
    perm
}

fn is_subtractive_oracle(m: &Semimodule, set: &ElemSet) -> bool {
    let n = m.order();
    set.contains(m.zero())
        && (0..n).all(|a| (0..n).all(|b| !(set.contains(a) && set.contains(m.add(a, b))) || set.contains(b)))
}

/// Every function M -> N checked for linearity directly.
fn brute_force_homs(m: &Semimodule, t: &Semimodule) -> Vec<Vec<usize>> {
    let (n, k, r) = (m.order(), t.order(), m.base().order());
    let mut out = Vec::new();
    let mut f = vec![0; n];
    loop {
        let additive = f[m.zero()] == t.zero()
            && (0..n).all(|a| (0..n).all(|b| f[m.add(a, b)] == t.add(f[a], f[b])));
        if additive && (0..r).all(|s| (0..n).all(|a| f[m.act(s, a)] == t.act(s, f[a]))) {
            out.push(f.clone());
        }
        let Some(i) = (0..n).find(|&i| f[i] + 1 < k) else { break };
        f[i] += 1;
        f[..i].fill(0);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subtractive_closure_of_submodule_is_least_subtractive_superset(s in any::<Index>(), bits in any::<u32>()) {
        let m = Semimodule::regular(pick(&s));
        let n = m.order();
        let set = m.generated(&subset(n, bits));
        let closure = m.subtractive_closure(&set);
        prop_assert_eq!(m.subtractive_closure(&closure), closure.clone());
        prop_assert!(set.is_subset(&closure));
        prop_assert!(m.is_subtractive(&closure) == is_subtractive_oracle(&m, &closure));
        // least among subtractive submonoids of M containing the set
        for t in all_subsets(n) {
            let submonoid = t.contains(m.zero()) && t.iter().all(|a| t.iter().all(|b| t.contains(m.add(a, b))));
            if submonoid && set.is_subset(&t) && is_subtractive_oracle(&m, &t) {
                prop_assert!(closure.is_subset(&t));
            }
        }
    }

    #[test]
    fn bourne_zero_class_is_subtractive_closure(s in any::<Index>(), bits in any::<u32>()) {
        let m = Semimodule::regular(pick(&s));
        let n = m.order();
        let sub = m.generated(&subset(n, bits));
        let rho = m.bourne(&sub);
        prop_assert!(m.is_congruence(&rho));
        prop_assert_eq!(rho.class(rho.class_of(m.zero())), m.subtractive_closure(&sub));
        // a ~ b iff a + x = b + y for some x, y in the submodule
        for a in 0..n {
            for b in 0..n {
                let related = sub.iter().any(|x| sub.iter().any(|y| m.add(a, x) == m.add(b, y)));
                prop_assert_eq!(rho.related(a, b), related);
            }
        }
    }

    #[test]
    fn congruence_closure_is_least_congruence(s in any::<Index>(), raw in prop::collection::vec((any::<Index>(), any::<Index>()), 0..3)) {
        let m = Semimodule::regular(pick(&s));
        let n = m.order();
        let pairs: Vec<(usize, usize)> = raw.iter().map(|(a, b)| (a.index(n), b.index(n))).collect();
        let rho = m.congruence_closure(&pairs);
        prop_assert!(m.is_congruence(&rho));
        prop_assert!(pairs.iter().all(|&(a, b)| rho.related(a, b)));
        let all = m.enumerate_congruences(&Limits::default());
        prop_assert!(all.exhaustive);
        for c in all.items.iter().filter(|c| pairs.iter().all(|&(a, b)| c.related(a, b))) {
            prop_assert!(rho.refines(c));
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(s in any::<Index>(), seed in prop::collection::vec(any::<Index>(), 4)) {
        let s = pick(&s);
        let perm = shuffle(s.order(), &seed);
        prop_assert_eq!(canonical_form(&s), canonical_form(&s.permuted(&perm)));
    }

    #[test]
    fn hom_search_matches_brute_force(a in any::<Index>(), bits in any::<u32>()) {
        let s = pick(&a);
        // a second module over the same semiring: a quotient of the regular one
        let m = Semimodule::regular(s.clone());
        let sub = m.generated(&subset(m.order(), bits));
        let (q, _) = m.quotient(&m.bourne(&sub)).unwrap();
        for (x, y) in [(&m, &q), (&q, &m), (&m, &m)] {
            let found = homs::enumerate_homs(x, y, &Limits::default()).unwrap();
            prop_assert!(found.exhaustive);
            let mut got: Vec<Vec<usize>> = found.items.iter().map(|f| f.images().to_vec()).collect();
            got.sort();
            let mut want = brute_force_homs(x, y);
            want.sort();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn deciders_are_isomorphism_invariant(s in any::<Index>(), seed in prop::collection::vec(any::<Index>(), 4)) {
        let s = pick(&s);
        let perm = shuffle(s.order(), &seed);
        let t = Arc::new(s.permuted(&perm));
        let limits = Limits::default();
        let (m, mt) = (Semimodule::regular(s.clone()), Semimodule::regular(t.clone()));
        prop_assert_eq!(s.is_ideal_simple(), t.is_ideal_simple());
        prop_assert_eq!(s.is_congruence_simple(), t.is_congruence_simple());
        let (c, ct) = (semisimple::condition_profile(&m, &limits).unwrap(), semisimple::condition_profile(&mt, &limits).unwrap());
        prop_assert_eq!((c.c1, c.c2, c.c2_prime), (ct.c1, ct.c2, ct.c2_prime));
        let (p, pt) = (semisimple::semisimplicity_profile(&m, &limits).unwrap(), semisimple::semisimplicity_profile(&mt, &limits).unwrap());
        prop_assert_eq!((p.ideal_semisimple, p.congruence_semisimple), (pt.ideal_semisimple, pt.congruence_semisimple));
        let (sp, spt) = (summands::summand_poset(&m, &limits).unwrap(), summands::summand_poset(&mt, &limits).unwrap());
        prop_assert_eq!(sp.nodes.len(), spt.nodes.len());
        prop_assert_eq!(sp.longest_chain, spt.longest_chain);
        // summands move with the relabeling
        for node in &sp.nodes {
            let moved = ElemSet::from_iter(s.order(), node.members.iter().map(|x| perm[x]));
            prop_assert!(spt.contains(&moved));
        }
    }
}

#[test]
fn partition_labels_are_canonical() {
    let p = Partition::from_labels(&[2, 2, 0, 1]);
    assert_eq!(p.labels(), &[0, 0, 1, 2]);
}
