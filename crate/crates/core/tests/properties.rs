use std::sync::OnceLock;

use proptest::prelude::*;

use grouprep::corpus::corpus_up_to;
use grouprep::entropic::{entropic_vector, verify_theorem, IndexTable};
use grouprep::group::{build_group, validate_group, Group, GroupSpec};
use grouprep::represent::{
    abelian_invariants, combine_coprime, enumerate_abelian_specs, find_abelian_representation,
    n2_certificate, n2_elementary_construction, n2_inequality, necessary_divisibility, AbelianSpec,
    RepresentationCertificate, SearchOptions,
};
use grouprep::subgroup::{
    enumerate_subgroups, enumerate_subgroups_with, is_nilpotent, EnumerateOptions, Subgroup,
    SubgroupTuple, TuplePolicy,
};
use grouprep::Execution;

struct Entry {
    group: Group,
    subgroups: Vec<Subgroup>,
}

fn corpus() -> &'static [Entry] {
    static CORPUS: OnceLock<Vec<Entry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        corpus_up_to(32)
            .into_iter()
            .map(|named| {
                let group = build_group(&named.spec).unwrap();
                let subgroups = enumerate_subgroups(&group).unwrap();
                Entry { group, subgroups }
            })
            .collect()
    })
}

const ANY: TuplePolicy = TuplePolicy {
    allow_improper: true,
};

/// A group from the corpus and 1 to 3 lattice positions (taken modulo the
/// lattice size).
fn tuple_strategy(max_order: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    let picks: Vec<usize> = corpus()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.group.order() <= max_order)
        .map(|(i, _)| i)
        .collect();
    (
        prop::sample::select(picks),
        prop::collection::vec(any::<usize>(), 1..=3),
    )
}

fn make_tuple(g: usize, raw: &[usize]) -> SubgroupTuple<'static> {
    let e = &corpus()[g];
    let parts = raw
        .iter()
        .map(|&r| e.subgroups[r % e.subgroups.len()].clone())
        .collect();
    SubgroupTuple::with_policy(&e.group, parts, ANY).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn index_tables_are_polymatroidal((g, raw) in tuple_strategy(32)) {
        let t = make_tuple(g, &raw);
        let table = IndexTable::from_tuple(&t);
        prop_assert!(table.is_divisibility_monotone());
        prop_assert!(table.is_submodular());
        let report = verify_theorem(&t, 1e-9);
        prop_assert!(report.passed(), "{report:?}");
        let v = entropic_vector(&t);
        let back: serde_json::Value = serde_json::from_str(&v.to_json()).unwrap();
        let table_back: IndexTable = serde_json::from_value(back["indices"].clone()).unwrap();
        prop_assert_eq!(table_back, table);
    }

    #[test]
    fn certificates_and_witnesses_are_sound((g, raw) in tuple_strategy(16)) {
        let t = make_tuple(g, &raw);
        let outcome = find_abelian_representation(&t, &SearchOptions::with_multipliers(&[1, 2])).unwrap();
        match outcome.certificate() {
            Some(cert) => {
                cert.verify().unwrap();
                let back = RepresentationCertificate::from_json(&cert.to_json()).unwrap();
                prop_assert_eq!(&back, cert);
                prop_assert!(necessary_divisibility(&t, true).is_none());
            }
            None => prop_assert!(!t.group().is_abelian()),
        }
        if let Some(w) = necessary_divisibility(&t, true) {
            prop_assert!(w.is_sound());
            prop_assert!(outcome.certificate().is_none());
        }
    }

    #[test]
    fn nilpotent_pairs_are_certified((g, raw) in tuple_strategy(32)) {
        let e = &corpus()[g];
        prop_assume!(is_nilpotent(&e.group));
        let raw = [raw[0], *raw.last().unwrap()];
        let t = make_tuple(g, &raw);
        let cert = n2_certificate(&t).unwrap();
        prop_assert!(cert.verify().unwrap().target_checked);
    }

    #[test]
    fn execution_modes_agree((g, raw) in tuple_strategy(32)) {
        let e = &corpus()[g];
        let seq = enumerate_subgroups_with(&e.group, EnumerateOptions { exec: Execution::Sequential, ..Default::default() }).unwrap();
        prop_assert_eq!(&seq, &e.subgroups);
        let t = make_tuple(g, &raw);
        let run = |exec| find_abelian_representation(&t, &SearchOptions { exec, ..Default::default() }).unwrap();
        prop_assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
    }

    #[test]
    fn elementary_construction_matches_inequality(
        p in prop::sample::select(vec![2usize, 3, 5]),
        m in 0u32..=4,
        a in 0u32..=4,
        b in 0u32..=4,
        c in 0u32..=4,
    ) {
        let (i, j) = (a.min(m), b.min(m));
        let k = c.min(i).min(j);
        let holds = n2_inequality(i, j, k, m).unwrap();
        let built = n2_elementary_construction(p, i, j, k, m);
        prop_assert_eq!(holds, built.is_ok());
        if let Ok(cert) = built {
            cert.verify().unwrap();
        }
    }

    #[test]
    fn abelian_types_round_trip(factors in prop::collection::vec(2usize..=6, 0..=3)) {
        let spec = AbelianSpec::new(factors.clone()).unwrap();
        let g = build_group(&GroupSpec::abelian(&factors)).unwrap();
        prop_assert_eq!(abelian_invariants(&g).unwrap(), spec.canonical());
        let all = enumerate_abelian_specs(spec.order()).unwrap();
        prop_assert_eq!(all.iter().filter(|s| **s == spec.canonical()).count(), 1);
    }

    #[test]
    fn coprime_products_multiply_indices(x in 1usize..=4, y in 1usize..=9, u in 0usize..8, v in 0usize..9) {
        // a cyclic 2-group and a cyclic 3-group
        let (m, n) = (1usize << x.min(3), [1usize, 3, 9][y % 3]);
        let zm = build_group(&GroupSpec::cyclic(m)).unwrap();
        let zn = build_group(&GroupSpec::cyclic(n)).unwrap();
        let pick = |g: &Group, r: usize| {
            let subs = enumerate_subgroups(g).unwrap();
            subs[r % subs.len()].clone()
        };
        let tm = SubgroupTuple::with_policy(&zm, vec![pick(&zm, u), pick(&zm, v)], ANY).unwrap();
        let tn = SubgroupTuple::with_policy(&zn, vec![pick(&zn, v), pick(&zn, u)], ANY).unwrap();
        let search = |t: &SubgroupTuple<'_>| {
            find_abelian_representation(t, &SearchOptions::default()).unwrap().into_certificate().unwrap()
        };
        let combined = combine_coprime(&search(&tm), &search(&tn)).unwrap();
        combined.verify().unwrap();
        for mask in 1..4 {
            prop_assert_eq!(combined.index_table.get(mask), tm.index(mask) * tn.index(mask));
        }
    }

    #[test]
    fn permutation_closures_are_groups(
        gens in prop::collection::vec(Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(), 1..=2)
    ) {
        let g = build_group(&GroupSpec::permutations(gens)).unwrap();
        prop_assert_eq!(120 % g.order(), 0);
        prop_assert!(validate_group(&g).is_valid());
        let once = build_group(&GroupSpec::permutations(vec![(0..5).collect()])).unwrap();
        prop_assert_eq!(once.order(), 1);
    }
}

#[test]
fn singleton_and_pair_witness_agree_on_search() {
    let d3 = build_group(&GroupSpec::dihedral(3)).unwrap();
    let subs: Vec<Subgroup> = enumerate_subgroups(&d3).unwrap();
    for a in &subs {
        for b in &subs {
            let t = SubgroupTuple::with_policy(&d3, vec![a.clone(), b.clone()], ANY).unwrap();
            let found =
                find_abelian_representation(&t, &SearchOptions::with_multipliers(&[1, 2, 3]))
                    .unwrap();
            assert_eq!(
                necessary_divisibility(&t, false).is_none(),
                found.certificate().is_some()
            );
        }
    }
}
