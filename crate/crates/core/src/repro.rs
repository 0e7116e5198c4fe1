//! The nine reproduction checks, runnable from the CLI and the acceptance
//! test. Each returns a pass flag and a one-line summary.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::exact_log;
use crate::corpus::{corpus_up_to, p_groups_up_to, NamedGroup};
use crate::entropic::verify_theorem;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::{build_group, Elem, Group, GroupSpec};
use crate::represent::{
    abelian_group, builtin_bijection, classify_n2, find_abelian_representation,
    n2_elementary_construction, n2_inequality, p3_abelian_spec, p3_uniform_representation,
    profile_of, self_certificate, transfer_representation, verify_subgroup_preserving_with,
    Bijection, BijectionFamily, N2Classification, P3Route, SearchOptions, P3_CASES,
};
use crate::subgroup::{
    enumerate_subgroups_with, generated_subgroup, intersect, is_nilpotent, EnumerateOptions,
    Subgroup, SubgroupTuple, TuplePolicy,
};

/// Entropy tolerance for the coset-distribution check.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReproConfig {
    pub seed: u64,
    pub tuples_per_group: usize,
    pub exec: Execution,
}

impl Default for ReproConfig {
    fn default() -> Self {
        ReproConfig {
            seed: 0x5eed,
            tuples_per_group: 200,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

type Check = fn(&ReproConfig) -> Result<(bool, String)>;

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "theorem-oracle"),
    (2, "dihedral-psi"),
    (3, "quasidihedral"),
    (4, "dicyclic"),
    (5, "n2-classification"),
    (6, "pgroup-n2"),
    (7, "q8-boundary"),
    (8, "p3-table"),
    (9, "non-2-power"),
];

fn check_fn(id: u8) -> Check {
    match id {
        1 => theorem_oracle,
        2 => dihedral_psi,
        3 => quasidihedral,
        4 => dicyclic,
        5 => n2_classification,
        6 => pgroup_n2,
        7 => q8_boundary,
        8 => p3_table,
        _ => non_2_power,
    }
}

/// Looks a criterion up by number or name.
pub fn lookup(key: &str) -> Option<(u8, &'static str)> {
    CRITERIA
        .iter()
        .copied()
        .find(|&(id, name)| name == key || id.to_string() == key)
}

pub fn run(key: &str, cfg: &ReproConfig) -> Result<CriterionOutcome> {
    let (id, name) =
        lookup(key).ok_or_else(|| Error::InvalidParameter(format!("unknown criterion {key:?}")))?;
    let start = Instant::now();
    let (passed, detail) = match check_fn(id)(cfg) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Ok(CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

pub fn run_all(cfg: &ReproConfig) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .map(|(_, name)| run(name, cfg).expect("known criterion"))
        .collect()
}

fn lattice(g: &Group, cfg: &ReproConfig) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_with(
        g,
        EnumerateOptions {
            exec: cfg.exec,
            ..Default::default()
        },
    )
}

const IMPROPER_OK: TuplePolicy = TuplePolicy {
    allow_improper: true,
};

/// Entropy of each coset marginal against `log [G:G_A]`, on seeded random
/// tuples of 1 to 3 subgroups in every corpus group of order at most 64.
fn theorem_oracle(cfg: &ReproConfig) -> Result<(bool, String)> {
    let corpus: Vec<(u64, NamedGroup)> = (0..).zip(corpus_up_to(64)).collect();
    let results = cfg.exec.map(
        &corpus,
        |(position, named)| -> Result<(usize, usize, f64)> {
            let g = build_group(&named.spec)?;
            let subs = lattice(&g, cfg)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(*position));
            let mut failures = 0;
            let mut worst = 0f64;
            for _ in 0..cfg.tuples_per_group {
                let n = rng.random_range(1..=3);
                let parts = (0..n)
                    .map(|_| subs[rng.random_range(0..subs.len())].clone())
                    .collect();
                let t = SubgroupTuple::with_policy(&g, parts, IMPROPER_OK)?;
                let report = verify_theorem(&t, ENTROPY_TOLERANCE);
                worst = worst.max(report.max_deviation);
                if !report.passed() {
                    failures += 1;
                }
            }
            Ok((cfg.tuples_per_group, failures, worst))
        },
    );
    let mut tuples = 0;
    let mut failures = 0;
    let mut worst = 0f64;
    for r in results {
        let (n, f, w) = r?;
        tuples += n;
        failures += f;
        worst = worst.max(w);
    }
    Ok((
        failures == 0,
        format!(
            "{} groups, {tuples} tuples, {failures} failures, max deviation {worst:.3e}",
            corpus.len()
        ),
    ))
}

/// Certificates for every tuple of at most three subgroups of the source,
/// built in the elementary abelian target and moved back along `chain`.
fn transfer_every_tuple(chain: &Bijection, cfg: &ReproConfig) -> Result<(usize, usize)> {
    let subs = lattice(&chain.source, cfg)?;
    let s = subs.len();
    let mut tuples: Vec<Vec<usize>> = (0..s).map(|a| vec![a]).collect();
    for a in 0..s {
        for b in 0..s {
            tuples.push(vec![a, b]);
            for c in 0..s {
                tuples.push(vec![a, b, c]);
            }
        }
    }
    let ok = cfg.exec.map(&tuples, |idx| -> bool {
        let parts = idx.iter().map(|&i| subs[i].clone()).collect();
        let run = || -> Result<()> {
            let t = SubgroupTuple::with_policy(&chain.source, parts, IMPROPER_OK)?;
            let image = chain.image_tuple(&t)?;
            let cert = self_certificate(&image)?;
            let moved = transfer_representation(&chain.map, &t, &cert)?;
            moved.verify_for(&t)
        };
        run().is_ok()
    });
    let failures = ok.iter().filter(|&&x| !x).count();
    Ok((tuples.len(), failures))
}

fn dihedral_psi(cfg: &ReproConfig) -> Result<(bool, String)> {
    let mut passed = true;
    let mut parts = Vec::new();
    for k in 2..=4 {
        let b = builtin_bijection(BijectionFamily::Dihedral2k, k)?;
        let report = verify_subgroup_preserving_with(&b.map, &b.source, &b.target, cfg.exec)?;
        let violations = report.non_subgroup_images.len() + report.intersection_failures.len();
        passed &= report.passed();
        parts.push(format!(
            "k={k}: {} subgroups, {violations} violations",
            report.subgroups_checked
        ));
    }
    Ok((passed, parts.join("; ")))
}

/// Members of `r^a s^j` (at `a + n j`) with `a ≡ 0` and `b ≡ j` mod `2^i`.
fn type_two(n: usize, i: u32, j: usize) -> Vec<Elem> {
    let step = 1 << i;
    let mut out: Vec<Elem> = (0..n)
        .step_by(step)
        .chain((j % step..n).step_by(step).map(|b| b + n))
        .collect();
    out.sort_unstable();
    out
}

/// Every `<r^{2^i}, r^j s>` member set with `0 <= i < k`, `0 <= j < 2^i`.
pub fn quasidihedral_type_two_sets(k: u32) -> BTreeSet<Vec<Elem>> {
    let n = 1usize << k;
    (0..k)
        .flat_map(|i| (0..1usize << i).map(move |j| type_two(n, i, j)))
        .collect()
}

/// The subgroups of `QD±_{2^k}` written out from their closed forms.
///
/// In `QD+` the square of `r^j s` is `r^{j(2^{k-1}+2)}`, so the set
/// `{r^a, r^b s : a ≡ 0, b ≡ j (mod 2^i)}` is only closed when `j = 0` or
/// `2^{i-1} | j`. The trivial subgroup is `<r^{2^k}>`.
pub fn quasidihedral_closed_forms(k: u32, plus: bool) -> BTreeSet<Vec<Elem>> {
    let n = 1usize << k;
    let half = n / 2;
    let mut out = BTreeSet::new();
    for i in 0..=k {
        out.insert((0..n).step_by(1 << i).collect());
    }
    for i in 0..k {
        for j in 0..(1usize << i) {
            if !plus || j == 0 || j.trailing_zeros() + 1 >= i {
                out.insert(type_two(n, i, j));
            }
        }
    }
    for j in 0..n {
        let cyclic: Vec<Elem> = if plus {
            if j == 0 {
                vec![0, n]
            } else {
                let i = (2 * j).trailing_zeros().min(k);
                type_two(n, i, j)
            }
        } else if j % 2 == 0 {
            vec![0, n + j]
        } else {
            let mut v = vec![0, n + j, half, n + (half + j) % n];
            v.sort_unstable();
            v
        };
        out.insert(cyclic);
    }
    out
}

fn quasidihedral(cfg: &ReproConfig) -> Result<(bool, String)> {
    let mut passed = true;
    let mut parts = Vec::new();
    for k in [3, 4] {
        for (plus, family) in [
            (false, BijectionFamily::QdMinus),
            (true, BijectionFamily::QdPlus),
        ] {
            let to_d = builtin_bijection(family, k)?;
            let found: BTreeSet<Vec<Elem>> = lattice(&to_d.source, cfg)?
                .iter()
                .map(Subgroup::members)
                .collect();
            let lattice_ok = found == quasidihedral_closed_forms(k, plus);
            let unclosed = quasidihedral_type_two_sets(k)
                .iter()
                .filter(|set| !found.contains(*set))
                .count();
            let report =
                verify_subgroup_preserving_with(&to_d.map, &to_d.source, &to_d.target, cfg.exec)?;
            let chain = to_d.then(&builtin_bijection(BijectionFamily::Dihedral2k, k)?)?;
            let (tuples, failures) = transfer_every_tuple(&chain, cfg)?;
            passed &= lattice_ok && report.passed() && failures == 0;
            parts.push(format!(
                "{}: {} subgroups {} ({unclosed} full-range type-2 sets unclosed), psi {}, {tuples} tuples {failures} failures",
                to_d.source.name(),
                found.len(),
                if lattice_ok { "match" } else { "MISMATCH" },
                if report.passed() { "preserving" } else { "NOT preserving" },
            ));
        }
    }
    Ok((passed, parts.join("; ")))
}

fn dicyclic(cfg: &ReproConfig) -> Result<(bool, String)> {
    let mut passed = true;
    let mut parts = Vec::new();
    for k in [3, 4] {
        let to_d = builtin_bijection(BijectionFamily::Dicyclic2k, k)?;
        let report =
            verify_subgroup_preserving_with(&to_d.map, &to_d.source, &to_d.target, cfg.exec)?;
        let chain = to_d.then(&builtin_bijection(BijectionFamily::Dihedral2k, k)?)?;
        let (tuples, failures) = transfer_every_tuple(&chain, cfg)?;
        passed &= report.passed() && failures == 0;
        parts.push(format!(
            "{}: {} subgroups {}, {tuples} tuples {failures} failures",
            to_d.source.name(),
            report.subgroups_checked,
            if report.passed() {
                "preserved"
            } else {
                "NOT preserved"
            },
        ));
    }
    Ok((passed, parts.join("; ")))
}

struct GroupVerdict {
    name: String,
    nilpotent: bool,
    pairs: usize,
    agreed: bool,
}

fn classify_one(named: &NamedGroup, cfg: &ReproConfig) -> Result<GroupVerdict> {
    let g = build_group(&named.spec)?;
    let nilpotent = is_nilpotent(&g);
    let search = SearchOptions {
        exec: Execution::Sequential,
        ..Default::default()
    };
    let classification = classify_n2(&g)?;
    let mut pairs = 0;
    let agreed = match (&classification, nilpotent) {
        (N2Classification::Representable, true) => {
            let proper: Vec<Subgroup> = lattice(&g, cfg)?
                .into_iter()
                .filter(|h| !h.is_trivial() && !h.is_whole())
                .collect();
            let mut all_found = true;
            for a in 0..proper.len() {
                for b in a..proper.len() {
                    pairs += 1;
                    let t = SubgroupTuple::new(&g, vec![proper[a].clone(), proper[b].clone()])?;
                    all_found &= find_abelian_representation(&t, &search)?
                        .certificate()
                        .is_some();
                }
            }
            all_found
        }
        (N2Classification::NotRepresentable { witness }, false) => {
            pairs = 1;
            let a = Subgroup::from_members(&g, witness.first.iter().copied())?;
            let b = Subgroup::from_members(&g, witness.second.iter().copied())?;
            let t = SubgroupTuple::new(&g, vec![a, b])?;
            witness.verify().is_ok()
                && find_abelian_representation(&t, &search)?
                    .certificate()
                    .is_none()
        }
        _ => false,
    };
    Ok(GroupVerdict {
        name: named.name.clone(),
        nilpotent,
        pairs,
        agreed,
    })
}

fn n2_classification(cfg: &ReproConfig) -> Result<(bool, String)> {
    let corpus = corpus_up_to(48);
    let verdicts = cfg
        .exec
        .map(&corpus, |named| classify_one(named, cfg))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let nilpotent = verdicts.iter().filter(|v| v.nilpotent).count();
    let pairs: usize = verdicts.iter().map(|v| v.pairs).sum();
    let bad: Vec<&str> = verdicts
        .iter()
        .filter(|v| !v.agreed)
        .map(|v| v.name.as_str())
        .collect();
    Ok((
        bad.is_empty() && corpus.len() >= 30,
        format!(
            "{} groups ({nilpotent} nilpotent), {pairs} pairs searched, disagreements: {}",
            corpus.len(),
            if bad.is_empty() {
                "none".into()
            } else {
                bad.join(",")
            }
        ),
    ))
}

fn pgroup_n2(cfg: &ReproConfig) -> Result<(bool, String)> {
    let corpus: Vec<NamedGroup> = p_groups_up_to(81)
        .into_iter()
        .filter(|g| g.order > 1)
        .collect();
    let results = cfg
        .exec
        .map(&corpus, |named| -> Result<(usize, usize)> {
            let g = build_group(&named.spec)?;
            let p = crate::arith::prime_divisors(g.order())[0];
            let m = exact_log(p, g.order()).expect("p-group");
            let subs = lattice(&g, cfg)?;
            let abelian = abelian_group(&crate::represent::AbelianSpec::new(vec![p; m as usize])?)?;
            let log = |h: &Subgroup| exact_log(p, h.size()).expect("p-subgroup");
            let mut pairs = 0;
            let mut failures = 0;
            for a in 0..subs.len() {
                for b in a..subs.len() {
                    pairs += 1;
                    let meet = intersect(&subs[a], &subs[b])?;
                    let (i, j, k) = (log(&subs[a]), log(&subs[b]), log(&meet));
                    let ok = n2_inequality(i, j, k, m)?
                        && n2_elementary_construction(p, i, j, k, m).is_ok_and(|c| {
                            let t = SubgroupTuple::with_policy(
                                &g,
                                vec![subs[a].clone(), subs[b].clone()],
                                IMPROPER_OK,
                            );
                            c.check_abelian_side(&abelian).is_ok()
                                && t.is_ok_and(|t| {
                                    (1..4).all(|mask| t.index(mask) == c.index_table.get(mask))
                                })
                        });
                    if !ok {
                        failures += 1;
                    }
                }
            }
            Ok((pairs, failures))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let pairs: usize = results.iter().map(|r| r.0).sum();
    let failures: usize = results.iter().map(|r| r.1).sum();
    Ok((
        failures == 0,
        format!(
            "{} p-groups, {pairs} pairs, {failures} failures",
            corpus.len()
        ),
    ))
}

fn q8_boundary(_cfg: &ReproConfig) -> Result<(bool, String)> {
    let q8 = build_group(&GroupSpec::dicyclic(2))?;
    let gens = ["a", "x", "a x"].map(|w| q8.find_label(w).expect("Q8 words"));
    let parts = gens
        .iter()
        .map(|&x| generated_subgroup(&q8, &[x]))
        .collect();
    let t = SubgroupTuple::new(&q8, parts)?;
    let e = |mask: u32| exact_log(2, q8.order() / t.intersection(mask).size()).expect("2-group");
    let m = exact_log(2, q8.order()).expect("2-group");
    let orders = |mask: u32| m - e(mask);
    let sum = orders(1) + orders(2) + orders(4) - (orders(3) + orders(5) + orders(6)) + orders(7);
    let cert = find_abelian_representation(&t, &SearchOptions::default())?.into_certificate();
    let elementary = cert
        .as_ref()
        .is_some_and(|c| c.abelian.factors() == [2, 2, 2] && c.verify().is_ok());
    Ok((
        sum == 4 && sum > m && elementary,
        format!(
            "exponent sum {}+{}+{}-({}+{}+{})+{} = {sum} vs m = {m}; certificate {}",
            orders(1),
            orders(2),
            orders(4),
            orders(3),
            orders(5),
            orders(6),
            orders(7),
            match &cert {
                Some(c) => format!(
                    "in {} ({})",
                    c.abelian,
                    if elementary { "valid" } else { "INVALID" }
                ),
                None => "not found".into(),
            }
        ),
    ))
}

fn p3_table(cfg: &ReproConfig) -> Result<(bool, String)> {
    let mut table_ok = true;
    for p in [2, 3, 5] {
        let a = abelian_group(&p3_abelian_spec(p))?;
        for case in &P3_CASES {
            let t = SubgroupTuple::new(&a, case.instantiate(&a, p))?;
            table_ok &= profile_of(&t) == case.profile(p);
        }
    }
    let mut triples = 0;
    let mut failures = 0;
    let mut not_in_table = 0;
    for spec in [GroupSpec::heisenberg(3), GroupSpec::modular(3)] {
        let g = build_group(&spec)?;
        let proper: Vec<Subgroup> = lattice(&g, cfg)?
            .into_iter()
            .filter(|h| !h.is_trivial() && !h.is_whole())
            .collect();
        let s = proper.len();
        let combos: Vec<[usize; 3]> = (0..s)
            .flat_map(|a| (a + 1..s).flat_map(move |b| (b + 1..s).map(move |c| [a, b, c])))
            .collect();
        let reports = cfg.exec.map(&combos, |idx| {
            let t = SubgroupTuple::new(&g, idx.iter().map(|&i| proper[i].clone()).collect())?;
            let report = p3_uniform_representation(&t)?;
            let valid = report
                .certificate
                .as_ref()
                .is_some_and(|c| c.verify_for(&t).is_ok());
            Ok::<_, Error>((valid, report.route == P3Route::ProfileNotInTable))
        });
        for r in reports {
            let (valid, missing) = r?;
            triples += 1;
            failures += usize::from(!valid);
            not_in_table += usize::from(missing);
        }
    }
    Ok((
        table_ok && failures == 0,
        format!(
            "8 cases at p=2,3,5 {}; {triples} triples, {failures} failures, {not_in_table} profiles not in table",
            if table_ok { "reproduced" } else { "MISMATCH" }
        ),
    ))
}

fn non_2_power(_cfg: &ReproConfig) -> Result<(bool, String)> {
    let mut passed = true;
    let mut parts = Vec::new();
    for spec in [
        GroupSpec::dihedral(6),
        GroupSpec::dihedral(12),
        GroupSpec::dicyclic(3),
        GroupSpec::dicyclic(6),
    ] {
        let g = build_group(&spec)?;
        match classify_n2(&g)? {
            N2Classification::NotRepresentable { witness } => {
                let ok = witness.verify().is_ok();
                passed &= ok;
                let (i1, i2, i12) = witness.indices;
                parts.push(format!(
                    "{}: ({i1},{i2},{i12}) {}",
                    g.name(),
                    if ok { "ok" } else { "INVALID" }
                ));
            }
            N2Classification::Representable => {
                passed = false;
                parts.push(format!("{}: classified representable", g.name()));
            }
        }
    }
    Ok((passed, parts.join("; ")))
}
