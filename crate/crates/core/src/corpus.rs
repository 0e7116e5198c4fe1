//! Named groups used by the reproduction checks and the benches.

use crate::arith::prime_power_base;
use crate::group::GroupSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGroup {
    pub name: String,
    pub spec: GroupSpec,
    pub order: usize,
}

impl NamedGroup {
    fn new(spec: GroupSpec) -> Self {
        let order = spec
            .checked_order()
            .expect("corpus specs are valid")
            .expect("corpus orders are known up front");
        NamedGroup {
            name: spec.to_string(),
            spec,
            order,
        }
    }

    fn named(name: &str, spec: GroupSpec, order: usize) -> Self {
        NamedGroup {
            name: name.into(),
            spec,
            order,
        }
    }
}

/// `S_4` generated by a transposition and a 4-cycle.
pub fn symmetric4() -> GroupSpec {
    GroupSpec::permutations(vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
}

/// `A_4` generated by two 3-cycles.
pub fn alternating4() -> GroupSpec {
    GroupSpec::permutations(vec![vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
}

fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
    GroupSpec::product(a, b)
}

/// Every family at orders up to 81.
pub fn full_corpus() -> Vec<NamedGroup> {
    let mut specs = Vec::new();
    for m in [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 25, 27, 30, 32, 64, 81] {
        specs.push(GroupSpec::cyclic(m));
    }
    for f in [
        &[2, 2][..],
        &[4, 2],
        &[2, 2, 2],
        &[3, 3],
        &[6, 2],
        &[4, 4],
        &[8, 2],
        &[2, 2, 2, 2],
        &[12, 2],
        &[9, 3],
        &[3, 3, 3],
        &[5, 5],
        &[8, 8],
        &[9, 9],
        &[27, 3],
        &[3, 3, 3, 3],
    ] {
        specs.push(GroupSpec::abelian(f));
    }
    for m in [3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 32] {
        specs.push(GroupSpec::dihedral(m));
    }
    for k in [3, 4, 5] {
        specs.push(GroupSpec::qd_minus(k));
        specs.push(GroupSpec::qd_plus(k));
    }
    for m in [2, 3, 4, 5, 6, 8, 16] {
        specs.push(GroupSpec::dicyclic(m));
    }
    for p in [2, 3] {
        specs.push(GroupSpec::heisenberg(p));
        specs.push(GroupSpec::modular(p));
    }
    specs.extend([
        product(GroupSpec::dihedral(4), GroupSpec::cyclic(3)),
        product(GroupSpec::dicyclic(2), GroupSpec::cyclic(3)),
        product(GroupSpec::dihedral(3), GroupSpec::cyclic(5)),
        product(GroupSpec::dihedral(5), GroupSpec::cyclic(3)),
        product(GroupSpec::dihedral(4), GroupSpec::cyclic(5)),
        product(GroupSpec::dicyclic(3), GroupSpec::cyclic(2)),
        product(GroupSpec::dihedral(3), GroupSpec::dihedral(3)),
        product(GroupSpec::dihedral(4), GroupSpec::cyclic(2)),
        product(GroupSpec::dicyclic(2), GroupSpec::cyclic(2)),
        product(GroupSpec::heisenberg(3), GroupSpec::cyclic(2)),
    ]);
    let mut out: Vec<NamedGroup> = specs.into_iter().map(NamedGroup::new).collect();
    out.push(NamedGroup::named("A_4", alternating4(), 12));
    out.push(NamedGroup::named("S_4", symmetric4(), 24));
    out
}

pub fn corpus_up_to(max_order: usize) -> Vec<NamedGroup> {
    full_corpus()
        .into_iter()
        .filter(|g| g.order <= max_order)
        .collect()
}

/// Groups whose order is a prime power (including the trivial group).
pub fn p_groups_up_to(max_order: usize) -> Vec<NamedGroup> {
    corpus_up_to(max_order)
        .into_iter()
        .filter(|g| g.order == 1 || prime_power_base(g.order).is_some())
        .collect()
}
