use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::abelian::{
    abelian_invariants, abelian_lattice, enumerate_abelian_specs_bounded, AbelianLattice,
    AbelianSpec,
};
use super::certificate::{CertificateTarget, RepresentationCertificate};
use crate::entropic::IndexTable;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::DEFAULT_MAX_ORDER;
use crate::subgroup::{EnumerateOptions, SubgroupTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Candidate abelian orders are `c |G|` for each multiplier `c`.
    pub multipliers: Vec<usize>,
    /// Largest abelian order the search may build.
    pub max_order: usize,
    pub exec: Execution,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            multipliers: vec![1],
            max_order: DEFAULT_MAX_ORDER,
            exec: Execution::default(),
        }
    }
}

impl SearchOptions {
    pub fn with_multipliers(multipliers: &[usize]) -> Self {
        SearchOptions {
            multipliers: multipliers.to_vec(),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        certificate: RepresentationCertificate,
    },
    /// Nothing matched in any abelian group of the listed orders.
    NotFound {
        searched_orders: Vec<usize>,
        specs_searched: usize,
    },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&RepresentationCertificate> {
        match self {
            SearchOutcome::Found { certificate } => Some(certificate),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn into_certificate(self) -> Option<RepresentationCertificate> {
        match self {
            SearchOutcome::Found { certificate } => Some(certificate),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

/// Exhaustive search for `(A, A_1, ..., A_n)` with the same index table as
/// `t`. Abelian groups are tried per multiplier in canonical order (the
/// group's own type first when it is abelian), subgroups in lattice order.
/// A single subgroup goes to the cyclic group first.
/// Each `A_i` is chosen among subgroups of the right index, and every mask
/// whose highest part is `i` is checked before going deeper.
pub fn find_abelian_representation(
    t: &SubgroupTuple<'_>,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if opts.multipliers.is_empty() || opts.multipliers.contains(&0) {
        return Err(Error::InvalidParameter(
            "multipliers must be positive".into(),
        ));
    }
    let g = t.group();
    let target = IndexTable::from_tuple(t);
    let own = abelian_invariants(g);
    let mut searched_orders = Vec::new();
    let mut specs_searched = 0;
    let orders = opts
        .multipliers
        .iter()
        .map(|&c| match c.checked_mul(g.order()) {
            Some(order) if order <= opts.max_order => Ok((c, order)),
            other => Err(Error::BoundExceeded {
                what: "abelian search order",
                size: other.unwrap_or(usize::MAX),
                bound: opts.max_order,
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    for (c, order) in orders {
        let mut specs = enumerate_abelian_specs_bounded(order, opts.max_order)?;
        // a single subgroup is always represented inside the cyclic group
        let preferred = match (&own, c) {
            (Some(own), 1) => Some(own.clone()),
            _ if t.arity() == 1 => specs.last().cloned(),
            _ => None,
        };
        if let Some(pos) = preferred.and_then(|p| specs.iter().position(|s| *s == p)) {
            let first = specs.remove(pos);
            specs.insert(0, first);
        }
        searched_orders.push(order);
        for spec in specs {
            specs_searched += 1;
            if let Some(parts) = search_in(&spec, &target, opts.exec)? {
                let certificate = RepresentationCertificate {
                    target: CertificateTarget::from_tuple(t),
                    abelian: spec,
                    parts,
                    index_table: target,
                };
                certificate.verify_for(t)?;
                return Ok(SearchOutcome::Found { certificate });
            }
        }
    }
    Ok(SearchOutcome::NotFound {
        searched_orders,
        specs_searched,
    })
}

/// Searches one abelian group; returns member lists of the first match.
pub fn search_in(
    spec: &AbelianSpec,
    target: &IndexTable,
    exec: Execution,
) -> Result<Option<Vec<Vec<usize>>>> {
    let lattice = abelian_lattice(
        spec,
        EnumerateOptions {
            exec,
            max_order: usize::MAX,
        },
    )?;
    let order = spec.order() as u64;
    let n = target.arity();
    // subgroups grouped by index
    let mut by_index: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (pos, h) in lattice.subgroups.iter().enumerate() {
        by_index
            .entry(order / h.size() as u64)
            .or_default()
            .push(pos);
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            by_index
                .get(&target.get(1 << i))
                .cloned()
                .unwrap_or_default()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let found = exec.find_map_first(&candidates[0], |&first| {
        let mut state = Dfs {
            lattice: &lattice,
            target,
            order,
            candidates: &candidates,
            chosen: vec![first],
            meets: vec![lattice.subgroups[first].bits().clone()],
        };
        state.descend().then_some(state.chosen)
    });
    Ok(found.map(|chosen| {
        chosen
            .into_iter()
            .map(|pos| lattice.subgroups[pos].members())
            .collect()
    }))
}

struct Dfs<'a> {
    lattice: &'a AbelianLattice,
    target: &'a IndexTable,
    order: u64,
    candidates: &'a [Vec<usize>],
    chosen: Vec<usize>,
    /// `meets[m - 1]` is the intersection for mask `m` over the chosen parts.
    meets: Vec<FixedBitSet>,
}

impl Dfs<'_> {
    fn descend(&mut self) -> bool {
        let i = self.chosen.len();
        if i == self.candidates.len() {
            return true;
        }
        let bit = 1u32 << i;
        for &pos in &self.candidates[i] {
            let h = self.lattice.subgroups[pos].bits();
            let mut fresh = Vec::with_capacity(bit as usize - 1);
            let ok = (1..bit).all(|m| {
                let mut meet = self.meets[m as usize - 1].clone();
                meet.intersect_with(h);
                let index = self.order / meet.count_ones(..) as u64;
                fresh.push(meet);
                index == self.target.get(m | bit)
            });
            if !ok {
                continue;
            }
            let base = self.meets.len();
            self.meets.push(h.clone());
            self.meets.extend(fresh);
            self.chosen.push(pos);
            if self.descend() {
                return true;
            }
            self.chosen.pop();
            self.meets.truncate(base);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, Group, GroupSpec};
    use crate::represent::certificate::necessary_divisibility;
    use crate::subgroup::{enumerate_subgroups, generated_subgroup, TuplePolicy};

    fn tuple<'g>(g: &'g Group, gens: &[&[usize]]) -> SubgroupTuple<'g> {
        let parts = gens.iter().map(|x| generated_subgroup(g, x)).collect();
        SubgroupTuple::new(g, parts).unwrap()
    }

    #[test]
    fn q8_triple_lands_in_elementary_group() {
        let q8 = build_group(&GroupSpec::dicyclic(2)).unwrap();
        // a, x, a x
        let t = tuple(&q8, &[&[1], &[4], &[5]]);
        let cert = find_abelian_representation(&t, &SearchOptions::default())
            .unwrap()
            .into_certificate()
            .unwrap();
        assert_eq!(cert.abelian.factors(), &[2, 2, 2]);
        assert_eq!(cert.index_table.values(), &[2, 2, 4, 2, 4, 4, 4]);
        assert!(cert.parts.iter().all(|p| p.len() == 4));
        cert.verify().unwrap();
    }

    #[test]
    fn d3_reflections_have_no_representation() {
        let d3 = build_group(&GroupSpec::dihedral(3)).unwrap();
        let t = tuple(&d3, &[&[3], &[5]]);
        assert!(necessary_divisibility(&t, false).is_some());
        let out =
            find_abelian_representation(&t, &SearchOptions::with_multipliers(&[1, 2, 3])).unwrap();
        assert_eq!(
            out,
            SearchOutcome::NotFound {
                searched_orders: vec![6, 12, 18],
                specs_searched: 1 + 2 + 2
            }
        );
    }

    #[test]
    fn abelian_groups_represent_themselves() {
        let z = build_group(&GroupSpec::abelian(&[4, 2])).unwrap();
        for a in enumerate_subgroups(&z).unwrap() {
            for b in enumerate_subgroups(&z).unwrap() {
                let t = SubgroupTuple::with_policy(
                    &z,
                    vec![a.clone(), b.clone()],
                    TuplePolicy {
                        allow_improper: true,
                    },
                )
                .unwrap();
                let cert = find_abelian_representation(&t, &SearchOptions::default())
                    .unwrap()
                    .into_certificate()
                    .unwrap();
                assert_eq!(cert.abelian.factors(), &[4, 2]);
            }
        }
    }

    #[test]
    fn single_part_uses_cyclic_base_case() {
        let s3 = build_group(&GroupSpec::dihedral(3)).unwrap();
        let t = tuple(&s3, &[&[3]]);
        let cert = find_abelian_representation(&t, &SearchOptions::default())
            .unwrap()
            .into_certificate()
            .unwrap();
        assert_eq!(cert.index_table.values(), &[3]);
        assert_eq!(cert.abelian.factors(), &[6]);
        let q8 = build_group(&GroupSpec::dicyclic(2)).unwrap();
        let t = tuple(&q8, &[&[1]]);
        let cert = find_abelian_representation(&t, &SearchOptions::default()).unwrap();
        let cert = cert.certificate().unwrap();
        assert_eq!(cert.abelian.factors(), &[8]);
        cert.verify().unwrap();
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = build_group(&GroupSpec::product(
            GroupSpec::dihedral(4),
            GroupSpec::cyclic(2),
        ))
        .unwrap();
        let subs = enumerate_subgroups(&g).unwrap();
        let t = SubgroupTuple::new(&g, vec![subs[3].clone(), subs[7].clone(), subs[12].clone()])
            .unwrap();
        let seq = find_abelian_representation(
            &t,
            &SearchOptions {
                exec: Execution::Sequential,
                ..Default::default()
            },
        )
        .unwrap();
        let par = find_abelian_representation(
            &t,
            &SearchOptions {
                exec: Execution::Parallel,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn bound_and_multiplier_errors() {
        let z = build_group(&GroupSpec::cyclic(8)).unwrap();
        let t = tuple(&z, &[&[2]]);
        let opts = SearchOptions {
            multipliers: vec![1, 100],
            ..Default::default()
        };
        assert!(matches!(
            find_abelian_representation(&t, &opts),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(find_abelian_representation(&t, &SearchOptions::with_multipliers(&[0])).is_err());
    }
}
