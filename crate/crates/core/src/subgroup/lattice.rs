use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::{generated_subgroup, Subgroup};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::{Elem, Group, DEFAULT_MAX_ORDER};

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    pub max_order: usize,
    pub exec: Execution,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_order: DEFAULT_MAX_ORDER,
            exec: Execution::default(),
        }
    }
}

/// All subgroups of `g`, each once, sorted by size then member list.
pub fn enumerate_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_with(g, EnumerateOptions::default())
}

/// Every subgroup is a join of cyclic subgroups, so starting from the cyclic
/// ones and joining each newly found subgroup with every cyclic subgroup
/// until nothing new appears reaches the whole lattice.
pub fn enumerate_subgroups_with(g: &Group, opts: EnumerateOptions) -> Result<Vec<Subgroup>> {
    if g.order() > opts.max_order {
        return Err(Error::BoundExceeded {
            what: "group order",
            size: g.order(),
            bound: opts.max_order,
        });
    }

    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut cyclic: Vec<(Subgroup, Elem)> = Vec::new();
    for x in 0..g.order() {
        let c = generated_subgroup(g, &[x]);
        if seen.insert(c.bits().clone()) {
            cyclic.push((c, x));
        }
    }

    let mut found: Vec<Subgroup> = cyclic.iter().map(|(c, _)| c.clone()).collect();
    let mut frontier: Vec<(Subgroup, Vec<Elem>)> =
        cyclic.iter().map(|(c, x)| (c.clone(), vec![*x])).collect();

    while !frontier.is_empty() {
        let joins = opts.exec.map(&frontier, |(h, gens)| {
            let mut local: HashSet<FixedBitSet> = HashSet::new();
            let mut out = Vec::new();
            for (c, x) in &cyclic {
                if c.is_subset(h) || h.is_subset(c) {
                    continue;
                }
                let mut next_gens = gens.clone();
                next_gens.push(*x);
                let j = generated_subgroup(g, &next_gens);
                if local.insert(j.bits().clone()) {
                    out.push((j, next_gens));
                }
            }
            out
        });
        frontier = Vec::new();
        for (j, gens) in joins.into_iter().flatten() {
            if seen.insert(j.bits().clone()) {
                found.push(j.clone());
                frontier.push((j, gens));
            }
        }
    }

    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::divisors;
    use crate::group::{build_group, GroupSpec};
    use crate::subgroup::{intersect, is_subgroup_set};

    /// Brute force over all subsets; only viable for tiny groups.
    fn brute_force(g: &Group) -> Vec<Vec<Elem>> {
        let n = g.order();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let mut bits = FixedBitSet::with_capacity(n);
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    bits.insert(i);
                }
            }
            if is_subgroup_set(g, &bits) {
                out.push(bits.ones().collect::<Vec<_>>());
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn matches_subset_brute_force() {
        for spec in [
            GroupSpec::dicyclic(2),
            GroupSpec::dihedral(4),
            GroupSpec::dihedral(3),
            GroupSpec::abelian(&[2, 2, 2]),
            GroupSpec::cyclic(12),
            GroupSpec::dihedral(6),
        ] {
            let g = build_group(&spec).unwrap();
            let lattice: Vec<Vec<Elem>> = enumerate_subgroups(&g)
                .unwrap()
                .iter()
                .map(Subgroup::members)
                .collect();
            assert_eq!(lattice, brute_force(&g), "{spec}");
        }
    }

    #[test]
    fn q8_lattice() {
        let q8 = build_group(&GroupSpec::dicyclic(2)).unwrap();
        let subs = enumerate_subgroups(&q8).unwrap();
        let sizes: Vec<usize> = subs.iter().map(Subgroup::size).collect();
        assert_eq!(sizes, vec![1, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn cyclic_counts_are_divisor_counts() {
        for m in [1, 2, 7, 12, 30, 64] {
            let g = build_group(&GroupSpec::cyclic(m)).unwrap();
            assert_eq!(enumerate_subgroups(&g).unwrap().len(), divisors(m).len());
        }
    }

    #[test]
    fn lattice_closed_under_intersection() {
        let g = build_group(&GroupSpec::dihedral(12)).unwrap();
        let subs = enumerate_subgroups(&g).unwrap();
        let set: HashSet<&Subgroup> = subs.iter().collect();
        for a in &subs {
            for b in &subs {
                assert!(set.contains(&intersect(a, b).unwrap()));
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = build_group(&GroupSpec::qd_plus(4)).unwrap();
        let seq = enumerate_subgroups_with(
            &g,
            EnumerateOptions {
                exec: Execution::Sequential,
                ..Default::default()
            },
        )
        .unwrap();
        let par = enumerate_subgroups_with(
            &g,
            EnumerateOptions {
                exec: Execution::Parallel,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn bound_is_enforced() {
        let g = build_group(&GroupSpec::cyclic(64)).unwrap();
        let opts = EnumerateOptions {
            max_order: 32,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_subgroups_with(&g, opts),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
