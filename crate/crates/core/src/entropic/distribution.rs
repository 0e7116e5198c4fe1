use std::collections::BTreeMap;

use serde::Serialize;

use super::IndexTable;
use crate::group::{Elem, Group};
use crate::subgroup::{Subgroup, SubgroupTuple};

/// Law of `(X G_1, ..., X G_n)` for `X` uniform on `G`. Atoms are tuples of
/// coset labels (the least element of each coset); masses are exact counts
/// over `|G|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDistribution {
    n: usize,
    group_order: u64,
    support: BTreeMap<Vec<Elem>, u64>,
}

impl JointDistribution {
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn denominator(&self) -> u64 {
        self.group_order
    }

    /// Numerators over [`JointDistribution::denominator`].
    pub fn support(&self) -> &BTreeMap<Vec<Elem>, u64> {
        &self.support
    }

    pub fn marginal(&self, mask: u32) -> BTreeMap<Vec<Elem>, u64> {
        let mut out = BTreeMap::new();
        for (atom, &count) in &self.support {
            let key: Vec<Elem> = (0..self.n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| atom[i])
                .collect();
            *out.entry(key).or_insert(0) += count;
        }
        out
    }

    /// All atoms of the marginal carry the same mass.
    pub fn is_uniform_on_support(&self, mask: u32) -> bool {
        let m = self.marginal(mask);
        let mut counts = m.values();
        let first = counts.next().copied();
        counts.all(|&c| Some(c) == first)
    }

    pub fn entropy(&self, mask: u32, base: f64) -> f64 {
        let total = self.group_order as f64;
        -self
            .marginal(mask)
            .values()
            .map(|&c| {
                let p = c as f64 / total;
                p * p.log(base)
            })
            .sum::<f64>()
    }
}

fn coset_labels(g: &Group, h: &Subgroup) -> Vec<Elem> {
    (0..g.order())
        .map(|x| {
            h.iter()
                .map(|y| g.mul(x, y))
                .min()
                .expect("subgroups are nonempty")
        })
        .collect()
}

pub fn joint_coset_distribution(t: &SubgroupTuple<'_>) -> JointDistribution {
    let g = t.group();
    let labels: Vec<Vec<Elem>> = t.parts().iter().map(|h| coset_labels(g, h)).collect();
    let mut support = BTreeMap::new();
    for x in 0..g.order() {
        let atom: Vec<Elem> = labels.iter().map(|l| l[x]).collect();
        *support.entry(atom).or_insert(0) += 1;
    }
    JointDistribution {
        n: t.arity(),
        group_order: g.order() as u64,
        support,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginalCheck {
    pub mask: u32,
    pub index: u64,
    pub support_size: usize,
    pub entropy: f64,
    pub expected: f64,
    pub quasi_uniform: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub tolerance: f64,
    pub max_deviation: f64,
    pub quasi_uniform: bool,
    pub normalized: bool,
    pub marginals: Vec<MarginalCheck>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.normalized
            && self.quasi_uniform
            && self.max_deviation <= self.tolerance
            && self
                .marginals
                .iter()
                .all(|m| m.support_size as u64 == m.index)
    }
}

/// Compares the Shannon entropy of every marginal of the coset distribution
/// against `log2 [G : G_A]` computed from subgroup intersections.
pub fn verify_theorem(t: &SubgroupTuple<'_>, tol: f64) -> TheoremReport {
    let dist = joint_coset_distribution(t);
    let indices = IndexTable::from_tuple(t);
    let normalized = dist.support.values().sum::<u64>() == dist.group_order;
    let marginals: Vec<MarginalCheck> = indices
        .iter()
        .map(|(mask, index)| {
            let entropy = dist.entropy(mask, 2.0);
            MarginalCheck {
                mask,
                index,
                support_size: dist.marginal(mask).len(),
                entropy,
                expected: (index as f64).log2(),
                quasi_uniform: dist.is_uniform_on_support(mask),
            }
        })
        .collect();
    TheoremReport {
        tolerance: tol,
        max_deviation: marginals
            .iter()
            .map(|m| (m.entropy - m.expected).abs())
            .fold(0.0, f64::max),
        quasi_uniform: marginals.iter().all(|m| m.quasi_uniform),
        normalized,
        marginals,
    }
}
