use serde::{Deserialize, Serialize};

use super::abelian::{abelian_group, AbelianSpec};
use crate::arith::gcd;
use crate::entropic::IndexTable;
use crate::error::{Error, Result};
use crate::group::{build_group_bounded, Elem, Group, GroupSpec};
use crate::subgroup::{Subgroup, SubgroupTuple, TuplePolicy};

/// The `G` side of a certificate. Abstract targets (from the exponent
/// constructions) only carry an order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTarget {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    pub order: usize,
    #[serde(default)]
    pub subgroups: Vec<Vec<Elem>>,
}

impl CertificateTarget {
    pub fn abstract_order(order: usize) -> Self {
        CertificateTarget {
            group: None,
            order,
            subgroups: Vec::new(),
        }
    }

    pub fn from_tuple(t: &SubgroupTuple<'_>) -> Self {
        CertificateTarget {
            group: t.group().spec().cloned(),
            order: t.group().order(),
            subgroups: t.parts().iter().map(Subgroup::members).collect(),
        }
    }

    pub fn is_abstract(&self) -> bool {
        self.group.is_none() && self.subgroups.is_empty()
    }
}

/// `(A, A_1, ..., A_n)` representing `(G, G_1, ..., G_n)`: the subgroup
/// `parts[i]` of `A` (as member indices in the mixed-radix encoding of
/// `abelian`) matches `G_i`, and every intersection index agrees with
/// `index_table`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationCertificate {
    pub target: CertificateTarget,
    pub abelian: AbelianSpec,
    pub parts: Vec<Vec<Elem>>,
    pub index_table: IndexTable,
}

/// What [`RepresentationCertificate::verify`] was able to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub arity: usize,
    pub abelian_order: usize,
    pub target_checked: bool,
}

fn index_table_of(g: &Group, parts: &[Vec<Elem>], what: &str) -> Result<IndexTable> {
    let subgroups = parts
        .iter()
        .enumerate()
        .map(|(i, m)| {
            Subgroup::from_members(g, m.iter().copied()).map_err(|e| {
                Error::CertificateMismatch(format!("{what} part {i} is not a subgroup: {e}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let policy = TuplePolicy {
        allow_improper: true,
    };
    let t = SubgroupTuple::with_policy(g, subgroups, policy)?;
    Ok(IndexTable::from_tuple(&t))
}

fn compare(found: &IndexTable, claimed: &IndexTable, side: &str) -> Result<()> {
    if found.arity() != claimed.arity() {
        return Err(Error::ArityMismatch(claimed.arity(), found.arity()));
    }
    for (mask, want) in claimed.iter() {
        let got = found.get(mask);
        if got != want {
            return Err(Error::CertificateMismatch(format!(
                "{side} index at mask {mask} is {got}, certificate claims {want}"
            )));
        }
    }
    Ok(())
}

impl RepresentationCertificate {
    pub fn arity(&self) -> usize {
        self.index_table.arity()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Recomputes the abelian side from scratch against a prebuilt `A`.
    pub fn check_abelian_side(&self, a: &Group) -> Result<()> {
        if self.parts.len() != self.arity() {
            return Err(Error::ArityMismatch(self.arity(), self.parts.len()));
        }
        if a.order() != self.abelian.order() {
            return Err(Error::CertificateMismatch(format!(
                "abelian group has order {}, spec says {}",
                a.order(),
                self.abelian.order()
            )));
        }
        let table = index_table_of(a, &self.parts, "abelian")?;
        compare(&table, &self.index_table, "abelian")
    }

    /// Checks the target side against an in-memory tuple: same members,
    /// same recomputed indices.
    pub fn check_target(&self, t: &SubgroupTuple<'_>) -> Result<()> {
        if t.group().order() != self.target.order {
            return Err(Error::CertificateMismatch(format!(
                "target order {} differs from group order {}",
                self.target.order,
                t.group().order()
            )));
        }
        if !self.target.subgroups.is_empty() {
            let members: Vec<Vec<Elem>> = t.parts().iter().map(Subgroup::members).collect();
            if members != self.target.subgroups {
                return Err(Error::CertificateMismatch(
                    "target subgroups differ from the tuple".into(),
                ));
            }
        }
        compare(&IndexTable::from_tuple(t), &self.index_table, "target")
    }

    /// Full independent re-check. The target side is rebuilt from its
    /// spec when present; abstract targets only check the abelian side.
    pub fn verify(&self) -> Result<CheckSummary> {
        let a = abelian_group(&self.abelian)?;
        self.check_abelian_side(&a)?;
        let target_checked = match &self.target.group {
            Some(spec) => {
                let g = build_group_bounded(spec, usize::MAX)?;
                if g.order() != self.target.order {
                    return Err(Error::CertificateMismatch(format!(
                        "target spec builds order {}, certificate says {}",
                        g.order(),
                        self.target.order
                    )));
                }
                if self.target.subgroups.len() != self.arity() {
                    return Err(Error::ArityMismatch(
                        self.arity(),
                        self.target.subgroups.len(),
                    ));
                }
                let table = index_table_of(&g, &self.target.subgroups, "target")?;
                compare(&table, &self.index_table, "target")?;
                true
            }
            None => false,
        };
        Ok(CheckSummary {
            arity: self.arity(),
            abelian_order: self.abelian.order(),
            target_checked,
        })
    }

    /// Re-checks the abelian side and compares against `t`.
    pub fn verify_for(&self, t: &SubgroupTuple<'_>) -> Result<()> {
        let a = abelian_group(&self.abelian)?;
        self.check_abelian_side(&a)?;
        self.check_target(t)
    }

    /// Re-labels the certificate as one for `t`; the index tables must agree.
    pub fn attach_target(mut self, t: &SubgroupTuple<'_>) -> Result<Self> {
        compare(&IndexTable::from_tuple(t), &self.index_table, "target")?;
        self.target = CertificateTarget::from_tuple(t);
        Ok(self)
    }
}

/// Two subgroups violating `i_12 | i_1 i_2`. For disjoint mask pairs the
/// "subgroups" are intersections `G_A`, `G_B` of tuple parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonRepresentabilityWitness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    pub order: usize,
    pub masks: (u32, u32),
    pub first: Vec<Elem>,
    pub second: Vec<Elem>,
    pub intersection: Vec<Elem>,
    pub indices: (u64, u64, u64),
}

impl NonRepresentabilityWitness {
    pub(crate) fn from_subgroups(
        g: &Group,
        masks: (u32, u32),
        a: &Subgroup,
        b: &Subgroup,
        ab: &Subgroup,
    ) -> Self {
        let n = g.order() as u64;
        NonRepresentabilityWitness {
            group: g.spec().cloned(),
            order: g.order(),
            masks,
            first: a.members(),
            second: b.members(),
            intersection: ab.members(),
            indices: (
                n / a.size() as u64,
                n / b.size() as u64,
                n / ab.size() as u64,
            ),
        }
    }

    /// The arithmetic fact that rules out any abelian representation.
    pub fn is_sound(&self) -> bool {
        let (i1, i2, i12) = self.indices;
        i12 == 0 || (u128::from(i1) * u128::from(i2)) % u128::from(i12) != 0
    }

    /// Rebuilds the group and recomputes the indices from the member lists.
    pub fn verify(&self) -> Result<()> {
        let spec = self
            .group
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("witness has no group spec".into()))?;
        let g = build_group_bounded(spec, usize::MAX)?;
        let a = Subgroup::from_members(&g, self.first.iter().copied())?;
        let b = Subgroup::from_members(&g, self.second.iter().copied())?;
        let ab = crate::subgroup::intersect(&a, &b)?;
        let recomputed = Self::from_subgroups(&g, self.masks, &a, &b, &ab);
        if recomputed.indices != self.indices || recomputed.intersection != self.intersection {
            return Err(Error::CertificateMismatch(
                "witness indices do not recompute".into(),
            ));
        }
        if !self.is_sound() {
            return Err(Error::CertificateMismatch(format!(
                "{} divides {}",
                self.indices.2,
                self.indices.0 * self.indices.1
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }
}

/// Checks `i_{A∪B} | i_A i_B` for singleton pairs, or for all disjoint
/// mask pairs when `strengthened`; returns the first violation.
pub fn necessary_divisibility(
    t: &SubgroupTuple<'_>,
    strengthened: bool,
) -> Option<NonRepresentabilityWitness> {
    let n = t.arity() as u32;
    let full = (1u32 << n) - 1;
    let pairs: Vec<(u32, u32)> = if strengthened {
        (1..=full)
            .flat_map(|a| {
                (a + 1..=full)
                    .filter(move |b| a & b == 0)
                    .map(move |b| (a, b))
            })
            .collect()
    } else {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (1 << i, 1 << j)))
            .collect()
    };
    pairs.into_iter().find_map(|(a, b)| {
        let (ia, ib, iab) = (t.index(a), t.index(b), t.index(a | b));
        ((ia * ib) % iab != 0).then(|| {
            NonRepresentabilityWitness::from_subgroups(
                t.group(),
                (a, b),
                &t.intersection(a),
                &t.intersection(b),
                &t.intersection(a | b),
            )
        })
    })
}

/// `A` is the group itself when `G` is given as cyclic or an abelian product.
pub fn self_certificate(t: &SubgroupTuple<'_>) -> Result<RepresentationCertificate> {
    let factors: Vec<usize> = match t.group().spec() {
        Some(GroupSpec::Cyclic { m }) => vec![*m],
        Some(GroupSpec::AbelianProduct { factors }) => factors.clone(),
        _ => {
            return Err(Error::InvalidParameter(
                "self certificates need a cyclic or abelian_product group".into(),
            ))
        }
    };
    let abelian = AbelianSpec::new(factors.into_iter().filter(|&d| d > 1).collect())?;
    let cert = RepresentationCertificate {
        target: CertificateTarget::from_tuple(t),
        abelian,
        parts: t.parts().iter().map(Subgroup::members).collect(),
        index_table: IndexTable::from_tuple(t),
    };
    cert.verify_for(t)?;
    Ok(cert)
}

fn product_members(left: &[Elem], right: &[Elem], right_order: usize) -> Vec<Elem> {
    let mut out: Vec<Elem> = left
        .iter()
        .flat_map(|&x| right.iter().map(move |&y| x * right_order + y))
        .collect();
    out.sort_unstable();
    out
}

/// `(A x B, A_i x B_i)` representing `(G x H, G_i x H_i)` for coprime
/// `|G|`, `|H|`.
pub fn combine_coprime(
    g: &RepresentationCertificate,
    h: &RepresentationCertificate,
) -> Result<RepresentationCertificate> {
    if g.arity() != h.arity() {
        return Err(Error::ArityMismatch(g.arity(), h.arity()));
    }
    if gcd(g.target.order, h.target.order) != 1 {
        return Err(Error::NotCoprime(g.target.order, h.target.order));
    }
    let b_order = h.abelian.order();
    let parts = g
        .parts
        .iter()
        .zip(&h.parts)
        .map(|(x, y)| product_members(x, y, b_order))
        .collect();
    let index_table = g
        .index_table
        .multiply(&h.index_table)
        .expect("arity checked above");
    let subgroups = if g.target.subgroups.is_empty() || h.target.subgroups.is_empty() {
        Vec::new()
    } else {
        g.target
            .subgroups
            .iter()
            .zip(&h.target.subgroups)
            .map(|(x, y)| product_members(x, y, h.target.order))
            .collect()
    };
    let group = match (&g.target.group, &h.target.group) {
        (Some(l), Some(r)) if !subgroups.is_empty() => {
            Some(GroupSpec::product(l.clone(), r.clone()))
        }
        _ => None,
    };
    Ok(RepresentationCertificate {
        target: CertificateTarget {
            group,
            order: g.target.order * h.target.order,
            subgroups,
        },
        abelian: g.abelian.product(&h.abelian),
        parts,
        index_table,
    })
}
