use serde::Serialize;

use super::abelian::AbelianSpec;
use super::certificate::{
    combine_coprime, CertificateTarget, NonRepresentabilityWitness, RepresentationCertificate,
};
use crate::arith::{exact_log, factorize, is_prime};
use crate::entropic::IndexTable;
use crate::error::{Error, Result};
use crate::group::{Group, DEFAULT_MAX_ORDER};
use crate::subgroup::{intersect, non_nilpotent_witness, sylow_subgroup, SubgroupTuple};

fn check_exponents(i: u32, j: u32, k: u32, m: u32) -> Result<()> {
    if k > i.min(j) || i.max(j) > m {
        return Err(Error::DomainError(format!(
            "need k <= min(i,j) <= max(i,j) <= m, got (i,j,k,m) = ({i},{j},{k},{m})"
        )));
    }
    Ok(())
}

/// `i + j - k <= m` for subgroups of orders `p^i`, `p^j` meeting in `p^k`
/// inside a group of order `p^m`. For p-groups this is exactly the
/// condition for an abelian representation of the pair.
pub fn n2_inequality(i: u32, j: u32, k: u32, m: u32) -> Result<bool> {
    check_exponents(i, j, k, m)?;
    Ok(i + j - k <= m)
}

/// `A = C_p^m` split into coordinate blocks of sizes `k`, `i-k`, `j-k` and
/// the rest; `A_1` spans the first two blocks and `A_2` the first and third.
pub fn n2_elementary_construction(
    p: usize,
    i: u32,
    j: u32,
    k: u32,
    m: u32,
) -> Result<RepresentationCertificate> {
    if !is_prime(p) {
        return Err(Error::DomainError(format!("{p} is not prime")));
    }
    if !n2_inequality(i, j, k, m)? {
        return Err(Error::DomainError(format!(
            "{i} + {j} - {k} > {m}: no elementary construction"
        )));
    }
    let m_us = m as usize;
    let order = p
        .checked_pow(m)
        .ok_or_else(|| Error::DomainError(format!("{p}^{m} overflows")))?;
    let span = |coords: Vec<usize>| -> Vec<usize> {
        let mut out = vec![0usize];
        for c in coords {
            let unit = p.pow((m_us - 1 - c) as u32);
            out = out
                .iter()
                .flat_map(|&x| (0..p).map(move |d| x + d * unit))
                .collect();
        }
        out.sort_unstable();
        out
    };
    let (i, j, k) = (i as usize, j as usize, k as usize);
    let first = span((0..i).collect());
    let second = span((0..k).chain(i..i + j - k).collect());
    let pm = |e: usize| (p as u64).pow((m_us - e) as u32);
    Ok(RepresentationCertificate {
        target: CertificateTarget::abstract_order(order),
        abelian: AbelianSpec::new(vec![p; m_us])?,
        parts: vec![first, second],
        index_table: IndexTable::from_fn(2, |mask| match mask {
            1 => pm(i),
            2 => pm(j),
            _ => pm(k),
        }),
    })
}

/// Outcome of the `n = 2` classification: representable exactly when `G`
/// is nilpotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "classification", rename_all = "snake_case")]
pub enum N2Classification {
    Representable,
    NotRepresentable { witness: NonRepresentabilityWitness },
}

impl N2Classification {
    pub fn is_representable(&self) -> bool {
        matches!(self, N2Classification::Representable)
    }
}

pub fn classify_n2(g: &Group) -> Result<N2Classification> {
    classify_n2_bounded(g, DEFAULT_MAX_ORDER)
}

pub fn classify_n2_bounded(g: &Group, bound: usize) -> Result<N2Classification> {
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            what: "group order",
            size: g.order(),
            bound,
        });
    }
    Ok(match non_nilpotent_witness(g) {
        None => N2Classification::Representable,
        Some(w) => N2Classification::NotRepresentable {
            witness: NonRepresentabilityWitness::from_subgroups(
                g,
                (1, 2),
                &w.sylow,
                &w.conjugate,
                &w.intersection,
            ),
        },
    })
}

/// Certificate for a pair in a nilpotent group, assembled prime by prime
/// from the elementary construction on each Sylow subgroup.
pub fn n2_certificate(t: &SubgroupTuple<'_>) -> Result<RepresentationCertificate> {
    if t.arity() != 2 {
        return Err(Error::ArityMismatch(2, t.arity()));
    }
    let g = t.group();
    if non_nilpotent_witness(g).is_some() {
        return Err(Error::DomainError(format!("{} is not nilpotent", g.name())));
    }
    let mut cert = RepresentationCertificate {
        target: CertificateTarget::abstract_order(1),
        abelian: AbelianSpec::trivial(),
        parts: vec![vec![0], vec![0]],
        index_table: IndexTable::from_fn(2, |_| 1),
    };
    let log = |p: usize, n: usize| exact_log(p, n).expect("p-subgroup order");
    for (p, m) in factorize(g.order()) {
        let s = sylow_subgroup(g, p)?;
        let meet = |mask: u32| intersect(&t.intersection(mask), &s).map(|h| log(p, h.size()));
        let local = n2_elementary_construction(p, meet(1)?, meet(2)?, meet(3)?, m)?;
        cert = combine_coprime(&cert, &local)?;
    }
    let cert = cert.attach_target(t)?;
    cert.verify_for(t)?;
    Ok(cert)
}
