use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::certificate::{CertificateTarget, RepresentationCertificate};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::{build_group, Elem, Group, GroupSpec};
use crate::subgroup::{
    enumerate_subgroups_with, is_subgroup_set, EnumerateOptions, Subgroup, SubgroupTuple,
    TuplePolicy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BijectionFamily {
    /// `D_{2^k} -> Z_2^{k+1}` via the binary digits of the rotation exponent.
    Dihedral2k,
    /// `QD-_{2^k} -> D_{2^k}`, same normal form.
    QdMinus,
    /// `QD+_{2^k} -> D_{2^k}`, same normal form.
    QdPlus,
    /// `DiC_{2^{k-1}} -> D_{2^k}`, `a^i x^j -> r^i s^j`.
    Dicyclic2k,
}

impl BijectionFamily {
    pub const ALL: [BijectionFamily; 4] = [
        BijectionFamily::Dihedral2k,
        BijectionFamily::QdMinus,
        BijectionFamily::QdPlus,
        BijectionFamily::Dicyclic2k,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BijectionFamily::Dihedral2k => "dihedral2k",
            BijectionFamily::QdMinus => "qd_minus",
            BijectionFamily::QdPlus => "qd_plus",
            BijectionFamily::Dicyclic2k => "dicyclic2k",
        }
    }

    fn min_k(self) -> u32 {
        match self {
            BijectionFamily::QdMinus | BijectionFamily::QdPlus => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for BijectionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BijectionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown bijection family {s:?}")))
    }
}

/// An element-index pairing between two built groups of equal order.
#[derive(Debug, Clone)]
pub struct Bijection {
    pub source: Group,
    pub target: Group,
    pub map: Vec<Elem>,
}

impl Bijection {
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `psi(H)` as a subgroup of the target, if it is one.
    pub fn image(&self, h: &Subgroup) -> Result<Subgroup> {
        h.check_parent(&self.source)?;
        Subgroup::from_members(&self.target, h.iter().map(|x| self.map[x]))
    }

    pub fn image_tuple(&self, t: &SubgroupTuple<'_>) -> Result<SubgroupTuple<'_>> {
        let parts = t
            .parts()
            .iter()
            .map(|h| self.image(h))
            .collect::<Result<Vec<_>>>()?;
        SubgroupTuple::with_policy(
            &self.target,
            parts,
            TuplePolicy {
                allow_improper: true,
            },
        )
    }

    /// `next . self`, from this source to `next`'s target.
    pub fn then(&self, next: &Bijection) -> Result<Bijection> {
        if self.target != next.source {
            return Err(Error::InvalidParameter("bijections do not chain".into()));
        }
        Ok(Bijection {
            source: self.source.clone(),
            target: next.target.clone(),
            map: compose(&self.map, &next.map),
        })
    }
}

/// `x -> second[first[x]]`.
pub fn compose(first: &[Elem], second: &[Elem]) -> Vec<Elem> {
    first.iter().map(|&x| second[x]).collect()
}

pub fn builtin_bijection(family: BijectionFamily, k: u32) -> Result<Bijection> {
    if k < family.min_k() || k > 20 {
        return Err(Error::InvalidParameter(format!(
            "{family} needs {} <= k <= 20, got {k}",
            family.min_k()
        )));
    }
    let n = 1usize << k;
    let dihedral = GroupSpec::dihedral(n);
    let (source, target) = match family {
        BijectionFamily::Dihedral2k => (dihedral, GroupSpec::abelian(&vec![2; k as usize + 1])),
        BijectionFamily::QdMinus => (GroupSpec::qd_minus(k), dihedral),
        BijectionFamily::QdPlus => (GroupSpec::qd_plus(k), dihedral),
        BijectionFamily::Dicyclic2k => (GroupSpec::dicyclic(n / 2), dihedral),
    };
    let source = build_group(&source)?;
    let target = build_group(&target)?;
    let map = match family {
        // r^a s^j sits at a + n j; e_i (bit i of a) is coordinate i of
        // Z_2^{k+1}, most significant first, and s goes to e_k.
        BijectionFamily::Dihedral2k => (0..2 * n)
            .map(|x| {
                let (a, j) = (x % n, x / n);
                let bits: usize = (0..k as usize)
                    .filter(|i| a >> i & 1 == 1)
                    .map(|i| 1 << (k as usize - i))
                    .sum();
                bits + j
            })
            .collect(),
        _ => (0..2 * n).collect(),
    };
    Ok(Bijection {
        source,
        target,
        map,
    })
}

/// Result of checking that a pairing sends subgroups to subgroups.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub bijective: bool,
    pub subgroups_checked: usize,
    pub pairs_checked: usize,
    /// Member lists (in `G`) of subgroups whose image is not a subgroup.
    pub non_subgroup_images: Vec<Vec<Elem>>,
    /// Lattice positions `(a, b)` where `psi(S_a ∩ S_b) != psi(S_a) ∩ psi(S_b)`.
    pub intersection_failures: Vec<(usize, usize)>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.bijective
            && self.non_subgroup_images.is_empty()
            && self.intersection_failures.is_empty()
    }
}

pub fn verify_subgroup_preserving(
    map: &[Elem],
    g: &Group,
    h: &Group,
) -> Result<PreservationReport> {
    verify_subgroup_preserving_with(map, g, h, Execution::default())
}

pub fn verify_subgroup_preserving_with(
    map: &[Elem],
    g: &Group,
    h: &Group,
    exec: Execution,
) -> Result<PreservationReport> {
    let n = g.order();
    let mut report = PreservationReport::default();
    let mut seen = FixedBitSet::with_capacity(n);
    if map.len() != n || h.order() != n || map.iter().any(|&y| y >= n) {
        return Ok(report);
    }
    map.iter().for_each(|&y| seen.insert(y));
    report.bijective = seen.is_full();
    if !report.bijective {
        return Ok(report);
    }
    let subs = enumerate_subgroups_with(
        g,
        EnumerateOptions {
            exec,
            ..Default::default()
        },
    )?;
    let image = |s: &FixedBitSet| {
        let mut out = FixedBitSet::with_capacity(n);
        s.ones().for_each(|x| out.insert(map[x]));
        out
    };
    let images: Vec<FixedBitSet> = exec.map(&subs, |s| image(s.bits()));
    report.subgroups_checked = subs.len();
    report.non_subgroup_images = subs
        .iter()
        .zip(&images)
        .filter(|(_, img)| !is_subgroup_set(h, img))
        .map(|(s, _)| s.members())
        .collect();
    let rows: Vec<usize> = (0..subs.len()).collect();
    let failures: Vec<Vec<(usize, usize)>> = exec.map(&rows, |&a| {
        (a..subs.len())
            .filter(|&b| {
                let mut meet = subs[a].bits().clone();
                meet.intersect_with(subs[b].bits());
                let mut both = images[a].clone();
                both.intersect_with(&images[b]);
                image(&meet) != both
            })
            .map(|b| (a, b))
            .collect()
    });
    report.pairs_checked = subs.len() * (subs.len() + 1) / 2;
    report.intersection_failures = failures.into_iter().flatten().collect();
    Ok(report)
}

/// Re-labels a certificate for `(H, psi(G_1), ...)` as one for `t`.
pub fn transfer_representation(
    map: &[Elem],
    t: &SubgroupTuple<'_>,
    cert_for_h: &RepresentationCertificate,
) -> Result<RepresentationCertificate> {
    let g = t.group();
    if map.len() != g.order() || cert_for_h.target.order != g.order() {
        return Err(Error::CertificateMismatch(format!(
            "pairing of length {} and certificate for order {} do not fit a group of order {}",
            map.len(),
            cert_for_h.target.order,
            g.order()
        )));
    }
    let images: Vec<Vec<Elem>> = t
        .parts()
        .iter()
        .map(|h| {
            let mut img: Vec<Elem> = h.iter().map(|x| map[x]).collect();
            img.sort_unstable();
            img
        })
        .collect();
    if images != cert_for_h.target.subgroups {
        return Err(Error::CertificateMismatch(
            "certificate tuple is not the image of the given tuple".into(),
        ));
    }
    let cert = RepresentationCertificate {
        target: CertificateTarget::from_tuple(t),
        ..cert_for_h.clone()
    };
    cert.verify_for(t)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::represent::certificate::self_certificate;
    use crate::subgroup::generated_subgroup;

    #[test]
    fn dihedral_binary_digits() {
        let b = builtin_bijection(BijectionFamily::Dihedral2k, 2).unwrap();
        assert_eq!(b.source.label(7), "r^3 s");
        assert_eq!(b.apply(7), 7);
        assert_eq!(b.apply(0), 0);
        // r -> e_0, r^2 -> e_1, s -> e_2
        assert_eq!((b.apply(1), b.apply(2), b.apply(4)), (4, 2, 1));
        for k in 2..=4 {
            let b = builtin_bijection(BijectionFamily::Dihedral2k, k).unwrap();
            let r = verify_subgroup_preserving(&b.map, &b.source, &b.target).unwrap();
            assert!(r.passed(), "k = {k}: {r:?}");
        }
    }

    #[test]
    fn dicyclic_square_of_x() {
        let b = builtin_bijection(BijectionFamily::Dicyclic2k, 3).unwrap();
        let x = b.source.find_label("x").unwrap();
        let a4 = b.source.find_label("a^4").unwrap();
        assert_eq!(b.source.mul(x, x), a4);
        assert_eq!(b.target.label(b.apply(a4)), "r^4");
    }

    #[test]
    fn identity_and_scrambled_pairings() {
        let d4 = build_group(&GroupSpec::dihedral(4)).unwrap();
        let id: Vec<Elem> = (0..8).collect();
        assert!(verify_subgroup_preserving(&id, &d4, &d4).unwrap().passed());
        let mut scrambled = id.clone();
        // r = 1, r s = 5
        scrambled.swap(1, 5);
        let r = verify_subgroup_preserving(&scrambled, &d4, &d4).unwrap();
        assert!(r.bijective);
        assert!(!r.non_subgroup_images.is_empty());
        let r = verify_subgroup_preserving(&[0; 8], &d4, &d4).unwrap();
        assert!(!r.bijective);
    }

    #[test]
    fn q8_through_d4_into_z2_cubed() {
        let to_d = builtin_bijection(BijectionFamily::Dicyclic2k, 2).unwrap();
        let to_z = builtin_bijection(BijectionFamily::Dihedral2k, 2).unwrap();
        let chain = to_d.then(&to_z).unwrap();
        let q8 = &chain.source;
        let i = q8.find_label("a").unwrap();
        let j = q8.find_label("x").unwrap();
        let t = SubgroupTuple::new(
            q8,
            vec![generated_subgroup(q8, &[i]), generated_subgroup(q8, &[j])],
        )
        .unwrap();
        let image = chain.image_tuple(&t).unwrap();
        let cert = self_certificate(&image).unwrap();
        let moved = transfer_representation(&chain.map, &t, &cert).unwrap();
        assert_eq!(moved.index_table.values(), &[2, 2, 4]);
        assert!(moved.verify().unwrap().target_checked);

        let via_d = {
            let zt = to_z.image_tuple(&to_d.image_tuple(&t).unwrap()).unwrap();
            let c = self_certificate(&zt).unwrap();
            let dt = to_d.image_tuple(&t).unwrap();
            let c = transfer_representation(&to_z.map, &dt, &c).unwrap();
            transfer_representation(&to_d.map, &t, &c).unwrap()
        };
        assert_eq!(via_d, moved);
        assert!(matches!(
            transfer_representation(&to_d.map, &t, &cert),
            Err(Error::CertificateMismatch(_))
        ));
    }

    #[test]
    fn quasidihedral_pair_into_dihedral() {
        let b = builtin_bijection(BijectionFamily::QdMinus, 3).unwrap();
        let g = &b.source;
        let t = SubgroupTuple::new(
            g,
            vec![generated_subgroup(g, &[2]), generated_subgroup(g, &[9])],
        )
        .unwrap();
        let image = b.image_tuple(&t).unwrap();
        for mask in 1..4 {
            assert_eq!(t.index(mask), image.index(mask));
        }
    }

    #[test]
    fn family_names_and_ranges() {
        for f in BijectionFamily::ALL {
            assert_eq!(f.as_str().parse::<BijectionFamily>().unwrap(), f);
        }
        assert!(builtin_bijection(BijectionFamily::QdPlus, 2).is_err());
        assert!("dihedral".parse::<BijectionFamily>().is_err());
    }
}
