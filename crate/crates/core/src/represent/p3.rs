use serde::Serialize;

use super::abelian::{abelian_group, AbelianSpec};
use super::certificate::{CertificateTarget, RepresentationCertificate};
use super::search::{find_abelian_representation, SearchOptions};
use crate::arith::prime_power_base;
use crate::entropic::IndexTable;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::subgroup::{generated_subgroup, Subgroup, SubgroupTuple};

/// Generators inside `C_{p^2} x C_p = <g> x <r>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum P3Generator {
    G,
    Gp,
    R,
    GR,
    GpR,
}

impl P3Generator {
    /// Index of the element in `C_{p^2} x C_p` (`(x, y)` at `x p + y`).
    pub fn element(self, p: usize) -> usize {
        let (x, y) = match self {
            P3Generator::G => (1, 0),
            P3Generator::Gp => (p, 0),
            P3Generator::R => (0, 1),
            P3Generator::GR => (1, 1),
            P3Generator::GpR => (p, 1),
        };
        x * p + y
    }
}

/// Index profile order: `(i_1, i_2, i_3, i_12, i_13, i_23, i_123)`.
pub const PROFILE_MASKS: [u32; 7] = [1, 2, 4, 3, 5, 6, 7];

/// One index combination for three subgroups of a non-abelian group of
/// order `p^3`, with subgroups of `C_{p^2} x C_p` realising it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct P3Case {
    pub number: u8,
    /// Exponents of `p` in profile order.
    pub exponents: [u32; 7],
    pub parts: [&'static [P3Generator]; 3],
}

use P3Generator::{Gp, GpR, G, GR, R};

pub const P3_CASES: [P3Case; 8] = [
    P3Case {
        number: 1,
        exponents: [1, 1, 1, 2, 2, 2, 2],
        parts: [&[Gp, R], &[G], &[GR]],
    },
    P3Case {
        number: 2,
        exponents: [1, 1, 2, 2, 2, 2, 2],
        parts: [&[Gp, R], &[G], &[Gp]],
    },
    P3Case {
        number: 3,
        exponents: [1, 1, 2, 2, 2, 3, 3],
        parts: [&[Gp, R], &[G], &[R]],
    },
    P3Case {
        number: 4,
        exponents: [1, 1, 2, 2, 3, 3, 3],
        parts: [&[GR], &[G], &[R]],
    },
    P3Case {
        number: 5,
        exponents: [1, 2, 2, 2, 2, 3, 3],
        parts: [&[Gp, R], &[Gp], &[R]],
    },
    P3Case {
        number: 6,
        exponents: [1, 2, 2, 2, 3, 3, 3],
        parts: [&[G], &[Gp], &[GpR]],
    },
    P3Case {
        number: 7,
        exponents: [1, 2, 2, 3, 3, 3, 3],
        parts: [&[GR], &[GpR], &[R]],
    },
    P3Case {
        number: 8,
        exponents: [2, 2, 2, 3, 3, 3, 3],
        parts: [&[Gp], &[R], &[GpR]],
    },
];

pub fn p3_abelian_spec(p: usize) -> AbelianSpec {
    AbelianSpec::new(vec![p * p, p]).expect("p >= 2")
}

impl P3Case {
    pub fn profile(&self, p: usize) -> [u64; 7] {
        self.exponents.map(|e| (p as u64).pow(e))
    }

    /// `A_1, A_2, A_3` inside `a = C_{p^2} x C_p`.
    pub fn instantiate(&self, a: &Group, p: usize) -> Vec<Subgroup> {
        self.parts
            .iter()
            .map(|gens| {
                let elems: Vec<usize> = gens.iter().map(|g| g.element(p)).collect();
                generated_subgroup(a, &elems)
            })
            .collect()
    }

    /// The case's certificate with an abstract order-`p^3` target.
    pub fn certificate(&self, p: usize) -> Result<RepresentationCertificate> {
        let spec = p3_abelian_spec(p);
        let a = abelian_group(&spec)?;
        let parts = self.instantiate(&a, p);
        let profile = self.profile(p);
        let index_table = IndexTable::from_fn(3, |mask| {
            profile[PROFILE_MASKS
                .iter()
                .position(|&m| m == mask)
                .expect("mask in range")]
        });
        Ok(RepresentationCertificate {
            target: CertificateTarget::abstract_order(p * p * p),
            abelian: spec,
            parts: parts.iter().map(Subgroup::members).collect(),
            index_table,
        })
    }
}

pub fn profile_of(t: &SubgroupTuple<'_>) -> [u64; 7] {
    PROFILE_MASKS.map(|m| t.index(m))
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Profile of `(G_{perm[0]}, G_{perm[1]}, G_{perm[2]})`.
fn permuted_profile(profile: &[u64; 7], perm: [usize; 3]) -> [u64; 7] {
    PROFILE_MASKS.map(|m| {
        let original: u32 = (0..3)
            .filter(|k| m >> k & 1 == 1)
            .map(|k| 1 << perm[k])
            .sum();
        profile[PROFILE_MASKS
            .iter()
            .position(|&x| x == original)
            .expect("mask in range")]
    })
}

/// First case and ordering of the parts matching `profile`.
pub fn lookup_profile(profile: &[u64; 7], p: usize) -> Option<(&'static P3Case, [usize; 3])> {
    PERMUTATIONS.iter().find_map(|&perm| {
        let permuted = permuted_profile(profile, perm);
        P3_CASES
            .iter()
            .find(|c| c.profile(p) == permuted)
            .map(|c| (c, perm))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum P3Route {
    /// Part `perm[k]` of the tuple plays the role of the case's `A_{k+1}`.
    Table { case: u8, permutation: [usize; 3] },
    /// Two parts coincide; handled by search.
    RepeatedParts,
    /// The profile is not tabulated; the certificate (if any) came from search.
    ProfileNotInTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct P3Report {
    pub profile: [u64; 7],
    pub route: P3Route,
    pub certificate: Option<RepresentationCertificate>,
}

impl P3Report {
    pub fn profile_not_in_table(&self) -> bool {
        self.route == P3Route::ProfileNotInTable
    }
}

pub fn p3_uniform_representation(t: &SubgroupTuple<'_>) -> Result<P3Report> {
    let g = t.group();
    let p = prime_power_base(g.order())
        .filter(|&p| p * p * p == g.order())
        .ok_or_else(|| Error::DomainError(format!("order {} is not a prime cube", g.order())))?;
    if g.is_abelian() {
        return Err(Error::DomainError("group is abelian".into()));
    }
    if t.arity() != 3 {
        return Err(Error::ArityMismatch(3, t.arity()));
    }
    if let Some(position) = t
        .parts()
        .iter()
        .position(|h| h.is_trivial() || h.is_whole())
    {
        return Err(Error::ImproperSubgroup { position });
    }
    let profile = profile_of(t);
    let parts = t.parts();
    let distinct = parts[0] != parts[1] && parts[0] != parts[2] && parts[1] != parts[2];
    let hit = if distinct {
        lookup_profile(&profile, p)
    } else {
        None
    };
    if let Some((case, perm)) = hit {
        let base = case.certificate(p)?;
        let mut reordered = vec![Vec::new(); 3];
        for (k, members) in base.parts.into_iter().enumerate() {
            reordered[perm[k]] = members;
        }
        let cert = RepresentationCertificate {
            target: CertificateTarget::from_tuple(t),
            abelian: base.abelian,
            parts: reordered,
            index_table: IndexTable::from_tuple(t),
        };
        cert.verify_for(t)?;
        return Ok(P3Report {
            profile,
            route: P3Route::Table {
                case: case.number,
                permutation: perm,
            },
            certificate: Some(cert),
        });
    }
    let route = if distinct {
        P3Route::ProfileNotInTable
    } else {
        P3Route::RepeatedParts
    };
    let certificate = find_abelian_representation(t, &SearchOptions::default())?.into_certificate();
    Ok(P3Report {
        profile,
        route,
        certificate,
    })
}
