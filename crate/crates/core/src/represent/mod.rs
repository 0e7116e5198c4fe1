//! Abelian group representability: certificates, witnesses, constructions
//! and exhaustive search.

mod abelian;
mod bijection;
mod certificate;
mod n2;
mod p3;
mod search;

pub use abelian::{
    abelian_group, abelian_invariants, abelian_lattice, enumerate_abelian_specs,
    enumerate_abelian_specs_bounded, AbelianLattice, AbelianSpec,
};
pub use bijection::{
    builtin_bijection, compose, transfer_representation, verify_subgroup_preserving,
    verify_subgroup_preserving_with, Bijection, BijectionFamily, PreservationReport,
};
pub use certificate::{
    combine_coprime, necessary_divisibility, self_certificate, CertificateTarget, CheckSummary,
    NonRepresentabilityWitness, RepresentationCertificate,
};
pub use n2::{
    classify_n2, classify_n2_bounded, n2_certificate, n2_elementary_construction, n2_inequality,
    N2Classification,
};
pub use p3::{
    lookup_profile, p3_abelian_spec, p3_uniform_representation, profile_of, P3Case, P3Generator,
    P3Report, P3Route, P3_CASES, PROFILE_MASKS,
};
pub use search::{find_abelian_representation, search_in, SearchOptions, SearchOutcome};
