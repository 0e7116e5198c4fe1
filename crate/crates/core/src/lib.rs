//! Finite groups as Cayley tables, their subgroup lattices, the entropic
//! vectors of subgroup tuples, and certificates for (or against) abelian
//! group representability.
//!
//! ```
//! use grouprep::group::{build_group, GroupSpec};
//! use grouprep::subgroup::{generated_subgroup, SubgroupTuple};
//! use grouprep::represent::{find_abelian_representation, SearchOptions};
//!
//! let q8 = build_group(&GroupSpec::dicyclic(2)).unwrap();
//! let parts = [1, 4, 5].map(|x| generated_subgroup(&q8, &[x])).to_vec();
//! let t = SubgroupTuple::new(&q8, parts).unwrap();
//! let found = find_abelian_representation(&t, &SearchOptions::default()).unwrap();
//! let cert = found.certificate().unwrap();
//! assert_eq!(cert.abelian.factors(), &[2, 2, 2]);
//! cert.verify().unwrap();
//! ```

pub mod arith;
pub mod corpus;
pub mod entropic;
mod error;
pub mod exec;
pub mod group;
pub mod represent;
pub mod repro;
pub mod subgroup;

pub use error::{Error, Result};
pub use exec::Execution;
