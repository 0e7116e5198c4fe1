use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Declarative description of a group, serialized as a JSON object tagged by
/// `family`, e.g. `{"family":"dihedral","m":8}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic {
        m: usize,
    },
    AbelianProduct {
        factors: Vec<usize>,
    },
    /// `D_m`, order `2m`.
    Dihedral {
        m: usize,
    },
    /// `QD^{-1}_{2^k}`: `s r s = r^{2^{k-1}-1}`, order `2^{k+1}`.
    QuasidihedralMinus {
        k: u32,
    },
    /// `QD^{+1}_{2^k}`: `s r s = r^{2^{k-1}+1}`, order `2^{k+1}`.
    QuasidihedralPlus {
        k: u32,
    },
    /// `DiC_m`, order `4m`.
    Dicyclic {
        m: usize,
    },
    /// Extraspecial group of order `p^3` and exponent `p` (D_4 when p = 2).
    HeisenbergP3 {
        p: usize,
    },
    /// `<r, s | r^{p^2} = s^p = 1, s r s^-1 = r^{1+p}>` (Q8 when p = 2).
    ModularP3 {
        p: usize,
    },
    DirectProduct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
    /// Closure of permutations in one-line notation (`g[i]` is the image of `i`).
    PermutationClosure {
        generators: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn cyclic(m: usize) -> Self {
        GroupSpec::Cyclic { m }
    }

    pub fn abelian(factors: &[usize]) -> Self {
        GroupSpec::AbelianProduct {
            factors: factors.to_vec(),
        }
    }

    pub fn dihedral(m: usize) -> Self {
        GroupSpec::Dihedral { m }
    }

    pub fn qd_minus(k: u32) -> Self {
        GroupSpec::QuasidihedralMinus { k }
    }

    pub fn qd_plus(k: u32) -> Self {
        GroupSpec::QuasidihedralPlus { k }
    }

    pub fn dicyclic(m: usize) -> Self {
        GroupSpec::Dicyclic { m }
    }

    pub fn heisenberg(p: usize) -> Self {
        GroupSpec::HeisenbergP3 { p }
    }

    pub fn modular(p: usize) -> Self {
        GroupSpec::ModularP3 { p }
    }

    pub fn product(left: GroupSpec, right: GroupSpec) -> Self {
        GroupSpec::DirectProduct {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn permutations(generators: Vec<Vec<usize>>) -> Self {
        GroupSpec::PermutationClosure { generators }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("GroupSpec serializes")
    }

    /// Checks parameter domains and returns the order, or `None` for
    /// permutation closures whose order is only known after building.
    pub fn checked_order(&self) -> Result<Option<usize>> {
        let invalid = |msg: String| Err(Error::InvalidParameter(msg));
        let pow2 = |k: u32| 1usize.checked_shl(k + 1).filter(|_| k < 40);
        Ok(Some(match self {
            GroupSpec::Cyclic { m } => {
                if *m == 0 {
                    return invalid("cyclic order must be at least 1".into());
                }
                *m
            }
            GroupSpec::AbelianProduct { factors } => {
                if factors.contains(&0) {
                    return invalid("abelian factors must be positive".into());
                }
                checked_product(factors.iter().copied())?
            }
            GroupSpec::Dihedral { m } => {
                if *m < 3 {
                    return invalid(format!("dihedral needs m >= 3, got {m}"));
                }
                m.checked_mul(2).ok_or_else(overflow)?
            }
            GroupSpec::QuasidihedralMinus { k } | GroupSpec::QuasidihedralPlus { k } => {
                if *k < 3 {
                    return invalid(format!("quasidihedral needs k >= 3, got {k}"));
                }
                pow2(*k).ok_or_else(overflow)?
            }
            GroupSpec::Dicyclic { m } => {
                if *m < 2 {
                    return invalid(format!("dicyclic needs m >= 2, got {m}"));
                }
                m.checked_mul(4).ok_or_else(overflow)?
            }
            GroupSpec::HeisenbergP3 { p } | GroupSpec::ModularP3 { p } => {
                if !is_prime(*p) {
                    return invalid(format!("{p} is not prime"));
                }
                p.checked_pow(3).ok_or_else(overflow)?
            }
            GroupSpec::DirectProduct { left, right } => {
                match (left.checked_order()?, right.checked_order()?) {
                    (Some(a), Some(b)) => a.checked_mul(b).ok_or_else(overflow)?,
                    _ => return Ok(None),
                }
            }
            GroupSpec::PermutationClosure { generators } => {
                let degree = generators.first().map_or(0, Vec::len);
                for g in generators {
                    let mut seen = vec![false; degree];
                    if g.len() != degree
                        || g.iter()
                            .any(|&x| x >= degree || std::mem::replace(&mut seen[x], true))
                    {
                        return invalid(format!("{g:?} is not a permutation of 0..{degree}"));
                    }
                }
                return Ok(None);
            }
        }))
    }
}

fn overflow() -> Error {
    Error::InvalidParameter("group order overflows".into())
}

fn checked_product(mut it: impl Iterator<Item = usize>) -> Result<usize> {
    it.try_fold(1usize, |acc, f| acc.checked_mul(f))
        .ok_or_else(overflow)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { m } => write!(f, "Z_{m}"),
            GroupSpec::AbelianProduct { factors } => {
                let parts: Vec<_> = factors.iter().map(|d| format!("Z_{d}")).collect();
                if parts.is_empty() {
                    write!(f, "1")
                } else {
                    write!(f, "{}", parts.join(" x "))
                }
            }
            GroupSpec::Dihedral { m } => write!(f, "D_{m}"),
            GroupSpec::QuasidihedralMinus { k } => write!(f, "QD-_{}", 1usize << k),
            GroupSpec::QuasidihedralPlus { k } => write!(f, "QD+_{}", 1usize << k),
            GroupSpec::Dicyclic { m } => write!(f, "DiC_{m}"),
            GroupSpec::HeisenbergP3 { p } => write!(f, "Heis_{}", p * p * p),
            GroupSpec::ModularP3 { p } => write!(f, "Mod_{}", p * p * p),
            GroupSpec::DirectProduct { left, right } => write!(f, "({left} x {right})"),
            GroupSpec::PermutationClosure { generators } => {
                write!(f, "Perm{generators:?}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_field_names() {
        assert_eq!(
            GroupSpec::dihedral(8).to_json(),
            r#"{"family":"dihedral","m":8}"#
        );
        assert_eq!(
            GroupSpec::abelian(&[4, 2]).to_json(),
            r#"{"family":"abelian_product","factors":[4,2]}"#
        );
        let prod = GroupSpec::product(GroupSpec::dihedral(4), GroupSpec::cyclic(3));
        assert_eq!(
            prod.to_json(),
            r#"{"family":"direct_product","left":{"family":"dihedral","m":4},"right":{"family":"cyclic","m":3}}"#
        );
        assert_eq!(GroupSpec::from_json(&prod.to_json()).unwrap(), prod);
        assert_eq!(
            GroupSpec::from_json(r#"{"family":"quasidihedral_plus","k":3}"#).unwrap(),
            GroupSpec::qd_plus(3)
        );
    }

    #[test]
    fn unknown_family_is_a_parse_error() {
        assert!(matches!(
            GroupSpec::from_json(r#"{"family":"octonion","m":2}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn parameter_domains() {
        assert!(GroupSpec::dihedral(2).checked_order().is_err());
        assert!(GroupSpec::qd_minus(2).checked_order().is_err());
        assert!(GroupSpec::dicyclic(1).checked_order().is_err());
        assert!(GroupSpec::heisenberg(4).checked_order().is_err());
        assert!(GroupSpec::cyclic(0).checked_order().is_err());
        assert!(GroupSpec::permutations(vec![vec![0, 0]])
            .checked_order()
            .is_err());
        assert_eq!(GroupSpec::qd_plus(3).checked_order().unwrap(), Some(16));
        assert_eq!(GroupSpec::dicyclic(3).checked_order().unwrap(), Some(12));
        assert_eq!(GroupSpec::modular(3).checked_order().unwrap(), Some(27));
    }
}
