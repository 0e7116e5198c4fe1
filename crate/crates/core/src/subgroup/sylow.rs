use super::{conjugate_subgroup, generated_subgroup, intersect, is_normal, Subgroup};
use crate::arith::{exact_log, prime_divisors, valuation};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};

/// The Sylow `p`-subgroup that comes first in canonical subgroup order.
///
/// One Sylow subgroup is grown greedily (a `p`-subgroup that is not Sylow is
/// always extended by some `p`-element of its normalizer), then the
/// lexicographically least of its conjugates is returned. Since all Sylow
/// `p`-subgroups are conjugate this agrees with scanning the full lattice.
pub fn sylow_subgroup(g: &Group, p: usize) -> Result<Subgroup> {
    if p < 2 || !g.order().is_multiple_of(p) {
        return Err(Error::PrimeDoesNotDivideOrder {
            p,
            order: g.order(),
        });
    }
    let target = p.pow(valuation(p, g.order()));
    let p_elements: Vec<Elem> = (1..g.order())
        .filter(|&x| exact_log(p, g.element_order(x)).is_some())
        .collect();

    let mut gens: Vec<Elem> = Vec::new();
    let mut current = Subgroup::trivial(g);
    while current.size() < target {
        let before = current.size();
        for &x in &p_elements {
            if current.contains(x) {
                continue;
            }
            gens.push(x);
            let next = generated_subgroup(g, &gens);
            if exact_log(p, next.size()).is_some() {
                current = next;
                if current.size() == target {
                    break;
                }
            } else {
                gens.pop();
            }
        }
        if current.size() == before {
            return Err(Error::RelationInconsistency(format!(
                "stuck growing a Sylow {p}-subgroup at order {before}"
            )));
        }
    }

    let mut best = current.clone();
    for x in 0..g.order() {
        let c = conjugate_subgroup(g, &current, x)?;
        if c < best {
            best = c;
        }
    }
    Ok(best)
}

/// Nilpotent iff every Sylow subgroup is normal; one Sylow per prime
/// suffices because normal means unique.
pub fn is_nilpotent(g: &Group) -> bool {
    prime_divisors(g.order()).into_iter().all(|p| {
        let s = sylow_subgroup(g, p).expect("p divides |G|");
        is_normal(g, &s).expect("same parent")
    })
}

/// Two distinct conjugate Sylow subgroups and their intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonNilpotentWitness {
    pub prime: usize,
    pub conjugator: Elem,
    pub sylow: Subgroup,
    pub conjugate: Subgroup,
    pub intersection: Subgroup,
}

impl NonNilpotentWitness {
    /// `([G:S], [G:S^x], [G:S ∩ S^x])`.
    pub fn indices(&self, g: &Group) -> (usize, usize, usize) {
        let n = g.order();
        (
            n / self.sylow.size(),
            n / self.conjugate.size(),
            n / self.intersection.size(),
        )
    }
}

/// `None` for nilpotent groups. Otherwise the smallest prime with a
/// non-normal Sylow subgroup `S`, and the first `x` (in element order) with
/// `x S x^-1 != S`.
pub fn non_nilpotent_witness(g: &Group) -> Option<NonNilpotentWitness> {
    for p in prime_divisors(g.order()) {
        let s = sylow_subgroup(g, p).expect("p divides |G|");
        for x in 0..g.order() {
            let c = conjugate_subgroup(g, &s, x).expect("same parent");
            if c != s {
                let intersection = intersect(&s, &c).expect("same parent");
                return Some(NonNilpotentWitness {
                    prime: p,
                    conjugator: x,
                    sylow: s,
                    conjugate: c,
                    intersection,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, direct_product, GroupSpec};
    use crate::subgroup::enumerate_subgroups;

    fn build(spec: GroupSpec) -> Group {
        build_group(&spec).unwrap()
    }

    #[test]
    fn sylow_examples() {
        let q8 = build(GroupSpec::dicyclic(2));
        assert!(sylow_subgroup(&q8, 2).unwrap().is_whole());
        let d3 = build(GroupSpec::dihedral(3));
        assert_eq!(sylow_subgroup(&d3, 2).unwrap().members(), vec![0, 3]);
        let z12 = build(GroupSpec::cyclic(12));
        assert_eq!(sylow_subgroup(&z12, 2).unwrap().members(), vec![0, 3, 6, 9]);
        assert!(matches!(
            sylow_subgroup(&z12, 5),
            Err(Error::PrimeDoesNotDivideOrder { p: 5, order: 12 })
        ));
    }

    #[test]
    fn sylow_is_first_in_lattice_order() {
        let s4 = build(GroupSpec::permutations(vec![
            vec![1, 0, 2, 3],
            vec![1, 2, 3, 0],
        ]));
        for g in [
            s4,
            build(GroupSpec::dihedral(6)),
            build(GroupSpec::dicyclic(3)),
            build(GroupSpec::dihedral(12)),
            build(GroupSpec::product(
                GroupSpec::dihedral(3),
                GroupSpec::cyclic(4),
            )),
        ] {
            let lattice = enumerate_subgroups(&g).unwrap();
            for p in prime_divisors(g.order()) {
                let size = p.pow(valuation(p, g.order()));
                let first = lattice.iter().find(|h| h.size() == size).unwrap();
                assert_eq!(&sylow_subgroup(&g, p).unwrap(), first, "{} p={p}", g.name());
            }
        }
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&build(GroupSpec::dicyclic(4))));
        assert!(is_nilpotent(&build(GroupSpec::heisenberg(3))));
        assert!(!is_nilpotent(&build(GroupSpec::dihedral(3))));
        let d4 = build(GroupSpec::dihedral(4));
        let z3 = build(GroupSpec::cyclic(3));
        assert!(is_nilpotent(&direct_product(&d4, &z3).unwrap()));
        assert!(is_nilpotent(&Group::trivial()));
    }

    #[test]
    fn witness_for_s3() {
        let d3 = build(GroupSpec::dihedral(3));
        let w = non_nilpotent_witness(&d3).unwrap();
        assert_eq!(w.sylow.members(), vec![0, 3]);
        assert_eq!(w.conjugate.members(), vec![0, 5]);
        assert!(w.intersection.is_trivial());
        assert_eq!(w.indices(&d3), (3, 3, 6));
        assert!(non_nilpotent_witness(&build(GroupSpec::cyclic(6))).is_none());
    }

    #[test]
    fn witness_for_dic3() {
        let g = build(GroupSpec::dicyclic(3));
        let w = non_nilpotent_witness(&g).unwrap();
        assert_eq!(w.prime, 2);
        assert_eq!(w.sylow.size(), 4);
        assert_eq!(w.intersection.size(), 2);
        // x^2 = a^3 lies in both
        assert!(w.intersection.contains(3));
        assert_eq!(w.indices(&g), (3, 3, 6));
    }
}
