use super::{intersect, Subgroup};
use crate::error::{Error, Result};
use crate::group::Group;

/// Largest supported number of subgroups in a tuple (masks are `u32`).
pub const MAX_ARITY: usize = 16;

/// By default tuples reject trivial and full subgroups, which only yield
/// deterministic or fully determining variables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TuplePolicy {
    pub allow_improper: bool,
}

#[derive(Debug, Clone)]
pub struct SubgroupTuple<'g> {
    group: &'g Group,
    parts: Vec<Subgroup>,
}

impl<'g> SubgroupTuple<'g> {
    pub fn new(group: &'g Group, parts: Vec<Subgroup>) -> Result<Self> {
        Self::with_policy(group, parts, TuplePolicy::default())
    }

    pub fn with_policy(
        group: &'g Group,
        parts: Vec<Subgroup>,
        policy: TuplePolicy,
    ) -> Result<Self> {
        if parts.is_empty() || parts.len() > MAX_ARITY {
            return Err(Error::InvalidParameter(format!(
                "tuple arity must be in 1..={MAX_ARITY}, got {}",
                parts.len()
            )));
        }
        for (position, h) in parts.iter().enumerate() {
            h.check_parent(group)?;
            if !policy.allow_improper && (h.is_trivial() || h.is_whole()) {
                return Err(Error::ImproperSubgroup { position });
            }
        }
        Ok(SubgroupTuple { group, parts })
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn parts(&self) -> &[Subgroup] {
        &self.parts
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    /// `G_A`: intersection over the bits set in `mask` (bit `i` is part `i`).
    pub fn intersection(&self, mask: u32) -> Subgroup {
        assert!(
            mask != 0 && (mask >> self.arity()) == 0,
            "mask {mask} out of range"
        );
        let mut bits = (0..self.arity()).filter(|i| mask >> i & 1 == 1);
        let first = bits.next().expect("nonempty mask");
        bits.fold(self.parts[first].clone(), |acc, i| {
            intersect(&acc, &self.parts[i]).expect("parts share a parent")
        })
    }

    /// `[G : G_A]`.
    pub fn index(&self, mask: u32) -> u64 {
        (self.group.order() / self.intersection(mask).size()) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};
    use crate::subgroup::generated_subgroup;

    #[test]
    fn policy_rejects_improper_parts() {
        let g = build_group(&GroupSpec::cyclic(4)).unwrap();
        let whole = Subgroup::whole(&g);
        let half = generated_subgroup(&g, &[2]);
        assert!(matches!(
            SubgroupTuple::new(&g, vec![half.clone(), whole.clone()]),
            Err(Error::ImproperSubgroup { position: 1 })
        ));
        let relaxed = TuplePolicy {
            allow_improper: true,
        };
        let t = SubgroupTuple::with_policy(&g, vec![half, whole], relaxed).unwrap();
        assert_eq!(t.index(0b10), 1);
        assert_eq!(t.index(0b11), 2);
    }

    #[test]
    fn arity_and_parent_checks() {
        let g = build_group(&GroupSpec::cyclic(4)).unwrap();
        let h = build_group(&GroupSpec::dihedral(4)).unwrap();
        assert!(SubgroupTuple::new(&g, vec![]).is_err());
        let foreign = generated_subgroup(&h, &[2]);
        assert_eq!(
            SubgroupTuple::new(&g, vec![foreign]).unwrap_err(),
            Error::ParentMismatch
        );
    }
}
