//! Subgroups as member bitsets over a parent table.

mod lattice;
mod sylow;
mod tuple;

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

pub use lattice::{enumerate_subgroups, enumerate_subgroups_with, EnumerateOptions};
pub use sylow::{is_nilpotent, non_nilpotent_witness, sylow_subgroup, NonNilpotentWitness};
pub use tuple::{SubgroupTuple, TuplePolicy, MAX_ARITY};

use crate::error::{Error, Result};
use crate::group::{Elem, Group};

/// A subset of a parent group's elements that is closed under the table.
///
/// Equality, hashing and ordering only look at the parent identity and the
/// member set. Ordering is by size, then by the sorted member list.
#[derive(Clone)]
pub struct Subgroup {
    parent: u64,
    members: FixedBitSet,
    size: usize,
}

impl Subgroup {
    pub(crate) fn from_bits(g: &Group, members: FixedBitSet) -> Self {
        let size = members.count_ones(..);
        Subgroup {
            parent: g.fingerprint(),
            members,
            size,
        }
    }

    /// Wraps a member set after checking it is a subgroup of `g`.
    pub fn from_members(g: &Group, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut bits = FixedBitSet::with_capacity(g.order());
        for x in members {
            if x >= g.order() {
                return Err(Error::NotASubgroup(format!("element {x} out of range")));
            }
            bits.insert(x);
        }
        let h = Self::from_bits(g, bits);
        if !is_subgroup_set(g, &h.members) {
            return Err(Error::NotASubgroup(format!(
                "{:?} is not closed",
                h.members()
            )));
        }
        Ok(h)
    }

    pub fn trivial(g: &Group) -> Self {
        let mut bits = FixedBitSet::with_capacity(g.order());
        bits.insert(0);
        Self::from_bits(g, bits)
    }

    pub fn whole(g: &Group) -> Self {
        let mut bits = FixedBitSet::with_capacity(g.order());
        bits.insert_range(..);
        Self::from_bits(g, bits)
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parent_order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size == self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones()
    }

    /// Sorted member indices.
    pub fn members(&self) -> Vec<Elem> {
        self.members.ones().collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn belongs_to(&self, g: &Group) -> bool {
        self.parent == g.fingerprint() && self.members.len() == g.order()
    }

    pub(crate) fn check_parent(&self, g: &Group) -> Result<()> {
        if self.belongs_to(g) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.members.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.members.ones().cmp(other.members.ones()))
            .then_with(|| self.parent.cmp(&other.parent))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members())
    }
}

/// Finite and nonempty, so closure under products suffices.
pub(crate) fn is_subgroup_set(g: &Group, set: &FixedBitSet) -> bool {
    set.contains(0)
        && set
            .ones()
            .all(|a| set.ones().all(|b| set.contains(g.mul(a, b))))
}

/// Smallest subgroup containing `gens`, by breadth-first closure.
pub fn generated_subgroup(g: &Group, gens: &[Elem]) -> Subgroup {
    let mut bits = FixedBitSet::with_capacity(g.order());
    bits.insert(0);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &y in gens {
            let z = g.mul(x, y);
            if !bits.put(z) {
                queue.push_back(z);
            }
        }
    }
    Subgroup::from_bits(g, bits)
}

pub fn intersect(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    if a.parent != b.parent || a.members.len() != b.members.len() {
        return Err(Error::ParentMismatch);
    }
    let mut members = a.members.clone();
    members.intersect_with(&b.members);
    let size = members.count_ones(..);
    Ok(Subgroup {
        parent: a.parent,
        members,
        size,
    })
}

/// `[G : H]`.
pub fn index(g: &Group, h: &Subgroup) -> Result<usize> {
    h.check_parent(g)?;
    debug_assert_eq!(g.order() % h.size(), 0);
    Ok(g.order() / h.size())
}

pub fn is_normal(g: &Group, h: &Subgroup) -> Result<bool> {
    h.check_parent(g)?;
    Ok((0..g.order()).all(|x| h.iter().all(|y| h.contains(g.conjugate(x, y)))))
}

/// `x H x^-1`.
pub fn conjugate_subgroup(g: &Group, h: &Subgroup, x: Elem) -> Result<Subgroup> {
    h.check_parent(g)?;
    let mut bits = FixedBitSet::with_capacity(g.order());
    for y in h.iter() {
        bits.insert(g.conjugate(x, y));
    }
    Ok(Subgroup::from_bits(g, bits))
}

pub fn center(g: &Group) -> Subgroup {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for z in 0..g.order() {
        if (0..g.order()).all(|x| g.mul(z, x) == g.mul(x, z)) {
            bits.insert(z);
        }
    }
    Subgroup::from_bits(g, bits)
}

/// The product set `H K = {hk}`; a subgroup only when one factor normalizes
/// the other.
pub fn product_set(g: &Group, h: &Subgroup, k: &Subgroup) -> Result<FixedBitSet> {
    h.check_parent(g)?;
    k.check_parent(g)?;
    let mut bits = FixedBitSet::with_capacity(g.order());
    for a in h.iter() {
        for b in k.iter() {
            bits.insert(g.mul(a, b));
        }
    }
    Ok(bits)
}
