use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::subgroup::{SubgroupTuple, MAX_ARITY};

/// Map from every nonempty mask `1..2^n` to a positive integer index.
/// Serializes as a JSON object keyed by the decimal mask, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexTable {
    n: usize,
    values: Vec<u64>,
}

impl IndexTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> u64) -> Self {
        assert!((1..=MAX_ARITY).contains(&n), "arity {n} out of range");
        let values = (1..(1u32 << n)).map(&mut f).collect();
        IndexTable { n, values }
    }

    pub fn from_tuple(t: &SubgroupTuple<'_>) -> Self {
        Self::from_fn(t.arity(), |mask| t.index(mask))
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn get(&self, mask: u32) -> u64 {
        self.values[mask as usize - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as u32 + 1, v))
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Masks covering the full range.
    pub fn full_mask(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// `A ⊆ B` implies `index[A] | index[B]`.
    pub fn is_divisibility_monotone(&self) -> bool {
        self.iter().all(|(a, ia)| {
            self.iter()
                .filter(|&(b, _)| a & b == a)
                .all(|(_, ib)| ib % ia == 0)
        })
    }

    /// Group-characterizable vectors are polymatroids:
    /// `index[A∪B] · index[A∩B] <= index[A] · index[B]`, with `index[∅] = 1`.
    pub fn is_submodular(&self) -> bool {
        let get0 = |m: u32| {
            if m == 0 {
                1u128
            } else {
                u128::from(self.get(m))
            }
        };
        self.iter().all(|(a, ia)| {
            self.iter()
                .all(|(b, ib)| get0(a | b) * get0(a & b) <= u128::from(ia) * u128::from(ib))
        })
    }

    /// Entrywise product; used when combining representations of coprime
    /// factors.
    pub fn multiply(&self, other: &IndexTable) -> Option<IndexTable> {
        (self.n == other.n).then(|| IndexTable {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn to_map(&self) -> BTreeMap<u32, u64> {
        self.iter().collect()
    }
}

impl Serialize for IndexTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.values.len()))?;
        for (mask, v) in self.iter() {
            map.serialize_entry(&mask.to_string(), &v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for IndexTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TableVisitor;

        impl<'de> Visitor<'de> for TableVisitor {
            type Value = IndexTable;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping masks 1..2^n-1 to indices")
            }

            fn visit_map<M: MapAccess<'de>>(self, mut access: M) -> Result<IndexTable, M::Error> {
                let mut entries = BTreeMap::new();
                while let Some((k, v)) = access.next_entry::<String, u64>()? {
                    let mask: u32 = k.parse().map_err(de::Error::custom)?;
                    if v == 0 {
                        return Err(de::Error::custom("indices are positive"));
                    }
                    if entries.insert(mask, v).is_some() {
                        return Err(de::Error::custom(format!("duplicate mask {mask}")));
                    }
                }
                let count = entries.len() + 1;
                if !count.is_power_of_two() || count < 2 {
                    return Err(de::Error::custom("mask count must be 2^n - 1"));
                }
                let n = count.trailing_zeros() as usize;
                if n > MAX_ARITY {
                    return Err(de::Error::custom("too many masks"));
                }
                let values: Vec<u64> = (1..count as u32)
                    .map(|m| entries.get(&m).copied().ok_or(m))
                    .collect::<Result<_, _>>()
                    .map_err(|m| de::Error::custom(format!("missing mask {m}")))?;
                Ok(IndexTable { n, values })
            }
        }

        deserializer.deserialize_map(TableVisitor)
    }
}
