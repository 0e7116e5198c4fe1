//! Group-characterizable entropic vectors, kept as exact indices.
//!
//! `H(X_A) = log [G : G_A]`, so the vector is stored as the integer indices
//! and logarithms are only taken for presentation. Bit `i` of a mask stands
//! for the `(i+1)`-th subgroup.

mod distribution;
mod table;

use std::io::Write;

use serde::{Deserialize, Serialize};

pub use distribution::{
    joint_coset_distribution, verify_theorem, JointDistribution, MarginalCheck, TheoremReport,
};
pub use table::IndexTable;

use crate::error::{Error, Result};
use crate::subgroup::SubgroupTuple;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntropicVector {
    pub n: usize,
    pub base: u32,
    pub indices: IndexTable,
}

impl EntropicVector {
    pub fn new(indices: IndexTable) -> Self {
        EntropicVector {
            n: indices.arity(),
            base: 2,
            indices,
        }
    }

    pub fn with_base(mut self, base: u32) -> Self {
        assert!(base >= 2, "log base must be at least 2");
        self.base = base;
        self
    }

    pub fn index(&self, mask: u32) -> u64 {
        self.indices.get(mask)
    }

    pub fn entropy(&self, mask: u32) -> f64 {
        (self.index(mask) as f64).ln() / f64::from(self.base).ln()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("vector serializes")
    }

    /// Columns `mask,index,entropy`, masks ascending.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(["mask", "index", "entropy"]).map_err(io)?;
        for (mask, index) in self.indices.iter() {
            w.write_record([
                mask.to_string(),
                index.to_string(),
                format!("{:.12}", self.entropy(mask)),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `[G : ∩_{i∈A} G_i]` for every nonempty `A`.
pub fn entropic_vector(t: &SubgroupTuple<'_>) -> EntropicVector {
    EntropicVector::new(IndexTable::from_tuple(t))
}
