//! Finite groups as explicit multiplication tables.
//!
//! Elements are indices `0..order`; index 0 is always the identity. Family
//! constructors enumerate normal-form words with powers of the first
//! generator first (`r^a`, then `r^a s`, ...), so tables are reproducible.

mod families;
mod spec;
mod validate;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

pub use spec::GroupSpec;
pub use validate::{validate_group, validate_table, ValidationReport};

use crate::error::{Error, Result};

pub type Elem = usize;

pub const DEFAULT_MAX_ORDER: usize = 512;

#[derive(Clone, Debug)]
pub struct Group {
    order: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    labels: Option<Vec<String>>,
    spec: Option<GroupSpec>,
    fingerprint: u64,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Group {}

impl Group {
    /// Builds a group from a row-major table and checks the group axioms.
    pub fn from_table(order: usize, table: Vec<Elem>, labels: Option<Vec<String>>) -> Result<Self> {
        let g = Self::from_table_unchecked(order, table, labels)?;
        let report = validate_group(&g);
        if !report.is_valid() {
            return Err(Error::RelationInconsistency(report.failures.join("; ")));
        }
        Ok(g)
    }

    /// Like [`Group::from_table`] but only checks shapes. Useful for feeding
    /// deliberately broken tables to [`validate_group`].
    pub fn from_table_unchecked(
        order: usize,
        table: Vec<Elem>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidParameter(format!(
                "table of length {} does not fit order {order}",
                table.len()
            )));
        }
        if table.iter().any(|&x| x >= order) {
            return Err(Error::InvalidParameter("table entry out of range".into()));
        }
        if labels.as_ref().is_some_and(|l| l.len() != order) {
            return Err(Error::InvalidParameter(
                "label count differs from order".into(),
            ));
        }
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == 0)
                    .unwrap_or(usize::MAX)
            })
            .collect();
        let mut hasher = DefaultHasher::new();
        order.hash(&mut hasher);
        table.hash(&mut hasher);
        Ok(Group {
            order,
            table,
            inverses,
            labels,
            spec: None,
            fingerprint: hasher.finish(),
        })
    }

    pub(crate) fn with_spec(mut self, spec: GroupSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    pub fn trivial() -> Self {
        build_group(&GroupSpec::cyclic(1)).expect("trivial group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Identifies the table; subgroups carry it to detect parent mismatches.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => format!("#{x}"),
        }
    }

    /// Looks an element up by its label, ignoring whitespace differences.
    pub fn find_label(&self, word: &str) -> Option<Elem> {
        let want = normalize_word(word);
        self.labels
            .as_ref()?
            .iter()
            .position(|l| normalize_word(l) == want)
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn conjugate(&self, x: Elem, h: Elem) -> Elem {
        self.mul(self.mul(x, h), self.inv(x))
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn name(&self) -> String {
        match &self.spec {
            Some(s) => s.to_string(),
            None => format!("G_{}", self.order),
        }
    }
}

fn normalize_word(w: &str) -> String {
    w.split_whitespace().collect::<Vec<_>>().join(" ")
}

pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    build_group_bounded(spec, DEFAULT_MAX_ORDER)
}

pub fn build_group_bounded(spec: &GroupSpec, bound: usize) -> Result<Group> {
    if let Some(order) = spec.checked_order()? {
        if order > bound {
            return Err(Error::OrderOverflow { order, bound });
        }
    }
    families::build(spec, bound).map(|g| g.with_spec(spec.clone()))
}

/// `G x H` with `(a, b)` stored at index `a * |H| + b`.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    direct_product_bounded(g, h, DEFAULT_MAX_ORDER)
}

pub fn direct_product_bounded(g: &Group, h: &Group, bound: usize) -> Result<Group> {
    let (n, m) = (g.order(), h.order());
    let order = n
        .checked_mul(m)
        .filter(|&o| o <= bound)
        .ok_or(Error::OrderOverflow {
            order: n.saturating_mul(m),
            bound,
        })?;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (a1, a2) = (a / m, a % m);
        for b in 0..order {
            let (b1, b2) = (b / m, b % m);
            table.push(g.mul(a1, b1) * m + h.mul(a2, b2));
        }
    }
    let labels = (0..order)
        .map(|x| format!("({},{})", g.label(x / m), h.label(x % m)))
        .collect();
    let mut product = Group::from_table_unchecked(order, table, Some(labels))?;
    if let (Some(l), Some(r)) = (g.spec(), h.spec()) {
        product = product.with_spec(GroupSpec::product(l.clone(), r.clone()));
    }
    Ok(product)
}
