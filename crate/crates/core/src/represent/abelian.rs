use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{exact_log, factorize};
use crate::error::{Error, Result};
use crate::group::{build_group_bounded, Group, GroupSpec};
use crate::subgroup::{enumerate_subgroups_with, EnumerateOptions, Subgroup};

/// A finite abelian group as a list of cyclic factor orders, each `>= 2`.
///
/// The factor order matters for element encoding (mixed radix, first factor
/// most significant); [`AbelianSpec::canonical`] gives the invariant-factor
/// normal form `d_1 >= d_2 >= ...` with `d_{i+1} | d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianSpec {
    factors: Vec<usize>,
}

impl AbelianSpec {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidParameter(format!(
                "cyclic factors must be at least 2: {factors:?}"
            )));
        }
        Ok(AbelianSpec { factors })
    }

    pub fn trivial() -> Self {
        AbelianSpec { factors: vec![] }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    /// Per prime, the exponent partition sorted descending.
    pub fn primary_decomposition(&self) -> BTreeMap<usize, Vec<u32>> {
        let mut out: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for &d in &self.factors {
            for (p, e) in factorize(d) {
                out.entry(p).or_default().push(e);
            }
        }
        for parts in out.values_mut() {
            parts.sort_unstable_by(|a, b| b.cmp(a));
        }
        out
    }

    pub fn canonical(&self) -> AbelianSpec {
        from_primary(&self.primary_decomposition())
    }

    pub fn is_isomorphic(&self, other: &AbelianSpec) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn group_spec(&self) -> GroupSpec {
        GroupSpec::AbelianProduct {
            factors: self.factors.clone(),
        }
    }

    /// `A x B` with factors concatenated, so `(a, b)` sits at `a |B| + b`.
    pub fn product(&self, other: &AbelianSpec) -> AbelianSpec {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        AbelianSpec { factors }
    }
}

impl fmt::Display for AbelianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn from_primary(primary: &BTreeMap<usize, Vec<u32>>) -> AbelianSpec {
    let len = primary.values().map(Vec::len).max().unwrap_or(0);
    let factors = (0..len)
        .map(|i| {
            primary
                .iter()
                .map(|(&p, parts)| parts.get(i).map_or(1, |&e| p.pow(e)))
                .product()
        })
        .collect();
    AbelianSpec { factors }
}

/// Partitions of `e` from the most parts to the fewest: for 3 this is
/// `[1,1,1], [2,1], [3]`.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out.reverse();
    out
}

/// All abelian groups of order `n` up to isomorphism, in canonical
/// invariant-factor form. Elementary abelian types come first.
pub fn enumerate_abelian_specs(n: usize) -> Result<Vec<AbelianSpec>> {
    enumerate_abelian_specs_bounded(n, crate::group::DEFAULT_MAX_ORDER)
}

pub fn enumerate_abelian_specs_bounded(n: usize, bound: usize) -> Result<Vec<AbelianSpec>> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be positive".into()));
    }
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "abelian group order",
            size: n,
            bound,
        });
    }
    let mut combos: Vec<BTreeMap<usize, Vec<u32>>> = vec![BTreeMap::new()];
    for (p, e) in factorize(n) {
        combos = combos
            .into_iter()
            .flat_map(|base| {
                partitions(e).into_iter().map(move |part| {
                    let mut next = base.clone();
                    next.insert(p, part);
                    next
                })
            })
            .collect();
    }
    Ok(combos.iter().map(from_primary).collect())
}

/// Isomorphism type of an abelian group, read off from the number of
/// solutions of `x^{p^j} = 1`; `None` if `g` is not abelian.
pub fn abelian_invariants(g: &Group) -> Option<AbelianSpec> {
    if !g.is_abelian() {
        return None;
    }
    let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let mut primary = BTreeMap::new();
    for (p, e) in factorize(g.order()) {
        // logs[j] = log_p #{x : x^{p^j} = 1}
        let logs: Vec<u32> = (0..=e)
            .map(|j| {
                let count = orders.iter().filter(|&&o| p.pow(j) % o == 0).count();
                exact_log(p, count).expect("abelian p-torsion has p-power order")
            })
            .collect();
        // at_least[j] = number of parts >= j + 1
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let largest = at_least.first().copied().unwrap_or(0);
        let parts = (1..=largest)
            .map(|i| at_least.iter().filter(|&&c| c >= i).count() as u32)
            .collect();
        primary.insert(p, parts);
    }
    Some(from_primary(&primary))
}

/// An abelian group together with its sorted subgroup lattice.
#[derive(Debug)]
pub struct AbelianLattice {
    pub spec: AbelianSpec,
    pub group: Group,
    pub subgroups: Vec<Subgroup>,
}

type Cache<T> = OnceLock<Mutex<HashMap<AbelianSpec, Arc<T>>>>;

static GROUPS: Cache<Group> = OnceLock::new();
static LATTICES: Cache<AbelianLattice> = OnceLock::new();

/// Builds (once per process) the group for `spec`.
pub fn abelian_group(spec: &AbelianSpec) -> Result<Arc<Group>> {
    let cache = GROUPS.get_or_init(Default::default);
    if let Some(g) = cache.lock().expect("cache lock").get(spec) {
        return Ok(Arc::clone(g));
    }
    let g = Arc::new(build_group_bounded(&spec.group_spec(), usize::MAX)?);
    cache
        .lock()
        .expect("cache lock")
        .entry(spec.clone())
        .or_insert_with(|| Arc::clone(&g));
    Ok(g)
}

pub fn abelian_lattice(spec: &AbelianSpec, opts: EnumerateOptions) -> Result<Arc<AbelianLattice>> {
    let cache = LATTICES.get_or_init(Default::default);
    if let Some(l) = cache.lock().expect("cache lock").get(spec) {
        return Ok(Arc::clone(l));
    }
    let group = (*abelian_group(spec)?).clone();
    let subgroups = enumerate_subgroups_with(&group, opts)?;
    let lattice = Arc::new(AbelianLattice {
        spec: spec.clone(),
        group,
        subgroups,
    });
    cache
        .lock()
        .expect("cache lock")
        .entry(spec.clone())
        .or_insert_with(|| Arc::clone(&lattice));
    Ok(lattice)
}
