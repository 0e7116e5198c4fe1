use std::collections::HashMap;
use std::collections::VecDeque;

use super::{direct_product_bounded, Elem, Group, GroupSpec};
use crate::arith::pow_mod;
use crate::error::{Error, Result};

pub(super) fn build(spec: &GroupSpec, bound: usize) -> Result<Group> {
    match spec {
        GroupSpec::Cyclic { m } => abelian_product(&[*m]),
        GroupSpec::AbelianProduct { factors } => abelian_product(factors),
        GroupSpec::Dihedral { m } => Ok(metacyclic(*m, *m - 1, 0, "r", "s")?),
        GroupSpec::QuasidihedralMinus { k } => {
            let n = 1usize << k;
            metacyclic(n, n / 2 - 1, 0, "r", "s")
        }
        GroupSpec::QuasidihedralPlus { k } => {
            let n = 1usize << k;
            metacyclic(n, n / 2 + 1, 0, "r", "s")
        }
        GroupSpec::Dicyclic { m } => metacyclic(2 * m, 2 * m - 1, *m, "a", "x"),
        GroupSpec::HeisenbergP3 { p: 2 } => metacyclic(4, 3, 0, "r", "s"),
        GroupSpec::HeisenbergP3 { p } => heisenberg(*p),
        GroupSpec::ModularP3 { p: 2 } => metacyclic(4, 3, 2, "a", "x"),
        GroupSpec::ModularP3 { p } => modular(*p),
        GroupSpec::DirectProduct { left, right } => {
            let l = build(left, bound)?.with_spec((**left).clone());
            let r = build(right, bound)?.with_spec((**right).clone());
            direct_product_bounded(&l, &r, bound)
        }
        GroupSpec::PermutationClosure { generators } => permutation_closure(generators, bound),
    }
}

pub(crate) fn word(sym: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{e}"),
    }
}

fn join_words(parts: &[String]) -> String {
    let w: Vec<&str> = parts
        .iter()
        .map(String::as_str)
        .filter(|s| !s.is_empty())
        .collect();
    if w.is_empty() {
        "1".into()
    } else {
        w.join(" ")
    }
}

/// Mixed-radix product of cyclic groups, first factor most significant.
fn abelian_product(factors: &[usize]) -> Result<Group> {
    let order: usize = factors.iter().product();
    let digits = |mut x: usize| {
        let mut d = vec![0; factors.len()];
        for (i, &f) in factors.iter().enumerate().rev() {
            d[i] = x % f;
            x /= f;
        }
        d
    };
    let compose = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &f)| acc * f + x);
    let all: Vec<Vec<usize>> = (0..order).map(digits).collect();
    let mut table = Vec::with_capacity(order * order);
    for a in &all {
        for b in &all {
            let sum: Vec<usize> = a
                .iter()
                .zip(b)
                .zip(factors)
                .map(|((x, y), f)| (x + y) % f)
                .collect();
            table.push(compose(&sum));
        }
    }
    let labels = if factors.len() == 1 {
        (0..order).map(|a| join_words(&[word("r", a)])).collect()
    } else {
        all.iter()
            .map(|d| {
                let inner: Vec<String> = d.iter().map(usize::to_string).collect();
                format!("({})", inner.join(","))
            })
            .collect()
    };
    Group::from_table(order, table, Some(labels))
}

/// Groups of words `r^a s^j` (`0 <= a < n`, `j in {0,1}`) with
/// `s r s^-1 = r^twist` and `s^2 = r^square`. Element `r^a s^j` sits at
/// index `a + n*j`.
fn metacyclic(n: usize, twist: usize, square: usize, r: &str, s: &str) -> Result<Group> {
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, j) = (x % n, x / n);
        for y in 0..order {
            let (b, l) = (y % n, y / n);
            // s^j r^b = r^{b * twist^j} s^j
            let mut e = (a + b * pow_mod(twist, j, n)) % n;
            let mut t = j + l;
            if t == 2 {
                e = (e + square) % n;
                t = 0;
            }
            table.push(e + n * t);
        }
    }
    let labels = (0..order)
        .map(|x| join_words(&[word(r, x % n), word(s, x / n)]))
        .collect();
    Group::from_table(order, table, Some(labels)).map_err(|e| {
        Error::RelationInconsistency(format!("metacyclic({n}, {twist}, {square}): {e}"))
    })
}

/// `r^a s^b t^c` at index `a + p b + p^2 c`, multiplied through the
/// unitriangular matrix model where `r^a s^b t^c = (a, b, ab + c)`.
fn heisenberg(p: usize) -> Result<Group> {
    let order = p * p * p;
    let to_matrix = |x: usize| {
        let (a, b, c) = (x % p, (x / p) % p, x / (p * p));
        (a, b, (a * b + c) % p)
    };
    let from_matrix = |(x, y, z): (usize, usize, usize)| {
        let c = (z + p * p - (x * y) % p) % p;
        x + p * y + p * p * c
    };
    let mut table = Vec::with_capacity(order * order);
    for u in 0..order {
        let (x1, y1, z1) = to_matrix(u);
        for v in 0..order {
            let (x2, y2, z2) = to_matrix(v);
            table.push(from_matrix((
                (x1 + x2) % p,
                (y1 + y2) % p,
                (z1 + z2 + x1 * y2) % p,
            )));
        }
    }
    let labels = (0..order)
        .map(|x| {
            join_words(&[
                word("r", x % p),
                word("s", (x / p) % p),
                word("t", x / (p * p)),
            ])
        })
        .collect();
    Group::from_table(order, table, Some(labels))
}

/// `r^a s^b` at index `a + p^2 b` with `s r s^-1 = r^{1+p}`.
fn modular(p: usize) -> Result<Group> {
    let n = p * p;
    let order = n * p;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x % n, x / n);
        for y in 0..order {
            let (c, d) = (y % n, y / n);
            let e = (a + c * pow_mod(1 + p, b, n)) % n;
            table.push(e + n * ((b + d) % p));
        }
    }
    let labels = (0..order)
        .map(|x| join_words(&[word("r", x % n), word("s", x / n)]))
        .collect();
    Group::from_table(order, table, Some(labels))
}

/// Breadth-first closure; `(g h)(i) = g(h(i))`. Elements are indexed in
/// discovery order starting from the identity.
fn permutation_closure(generators: &[Vec<usize>], bound: usize) -> Result<Group> {
    let degree = generators.first().map_or(0, Vec::len);
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, Elem> = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0]);
    let compose = |g: &[usize], h: &[usize]| h.iter().map(|&i| g[i]).collect::<Vec<_>>();
    while let Some(e) = queue.pop_front() {
        for gen in generators {
            let next = compose(&elements[e], gen);
            if !index.contains_key(&next) {
                if elements.len() == bound {
                    return Err(Error::OrderOverflow {
                        order: bound + 1,
                        bound,
                    });
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    let order = elements.len();
    let mut table = Vec::with_capacity(order * order);
    for a in &elements {
        for b in &elements {
            table.push(index[&compose(a, b)]);
        }
    }
    let labels = elements.iter().map(|p| cycle_notation(p)).collect();
    Group::from_table(order, table, Some(labels))
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        let inner: Vec<String> = cycle.iter().map(usize::to_string).collect();
        out.push_str(&format!("({})", inner.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}
