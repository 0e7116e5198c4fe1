//! Small integer helpers: primality, factorization, gcd, exact logarithms.

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as ascending `(p, e)` pairs.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: usize) -> Vec<usize> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exponent of the largest power of `p` dividing `n`.
pub fn valuation(p: usize, mut n: usize) -> u32 {
    debug_assert!(p >= 2 && n > 0);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// `Some(e)` when `n == p^e`.
pub fn exact_log(p: usize, n: usize) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let e = valuation(p, n);
    (p.checked_pow(e)? == n).then_some(e)
}

/// `Some(p)` when `n` is a power of a single prime (`n > 1`).
pub fn prime_power_base(n: usize) -> Option<usize> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub(crate) fn pow_mod(base: usize, exp: usize, modulus: usize) -> usize {
    let mut acc = 1 % modulus;
    for _ in 0..exp {
        acc = acc * base % modulus;
    }
    acc
}
