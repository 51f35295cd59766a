//! Small integer arithmetic used by the product families.

use rug::Integer;

/// Prime factorization by trial division, primes ascending.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Möbius function μ(n).
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let f = prime_factors(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler's totient φ(n).
pub fn totient(n: u64) -> u64 {
    prime_factors(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// lim_j gcd(ℓ^j, m): the part of m made of primes dividing ℓ.
pub fn ggcd(l: u64, m: u64) -> u64 {
    prime_factors(m)
        .iter()
        .filter(|&&(p, _)| l.is_multiple_of(p))
        .map(|&(p, e)| p.pow(e))
        .product()
}

/// `Some((p, e))` when `q = p^e` with `e ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match prime_factors(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Number of monic irreducible polynomials of degree `n` over F_q:
/// `(1/n) Σ_{k|n} μ(k) q^{n/k}`.
pub fn irreducible_count(q: u64, n: u64) -> Integer {
    assert!(n >= 1);
    let mut acc = Integer::new();
    for k in divisors(n) {
        let mu = mobius(k);
        if mu != 0 {
            let t = Integer::from(Integer::u_pow_u(q as u32, (n / k) as u32));
            acc += t * mu;
        }
    }
    acc / n
}

/// Catalan-type count `T_n = binom(2n−2, n−1)/n` of plane trees, `n ≥ 1`.
pub fn plane_trees(n: u64) -> Integer {
    assert!(n >= 1);
    let b = Integer::from(Integer::binomial_u(2 * n as u32 - 2, n as u32 - 1));
    b / n
}
