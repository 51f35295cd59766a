use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

/// Tangent numbers `T_1..T_n` (`tan z = Σ T_k z^(2k-1)/(2k-1)!`), Brent–Harvey
/// in-place integer recurrence.
fn tangent_integers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j as u64 - k as u64));
            let b = Integer::from(&t[j] * (j as u64 - k as u64 + 2));
            t[j] = a + b;
        }
    }
    t
}

/// Normalized tangent numbers `τ_0..τ_{count-1}` with `tan z = Σ τ_m z^(2m+1)`.
pub fn tangent_numbers(count: usize) -> Vec<Rational> {
    let t = tangent_integers(count);
    (0..count)
        .map(|m| {
            let f = Integer::from(Integer::factorial(2 * m as u32 + 1));
            Rational::from((t[m + 1].clone(), f))
        })
        .collect()
}

fn even_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// `B_2, B_4, …, B_{2k}` for `k = 1..=count`.
fn even_bernoulli(count: usize) -> Vec<Rational> {
    let mut guard = even_cache().lock().expect("bernoulli cache poisoned");
    if guard.len() < count {
        let target = count.max(2 * guard.len()).max(64);
        let t = tangent_integers(target);
        let mut out = Vec::with_capacity(target);
        for k in 1..=target {
            let four_k = Integer::from(1) << (2 * k as u32);
            let den = &four_k * Integer::from(&four_k - 1u32) ;
            let num = Integer::from(&t[k] * (2 * k as u64));
            let mut b = Rational::from((num, den));
            if k % 2 == 0 {
                b = -b;
            }
            out.push(b);
        }
        *guard = out;
    }
    guard[..count].to_vec()
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    match n {
        0 => Rational::from(1),
        1 => Rational::from((-1, 2)),
        n if n % 2 == 1 => Rational::new(),
        n => even_bernoulli(n / 2).pop().expect("nonempty"),
    }
}

/// `B_0..=B_n`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let evens = even_bernoulli(n / 2);
    (0..=n)
        .map(|k| match k {
            0 => Rational::from(1),
            1 => Rational::from((-1, 2)),
            k if k % 2 == 1 => Rational::new(),
            k => evens[k / 2 - 1].clone(),
        })
        .collect()
}
