use std::fmt;
use std::sync::Arc;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::arith::{ggcd, irreducible_count, plane_trees, prime_power};
use super::series::{Coeff, ExactSeries, TruncatedSeries};
use crate::error::{Error, Result};

type Rule<C> = dyn Fn(usize, usize) -> Vec<(usize, C)> + Send + Sync;

/// Rule for the factors a_k(z) of an infinite product ∏_{k≥1} a_k(z).
///
/// `rule(k, N)` returns the nonconstant terms of a_k mod z^{N+1} as
/// `(power, coefficient)` pairs; every power must be ≥ k, so the product
/// of the first N factors is exact mod z^{N+1}.
#[derive(Clone)]
pub struct FactorGenerator<C = Rational> {
    name: String,
    proto: C,
    rule: Arc<Rule<C>>,
}

impl<C: fmt::Debug> fmt::Debug for FactorGenerator<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FactorGenerator").field("name", &self.name).finish()
    }
}

impl<C: Coeff + 'static> FactorGenerator<C> {
    pub fn new<F>(name: impl Into<String>, proto: C, rule: F) -> Self
    where
        F: Fn(usize, usize) -> Vec<(usize, C)> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            proto,
            rule: Arc::new(rule),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Nonconstant terms of a_k mod z^{order+1}.
    pub fn factor_terms(&self, k: usize, order: usize) -> Vec<(usize, C)> {
        let terms = (self.rule)(k, order);
        assert!(
            terms.iter().all(|(p, _)| *p >= k),
            "factor {k} of {} is not 1 + O(z^{k})",
            self.name
        );
        terms
    }

    /// a_k as a series mod z^{order+1}.
    pub fn factor(&self, k: usize, order: usize) -> TruncatedSeries<C> {
        let mut c = TruncatedSeries::one_with(order, &self.proto).into_coeffs();
        for (p, v) in self.factor_terms(k, order) {
            if p <= order {
                c[p].add_assign_ref(&v);
            }
        }
        TruncatedSeries::from_coeffs(c)
    }
}

impl FactorGenerator<Rational> {
    /// Same product with coefficients rounded to `bits`-bit floats.
    pub fn to_float(&self, bits: u32) -> FactorGenerator<Float> {
        let rule = self.rule.clone();
        FactorGenerator::new(self.name.clone(), Float::with_val(bits, 0), move |k, n| {
            rule(k, n).into_iter().map(|(p, c)| (p, Float::with_val(bits, &c))).collect()
        })
    }
}

/// ∏_{k=1}^{N} a_k(z) mod z^{N+1}, which equals the infinite product there.
pub fn product_expand<C: Coeff + 'static>(g: &FactorGenerator<C>, order: usize) -> TruncatedSeries<C> {
    let mut acc = TruncatedSeries::one_with(order, &g.proto);
    for k in 1..=order {
        let terms = g.factor_terms(k, order);
        acc = acc.mul_sparse_factor(&terms);
    }
    acc
}

fn factorial(n: u64) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// 1 + z^k/k: permutations with distinct cycle lengths.
pub fn distinct_cycles() -> FactorGenerator {
    FactorGenerator::new("distinct-cycles", Rational::new(), |k, _| vec![(k, Rational::from((1, k as u64)))])
}

/// exp_d(z^k/k) with d = ⟨⟨k, m⟩⟩: permutations having an m-th root.
pub fn mth_root(m: u64) -> Result<FactorGenerator> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("m-th roots need m ≥ 2, got {m}")));
    }
    Ok(FactorGenerator::new(format!("mth-roots:{m}"), Rational::new(), move |k, n| {
        let d = ggcd(k as u64, m) as usize;
        let mut out = Vec::new();
        let mut j = 1;
        while k * d * j <= n {
            let e = (d * j) as u32;
            let den = Integer::from(Integer::u_pow_u(k as u32, e)) * factorial(e as u64);
            out.push((k * d * j, Rational::from((1, den))));
            j += 1;
        }
        out
    }))
}

/// cosh(z^k/k) for even k, e^{z^k/k} for odd k.
pub fn square_permutations() -> FactorGenerator {
    let mut g = mth_root(2).expect("m = 2 is valid");
    g.name = "square-perms".into();
    g
}

/// I(z^k/k²) with I(x) = Σ xⁿ/n!²: pairs of permutations of equal cycle type.
pub fn same_cycle_type() -> FactorGenerator {
    FactorGenerator::new("same-cycle-type", Rational::new(), |k, n| {
        let mut out = Vec::new();
        let mut j = 1;
        while k * j <= n {
            let f = factorial(j as u64);
            let den = Integer::from(Integer::u_pow_u(k as u32, 2 * j as u32)) * f.clone() * f;
            out.push((k * j, Rational::from((1, den))));
            j += 1;
        }
        out
    })
}

fn check_prime_power(q: u64) -> Result<()> {
    prime_power(q)
        .map(|_| ())
        .ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a prime power")))
}

/// 1 + I_k z^k: polynomials over F_q with irreducible factors of distinct degrees.
pub fn distinct_degree(q: u64) -> Result<FactorGenerator> {
    check_prime_power(q)?;
    Ok(FactorGenerator::new(format!("ddf:{q}"), Rational::new(), move |k, _| {
        vec![(k, Rational::from(irreducible_count(q, k as u64)))]
    }))
}

/// 1 + I_k z^k/(1 − z^k): square-free parts with distinct degrees.
pub fn distinct_degree_hat(q: u64) -> Result<FactorGenerator> {
    check_prime_power(q)?;
    Ok(FactorGenerator::new(format!("ddf-hat:{q}"), Rational::new(), move |k, n| {
        let c = Rational::from(irreducible_count(q, k as u64));
        (1..=n / k).map(|j| (k * j, c.clone())).collect()
    }))
}

/// 1 + T_k z^k with T_k plane trees of size k: dissimilar forests.
pub fn dissimilar_forests() -> FactorGenerator {
    FactorGenerator::new("forests:E", Rational::new(), |k, _| vec![(k, Rational::from(plane_trees(k as u64)))])
}

/// (1 − z^k)^{−T_k}: all forests of plane trees.
pub fn all_forests() -> FactorGenerator {
    FactorGenerator::new("forests:F", Rational::new(), |k, n| {
        let t = plane_trees(k as u64);
        let mut out = Vec::new();
        // binom(T + j − 1, j) built incrementally
        let mut b = Integer::from(1);
        for j in 1..=n / k {
            b *= Integer::from(&t + (j as u64 - 1));
            b /= j as u64;
            out.push((k * j, Rational::from(b.clone())));
        }
        out
    })
}

/// 1 + k^a z^k for integer a.
pub fn q_alpha_integer(a: i64) -> FactorGenerator {
    FactorGenerator::new(format!("q-alpha:{a}"), Rational::new(), move |k, _| {
        let kk = Integer::from(k);
        let v = if a >= 0 {
            Rational::from(kk.pow(a as u32))
        } else {
            Rational::from((1, kk.pow((-a) as u32)))
        };
        vec![(k, v)]
    })
}

/// 1 + k^α z^k for rational α, with `bits`-bit float coefficients.
pub fn q_alpha_float(alpha: &Rational, bits: u32) -> FactorGenerator<Float> {
    let a = Float::with_val(bits, alpha);
    FactorGenerator::new(format!("q-alpha:{alpha}"), Float::with_val(bits, 0), move |k, _| {
        let v = Float::with_val(bits, Float::with_val(bits, k).ln() * &a).exp();
        vec![(k, v)]
    })
}

/// I(z) = Σ zⁿ/n!² mod z^{order+1}.
pub fn bessel_i_series(order: usize) -> ExactSeries {
    ExactSeries::from_coeffs(
        (0..=order)
            .map(|n| {
                let f = factorial(n as u64);
                Rational::from((1, f.clone() * f))
            })
            .collect(),
    )
}

/// T(z) = (1 − √(1−4z))/2 mod z^{order+1}.
pub fn plane_tree_series(order: usize) -> ExactSeries {
    ExactSeries::from_coeffs(
        (0..=order)
            .map(|n| if n == 0 { Rational::new() } else { Rational::from(plane_trees(n as u64)) })
            .collect(),
    )
}

/// n!·[zⁿ] or n!²·[zⁿ] scaling used when printing prefixes.
pub fn factorial_scaled(s: &ExactSeries, power: u32) -> Vec<Rational> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let f = factorial(n as u64).pow(power);
            Rational::from(c * f)
        })
        .collect()
}
