use rug::{Integer, Rational};

use super::expansion::{AsymTerm, AsymptoticExpansion, LogPowerMonomial};
use super::jet::{gamma_ratio_polys, rational_jet, reciprocal_gamma_jet};
use super::Exponent;
use crate::error::{Error, Result};
use crate::numerics::{Complex, Precision};

/// Exact [zⁿ](1−z)^α L(z)^k for n = 0..=n_max, α rational.
///
/// k = 0 uses the product Π_{j<n}(j−α)/(j+1). For k ≥ 1 the α-derivatives
/// follow from the Bell recurrence on the log-derivatives
/// κ_s = (−1)^{s−1}(s−1)! Σ_j (α−j)^{−s}. When α = r is a nonnegative
/// integer below n the vanishing factor (r−α) is split off by Leibniz.
pub fn log_power_coefficients(alpha: &Rational, k: u32, n_max: usize) -> Vec<Rational> {
    let k = k as usize;
    let int_root: Option<usize> = (alpha.is_integer() && *alpha >= 0)
        .then(|| alpha.numer().to_usize())
        .flatten();
    let mut q = Rational::from(1);
    let mut sums = vec![Rational::new(); k + 1];
    let mut out = Vec::with_capacity(n_max + 1);
    let sign_k = if k.is_multiple_of(2) { 1 } else { -1 };
    for n in 0..=n_max {
        let excluded = int_root.is_some_and(|r| r < n);
        let need = if excluded { k.saturating_sub(1) } else { k };
        let derivs = if excluded && k == 0 {
            Vec::new()
        } else {
            bell_derivatives(&q, &sums, need)
        };
        let v = if excluded {
            if k == 0 {
                Rational::new()
            } else {
                Rational::from(&derivs[k - 1] * (-(k as i64)))
            }
        } else {
            derivs[k].clone()
        };
        out.push(v * sign_k);
        // absorb the factor j = n
        let j = Rational::from(n as u64);
        if int_root == Some(n) {
            q /= n as u64 + 1;
        } else {
            let lin = Rational::from(&j - alpha);
            q *= &lin;
            q /= n as u64 + 1;
            let inv = Rational::from(alpha - &j).recip();
            let mut pw = inv.clone();
            for s in sums.iter_mut().skip(1) {
                *s += &pw;
                pw *= &inv;
            }
        }
    }
    out
}

/// D^0..=D^need of q from the power sums S_s = Σ (α−j)^{−s}.
fn bell_derivatives(q: &Rational, sums: &[Rational], need: usize) -> Vec<Rational> {
    let kappa: Vec<Rational> = (0..=need)
        .map(|s| {
            if s == 0 {
                return Rational::new();
            }
            let f = Integer::from(Integer::factorial(s as u32 - 1));
            let sign = if s % 2 == 1 { 1 } else { -1 };
            Rational::from(&sums[s] * f) * sign
        })
        .collect();
    let mut d = vec![q.clone()];
    for m in 1..=need {
        let mut acc = Rational::new();
        for i in 0..m {
            let binom = Integer::from(Integer::binomial_u(m as u32 - 1, i as u32));
            acc += Rational::from(&kappa[i + 1] * &d[m - 1 - i]) * binom;
        }
        d.push(acc);
    }
    d
}

/// Exact [zⁿ] of c·(1 − z/ζ)^α·L(z/ζ)^k.
pub fn transfer_exact(m: &LogPowerMonomial, n: usize, p: Precision) -> Complex {
    let v = log_power_coefficients(&m.alpha.to_rational(), m.k, n).pop().expect("n_max ≥ 0");
    &(&m.c * &m.zeta.pow_neg(n as u64).value(p)) * &Complex::from_rational(p, &v)
}

/// [zⁿ] of the monomial for every n ≤ n_max.
pub fn transfer_exact_prefix(m: &LogPowerMonomial, n_max: usize, p: Precision) -> Vec<Complex> {
    log_power_coefficients(&m.alpha.to_rational(), m.k, n_max)
        .iter()
        .enumerate()
        .map(|(n, v)| &(&m.c * &m.zeta.pow_neg(n as u64).value(p)) * &Complex::from_rational(p, v))
        .collect()
}

/// Asymptotic expansion of [zⁿ] c·(1 − z/ζ)^α·L(z/ζ)^k with `depth` powers
/// of n: n^{−α−1−i}, i = 0..depth, each with log n powers 0..=k.
///
/// Uses [zⁿ](1−z)^α L^k = (−1)^k ∂_α^k [Σ_i e_i(α) n^{−α−1−i}/Γ(−α)],
/// carried out on ε-jets of e_i(α+ε)/Γ(−α−ε). At α ∈ Z≥0 the reciprocal
/// Gamma factor vanishes at ε = 0, which removes the (log n)^k terms.
pub fn transfer_asymptotic(m: &LogPowerMonomial, depth: usize, p: Precision) -> Result<AsymptoticExpansion> {
    if depth == 0 {
        return Err(Error::InvalidArgument("transfer depth must be ≥ 1".into()));
    }
    let wp = p.raised(10);
    let k = m.k as usize;
    let len = k + 1;
    let alpha = m.alpha.to_rational();
    let g = reciprocal_gamma_jet(&alpha, len, wp)?;
    let polys = gamma_ratio_polys(depth);
    let mut fact_k = Integer::from(1);
    for i in 1..=k {
        fact_k *= i as u32;
    }
    let mut terms = Vec::new();
    for (i, poly) in polys.iter().enumerate() {
        let e = poly.taylor_at(&alpha, len);
        if e.iter().all(|c| *c == 0) {
            continue;
        }
        let jet = rational_jet(&e, wp).mul(&g);
        let beta = m.alpha + Exponent::int(1 + i as i64);
        let mut fact_p = Integer::from(1);
        for pw in 0..=k {
            if pw > 0 {
                fact_p *= pw as u32;
            }
            let jc = &jet.coeffs[k - pw];
            if jc.is_zero() {
                continue;
            }
            // (−1)^k k! (−1)^p / p!
            let sign = if (k + pw).is_multiple_of(2) { 1 } else { -1 };
            let scal = Rational::from((Integer::from(&fact_k * sign), fact_p.clone()));
            let amp = &jc.scale_rational(&scal) * &m.c;
            terms.push(AsymTerm {
                zeta: m.zeta,
                beta,
                j: pw as u32,
                amp: round_to(amp, p),
            });
        }
    }
    let err = m.alpha + Exponent::int(1 + depth as i64);
    Ok(AsymptoticExpansion::from_terms(terms).with_error_beta(Some(err)))
}

fn round_to(c: Complex, p: Precision) -> Complex {
    Complex::new(p.float(&c.re), p.float(&c.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactSeries;
    use crate::numerics::RootOfUnity;

    #[test]
    fn simple_binomials() {
        let v = log_power_coefficients(&Rational::from((1, 2)), 0, 1);
        assert_eq!(v[1], Rational::from((-1, 2)));
        let w = log_power_coefficients(&Rational::from(-1), 0, 10);
        assert!(w.iter().all(|c| *c == 1));
        // polynomial case
        let poly = log_power_coefficients(&Rational::from(2), 0, 5);
        assert_eq!(poly[..3], [Rational::from(1), Rational::from(-2), Rational::from(1)]);
        assert!(poly[3..].iter().all(|c| *c == 0));
    }

    #[test]
    fn one_minus_z_times_log_squared() {
        // oracle: convolution of (1 − z) with L²
        let n = 8;
        let l = ExactSeries::polylog(1, n);
        let lhs = ExactSeries::from_rationals([1, -1, 0, 0, 0, 0, 0, 0, 0]).mul(&l.mul(&l));
        let v = log_power_coefficients(&Rational::from(1), 2, n);
        assert_eq!(v[4], Rational::from((-1, 12)));
        assert_eq!(v.as_slice(), lhs.coeffs());
    }

    #[test]
    fn against_series_convolution() {
        let n = 25;
        let l = ExactSeries::polylog(1, n);
        for (an, ad) in [(-3, 2), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1), (3, 1)] {
            let a = Rational::from((an, ad));
            let base = ExactSeries::one(n)
                .sub(&ExactSeries::monomial(n, 1, Rational::from(1)))
                .pow_rational(&a)
                .unwrap();
            let mut s = base;
            for k in 0..=3u32 {
                assert_eq!(log_power_coefficients(&a, k, n).as_slice(), s.coeffs(), "α={a}, k={k}");
                s = s.mul(&l);
            }
        }
    }

    #[test]
    fn rotation_rule() {
        let p = Precision::new(30);
        let m = LogPowerMonomial::new(RootOfUnity::new(2, 1), Exponent::int(-1), 0, Complex::one(p));
        // 1/(1 + z): coefficients (−1)ⁿ
        let v = transfer_exact_prefix(&m, 5, p);
        for (n, c) in v.iter().enumerate() {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((c.re.to_f64() - s).abs() < 1e-25 && c.im.to_f64().abs() < 1e-25);
        }
    }

    #[test]
    fn integer_alpha_without_logs_is_empty() {
        let p = Precision::new(30);
        let e = transfer_asymptotic(&LogPowerMonomial::unit(Exponent::int(2), 0, p), 4, p).unwrap();
        assert!(e.is_empty());
        let e = transfer_asymptotic(&LogPowerMonomial::unit(Exponent::int(-1), 0, p), 6, p).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.terms()[0].amp.re, 1);
    }

    #[test]
    fn integer_alpha_leading_log_term() {
        // (1−z)^r L^k ~ (−1)^r k r! n^{−r−1} (log n)^{k−1}
        let p = Precision::new(30);
        for r in 0..3i64 {
            for k in 1..4u32 {
                let e = transfer_asymptotic(&LogPowerMonomial::unit(Exponent::int(r), k, p), 1, p).unwrap();
                let lead = e.amplitude(RootOfUnity::one(), Exponent::int(r + 1), k - 1).unwrap();
                let fact: i64 = (1..=r).product();
                let expect = (if r % 2 == 0 { 1 } else { -1 }) * k as i64 * fact;
                assert!((lead.re.to_f64() - expect as f64).abs() < 1e-20);
                assert!(e.amplitude(RootOfUnity::one(), Exponent::int(r + 1), k).is_none());
            }
        }
    }
}
