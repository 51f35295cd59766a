use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::lps::LogPowerSeries;
use crate::error::{Error, Result};
use crate::exact::ExactSeries;
use crate::logpower::Exponent;
use crate::numerics::{gamma_real, harmonic, zeta, Complex, ComplexSeries, Precision, RootOfUnity};

/// τ = −log w at w = z^ℓ, z = ζ(1 − X), ζ^ℓ = 1:
/// τ = ℓ·X·u(X) with u = Σ_i X^i/(i+1).
#[derive(Clone, Debug, PartialEq)]
pub struct TauSeries {
    pub scale: u64,
    u: ExactSeries,
}

impl TauSeries {
    /// u(X) to `len` coefficients.
    pub fn new(scale: u64, len: usize) -> Self {
        let u = ExactSeries::from_coeffs((0..len.max(1)).map(|i| Rational::from((1, i as u64 + 1))).collect());
        Self { scale, u }
    }

    /// Coefficients of τ itself in X; the constant term is 0.
    pub fn coeffs(&self) -> Vec<Rational> {
        let mut v = vec![Rational::new()];
        v.extend(self.u.coeffs().iter().map(|c| Rational::from(c * self.scale)));
        v
    }

    pub fn u_pow(&self, e: &Rational) -> ExactSeries {
        self.u.pow_rational(e).expect("u(0) = 1")
    }

    pub fn log_u(&self) -> ExactSeries {
        self.u.log().expect("u(0) = 1")
    }
}

/// Number of integers i ≥ 0 with base + i < t.
fn powers_below(base: Exponent, t: Exponent) -> usize {
    let d = t - base;
    if !d.is_positive() {
        return 0;
    }
    (-(-d).floor()) as usize
}

fn to_complex(s: &ExactSeries, len: usize, p: Precision) -> ComplexSeries {
    ComplexSeries {
        coeffs: (0..len)
            .map(|i| Complex::from_rational(p, s.coeffs().get(i).unwrap_or(&Rational::new())))
            .collect(),
    }
}

type ZetaCache = Mutex<HashMap<(i64, u32), Float>>;

/// ζ(s), memoized at integer s (the polylog expansions ask for the same
/// values over and over).
fn zeta_at(s: Exponent, p: Precision) -> Result<Float> {
    let b = p.bits();
    let Some(k) = s.as_integer() else {
        return zeta(&s.to_float(b), p);
    };
    static CACHE: OnceLock<ZetaCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("zeta cache poisoned").get(&(k, b)) {
        return Ok(v.clone());
    }
    let v = zeta(&Float::with_val(b, k), p)?;
    cache.lock().expect("zeta cache poisoned").insert((k, b), v.clone());
    Ok(v)
}

fn round(c: &Complex, p: Precision) -> Complex {
    Complex::new(p.float(&c.re), p.float(&c.im))
}

fn prune_tol(p: Precision) -> Float {
    let b = p.bits();
    Float::with_val(b, 10u32).pow(-(p.digits() as i32 - 5).max(1))
}

/// Singular expansion of Li_ν at z = 1 to O(X^t).
pub fn polylog_singular(nu: Exponent, t: Exponent, p: Precision) -> Result<LogPowerSeries> {
    expand_polylog_power(nu, 1, RootOfUnity::one(), t, p)
}

/// Li_ν(z^ℓ) around z = ζ to O(X^t). Singular when ζ^ℓ = 1, otherwise a
/// Taylor expansion built from Li_{ν−r}(ζ^ℓ).
pub fn expand_polylog_power(nu: Exponent, ell: u64, zeta: RootOfUnity, t: Exponent, p: Precision) -> Result<LogPowerSeries> {
    if ell == 0 {
        return Err(Error::InvalidArgument("polylog power ℓ must be ≥ 1".into()));
    }
    let wp = p.raised(10);
    let s = if zeta.pow(ell).is_one() {
        singular_at_root(nu, ell, zeta, t, wp)?
    } else {
        analytic_at_root(nu, ell, zeta, t, wp)?
    };
    let mut out = LogPowerSeries::zero(zeta, t, p);
    let tol = prune_tol(p);
    for (a, k, c) in s.terms() {
        if c.abs() >= tol {
            out.add_term(a, k, &round(c, p));
        }
    }
    Ok(out)
}

fn singular_at_root(nu: Exponent, ell: u64, center: RootOfUnity, t: Exponent, p: Precision) -> Result<LogPowerSeries> {
    let b = p.bits();
    let len_max = powers_below(nu - Exponent::int(1), t).max(powers_below(Exponent::zero(), t));
    let tau = TauSeries::new(ell, len_max + 1);
    let mut out = LogPowerSeries::zero(center, t, p);
    let ell_f = Float::with_val(b, ell);
    let int_m = nu.as_integer().filter(|m| *m >= 1);

    // Σ_j ζ(ν−j)(−τ)^j/j!, skipping j = m−1 in the integer case
    let len0 = powers_below(Exponent::zero(), t);
    let mut analytic = ComplexSeries::zero(p, len0);
    let mut fact = Integer::from(1);
    for j in 0..len0 {
        if j > 0 {
            fact *= j as u32;
        }
        if int_m == Some(j as i64 + 1) {
            continue;
        }
        let z = zeta_at(nu - Exponent::int(j as i64), p)?;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let coef = Float::with_val(b, z * Float::with_val(b, (&ell_f).pow(j as u32))) * sign / &fact;
        let uj = to_complex(&tau.u_pow(&Rational::from(j as u64)), len0, p).shift(j);
        analytic = analytic.add(&uj.scale(&Complex::real(coef)));
    }
    out.add_series(Exponent::zero(), 0, &analytic);

    match int_m {
        Some(m) => {
            // (−1)^m/(m−1)! τ^{m−1}(log τ − H_{m−1}), log τ = log ℓ − Λ + log u
            let base = Exponent::int(m - 1);
            let len = powers_below(base, t);
            if len > 0 {
                let f = Integer::from(Integer::factorial(m as u32 - 1));
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let kappa = Float::with_val(b, (&ell_f).pow((m - 1) as u32)) * sign / f;
                let kappa = Complex::real(kappa);
                let a = tau.u_pow(&Rational::from(m - 1));
                let ac = to_complex(&a, len, p);
                out.add_series(base, 1, &ac.scale(&-&kappa));
                let mut inner = tau.log_u();
                let shift = Rational::from(&-harmonic((m - 1) as u64));
                let mut c = inner.coeffs().to_vec();
                c[0] += shift;
                inner = ExactSeries::from_coeffs(c);
                let with_log_ell = to_complex(&a.mul(&inner), len, p)
                    .add(&ac.scale(&Complex::real(Float::with_val(b, ell_f.ln_ref()))));
                out.add_series(base, 0, &with_log_ell.scale(&kappa));
            }
        }
        None => {
            // Γ(1−ν) τ^{ν−1}
            let base = nu - Exponent::int(1);
            let len = powers_below(base, t);
            if len > 0 {
                let g = gamma_real(&(Exponent::int(1) - nu).to_float(b), p)?;
                let ell_pow = Float::with_val(b, (&ell_f).pow(&base.to_float(b)));
                let kappa = Complex::real(Float::with_val(b, g * ell_pow));
                let a = to_complex(&tau.u_pow(&base.to_rational()), len, p);
                out.add_series(base, 0, &a.scale(&kappa));
            }
        }
    }
    Ok(out)
}

fn analytic_at_root(nu: Exponent, ell: u64, center: RootOfUnity, t: Exponent, p: Precision) -> Result<LogPowerSeries> {
    // Li_ν(w0·e^η) = Σ_r Li_{ν−r}(w0) η^r/r!, η = ℓ·log(1 − X)
    let len = powers_below(Exponent::zero(), t);
    let w0 = center.pow(ell).value(p);
    let tau = TauSeries::new(ell, len + 1);
    let eta = ExactSeries::from_coeffs(tau.coeffs().into_iter().take(len.max(1)).collect()).neg();
    let mut acc = ComplexSeries::zero(p, len);
    let mut pw = ExactSeries::one(len.saturating_sub(1));
    for r in 0..len {
        if r > 0 {
            pw = pw.mul(&eta).scale(&Rational::from((1, r as u64)));
        }
        let li = polylog_eval(nu - Exponent::int(r as i64), &w0, p)?;
        acc = acc.add(&to_complex(&pw, len, p).scale(&li));
    }
    Ok(LogPowerSeries::from_series(center, Exponent::zero(), 0, &acc, t, p))
}

/// Li_ν(w) for |w| ≤ 1, w ≠ 1 unless ν > 1.
///
/// Direct summation for |w| ≤ 3/4, otherwise the expansion in μ = log w,
/// Li_ν(e^μ) = Γ(1−ν)(−μ)^{ν−1} + Σ_j ζ(ν−j) μ^j/j! (log form at integer ν),
/// which converges for |μ| < 2π.
pub fn polylog_eval(nu: Exponent, w: &Complex, p: Precision) -> Result<Complex> {
    let wp = p.raised(10);
    let b = wp.bits();
    let one = Complex::one(wp);
    if *w == one {
        if nu > Exponent::int(1) {
            return Ok(Complex::real(zeta_at(nu, wp)?));
        }
        return Err(Error::DivergentPoint { nu: nu.to_string() });
    }
    let r = w.abs();
    if r > Float::with_val(b, 1) + wp.epsilon() * 16u32 {
        return Err(Error::InvalidArgument(format!("polylog argument outside the unit disc: |w| = {}", r.to_f64())));
    }
    // n^{1−ν} falls below 10^{−P} within ~10³ terms
    let steep = (nu.to_f64() - 1.0) * 3.0 >= wp.digits() as f64;
    let v = if r <= 0.75 || steep {
        polylog_direct(nu, w, wp)
    } else {
        polylog_mu_series(nu, &w.ln(), wp)?
    };
    Ok(round(&v, p))
}

/// Σ w^n/n^ν, for |w| < 1.
pub fn polylog_direct(nu: Exponent, w: &Complex, p: Precision) -> Complex {
    let b = p.bits();
    let eps = p.epsilon();
    let nu_f = nu.to_float(b);
    let mut acc = Complex::zero(p);
    let mut wn = Complex::one(p);
    let peak = 2 * nu.to_f64().abs() as u64 + 2;
    for n in 1u64.. {
        wn = &wn * w;
        let scale = Float::with_val(b, -Float::with_val(b, &nu_f * Float::with_val(b, n).ln())).exp();
        let term = wn.scale(&scale);
        acc += &term;
        if n > peak && term.abs() <= Float::with_val(b, &eps * acc.abs()) {
            break;
        }
        if wn.is_zero() {
            break;
        }
    }
    acc
}

/// Li_ν(e^μ) by the μ-expansion around μ = 0, |μ| < 2π, μ ≠ 0.
pub fn polylog_mu_series(nu: Exponent, mu: &Complex, p: Precision) -> Result<Complex> {
    let b = p.bits();
    let eps = p.epsilon();
    let neg_mu = -mu;
    let int_m = nu.as_integer().filter(|m| *m >= 1);
    let mut acc = match int_m {
        Some(m) => {
            let f = Integer::from(Integer::factorial(m as u32 - 1));
            let h = Complex::from_rational(p, &harmonic((m - 1) as u64));
            let lead = mu.powi(m - 1).scale_rational(&Rational::from((1, f)));
            &lead * &(&h - &neg_mu.ln())
        }
        None => {
            let g = gamma_real(&(Exponent::int(1) - nu).to_float(b), p)?;
            let e = Complex::from_rational(p, &(nu - Exponent::int(1)).to_rational());
            neg_mu.pow(&e).scale(&g)
        }
    };
    let mut mu_j = Complex::one(p);
    let cap = 40 + 12 * p.digits() as usize;
    for j in 0..cap {
        if j > 0 {
            mu_j = (&mu_j * mu).scale_rational(&Rational::from((1, j as u64)));
        }
        if int_m == Some(j as i64 + 1) {
            continue;
        }
        let z = zeta_at(nu - Exponent::int(j as i64), p)?;
        if z.is_zero() {
            continue;
        }
        let term = mu_j.scale(&z);
        acc += &term;
        if j >= 2 && term.abs() <= Float::with_val(b, &eps * acc.abs().max(&Float::with_val(b, 1))) {
            return Ok(acc);
        }
    }
    Err(Error::InvalidArgument("polylog μ-series did not converge".into()))
}
