use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::{exponent_of, GfSpec, PrefactorFactor};
use crate::error::{Error, Result};
use crate::exact::{ExactSeries, FactorGenerator};
use crate::logpower::Exponent;
use crate::numerics::{Complex, ComplexSeries, Precision, RootOfUnity};
use crate::singular::{expand_polylog_power, polylog_eval, LogPowerSeries};

/// Number of integers i ≥ 0 with base + i < t.
fn powers_below(base: Exponent, t: Exponent) -> usize {
    let d = t - base;
    if !d.is_positive() {
        return 0;
    }
    (-(-d).floor()) as usize
}

fn binom(n: u64, k: u64) -> Integer {
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// c·ζ^j·(1 − X)^j as `len` coefficients in X.
fn rotated_monomial(c: &Complex, zeta: RootOfUnity, j: u64, len: usize, p: Precision) -> ComplexSeries {
    let base = c * &zeta.pow(j).value(p);
    ComplexSeries {
        coeffs: (0..len as u64)
            .map(|i| {
                if i > j {
                    return Complex::zero(p);
                }
                let s = if i % 2 == 0 { 1 } else { -1 };
                base.scale_rational(&Rational::from(binom(j, i) * s))
            })
            .collect(),
    }
}

/// (1 − z^j)^e at z = ζ(1 − X), relative accuracy `rel` powers of X.
fn binomial_factor(j: u64, e: &Rational, zeta: RootOfUnity, rel: usize, p: Precision) -> LogPowerSeries {
    let b = p.bits();
    if zeta.pow(j).is_one() {
        // 1 − (1−X)^j = X·v(X), v(0) = j; (Xv)^e = j^e X^e (v/j)^e
        let alpha = exponent_of(e);
        let v = ExactSeries::from_coeffs(
            (0..rel.max(1) as u64)
                .map(|i| {
                    if i >= j {
                        return Rational::new();
                    }
                    let s = if i % 2 == 0 { 1 } else { -1 };
                    Rational::from((binom(j, i + 1) * s, Integer::from(j)))
                })
                .collect(),
        );
        let vp = v.pow_rational(e).expect("v(0)/j = 1");
        let je = Float::with_val(b, Float::with_val(b, j).pow(&Float::with_val(b, e)));
        let series = ComplexSeries {
            coeffs: vp.coeffs().iter().map(|c| Complex::real(Float::with_val(b, c * &je))).collect(),
        };
        LogPowerSeries::from_series(zeta, alpha, 0, &series, alpha + Exponent::int(rel as i64), p)
    } else {
        // 1 − w(1−X)^j with w = ζ^j ≠ 1, principal branch
        let one = Complex::one(p);
        let mut c = rotated_monomial(&-&one, zeta, j, rel.max(1), p);
        c.coeffs[0] += &one;
        let s = c.pow(&Complex::from_rational(p, e));
        LogPowerSeries::from_series(zeta, Exponent::zero(), 0, &s, Exponent::int(rel as i64), p)
    }
}

/// Σ_n s_n z^n re-expanded at z = ζ(1 − X): coefficient of X^r is
/// (−1)^r Σ_n s_n ζ^n C(n, r).
fn analytic_extra_at(extra: &[Rational], zeta: RootOfUnity, len: usize, p: Precision) -> ComplexSeries {
    let mut out = ComplexSeries::zero(p, len);
    for (n, s) in extra.iter().enumerate().filter(|(_, s)| **s != 0) {
        let zn = zeta.pow(n as u64).value(p);
        let sz = zn.scale_rational(s);
        for r in 0..len.min(n + 1) {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            out.coeffs[r] += &sz.scale_rational(&Rational::from(binom(n as u64, r as u64) * sign));
        }
    }
    out
}

fn exponent_at(spec: &GfSpec, zeta: RootOfUnity, order: Exponent, wp: Precision) -> Result<LogPowerSeries> {
    let len = powers_below(Exponent::zero(), order);
    let mut acc = LogPowerSeries::zero(zeta, order, wp);
    for t in &spec.polylogs {
        let c = Complex::from_rational(wp, &t.coeff);
        let li = expand_polylog_power(t.nu, t.power, zeta, order, wp)?;
        for (a, k, v) in li.terms() {
            acc.add_term(a, k, &(v * &c));
        }
        if t.drop_leading {
            acc.add_series(Exponent::zero(), 0, &rotated_monomial(&-&c, zeta, t.power, len, wp));
        }
    }
    for f in &spec.prefactor {
        if let PrefactorFactor::ExpMonomial { j, c } = f {
            acc.add_series(Exponent::zero(), 0, &rotated_monomial(&Complex::from_rational(wp, c), zeta, *j, len, wp));
        }
    }
    if let Some(extra) = &spec.analytic_extra {
        acc.add_series(Exponent::zero(), 0, &analytic_extra_at(extra, zeta, len, wp));
    }
    Ok(acc)
}

fn round(c: &Complex, p: Precision) -> Complex {
    Complex::new(p.float(&c.re), p.float(&c.im))
}

/// asymp(f, ζ, t): the log-power expansion of f at ζ with error O(X^t),
/// X = 1 − z/ζ.
///
/// The prefactor is expanded exactly at ζ, each polylog by
/// [`expand_polylog_power`], the exponent is exponentiated and the two
/// multiplied. Fails with [`Error::GlobalOrder`] when the exponent itself
/// is singular at ζ (a monomial X^α Λ^k with α < 0, or α = 0 and k > 0).
pub fn radial_expansion(spec: &GfSpec, zeta: RootOfUnity, t: Exponent, p: Precision) -> Result<LogPowerSeries> {
    let wp = p.raised(10);
    let a_p = spec.prefactor_order(zeta);
    let rel_order = t - a_p;
    let rel = powers_below(Exponent::zero(), rel_order);
    if rel == 0 {
        return Ok(LogPowerSeries::zero(zeta, t, p));
    }

    let mut pre = LogPowerSeries::constant(zeta, Complex::one(wp), rel_order, wp);
    for f in &spec.prefactor {
        if let PrefactorFactor::Binomial { j, e } = f {
            pre = pre.mul(&binomial_factor(*j, e, zeta, rel, wp))?;
        }
    }

    let noise = Float::with_val(wp.bits(), 10u32).pow(-(p.digits() as i32 + 3));
    let expo = exponent_at(spec, zeta, rel_order, wp)?.pruned(&noise);
    if let Some((alpha, k, _)) = expo
        .terms()
        .find(|(a, k, _)| a.is_negative() || (*a == Exponent::zero() && *k > 0))
    {
        return Err(Error::GlobalOrder {
            root: zeta.to_string(),
            alpha: alpha.to_string(),
            k,
        });
    }
    let f = pre.mul(&expo.exp()?)?;

    let peak = f.terms().map(|(_, _, c)| c.abs()).fold(Float::with_val(wp.bits(), 1), |m, a| m.max(&a));
    let tol = Float::with_val(wp.bits(), p.epsilon() * 100u32) * peak;
    let mut out = LogPowerSeries::zero(zeta, f.order(), p);
    for (a, k, c) in f.terms() {
        if c.abs() >= tol {
            out.add_term(a, k, &round(c, p));
        }
    }
    Ok(out)
}

/// Numeric value of ∏ a_k(s·z) at |z| < 1, truncated where |z|^k < 10^{−P}.
///
/// Each a_k is cut after P + 40 powers of z^k, which is exact for the
/// single-term families and far below 10^{−P} for the exp_d and I families
/// (their coefficients decay factorially). The coefficients of a_k are
/// assumed to grow at most like s^{−k}.
pub fn product_eval(g: &FactorGenerator, z: &Complex, s: &Rational, p: Precision) -> Complex {
    let b = p.bits();
    let r = z.abs().to_f64();
    let z_scaled = z.scale(&Float::with_val(b, s));
    let z = &z_scaled;
    let cut = ((p.digits() as f64 + 5.0) * std::f64::consts::LN_10 / -r.ln()).ceil() as usize + 1;
    let mut acc = Complex::one(p);
    let mut zk = Complex::one(p);
    for k in 1..=cut {
        zk = &zk * z;
        let mut factor = Complex::one(p);
        let order = cut.min(k * (p.digits() as usize + 40));
        for (pw, c) in g.factor_terms(k, order) {
            let zp = if pw == k { zk.clone() } else { z.powi(pw as i64) };
            factor += &zp.scale(&Float::with_val(b, &c));
        }
        acc = &acc * &factor;
    }
    acc
}

/// f(z) from its exp-log form with numeric polylogarithms, |z| < 1.
pub fn spec_eval(spec: &GfSpec, z: &Complex, p: Precision) -> Result<Complex> {
    let wp = p.raised(10);
    let mut expo = Complex::zero(wp);
    for t in &spec.polylogs {
        let w = z.powi(t.power as i64);
        let mut v = polylog_eval(t.nu, &w, wp)?;
        if t.drop_leading {
            v = &v - &w;
        }
        expo += &v.scale_rational(&t.coeff);
    }
    let mut pre = Complex::one(wp);
    for f in &spec.prefactor {
        match f {
            PrefactorFactor::Binomial { j, e } => {
                let base = &Complex::one(wp) - &z.powi(*j as i64);
                pre = &pre * &base.pow(&Complex::from_rational(wp, e));
            }
            PrefactorFactor::ExpMonomial { j, c } => expo += &z.powi(*j as i64).scale_rational(c),
        }
    }
    if let Some(extra) = &spec.analytic_extra {
        let mut zn = Complex::one(wp);
        for s in extra {
            if *s != 0 {
                expo += &zn.scale_rational(s);
            }
            zn = &zn * z;
        }
    }
    let v = &pre * &expo.exp();
    Ok(round(&v, p))
}

/// How the reference value of f is obtained in [`radial_residuals`].
#[derive(Clone, Copy, Debug)]
pub enum Reference<'a> {
    /// the truncated infinite product
    Product(&'a FactorGenerator),
    /// the exp-log form with numeric polylogarithms
    ExpLog,
}

/// Residual of a radial expansion at one radius.
#[derive(Clone, Debug)]
pub struct RadialProbe {
    pub x: f64,
    pub residual: f64,
    /// residual / (x^t·(1 + |log x|^K)), K one more than the largest log power present
    pub scaled: f64,
}

/// |f(ζ(1−x)) − asymp(f, ζ, t)(x)| at each probe radius.
pub fn radial_residuals(
    spec: &GfSpec,
    reference: Reference<'_>,
    zeta: RootOfUnity,
    t: Exponent,
    xs: &[f64],
    p: Precision,
) -> Result<Vec<RadialProbe>> {
    let wp = p.raised(10);
    let series = radial_expansion(spec, zeta, t, wp)?;
    let big_k = series.terms().map(|(_, k, _)| k).max().unwrap_or(0) + 1;
    xs.iter()
        .map(|&x| {
            let xf = wp.float(x);
            let one_minus = Float::with_val(wp.bits(), 1 - &xf);
            let z = zeta.value(wp).scale(&one_minus);
            let exact = match reference {
                Reference::Product(g) => product_eval(g, &z, &spec.z_scale, wp),
                Reference::ExpLog => spec_eval(spec, &z, wp)?,
            };
            let approx = series.eval_radial(&xf);
            let residual = exact.dist(&approx).to_f64();
            let weight = x.powf(t.to_f64()) * (1.0 + x.ln().abs().powi(big_k as i32));
            Ok(RadialProbe {
                x,
                residual,
                scaled: residual / weight,
            })
        })
        .collect()
}
