//! Gamma and polygamma for complex arguments: upward shift by the
//! recurrence, then the Stirling / asymptotic series with Bernoulli numbers.

use rug::{Float, Integer};

use super::bernoulli::bernoulli_numbers;
use super::{Complex, Precision};
use crate::error::{Error, Result};

fn is_nonpositive_integer(z: &Complex) -> bool {
    z.im.is_zero() && z.re.is_integer() && z.re <= 0
}

/// Shift so that `|Re(z+N)|` is at least `radius`.
fn shift_count(z: &Complex, radius: f64) -> u32 {
    let re = z.re.to_f64();
    if re >= radius {
        0
    } else {
        (radius - re).ceil() as u32
    }
}

fn stirling_radius(p: Precision, m: u32) -> f64 {
    p.digits() as f64 + 10.0 + m as f64
}

/// `log Γ(w)` for large `|w|`, principal branch of the Stirling sum.
fn lgamma_asymptotic(w: &Complex, p: Precision) -> Complex {
    let b = p.bits();
    let eps = p.epsilon();
    let ln_w = w.ln();
    let half = Complex::real(Float::with_val(b, 0.5));
    let mut acc = &(&(w - &half) * &ln_w) - w;
    let two_pi = Float::with_val(b, p.pi() * 2u32);
    acc.re += Float::with_val(b, two_pi.ln()) / 2u32;
    let kmax = p.digits() as usize + 20;
    let bern = bernoulli_numbers(2 * kmax);
    let w_inv = w.recip();
    let w_inv2 = &w_inv * &w_inv;
    let mut pow = w_inv.clone();
    for k in 1..=kmax {
        let coef = Float::with_val(b, &bern[2 * k]) / ((2 * k * (2 * k - 1)) as u64);
        let term = pow.scale(&coef);
        let small = term.abs() < eps;
        acc += &term;
        if small {
            break;
        }
        pow = &pow * &w_inv2;
    }
    acc
}

/// Γ(z) for complex `z` away from the poles.
pub fn gamma(z: &Complex, p: Precision) -> Result<Complex> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "gamma",
            at: super::format_sci(&z.re, 10),
        });
    }
    let wp = p.raised(10);
    let z = Complex::new(wp.float(&z.re), wp.float(&z.im));
    let n = shift_count(&z, stirling_radius(p, 0));
    let mut prod = Complex::one(wp);
    let mut w = z.clone();
    for _ in 0..n {
        prod = &prod * &w;
        w.re += 1u32;
    }
    let lg = lgamma_asymptotic(&w, wp);
    let g = &lg.exp() / &prod;
    Ok(Complex::new(p.float(&g.re), p.float(&g.im)))
}

/// Γ(x) for real `x`.
pub fn gamma_real(x: &Float, p: Precision) -> Result<Float> {
    Ok(gamma(&Complex::real(p.float(x)), p)?.re)
}

/// `log |Γ(x)|` for real positive `x`.
pub fn lgamma_real(x: &Float, p: Precision) -> Result<Float> {
    let wp = p.raised(10);
    let z = Complex::real(wp.float(x));
    if is_nonpositive_integer(&z) {
        return Err(Error::Pole {
            function: "lgamma",
            at: super::format_sci(x, 10),
        });
    }
    let n = shift_count(&z, stirling_radius(p, 0));
    let mut log_prod = wp.float(0);
    let mut w = z.clone();
    for _ in 0..n {
        log_prod += Float::with_val(wp.bits(), w.re.clone().abs().ln());
        w.re += 1u32;
    }
    let lg = lgamma_asymptotic(&w, wp);
    Ok(p.float(lg.re - log_prod))
}

/// Polygamma `ψ^(m)(z)`; `m = 0` is the digamma function.
pub fn polygamma(m: u32, z: &Complex, p: Precision) -> Result<Complex> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "polygamma",
            at: super::format_sci(&z.re, 10),
        });
    }
    let wp = p.raised(10 + m);
    let b = wp.bits();
    let z = Complex::new(wp.float(&z.re), wp.float(&z.im));
    let n = shift_count(&z, stirling_radius(p, m));
    let m_fact = Float::with_val(b, Integer::from(Integer::factorial(m)));
    let sign_m: i32 = if m.is_multiple_of(2) { 1 } else { -1 };

    // Σ_{i<N} (-1)^m m! / (z+i)^(m+1)
    let mut shift_sum = Complex::zero(wp);
    let mut w = z.clone();
    for _ in 0..n {
        shift_sum += &w.powi(-(m as i64) - 1);
        w.re += 1u32;
    }
    let shift_sum = shift_sum.scale(&m_fact).scale_i64(sign_m as i64);

    let eps = wp.epsilon();
    let kmax = p.digits() as usize + 20 + m as usize;
    let bern = bernoulli_numbers(2 * kmax);
    let w_inv = w.recip();
    let w_inv2 = &w_inv * &w_inv;
    let asym = if m == 0 {
        let mut acc = &w.ln() - &w_inv.scale(&Float::with_val(b, 0.5));
        let mut pow = w_inv2.clone();
        for k in 1..=kmax {
            let c = Float::with_val(b, &bern[2 * k]) / (2 * k as u64);
            let term = pow.scale(&c);
            let small = term.abs() < eps;
            acc -= &term;
            if small {
                break;
            }
            pow = &pow * &w_inv2;
        }
        acc
    } else {
        // (-1)^(m+1) [ (m-1)!/w^m + m!/(2 w^(m+1)) + Σ B_2k (2k+m-1)!/((2k)! w^(2k+m)) ]
        let wm = w_inv.powi(m as i64);
        let mm1_fact = Float::with_val(b, Integer::from(Integer::factorial(m - 1)));
        let mut acc = wm.scale(&mm1_fact);
        let wm1 = &wm * &w_inv;
        acc += &wm1.scale(&Float::with_val(b, &m_fact / 2u32));
        let mut pow = &wm * &w_inv2;
        for k in 1..=kmax {
            let num = Integer::from(Integer::factorial(2 * k as u32 + m - 1));
            let den = Integer::from(Integer::factorial(2 * k as u32));
            let c = Float::with_val(b, &bern[2 * k]) * Float::with_val(b, &num) / Float::with_val(b, &den);
            let term = pow.scale(&c);
            let small = term.abs() < Float::with_val(b, &eps * acc.abs());
            acc += &term;
            if small {
                break;
            }
            pow = &pow * &w_inv2;
        }
        if m.is_multiple_of(2) {
            -acc
        } else {
            acc
        }
    };
    let r = &asym - &shift_sum;
    Ok(Complex::new(p.float(&r.re), p.float(&r.im)))
}

/// Real polygamma.
pub fn polygamma_real(m: u32, x: &Float, p: Precision) -> Result<Float> {
    Ok(polygamma(m, &Complex::real(p.float(x)), p)?.re)
}
