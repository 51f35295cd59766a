use rug::ops::Pow;
use rug::{Float, Rational};

use super::bernoulli::{bernoulli, bernoulli_numbers};
use super::gamma::gamma_real;
use super::Precision;
use crate::error::{Error, Result};

/// Harmonic number `H_m`, exact.
pub fn harmonic(m: u64) -> Rational {
    let mut h = Rational::new();
    for k in 1..=m {
        h += Rational::from((1u64, k));
    }
    h
}

/// Riemann ζ(s) for real `s ≠ 1`.
///
/// Alternating-series acceleration (Cohen–Villegas–Zagier) for `s ≥ 1/2`,
/// the functional equation for `s < 1/2`, and exact Bernoulli values at
/// nonpositive integers.
pub fn zeta(s: &Float, p: Precision) -> Result<Float> {
    if *s == 1 {
        return Err(Error::Pole {
            function: "zeta",
            at: "1".into(),
        });
    }
    if s.is_integer() && *s <= 0 {
        let n = (-s.to_f64()).round() as usize;
        if n == 0 {
            return Ok(p.float(-0.5));
        }
        if n.is_multiple_of(2) {
            return Ok(p.float(0));
        }
        let b = bernoulli(n + 1);
        let v = -b / (n as u64 + 1) ;
        return Ok(p.float(&v));
    }
    if *s < 0.5 {
        let wp = p.raised(10);
        let bits = wp.bits();
        let s = wp.float(s);
        let one_minus = Float::with_val(bits, 1 - &s);
        let z = zeta_borwein(&one_minus, wp)?;
        let g = gamma_real(&one_minus, wp)?;
        let two_s = Float::with_val(bits, Float::with_val(bits, 2).pow(&s));
        let pi = wp.pi();
        let pi_pow = Float::with_val(bits, pi.clone().pow(Float::with_val(bits, &s - 1u32)));
        let sin = Float::with_val(bits, Float::with_val(bits, &pi * &s) / 2u32).sin();
        let v = two_s * pi_pow * sin * g * z;
        return Ok(p.float(&v));
    }
    zeta_borwein(s, p)
}

/// ζ(s) for `s ≥ 1/2`, `s ≠ 1`, through the alternating η-series.
pub fn zeta_borwein(s: &Float, p: Precision) -> Result<Float> {
    if *s == 1 {
        return Err(Error::Pole {
            function: "zeta",
            at: "1".into(),
        });
    }
    let wp = p.raised(10);
    let bits = wp.bits();
    let s = wp.float(s);
    // large s: direct summation converges after a handful of terms
    if s > wp.bits() as f64 / 4.0 {
        let mut acc = wp.float(1);
        let eps = wp.epsilon();
        for k in 2u32.. {
            let t = Float::with_val(bits, Float::with_val(bits, k).pow(&s)).recip();
            let small = t < eps;
            acc += t;
            if small {
                break;
            }
        }
        return Ok(p.float(&acc));
    }
    let n = (1.31 * wp.digits() as f64).ceil() as i64 + 2;
    let sqrt8 = Float::with_val(bits, 8).sqrt();
    let base = Float::with_val(bits, sqrt8 + 3u32);
    let mut d = Float::with_val(bits, base.pow(n as i32));
    d = Float::with_val(bits, &d + Float::with_val(bits, d.clone().recip())) / 2u32;
    let mut b = wp.float(-1);
    let mut c = Float::with_val(bits, -&d);
    let mut acc = wp.float(0);
    for k in 0..n {
        c = Float::with_val(bits, &b - &c);
        let kk = Float::with_val(bits, k + 1);
        let pw = Float::with_val(bits, kk.pow(&s));
        acc += Float::with_val(bits, &c / &pw);
        let num = Float::with_val(bits, (k + n) * (k - n));
        let den = Float::with_val(bits, (k as f64 + 0.5) * (k as f64 + 1.0));
        b = Float::with_val(bits, &b * &num) / &den;
    }
    let eta = Float::with_val(bits, &acc / &d);
    let two = wp.float(2);
    let factor = Float::with_val(bits, 1 - Float::with_val(bits, two.pow(Float::with_val(bits, 1 - &s))));
    Ok(p.float(eta / factor))
}

/// Hurwitz ζ(s, a) = Σ_{k≥0} (k+a)^{-s} by Euler–Maclaurin summation,
/// valid for real `s ≠ 1` and `a > 0`.
pub fn hurwitz_zeta(s: &Float, a: &Float, p: Precision) -> Result<Float> {
    if *s == 1 {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            at: "1".into(),
        });
    }
    if *a <= 0 {
        return Err(Error::InvalidArgument("hurwitz_zeta needs a > 0".into()));
    }
    let wp = p.raised(10);
    let bits = wp.bits();
    let s = wp.float(s);
    let a = wp.float(a);
    let n_terms = wp.digits() + 10 + s.to_f64().abs().min(1e6) as u32 / 4;
    let neg_s = Float::with_val(bits, -&s);
    let mut acc = wp.float(0);
    for k in 0..n_terms {
        let x = Float::with_val(bits, &a + k);
        acc += Float::with_val(bits, x.pow(&neg_s));
    }
    let x = Float::with_val(bits, &a + n_terms);
    let x_neg_s = Float::with_val(bits, x.clone().pow(&neg_s));
    // ∫ tail + half end term
    acc += Float::with_val(bits, &x_neg_s * &x) / Float::with_val(bits, &s - 1u32);
    acc += Float::with_val(bits, &x_neg_s / 2u32);
    let bern = bernoulli_numbers(2 * (wp.digits() as usize + 20));
    let eps = wp.epsilon();
    let x_inv = Float::with_val(bits, x.recip_ref());
    let x_inv2 = Float::with_val(bits, x_inv.square_ref());
    // rising factorial s(s+1)…(s+2j-2) / (2j)!
    let mut rise = s.clone();
    let mut fact = wp.float(2);
    let mut pow = Float::with_val(bits, &x_neg_s * &x_inv);
    for j in 1..(bern.len() / 2) {
        let term = Float::with_val(bits, &bern[2 * j]) * &rise / &fact * &pow;
        let small = Float::with_val(bits, term.abs_ref()) < Float::with_val(bits, &eps * Float::with_val(bits, acc.abs_ref()));
        acc += &term;
        if small {
            break;
        }
        rise *= Float::with_val(bits, &s + (2 * j - 1) as u32);
        rise *= Float::with_val(bits, &s + (2 * j) as u32);
        fact *= ((2 * j + 1) * (2 * j + 2)) as u32;
        pow *= &x_inv2;
    }
    Ok(p.float(acc))
}

/// ζ(s) through Euler–Maclaurin; independent of [`zeta_borwein`].
pub fn zeta_euler_maclaurin(s: &Float, p: Precision) -> Result<Float> {
    hurwitz_zeta(s, &p.float(1), p)
}
