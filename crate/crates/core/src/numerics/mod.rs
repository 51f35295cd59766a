//! Arbitrary-precision scalars and special functions.
//!
//! Every routine takes an explicit [`Precision`]; nothing reads global
//! configuration. Results are accurate to roughly `10^(2-P)` relative error
//! for a working precision of `P` decimal digits.

mod accel;
mod bernoulli;
mod complex;
mod constants;
mod cseries;
mod gamma;
mod root;
mod zeta;

pub use accel::{richardson_limit, RichardsonTable};
pub use bernoulli::{bernoulli, bernoulli_numbers, tangent_numbers};
pub use complex::Complex;
pub use constants::{constants, euler_gamma_by_harmonic, pi_by_machin, Constants};
pub use cseries::ComplexSeries;
pub use gamma::{gamma, gamma_real, lgamma_real, polygamma, polygamma_real};
pub use root::RootOfUnity;
pub use zeta::{harmonic, hurwitz_zeta, zeta, zeta_borwein, zeta_euler_maclaurin};

use rug::ops::Pow;
use rug::Float;

/// Working precision in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Precision {
    digits: u32,
}

pub const DEFAULT_DIGITS: u32 = 50;

impl Default for Precision {
    fn default() -> Self {
        Self::new(DEFAULT_DIGITS)
    }
}

impl Precision {
    pub fn new(digits: u32) -> Self {
        Self {
            digits: digits.max(5),
        }
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// Mantissa bits, including 16 guard bits.
    pub fn bits(self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
    }

    /// A context with `extra` more decimal digits.
    pub fn raised(self, extra: u32) -> Self {
        Self::new(self.digits + extra)
    }

    /// `10^-digits`
    pub fn epsilon(self) -> Float {
        let ten = Float::with_val(self.bits(), 10);
        Float::with_val(self.bits(), ten.pow(-(self.digits as i32)))
    }

    pub fn float<T>(self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), v)
    }

    pub fn pi(self) -> Float {
        Float::with_val(self.bits(), rug::float::Constant::Pi)
    }
}

/// Renders `x` in scientific notation with `digits` significant digits.
///
/// The output is deterministic for a given value and digit count.
pub fn format_sci(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return format!("{:.*}e0", digits.saturating_sub(1), 0.0);
    }
    let s = x.to_string_radix(10, Some(digits));
    // rug renders as d.ddddde±x
    match s.find('e') {
        Some(pos) => {
            let (mant, exp) = s.split_at(pos);
            let e: i64 = exp[1..].parse().unwrap_or(0);
            format!("{mant}e{e}")
        }
        None => s,
    }
}

/// Renders `x` rounded to `digits` significant digits in positional notation.
pub fn format_fixed(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let s = x.to_string_radix(10, Some(digits));
    let (mant, exp) = match s.find('e') {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i64>().unwrap_or(0)),
        None => (s.as_str(), 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let digits_only: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let int_len = mant.find('.').unwrap_or(mant.len()) as i64 + exp;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if int_len <= 0 {
        out.push_str("0.");
        for _ in 0..(-int_len) {
            out.push('0');
        }
        out.push_str(&digits_only);
    } else if int_len as usize >= digits_only.len() {
        out.push_str(&digits_only);
        for _ in 0..(int_len as usize - digits_only.len()) {
            out.push('0');
        }
    } else {
        out.push_str(&digits_only[..int_len as usize]);
        out.push('.');
        out.push_str(&digits_only[int_len as usize..]);
    }
    out
}

/// Number of leading decimal digits on which `a` and `b` agree,
/// measured as `-log10(|a-b| / max(|a|,|b|))`.
pub fn agreement_digits(a: &Float, b: &Float) -> f64 {
    let diff = Float::with_val(a.prec().max(b.prec()), a - b).abs();
    if diff.is_zero() {
        return f64::INFINITY;
    }
    let scale = if a.clone().abs() > b.clone().abs() {
        a.clone().abs()
    } else {
        b.clone().abs()
    };
    if scale.is_zero() {
        return -diff.to_f64().log10();
    }
    let rel = Float::with_val(a.prec(), &diff / &scale);
    -rel.log10().to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_rendering() {
        let p = Precision::new(30);
        let x = p.float(1.25f64);
        assert_eq!(format_fixed(&x, 5), "1.2500");
        let y = p.float(-0.00125f64);
        assert_eq!(format_fixed(&y, 3), "-0.00125");
        let z = p.float(12345.0f64);
        assert_eq!(format_fixed(&z, 3), "12300");
    }

    #[test]
    fn precision_bits_monotone() {
        assert!(Precision::new(60).bits() > Precision::new(50).bits());
        assert_eq!(Precision::default().digits(), 50);
    }
}
