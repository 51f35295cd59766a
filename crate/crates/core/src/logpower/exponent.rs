use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use rug::{Float, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational exponent (α, β, ν). Every exponent in the supported
/// families is a rational with a small denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Ratio<i64>);

impl Exponent {
    pub fn new(num: i64, den: i64) -> Self {
        Self(Ratio::new(num, den))
    }

    pub fn int(n: i64) -> Self {
        Self(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    /// `Some(n)` when the exponent is the integer n.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then(|| self.numer())
    }

    pub fn floor(self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn is_positive(self) -> bool {
        self.numer() > 0
    }

    pub fn is_negative(self) -> bool {
        self.numer() < 0
    }

    pub fn to_rational(self) -> Rational {
        Rational::from((self.numer(), self.denom()))
    }

    pub fn to_float(self, bits: u32) -> Float {
        Float::with_val(bits, &self.to_rational())
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn mul_int(self, k: i64) -> Self {
        Self(self.0 * k)
    }

    pub fn div_int(self, k: i64) -> Self {
        Self(self.0 / k)
    }

    pub fn min(self, o: Self) -> Self {
        if self <= o {
            self
        } else {
            o
        }
    }

    pub fn max(self, o: Self) -> Self {
        if self >= o {
            self
        } else {
            o
        }
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl Add for Exponent {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(self.0 + o.0)
    }
}

impl Sub for Exponent {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(self.0 - o.0)
    }
}

impl Neg for Exponent {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Exponent {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("not a rational exponent: {s:?}");
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Self::new(n, d))
            }
            None => {
                if let Ok(n) = s.parse::<i64>() {
                    return Ok(Self::int(n));
                }
                // finite decimals such as -1.5
                let (ip, fp) = s.split_once('.').ok_or_else(bad)?;
                let digits = fp.len() as u32;
                let scale = 10i64.checked_pow(digits).ok_or_else(bad)?;
                let neg = ip.starts_with('-');
                let whole: i64 = if ip.is_empty() || ip == "-" { 0 } else { ip.parse().map_err(|_| bad())? };
                let frac: i64 = if fp.is_empty() { 0 } else { fp.parse().map_err(|_| bad())? };
                let num = whole.abs() * scale + frac;
                Ok(Self::new(if neg { -num } else { num }, scale))
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
