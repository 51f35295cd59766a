use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::{Float, Rational};

use super::Precision;

/// Arbitrary-precision complex number on top of MPFR reals.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(p: Precision) -> Self {
        Self::new(p.float(0), p.float(0))
    }

    pub fn one(p: Precision) -> Self {
        Self::new(p.float(1), p.float(0))
    }

    pub fn i(p: Precision) -> Self {
        Self::new(p.float(0), p.float(1))
    }

    pub fn real(re: Float) -> Self {
        let im = Float::with_val(re.prec(), 0);
        Self { re, im }
    }

    pub fn from_f64(p: Precision, re: f64, im: f64) -> Self {
        Self::new(p.float(re), p.float(im))
    }

    pub fn from_rational(p: Precision, q: &Rational) -> Self {
        Self::real(p.float(q))
    }

    pub fn from_int(p: Precision, v: i64) -> Self {
        Self::real(p.float(v))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Float::with_val(self.prec(), -&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let b = self.prec();
        Float::with_val(b, self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        let b = self.prec();
        Float::with_val(b, self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        let b = self.prec();
        Float::with_val(b, self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, s: &Float) -> Self {
        let b = self.prec();
        Self::new(Float::with_val(b, &self.re * s), Float::with_val(b, &self.im * s))
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let b = self.prec();
        let s = Float::with_val(b, q);
        self.scale(&s)
    }

    pub fn scale_i64(&self, v: i64) -> Self {
        let b = self.prec();
        Self::new(Float::with_val(b, &self.re * v), Float::with_val(b, &self.im * v))
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        let b = self.prec();
        Self::new(
            Float::with_val(b, &self.re / &d),
            Float::with_val(b, -Float::with_val(b, &self.im / &d)),
        )
    }

    pub fn exp(&self) -> Self {
        let b = self.prec();
        let m = Float::with_val(b, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(b));
        Self::new(Float::with_val(b, &m * &c), Float::with_val(b, &m * &s))
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let b = self.prec();
        let r = self.abs();
        Self::new(Float::with_val(b, r.ln_ref()), self.arg())
    }

    /// Principal power `self^w = exp(w log self)`; `0^w = 0` for `Re w > 0`.
    pub fn pow(&self, w: &Complex) -> Self {
        if self.is_zero() {
            return Self::zero_bits(self.prec());
        }
        (&self.ln() * w).exp()
    }

    /// Principal power with a real exponent.
    pub fn powf(&self, w: &Float) -> Self {
        if self.is_zero() {
            return Self::zero_bits(self.prec());
        }
        self.ln().scale(w).exp()
    }

    pub fn powi(&self, n: i64) -> Self {
        let b = self.prec();
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::new(Float::with_val(b, 1), Float::with_val(b, 0));
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn sqrt(&self) -> Self {
        let b = self.prec();
        if self.is_zero() {
            return Self::zero_bits(b);
        }
        let half = Float::with_val(b, 0.5);
        self.powf(&half)
    }

    pub fn sin(&self) -> Self {
        let b = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(b));
        let sh = Float::with_val(b, self.im.sinh_ref());
        let ch = Float::with_val(b, self.im.cosh_ref());
        Self::new(Float::with_val(b, &s * &ch), Float::with_val(b, &c * &sh))
    }

    pub fn cos(&self) -> Self {
        let b = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(b));
        let sh = Float::with_val(b, self.im.sinh_ref());
        let ch = Float::with_val(b, self.im.cosh_ref());
        Self::new(
            Float::with_val(b, &c * &ch),
            Float::with_val(b, -Float::with_val(b, &s * &sh)),
        )
    }

    fn zero_bits(b: u32) -> Self {
        Self::new(Float::with_val(b, 0), Float::with_val(b, 0))
    }

    /// `|self - other|`
    pub fn dist(&self, other: &Complex) -> Float {
        (self - other).abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        let re = super::format_sci(&self.re, d);
        if self.im.is_zero() {
            write!(f, "{re}")
        } else {
            let im = super::format_sci(&self.im, d);
            write!(f, "({re}, {im})")
        }
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        let b = self.prec().max(o.prec());
        Complex::new(
            Float::with_val(b, &self.re + &o.re),
            Float::with_val(b, &self.im + &o.im),
        )
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        let b = self.prec().max(o.prec());
        Complex::new(
            Float::with_val(b, &self.re - &o.re),
            Float::with_val(b, &self.im - &o.im),
        )
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        let b = self.prec().max(o.prec());
        let rr = Float::with_val(b, &self.re * &o.re);
        let ii = Float::with_val(b, &self.im * &o.im);
        let ri = Float::with_val(b, &self.re * &o.im);
        let ir = Float::with_val(b, &self.im * &o.re);
        Complex::new(Float::with_val(b, rr - ii), Float::with_val(b, ri + ir))
    }
}

impl<'a> Div<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        self * &o.recip()
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        let b = self.prec();
        Complex::new(Float::with_val(b, -&self.re), Float::with_val(b, -&self.im))
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -&self
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, o: Complex) -> Complex {
        &self + &o
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, o: Complex) -> Complex {
        &self - &o
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, o: Complex) -> Complex {
        &self * &o
    }
}

impl Div for Complex {
    type Output = Complex;
    fn div(self, o: Complex) -> Complex {
        &self / &o
    }
}

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, o: &Complex) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, o: &Complex) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&Complex> for Complex {
    fn mul_assign(&mut self, o: &Complex) {
        *self = &*self * o;
    }
}
