use std::collections::BTreeMap;

use rug::Float;

use crate::error::{Error, Result};
use crate::logpower::{Exponent, LogPowerFunction, LogPowerMonomial};
use crate::numerics::{Complex, ComplexSeries, Precision, RootOfUnity};

/// Σ c·X^α·Λ^k + O(X^t) at a root of unity ζ, with X = 1 − z/ζ and
/// Λ = log 1/X. Error orders ignore powers of Λ.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPowerSeries {
    center: RootOfUnity,
    terms: BTreeMap<(Exponent, u32), Complex>,
    order: Exponent,
    prec: Precision,
}

impl LogPowerSeries {
    /// The zero function, known up to O(X^order).
    pub fn zero(center: RootOfUnity, order: Exponent, prec: Precision) -> Self {
        Self {
            center,
            terms: BTreeMap::new(),
            order,
            prec,
        }
    }

    pub fn constant(center: RootOfUnity, c: Complex, order: Exponent, prec: Precision) -> Self {
        Self::monomial(center, Exponent::zero(), 0, c, order, prec)
    }

    pub fn monomial(center: RootOfUnity, alpha: Exponent, k: u32, c: Complex, order: Exponent, prec: Precision) -> Self {
        let mut s = Self::zero(center, order, prec);
        s.add_term(alpha, k, &c);
        s
    }

    /// Σ_i c_i·X^{alpha0+i}·Λ^k from a plain power series in X.
    pub fn from_series(
        center: RootOfUnity,
        alpha0: Exponent,
        k: u32,
        series: &ComplexSeries,
        order: Exponent,
        prec: Precision,
    ) -> Self {
        let mut s = Self::zero(center, order, prec);
        s.add_series(alpha0, k, series);
        s
    }

    pub fn center(&self) -> RootOfUnity {
        self.center
    }

    pub fn order(&self) -> Exponent {
        self.order
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// (α, k, c) in increasing (α, k).
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, u32, &Complex)> {
        self.terms.iter().map(|(&(a, k), c)| (a, k, c))
    }

    pub fn coefficient(&self, alpha: Exponent, k: u32) -> Option<&Complex> {
        self.terms.get(&(alpha, k))
    }

    /// Smallest exponent present, or the error order when there is none.
    pub fn min_alpha(&self) -> Exponent {
        self.terms.keys().next().map_or(self.order, |k| k.0)
    }

    /// Adds c·X^α·Λ^k unless α ≥ order.
    pub fn add_term(&mut self, alpha: Exponent, k: u32, c: &Complex) {
        if alpha >= self.order {
            return;
        }
        match self.terms.get_mut(&(alpha, k)) {
            Some(v) => *v += c,
            None => {
                self.terms.insert((alpha, k), c.clone());
            }
        }
    }

    pub fn add_series(&mut self, alpha0: Exponent, k: u32, series: &ComplexSeries) {
        for (i, c) in series.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.add_term(alpha0 + Exponent::int(i as i64), k, c);
            }
        }
    }

    fn check_center(&self, o: &Self) -> Result<()> {
        if self.center != o.center {
            return Err(Error::CenterMismatch {
                left: self.center.to_string(),
                right: o.center.to_string(),
            });
        }
        Ok(())
    }

    /// Lowers the error order, dropping monomials at or beyond it.
    pub fn truncated(&self, order: Exponent) -> Self {
        let order = order.min(self.order);
        Self {
            center: self.center,
            terms: self.terms.iter().filter(|(k, _)| k.0 < order).map(|(k, c)| (*k, c.clone())).collect(),
            order,
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_center(o)?;
        let mut s = self.truncated(o.order);
        for (&(a, k), c) in &o.terms {
            s.add_term(a, k, c);
        }
        Ok(s)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&Complex::from_int(self.prec, -1)))
    }

    pub fn scale(&self, c: &Complex) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            ..self.clone()
        }
    }

    /// Monomial-wise product; error order min(t_a + α_b, t_b + α_a) with
    /// α the smallest exponent of each factor.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_center(o)?;
        let order = (self.order + o.min_alpha()).min(o.order + self.min_alpha());
        let mut s = Self::zero(self.center, order, self.prec);
        for (&(a, k), c) in &self.terms {
            for (&(b, j), d) in &o.terms {
                if a + b < order {
                    s.add_term(a + b, k + j, &(c * d));
                }
            }
        }
        Ok(s)
    }

    /// exp of the series. The constant monomial is split off; everything
    /// else must vanish at X = 0 (α > 0).
    pub fn exp(&self) -> Result<Self> {
        let (c0, rest) = self.split_constant()?;
        let mut acc = Self::constant(self.center, Complex::one(self.prec), self.order, self.prec);
        if !rest.is_empty() {
            let mut pw = acc.clone();
            let mut j = 1i64;
            while rest.min_alpha().mul_int(j) < self.order {
                pw = pw.mul(&rest)?.scale(&Complex::from_rational(self.prec, &rug::Rational::from((1, j))));
                acc = acc.add(&pw)?;
                j += 1;
            }
        }
        Ok(acc.scale(&c0.exp()).truncated(self.order))
    }

    /// Principal log of the series; the constant monomial must be nonzero.
    pub fn ln(&self) -> Result<Self> {
        let (c0, rest) = self
            .split_constant()
            .map_err(|_| Error::InvalidArgument("log of a series with a singular part".into()))?;
        if c0.is_zero() {
            return Err(Error::InvalidArgument("log of a series vanishing at the center".into()));
        }
        let u = rest.scale(&c0.recip());
        let mut acc = Self::constant(self.center, c0.ln(), self.order, self.prec);
        if !u.is_empty() {
            let mut pw = Self::constant(self.center, Complex::one(self.prec), self.order, self.prec);
            let mut j = 1i64;
            while u.min_alpha().mul_int(j) < self.order {
                pw = pw.mul(&u)?;
                let sign = if j % 2 == 1 { 1 } else { -1 };
                acc = acc.add(&pw.scale(&Complex::from_rational(self.prec, &rug::Rational::from((sign, j)))))?;
                j += 1;
            }
        }
        Ok(acc.truncated(self.order))
    }

    fn split_constant(&self) -> Result<(Complex, Self)> {
        let mut rest = self.clone();
        let c0 = rest.terms.remove(&(Exponent::zero(), 0)).unwrap_or_else(|| Complex::zero(self.prec));
        if let Some((&(alpha, k), _)) = rest.terms.iter().find(|(key, _)| !key.0.is_positive()) {
            return Err(Error::ExpOfSingularity {
                alpha: alpha.to_string(),
                k,
            });
        }
        Ok((c0, rest))
    }

    /// Drops monomials with |c| below `tol`.
    pub fn pruned(&self, tol: &Float) -> Self {
        Self {
            terms: self.terms.iter().filter(|(_, c)| c.abs() >= *tol).map(|(k, c)| (*k, c.clone())).collect(),
            ..self.clone()
        }
    }

    /// Value at a given X (principal Λ = −log X).
    pub fn eval_at(&self, x: &Complex) -> Complex {
        let p = self.prec;
        let log_inv = -x.ln();
        let mut acc = Complex::zero(p);
        for (&(a, k), c) in &self.terms {
            let xa = if a == Exponent::zero() {
                Complex::one(p)
            } else {
                x.pow(&Complex::from_rational(p, &a.to_rational()))
            };
            let lk = log_inv.powi(k as i64);
            acc += &(&(c * &xa) * &lk);
        }
        acc
    }

    /// Value at z = ζ(1 − x) for real 0 < x < 1.
    pub fn eval_radial(&self, x: &Float) -> Complex {
        self.eval_at(&Complex::real(x.clone()))
    }

    /// The same monomials as a log-power function in z.
    pub fn to_log_power_function(&self) -> LogPowerFunction {
        self.terms
            .iter()
            .map(|(&(a, k), c)| LogPowerMonomial::new(self.center, a, k, c.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::new(30)
    }

    fn mono(a: Exponent, k: u32, t: i64) -> LogPowerSeries {
        LogPowerSeries::monomial(RootOfUnity::one(), a, k, Complex::one(p()), Exponent::int(t), p())
    }

    #[test]
    fn trivial_products() {
        let half = mono(Exponent::new(1, 2), 0, 4);
        let sq = half.mul(&half).unwrap();
        assert_eq!(sq.len(), 1);
        assert!(sq.coefficient(Exponent::int(1), 0).is_some());
        let lam = mono(Exponent::zero(), 1, 4);
        assert!(lam.mul(&lam).unwrap().coefficient(Exponent::zero(), 2).is_some());
        let one = mono(Exponent::zero(), 0, 4);
        assert_eq!(half.mul(&one).unwrap(), half);
    }

    #[test]
    fn exp_rules() {
        let z = LogPowerSeries::zero(RootOfUnity::one(), Exponent::int(3), p());
        let e = z.exp().unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.coefficient(Exponent::zero(), 0).unwrap().re, 1);
        let x = mono(Exponent::int(1), 0, 2);
        let ex = x.exp().unwrap();
        assert_eq!(ex.len(), 2);
        let xl = mono(Exponent::int(1), 1, 2);
        let exl = xl.exp().unwrap();
        assert_eq!(exl.len(), 2);
        assert!(exl.coefficient(Exponent::int(1), 1).is_some());
        assert!(matches!(mono(Exponent::zero(), 1, 2).exp(), Err(Error::ExpOfSingularity { .. })));
        assert!(matches!(mono(Exponent::new(-1, 2), 0, 2).exp(), Err(Error::ExpOfSingularity { .. })));
    }

    #[test]
    fn exp_log_round_trip() {
        let mut s = LogPowerSeries::zero(RootOfUnity::one(), Exponent::new(7, 2), p());
        s.add_term(Exponent::zero(), 0, &Complex::from_f64(p(), 0.3, -0.2));
        s.add_term(Exponent::new(1, 2), 0, &Complex::from_f64(p(), 1.5, 0.0));
        s.add_term(Exponent::int(1), 1, &Complex::from_f64(p(), -0.7, 0.4));
        s.add_term(Exponent::new(3, 2), 2, &Complex::from_f64(p(), 0.25, 0.0));
        let back = s.exp().unwrap().ln().unwrap();
        let tol = Float::with_val(p().bits(), 1e-25);
        for (a, k, _) in s.terms() {
            assert!(back.coefficient(a, k).is_some());
        }
        for (a, k, c) in back.terms() {
            let want = s.coefficient(a, k).cloned().unwrap_or_else(|| Complex::zero(p()));
            assert!(c.dist(&want) < tol, "({a}, {k})");
        }
    }

    #[test]
    fn center_mismatch() {
        let a = mono(Exponent::zero(), 0, 2);
        let b = LogPowerSeries::zero(RootOfUnity::new(2, 1), Exponent::int(2), p());
        assert!(matches!(a.mul(&b), Err(Error::CenterMismatch { .. })));
    }

    #[test]
    fn radial_value_of_exp() {
        // exp(X·Λ) versus its truncation 1 + XΛ
        let xl = mono(Exponent::int(1), 1, 2);
        let e = xl.exp().unwrap();
        let b = p().bits();
        for x in [1e-3f64, 1e-5] {
            let xf = Float::with_val(b, x);
            let lam = -xf.clone().ln();
            let direct = Float::with_val(b, &xf * &lam).exp();
            let got = e.eval_radial(&xf);
            let err = (got.re - direct).abs().to_f64();
            assert!(err < 2.0 * (x * (-x.ln())).powi(2));
        }
    }
}
