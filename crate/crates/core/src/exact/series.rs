use std::fmt::Debug;

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::par::{map_range, Exec};

/// Coefficient ring for [`TruncatedSeries`]: exact rationals or MPFR floats.
///
/// Floats carry their precision, so constants are created "like" an
/// existing value.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_assign_ref(&mut self, o: &Self);
    fn sub_assign_ref(&mut self, o: &Self);
    fn mul_ref(&self, o: &Self) -> Self;
    fn div_ref(&self, o: &Self) -> Self;
    fn mul_i64(&self, k: i64) -> Self;
    fn div_i64(&self, k: i64) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn neg_ref(&self) -> Self;

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        self.add_assign_ref(&a.mul_ref(b));
    }
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn one_like(&self) -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign_ref(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn div_ref(&self, o: &Self) -> Self {
        Rational::from(self / o)
    }
    fn mul_i64(&self, k: i64) -> Self {
        Rational::from(self * k)
    }
    fn div_i64(&self, k: i64) -> Self {
        Rational::from(self / k)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn neg_ref(&self) -> Self {
        Rational::from(-self)
    }
}

impl Coeff for Float {
    fn zero_like(&self) -> Self {
        Float::with_val(self.prec(), 0)
    }
    fn one_like(&self) -> Self {
        Float::with_val(self.prec(), 1)
    }
    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign_ref(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self * o)
    }
    fn div_ref(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self / o)
    }
    fn mul_i64(&self, k: i64) -> Self {
        Float::with_val(self.prec(), self * k)
    }
    fn div_i64(&self, k: i64) -> Self {
        Float::with_val(self.prec(), self / k)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        Float::with_val(self.prec(), r)
    }
    fn neg_ref(&self) -> Self {
        Float::with_val(self.prec(), -self)
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Power series truncated mod z^{N+1}: `coeffs[0..=N]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C = Rational> {
    coeffs: Vec<C>,
}

pub type ExactSeries = TruncatedSeries<Rational>;
pub type FloatSeries = TruncatedSeries<Float>;

/// Dense products above this length are split over threads.
const PAR_MUL_THRESHOLD: usize = 96;

impl<C: Coeff> TruncatedSeries<C> {
    /// Series from its coefficients; `coeffs` must be nonempty.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn zero_with(order: usize, proto: &C) -> Self {
        Self {
            coeffs: vec![proto.zero_like(); order + 1],
        }
    }

    pub fn one_with(order: usize, proto: &C) -> Self {
        let mut s = Self::zero_with(order, proto);
        s.coeffs[0] = proto.one_like();
        s
    }

    /// `c·z^k` mod z^{order+1}.
    pub fn monomial(order: usize, k: usize, c: C) -> Self {
        let mut s = Self::zero_with(order, &c);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    fn proto(&self) -> &C {
        &self.coeffs[0]
    }

    /// Reduce to a smaller truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self {
            coeffs: (0..=n)
                .map(|i| {
                    let mut c = self.coeffs[i].clone();
                    c.add_assign_ref(&o.coeffs[i]);
                    c
                })
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self {
            coeffs: (0..=n)
                .map(|i| {
                    let mut c = self.coeffs[i].clone();
                    c.sub_assign_ref(&o.coeffs[i]);
                    c
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(C::neg_ref).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    /// Multiply coefficient n by `r^n`.
    pub fn scale_geometric(&self, r: &C) -> Self {
        let mut pow = r.one_like();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul_ref(&pow));
            pow = pow.mul_ref(r);
        }
        Self { coeffs: out }
    }

    fn nonzero_terms(&self) -> Vec<(usize, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, o: &Self) -> Self {
        self.mul_with(o, Exec::default())
    }

    pub fn mul_with(&self, o: &Self, exec: Exec) -> Self {
        let n = self.order().min(o.order());
        let (a, b) = (&self.coeffs[..=n], &o.coeffs[..=n]);
        let nz_a = self.nonzero_terms();
        let nz_b = o.nonzero_terms();
        // sparse operand: scatter its few terms over the dense one
        let (dense, sparse) = if nz_b.len() <= nz_a.len() { (a, nz_b) } else { (b, nz_a) };
        if sparse.len() * 8 <= n + 1 {
            let mut out = vec![self.proto().zero_like(); n + 1];
            for (j, c) in sparse.into_iter().filter(|(j, _)| *j <= n) {
                for (i, d) in dense.iter().enumerate().take(n + 1 - j) {
                    if !d.is_zero() {
                        out[i + j].mul_add_assign(d, c);
                    }
                }
            }
            return Self { coeffs: out };
        }
        let exec = if n + 1 >= PAR_MUL_THRESHOLD { exec } else { Exec::Sequential };
        let zero = self.proto().zero_like();
        let coeffs = map_range(exec, 0..n + 1, |k| {
            let mut acc = zero.clone();
            for i in 0..=k {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    acc.mul_add_assign(&a[i], &b[k - i]);
                }
            }
            acc
        });
        Self { coeffs }
    }

    /// a(z^m) mod z^{N+1}.
    pub fn substitute_power(&self, m: usize) -> Self {
        assert!(m >= 1);
        let n = self.order();
        let mut out = vec![self.proto().zero_like(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * m > n {
                break;
            }
            out[i * m] = c.clone();
        }
        Self { coeffs: out }
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out: Vec<C> = (1..=n).map(|i| self.coeffs[i].mul_i64(i as i64)).collect();
        out.push(self.proto().zero_like());
        Self { coeffs: out }
    }

    /// exp(a) for a series with zero constant term, by k e_k = Σ j a_j e_{k−j}.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut e = Vec::with_capacity(n + 1);
        e.push(self.proto().one_like());
        let ja: Vec<(usize, C)> = self
            .nonzero_terms()
            .into_iter()
            .map(|(j, c)| (j, c.mul_i64(j as i64)))
            .collect();
        for k in 1..=n {
            let mut acc = self.proto().zero_like();
            for (j, c) in ja.iter().take_while(|(j, _)| *j <= k) {
                acc.mul_add_assign(c, &e[k - j]);
            }
            e.push(acc.div_i64(k as i64));
        }
        Ok(Self { coeffs: e })
    }

    /// log(a) for a series with constant term 1, integrating a'/a.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = self.order();
        // k l_k = k a_k − Σ_{j=1}^{k−1} j l_j a_{k−j}
        let mut jl: Vec<C> = vec![self.proto().zero_like(); n + 1];
        let nz: Vec<(usize, &C)> = self.nonzero_terms().into_iter().filter(|(i, _)| *i > 0).collect();
        for k in 1..=n {
            let mut acc = self.coeffs[k].mul_i64(k as i64);
            for (i, c) in nz.iter().take_while(|(i, _)| *i < k) {
                let j = k - i;
                if !jl[j].is_zero() {
                    acc.sub_assign_ref(&jl[j].mul_ref(c));
                }
            }
            jl[k] = acc;
        }
        let mut out = vec![self.proto().zero_like(); n + 1];
        for k in 1..=n {
            out[k] = jl[k].div_i64(k as i64);
        }
        Ok(Self { coeffs: out })
    }

    /// 1/a for an invertible constant term.
    pub fn recip(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("series has no inverse: zero constant term".into()));
        }
        let n = self.order();
        let inv0 = self.proto().one_like().div_ref(&self.coeffs[0]);
        let nz: Vec<(usize, &C)> = self.nonzero_terms().into_iter().filter(|(i, _)| *i > 0).collect();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = self.proto().zero_like();
            for (i, c) in nz.iter().take_while(|(i, _)| *i <= k) {
                acc.mul_add_assign(c, &out[k - i]);
            }
            out.push(acc.mul_ref(&inv0).neg_ref());
        }
        Ok(Self { coeffs: out })
    }

    /// a^e for constant term 1 and rational exponent e.
    pub fn pow_rational(&self, e: &Rational) -> Result<Self> {
        let l = self.log()?;
        l.scale(&self.proto().from_rational_like(e)).exp()
    }

    /// Multiply by a sparse factor `1 + Σ c_j z^{j}` given as `(j, c_j)` pairs.
    pub fn mul_sparse_factor(&self, terms: &[(usize, C)]) -> Self {
        let n = self.order();
        let mut out = self.coeffs.clone();
        for (j, c) in terms.iter().filter(|(j, _)| *j >= 1 && *j <= n) {
            for i in (0..=n - j).rev() {
                if !self.coeffs[i].is_zero() {
                    out[i + j].mul_add_assign(&self.coeffs[i], c);
                }
            }
        }
        Self { coeffs: out }
    }
}

impl ExactSeries {
    pub fn zero(order: usize) -> Self {
        Self::zero_with(order, &Rational::new())
    }

    pub fn one(order: usize) -> Self {
        Self::one_with(order, &Rational::new())
    }

    pub fn from_rationals<T: Into<Rational>, I: IntoIterator<Item = T>>(it: I) -> Self {
        Self::from_coeffs(it.into_iter().map(Into::into).collect())
    }

    /// Float copy at `bits` of precision.
    pub fn to_float(&self, bits: u32) -> FloatSeries {
        FloatSeries::from_coeffs(self.coeffs.iter().map(|c| Float::with_val(bits, c)).collect())
    }

    /// Truncation of Li_ν(z) = Σ z^n/n^ν for integer ν.
    pub fn polylog(nu: i32, order: usize) -> Self {
        let mut c = vec![Rational::new(); order + 1];
        for (n, slot) in c.iter_mut().enumerate().skip(1) {
            let nn = rug::Integer::from(n);
            *slot = if nu >= 0 {
                Rational::from((1, nn.pow(nu as u32)))
            } else {
                Rational::from(nn.pow((-nu) as u32))
            };
        }
        Self { coeffs: c }
    }
}

pub fn series_mul<C: Coeff>(a: &TruncatedSeries<C>, b: &TruncatedSeries<C>) -> TruncatedSeries<C> {
    a.mul(b)
}

pub fn series_exp<C: Coeff>(a: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
    a.exp()
}

pub fn series_log<C: Coeff>(a: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
    a.log()
}

pub fn substitute_power<C: Coeff>(a: &TruncatedSeries<C>, m: usize) -> TruncatedSeries<C> {
    a.substitute_power(m)
}
