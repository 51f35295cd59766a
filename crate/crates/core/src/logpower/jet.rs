//! ε-Taylor jets used to differentiate with respect to the exponent.

use std::sync::{Mutex, OnceLock};

use rug::{Float, Integer, Rational};

use crate::error::Result;
use crate::numerics::{bernoulli, gamma_real, polygamma_real, Complex, ComplexSeries, Precision};

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly(pub Vec<Rational>);

impl RatPoly {
    pub fn zero() -> Self {
        Self(vec![])
    }

    pub fn constant(c: Rational) -> Self {
        Self(vec![c])
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| *c == 0) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![Rational::new(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        Self(v).trim()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return Self::zero();
        }
        let mut v = vec![Rational::new(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += Rational::from(a * b);
            }
        }
        Self(v).trim()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.iter().map(|a| Rational::from(a * c)).collect()).trim()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.0.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Coefficients of p(x + ε) in ε, degrees 0..len.
    pub fn taylor_at(&self, x: &Rational, len: usize) -> Vec<Rational> {
        (0..len)
            .map(|q| {
                let mut acc = Rational::new();
                for (m, c) in self.0.iter().enumerate().skip(q) {
                    let binom = Integer::from(Integer::binomial_u(m as u32, q as u32));
                    let pw = Rational::from(rug::ops::Pow::pow(x, (m - q) as i32));
                    acc += Rational::from(c * binom) * pw;
                }
                acc
            })
            .collect()
    }
}

fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

/// B_m(−A) as a polynomial in A.
fn bernoulli_poly_neg(m: usize) -> RatPoly {
    let mut v = vec![Rational::new(); m + 1];
    for j in 0..=m {
        let deg = m - j;
        let sign = if deg.is_multiple_of(2) { 1 } else { -1 };
        v[deg] = (bernoulli(j) * binomial(m as u32, j as u32)) * sign;
    }
    RatPoly(v).trim()
}

fn compute_gamma_ratio_polys(count: usize) -> Vec<RatPoly> {
    // log(n^{A+1} Γ(n−A)/Γ(n+1)) = Σ_k d_k(A) n^{−k}
    let d: Vec<RatPoly> = (0..count)
        .map(|k| {
            if k == 0 {
                return RatPoly::zero();
            }
            let m = k + 1;
            let b1 = RatPoly::constant(bernoulli(m));
            let diff = bernoulli_poly_neg(m).add(&b1.scale(&Rational::from(-1)));
            let sign = if k % 2 == 1 { 1 } else { -1 };
            diff.scale(&Rational::from((sign, (k * (k + 1)) as i64)))
        })
        .collect();
    let mut e: Vec<RatPoly> = vec![RatPoly::constant(Rational::from(1))];
    for i in 1..count {
        let mut acc = RatPoly::zero();
        for j in 1..=i {
            acc = acc.add(&d[j].mul(&e[i - j]).scale(&Rational::from(j as i64)));
        }
        e.push(acc.scale(&Rational::from((1, i as i64))));
    }
    e
}

/// e_i(A) with Γ(n−A)/Γ(n+1) ~ n^{−A−1} Σ_i e_i(A) n^{−i}.
pub fn gamma_ratio_polys(count: usize) -> Vec<RatPoly> {
    static CACHE: OnceLock<Mutex<Vec<RatPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().expect("gamma ratio cache poisoned");
    if guard.len() < count {
        *guard = compute_gamma_ratio_polys(count);
    }
    guard[..count].to_vec()
}

fn jet_from_rationals(v: &[Rational], p: Precision) -> ComplexSeries {
    ComplexSeries {
        coeffs: v.iter().map(|c| Complex::from_rational(p, c)).collect(),
    }
}

pub(crate) fn rational_jet(v: &[Rational], p: Precision) -> ComplexSeries {
    jet_from_rationals(v, p)
}

/// Jet of ε ↦ 1/Γ(−α − ε), `len` coefficients.
pub fn reciprocal_gamma_jet(alpha: &Rational, len: usize, p: Precision) -> Result<ComplexSeries> {
    let b = p.bits();
    let mut expo = ComplexSeries::zero(p, len);
    if alpha.is_integer() && *alpha >= 0 {
        // 1/Γ(−r−ε) = (−1)^{r+1} Γ(1+r+ε) sin(πε)/π
        let r = alpha.numer().to_u32().expect("integer exponent fits u32");
        let x = Float::with_val(b, r + 1);
        let mut fact = Integer::from(1);
        for m in 1..len {
            let psi = polygamma_real(m as u32 - 1, &x, p)?;
            fact *= m as u32;
            expo.coeffs[m] = Complex::real(Float::with_val(b, psi / &fact));
        }
        let gam = Complex::real(Float::with_val(b, Integer::from(Integer::factorial(r))));
        let g = expo.exp().scale(&gam);
        let pi = p.pi();
        let mut sin = ComplexSeries::zero(p, len);
        let mut term = p.float(1);
        let mut j = 1usize;
        while j < len {
            // π^{j−1} (−1)^{(j−1)/2} / j!
            sin.coeffs[j] = Complex::real(term.clone());
            term = -Float::with_val(b, &term * &pi) * &pi / ((j + 1) * (j + 2)) as u32;
            j += 2;
        }
        let sign = if r.is_multiple_of(2) { -1 } else { 1 };
        return Ok(g.mul(&sin).scale(&Complex::from_int(p, sign)));
    }
    // 1/Γ(x−ε) = (1/Γ(x)) exp(−Σ_r ψ^{(r−1)}(x)(−ε)^r/r!)
    let x = Float::with_val(b, alpha) * -1i32;
    let mut fact = Integer::from(1);
    for r in 1..len {
        let psi = polygamma_real(r as u32 - 1, &x, p)?;
        fact *= r as u32;
        let sign: i32 = if r % 2 == 0 { -1 } else { 1 };
        expo.coeffs[r] = Complex::real(Float::with_val(b, psi * sign) / &fact);
    }
    let inv_gamma = Float::with_val(b, gamma_real(&x, p)?.recip_ref());
    Ok(expo.exp().scale(&Complex::real(inv_gamma)))
}
