use rug::Float;

use super::{Complex, Precision};

/// Truncated power series with complex floating coefficients, `len` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries {
    pub coeffs: Vec<Complex>,
}

impl ComplexSeries {
    pub fn zero(p: Precision, len: usize) -> Self {
        Self {
            coeffs: vec![Complex::zero(p); len],
        }
    }

    pub fn constant(c: Complex, len: usize) -> Self {
        let p_bits = c.prec();
        let mut coeffs = vec![Complex::new(Float::with_val(p_bits, 0), Float::with_val(p_bits, 0)); len];
        if len > 0 {
            coeffs[0] = c;
        }
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn bits(&self) -> u32 {
        self.coeffs.first().map(|c| c.prec()).unwrap_or(64)
    }

    fn zero_like(&self) -> Complex {
        let b = self.bits();
        Complex::new(Float::with_val(b, 0), Float::with_val(b, 0))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        Self {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        Self {
            coeffs: (0..n).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect(),
        }
    }

    pub fn scale(&self, c: &Complex) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        let mut out = vec![self.zero_like(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += &(a * b);
            }
        }
        Self { coeffs: out }
    }

    /// exp(a), any constant term.
    pub fn exp(&self) -> Self {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let b = self.bits();
        let mut out = vec![self.zero_like(); n];
        out[0] = self.coeffs[0].exp();
        // k e_k = Σ_{j=1}^{k} j a_j e_{k-j}
        for k in 1..n {
            let mut acc = self.zero_like();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &out[k - j]).scale_i64(j as i64);
            }
            out[k] = acc.scale(&Float::with_val(b, Float::with_val(b, k).recip_ref()));
        }
        Self { coeffs: out }
    }

    /// Principal log(a); requires a nonzero constant term.
    pub fn ln(&self) -> Self {
        let n = self.len();
        let b = self.bits();
        let a0 = &self.coeffs[0];
        let inv0 = a0.recip();
        let mut out = vec![self.zero_like(); n];
        out[0] = a0.ln();
        // a' = a · l'  ⇒  k a_k = Σ_{j=1}^{k} j l_j a_{k-j}
        for k in 1..n {
            let mut acc = self.coeffs[k].scale_i64(k as i64);
            for j in 1..k {
                acc -= &(&out[j] * &self.coeffs[k - j]).scale_i64(j as i64);
            }
            out[k] = (&acc * &inv0).scale(&Float::with_val(b, Float::with_val(b, k).recip_ref()));
        }
        Self { coeffs: out }
    }

    /// `a^w` on the principal branch.
    pub fn pow(&self, w: &Complex) -> Self {
        let l = self.ln();
        l.scale(w).exp()
    }

    /// Evaluates at `x` (Horner).
    pub fn eval(&self, x: &Complex) -> Complex {
        let mut acc = self.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Multiply by X^shift, dropping overflow.
    pub fn shift(&self, shift: usize) -> Self {
        let n = self.len();
        let mut out = vec![self.zero_like(); n];
        for i in 0..n.saturating_sub(shift) {
            out[i + shift] = self.coeffs[i].clone();
        }
        Self { coeffs: out }
    }

    pub fn resized(&self, len: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, self.zero_like());
        Self { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_log_round_trip() {
        let p = Precision::new(30);
        let a = ComplexSeries {
            coeffs: (0..8).map(|k| Complex::from_f64(p, 1.0 / (k as f64 + 1.0), 0.1 * k as f64)).collect(),
        };
        let back = a.ln().exp();
        for (x, y) in a.coeffs.iter().zip(back.coeffs.iter()) {
            assert!(x.dist(y) < 1e-27);
        }
    }

    #[test]
    fn sqrt_squared() {
        let p = Precision::new(30);
        let a = ComplexSeries {
            coeffs: vec![Complex::from_int(p, 4), Complex::from_int(p, 1), Complex::zero(p), Complex::zero(p)],
        };
        let s = a.pow(&Complex::from_f64(p, 0.5, 0.0));
        let sq = s.mul(&s);
        for (x, y) in a.coeffs.iter().zip(sq.coeffs.iter()) {
            assert!(x.dist(y) < 1e-27);
        }
    }
}
