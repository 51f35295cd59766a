use std::collections::BTreeMap;

use rug::Float;
use serde::{Deserialize, Serialize};

use super::Exponent;
use crate::numerics::{format_sci, Complex, Precision, RootOfUnity};

/// c·(1 − z/ζ)^α·L(z/ζ)^k with L(z) = log 1/(1−z).
#[derive(Clone, Debug, PartialEq)]
pub struct LogPowerMonomial {
    pub zeta: RootOfUnity,
    pub alpha: Exponent,
    pub k: u32,
    pub c: Complex,
}

impl LogPowerMonomial {
    pub fn new(zeta: RootOfUnity, alpha: Exponent, k: u32, c: Complex) -> Self {
        Self { zeta, alpha, k, c }
    }

    /// Unit coefficient monomial at ζ = 1.
    pub fn unit(alpha: Exponent, k: u32, p: Precision) -> Self {
        Self::new(RootOfUnity::one(), alpha, k, Complex::one(p))
    }
}

/// Finite sum of log-power monomials, one per (ζ, α, k).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LogPowerFunction {
    monomials: BTreeMap<(RootOfUnity, Exponent, u32), Complex>,
}

impl LogPowerFunction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_monomial(&mut self, m: LogPowerMonomial) {
        let key = (m.zeta, m.alpha, m.k);
        match self.monomials.get_mut(&key) {
            Some(c) => *c += &m.c,
            None => {
                self.monomials.insert(key, m.c);
            }
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = LogPowerMonomial> + '_ {
        self.monomials
            .iter()
            .map(|(&(zeta, alpha, k), c)| LogPowerMonomial::new(zeta, alpha, k, c.clone()))
    }

    /// Distinct centers, ascending by (order, index).
    pub fn centers(&self) -> Vec<RootOfUnity> {
        let mut v: Vec<RootOfUnity> = self.monomials.keys().map(|k| k.0).collect();
        v.dedup();
        v
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

impl FromIterator<LogPowerMonomial> for LogPowerFunction {
    fn from_iter<I: IntoIterator<Item = LogPowerMonomial>>(it: I) -> Self {
        let mut f = Self::new();
        for m in it {
            f.add_monomial(m);
        }
        f
    }
}

/// One term amp·ζ^{−n}·n^{−β}·(log n)^j.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymTerm {
    pub zeta: RootOfUnity,
    pub beta: Exponent,
    pub j: u32,
    pub amp: Complex,
}

/// Σ amp·ζ^{−n}·n^{−β}·(log n)^j, sorted by (β, ζ, j).
///
/// `error_beta`, when known, is the exponent of the neglected remainder:
/// every omitted contribution is O(n^{−error_beta}·(log n)^K).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AsymptoticExpansion {
    terms: Vec<AsymTerm>,
    error_beta: Option<Exponent>,
}

impl AsymptoticExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    /// Canonical expansion: equal (β, ζ, j) keys are merged.
    pub fn from_terms<I: IntoIterator<Item = AsymTerm>>(it: I) -> Self {
        let mut map: BTreeMap<(Exponent, RootOfUnity, u32), Complex> = BTreeMap::new();
        for t in it {
            let key = (t.beta, t.zeta, t.j);
            match map.get_mut(&key) {
                Some(c) => *c += &t.amp,
                None => {
                    map.insert(key, t.amp);
                }
            }
        }
        Self {
            terms: map
                .into_iter()
                .map(|((beta, zeta, j), amp)| AsymTerm { zeta, beta, j, amp })
                .collect(),
            error_beta: None,
        }
    }

    pub fn with_error_beta(mut self, b: Option<Exponent>) -> Self {
        self.error_beta = b;
        self
    }

    pub fn error_beta(&self) -> Option<Exponent> {
        self.error_beta
    }

    pub fn terms(&self) -> &[AsymTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Sum of two expansions; the error exponent is the weaker one.
    pub fn add(&self, o: &Self) -> Self {
        let err = match (self.error_beta, o.error_beta) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Self::from_terms(self.terms.iter().chain(o.terms.iter()).cloned()).with_error_beta(err)
    }

    pub fn scale(&self, c: &Complex) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| AsymTerm {
                    amp: &t.amp * c,
                    ..t.clone()
                })
                .collect(),
            error_beta: self.error_beta,
        }
    }

    /// Terms with β ≤ `max_beta`.
    pub fn truncated(&self, max_beta: Exponent) -> Self {
        Self {
            terms: self.terms.iter().filter(|t| t.beta <= max_beta).cloned().collect(),
            error_beta: self.error_beta,
        }
    }

    /// Terms attached to one root of unity.
    pub fn for_root(&self, zeta: RootOfUnity) -> Self {
        Self {
            terms: self.terms.iter().filter(|t| t.zeta == zeta).cloned().collect(),
            error_beta: self.error_beta,
        }
    }

    /// Amplitude of ζ^{−n} n^{−β} (log n)^j, if present.
    pub fn amplitude(&self, zeta: RootOfUnity, beta: Exponent, j: u32) -> Option<&Complex> {
        self.terms
            .iter()
            .find(|t| t.zeta == zeta && t.beta == beta && t.j == j)
            .map(|t| &t.amp)
    }

    /// Serializable rendering with `digits` significant digits.
    pub fn records(&self, digits: usize) -> Vec<AsymTermRecord> {
        self.terms
            .iter()
            .map(|t| AsymTermRecord {
                root: t.zeta.to_string(),
                beta: t.beta,
                log_power: t.j,
                re: format_sci(&t.amp.re, digits),
                im: format_sci(&t.amp.im, digits),
            })
            .collect()
    }
}

/// Flat, serializable form of an [`AsymTerm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymTermRecord {
    pub root: String,
    pub beta: Exponent,
    pub log_power: u32,
    pub re: String,
    pub im: String,
}

/// Σ amp·ζ^{−n}·n^{−β}·(log n)^j at a given n ≥ 2.
pub fn evaluate_expansion(e: &AsymptoticExpansion, n: u64, p: Precision) -> Complex {
    let b = p.bits();
    let nf = p.float(n);
    let log_n = Float::with_val(b, nf.ln_ref());
    let mut acc = Complex::zero(p);
    let mut cache: BTreeMap<RootOfUnity, Complex> = BTreeMap::new();
    for t in &e.terms {
        let osc = cache.entry(t.zeta).or_insert_with(|| t.zeta.pow_neg(n).value(p));
        let nb = Float::with_val(b, -Float::with_val(b, &log_n * &t.beta.to_float(b))).exp();
        let lj = Float::with_val(b, rug::ops::Pow::pow(&log_n, t.j));
        let mag = Float::with_val(b, nb * lj);
        acc += &(&t.amp * &*osc).scale(&mag);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_single() {
        let p = Precision::new(30);
        assert!(evaluate_expansion(&AsymptoticExpansion::new(), 100, p).is_zero());
        let e = AsymptoticExpansion::from_terms([AsymTerm {
            zeta: RootOfUnity::one(),
            beta: Exponent::int(1),
            j: 0,
            amp: Complex::one(p),
        }]);
        let v = evaluate_expansion(&e, 100, p);
        assert!((v.re.to_f64() - 0.01).abs() < 1e-28);
    }

    #[test]
    fn merging_and_order() {
        let p = Precision::new(20);
        let t = |b: i64, j: u32| AsymTerm {
            zeta: RootOfUnity::one(),
            beta: Exponent::int(b),
            j,
            amp: Complex::one(p),
        };
        let e = AsymptoticExpansion::from_terms([t(2, 0), t(0, 0), t(2, 0), t(1, 1)]);
        assert_eq!(e.len(), 3);
        assert_eq!(e.terms()[0].beta, Exponent::int(0));
        assert_eq!(e.terms()[2].amp.re, 2);
    }
}
