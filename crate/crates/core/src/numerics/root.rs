use std::fmt;

use num_integer::Integer as _;
use serde::{Deserialize, Serialize};

use super::{Complex, Precision};

/// Root of unity `e^{2iπ j/ℓ}`, stored reduced (`gcd(j, ℓ) = 1`, `0 ≤ j < ℓ`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    order: u64,
    index: u64,
}

impl RootOfUnity {
    /// `e^{2iπ index/order}`; the pair is reduced to lowest terms.
    pub fn new(order: u64, index: u64) -> Self {
        assert!(order >= 1, "root of unity needs order ≥ 1");
        let index = index % order;
        let g = index.gcd(&order).max(1);
        let (order, index) = if index == 0 { (1, 0) } else { (order / g, index / g) };
        Self { order, index }
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// Exact order ℓ after reduction.
    pub fn order(self) -> u64 {
        self.order
    }

    pub fn index(self) -> u64 {
        self.index
    }

    /// ζ^m as a root of unity.
    pub fn pow(self, m: u64) -> Self {
        let idx = ((self.index as u128 * m as u128) % self.order as u128) as u64;
        Self::new(self.order, idx)
    }

    /// ζ^{-n}.
    pub fn pow_neg(self, n: u64) -> Self {
        let idx = ((self.index as u128 * n as u128) % self.order as u128) as u64;
        Self::new(self.order, (self.order - idx) % self.order)
    }

    pub fn conj(self) -> Self {
        Self::new(self.order, (self.order - self.index) % self.order)
    }

    pub fn is_one(self) -> bool {
        self.order == 1
    }

    /// Numeric value. Exact for orders 1, 2, 4.
    pub fn value(self, p: Precision) -> Complex {
        match (self.order, self.index) {
            (1, _) => Complex::one(p),
            (2, _) => Complex::from_int(p, -1),
            (4, 1) => Complex::i(p),
            (4, 3) => -Complex::i(p),
            (l, j) => {
                let angle = p.pi() * 2u32 * j / l;
                Complex::new(p.float(0), angle).exp()
            }
        }
    }

    /// All primitive ℓ-th roots, in index order.
    pub fn primitive(order: u64) -> Vec<Self> {
        (0..order)
            .filter(|j| j.gcd(&order) == 1 || order == 1)
            .map(|j| Self::new(order, j))
            .collect()
    }

    /// Every root whose order divides some ℓ ≤ `max_order`, sorted by (order, index).
    pub fn up_to_order(max_order: u64) -> Vec<Self> {
        (1..=max_order).flat_map(Self::primitive).collect()
    }

    /// Parses `"ℓ/j"`.
    pub fn parse(s: &str) -> Option<Self> {
        let (l, j) = s.split_once('/')?;
        let l: u64 = l.trim().parse().ok()?;
        let j: u64 = j.trim().parse().ok()?;
        if l == 0 {
            return None;
        }
        Some(Self::new(l, j))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.order, self.index)
    }
}
