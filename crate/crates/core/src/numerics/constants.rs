use rug::float::Constant;
use rug::Float;

use super::bernoulli::bernoulli_numbers;
use super::Precision;

/// Frequently used constants at one working precision.
#[derive(Clone, Debug)]
pub struct Constants {
    pub euler_gamma: Float,
    pub pi: Float,
    /// `logs[k] = log k` for `k = 0..=12`; `logs[0]` and `logs[1]` are zero.
    pub logs: Vec<Float>,
}

impl Constants {
    pub fn log(&self, k: usize) -> &Float {
        &self.logs[k]
    }
}

pub fn constants(p: Precision) -> Constants {
    let b = p.bits();
    let logs = (0..=12u32)
        .map(|k| {
            if k <= 1 {
                Float::with_val(b, 0)
            } else {
                Float::with_val(b, k).ln()
            }
        })
        .collect();
    Constants {
        euler_gamma: euler_gamma_by_harmonic(p),
        pi: Float::with_val(b, Constant::Pi),
        logs,
    }
}

/// γ = H_N − log N − 1/(2N) + Σ B_{2k} / (2k N^{2k}).
pub fn euler_gamma_by_harmonic(p: Precision) -> Float {
    let wp = p.raised(10);
    let b = wp.bits();
    let n = wp.digits() + 10;
    let mut h = wp.float(0);
    for k in 1..=n {
        h += Float::with_val(b, k).recip();
    }
    let nf = wp.float(n);
    h -= Float::with_val(b, nf.ln_ref());
    h -= Float::with_val(b, nf.recip_ref()) / 2u32;
    let eps = wp.epsilon();
    let bern = bernoulli_numbers(2 * (wp.digits() as usize + 10));
    let inv2 = Float::with_val(b, Float::with_val(b, n * n).recip_ref());
    let mut pow = inv2.clone();
    for k in 1..bern.len() / 2 {
        let t = Float::with_val(b, &bern[2 * k]) / (2 * k as u32) * &pow;
        let small = Float::with_val(b, t.abs_ref()) < eps;
        h += t;
        if small {
            break;
        }
        pow *= &inv2;
    }
    p.float(h)
}

fn arctan_inv(x: u32, p: Precision) -> Float {
    let b = p.bits();
    let eps = p.epsilon();
    let x2 = (x as u64) * (x as u64);
    let mut pow = Float::with_val(b, x).recip();
    let mut acc = pow.clone();
    let mut k = 1u64;
    loop {
        pow /= x2;
        let t = Float::with_val(b, &pow / (2 * k + 1));
        if t < eps {
            break;
        }
        if k % 2 == 1 {
            acc -= t;
        } else {
            acc += t;
        }
        k += 1;
    }
    acc
}

/// π = 16 arctan(1/5) − 4 arctan(1/239).
pub fn pi_by_machin(p: Precision) -> Float {
    let wp = p.raised(5);
    let v = arctan_inv(5, wp) * 16u32 - arctan_inv(239, wp) * 4u32;
    p.float(v)
}
