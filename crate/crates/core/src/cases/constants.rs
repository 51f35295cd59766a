use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::exact::arith::{divisors, ggcd, mobius, totient};
use crate::exact::bessel_i_series;
use crate::logpower::Exponent;
use crate::numerics::{
    constants, euler_gamma_by_harmonic, format_sci, gamma, gamma_real, tangent_numbers, zeta, Complex, Precision,
    RootOfUnity,
};
use crate::par::{map_range, Exec};
use crate::pipeline::{assemble, mth_root_spec, q_alpha_spec, radial_expansion, GfSpec};

use super::ConstantRecord;

/// Richardson levels used for slowly convergent sums: N = N₀·2^i.
const LEVELS: usize = 12;

/// Σ_{k≥1} term(k) from partial sums at N₀·2^i, extrapolated with the
/// given tail exponents.
pub(crate) fn accelerated_sum<F>(n0: u64, exponents: &[f64], term: F, p: Precision, exec: Exec) -> Float
where
    F: Fn(u64) -> Float + Sync + Send,
{
    let b = p.bits();
    let levels = (exponents.len() + 1).min(LEVELS);
    let mut partials = Vec::with_capacity(levels);
    let mut acc = Float::with_val(b, 0);
    let mut done = 0u64;
    for i in 0..levels {
        let target = n0 << i;
        let block = map_range(exec, 0..(target - done) as usize, |j| term(done + 1 + j as u64));
        for t in block {
            acc += t;
        }
        done = target;
        partials.push(acc.clone());
    }
    crate::numerics::richardson_limit(&partials, exponents).value
}

/// 1, 2, 3, …
fn integer_exponents() -> Vec<f64> {
    (1..LEVELS).map(|j| j as f64).collect()
}

/// ½, 3/2, 5/2, …
fn half_exponents() -> Vec<f64> {
    (0..LEVELS - 1).map(|j| j as f64 + 0.5).collect()
}

fn record(name: &str, route_a: &str, a: Float, route_b: &str, b: Float, p: Precision) -> Result<ConstantRecord> {
    let wb = a.prec().max(b.prec());
    let delta = Float::with_val(wb, &a - &b).abs();
    let scale = Float::with_val(wb, a.clone().abs()).max(&Float::with_val(wb, 1));
    let tol = Float::with_val(wb, 10).pow(-(p.digits() as i32) / 2) * &scale;
    if delta > tol {
        return Err(Error::ConstantMismatch {
            name: name.into(),
            delta: format_sci(&delta, 6),
        });
    }
    let digits = p.digits() as usize;
    Ok(ConstantRecord {
        name: name.into(),
        value: format_sci(&a, digits),
        route_a: route_a.into(),
        value_a: format_sci(&a, digits),
        route_b: route_b.into(),
        value_b: format_sci(&b, digits),
        delta: format_sci(&delta, 3),
    })
}

/// Working precision for the routes: a few guard digits above the target.
fn wp(p: Precision) -> Precision {
    p.raised(15)
}

/// e^G = ∏ cosh(1/2k).
pub fn e_g(p: Precision) -> Result<ConstantRecord> {
    let w = wp(p);
    let b = w.bits();
    // G = Σ (−1)^{m−1} τ_{m−1} ζ(2m)/(m 2^{2m+1}); terms shrink like π^{−2m}
    let count = (w.digits() as f64 / 1.99).ceil() as usize + 4;
    let tau = tangent_numbers(count);
    let mut g = Float::with_val(b, 0);
    for m in 1..=count {
        let z = zeta(&Float::with_val(b, 2 * m), w)?;
        let c = &tau[m - 1] / (Rational::from(m) << (2 * m as u32 + 1)) ;
        let t = Float::with_val(b, &c * z);
        if m % 2 == 1 {
            g += t;
        } else {
            g -= t;
        }
    }
    let a = g.exp();
    let s = accelerated_sum(
        64,
        &integer_exponents(),
        |k| Float::with_val(b, Float::with_val(b, 2 * k).recip().cosh()).ln(),
        w,
        Exec::Parallel,
    );
    record(
        "eG",
        "exp(Σ (−1)^{m−1}τ_{m−1}ζ(2m)/(m·2^{2m+1}))",
        a,
        "∏ cosh(1/2k), Richardson",
        s.exp(),
        p,
    )
}

/// c₂ = Σ (1/2k − tanh(1/2k)).
pub fn c2(p: Precision) -> Result<ConstantRecord> {
    let w = wp(p);
    let b = w.bits();
    let a = accelerated_sum(
        64,
        &integer_exponents(),
        |k| {
            let x = Float::with_val(b, 2 * k).recip();
            let t = Float::with_val(b, x.tanh_ref());
            x - t
        },
        w,
        Exec::Parallel,
    );
    // x − tanh x = −Σ_{m≥1} (−1)^m τ_m x^{2m+1}, summed over x = 1/2k
    let count = (w.digits() as f64 / 1.99).ceil() as usize + 4;
    let tau = tangent_numbers(count + 1);
    let mut s = Float::with_val(b, 0);
    for m in 1..=count {
        let z = zeta(&Float::with_val(b, 2 * m + 1), w)?;
        let c = &tau[m] / (Rational::from(1) << (2 * m as u32 + 1)) ;
        let t = Float::with_val(b, &c * z);
        if m % 2 == 1 {
            s += t;
        } else {
            s -= t;
        }
    }
    record(
        "c2",
        "Σ (1/2k − tanh(1/2k)), Richardson",
        a,
        "Σ (−1)^{m+1} τ_m ζ(2m+1)/2^{2m+1}",
        s,
        p,
    )
}

/// W(1) = ∏ I(1/k²).
pub fn w1(p: Precision) -> Result<ConstantRecord> {
    let w = wp(p);
    let b = w.bits();
    let i_of = |x: Float| {
        // Σ xⁿ/n!², x ≤ 1
        let mut t = Float::with_val(b, 1);
        let mut acc = Float::with_val(b, 1);
        let eps = w.epsilon();
        let mut n = 1u32;
        while t > eps {
            t *= &x;
            t /= n * n;
            acc += &t;
            n += 1;
        }
        acc
    };
    // log I has radius ≈ 1.4458 and ζ(2ℓ) − 1 ≈ 4^{−ℓ}
    let count = (w.digits() as f64 * std::f64::consts::LN_10 / (4.0f64 * 1.4458).ln()).ceil() as usize + 4;
    let h = bessel_i_series(count).log()?;
    let mut s = Float::with_val(b, i_of(Float::with_val(b, 1)).ln());
    for (l, hl) in h.coeffs().iter().enumerate().skip(1) {
        let z1 = zeta(&Float::with_val(b, 2 * l), w)? - 1u32;
        s += Float::with_val(b, hl * z1);
    }
    let prod = accelerated_sum(
        64,
        &integer_exponents(),
        |k| {
            let x = Float::with_val(b, (k * k) as f64).recip();
            i_of(x).ln()
        },
        w,
        Exec::Parallel,
    );
    record("W1", "I(1)·exp(Σ h_ℓ (ζ(2ℓ) − 1)), h = log I", s.exp(), "∏ I(1/k²), Richardson", prod.exp(), p)
}

/// t_n = T_n 4^{−n} for n = 1..=n_max, T_n the plane-tree numbers.
fn scaled_trees(n_max: u64, w: Precision) -> Vec<Float> {
    let b = w.bits();
    let mut out = Vec::with_capacity(n_max as usize);
    let mut t = Float::with_val(b, 0.25);
    for n in 1..=n_max {
        out.push(t.clone());
        // T_{n+1} = T_n·2(2n−1)/(n+1)
        t *= 2 * (2 * n - 1);
        t /= 4 * (n + 1);
    }
    out
}

fn tree_table(w: Precision) -> Vec<Float> {
    scaled_trees(64u64 << (LEVELS - 1), w)
}

/// log K from the product ∏ (1 − 4^{−n})^{−T_n}.
fn log_k_product(trees: &[Float], w: Precision) -> Float {
    let b = w.bits();
    accelerated_sum(
        64,
        &half_exponents(),
        |n| {
            let x = Float::with_val(b, Float::with_val(b, 4).pow(-(n as i64)));
            let l = Float::with_val(b, -Float::with_val(b, -&x).ln_1p()) / &x;
            Float::with_val(b, &trees[n as usize - 1] * l)
        },
        w,
        Exec::Parallel,
    )
}

/// log K = Σ_k (1 − √(1−4^{1−k}))/2k.
fn k_direct(w: Precision) -> Float {
    let b = w.bits();
    let mut s = Float::with_val(b, 0);
    let eps = w.epsilon();
    for k in 1u64.. {
        let x = Float::with_val(b, Float::with_val(b, 4).pow(1 - k as i64));
        let t = (Float::with_val(b, 1) - Float::with_val(b, 1 - x).sqrt()) / (2 * k);
        let small = t < eps;
        s += t;
        if small {
            break;
        }
    }
    s
}

/// K = F(1/4), the forest constant.
pub fn k(p: Precision) -> Result<ConstantRecord> {
    let w = wp(p);
    let s = k_direct(w);
    let trees = tree_table(w);
    let prod = log_k_product(&trees, w);
    record(
        "K",
        "exp(Σ (1 − √(1−4^{1−k}))/2k)",
        s.exp(),
        "∏ (1−4^{−n})^{−T_n}, Richardson",
        prod.exp(),
        p,
    )
}

/// κ = e^{L+1/2}/K, the limiting ratio E_n/F_n.
pub fn kappa(p: Precision) -> Result<ConstantRecord> {
    let w = wp(p);
    let b = w.bits();
    let trees = tree_table(w);
    // route A: L = Σ_{m≥2} ((−1)^{m−1}/m) Λ_m(1/4), Λ_m(1/4) = Σ t_n^m
    let mut l = Float::with_val(b, 0);
    let eps = w.epsilon();
    for m in 2u64.. {
        // t_n^m < ε once n^{3m/2} exceeds 1/ε; below the table length a
        // direct sum is exact to working precision
        let cutoff = (w.digits() as f64 * std::f64::consts::LN_10 / (1.5 * m as f64)).exp();
        let lam = if cutoff < trees.len() as f64 / 4.0 {
            let mut acc = Float::with_val(b, 0);
            for t in &trees {
                let v = Float::with_val(b, t.pow(m as u32));
                let done = v < eps;
                acc += v;
                if done {
                    break;
                }
            }
            acc
        } else {
            let start = 1.5 * m as f64 - 1.0;
            let exps: Vec<f64> = (0..LEVELS - 1).map(|j| start + j as f64).collect();
            accelerated_sum(
                64,
                &exps,
                |n| Float::with_val(b, (&trees[n as usize - 1]).pow(m as u32)),
                w,
                Exec::Parallel,
            )
        };
        let t = lam / m;
        let small = t < eps;
        if m % 2 == 1 {
            l += t;
        } else {
            l -= t;
        }
        if small {
            break;
        }
    }
    let k_sum = k_direct(w);
    let a = Float::with_val(b, Float::with_val(b, &l + 0.5).exp() / k_sum.exp());
    // route B: E(1/4) = ∏ (1 + t_n) directly, over the forest product for K
    let mut exps = vec![0.5, 1.5];
    exps.extend((4..2 * LEVELS).map(|j| j as f64 / 2.0));
    let log_e = accelerated_sum(64, &exps, |n| Float::with_val(b, trees[n as usize - 1].ln_1p_ref()), w, Exec::Parallel);
    let log_k = log_k_product(&trees, w);
    let bb = Float::with_val(b, log_e - log_k).exp();
    record(
        "kappa",
        "e^{L+1/2}/K, L = Σ ((−1)^{m−1}/m) Λ_m(1/4)",
        a,
        "E(1/4)/F(1/4) from the products, Richardson",
        bb,
        p,
    )
}

/// e^{−γ} = ∏ (1 + 1/k)e^{−1/k}.
pub fn exp_neg_gamma(p: Precision) -> Result<ConstantRecord> {
    let w = wp(p);
    let b = w.bits();
    let direct = Float::with_val(b, -euler_gamma_by_harmonic(w)).exp();
    let s = accelerated_sum(
        64,
        &integer_exponents(),
        |k| {
            let x = Float::with_val(b, k).recip();
            Float::with_val(b, x.ln_1p_ref()) - x
        },
        w,
        Exec::Parallel,
    );
    record("exp-neg-gamma", "exp(−γ), γ by Euler–Maclaurin", direct, "∏ (1+1/k)e^{−1/k}, Richardson", s.exp(), p)
}

/// f(ω) = 3Γ(⅔)/(Γ(⅓+ω/3)Γ(⅔+ω²/3)) for distinct cycle lengths.
pub fn f_omega_closed(p: Precision) -> Result<Complex> {
    let w = RootOfUnity::new(3, 1).value(p);
    let third = Complex::from_rational(p, &Rational::from((1, 3)));
    let a = &third + &w.scale_rational(&Rational::from((1, 3)));
    let bb = &third.scale_i64(2) + &(&w * &w).scale_rational(&Rational::from((1, 3)));
    let g23 = gamma(&third.scale_i64(2), p)?;
    Ok(&g23.scale_i64(3) / &(&gamma(&a, p)? * &gamma(&bb, p)?))
}

fn distinct_cycles_spec(w: Precision) -> Result<GfSpec> {
    q_alpha_spec(&Rational::from(-1), w)
}

/// Real and imaginary parts of f(ω), as two records.
pub fn f_omega(p: Precision) -> Result<Vec<ConstantRecord>> {
    let w = wp(p);
    let closed = f_omega_closed(w)?;
    let spec = distinct_cycles_spec(w)?;
    let s = radial_expansion(&spec, RootOfUnity::new(3, 1), Exponent::int(1), w)?;
    let radial = s
        .coefficient(Exponent::zero(), 0)
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("no constant term at ω".into()))?;
    Ok(vec![
        record(
            "f-omega-re",
            "Re 3Γ(⅔)/(Γ(⅓+ω/3)Γ(⅔+ω²/3))",
            closed.re.clone(),
            "Re of the radial constant at ω (polylogs at roots of unity)",
            radial.re.clone(),
            p,
        )?,
        record(
            "f-omega-im",
            "Im 3Γ(⅔)/(Γ(⅓+ω/3)Γ(⅔+ω²/3))",
            closed.im,
            "Im of the radial constant at ω (polylogs at roots of unity)",
            radial.im,
            p,
        )?,
    ])
}

/// c_{3,1} and c_{3,0} of the n^{−3} term at 1 for distinct cycle lengths.
pub fn c3(p: Precision) -> Result<Vec<ConstantRecord>> {
    let w = wp(p);
    let b = w.bits();
    let c = constants(w);
    let (g, l2, l3, pi) = (&c.euler_gamma, c.log(2), c.log(3), &c.pi);
    let c31 = Float::with_val(b, g * 2u32) - Float::with_val(b, l2 * 2u32) + 4u32;
    let c30 = Float::with_val(b, 1) + Float::with_val(b, g * 4u32) - l2 - Float::with_val(b, l3 * 3u32)
        + Float::with_val(b, l2 * l2)
        - Float::with_val(b, pi * pi) / 3u32
        + Float::with_val(b, g * g)
        - Float::with_val(b, Float::with_val(b, g * l2) * 2u32);
    let e = assemble(&distinct_cycles_spec(w)?, 1, Exponent::int(3), w)?;
    let eg = Float::with_val(b, -g).exp();
    let amp = |j: u32| -> Result<Float> {
        let a = e
            .amplitude(RootOfUnity::one(), Exponent::int(3), j)
            .ok_or_else(|| Error::InvalidArgument("missing n^{-3} term".into()))?;
        Ok(Float::with_val(b, &a.re / &eg))
    };
    Ok(vec![
        record("c31", "4 + 2γ − 2 log 2", c31, "assembled n^{−3} log n amplitude / e^{−γ}", amp(1)?, p)?,
        record(
            "c30",
            "1 + 4γ − log 2 − 3 log 3 + log²2 − π²/3 + γ² − 2γ log 2",
            c30,
            "assembled n^{−3} amplitude / e^{−γ}",
            amp(0)?,
            p,
        )?,
    ])
}

/// log exp_d(x) for x ≤ 1.
fn log_exp_d(d: u64, x: &Float, w: Precision) -> Float {
    let b = w.bits();
    let eps = w.epsilon();
    let xd = Float::with_val(b, x.pow(d as u32));
    let mut t = Float::with_val(b, 1);
    let mut acc = Float::with_val(b, 1);
    let mut n = 0u64;
    while t > eps {
        t *= &xd;
        for i in 1..=d {
            t /= n * d + i;
        }
        acc += &t;
        n += 1;
    }
    acc.ln()
}

/// B_m(1) = ∏_{gcd(ℓ,m)>1} exp_{⟨⟨ℓ,m⟩⟩}(1/ℓ).
pub fn b_m(m: u64, p: Precision) -> Result<ConstantRecord> {
    let (a, bb) = b_m_routes(m, wp(p))?;
    record(
        &format!("B:{m}"),
        "exp of the polylog sum at 1, Σ c·ζ(ν)",
        a,
        "∏ exp_d(1/ℓ) over gcd(ℓ,m) > 1, Richardson",
        bb,
        p,
    )
}

fn b_m_closed(m: u64, w: Precision) -> Result<Float> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("m-th roots need m ≥ 2, got {m}")));
    }
    let b = w.bits();
    let spec = mth_root_spec(m, w)?;
    let mut s = Float::with_val(b, 0);
    for t in &spec.polylogs {
        s += Float::with_val(b, &t.coeff * zeta(&t.nu.to_float(b), w)?);
    }
    Ok(s.exp())
}

fn b_m_routes(m: u64, w: Precision) -> Result<(Float, Float)> {
    let closed = b_m_closed(m, w)?;
    let b = w.bits();
    // the exponents of the tail do not depend on the residue of N mod m
    let prod = accelerated_sum(
        16 * m,
        &integer_exponents(),
        |l| {
            if num_integer::gcd(l, m) == 1 {
                return Float::with_val(b, 0);
            }
            let x = Float::with_val(b, l).recip();
            log_exp_d(ggcd(l, m), &x, w)
        },
        w,
        Exec::Parallel,
    );
    Ok((closed, prod.exp()))
}

/// ϖ_m = B_m(1)/Γ(φ(m)/m)·∏_{k|m} k^{−μ(k)/k}.
pub fn varpi(m: u64, p: Precision) -> Result<ConstantRecord> {
    let w = wp(p);
    let b = w.bits();
    let bm_val = b_m_closed(m, w)?;
    let phi = totient(m);
    let mut scale = Float::with_val(b, 1);
    for k in divisors(m) {
        let mu = mobius(k);
        if mu != 0 {
            let e = Float::with_val(b, -mu) / k;
            scale *= Float::with_val(b, Float::with_val(b, k).pow(&e));
        }
    }
    let g = gamma_real(&(Float::with_val(b, phi) / m), w)?;
    let closed = bm_val * scale / g;
    let spec = mth_root_spec(m, w)?;
    let beta = Exponent::new(m as i64 - phi as i64, m as i64);
    let e = assemble(&spec, 1, beta, w)?;
    let amp = e
        .amplitude(RootOfUnity::one(), beta, 0)
        .ok_or_else(|| Error::InvalidArgument("missing leading term".into()))?;
    record(
        &format!("varpi:{m}"),
        "B_m(1)/Γ(φ(m)/m)·∏ k^{−μ(k)/k}",
        closed,
        "leading amplitude at 1 from the pipeline",
        amp.re.clone(),
        p,
    )
}

/// I_k q^{−k} = (1/k) Σ_{d|k} μ(d) q^{k/d − k}.
fn irreducible_density(q: u64, k: u64, w: Precision) -> Float {
    let b = w.bits();
    let mut acc = Float::with_val(b, 0);
    for d in divisors(k) {
        let mu = mobius(d);
        if mu != 0 {
            let t = Float::with_val(b, Float::with_val(b, q).pow(k as i64 / d as i64 - k as i64));
            acc += t * mu;
        }
    }
    acc / k
}

fn check_q(q: u64) -> Result<()> {
    crate::exact::arith::prime_power(q)
        .map(|_| ())
        .ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a prime power")))
}

/// δ(q) (hat = false) or δ̂(q) (hat = true).
pub fn delta(q: u64, hat: bool, p: Precision) -> Result<ConstantRecord> {
    check_q(q)?;
    let w = wp(p);
    let b = w.bits();
    // log of the k-th factor (1 + a_k)(1 − q^{−k})^{I_k}
    let log_factor = |k: u64| {
        let dens = irreducible_density(q, k, w);
        let qk = Float::with_val(b, Float::with_val(b, q).pow(-(k as i64)));
        let a = if hat {
            // I_k/(q^k − 1) = I_k q^{−k}/(1 − q^{−k})
            Float::with_val(b, &dens / Float::with_val(b, 1 - &qk))
        } else {
            dens.clone()
        };
        let ik = Float::with_val(b, &dens / &qk);
        Float::with_val(b, a.ln_1p_ref()) + ik * Float::with_val(b, -qk).ln_1p()
    };
    let raw = accelerated_sum(64, &integer_exponents(), log_factor, w, Exec::Parallel);
    // geometric form: divide each factor by (1 + 1/k)e^{−1/k}
    let gamma_part = Float::with_val(b, -euler_gamma_by_harmonic(w));
    let mut acc = gamma_part;
    let cut = (2.0 * w.digits() as f64 * std::f64::consts::LOG2_10 / (q as f64).log2()).ceil() as u64 + 8;
    let terms = map_range(Exec::Parallel, 0..cut as usize, |i| {
        let k = i as u64 + 1;
        let x = Float::with_val(b, k).recip();
        log_factor(k) - Float::with_val(b, x.ln_1p_ref()) + x
    });
    for t in terms {
        acc += t;
    }
    let (name, a) = if hat { ("delta-hat", "∏ (1 + I_k/(q^k−1))(1−q^{−k})^{I_k}") } else { ("delta", "∏ (1 + I_k q^{−k})(1−q^{−k})^{I_k}") };
    record(
        &format!("{name}:{q}"),
        &format!("{a}, Richardson"),
        raw.exp(),
        "e^{−γ}∏ factor·e^{1/k}/(1+1/k), geometric",
        acc.exp(),
        p,
    )
}

/// Q_{−2}(1) = ∏ (1 + 1/k²) = sinh π/π.
pub fn q_minus_two(p: Precision) -> Result<ConstantRecord> {
    let w = wp(p);
    let b = w.bits();
    let pi = w.pi();
    let closed = Float::with_val(b, pi.sinh_ref()) / &pi;
    let spec = q_alpha_spec(&Rational::from(-2), w)?;
    let s = radial_expansion(&spec, RootOfUnity::one(), Exponent::int(1), w)?;
    let c = s
        .coefficient(Exponent::zero(), 0)
        .ok_or_else(|| Error::InvalidArgument("no constant term".into()))?;
    record("Q-2", "sinh π/π", closed, "radial constant at 1", c.re.clone(), p)
}

/// Every named constant, in a fixed order.
pub const NAMES: &[&str] = &[
    "eG",
    "c2",
    "W1",
    "K",
    "kappa",
    "exp-neg-gamma",
    "f-omega",
    "c3",
    "B:m",
    "varpi:m",
    "delta:q",
    "delta-hat:q",
    "Q-2",
];

/// Looks a constant up by name; `B:6`, `varpi:3`, `delta:2` take a parameter.
pub fn by_name(name: &str, p: Precision) -> Result<Vec<ConstantRecord>> {
    let param = |prefix: &str| -> Option<Result<u64>> {
        name.strip_prefix(prefix)
            .map(|s| s.parse().map_err(|_| Error::InvalidArgument(format!("bad parameter in {name:?}"))))
    };
    Ok(match name {
        "eG" => vec![e_g(p)?],
        "c2" => vec![c2(p)?],
        "W1" => vec![w1(p)?],
        "K" => vec![k(p)?],
        "kappa" => vec![kappa(p)?],
        "exp-neg-gamma" => vec![exp_neg_gamma(p)?],
        "f-omega" => f_omega(p)?,
        "c3" => c3(p)?,
        "Q-2" => vec![q_minus_two(p)?],
        _ => {
            if let Some(m) = param("B:") {
                vec![b_m(m?, p)?]
            } else if let Some(m) = param("varpi:") {
                vec![varpi(m?, p)?]
            } else if let Some(q) = param("delta-hat:") {
                vec![delta(q?, true, p)?]
            } else if let Some(q) = param("delta:") {
                vec![delta(q?, false, p)?]
            } else {
                return Err(Error::InvalidArgument(format!("unknown constant {name:?}")));
            }
        }
    })
}
