use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::{GfSpec, PolylogTerm, PrefactorFactor};
use crate::error::{Error, Result};
use crate::exact::arith::{mobius, prime_factors, prime_power};
use crate::exact::{bessel_i_series, distinct_degree, product_expand, Coeff, ExactSeries, FactorGenerator, TruncatedSeries};
use crate::logpower::Exponent;
use crate::numerics::Precision;

/// Order through which every decomposition is checked against the product.
pub const VALIDATION_ORDER: usize = 64;

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// Digits the polylog tail has to be below.
fn target_digits(p: Precision) -> f64 {
    p.digits() as f64 + 10.0
}

/// Q_α = ∏(1 + k^α z^k) for rational α ≤ −1; α = −1 is distinct cycles.
///
/// log Q_α = Σ_m ((−1)^{m−1}/m) Li_{−αm}(z^m). The leading terms z^m of
/// the polylogs sum to log(1+z) and are moved into the prefactor, which
/// leaves a tail decaying like 2^{αm}. For α = −1 the m = 1 polylog is
/// −log(1−z) itself and goes to the prefactor as well.
pub fn q_alpha_spec(alpha: &Rational, p: Precision) -> Result<GfSpec> {
    if *alpha > -1 {
        return Err(Error::InvalidArgument(format!("Q_α needs α ≤ −1, got {alpha}")));
    }
    let beta = super::exponent_of(&Rational::from(-alpha));
    let pole = *alpha == -1;
    let terms = (target_digits(p) * std::f64::consts::LOG2_10 / beta.to_f64()).ceil() as u64 + 2;
    let first = if pole { 2 } else { 1 };
    let polylogs = (first..=terms)
        .map(|m| PolylogTerm {
            coeff: r(if m % 2 == 1 { 1 } else { -1 }, m as i64),
            nu: beta.mul_int(m as i64),
            power: m,
            drop_leading: true,
        })
        .collect();
    let mut prefactor = vec![
        PrefactorFactor::Binomial { j: 1, e: r(-1, 1) },
        PrefactorFactor::Binomial { j: 2, e: r(1, 1) },
    ];
    if pole {
        prefactor[0] = PrefactorFactor::Binomial { j: 1, e: r(-2, 1) };
        prefactor.push(PrefactorFactor::ExpMonomial { j: 1, c: r(-1, 1) });
    }
    Ok(GfSpec {
        name: if pole { "distinct-cycles".into() } else { format!("q-alpha:{alpha}") },
        prefactor,
        polylogs,
        analytic_extra: None,
        z_scale: r(1, 1),
        global_order: if pole { Exponent::int(-1) } else { Exponent::zero() },
        smoothness: 8,
    })
}

/// Coefficients h_j of log exp_d(x) = Σ_j h_j x^{dj}, j = 1..=count.
fn log_sectioned_exp(d: u64, count: usize) -> Vec<Rational> {
    let e = ExactSeries::from_coeffs(
        (0..=count)
            .map(|n| Rational::from((1, Integer::from(Integer::factorial((d * n as u64) as u32)))))
            .collect(),
    );
    e.log().expect("exp_d(0) = 1").coeffs()[1..].to_vec()
}

fn subsets<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    (0..1u32 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| *x).collect())
        .collect()
}

/// Permutations with an m-th root, Π_m = A_m·B_m.
///
/// A_m = ∏_{k | rad m} (1 − z^k)^{−μ(k)/k}. The exponent of B_m collects,
/// for each nonempty set S of primes of m with d = ∏_{p∈S} p^{v_p(m)},
/// the terms h_j^{(d)}·(−1)^{|T|}·M^{−dj}·Li_{dj}(z^{Mdj}) over T ⊆ P∖S,
/// M = ∏_{S∪T} p, by inclusion-exclusion on the primes dividing k.
pub fn mth_root_spec(m: u64, p: Precision) -> Result<GfSpec> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("m-th roots need m ≥ 2, got {m}")));
    }
    let factors = prime_factors(m);
    let primes: Vec<u64> = factors.iter().map(|f| f.0).collect();
    let rad: u64 = primes.iter().product();
    let mut prefactor = Vec::new();
    for k in 1..=rad {
        if rad.is_multiple_of(k) && mobius(k) != 0 {
            prefactor.push(PrefactorFactor::Binomial { j: k, e: r(-mobius(k), k as i64) });
        }
    }
    let mut polylogs = Vec::new();
    let digits = target_digits(p);
    for s in subsets(&factors).into_iter().filter(|s| !s.is_empty()) {
        let d: u64 = s.iter().map(|(q, v)| q.pow(*v)).product();
        let s_primes: Vec<u64> = s.iter().map(|f| f.0).collect();
        let rest: Vec<u64> = primes.iter().copied().filter(|q| !s_primes.contains(q)).collect();
        // |h_j| ≤ 1 and M ≥ 2 bound every tail
        let count = (digits * std::f64::consts::LOG2_10 / d as f64).ceil() as usize + 2;
        let h = log_sectioned_exp(d, count);
        for t in subsets(&rest) {
            let big_m: u64 = s_primes.iter().chain(t.iter()).product();
            let sign = if t.len() % 2 == 0 { 1 } else { -1 };
            for (j, hj) in h.iter().enumerate().map(|(i, c)| (i as u64 + 1, c)) {
                if *hj == 0 {
                    continue;
                }
                let dj = d * j;
                let scale = Integer::from(big_m).pow(dj as u32);
                let coeff = Rational::from(hj * sign) / scale;
                if coeff.to_f64().abs().log10() < -digits {
                    break;
                }
                polylogs.push(PolylogTerm {
                    coeff,
                    nu: Exponent::int(dj as i64),
                    power: big_m * dj,
                    drop_leading: false,
                });
            }
        }
    }
    let phi = crate::exact::arith::totient(m);
    Ok(GfSpec {
        name: if m == 2 { "square-perms".into() } else { format!("mth-roots:{m}") },
        prefactor,
        polylogs,
        analytic_extra: None,
        z_scale: r(1, 1),
        global_order: Exponent::new(-(phi as i64), m as i64),
        smoothness: 8,
    })
}

/// W = ∏ I(z^k/k²) = exp(Σ_ℓ h_ℓ Li_{2ℓ}(z^ℓ)), h the coefficients of log I.
fn same_cycle_type_spec(p: Precision) -> GfSpec {
    // log I has radius ≈ 1.45; its coefficients are below 1
    let count = (target_digits(p) / 0.16).ceil() as usize + 4;
    let h = bessel_i_series(count).log().expect("I(0) = 1");
    let polylogs = h.coeffs()[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| PolylogTerm {
            coeff: c.clone(),
            nu: Exponent::int(2 * (i as i64 + 1)),
            power: i as u64 + 1,
            drop_leading: false,
        })
        .collect();
    GfSpec {
        name: "same-cycle-type".into(),
        prefactor: Vec::new(),
        polylogs,
        analytic_extra: None,
        z_scale: r(1, 1),
        global_order: Exponent::zero(),
        smoothness: 8,
    }
}

/// D(z/q) for distinct degree factorizations: the distinct-cycle form plus
/// an analytic extra S, analytic in |z| < √2, fixed by the exact product.
pub fn distinct_degree_spec(q: u64, p: Precision) -> Result<GfSpec> {
    if prime_power(q).is_none() {
        return Err(Error::InvalidArgument(format!("q = {q} is not a prime power")));
    }
    let mut spec = q_alpha_spec(&r(-1, 1), p)?;
    spec.name = format!("ddf:{q}");
    spec.z_scale = r(1, q as i64);
    // |s_n| ≈ 2^{−n/2}, and derivatives up to order ~10 are needed at |z| = 1
    let order = (2.0 * target_digits(p) * std::f64::consts::LOG2_10).ceil() as usize + 60;
    let g = distinct_degree(q)?;
    let extra = exponent_residual(&spec, &g, order)?;
    spec.analytic_extra = Some(extra.coeffs().to_vec());
    Ok(spec)
}

/// Recognizes a registered product family by name and builds its exp-log
/// form, checked exactly against the product to order 64.
pub fn exp_log_decompose(g: &FactorGenerator, p: Precision) -> Result<GfSpec> {
    let name = g.name();
    let arg = |prefix: &str| name.strip_prefix(prefix);
    let spec = if name == "distinct-cycles" {
        q_alpha_spec(&r(-1, 1), p)?
    } else if name == "square-perms" {
        mth_root_spec(2, p)?
    } else if name == "same-cycle-type" {
        same_cycle_type_spec(p)
    } else if let Some(m) = arg("mth-roots:") {
        mth_root_spec(parse_u64(m)?, p)?
    } else if let Some(q) = arg("ddf:") {
        distinct_degree_spec(parse_u64(q)?, p)?
    } else if let Some(a) = arg("q-alpha:") {
        let a: Rational = a
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad exponent in {name}")))?;
        q_alpha_spec(&a, p)?
    } else {
        return Err(Error::InvalidArgument(format!("no exp-log rule for {name}")));
    };
    validate_decomposition(&spec, g, VALIDATION_ORDER)?;
    Ok(spec)
}

fn parse_u64(s: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::InvalidArgument(format!("expected an integer, got {s:?}")))
}

/// log P + Σ c·Li_ν(z^ℓ) + S mod z^{order+1}; `inv_pow(n, ν)` gives n^{−ν}.
fn known_log<C: Coeff>(spec: &GfSpec, order: usize, proto: &C, inv_pow: impl Fn(u64, Exponent) -> C) -> TruncatedSeries<C> {
    let mut c = vec![proto.zero_like(); order + 1];
    let n = order as u64;
    for f in &spec.prefactor {
        match f {
            PrefactorFactor::Binomial { j, e } => {
                // e·log(1 − z^j) = −e Σ z^{jk}/k
                let mut k = 1;
                while j * k <= n {
                    c[(j * k) as usize].sub_assign_ref(&proto.from_rational_like(&Rational::from(e / k)));
                    k += 1;
                }
            }
            PrefactorFactor::ExpMonomial { j, c: v } => {
                if *j <= n {
                    c[*j as usize].add_assign_ref(&proto.from_rational_like(v));
                }
            }
        }
    }
    for t in &spec.polylogs {
        let coeff = proto.from_rational_like(&t.coeff);
        let mut k = if t.drop_leading { 2 } else { 1 };
        while t.power * k <= n {
            c[(t.power * k) as usize].add_assign_ref(&coeff.mul_ref(&inv_pow(k, t.nu)));
            k += 1;
        }
    }
    if let Some(extra) = &spec.analytic_extra {
        for (slot, v) in c.iter_mut().zip(extra) {
            slot.add_assign_ref(&proto.from_rational_like(v));
        }
    }
    TruncatedSeries::from_coeffs(c)
}

fn exact_inv_pow(k: u64, nu: Exponent) -> Rational {
    let v = nu.as_integer().expect("exact validation needs integer ν");
    let kk = Integer::from(k);
    if v >= 0 {
        Rational::from((1, kk.pow(v as u32)))
    } else {
        Rational::from(kk.pow((-v) as u32))
    }
}

/// log(product at z·z_scale) minus the known part of the spec.
fn exponent_residual(spec: &GfSpec, g: &FactorGenerator, order: usize) -> Result<ExactSeries> {
    let prod = product_expand(g, order);
    let mut scale = Rational::from(1);
    let scaled: Vec<Rational> = prod
        .coeffs()
        .iter()
        .map(|c| {
            let v = Rational::from(c * &scale);
            scale *= &spec.z_scale;
            v
        })
        .collect();
    let log = ExactSeries::from_coeffs(scaled).log()?;
    Ok(log.sub(&known_log(spec, order, &Rational::new(), exact_inv_pow)))
}

/// Exact check that P·exp(Σ c·Li + S) reproduces the product mod z^{order+1}.
///
/// Both sides are compared after taking logarithms, which is equivalent
/// since both have constant term 1.
pub fn validate_decomposition(spec: &GfSpec, g: &FactorGenerator, order: usize) -> Result<()> {
    if spec.polylogs.iter().any(|t| !t.nu.is_integer()) {
        return Err(Error::InvalidArgument(
            "exact validation needs integer polylog orders; use validate_float".into(),
        ));
    }
    let res = exponent_residual(spec, g, order)?;
    match res.coeffs().iter().position(|c| *c != 0) {
        Some(index) => Err(Error::DecompositionMismatch { index }),
        None => Ok(()),
    }
}

/// Float version of [`validate_decomposition`] for rational polylog orders,
/// to a relative tolerance of 10^{10−P}.
pub fn validate_float(spec: &GfSpec, g: &FactorGenerator<Float>, order: usize, p: Precision) -> Result<()> {
    let b = p.bits();
    let proto = Float::with_val(b, 0);
    let prod = product_expand(g, order);
    let zs = Float::with_val(b, &spec.z_scale);
    let mut scale = Float::with_val(b, 1);
    let scaled: Vec<Float> = prod
        .coeffs()
        .iter()
        .map(|c| {
            let v = Float::with_val(b, c * &scale);
            scale *= &zs;
            v
        })
        .collect();
    let log = TruncatedSeries::from_coeffs(scaled).log()?;
    let known = known_log(spec, order, &proto, |k, nu| {
        Float::with_val(b, Float::with_val(b, k).ln() * -nu.to_float(b)).exp()
    });
    let tol = Float::with_val(b, 10).pow(10 - p.digits() as i32);
    for (index, (a, k)) in log.coeffs().iter().zip(known.coeffs()).enumerate() {
        let diff = Float::with_val(b, a - k).abs();
        let mag = Float::with_val(b, a.clone().abs()).max(&Float::with_val(b, 1));
        if diff > Float::with_val(b, &tol * &mag) {
            return Err(Error::DecompositionMismatch { index });
        }
    }
    Ok(())
}
