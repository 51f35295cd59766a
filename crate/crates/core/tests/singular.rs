use hybrid_asym::logpower::Exponent;
use hybrid_asym::numerics::{harmonic, zeta, Complex, Precision, RootOfUnity};
use hybrid_asym::singular::{polylog_direct, polylog_eval, polylog_singular, LogPowerSeries};
use proptest::prelude::*;
use rug::{Float, Integer};

#[test]
fn radial_convergence_at_one() {
    // |Li_ν(1−x) − expansion(x)| / x³ may not grow by more than 5× per decade
    let p = Precision::new(40);
    let b = p.bits();
    let t = Exponent::int(3);
    for nu in [Exponent::new(1, 2), Exponent::int(1), Exponent::int(2), Exponent::int(3)] {
        let s = polylog_singular(nu, t, p).unwrap();
        let mut ratios = Vec::new();
        for (i, x) in [1e-2f64, 1e-3, 1e-4].into_iter().enumerate() {
            let xf = Float::with_val(b, x);
            let w = Complex::real(Float::with_val(b, 1u32 - &xf));
            let exact = polylog_eval(nu, &w, p).unwrap();
            if i < 2 {
                // independent check of the evaluator itself
                assert!(polylog_direct(nu, &w, p).dist(&exact).to_f64() < 1e-30);
            }
            let err = s.eval_radial(&xf).dist(&exact).to_f64();
            ratios.push(err / x.powi(3));
        }
        if ratios.iter().all(|r| *r < 1e-20) {
            // Li_1 = Λ exactly
            continue;
        }
        for w in ratios.windows(2) {
            assert!(w[1] <= 5.0 * w[0], "ν = {nu}: {ratios:?}");
        }
    }
}

#[test]
fn zagier_cohen_series_is_exact_at_nine_tenths() {
    let p = Precision::new(40);
    let b = p.bits();
    let z = Float::with_val(b, 0.9);
    let tau = -Float::with_val(b, z.ln_ref());
    let log_tau = Float::with_val(b, tau.ln_ref());
    for m in [2u32, 3] {
        let f = Integer::from(Integer::factorial(m - 1));
        let h = Float::with_val(b, &harmonic((m - 1) as u64));
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let tau_pow = Float::with_val(b, rug::ops::Pow::pow(&tau, m - 1));
        let mut sum = Float::with_val(b, &log_tau - &h) * tau_pow * sign / f;
        let mut fact = Integer::from(1);
        for j in 0..30u32 {
            if j > 0 {
                fact *= j;
            }
            if j == m - 1 {
                continue;
            }
            let zv = zeta(&Float::with_val(b, m as i32 - j as i32), p).unwrap();
            let neg_tau = Float::with_val(b, -&tau);
            let pw = Float::with_val(b, rug::ops::Pow::pow(&neg_tau, j));
            sum += zv * pw / &fact;
        }
        let w = Complex::real(z.clone());
        let direct = polylog_direct(Exponent::int(m as i64), &w, p);
        let eval = polylog_eval(Exponent::int(m as i64), &w, p).unwrap();
        let rel = |v: &Complex| -> f64 { let d: Float = Float::with_val(b, &v.re - &sum) / &sum; d.abs().to_f64() };
        assert!(rel(&direct) < 1e-10, "m = {m}");
        assert!(rel(&eval) < 1e-10, "m = {m}");
    }
}

#[test]
fn analytic_expansion_off_the_singular_roots() {
    // Li_3(z³) around z = −1 and Li_2(z) around z = i
    let p = Precision::new(40);
    let b = p.bits();
    let x = Float::with_val(b, 1e-2);
    for (nu, ell, zeta_root) in [(3, 3u64, RootOfUnity::new(2, 1)), (2, 1, RootOfUnity::new(4, 1))] {
        let s = hybrid_asym::singular::expand_polylog_power(Exponent::int(nu), ell, zeta_root, Exponent::int(6), p).unwrap();
        let z = &zeta_root.value(p) * &Complex::real(Float::with_val(b, 1u32 - &x));
        let want = polylog_eval(Exponent::int(nu), &z.powi(ell as i64), p).unwrap();
        assert!(s.eval_radial(&x).dist(&want).to_f64() < 1e-10);
    }
}

fn series_from(coeffs: &[(i64, i64, u32, f64, f64)], p: Precision) -> LogPowerSeries {
    let mut s = LogPowerSeries::zero(RootOfUnity::one(), Exponent::int(4), p);
    for &(n, d, k, re, im) in coeffs {
        s.add_term(Exponent::new(n, d), k, &Complex::from_f64(p, re, im));
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exp_then_log_returns_input(
        terms in proptest::collection::vec((1i64..7, 1i64..3, 0u32..3, -1.0f64..1.0, -1.0f64..1.0), 1..5),
        c0 in -1.0f64..1.0,
    ) {
        let p = Precision::new(30);
        let mut all: Vec<_> = terms;
        all.push((0, 1, 0, c0, 0.0));
        let s = series_from(&all, p);
        let back = s.exp().unwrap().ln().unwrap();
        let tol = Float::with_val(p.bits(), 1e-22);
        for (a, k, c) in back.terms() {
            let want = s.coefficient(a, k).cloned().unwrap_or_else(|| Complex::zero(p));
            prop_assert!(c.dist(&want) < tol, "({}, {})", a, k);
        }
        for (a, k, c) in s.terms() {
            if c.abs() > tol {
                prop_assert!(back.coefficient(a, k).is_some());
            }
        }
    }
}
