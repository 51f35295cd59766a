use hybrid_asym::exact::{
    self, bessel_i_series, product_expand, q_alpha_integer, ExactSeries, FactorGenerator,
};
use hybrid_asym::logpower::{hermite_interpolate, HermiteNode};
use hybrid_asym::numerics::{gamma_real, polygamma_real, zeta, Precision};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

fn families() -> Vec<FactorGenerator> {
    vec![
        exact::distinct_cycles(),
        exact::square_permutations(),
        exact::mth_root(3).unwrap(),
        exact::mth_root(6).unwrap(),
        exact::same_cycle_type(),
        exact::distinct_degree(2).unwrap(),
        exact::distinct_degree_hat(3).unwrap(),
        exact::dissimilar_forests(),
        exact::all_forests(),
        q_alpha_integer(-2),
    ]
}

#[test]
fn gamma_reflection_on_a_grid() {
    let p = Precision::new(50);
    let b = p.bits();
    let pi = p.pi();
    let tol = Float::with_val(b, 10).pow(3 - 50);
    for i in 0..100 {
        // 100 points in (−5, 5), none of them integers
        let x = Float::with_val(b, -5) + Float::with_val(b, 10 * i + 3) / 101u32 + Float::with_val(b, 0.0625);
        let g = gamma_real(&x, p).unwrap() * gamma_real(&(Float::with_val(b, 1) - &x), p).unwrap();
        let want = Float::with_val(b, &pi / Float::with_val(b, Float::with_val(b, &pi * &x).sin()));
        let err = Float::with_val(b, &g - &want).abs();
        assert!(err <= Float::with_val(b, &tol * want.abs()), "x = {x}");
    }
}

#[test]
fn zeta_vanishes_at_negative_even_integers() {
    let p = Precision::new(50);
    let tol = Float::with_val(p.bits(), 10).pow(2 - 50);
    for k in 1..=10 {
        let z = zeta(&Float::with_val(p.bits(), -2 * k), p).unwrap();
        assert!(z.abs() <= tol, "k = {k}");
    }
}

/// c·Li_ν(z^ℓ) mod z^{n+1}
fn polylog_power(c: &Rational, nu: u32, l: usize, n: usize) -> ExactSeries {
    let mut v = vec![Rational::new(); n + 1];
    for k in 1..=n / l {
        v[k * l] = Rational::from(c / Integer::from(k).pow(nu));
    }
    ExactSeries::from_coeffs(v)
}

/// log∏(1 + z^k/k) = −log(1−z) + Σ_{ℓ≥2} ((−1)^{ℓ−1}/ℓ)·Li_ℓ(z^ℓ)
fn chain_form(n: usize) -> ExactSeries {
    let mut s = ExactSeries::zero(n);
    for l in 2..=n {
        let c = Rational::from((if l % 2 == 0 { -1 } else { 1 }, l as i64));
        s = s.add(&polylog_power(&c, l as u32, l, n));
    }
    let geometric = ExactSeries::from_rationals(vec![1; n + 1]);
    geometric.mul(&s.exp().unwrap())
}

/// log∏ I(z^k/k²) = Σ_ℓ h_ℓ·Li_{2ℓ}(z^ℓ), h = log I
fn bessel_form(n: usize) -> ExactSeries {
    let h = bessel_i_series(n).log().unwrap();
    let mut s = ExactSeries::zero(n);
    for l in 1..=n {
        s = s.add(&polylog_power(&h.coeffs()[l], 2 * l as u32, l, n));
    }
    s.exp().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exp_inverts_log_on_products(which in 0usize..10, n in 1usize..=256) {
        let g = &families()[which];
        let f = product_expand(g, n);
        let back = f.log().unwrap().exp().unwrap();
        prop_assert_eq!(back.coeffs(), f.coeffs(), "{}", g.name());
    }

    #[test]
    fn distinct_cycles_chain_identity(n in 2usize..=128) {
        let f = product_expand(&exact::distinct_cycles(), n);
        let lhs = chain_form(n);
        prop_assert_eq!(lhs.coeffs(), f.coeffs());
    }

    #[test]
    fn same_cycle_type_bessel_identity(n in 1usize..=64) {
        let f = product_expand(&exact::same_cycle_type(), n);
        let lhs = bessel_form(n);
        prop_assert_eq!(lhs.coeffs(), f.coeffs());
    }

    #[test]
    fn polygamma_recurrence(m in 0u32..5, x in 0.05f64..30.0) {
        // ψ^{(m)}(x+1) − ψ^{(m)}(x) = (−1)^m m!/x^{m+1}
        let p = Precision::new(40);
        let b = p.bits();
        let xf = Float::with_val(b, x);
        let lhs = polygamma_real(m, &Float::with_val(b, &xf + 1u32), p).unwrap() - polygamma_real(m, &xf, p).unwrap();
        let fact = Float::with_val(b, Integer::from(Integer::factorial(m)));
        let mut rhs = fact / Float::with_val(b, (&xf).pow(m + 1));
        if m % 2 == 1 {
            rhs = -rhs;
        }
        let err = Float::with_val(b, &lhs - &rhs).abs().to_f64();
        prop_assert!(err <= 1e-33 * rhs.to_f64().abs().max(1.0), "m = {}, x = {}: {:e}", m, x, err);
    }

    #[test]
    fn hermite_matches_rational_data(
        xs in proptest::collection::btree_set(-20i64..20, 1..5),
        c in 1usize..4,
        seed in proptest::collection::vec(-50i64..50, 20),
    ) {
        let r = |v: i64, d: i64| Rational::from((v, d));
        let nodes: Vec<HermiteNode<Rational>> = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| HermiteNode::new(r(x, 3), (0..c).map(|j| r(seed[(i * 4 + j) % 20], 1 + j as i64)).collect()))
            .collect();
        let poly = hermite_interpolate(&nodes).unwrap();
        for nd in &nodes {
            prop_assert_eq!(poly.derivatives_at(&nd.x, c), nd.derivs.clone());
        }
    }
}
