use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::constants;
use super::{CaseStudyReport, ConstantRecord, Prefix, ProfileRecord};
use crate::error::{Error, Result};
use crate::exact::arith::irreducible_count;
use crate::exact::{self, factorial_scaled, plane_tree_series, product_expand, q_alpha_float, FactorGenerator};
use crate::logpower::Exponent;
use crate::numerics::{format_sci, Precision};
use crate::par::{map_range, Exec};
use crate::pipeline::{assemble_with, error_profile, exp_log_decompose, q_alpha_spec, GfSpec, Scaling};

/// Parameters shared by every case study.
#[derive(Clone, Copy, Debug)]
pub struct CaseConfig {
    /// Exact coefficients and the error profile run through n_max.
    pub n_max: usize,
    pub depth: Exponent,
    /// Roots of unity of order ≤ `roots` enter the expansion.
    pub roots: u64,
    pub precision: Precision,
    /// Entries printed in each exact prefix.
    pub prefix_len: usize,
    pub scaling: Scaling,
    pub exec: Exec,
}

impl Default for CaseConfig {
    fn default() -> Self {
        Self {
            n_max: 200,
            depth: Exponent::int(3),
            roots: 3,
            precision: Precision::new(30),
            prefix_len: 10,
            scaling: Scaling::NONE,
            exec: Exec::Parallel,
        }
    }
}

fn render(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        q.to_string()
    }
}

fn prefix(label: &str, values: &[Rational], len: usize) -> Prefix {
    Prefix {
        label: label.into(),
        values: values.iter().take(len).map(render).collect(),
    }
}

fn scaling_label(s: Scaling) -> String {
    let mut out = "(exact/approx − 1)".to_string();
    if s.power != 0 {
        out.push_str(&format!("·n^{}", s.power));
    }
    if s.log_power != 0 {
        out.push_str(&format!("/log^{} n", s.log_power));
    }
    out
}

/// Expansion and error profile of `spec` against exact coefficients.
fn pipeline_part(
    spec: &GfSpec,
    exact: &[Rational],
    cfg: &CaseConfig,
) -> Result<(Vec<crate::logpower::AsymTermRecord>, Vec<ProfileRecord>)> {
    let p = cfg.precision;
    let e = assemble_with(spec, cfg.roots, cfg.depth, p, cfg.exec)?;
    let digits = p.digits() as usize;
    let rows = error_profile(exact, &e, 1..=cfg.n_max as u64, cfg.scaling, p, cfg.exec)
        .into_iter()
        .map(|r| ProfileRecord {
            n: r.n,
            exact: format_sci(&r.exact, digits),
            approx: format_sci(&r.approx, digits),
            scaled: format_sci(&r.scaled, digits),
        })
        .collect();
    Ok((e.records(digits), rows))
}

fn report(
    case: String,
    prefixes: Vec<Prefix>,
    spec: &GfSpec,
    exact: &[Rational],
    constants: Vec<ConstantRecord>,
    cfg: &CaseConfig,
) -> Result<CaseStudyReport> {
    let (expansion, profile) = pipeline_part(spec, exact, cfg)?;
    Ok(CaseStudyReport {
        case,
        prefixes,
        expansion,
        constants,
        profile_scaling: scaling_label(cfg.scaling),
        profile,
    })
}

fn check_n_max(cfg: &CaseConfig) -> Result<()> {
    if cfg.n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be ≥ 1".into()));
    }
    Ok(())
}

/// Permutations with cycles of distinct lengths.
pub fn distinct_cycles(cfg: &CaseConfig) -> Result<CaseStudyReport> {
    check_n_max(cfg)?;
    let p = cfg.precision;
    let g = exact::distinct_cycles();
    let series = product_expand(&g, cfg.n_max);
    let spec = exp_log_decompose(&g, p)?;
    let mut consts = vec![constants::exp_neg_gamma(p)?];
    consts.extend(constants::c3(p)?);
    consts.extend(constants::f_omega(p)?);
    let pre = prefix("n!·f_n", &factorial_scaled(&series, 1), cfg.prefix_len);
    report(g.name().into(), vec![pre], &spec, series.coeffs(), consts, cfg)
}

/// Permutations having a square root.
pub fn square_permutations(cfg: &CaseConfig) -> Result<CaseStudyReport> {
    check_n_max(cfg)?;
    let p = cfg.precision;
    let g = exact::square_permutations();
    let series = product_expand(&g, cfg.n_max);
    let spec = exp_log_decompose(&g, p)?;
    let consts = vec![constants::e_g(p)?, constants::c2(p)?, constants::varpi(2, p)?];
    let pre = prefix("n!·Π_{2,n}", &factorial_scaled(&series, 1), cfg.prefix_len);
    report(g.name().into(), vec![pre], &spec, series.coeffs(), consts, cfg)
}

/// Permutations having an m-th root.
pub fn mth_root_permutations(m: u64, cfg: &CaseConfig) -> Result<CaseStudyReport> {
    check_n_max(cfg)?;
    let p = cfg.precision;
    let g = exact::mth_root(m)?;
    let series = product_expand(&g, cfg.n_max);
    let spec = exp_log_decompose(&g, p)?;
    let consts = vec![constants::b_m(m, p)?, constants::varpi(m, p)?];
    let pre = prefix(&format!("n!·Π_{{{m},n}}"), &factorial_scaled(&series, 1), cfg.prefix_len);
    report(g.name().into(), vec![pre], &spec, series.coeffs(), consts, cfg)
}

/// Pairs of permutations with the same cycle type.
pub fn same_cycle_type(cfg: &CaseConfig) -> Result<CaseStudyReport> {
    check_n_max(cfg)?;
    let p = cfg.precision;
    let g = exact::same_cycle_type();
    let series = product_expand(&g, cfg.n_max);
    let spec = exp_log_decompose(&g, p)?;
    let consts = vec![constants::w1(p)?];
    let pre = prefix("n!²·W_n", &factorial_scaled(&series, 2), cfg.prefix_len);
    report(g.name().into(), vec![pre], &spec, series.coeffs(), consts, cfg)
}

/// Polynomials over F_q whose irreducible factors have distinct degrees.
pub fn distinct_degree_factorization(q: u64, cfg: &CaseConfig) -> Result<CaseStudyReport> {
    check_n_max(cfg)?;
    let p = cfg.precision;
    let g = exact::distinct_degree(q)?;
    let series = product_expand(&g, cfg.n_max);
    let hat = product_expand(&exact::distinct_degree_hat(q)?, cfg.n_max);
    let spec = exp_log_decompose(&g, p)?;
    // the spec describes D(z/q), whose coefficients are D_n/qⁿ
    let scaled: Vec<Rational> = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| Rational::from(c / Integer::from(Integer::u_pow_u(q as u32, n as u32))))
        .collect();
    let irr: Vec<Rational> = (1..=cfg.prefix_len as u64).map(|n| Rational::from(irreducible_count(q, n))).collect();
    let prefixes = vec![
        prefix("I_n (n ≥ 1)", &irr, cfg.prefix_len),
        prefix("D_n", series.coeffs(), cfg.prefix_len),
        prefix("D̂_n", hat.coeffs(), cfg.prefix_len),
    ];
    let consts = vec![constants::delta(q, false, p)?, constants::delta(q, true, p)?];
    report(g.name().into(), prefixes, &spec, &scaled, consts, cfg)
}

/// Forests of plane trees whose trees have distinct sizes.
///
/// The singularity sits at 1/4 with a square-root prefactor, so the
/// expansion is first order only: E_n/F_n → κ.
pub fn dissimilar_forests(cfg: &CaseConfig) -> Result<CaseStudyReport> {
    check_n_max(cfg)?;
    let p = cfg.precision;
    let e = product_expand(&exact::dissimilar_forests(), cfg.n_max);
    let f = product_expand(&exact::all_forests(), cfg.n_max);
    let t = plane_tree_series(cfg.n_max);
    let kappa = constants::kappa(p)?;
    let consts = vec![constants::k(p)?, kappa.clone()];
    let b = p.bits();
    let k_val = Float::parse(&kappa.value_a)
        .map(|v| Float::with_val(b, v))
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let digits = p.digits() as usize;
    let profile = map_range(cfg.exec, 1..cfg.n_max + 1, |n| {
        let ratio = Float::with_val(b, Rational::from(&e.coeffs()[n] / &f.coeffs()[n]));
        let scaled = Float::with_val(b, &ratio / &k_val) - 1u32;
        ProfileRecord {
            n: n as u64,
            exact: format_sci(&ratio, digits),
            approx: format_sci(&k_val, digits),
            scaled: format_sci(&scaled, digits),
        }
    });
    Ok(CaseStudyReport {
        case: "forests".into(),
        prefixes: vec![
            prefix("T_n", t.coeffs(), cfg.prefix_len),
            prefix("F_n", f.coeffs(), cfg.prefix_len),
            prefix("E_n", e.coeffs(), cfg.prefix_len),
        ],
        expansion: Vec::new(),
        constants: consts,
        profile_scaling: "E_n/(κ·F_n) − 1".into(),
        profile,
    })
}

/// Q_α = ∏ (1 + k^α z^k) for α ≤ −1.
pub fn q_alpha_products(alpha: &Rational, cfg: &CaseConfig) -> Result<CaseStudyReport> {
    check_n_max(cfg)?;
    let p = cfg.precision;
    let spec = q_alpha_spec(alpha, p)?;
    let coeffs: Vec<Rational> = if *alpha.denom() == 1 {
        let a = alpha.numer().to_i64().ok_or_else(|| Error::InvalidArgument("α out of range".into()))?;
        product_expand(&exact::q_alpha_integer(a), cfg.n_max).coeffs().to_vec()
    } else {
        // float coefficients well above the working precision, then exact
        let bits = p.raised(30).bits();
        product_expand(&q_alpha_float(alpha, bits), cfg.n_max)
            .coeffs()
            .iter()
            .map(|c| c.to_rational().unwrap_or_default())
            .collect()
    };
    let mut consts = Vec::new();
    if *alpha == -1 {
        consts.push(constants::exp_neg_gamma(p)?);
    }
    if *alpha == -2 {
        consts.push(constants::q_minus_two(p)?);
    }
    let digits = p.digits() as usize;
    let pre = if *alpha.denom() == 1 {
        prefix("Q_{α,n}", &coeffs, cfg.prefix_len)
    } else {
        Prefix {
            label: "Q_{α,n}".into(),
            values: coeffs.iter().take(cfg.prefix_len).map(|c| format_sci(&Float::with_val(p.bits(), c), digits)).collect(),
        }
    };
    report(format!("q-alpha:{alpha}"), vec![pre], &spec, &coeffs, consts, cfg)
}

/// Coefficients of a product family as floats, fast enough for n in the
/// thousands when every coefficient is positive (no cancellation).
pub fn float_coefficients(g: &FactorGenerator, n_max: usize, bits: u32) -> Vec<Float> {
    product_expand(&g.to_float(bits), n_max).into_coeffs()
}

/// For each start n in `starts`, max over n ≤ k < n + period of
/// |k^power·c_k − limit|.
pub fn first_order_residuals(coeffs: &[Float], power: Exponent, limit: &Float, starts: &[u64], period: u64) -> Vec<f64> {
    let b = limit.prec();
    let pw = power.to_float(b);
    starts
        .iter()
        .map(|&n| {
            (n..n + period)
                .filter(|&k| (k as usize) < coeffs.len())
                .map(|k| {
                    let kp = Float::with_val(b, Float::with_val(b, k).pow(&pw));
                    let v = Float::with_val(b, &coeffs[k as usize] * kp) - limit;
                    v.abs().to_f64()
                })
                .fold(0.0, f64::max)
        })
        .collect()
}
