//! The hybrid method: an exp-log factorization f = P·exp(Σ c·Li_ν(z^ℓ) + S)
//! with an elementary prefactor P, radial expansions at roots of unity,
//! and the transfer of those expansions to coefficient asymptotics.

mod assemble;
mod decompose;
mod radial;

pub use assemble::{assemble, assemble_with, error_profile, ProfileRow, Scaling};
pub use decompose::{
    distinct_degree_spec, exp_log_decompose, mth_root_spec, q_alpha_spec, validate_decomposition, validate_float,
};
pub use radial::{product_eval, radial_expansion, radial_residuals, spec_eval, RadialProbe, Reference};

use rug::Rational;

use crate::logpower::Exponent;

/// One elementary factor of the prefactor P.
#[derive(Clone, Debug, PartialEq)]
pub enum PrefactorFactor {
    /// (1 − z^j)^e
    Binomial { j: u64, e: Rational },
    /// exp(c·z^j)
    ExpMonomial { j: u64, c: Rational },
}

/// c·Li_ν(z^ℓ), or c·(Li_ν(z^ℓ) − z^ℓ) when `drop_leading` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct PolylogTerm {
    pub coeff: Rational,
    pub nu: Exponent,
    pub power: u64,
    pub drop_leading: bool,
}

/// A generating function in exp-log form,
///
///   f(z) = P(z)·exp(Σ_i c_i·Li_{ν_i}(z^{ℓ_i}) + S(z)),
///
/// where f(z) is the product evaluated at z·`z_scale` and S (the analytic
/// extra) converges beyond the unit circle. The polylog list is truncated
/// where its tail is negligible at the precision the spec was built for.
#[derive(Clone, Debug, PartialEq)]
pub struct GfSpec {
    pub name: String,
    pub prefactor: Vec<PrefactorFactor>,
    pub polylogs: Vec<PolylogTerm>,
    /// Taylor coefficients of S, s_0 = 0.
    pub analytic_extra: Option<Vec<Rational>>,
    pub z_scale: Rational,
    /// a in f = O((1 − |z|)^a).
    pub global_order: Exponent,
    /// Darboux smoothness s of the factor Q.
    pub smoothness: u32,
}

impl GfSpec {
    /// u₀ = ⌊(s + ⌊a⌋)/2⌋, the order reached by Darboux's method alone.
    pub fn u0(&self) -> i64 {
        (self.smoothness as i64 + self.global_order.floor()).div_euclid(2)
    }

    /// Exponent of the prefactor at ζ: Σ e over factors with ζ^j = 1.
    pub fn prefactor_order(&self, zeta: crate::numerics::RootOfUnity) -> Exponent {
        self.prefactor
            .iter()
            .map(|f| match f {
                PrefactorFactor::Binomial { j, e } if zeta.pow(*j).is_one() => exponent_of(e),
                _ => Exponent::zero(),
            })
            .fold(Exponent::zero(), |a, b| a + b)
    }
}

pub(crate) fn exponent_of(r: &Rational) -> Exponent {
    Exponent::new(
        r.numer().to_i64().expect("exponent numerator fits i64"),
        r.denom().to_i64().expect("exponent denominator fits i64"),
    )
}
