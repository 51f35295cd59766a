//! Log-power monomials at roots of unity and their coefficient transfers.

mod exponent;
mod expansion;
pub mod hermite;
mod jet;
mod transfer;

pub use exponent::Exponent;
pub use expansion::{
    evaluate_expansion, AsymTerm, AsymTermRecord, AsymptoticExpansion, LogPowerFunction, LogPowerMonomial,
};
pub use hermite::{hermite_interpolate, HermiteNode, Polynomial};
pub use jet::{gamma_ratio_polys, reciprocal_gamma_jet, RatPoly};
pub use transfer::{log_power_coefficients, transfer_asymptotic, transfer_exact, transfer_exact_prefix};
