//! The six applications: registered product families with their exact
//! prefixes, assembled expansions, two-route constants and error profiles.

pub mod constants;
mod studies;

pub use studies::{
    distinct_cycles, distinct_degree_factorization, dissimilar_forests, first_order_residuals, float_coefficients, mth_root_permutations,
    q_alpha_products, same_cycle_type, square_permutations, CaseConfig,
};

use serde::{Deserialize, Serialize};

use crate::logpower::AsymTermRecord;

/// A constant computed along two independent routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantRecord {
    pub name: String,
    pub value: String,
    pub route_a: String,
    pub value_a: String,
    pub route_b: String,
    pub value_b: String,
    /// |value_a − value_b|
    pub delta: String,
}

/// An exact coefficient prefix, scaled as the label says (e.g. "n!·f_n").
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prefix {
    pub label: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub n: u64,
    pub exact: String,
    pub approx: String,
    pub scaled: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseStudyReport {
    pub case: String,
    pub prefixes: Vec<Prefix>,
    /// Empty when the family is not handled by the unit-circle pipeline.
    pub expansion: Vec<AsymTermRecord>,
    pub constants: Vec<ConstantRecord>,
    /// How `scaled` is formed from exact and approx.
    pub profile_scaling: String,
    pub profile: Vec<ProfileRecord>,
}
