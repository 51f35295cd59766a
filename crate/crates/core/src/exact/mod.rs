//! Exact truncated power series over big rationals, product families, and
//! the integer arithmetic they need. This is the brute-force oracle against
//! which every asymptotic claim is checked.

pub mod arith;
mod generators;
mod series;

pub use generators::{
    all_forests, bessel_i_series, distinct_cycles, distinct_degree, distinct_degree_hat, dissimilar_forests,
    factorial_scaled, mth_root, plane_tree_series, product_expand, q_alpha_float, q_alpha_integer,
    same_cycle_type, square_permutations, FactorGenerator,
};
pub use series::{
    series_exp, series_log, series_mul, substitute_power, Coeff, ExactSeries, FloatSeries, TruncatedSeries,
};
