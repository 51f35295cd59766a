//! Polylogarithm singular expansions and the log-power series algebra
//! used to assemble radial expansions.

mod lps;
mod polylog;

pub use lps::LogPowerSeries;
pub use polylog::{
    expand_polylog_power, polylog_direct, polylog_eval, polylog_mu_series, polylog_singular, TauSeries,
};
