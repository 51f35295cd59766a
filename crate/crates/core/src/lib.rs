//! Asymptotic expansions of Taylor coefficients of infinite-product
//! generating functions, with exact enumeration for verification.

pub mod cases;
pub mod error;
pub mod exact;
pub mod logpower;
pub mod numerics;
pub mod par;
pub mod pipeline;
pub mod singular;

pub use error::{Error, Result};
pub use par::Exec;
