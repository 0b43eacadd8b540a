// `!(x > 0.0)` is used on purpose so NaN takes the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod appendix;
pub mod criterion;
pub mod dirichlet;
pub mod error;
pub mod profiles;
pub mod ptrig;
pub mod quad;
pub mod selftest;
pub mod special;
pub mod thresholds;
pub mod torusmin;

pub use error::{Error, Result};
