//! Exact and adaptively refined real arithmetic.

pub mod interval;
pub mod parse;
pub mod quadratic;
pub mod real;
pub mod refinable;

pub use interval::{dist_to_int, RatInterval};
pub(crate) use interval::rat_le;
pub use parse::{fold_finite_cf, parse_number, parse_real, periodic_cf_to_quadratic, ParsedNumber};
pub use quadratic::{QuadOrRat, QuadraticReal};
pub use real::{golden, golden_quad, silver, silver_quad, RealValue};
pub use refinable::{DigitRule, RefinableReal, DEFAULT_MAX_BITS};
