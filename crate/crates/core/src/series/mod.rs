//! Truncated Laurent series in one variable and nested two-variable series.

mod bi;
mod laurent;
pub mod text;

pub use bi::{bi_add, bi_div, bi_first_difference, bi_invert, bi_mul, bi_neg, bi_pow, bi_sub, BiSeries};
pub use laurent::{
    add, compose, derivative, div, invert, mul, neg, pow_int, pow_rat, sub, theta, LaurentSeries, EXACT,
};
