
// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod error;
pub mod numeric;
pub mod reductions;
pub mod series;
pub mod special;
pub mod verifier;
