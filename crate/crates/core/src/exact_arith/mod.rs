//! Exact arbitrary-precision arithmetic primitives: rationals, Gaussian
//! rationals, dense rational matrices with Kronecker products and rank, and
//! exact linear-program feasibility.

mod lp;
mod matrix;
mod rat;

pub use lp::{lp_feasible, LpError};
pub use matrix::{dot, kron_vec, primitive, to_primitive_ints, RatMatrix};
pub use rat::{parse_rat, rat, rat_to_string, rint, GaussRat, Rat, RatParseError};
