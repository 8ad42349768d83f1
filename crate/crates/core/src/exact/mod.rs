//! Exact rational arithmetic: scalars, polynomials, matrices, and a small
//! simplex solver.  Everything downstream is built on this module; nothing
//! here (or anywhere else in the crate) touches floating point.

mod lp;
mod mat;
mod poly;
mod rat;

pub use lp::{feasible_nonneg, maximize, LpOutcome};
pub use mat::{
    det, det_poly, dot, kernel, primitive, primitive_signed, quotient_matrix, rank,
    restrict_and_quotient, rref, solve, vec_add, vec_is_zero, vec_neg, vec_scale, vec_sub,
    QMatrix, QVector, Rref,
};
pub use poly::{poly_exact_div, poly_is_palindromic, QPoly};
pub use rat::{parse_rat, rat, rat_from, rat_to_string, Rat};
