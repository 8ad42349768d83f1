//! Exact computational toolkit for complete simplicial fans carrying finite
//! matrix group actions.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate.  The main pipeline:
//!
//! * [`exact`]: rationals, polynomials, matrices, fraction-free elimination,
//!   and a small exact simplex solver.
//! * [`fan`]: rational polyhedral fans, validation, completeness, f-vectors,
//!   and builders (central, normal, cross-polytope, Coxeter).
//! * [`symmetry`]: finite rational matrix groups, root systems, and group
//!   actions on fans.
//! * [`srring`]: the graded ring attached to a simplicial fan, its Artinian
//!   reduction by a linear system of parameters, and exact graded traces.
//!   This is the brute-force oracle the closed formulas are checked against.
//! * [`charformula`]: graded characters of a fan action computed by several
//!   independent routes that must agree.
//! * [`hybrid`]: the hybrid fan of a reflection group action, built two ways,
//!   plus quotient polytopes.
//! * [`io`]: JSON file formats for fans, polytopes, groups, class functions.
//! * [`corpus`]: built-in worked examples with frozen expected values.

pub mod charformula;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod fan;
pub mod hybrid;
pub mod io;
pub mod srring;
pub mod symmetry;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
