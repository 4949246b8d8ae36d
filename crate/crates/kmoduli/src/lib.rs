//! Exact-arithmetic toolkit for stability computations on (2,2)-divisors in P^1 x P^2.
//!
//! Everything here is exact: arbitrary-precision rationals, sparse multivariate
//! polynomials, Sturm-sequence root isolation, rational linear programming, and
//! the geometric layers built on top of them:
//!
//! - [`forms`]: bidegree-(2,2) forms, the SL2 x SL3 coordinate action, and the
//!   catalog of named surfaces,
//! - [`git`]: Hilbert-Mumford weights, degeneration limits, per-frame state-polytope
//!   semistability with witness extraction, and the G_m-GIT of pointed nodal quartics,
//! - [`singular`]: discriminant quartics and local ADE singularity analysis,
//! - [`kvol`]: intersection numbers, volume-transformation rules, piecewise-volume
//!   integration into S-invariants, and wall-root extraction,
//! - [`zariski`]: exact Zariski decomposition on surfaces with declared negative curves,
//! - [`toric`]: fans, reflexivity, Picard/class ranks, and smooth toric intersection
//!   numbers,
//! - [`dataset`] / [`check`]: the shipped regression dataset and the `paper-check`
//!   runner that replays it end to end.
//!
//! No floating point is used anywhere on a result path.

pub mod rat;
pub mod poly;
pub mod roots;
pub mod ratfn;
pub mod quad;
pub mod lp;
pub mod forms;
pub mod git;
pub mod singular;
pub mod kvol;
pub mod zariski;
pub mod toric;
pub mod dataset;
pub mod check;

pub use rat::Rat;
pub use poly::MPoly;
pub use ratfn::RatFn;
