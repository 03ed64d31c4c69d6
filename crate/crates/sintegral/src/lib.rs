//! Exact arithmetic toolkit for S-integer points on plane configurations.
//!
//! The crate is organised around a small number of exact-arithmetic layers:
//!
//! * [`sring`] — valuations, S-integrality, S-units and gcd arithmetic in the
//!   localisation of `Z` at a finite set of primes.
//! * [`polysys`] — sparse multivariate polynomials over `Q`, general-position
//!   validation for systems of curves, and the divisibility / ideal / unit
//!   predicates evaluated at rational points.
//! * [`geometry`] — exact verification of intersection-theoretic hypotheses
//!   for divisor configurations, with sign arithmetic in real quadratic fields.
//! * [`search`] — height-bounded exhaustive enumeration with witnessed,
//!   re-verifiable solution sets.
//! * [`families`] — constructive generators for infinite solution families:
//!   parametric unit-equation catalogs, Pell orbits on conics, and the
//!   five-line conic-pencil generator.
//! * [`closure`] — detection of low-degree curves covering most of a finite
//!   point set (empirical Zariski-closure reports).
//! * [`cli`] — batch front end: problem files in, solution/report files out.
//!
//! Everything is exact: integers are arbitrary precision, rationals are kept
//! reduced, and no floating point is used anywhere.

pub mod cli;
pub mod closure;
pub mod error;
pub mod families;
pub mod geometry;
pub mod io;
pub mod polysys;
pub mod search;
pub mod sring;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
