//! Exact search for decompositions `f = g(h)` of rational functions with a
//! prescribed number of zeros and poles.
//!
//! Layers, bottom up:
//! - [`exactnum`]: rationals and quadratic-field elements
//! - [`poly`]: univariate polynomials and rational functions
//! - [`mpoly`]: sparse multivariate polynomials and a Buchberger engine
//! - [`casegen`]: case enumeration and equation systems
//! - [`apclassify`]: specialization to roots in arithmetic progression
//! - [`verify`]: witnesses, demos and a brute-force oracle

pub mod exactnum;
mod expr;
pub mod poly;
pub mod mpoly;
pub mod casegen;
pub mod apclassify;
pub mod verify;
