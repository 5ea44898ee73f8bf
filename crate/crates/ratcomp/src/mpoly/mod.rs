//! Sparse multivariate polynomials over `Q` and a small Groebner engine.

mod groebner;
mod linear;
mod order;
mod poly;
mod var;

pub use groebner::{
    buchberger, check_groebner, eliminate, is_unit_ideal, leading_monomial, reduce, reduce_with_quotients,
    same_ideal, saturate, spoly,
};
pub use linear::{linear_solve, LinearSolution};
pub use order::{InnerOrder, MonomialOrder, OrderKind};
pub use poly::{parse_system, JsonTerm, Monomial, MultiPoly};
pub use var::{VarId, VarKind};

use thiserror::Error;

use crate::exactnum::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MpolyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("variable {0} has no value")]
    Unassigned(VarId),
    #[error("generator is not affine in the unknowns: {0}")]
    NonLinear(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Render a list of generators in the text format, one per line.
pub fn system_to_text(gens: &[MultiPoly]) -> String {
    let mut s = String::new();
    for g in gens {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}
