//! Case enumeration and the polynomial systems attached to each case.
//!
//! A case fixes which roots of `f` are poles of `h`, how the remaining roots
//! split over the `beta_j`, and the local multiplicities `l`. Its system is
//! the set of x-coefficients of the identities between block representations
//! of `h`.

mod case;
mod enumerate;
mod system;

pub use case::CaseSpec;
pub use enumerate::{
    case_count_report, count_target, degree_bound, enum_cases, is_degenerate, system_vars, CountMismatch, CountReport,
    CountRow, EnumConfig, SinfMode,
};
pub use system::{
    build_system, build_system_nonzero, distinct_root_part, build_system_zero, pair_coefficient_slots, pair_coefficients, EquationSystem,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("invalid case: {0}")]
    Invalid(String),
    #[error("wrong regime: {0}")]
    WrongRegime(String),
}
