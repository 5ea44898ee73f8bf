//! Exact end-to-end checks: witnesses `f = g(h)`, family instantiation, the
//! worked examples, and a brute-force decomposition oracle.

mod demo;
mod family;
mod oracle;

pub use demo::{family_a, family_b, family_c_f, family_c_printed, run_demo, DemoCheck, DemoReport, DEMOS};
pub use family::{family_f, random_rational, sample_exponents, sample_params, verify_families, verify_family};
pub use oracle::brute_force_decompose;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{ExactError, Field};
use crate::mpoly::{MpolyError, VarId};
use crate::poly::{compose, equal, PolyError, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("parameter {0} missing")]
    MissingParameter(VarId),
    #[error("d must be nonzero")]
    ZeroD,
    #[error("parameter values violate {0}")]
    ConstraintViolated(String),
    #[error("bad exponents: {0}")]
    BadExponents(String),
    #[error("instantiation makes {0} coincide")]
    Coincide(String),
    #[error("g(h) != f for {0}")]
    Mismatch(String),
    #[error("f has {got} zeros and poles, expected {expected}")]
    Count { expected: usize, got: usize },
    #[error("oracle limit: {0}")]
    TooLarge(String),
    #[error("unknown demo {0:?}")]
    UnknownDemo(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Mpoly(#[from] MpolyError),
}

/// `f = g(h)`, checked exactly on construction. The fields are private, so a
/// witness that exists has been verified.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionWitness<F: Field> {
    f: RationalFunction<F>,
    g: RationalFunction<F>,
    h: RationalFunction<F>,
    provenance: String,
}

impl<F: Field> DecompositionWitness<F> {
    pub fn new(
        f: RationalFunction<F>,
        g: RationalFunction<F>,
        h: RationalFunction<F>,
        provenance: impl Into<String>,
    ) -> Result<Self, VerifyError> {
        let provenance = provenance.into();
        if !equal(&compose(&g, &h)?, &f)? {
            return Err(VerifyError::Mismatch(provenance));
        }
        Ok(DecompositionWitness { f, g, h, provenance })
    }

    pub fn f(&self) -> &RationalFunction<F> {
        &self.f
    }

    pub fn g(&self) -> &RationalFunction<F> {
        &self.g
    }

    pub fn h(&self) -> &RationalFunction<F> {
        &self.h
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn is_nontrivial(&self) -> bool {
        self.g.degree() >= 2 && self.h.degree() >= 2
    }

    /// The smallest field tag among the coefficients, `Q` if all are rational.
    pub fn field(&self) -> String {
        [&self.f, &self.g, &self.h]
            .iter()
            .flat_map(|r| r.numer().coeffs().iter().chain(r.denom().coeffs()))
            .map(|c| c.field_tag())
            .find(|t| t != "Q")
            .unwrap_or_else(|| "Q".into())
    }

    pub fn record(&self) -> Result<WitnessRecord, VerifyError> {
        Ok(WitnessRecord {
            provenance: self.provenance.clone(),
            field: self.field(),
            f: self.f.to_string(),
            g: self.g.to_string(),
            h: self.h.to_string(),
            deg_g: self.g.degree(),
            deg_h: self.h.degree(),
            zeros_poles: self.f.count_zeros_poles()?,
        })
    }
}

/// Serializable view of a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub provenance: String,
    pub field: String,
    pub f: String,
    pub g: String,
    pub h: String,
    pub deg_g: usize,
    pub deg_h: usize,
    pub zeros_poles: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::poly::parse_ratfunc;

    fn rf(s: &str) -> RationalFunction<Rational> {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn wrong_witness_is_rejected() {
        let r = DecompositionWitness::new(rf("x^4"), rf("x^2 + 1"), rf("x^2"), "bad");
        assert!(matches!(r, Err(VerifyError::Mismatch(_))));
        let w = DecompositionWitness::new(rf("x^4 + 1"), rf("x^2 + 1"), rf("x^2"), "ok").unwrap();
        assert!(w.is_nontrivial());
        assert_eq!(w.field(), "Q");
    }
}
