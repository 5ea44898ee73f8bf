use std::fmt;

use crate::exactnum::Field;

use super::{PolyError, RationalFunction, UnivariatePoly};

/// Monic `prod (x - root)^exp` with distinct roots and nonzero exponents.
#[derive(Clone, PartialEq, Debug)]
pub struct FactoredForm<F: Field> {
    factors: Vec<(F, i64)>,
}

impl<F: Field> FactoredForm<F> {
    pub fn new(factors: Vec<(F, i64)>) -> Result<Self, PolyError> {
        for (i, (r, e)) in factors.iter().enumerate() {
            if *e == 0 {
                return Err(PolyError::ZeroExponent);
            }
            if factors[..i].iter().any(|(s, _)| s == r) {
                return Err(PolyError::DuplicateRoot(r.to_string()));
            }
        }
        Ok(FactoredForm { factors })
    }

    pub fn factors(&self) -> &[(F, i64)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Positive exponents go to the numerator, negative ones to the denominator.
    pub fn expand(&self) -> Result<RationalFunction<F>, PolyError> {
        let mut num = UnivariatePoly::one();
        let mut den = UnivariatePoly::one();
        for (r, e) in &self.factors {
            let lin = UnivariatePoly::linear_root(r).pow(e.unsigned_abs() as u32)?;
            if *e > 0 {
                num = num.mul(&lin)?;
            } else {
                den = den.mul(&lin)?;
            }
        }
        RationalFunction::new(num, den)
    }
}

/// Free-function form of [`FactoredForm::expand`].
pub fn expand<F: Field>(f: &FactoredForm<F>) -> Result<RationalFunction<F>, PolyError> {
    f.expand()
}

impl<F: Field> fmt::Display for FactoredForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (r, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            let s = r.to_string();
            if r.is_zero() {
                write!(f, "x")?;
            } else if s.contains(' ') {
                write!(f, "(x - ({s}))")?;
            } else if let Some(pos) = s.strip_prefix('-') {
                write!(f, "(x + {pos})")?;
            } else {
                write!(f, "(x - {s})")?;
            }
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
