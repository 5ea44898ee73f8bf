//! Exact scalars: rationals and elements of quadratic fields `Q(sqrt m)`.
//!
//! Nothing in the crate touches floating point. Every scalar type used by the
//! polynomial code implements [`Field`].

mod quad;
mod rational;

pub use quad::{quad_arith, QuadExtElem};
pub use rational::{rat_arith, ArithOp, Rational};

use std::fmt::{Debug, Display};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(String, String),
    #[error("radicand {0} is a perfect square")]
    SquareRadicand(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A commutative field with exact arithmetic.
///
/// `zero()` and `one()` must be usable as neutral elements against any other
/// element of the type, which is why quadratic elements carry an optional radicand.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn add(&self, rhs: &Self) -> Result<Self, ExactError>;
    fn sub(&self, rhs: &Self) -> Result<Self, ExactError>;
    fn mul(&self, rhs: &Self) -> Result<Self, ExactError>;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ExactError>;

    fn div(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.mul(&rhs.inv()?)
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }

    fn pow(&self, e: i64) -> Result<Self, ExactError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Short tag naming the field, e.g. `Q` or `Q(sqrt(2))`.
    fn field_tag(&self) -> String;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * rhs)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ExactError> {
        self.recip()
    }
    fn field_tag(&self) -> String {
        "Q".into()
    }
}
