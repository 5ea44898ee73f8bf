//! Univariate polynomials and rational functions over an exact [`Field`].

mod factored;
mod ratfunc;
mod univariate;

pub use factored::{expand, FactoredForm};
pub use ratfunc::{compose, count_zeros_poles, equal, RationalFunction};
pub use univariate::UnivariatePoly;

use thiserror::Error;

use crate::exactnum::{ExactError, Field, Rational};
use crate::expr::{self, Expr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    NotExact,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("inner function of a composition must be nonconstant")]
    ConstantInner,
    #[error("evaluation at a pole")]
    Pole,
    #[error("zero exponent in factored form")]
    ZeroExponent,
    #[error("duplicate root {0} in factored form")]
    DuplicateRoot(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Parse a rational function in `x` with rational coefficients,
/// e.g. `(x^4 - 8*x)/(x^3 + 1)` or `x^2*(x - 1/4)^-6`.
pub fn parse_ratfunc(s: &str) -> Result<RationalFunction<Rational>, PolyError> {
    let e = expr::parse(s).map_err(PolyError::Parse)?;
    eval_expr(&e)
}

/// Parse a polynomial in `x`; quotients are allowed as long as the result is a polynomial.
pub fn parse_poly(s: &str) -> Result<UnivariatePoly<Rational>, PolyError> {
    let f = parse_ratfunc(s)?;
    if !f.is_polynomial() {
        return Err(PolyError::Parse(format!("not a polynomial: {s}")));
    }
    Ok(f.numer().clone())
}

/// Parse a product of `(x - a)^e` factors (also `x^e` and `(x + a)`).
pub fn parse_factored(s: &str) -> Result<FactoredForm<Rational>, PolyError> {
    let e = expr::parse(s).map_err(PolyError::Parse)?;
    let mut out = Vec::new();
    collect_factors(&e, 1, &mut out)?;
    FactoredForm::new(out)
}

fn collect_factors(e: &Expr, sign: i64, out: &mut Vec<(Rational, i64)>) -> Result<(), PolyError> {
    match e {
        Expr::Mul(a, b) => {
            collect_factors(a, sign, out)?;
            collect_factors(b, sign, out)
        }
        Expr::Div(a, b) => {
            collect_factors(a, sign, out)?;
            collect_factors(b, -sign, out)
        }
        Expr::Pow(b, k) => {
            let mut inner = Vec::new();
            collect_factors(b, 1, &mut inner)?;
            for (r, ex) in inner {
                out.push((r, ex * k * sign));
            }
            Ok(())
        }
        other => {
            let p = eval_expr(other)?;
            if !p.is_polynomial() || p.numer().degree() != Some(1) || !p.numer().lc().is_one() {
                return Err(PolyError::Parse("factor must be monic linear in x".into()));
            }
            out.push((p.numer().coeff(0).neg(), sign));
            Ok(())
        }
    }
}

fn eval_expr(e: &Expr) -> Result<RationalFunction<Rational>, PolyError> {
    Ok(match e {
        Expr::Num(q) => RationalFunction::constant(q.clone()),
        Expr::Var(v) if v == "x" => RationalFunction::x(),
        Expr::Var(v) => return Err(PolyError::Parse(format!("unknown variable {v}"))),
        Expr::Neg(a) => eval_expr(a)?.neg(),
        Expr::Add(a, b) => eval_expr(a)?.add(&eval_expr(b)?)?,
        Expr::Sub(a, b) => eval_expr(a)?.sub(&eval_expr(b)?)?,
        Expr::Mul(a, b) => eval_expr(a)?.mul(&eval_expr(b)?)?,
        Expr::Div(a, b) => eval_expr(a)?.div(&eval_expr(b)?)?,
        Expr::Pow(a, k) => eval_expr(a)?.pow(*k)?,
    })
}

/// Build `prod (x - r)` for the given roots.
pub fn from_roots<F: Field>(roots: &[F]) -> Result<UnivariatePoly<F>, PolyError> {
    let mut acc = UnivariatePoly::one();
    for r in roots {
        acc = acc.mul(&UnivariatePoly::linear_root(r))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let p = parse_poly("x^3 - 3*x^2").unwrap();
        assert_eq!(p.to_string(), "x^3 - 3*x^2");
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        let q = parse_poly("1/2*x - 7/3").unwrap();
        assert_eq!(q.to_string(), "1/2*x - 7/3");
    }

    #[test]
    fn parse_factored_form() {
        let f = parse_factored("x^2*(x + 1/4)^2/(x - 1/4)^6").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.factors()[2], ("1/4".parse().unwrap(), -6));
        assert!(parse_factored("(x^2 + 1)").is_err());
    }

    #[test]
    fn rejects_other_variables() {
        assert!(parse_ratfunc("y + 1").is_err());
    }
}
