use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArithOp, ExactError, Field, Rational};

/// `a + b*sqrt(m)` with rational `a`, `b` and a non-square rational radicand `m`.
///
/// The radicand is `None` for elements that were built without reference to a
/// field (the generic `zero()`/`one()` and plain rationals); such elements adopt
/// the radicand of whatever they are combined with. Two elements with different
/// radicands can only be combined when one of them has `b = 0`.
#[derive(Clone)]
pub struct QuadExtElem {
    a: Rational,
    b: Rational,
    m: Option<Rational>,
}

impl QuadExtElem {
    pub fn new(a: Rational, b: Rational, m: Rational) -> Result<Self, ExactError> {
        if m.is_square() {
            return Err(ExactError::SquareRadicand(m.to_string()));
        }
        Ok(QuadExtElem { a, b, m: Some(m) })
    }

    /// `sqrt(m)` itself.
    pub fn sqrt(m: Rational) -> Result<Self, ExactError> {
        Self::new(Rational::zero(), Rational::one(), m)
    }

    /// Embed a rational into `Q(sqrt m)`.
    pub fn embed(q: Rational, m: Rational) -> Result<Self, ExactError> {
        Self::new(q, Rational::zero(), m)
    }

    pub fn rational(q: Rational) -> Self {
        QuadExtElem { a: q, b: Rational::zero(), m: None }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn m(&self) -> Option<&Rational> {
        self.m.as_ref()
    }

    pub fn conj(&self) -> Self {
        QuadExtElem { a: self.a.clone(), b: -&self.b, m: self.m.clone() }
    }

    /// `a^2 - m b^2`, the field norm down to `Q`.
    pub fn norm(&self) -> Rational {
        match &self.m {
            None => &self.a * &self.a,
            Some(m) => &(&self.a * &self.a) - &(m * &(&self.b * &self.b)),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn common_m(&self, rhs: &Self) -> Result<Option<Rational>, ExactError> {
        match (&self.m, &rhs.m) {
            (Some(x), Some(y)) if x != y => {
                if self.b.is_zero() {
                    Ok(Some(y.clone()))
                } else if rhs.b.is_zero() {
                    Ok(Some(x.clone()))
                } else {
                    Err(ExactError::FieldMismatch(x.to_string(), y.to_string()))
                }
            }
            (Some(x), _) => Ok(Some(x.clone())),
            (None, y) => Ok(y.clone()),
        }
    }
}

/// Exact arithmetic in `Q(sqrt m)`; mismatched radicands are an error.
pub fn quad_arith(x: &QuadExtElem, y: &QuadExtElem, op: ArithOp) -> Result<QuadExtElem, ExactError> {
    let m = x.common_m(y)?;
    let mm = m.clone().unwrap_or_else(Rational::zero);
    let (a, b) = match op {
        ArithOp::Add => (&x.a + &y.a, &x.b + &y.b),
        ArithOp::Sub => (&x.a - &y.a, &x.b - &y.b),
        ArithOp::Mul => (
            &(&x.a * &y.a) + &(&mm * &(&x.b * &y.b)),
            &(&x.a * &y.b) + &(&x.b * &y.a),
        ),
        ArithOp::Div => {
            let n = QuadExtElem { a: y.a.clone(), b: y.b.clone(), m: m.clone() }.norm();
            if n.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            // x * conj(y) / N(y)
            let a = &(&x.a * &y.a) - &(&mm * &(&x.b * &y.b));
            let b = &(&x.b * &y.a) - &(&x.a * &y.b);
            (a.checked_div(&n)?, b.checked_div(&n)?)
        }
    };
    Ok(QuadExtElem { a, b, m })
}

impl PartialEq for QuadExtElem {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (self.b.is_zero() || self.m.is_none() || other.m.is_none() || self.m == other.m)
    }
}

impl Field for QuadExtElem {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn one() -> Self {
        Self::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn add(&self, rhs: &Self) -> Result<Self, ExactError> {
        quad_arith(self, rhs, ArithOp::Add)
    }
    fn sub(&self, rhs: &Self) -> Result<Self, ExactError> {
        quad_arith(self, rhs, ArithOp::Sub)
    }
    fn mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        quad_arith(self, rhs, ArithOp::Mul)
    }
    fn neg(&self) -> Self {
        QuadExtElem { a: -&self.a, b: -&self.b, m: self.m.clone() }
    }
    fn inv(&self) -> Result<Self, ExactError> {
        quad_arith(&Self::one(), self, ArithOp::Div)
    }
    fn field_tag(&self) -> String {
        match &self.m {
            Some(m) => format!("Q(sqrt({m}))"),
            None => "Q".into(),
        }
    }
}

impl fmt::Display for QuadExtElem {
    /// `a + b*sqrt(m)`; elements without a radicand print as plain rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.m {
            None => write!(f, "{}", self.a),
            Some(m) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}*sqrt({})", self.a, sign, self.b.abs(), m)
            }
        }
    }
}

impl fmt::Debug for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExtElem {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, ExactError> {
        let t = s.trim().replace('\u{2212}', "-");
        let Some(pos) = t.find("sqrt(") else {
            return Ok(Self::rational(t.parse()?));
        };
        let bad = || ExactError::Parse(format!("not a quadratic element: {s:?}"));
        let close = t[pos..].find(')').ok_or_else(bad)? + pos;
        let m: Rational = t[pos + 5..close].parse()?;
        if !t[close + 1..].trim().is_empty() {
            return Err(bad());
        }
        let head = t[..pos].trim_end();
        let head = head.strip_suffix('*').ok_or_else(bad)?.trim_end();
        // head is "a + b" or "a - b"; the separating sign is the last one
        // preceded by whitespace.
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && head[..i].ends_with(' '))
            .ok_or_else(bad)?;
        let a: Rational = head[..split.0].parse()?;
        let mut b: Rational = head[split.0 + 1..].parse()?;
        if split.1 == '-' {
            b = -b;
        }
        Self::new(a, b, m)
    }
}

impl Serialize for QuadExtElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadExtElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let r = QuadExtElem::sqrt(q("2")).unwrap();
        let sq = quad_arith(&r, &r, ArithOp::Mul).unwrap();
        assert_eq!(sq.as_rational(), Some(&q("2")));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let x: QuadExtElem = "1 + 1*sqrt(2)".parse().unwrap();
        let inv = x.inv().unwrap();
        assert_eq!(inv.to_string(), "-1 + 1*sqrt(2)");
    }

    #[test]
    fn embed_display() {
        let e = QuadExtElem::embed(q("3/4"), q("2")).unwrap();
        assert_eq!(e.to_string(), "3/4 + 0*sqrt(2)");
        assert_eq!(e, QuadExtElem::rational(q("3/4")));
    }

    #[test]
    fn mismatch_is_error() {
        let x = QuadExtElem::sqrt(q("2")).unwrap();
        let y = QuadExtElem::sqrt(q("3")).unwrap();
        assert!(matches!(
            quad_arith(&x, &y, ArithOp::Add),
            Err(ExactError::FieldMismatch(_, _))
        ));
        // a rational embedded with another radicand still mixes fine
        let z = QuadExtElem::embed(q("5"), q("3")).unwrap();
        assert!(quad_arith(&x, &z, ArithOp::Add).is_ok());
    }

    #[test]
    fn square_radicand_rejected() {
        assert!(QuadExtElem::new(q("1"), q("1"), q("9/4")).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["-3 - 2*sqrt(2)", "1/2 + 5/3*sqrt(-3)", "0 + 1*sqrt(7)"] {
            let x: QuadExtElem = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        let y: QuadExtElem = "-1/3 - 1/2*sqrt(-2)".parse().unwrap();
        assert_eq!(y.a(), &q("-1/3"));
        assert_eq!(y.b(), &q("-1/2"));
    }
}
