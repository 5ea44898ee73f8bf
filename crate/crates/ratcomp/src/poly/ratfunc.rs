use std::fmt;

use crate::exactnum::Field;

use super::{PolyError, UnivariatePoly};

/// Quotient of two polynomials in lowest terms.
///
/// Invariants: the denominator is monic and nonzero, and `gcd(numer, denom) = 1`.
/// The zero function is `0 / 1`.
#[derive(Clone, PartialEq)]
pub struct RationalFunction<F: Field> {
    numer: UnivariatePoly<F>,
    denom: UnivariatePoly<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(numer: UnivariatePoly<F>, denom: UnivariatePoly<F>) -> Result<Self, PolyError> {
        if denom.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if numer.is_zero() {
            return Ok(Self::from_poly(UnivariatePoly::zero()));
        }
        let g = numer.gcd(&denom)?;
        let n = numer.div_exact(&g)?;
        let d = denom.div_exact(&g)?;
        let inv = d.lc().inv()?;
        Ok(RationalFunction { numer: n.scale(&inv)?, denom: d.scale(&inv)? })
    }

    pub fn from_poly(p: UnivariatePoly<F>) -> Self {
        RationalFunction { numer: p, denom: UnivariatePoly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UnivariatePoly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(UnivariatePoly::x())
    }

    pub fn numer(&self) -> &UnivariatePoly<F> {
        &self.numer
    }

    pub fn denom(&self) -> &UnivariatePoly<F> {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.is_constant()
    }

    /// `max(deg numer, deg denom)`, the degree of the induced map on the projective line.
    pub fn degree(&self) -> usize {
        self.numer.deg0().max(self.denom.deg0())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, PolyError> {
        let n = self.numer.mul(&rhs.denom)?.add(&rhs.numer.mul(&self.denom)?)?;
        Self::new(n, self.denom.mul(&rhs.denom)?)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { numer: self.numer.neg(), denom: self.denom.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        Self::new(self.numer.mul(&rhs.numer)?, self.denom.mul(&rhs.denom)?)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Self::new(self.numer.mul(&rhs.denom)?, self.denom.mul(&rhs.numer)?)
    }

    pub fn scale(&self, c: &F) -> Result<Self, PolyError> {
        Self::new(self.numer.scale(c)?, self.denom.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self, PolyError> {
        if e < 0 {
            if self.is_zero() {
                return Err(PolyError::DivisionByZero);
            }
            let inv = Self::new(self.denom.clone(), self.numer.clone())?;
            return inv.pow(-e);
        }
        // numer and denom stay coprime under powers, so no gcd is needed
        let n = self.numer.pow(e as u32)?;
        let d = self.denom.pow(e as u32)?;
        Ok(RationalFunction { numer: n, denom: d })
    }

    /// Value at a point; errors at a pole.
    pub fn eval(&self, x: &F) -> Result<F, PolyError> {
        let d = self.denom.eval(x)?;
        if d.is_zero() {
            return Err(PolyError::Pole);
        }
        Ok(self.numer.eval(x)?.div(&d)?)
    }

    /// Number of distinct finite zeros plus distinct finite poles,
    /// `deg sf(numer) + deg sf(denom)`.
    pub fn count_zeros_poles(&self) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let zn = self.numer.squarefree_part()?.deg0();
        let zd = self.denom.squarefree_part()?.deg0();
        Ok(zn + zd)
    }
}

/// `g(h)` reduced to lowest terms.
///
/// With `g = a/b`, `h = p/q` and `D = deg g`, both `a` and `b` are evaluated
/// homogeneously as `sum c_i p^i q^(D-i)` by a Horner ladder, so a single gcd at
/// the end suffices.
pub fn compose<F: Field>(g: &RationalFunction<F>, h: &RationalFunction<F>) -> Result<RationalFunction<F>, PolyError> {
    if h.is_constant() {
        return Err(PolyError::ConstantInner);
    }
    let d = g.degree();
    let p = &h.numer;
    let q = &h.denom;
    let mut qpow = vec![UnivariatePoly::one()];
    for i in 1..=d {
        let next = qpow[i - 1].mul(q)?;
        qpow.push(next);
    }
    let homog = |c: &UnivariatePoly<F>| -> Result<UnivariatePoly<F>, PolyError> {
        // acc_k = acc_{k-1} * p + c_{D-k} q^k
        let mut acc = UnivariatePoly::constant(c.coeff(d));
        for (k, qk) in qpow.iter().enumerate().skip(1) {
            acc = acc.mul(p)?.add(&qk.scale(&c.coeff(d - k))?)?;
        }
        Ok(acc)
    };
    RationalFunction::new(homog(&g.numer)?, homog(&g.denom)?)
}

/// Exact equality by cross-multiplication; does not rely on normal forms.
pub fn equal<F: Field>(a: &RationalFunction<F>, b: &RationalFunction<F>) -> Result<bool, PolyError> {
    let l = a.numer.mul(&b.denom)?;
    let r = b.numer.mul(&a.denom)?;
    Ok(l == r)
}

/// Free-function form of [`RationalFunction::count_zeros_poles`].
pub fn count_zeros_poles<F: Field>(f: &RationalFunction<F>) -> Result<usize, PolyError> {
    f.count_zeros_poles()
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.degree() == Some(0) && self.denom.lc().is_one() {
            return write!(f, "{}", self.numer);
        }
        let wrap = |p: &UnivariatePoly<F>| {
            let s = p.to_string();
            if s.contains(' ') || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.numer), wrap(&self.denom))
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
