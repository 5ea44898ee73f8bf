use std::fmt;

use crate::exactnum::Field;

use super::PolyError;

/// Dense univariate polynomial, coefficients from degree 0 upward.
///
/// Invariant: no trailing zero coefficients, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq)]
pub struct UnivariatePoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UnivariatePoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// `x - r`.
    pub fn linear_root(r: &F) -> Self {
        Self::new(vec![r.neg(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0; used where only a size bound matters.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, PolyError> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&rhs.coeff(k))?);
        }
        Ok(Self::new(out))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        UnivariatePoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, c: &F) -> Result<Self, PolyError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(c)?);
        }
        Ok(Self::new(out))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Self::new(out))
    }

    pub fn pow(&self, e: u32) -> Result<Self, PolyError> {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Euclidean division: `self = q * rhs + r` with `deg r < deg rhs`.
    pub fn divrem(&self, rhs: &Self) -> Result<(Self, Self), PolyError> {
        let Some(dd) = rhs.degree() else {
            return Err(PolyError::DivisionByZero);
        };
        let inv = rhs.lc().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv)?;
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(b)?)?;
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.divrem(rhs)?;
        if !r.is_zero() {
            return Err(PolyError::NotExact);
        }
        Ok(q)
    }

    pub fn monic(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        self.scale(&self.lc().inv()?)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Result<Self, PolyError> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r.monic()?;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Result<Self, PolyError> {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&F::from_i64(k as i64))?);
        }
        Ok(Self::new(out))
    }

    /// `p / gcd(p, p')`, monic. Its degree is the number of distinct roots.
    pub fn squarefree_part(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative()?)?;
        self.monic()?.div_exact(&g)
    }

    pub fn eval(&self, x: &F) -> Result<F, PolyError> {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    /// `self(h)` for a polynomial `h`.
    pub fn compose(&self, h: &Self) -> Result<Self, PolyError> {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(h)?.add(&Self::constant(c.clone()))?;
        }
        Ok(acc)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UnivariatePoly<G> {
        UnivariatePoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field> fmt::Display for UnivariatePoly<F> {
    /// Descending `c*x^k` terms. Coefficients that are not plain rationals are
    /// parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "x")
    }
}

impl<F: Field> fmt::Debug for UnivariatePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn write_poly<F: Field>(f: &mut fmt::Formatter<'_>, coeffs: &[F], var: &str) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let compound = s.contains(' ');
        let (neg, mag) = match s.strip_prefix('-') {
            Some(rest) if !compound => (true, rest.to_string()),
            _ => (false, s.clone()),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let mag = if compound { format!("({mag})") } else { mag };
        match k {
            0 => write!(f, "{mag}")?,
            _ => {
                if mag != "1" {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{var}")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
    }
    Ok(())
}
