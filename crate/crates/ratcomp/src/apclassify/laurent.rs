use std::collections::BTreeMap;

use crate::exactnum::{ExactError, Field, Rational};
use crate::mpoly::{Monomial, MultiPoly, VarId};
use crate::poly::{PolyError, UnivariatePoly};

/// Laurent polynomial in `d` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Laurent(BTreeMap<i64, Rational>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    pub fn mono(c: Rational, e: i64) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        Laurent(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, rhs: &Laurent) -> Laurent {
        let mut out = self.0.clone();
        for (e, c) in &rhs.0 {
            let v = out.get(e).cloned().unwrap_or_else(Rational::zero) + c.clone();
            if v.is_zero() {
                out.remove(e);
            } else {
                out.insert(*e, v);
            }
        }
        Laurent(out)
    }

    pub fn neg(&self) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (*e, -c.clone())).collect())
    }

    pub fn sub(&self, rhs: &Laurent) -> Laurent {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: &Rational) -> Laurent {
        if k.is_zero() {
            return Laurent::zero();
        }
        Laurent(self.0.iter().map(|(e, c)| (*e, c * k)).collect())
    }

    /// Multiply by `d^s`.
    pub fn shift(&self, s: i64) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (e + s, c.clone())).collect())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    /// The ordinary polynomial `d^{-min} * self`, which has a nonzero constant
    /// term and therefore the same nonzero roots.
    pub fn to_poly(&self) -> UnivariatePoly<Rational> {
        let Some(lo) = self.min_exp() else {
            return UnivariatePoly::zero();
        };
        let hi = *self.0.keys().last().unwrap();
        let mut cs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.0 {
            cs[(e - lo) as usize] = c.clone();
        }
        UnivariatePoly::new(cs)
    }

    pub fn eval<F: Field>(&self, d: &F) -> Result<F, ExactError> {
        let mut acc = F::zero();
        for (e, c) in &self.0 {
            acc = acc.add(&F::from_rational(c).mul(&d.pow(*e)?)?)?;
        }
        Ok(acc)
    }

    /// Representative of `self` in `Q[d] / (m)`; `m` must not vanish at 0.
    pub fn reduce_mod(&self, m: &UnivariatePoly<Rational>) -> Result<UnivariatePoly<Rational>, PolyError> {
        let inv = inverse_mod(&UnivariatePoly::x(), m)?.ok_or(PolyError::NotExact)?;
        let mut acc = UnivariatePoly::zero();
        for (e, c) in &self.0 {
            let base = if *e >= 0 { UnivariatePoly::x() } else { inv.clone() };
            let mut p = UnivariatePoly::constant(c.clone());
            for _ in 0..e.unsigned_abs() {
                p = p.mul(&base)?.divrem(m)?.1;
            }
            acc = acc.add(&p)?;
        }
        Ok(acc.divrem(m)?.1)
    }

    /// As a polynomial in `var`, if no negative powers occur.
    pub fn to_mpoly(&self, var: VarId) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.0 {
            if *e < 0 {
                return None;
            }
            let m = if *e == 0 { Monomial::one() } else { Monomial::from_pairs(vec![(var, *e as u32)]) };
            out.add_term(m, c.clone());
        }
        Some(out)
    }
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm; `None` when
/// they share a factor.
pub(crate) fn inverse_mod(
    a: &UnivariatePoly<Rational>,
    m: &UnivariatePoly<Rational>,
) -> Result<Option<UnivariatePoly<Rational>>, PolyError> {
    let (mut r0, mut r1) = (m.clone(), a.divrem(m)?.1);
    let (mut s0, mut s1) = (UnivariatePoly::zero(), UnivariatePoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = s0.sub(&q.mul(&s1)?)?;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.degree() != Some(0) {
        return Ok(None);
    }
    let c = r0.lc().recip()?;
    Ok(Some(s0.scale(&c)?.divrem(m)?.1))
}
