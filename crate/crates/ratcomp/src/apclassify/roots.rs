use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{Field, QuadExtElem, Rational};
use crate::poly::{PolyError, UnivariatePoly};

/// One root of each factor of a polynomial that could be split into linear and
/// quadratic pieces over `Q`, up to conjugation.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<QuadExtElem>,
    /// Degree of the part that could not be split.
    pub unresolved_degree: usize,
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(BigInt::from(k));
            if k * k != n {
                large.push(BigInt::from(n / k));
            }
        }
        k += 1;
        if k > 2_000_000 {
            return None;
        }
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Integer coefficients proportional to `p`.
fn integer_coeffs(p: &UnivariatePoly<Rational>) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

fn rational_roots(p: &UnivariatePoly<Rational>) -> Option<Vec<Rational>> {
    let cs = integer_coeffs(p);
    let a0 = cs.first()?;
    let an = cs.last()?;
    if a0.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    for num in divisors(a0)? {
        for den in divisors(an)? {
            for s in [1i64, -1] {
                let r = Rational::new(&num * BigInt::from(s), den.clone()).expect("nonzero denominator");
                if !out.contains(&r) && p.eval(&r).ok()?.is_zero() {
                    out.push(r);
                }
            }
        }
    }
    Some(out)
}

/// `sqrt(z)` as an element of `Q(sqrt m)` with `m` squarefree.
fn sqrt_of(z: &Rational) -> Option<QuadExtElem> {
    if let Some(s) = z.sqrt_exact() {
        return Some(QuadExtElem::rational(s));
    }
    let (c, m) = z.square_split()?;
    QuadExtElem::new(Rational::zero(), c, Rational::from_big(m.into())).ok()
}

/// A root of the quadratic `c0 + c1 x + c2 x^2`.
fn quadratic_root(p: &UnivariatePoly<Rational>) -> Option<QuadExtElem> {
    let (c0, c1, c2) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let disc = &(&c1 * &c1) - &(&Rational::from_int(4) * &(&c2 * &c0));
    let s = sqrt_of(&disc)?;
    let two_a = QuadExtElem::rational(&Rational::from_int(2) * &c2);
    QuadExtElem::rational(-c1).add(&s).ok()?.div(&two_a).ok()
}

fn strip_root(p: &UnivariatePoly<Rational>, r: &Rational) -> Result<UnivariatePoly<Rational>, PolyError> {
    let lin = UnivariatePoly::linear_root(r);
    let mut p = p.clone();
    loop {
        let (q, rem) = p.divrem(&lin)?;
        if !rem.is_zero() {
            return Ok(p);
        }
        p = q;
    }
}

/// Representative roots of `p` (nonzero constant term assumed): all rational
/// roots, one root of each quadratic factor `d^2 - z` found through rational
/// roots of `p(sqrt z)`, and a root of what remains if that is quadratic.
pub fn representative_roots(p: &UnivariatePoly<Rational>) -> Result<RootSet, PolyError> {
    let mut roots = Vec::new();
    let mut rest = p.monic()?;
    if let Some(rs) = rational_roots(&rest) {
        for r in rs {
            rest = strip_root(&rest, &r)?;
            roots.push(QuadExtElem::rational(r));
        }
    }
    // even part: factors d^2 - z
    let even = rest.coeffs().iter().enumerate().all(|(k, c)| k % 2 == 0 || c.is_zero());
    if even && rest.deg0() >= 2 {
        let half = UnivariatePoly::new(rest.coeffs().iter().step_by(2).cloned().collect());
        if let Some(zs) = rational_roots(&half) {
            for z in zs {
                let quad = UnivariatePoly::new(vec![-z.clone(), Rational::zero(), Rational::one()]);
                while rest.divrem(&quad)?.1.is_zero() {
                    rest = rest.div_exact(&quad)?;
                }
                if let Some(s) = sqrt_of(&z) {
                    roots.push(s);
                }
            }
        }
    }
    if rest.deg0() == 2 {
        if let Some(r) = quadratic_root(&rest) {
            roots.push(r);
            rest = UnivariatePoly::one();
        }
    }
    Ok(RootSet { roots, unresolved_degree: rest.deg0() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[(i64, i64)]) -> UnivariatePoly<Rational> {
        UnivariatePoly::new(cs.iter().map(|&(a, b)| Rational::new(a, b).unwrap()).collect())
    }

    #[test]
    fn fourth_power() {
        // d^4 - 1/4 = (d^2 - 1/2)(d^2 + 1/2)
        let rs = representative_roots(&p(&[(-1, 4), (0, 1), (0, 1), (0, 1), (1, 1)])).unwrap();
        assert_eq!(rs.unresolved_degree, 0);
        assert_eq!(rs.roots.len(), 2);
        for r in &rs.roots {
            let r4 = r.pow(4).unwrap();
            assert_eq!(r4.as_rational(), Some(&Rational::new(1, 4).unwrap()));
        }
    }

    #[test]
    fn mixed() {
        // (d - 2)(d^2 + d + 1)
        let rs = representative_roots(&p(&[(-2, 1), (-1, 1), (-1, 1), (1, 1)])).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert_eq!(rs.roots[0].as_rational(), Some(&Rational::from_int(2)));
        assert_eq!(rs.roots[1].m(), Some(&Rational::from_int(-3)));
    }
}
