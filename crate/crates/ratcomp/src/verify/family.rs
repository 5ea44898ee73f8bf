use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apclassify::{classify_case, KeyRecord, SolutionFamily, VerdictKind};
use crate::casegen::{CaseError, CaseSpec};
use crate::exactnum::{Field, Rational};
use crate::mpoly::VarId;
use crate::poly::{FactoredForm, RationalFunction, UnivariatePoly};

use super::{DecompositionWitness, VerifyError};

/// A small random rational `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Rational::new(p, q).expect("q >= 1")
}

/// Random rational values for the parameters of a family whose `d` is free
/// or has a rational admissible value. `d` is never zero.
pub fn sample_params<R: Rng>(family: &SolutionFamily, rng: &mut R) -> Result<BTreeMap<VarId, Rational>, VerifyError> {
    let mut out = BTreeMap::new();
    for &v in &family.parameters {
        let value = if v == VarId::d() {
            match family.d_poly() {
                Some(p) => rational_root(&p).ok_or_else(|| {
                    VerifyError::ConstraintViolated(format!("no rational root of {p}"))
                })?,
                None => loop {
                    let x = random_rational(rng, 10);
                    if !x.is_zero() {
                        break x;
                    }
                },
            }
        } else {
            random_rational(rng, 10)
        };
        out.insert(v, value);
    }
    Ok(out)
}

/// Exponents `k_j` drawn from `-3..=3 \ {0}` with the sum condition of the case:
/// nonzero for `ksum_zero = false`, zero otherwise (the last entry is solved for).
pub fn sample_exponents<R: Rng>(rng: &mut R, t: usize, ksum_zero: bool) -> Vec<i64> {
    loop {
        let mut k: Vec<i64> = (0..t).map(|_| nonzero_small(rng)).collect();
        if ksum_zero {
            let rest: i64 = k[..t - 1].iter().sum();
            k[t - 1] = -rest;
            if k[t - 1] != 0 {
                return k;
            }
        } else if k.iter().sum::<i64>() != 0 {
            return k;
        }
    }
}

fn nonzero_small<R: Rng>(rng: &mut R) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Instantiate every family class of a sweep `samples` times with parameters
/// and exponents drawn from a generator seeded by `seed`. Each witness comes
/// with the factored `f`; output is sorted by `(deg h, case id)`.
#[allow(clippy::type_complexity)]
pub fn verify_families(
    keys: &[KeyRecord],
    seed: u64,
    samples: usize,
) -> Result<Vec<(FactoredForm<Rational>, DecompositionWitness<Rational>)>, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for rec in keys.iter().filter(|r| r.kind == VerdictKind::Family) {
        let case: CaseSpec = rec.example_case.parse().map_err(|e: CaseError| VerifyError::BadExponents(e.to_string()))?;
        let verdict = classify_case(&case, &rec.example_ap).map_err(|e| VerifyError::Mismatch(e.to_string()))?;
        let fam = verdict.family.ok_or_else(|| VerifyError::Mismatch(format!("{} lost its family", rec.key)))?;
        for _ in 0..samples {
            // redraw the rare parameter points where two beta values collide
            let mut attempt = 0;
            let w = loop {
                let params = sample_params(&fam, &mut rng)?;
                let k = sample_exponents(&mut rng, case.t, case.ksum_zero);
                match verify_family(&fam, &params, &k) {
                    Err(VerifyError::Coincide(_)) if attempt < 20 => attempt += 1,
                    r => {
                        let w = r?;
                        let alpha: Vec<Rational> =
                            fam.alpha_forms.iter().map(|p| p.eval(&params)).collect::<Result<_, _>>()?;
                        break (family_f(&fam, &alpha, &k)?, w);
                    }
                }
            };
            out.push(w);
        }
    }
    out.sort_by(|(_, a), (_, b)| (a.h().degree(), a.provenance()).cmp(&(b.h().degree(), b.provenance())));
    Ok(out)
}

fn rational_root(p: &UnivariatePoly<Rational>) -> Option<Rational> {
    let rs = crate::apclassify::representative_roots(p).ok()?;
    rs.roots.iter().find_map(|r| r.as_rational().cloned())
}

fn check_exponents(family: &SolutionFamily, k: &[i64]) -> Result<(), VerifyError> {
    let case = &family.case;
    if k.len() != case.t {
        return Err(VerifyError::BadExponents(format!("{} exponents for {} blocks", k.len(), case.t)));
    }
    if k.contains(&0) {
        return Err(VerifyError::BadExponents("k_j must be nonzero".into()));
    }
    let sum: i64 = k.iter().sum();
    if case.ksum_zero != (sum == 0) {
        let want = if case.ksum_zero { "= 0" } else { "!= 0" };
        return Err(VerifyError::BadExponents(format!("sum of k is {sum}, case needs {want}")));
    }
    Ok(())
}

/// `f` of an instance from its root values: `f_m = l_m k_j` on block `j`,
/// `f_m = -l_m (k_1 + ... + k_t)` on the poles of `h`; roots with `l_m = 0` drop out.
pub fn family_f<F: Field>(family: &SolutionFamily, alpha: &[F], k: &[i64]) -> Result<FactoredForm<F>, VerifyError> {
    let case = &family.case;
    check_exponents(family, k)?;
    let ksum: i64 = k.iter().sum();
    let mut f_factors = Vec::new();
    for m in 1..=case.n {
        let l = i64::from(case.lm(m));
        let e = match case.block_of(m) {
            Some(j) => l * k[j],
            None => -l * ksum,
        };
        if e != 0 {
            f_factors.push((alpha[m - 1].clone(), e));
        }
    }
    Ok(FactoredForm::new(f_factors)?)
}

/// Instantiate a family and check `f = g(h)` exactly.
///
/// `f = prod (x - alpha_m)^{f_m}` with `f_m = l_m k_j` for roots of block `j`
/// and `f_m = -l_m (k_1 + ... + k_t)` for poles of `h`; `g = prod (x - beta_j)^{k_j}`;
/// `h = beta_1 + omega_1 / q` for a nonzero exponent sum and
/// `h = beta_1 + (beta_1 - beta_2) omega_1 / (omega_2 - omega_1)` for a vanishing one.
/// Constraint violations are reported before anything is composed.
pub fn verify_family<F: Field>(
    family: &SolutionFamily,
    params: &BTreeMap<VarId, F>,
    k: &[i64],
) -> Result<DecompositionWitness<F>, VerifyError> {
    let case = &family.case;
    for v in &family.parameters {
        if !params.contains_key(v) {
            return Err(VerifyError::MissingParameter(*v));
        }
    }
    if let Some(d) = params.get(&VarId::d()) {
        if d.is_zero() {
            return Err(VerifyError::ZeroD);
        }
        for c in &family.d_constraints {
            if !c.holds_at(d)? {
                return Err(VerifyError::ConstraintViolated(c.to_string()));
            }
        }
        if let Some(p) = family.d_poly() {
            if !p.map(F::from_rational).eval(d)?.is_zero() {
                return Err(VerifyError::ConstraintViolated(format!("{p} = 0")));
            }
        }
    }
    check_exponents(family, k)?;

    let alpha: Vec<F> = family.alpha_forms.iter().map(|p| p.eval(params)).collect::<Result<_, _>>()?;
    let beta: Vec<F> = family.beta_forms.iter().map(|p| p.eval(params)).collect::<Result<_, _>>()?;
    for (name, xs) in [("roots", &alpha), ("beta values", &beta)] {
        for i in 0..xs.len() {
            if xs[..i].contains(&xs[i]) {
                return Err(VerifyError::Coincide(name.into()));
            }
        }
    }

    let f = family_f(family, &alpha, k)?.expand()?;

    let block = |roots: &[usize]| -> Result<UnivariatePoly<F>, VerifyError> {
        let mut acc = UnivariatePoly::one();
        for &m in roots {
            acc = acc.mul(&UnivariatePoly::linear_root(&alpha[m - 1]).pow(case.lm(m))?)?;
        }
        Ok(acc)
    };
    let w1 = block(&case.blocks[0])?;
    let b1 = RationalFunction::constant(beta[0].clone());
    let h = if case.ksum_zero {
        let w2 = block(&case.blocks[1])?;
        let scale = beta[0].sub(&beta[1])?;
        b1.add(&RationalFunction::new(w1.scale(&scale)?, w2.sub(&w1)?)?)?
    } else {
        b1.add(&RationalFunction::new(w1, block(&case.s_inf)?)?)?
    };
    let g = FactoredForm::new(beta.iter().cloned().zip(k.iter().copied()).collect())?.expand()?;

    let w = DecompositionWitness::new(f, g, h, case.id())?;
    let got = w.f().count_zeros_poles()?;
    if got != case.n {
        return Err(VerifyError::Count { expected: case.n, got });
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apclassify::APAssignment;
    use crate::exactnum::QuadExtElem;
    use crate::poly::parse_ratfunc;

    fn prop1() -> SolutionFamily {
        let c = CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], vec![1, 1, 1, 1]).unwrap();
        classify_case(&c, &APAssignment::new(vec![0, 3, 1, 2]).unwrap()).unwrap().family.unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn proposition_instance() {
        let params: BTreeMap<_, _> = [(VarId::alpha0(), q(0)), (VarId::d(), q(1)), (VarId::beta(1), q(0))].into();
        let w = verify_family(&prop1(), &params, &[1, 1]).unwrap();
        assert_eq!(w.g(), &parse_ratfunc("x*(x + 2)").unwrap());
        assert_eq!(w.h(), &parse_ratfunc("x^2 - 3*x").unwrap());
        assert_eq!(w.f(), &parse_ratfunc("x*(x - 1)*(x - 2)*(x - 3)").unwrap());
    }

    #[test]
    fn bad_parameters_fail_early() {
        let fam = prop1();
        let mut params: BTreeMap<_, _> = [(VarId::alpha0(), q(0)), (VarId::d(), q(0)), (VarId::beta(1), q(0))].into();
        assert_eq!(verify_family(&fam, &params, &[1, 1]), Err(VerifyError::ZeroD));
        params.insert(VarId::d(), q(2));
        assert!(matches!(verify_family(&fam, &params, &[1, -1]), Err(VerifyError::BadExponents(_))));
        params.remove(&VarId::beta(1));
        assert!(matches!(verify_family(&fam, &params, &[1, 1]), Err(VerifyError::MissingParameter(_))));
    }

    #[test]
    fn works_over_quadratic_field() {
        let params: BTreeMap<VarId, QuadExtElem> = [
            (VarId::alpha0(), "1/3".parse().unwrap()),
            (VarId::d(), "0 + 1*sqrt(2)".parse().unwrap()),
            (VarId::beta(1), "2".parse().unwrap()),
        ]
        .into();
        let w = verify_family(&prop1(), &params, &[2, -1]).unwrap();
        assert_eq!(w.field(), "Q(sqrt(2))");
    }
}
