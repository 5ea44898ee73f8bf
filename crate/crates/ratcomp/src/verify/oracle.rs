use num_integer::Integer;

use crate::casegen::CaseSpec;
use crate::exactnum::Field;
use crate::poly::{compose, FactoredForm, RationalFunction, UnivariatePoly};

use super::{DecompositionWitness, VerifyError};

const MAX_ROOTS: usize = 6;

/// Every assignment of roots to `S_inf` (`None`) or to blocks labeled by
/// first appearance.
fn labelings(n: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, blocks: usize, cur: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for label in std::iter::once(None).chain((0..=blocks).map(Some)) {
            cur.push(label);
            let nb = if label == Some(blocks) { blocks + 1 } else { blocks };
            rec(n, nb, cur, out);
            cur.pop();
        }
    }
    rec(n, 0, &mut cur, &mut out);
    out
}

fn divisors(g: i64) -> Vec<i64> {
    (1..=g).filter(|d| g % d == 0).collect()
}

/// Candidate exponent vectors `k`: `k_j` divides every `f_m` of block `j`
/// with the same sign.
fn k_choices(exps: &[i64], blocks: &[Vec<usize>]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for b in blocks {
        let sign = exps[b[0]].signum();
        if b.iter().any(|&m| exps[m].signum() != sign) {
            return Vec::new();
        }
        let g = b.iter().fold(0i64, |acc, &m| acc.gcd(&exps[m]));
        let opts: Vec<i64> = divisors(g).into_iter().map(|d| d * sign).collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

/// Search all decompositions `f = g(h)` of the zeros/poles shape: `g` a
/// product of `(x - beta_j)^{k_j}` over `t >= 2` values and `h` given by the
/// block representations, with `2 <= deg h <= max_deg_h`.
///
/// The `beta` are solved from the concrete roots of `f`; each candidate pair
/// is kept only if `g(h) = f` holds exactly. For a vanishing exponent sum `g`
/// is rescaled by the constant `g(h) / f`. Output is sorted by `(deg h, case)`.
pub fn brute_force_decompose<F: Field>(
    f: &FactoredForm<F>,
    max_deg_h: usize,
) -> Result<Vec<DecompositionWitness<F>>, VerifyError> {
    let n = f.len();
    if n > MAX_ROOTS {
        return Err(VerifyError::TooLarge(format!("{n} zeros and poles, at most {MAX_ROOTS} supported")));
    }
    let roots: Vec<F> = f.factors().iter().map(|(r, _)| r.clone()).collect();
    let exps: Vec<i64> = f.factors().iter().map(|(_, e)| *e).collect();
    let target = f.expand()?;
    let mut found: Vec<DecompositionWitness<F>> = Vec::new();

    for labels in labelings(n) {
        let t = labels.iter().flatten().max().map_or(0, |b| b + 1);
        if t < 2 {
            continue;
        }
        let mut blocks = vec![Vec::new(); t];
        let mut s_inf = Vec::new();
        for (m, lab) in labels.iter().enumerate() {
            match lab {
                Some(b) => blocks[*b].push(m),
                None => s_inf.push(m),
            }
        }
        for k in k_choices(&exps, &blocks) {
            let ksum: i64 = k.iter().sum();
            let mut l = vec![0u32; n];
            for (j, b) in blocks.iter().enumerate() {
                for &m in b {
                    l[m] = (exps[m] / k[j]) as u32;
                }
            }
            if ksum == 0 {
                if !s_inf.is_empty() || t < 3 {
                    continue;
                }
            } else {
                let ok = s_inf.iter().all(|&m| exps[m] % ksum == 0 && -exps[m] / ksum > 0);
                if !ok {
                    continue;
                }
                for &m in &s_inf {
                    l[m] = (-exps[m] / ksum) as u32;
                }
            }
            let block_poly = |ms: &[usize]| -> Result<UnivariatePoly<F>, VerifyError> {
                let mut acc = UnivariatePoly::one();
                for &m in ms {
                    acc = acc.mul(&UnivariatePoly::linear_root(&roots[m]).pow(l[m])?)?;
                }
                Ok(acc)
            };
            let w: Vec<UnivariatePoly<F>> = blocks.iter().map(|b| block_poly(b)).collect::<Result<_, _>>()?;
            let case = CaseSpec {
                n,
                t,
                ksum_zero: ksum == 0,
                s_inf: s_inf.iter().map(|m| m + 1).collect(),
                blocks: blocks.iter().map(|b| b.iter().map(|m| m + 1).collect()).collect(),
                l: l.clone(),
            };
            let provenance = format!("{} k={:?}", case.id(), k);

            let Some((h, beta)) = (if ksum == 0 {
                solve_zero(&w, &blocks, &roots)?
            } else {
                solve_nonzero(&w, &block_poly(&s_inf)?)?
            }) else {
                continue;
            };
            if h.degree() < 2 || h.degree() > max_deg_h {
                continue;
            }
            if (0..beta.len()).any(|i| beta[..i].contains(&beta[i])) {
                continue;
            }
            let g = FactoredForm::new(beta.into_iter().zip(k.iter().copied()).collect())?.expand()?;
            if g.degree() < 2 {
                continue;
            }
            let gh = compose(&g, &h)?;
            let ratio = gh.div(&target)?;
            if !ratio.is_constant() {
                continue;
            }
            let g = g.scale(&ratio.numer().coeff(0).inv()?)?;
            let w = DecompositionWitness::new(target.clone(), g, h, provenance)?;
            if !found.iter().any(|o| o.g() == w.g() && o.h() == w.h()) {
                found.push(w);
            }
        }
    }
    found.sort_by(|a, b| (a.h().degree(), a.provenance()).cmp(&(b.h().degree(), b.provenance())));
    Ok(found)
}

/// `h = omega_1 / q` with `beta_1 = 0`; every `omega_1 - omega_j` must be a
/// constant multiple `beta_j q`.
#[allow(clippy::type_complexity)]
fn solve_nonzero<F: Field>(
    w: &[UnivariatePoly<F>],
    q: &UnivariatePoly<F>,
) -> Result<Option<(RationalFunction<F>, Vec<F>)>, VerifyError> {
    let mut beta = vec![F::zero()];
    for wj in &w[1..] {
        let (c, r) = w[0].sub(wj)?.divrem(q)?;
        if !r.is_zero() || !c.is_constant() {
            return Ok(None);
        }
        beta.push(c.coeff(0));
    }
    Ok(Some((RationalFunction::new(w[0].clone(), q.clone())?, beta)))
}

/// `h = omega_1 / (omega_1 - omega_2)`, normalized by `beta_1 = 0`, `beta_2 = 1`;
/// the remaining `beta_j` are the values of `h` at a root of block `j`.
#[allow(clippy::type_complexity)]
fn solve_zero<F: Field>(
    w: &[UnivariatePoly<F>],
    blocks: &[Vec<usize>],
    roots: &[F],
) -> Result<Option<(RationalFunction<F>, Vec<F>)>, VerifyError> {
    let den = w[0].sub(&w[1])?;
    if den.is_zero() {
        return Ok(None);
    }
    let h = RationalFunction::new(w[0].clone(), den)?;
    let mut beta = vec![F::zero(), F::one()];
    for b in &blocks[2..] {
        match h.eval(&roots[b[0]]) {
            Ok(v) => beta.push(v),
            Err(_) => return Ok(None),
        }
    }
    Ok(Some((h, beta)))
}
