use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;
use crate::mpoly::{MultiPoly, VarId};

use super::{CaseError, CaseSpec};

/// Generators in `a1..an, b1..bt` whose common zeros are the data `(alpha, beta)`
/// realizing the case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquationSystem {
    pub case: CaseSpec,
    pub gens: Vec<MultiPoly>,
}

impl EquationSystem {
    /// Text export: a comment header followed by one generator per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("# case {}\n", self.case.id());
        s.push_str(&format!("# generators {}\n", self.gens.len()));
        for g in &self.gens {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

/// Polynomial in `x` with multivariate coefficients, lowest degree first.
type XPoly = Vec<MultiPoly>;

fn xmul(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![MultiPoly::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&p.mul(q));
        }
    }
    out
}

fn xadd(a: &XPoly, b: &XPoly) -> XPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(p), Some(q)) => p.add(q),
            (Some(p), None) => p.clone(),
            (None, Some(q)) => q.clone(),
            (None, None) => MultiPoly::zero(),
        })
        .collect()
}

fn xscale(a: &XPoly, c: &MultiPoly) -> XPoly {
    a.iter().map(|p| p.mul(c)).collect()
}

/// `prod_{m in roots} (x - a_m)^{l_m}`
fn omega(case: &CaseSpec, roots: &[usize]) -> XPoly {
    let mut acc = vec![MultiPoly::one()];
    for &m in roots {
        let lin = vec![MultiPoly::var(VarId::alpha(m)).neg(), MultiPoly::one()];
        for _ in 0..case.lm(m) {
            acc = xmul(&acc, &lin);
        }
    }
    acc
}

fn beta(j: usize) -> MultiPoly {
    MultiPoly::var(VarId::beta(j + 1))
}

/// Emit nonzero x-coefficients from the top down, normalized so the leading
/// displayed term has coefficient one.
fn emit(p: &XPoly, out: &mut Vec<MultiPoly>) {
    for c in p.iter().rev() {
        if !c.is_zero() {
            out.push(c.normalized());
        }
    }
}

/// For each block pair `i < j`: coefficients of
/// `omega_i - omega_j - (beta_j - beta_i) * q`.
pub fn build_system_nonzero(case: &CaseSpec) -> Result<EquationSystem, CaseError> {
    if case.ksum_zero {
        return Err(CaseError::WrongRegime("nonzero exponent sum builder on a vanishing-sum case".into()));
    }
    let q = omega(case, &case.s_inf);
    let omegas: Vec<XPoly> = case.blocks.iter().map(|b| omega(case, b)).collect();
    let mut gens = Vec::new();
    for i in 0..case.t {
        for j in i + 1..case.t {
            let diff = beta(j).sub(&beta(i));
            let p = xadd(&xadd(&omegas[i], &xscale(&omegas[j], &MultiPoly::from_int(-1))), &xscale(&q, &diff.neg()));
            emit(&p, &mut gens);
        }
    }
    Ok(EquationSystem { case: case.clone(), gens })
}

/// For each triple `j1 < j2 < j3`, the three-term identity
/// `(b_j1 - b_j2) w_j3 + (b_j3 - b_j1) w_j2 + (b_j2 - b_j3) w_j1 = 0`.
pub fn build_system_zero(case: &CaseSpec) -> Result<EquationSystem, CaseError> {
    if !case.ksum_zero {
        return Err(CaseError::WrongRegime("vanishing-sum builder on a nonzero-sum case".into()));
    }
    let omegas: Vec<XPoly> = case.blocks.iter().map(|b| omega(case, b)).collect();
    let mut gens = Vec::new();
    for a in 0..case.t {
        for b in a + 1..case.t {
            for c in b + 1..case.t {
                let p = xadd(
                    &xadd(&xscale(&omegas[c], &beta(a).sub(&beta(b))), &xscale(&omegas[b], &beta(c).sub(&beta(a)))),
                    &xscale(&omegas[a], &beta(b).sub(&beta(c))),
                );
                emit(&p, &mut gens);
            }
        }
    }
    Ok(EquationSystem { case: case.clone(), gens })
}

/// Dispatch on the exponent-sum regime.
pub fn build_system(case: &CaseSpec) -> EquationSystem {
    if case.ksum_zero {
        build_system_zero(case).expect("regime checked")
    } else {
        build_system_nonzero(case).expect("regime checked")
    }
}

/// The system with the components on which two roots of `f` coincide removed:
/// saturation by every difference `a_i - a_j` of roots that occur in `f`.
pub fn distinct_root_part(case: &CaseSpec) -> Vec<MultiPoly> {
    let mut gens = build_system(case).gens;
    let support: Vec<usize> = (1..=case.n).filter(|&m| case.lm(m) > 0).collect();
    for (i, &a) in support.iter().enumerate() {
        for &b in &support[i + 1..] {
            let diff = MultiPoly::var(VarId::alpha(a)).sub(&MultiPoly::var(VarId::alpha(b)));
            gens = crate::mpoly::saturate(&gens, &diff);
        }
    }
    gens
}

/// Number of x-coefficients the pair identity can have, `1 + max degree`.
pub fn pair_coefficient_slots(case: &CaseSpec, i: usize, j: usize) -> usize {
    1 + case.block_sum(i).max(case.block_sum(j)).max(case.inf_sum()) as usize
}

/// Raw x-coefficients of one pair identity (zeros included); used by tests
/// that count generators per pair.
pub fn pair_coefficients(case: &CaseSpec, i: usize, j: usize) -> Vec<MultiPoly> {
    let q = omega(case, &case.s_inf);
    let wi = omega(case, &case.blocks[i]);
    let wj = omega(case, &case.blocks[j]);
    let diff = beta(j).sub(&beta(i));
    let mut p = xadd(&xadd(&wi, &xscale(&wj, &MultiPoly::constant(-Rational::one()))), &xscale(&q, &diff.neg()));
    p.resize(pair_coefficient_slots(case, i, j), MultiPoly::zero());
    p
}
