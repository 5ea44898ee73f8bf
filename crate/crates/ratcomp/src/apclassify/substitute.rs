use std::collections::BTreeMap;

use crate::casegen::{CaseSpec, EquationSystem};
use crate::exactnum::Rational;
use crate::mpoly::{MultiPoly, VarId};
use crate::poly::UnivariatePoly;

use super::{APAssignment, ApError, PowerConstraint};

/// Rewrite every generator with `a_i -> a0 + T_i d`, result in `d, b1..bt`.
///
/// The generators are x-coefficients of identities that are invariant under
/// translating `x`. Read around `x = a0` instead of `x = 0` they become the
/// coefficients of the same identity in `y = x - a0`, which is a unitriangular
/// change of generators, so the ideal is unchanged and `a0` drops out of every
/// generator. That re-centering is the same as setting `a0 = 0` after the
/// substitution.
pub fn substitute_ap(system: &EquationSystem, ap: &APAssignment) -> Result<Vec<MultiPoly>, ApError> {
    if ap.n() != system.case.n {
        return Err(ApError::SizeMismatch(ap.n(), system.case.n));
    }
    let mut map = ap_map(ap);
    for v in map.values_mut() {
        *v = v.substitute(&[(VarId::alpha0(), MultiPoly::zero())].into_iter().collect());
    }
    Ok(system.gens.iter().map(|g| g.substitute(&map)).collect())
}

pub(crate) fn ap_map(ap: &APAssignment) -> BTreeMap<VarId, MultiPoly> {
    let a0 = MultiPoly::var(VarId::alpha0());
    let d = MultiPoly::var(VarId::d());
    (1..=ap.n())
        .map(|m| (VarId::alpha(m), a0.add(&d.scale(&Rational::from_int(ap.pos(m) as i64)))))
        .collect()
}

/// Block polynomials after `x = a0 + d y`, divided by `d^sigma`: integer
/// polynomials in `y` with roots at the positions.
pub(crate) struct Scaled {
    pub w: Vec<UnivariatePoly<Rational>>,
    pub q: UnivariatePoly<Rational>,
    pub sigma: Vec<i64>,
    pub sigma_inf: i64,
    pub pos: Vec<Rational>,
}

impl Scaled {
    pub fn new(case: &CaseSpec, ap: &APAssignment) -> Result<Self, ApError> {
        if ap.n() != case.n {
            return Err(ApError::SizeMismatch(ap.n(), case.n));
        }
        let pos: Vec<Rational> = (1..=case.n).map(|m| Rational::from_int(ap.pos(m) as i64)).collect();
        let block_poly = |roots: &[usize]| -> Result<UnivariatePoly<Rational>, ApError> {
            let mut acc = UnivariatePoly::one();
            for &m in roots {
                acc = acc.mul(&UnivariatePoly::linear_root(&pos[m - 1]).pow(case.lm(m))?)?;
            }
            Ok(acc)
        };
        let w = case.blocks.iter().map(|b| block_poly(b)).collect::<Result<Vec<_>, _>>()?;
        let q = block_poly(&case.s_inf)?;
        Ok(Scaled {
            w,
            q,
            sigma: case.block_sums().into_iter().map(i64::from).collect(),
            sigma_inf: case.inf_sum() as i64,
            pos,
        })
    }

    /// `omega_j(a_r) / q(a_r)` with the power of `d` stripped.
    pub fn weight(&self, j: usize, r: usize) -> Result<Rational, ApError> {
        let x = &self.pos[r - 1];
        Ok(self.w[j].eval(x)?.checked_div(&self.q.eval(x)?)?)
    }
}

/// The constraints `d^N = M` from evaluating block representations of `h` at
/// roots of other blocks.
///
/// For blocks `i < j` and roots `r` of block `i`, `s` of block `j` (both with
/// nonzero multiplicity): `d^{sigma_i - sigma_j} = -w_j(r) / w_i(s)`. For two
/// roots `r1 < r2` of the same block and any other block `j`: `d^0 = w_j(r1) / w_j(r2)`.
/// Empty for a vanishing exponent sum, where `d` drops out.
pub fn derive_d_constraints(case: &CaseSpec, ap: &APAssignment) -> Result<Vec<PowerConstraint>, ApError> {
    if case.ksum_zero {
        return Ok(Vec::new());
    }
    let sc = Scaled::new(case, ap)?;
    let live = |i: usize| -> Vec<usize> { case.blocks[i].iter().copied().filter(|&m| case.lm(m) > 0).collect() };
    let mut out: Vec<PowerConstraint> = Vec::new();
    let mut push = |c: PowerConstraint| {
        if !out.contains(&c) {
            out.push(c);
        }
    };
    for i in 0..case.t {
        let ri = live(i);
        for (a, &r1) in ri.iter().enumerate() {
            for &r2 in &ri[a + 1..] {
                for j in (0..case.t).filter(|&j| j != i) {
                    push(PowerConstraint { n: 0, m: sc.weight(j, r1)?.checked_div(&sc.weight(j, r2)?)? });
                }
            }
        }
    }
    for i in 0..case.t {
        for j in i + 1..case.t {
            for &r in &live(i) {
                for &s in &live(j) {
                    let m = -sc.weight(j, r)?.checked_div(&sc.weight(i, s)?)?;
                    push(PowerConstraint::new(sc.sigma[i] - sc.sigma[j], m)?);
                }
            }
        }
    }
    Ok(out)
}
