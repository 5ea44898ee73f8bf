use std::collections::BTreeMap;

use crate::exactnum::Rational;

use super::{Monomial, MpolyError, MultiPoly, VarId};

/// Outcome of [`linear_solve`].
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    /// Pivot unknowns expressed through free unknowns and the other variables.
    /// `relations` are leftover rows free of unknowns that must vanish on their own.
    Solved {
        pivots: BTreeMap<VarId, MultiPoly>,
        free: Vec<VarId>,
        relations: Vec<MultiPoly>,
    },
    Inconsistent,
}

/// Row-reduce generators that are affine in `unknowns` with rational coefficients.
///
/// Pivots are taken in the order of `unknowns`. Any other variables are treated
/// as parameters and may appear nonlinearly in the constant parts.
pub fn linear_solve(gens: &[MultiPoly], unknowns: &[VarId]) -> Result<LinearSolution, MpolyError> {
    let n = unknowns.len();
    let mut rows: Vec<(Vec<Rational>, MultiPoly)> = Vec::new();
    for g in gens {
        let mut coeffs = vec![Rational::zero(); n];
        let mut rest = MultiPoly::zero();
        for (m, c) in g.terms() {
            let hits: Vec<usize> = (0..n).filter(|&k| m.exp(unknowns[k]) > 0).collect();
            match hits.as_slice() {
                [] => rest.add_term(m.clone(), c.clone()),
                [k] if *m == Monomial::var(unknowns[*k]) => coeffs[*k] = &coeffs[*k] + c,
                _ => return Err(MpolyError::NonLinear(g.to_string())),
            }
        }
        // row reads: coeffs . u + rest = 0
        rows.push((coeffs, rest));
    }

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[col].recip().expect("nonzero pivot");
        let (cs, rest) = &rows[r];
        let cs: Vec<Rational> = cs.iter().map(|c| c * &inv).collect();
        let rest = rest.scale(&inv);
        rows[r] = (cs, rest);
        for i in 0..rows.len() {
            if i == r || rows[i].0[col].is_zero() {
                continue;
            }
            let f = rows[i].0[col].clone();
            let cs: Vec<Rational> = rows[i].0.iter().zip(&rows[r].0).map(|(a, b)| a - &(&f * b)).collect();
            let rest = rows[i].1.sub(&rows[r].1.scale(&f));
            rows[i] = (cs, rest);
        }
        pivot_cols.push(col);
        r += 1;
    }

    let mut relations = Vec::new();
    for (cs, rest) in &rows[r..] {
        debug_assert!(cs.iter().all(Rational::is_zero));
        match rest.constant_value() {
            Some(c) if c.is_zero() => {}
            Some(_) => return Ok(LinearSolution::Inconsistent),
            None => relations.push(rest.normalized()),
        }
    }

    let free: Vec<VarId> = (0..n).filter(|c| !pivot_cols.contains(c)).map(|c| unknowns[c]).collect();
    let mut pivots = BTreeMap::new();
    for (k, &col) in pivot_cols.iter().enumerate() {
        let (cs, rest) = &rows[k];
        let mut val = rest.neg();
        for &fc in (0..n).filter(|c| !pivot_cols.contains(c)).collect::<Vec<_>>().iter() {
            if !cs[fc].is_zero() {
                val = val.sub(&MultiPoly::var(unknowns[fc]).scale(&cs[fc]));
            }
        }
        pivots.insert(unknowns[col], val);
    }
    Ok(LinearSolution::Solved { pivots, free, relations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn solved(sol: LinearSolution) -> (BTreeMap<VarId, MultiPoly>, Vec<VarId>, Vec<MultiPoly>) {
        match sol {
            LinearSolution::Solved { pivots, free, relations } => (pivots, free, relations),
            LinearSolution::Inconsistent => panic!("inconsistent"),
        }
    }

    #[test]
    fn four_singletons() {
        let (p, free, rel) = solved(
            linear_solve(&[mp("b3 - 3*b1 + 2*b2"), mp("b4 - 2*b1 + b2")], &[VarId::beta(3), VarId::beta(4)]).unwrap(),
        );
        assert_eq!(p[&VarId::beta(3)], mp("3*b1 - 2*b2"));
        assert_eq!(p[&VarId::beta(4)], mp("2*b1 - b2"));
        assert!(free.is_empty() && rel.is_empty());
    }

    #[test]
    fn with_parameters() {
        let (p, _, _) = solved(
            linear_solve(&[mp("a1 - a3 - b1 + b3"), mp("a2 - a3 - b2 + b3")], &[VarId::beta(1), VarId::beta(2)])
                .unwrap(),
        );
        assert_eq!(p[&VarId::beta(1)], mp("a1 - a3 + b3"));
        assert_eq!(p[&VarId::beta(2)], mp("a2 - a3 + b3"));
    }

    #[test]
    fn dependent_rows() {
        let (p, free, rel) =
            solved(linear_solve(&[mp("b1 - b2"), mp("b1 + b2 - 2*b2")], &[VarId::beta(1), VarId::beta(2)]).unwrap());
        assert_eq!(p[&VarId::beta(1)], mp("b2"));
        assert_eq!(free, vec![VarId::beta(2)]);
        assert!(rel.is_empty());
    }

    #[test]
    fn inconsistent_and_nonlinear() {
        assert_eq!(
            linear_solve(&[mp("b1 - 1"), mp("b1 - 2")], &[VarId::beta(1)]).unwrap(),
            LinearSolution::Inconsistent
        );
        assert!(linear_solve(&[mp("b1*d - 1")], &[VarId::beta(1)]).is_err());
    }
}
