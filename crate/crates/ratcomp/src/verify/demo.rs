use serde::{Deserialize, Serialize};

use crate::apclassify::{classify_case, APAssignment};
use crate::casegen::CaseSpec;
use crate::exactnum::Rational;
use crate::mpoly::VarId;
use crate::poly::{compose, equal, parse_ratfunc, FactoredForm, RationalFunction};

use super::{brute_force_decompose, verify_family, DecompositionWitness, VerifyError, WitnessRecord};

pub const DEMOS: [&str; 6] = ["gutierrez-sevilla", "ayad", "prop1", "thm2a", "thm2b", "thm2c"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemoCheck {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DemoReport {
    pub name: String,
    pub witnesses: Vec<WitnessRecord>,
    pub checks: Vec<DemoCheck>,
    pub notes: Vec<String>,
}

impl DemoReport {
    fn new(name: &str) -> Self {
        DemoReport { name: name.into(), witnesses: Vec::new(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, label: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(DemoCheck { label: label.into(), passed, detail: detail.into() });
    }

    fn witness(&mut self, label: &str, r: Result<DecompositionWitness<Rational>, VerifyError>) {
        match r.and_then(|w| w.record()) {
            Ok(rec) => {
                self.check(label, true, format!("g = {}, h = {}", rec.g, rec.h));
                self.witnesses.push(rec);
            }
            Err(e) => self.check(label, false, e.to_string()),
        }
    }
}

fn rf(s: &str) -> Result<RationalFunction<Rational>, VerifyError> {
    Ok(parse_ratfunc(s)?)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

/// `(x - a1)^{k1} (x + 1/4 - a1)^{2 k2} / (x - 1/4 - a1)^{2 k1 + 2 k2}`.
pub fn family_a(a1: &Rational, k1: i64, k2: i64) -> Result<FactoredForm<Rational>, VerifyError> {
    let quarter = q(1, 4);
    Ok(FactoredForm::new(vec![
        (a1.clone(), k1),
        (a1 - &quarter, 2 * k2),
        (a1 + &quarter, -2 * k1 - 2 * k2),
    ])?)
}

/// `(x - a1)^{2 k1} (x + a1 - 2 a2)^{2 k2} / (x - a2)^{2 k1 + 2 k2}`.
pub fn family_b(a1: &Rational, a2: &Rational, k1: i64, k2: i64) -> Result<FactoredForm<Rational>, VerifyError> {
    let a3 = &(a2 + a2) - a1;
    Ok(FactoredForm::new(vec![(a1.clone(), 2 * k1), (a3, 2 * k2), (a2.clone(), -2 * k1 - 2 * k2)])?)
}

/// The printed pair for family (c): `h = b2 + (x - c)^2` and
/// `g = (x - b2 - r^2)^{k1} (x - b2)^{k2}` with `c = (a1 + a2)/2`, `r = (a2 - a1)/2`.
pub fn family_c_printed(
    a1: &Rational,
    a2: &Rational,
    b2: &Rational,
    k1: i64,
    k2: i64,
) -> Result<(RationalFunction<Rational>, RationalFunction<Rational>), VerifyError> {
    let two = Rational::from_int(2);
    let c = (a1 + a2).checked_div(&two)?;
    let r = (a2 - a1).checked_div(&two)?;
    let h = FactoredForm::new(vec![(c, 2)])?.expand()?.add(&RationalFunction::constant(b2.clone()))?;
    let g = FactoredForm::new(vec![(b2 + &(&r * &r), k1), (b2.clone(), k2)])?.expand()?;
    Ok((g, h))
}

/// The printed `f` of family (c): `(x - c)^{2 k1} (x - a1)^{k2} (x - a2)^{k2}`.
pub fn family_c_f(a1: &Rational, a2: &Rational, k1: i64, k2: i64) -> Result<FactoredForm<Rational>, VerifyError> {
    let c = (a1 + a2).checked_div(&Rational::from_int(2))?;
    Ok(FactoredForm::new(vec![(c, 2 * k1), (a1.clone(), k2), (a2.clone(), k2)])?)
}

/// Build and verify one of the worked examples in [`DEMOS`].
pub fn run_demo(name: &str) -> Result<DemoReport, VerifyError> {
    let mut rep = DemoReport::new(name);
    match name {
        "ayad" => {
            let f = rf("(x^4 - 8*x)/(x^3 + 1)")?;
            let n = f.count_zeros_poles()?;
            rep.witness("g(h) = f", DecompositionWitness::new(f, rf("(x^2 + 4*x)/(x + 1)")?, rf("(x^2 - 2*x)/(x + 1)")?, "ayad"));
            rep.check("zeros and poles", n == 7, format!("{n}"));
        }
        "gutierrez-sevilla" => {
            let f = rf("x^3*(x + 6)^3*(x^2 - 6*x + 36)^3/((x - 3)^3*(x^2 + 3*x + 9)^3)")?;
            let (g1, g2, g3) = (rf("x^3")?, rf("x*(x - 12)/(x - 3)")?, rf("x*(x + 6)/(x - 3)")?);
            let (h1, h2) = (rf("x^3*(x + 24)/(x - 3)")?, rf("x*(x^2 - 6*x + 36)/(x^2 + 3*x + 9)")?);
            let inner = compose(&g2, &g3)?;
            let outer = compose(&g1, &g2)?;
            rep.witness("g1(g2(g3)) = f", DecompositionWitness::new(f.clone(), g1, inner, "gutierrez-sevilla g1|g2g3"));
            rep.witness("(g1 g2)(g3) = f", DecompositionWitness::new(f.clone(), outer, g3, "gutierrez-sevilla g1g2|g3"));
            rep.witness("h1(h2) = f", DecompositionWitness::new(f.clone(), h1, h2, "gutierrez-sevilla h1|h2"));
            let n = f.count_zeros_poles()?;
            rep.check("zeros and poles", n == 7, format!("{n}"));
        }
        "prop1" => {
            let case = CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], vec![1, 1, 1, 1])
                .map_err(|e| VerifyError::BadExponents(e.to_string()))?;
            let ap = APAssignment::new(vec![0, 3, 1, 2]).map_err(|e| VerifyError::BadExponents(e.to_string()))?;
            let verdict = classify_case(&case, &ap).map_err(|e| VerifyError::BadExponents(e.to_string()))?;
            let Some(fam) = verdict.family else {
                rep.check("family survives", false, verdict.reason.to_string());
                return Ok(rep);
            };
            let params = [(VarId::alpha0(), q(0, 1)), (VarId::d(), q(1, 1)), (VarId::beta(1), q(0, 1))].into();
            match verify_family(&fam, &params, &[1, 1]) {
                Ok(w) => {
                    rep.check("g = x(x + 2)", w.g() == &rf("x*(x + 2)")?, w.g().to_string());
                    rep.check("h = x^2 - 3x", w.h() == &rf("x^2 - 3*x")?, w.h().to_string());
                    rep.witness("f = x(x-1)(x-2)(x-3)", Ok(w));
                }
                Err(e) => rep.check("family instance", false, e.to_string()),
            }
        }
        "thm2a" => {
            let f = family_a(&q(0, 1), 2, 1)?;
            oracle_demo(&mut rep, &f)?;
        }
        "thm2b" => {
            let f = family_b(&q(0, 1), &q(1, 1), 1, 2)?;
            oracle_demo(&mut rep, &f)?;
        }
        "thm2c" => {
            let (a1, a2, b2) = (q(0, 1), q(2, 1), q(0, 1));
            let (g, h) = family_c_printed(&a1, &a2, &b2, 2, 1)?;
            let gh = compose(&g, &h)?;
            let printed = family_c_f(&a1, &a2, 2, 1)?.expand()?;
            let swapped = family_c_f(&a1, &a2, 1, 2)?.expand()?;
            rep.witness("printed g, h at k = (2, 1)", DecompositionWitness::new(swapped.clone(), g, h.clone(), "thm2c k=(2,1)"));
            rep.check("g(h) is family (c) with k1, k2 exchanged", equal(&gh, &swapped)?, gh.to_string());
            let (g2, _) = family_c_printed(&a1, &a2, &b2, 1, 2)?;
            rep.witness("printed g at k = (1, 2) gives printed f at (2, 1)", DecompositionWitness::new(printed.clone(), g2, h, "thm2c k=(1,2)"));
            if !equal(&gh, &printed)? {
                rep.notes.push(format!(
                    "the printed f at k = (2, 1) is {printed}; it equals g(h) for the printed g only after exchanging k1 and k2"
                ));
            }
        }
        _ => return Err(VerifyError::UnknownDemo(name.into())),
    }
    Ok(rep)
}

fn oracle_demo(rep: &mut DemoReport, f: &FactoredForm<Rational>) -> Result<(), VerifyError> {
    let ws = brute_force_decompose(f, 4)?;
    rep.check("oracle finds a witness", !ws.is_empty(), format!("f = {f}, {} witnesses", ws.len()));
    for w in ws {
        rep.witnesses.push(w.record()?);
    }
    let g = f.factors().iter().fold(0i64, |acc, (_, e)| num_integer::Integer::gcd(&acc, e));
    if rep.witnesses.is_empty() && g >= 2 {
        rep.notes.push(format!(
            "all exponents of f are divisible by {g}, so f = x^{g} o u; that g is a power of a Moebius map, which the zeros/poles framework excludes"
        ));
    }
    Ok(())
}
