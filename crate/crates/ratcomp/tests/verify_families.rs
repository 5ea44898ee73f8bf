use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratcomp::apclassify::{classify_case, APAssignment, Reason, SolutionFamily, SweepReport};
use ratcomp::casegen::CaseSpec;
use ratcomp::exactnum::{Field, QuadExtElem, Rational};
use ratcomp::mpoly::VarId;
use ratcomp::poly::{compose, equal, parse_ratfunc, FactoredForm};
use ratcomp::verify::{
    brute_force_decompose, family_a, family_b, family_f, sample_exponents, sample_params, verify_families, verify_family, VerifyError,
};

fn prop1() -> SolutionFamily {
    let c = CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], vec![1, 1, 1, 1]).unwrap();
    classify_case(&c, &APAssignment::new(vec![0, 3, 1, 2]).unwrap()).unwrap().family.unwrap()
}

fn sweep() -> SweepReport {
    ratcomp::apclassify::classify_all(4, ratcomp::apclassify::SweepMode::Exhaustive, false).unwrap()
}

#[test]
fn random_instances_compose_and_oracle_agrees() {
    let fam = prop1();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 5 {
        let params = sample_params(&fam, &mut rng).unwrap();
        let k = sample_exponents(&mut rng, 2, false);
        let w = match verify_family(&fam, &params, &k) {
            Err(VerifyError::Coincide(_)) => continue,
            r => r.unwrap(),
        };
        assert_eq!(w.f().count_zeros_poles().unwrap(), 4);
        assert!(w.is_nontrivial());
        let alpha: Vec<Rational> = fam.alpha_forms.iter().map(|p| p.eval(&params).unwrap()).collect();
        let f = family_f(&fam, &alpha, &k).unwrap();
        let found = brute_force_decompose(&f, 4).unwrap();
        assert!(found.iter().any(|o| o.h().degree() == 2), "{f}");
        done += 1;
    }
}

#[test]
fn four_root_family_instance() {
    // beta_2 = beta_1 - 2 d^2 at a0 = 0, d = 1, beta_1 = 0, k = (1, 1)
    let params: BTreeMap<VarId, Rational> =
        [(VarId::alpha0(), Rational::zero()), (VarId::d(), Rational::one()), (VarId::beta(1), Rational::zero())].into();
    let w = verify_family(&prop1(), &params, &[1, 1]).unwrap();
    assert_eq!(w.g(), &parse_ratfunc("x*(x + 2)").unwrap());
}

#[test]
fn sweep_families_verify_deterministically() {
    let rep = sweep();
    let a = verify_families(&rep.keys, 11, 3).unwrap();
    let b = verify_families(&rep.keys, 11, 3).unwrap();
    assert_eq!(a.len(), 3);
    let ra: Vec<_> = a.iter().map(|(_, w)| w.record().unwrap()).collect();
    let rb: Vec<_> = b.iter().map(|(_, w)| w.record().unwrap()).collect();
    assert_eq!(ra, rb);
    let c = verify_families(&rep.keys, 12, 3).unwrap();
    assert_ne!(ra, c.iter().map(|(_, w)| w.record().unwrap()).collect::<Vec<_>>());
}

#[test]
fn extra_zeros_poles_are_confirmed_over_the_extension() {
    // (1,1,2,2): at d^2 = 1/2, g(h) built from block 1 has 6 zeros and poles
    let c = CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], vec![1, 1, 2, 2]).unwrap();
    let ap = APAssignment::new(vec![0, 3, 1, 2]).unwrap();
    let v = classify_case(&c, &ap).unwrap();
    let Reason::ExtraZerosPoles { count, d, .. } = v.reason else { panic!("{:?}", v.reason) };
    assert_eq!(count, 6);
    let d: QuadExtElem = d.parse().unwrap();
    // independent rebuild: roots a_m = T_m d, h = (x - a3)^2 (x - a4)^2 from the
    // larger block, g = x (x - c) with c = h(a1), then count g(h)
    let a: Vec<QuadExtElem> = ap.positions().iter().map(|&t| d.mul(&QuadExtElem::from_i64(t as i64)).unwrap()).collect();
    let h = FactoredForm::new(vec![(a[2].clone(), 2), (a[3].clone(), 2)]).unwrap().expand().unwrap();
    let cval = h.eval(&a[0]).unwrap();
    assert_eq!(cval, h.eval(&a[1]).unwrap());
    let g = FactoredForm::new(vec![(QuadExtElem::rational(Rational::zero()), 1), (cval, 1)]).unwrap().expand().unwrap();
    let f = ratcomp::poly::compose(&g, &h).unwrap();
    assert_eq!(f.count_zeros_poles().unwrap(), count);
}

#[test]
fn two_one_two_one_instance() {
    let f = ratcomp::poly::parse_factored("x^2*(x - 3)*(x - 2)^2*(x + 1)").unwrap();
    let g = parse_ratfunc("x*(x + 4)").unwrap();
    let h = parse_ratfunc("x^3 - 3*x^2").unwrap();
    let w = ratcomp::verify::DecompositionWitness::new(f.expand().unwrap(), g.clone(), h.clone(), "sec5").unwrap();
    assert_eq!(w.f().count_zeros_poles().unwrap(), 4);
    let found = brute_force_decompose(&f, 4).unwrap();
    assert!(found.iter().any(|o| o.g() == &g && o.h() == &h));
}

#[test]
fn family_c_equal_exponents_instance() {
    use ratcomp::verify::{family_c_f, family_c_printed};
    let (a1, a2, b2) = (Rational::zero(), Rational::from_int(2), Rational::zero());
    let (g, h) = family_c_printed(&a1, &a2, &b2, 1, 1).unwrap();
    assert_eq!(g, parse_ratfunc("x*(x - 1)").unwrap());
    assert_eq!(h, parse_ratfunc("(x - 1)^2").unwrap());
    let f = family_c_f(&a1, &a2, 1, 1).unwrap().expand().unwrap();
    ratcomp::verify::DecompositionWitness::new(f, g, h, "thm2c").unwrap();
}

// Witnesses the oracle found for three-root families (a) and (b), frozen so
// that any change in the search shows up here.
#[test]
fn three_root_oracle_fixtures() {
    let f = family_a(&Rational::zero(), 2, 1).unwrap();
    assert_eq!(f.to_string(), "x^2*(x + 1/4)^2*(x - 1/4)^-6");
    let ws = brute_force_decompose(&f, 4).unwrap();
    let got: Vec<(String, String, String)> =
        ws.iter().map(|w| (w.provenance().to_string(), w.g().to_string(), w.h().to_string())).collect();
    let want = [
        ("n3-t2-nz-s1-b2_3-l1.2.2 k=[1, -3]", "x/(x^3 - 3*x^2 + 3*x - 1)", "(x^2 + 1/2*x + 1/16)/x"),
        ("n3-t2-nz-s3-b1_2-l1.2.2 k=[2, 1]", "x^3 + x^2", "x/(x^2 - 1/2*x + 1/16)"),
    ];
    let want: Vec<(String, String, String)> =
        want.iter().map(|(p, g, h)| (p.to_string(), g.to_string(), h.to_string())).collect();
    assert_eq!(got, want);
    // second witness by hand: h(0) = 0, h(-1/4) = -1, h(1/4) = infinity
    let g = parse_ratfunc("x^2*(x + 1)").unwrap();
    let h = parse_ratfunc("x/(x - 1/4)^2").unwrap();
    assert!(equal(&compose(&g, &h).unwrap(), &f.expand().unwrap()).unwrap());

    let fb = family_b(&Rational::zero(), &Rational::one(), 1, 2).unwrap();
    assert!(brute_force_decompose(&fb, 6).unwrap().is_empty());
}
