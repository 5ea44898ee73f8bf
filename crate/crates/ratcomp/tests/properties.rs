use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ratcomp::apclassify::{regimes, SweepMode};
use ratcomp::casegen::{build_system, enum_cases};
use ratcomp::exactnum::{Field, QuadExtElem, Rational};
use ratcomp::mpoly::{
    buchberger, check_groebner, reduce, reduce_with_quotients, MonomialOrder, MultiPoly, VarId,
};
use ratcomp::poly::{compose, FactoredForm, RationalFunction, UnivariatePoly};

fn cfg(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(20240607), failure_persistence: None, ..Config::default() }
}

fn rat() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

const RADICANDS: [i64; 7] = [2, 3, 5, 6, 7, -1, -2];

fn quad_triple() -> impl Strategy<Value = (QuadExtElem, QuadExtElem, QuadExtElem)> {
    (0..RADICANDS.len(), rat(), rat(), rat(), rat(), rat(), rat()).prop_map(|(i, a, b, c, d, e, f)| {
        let m = Rational::from_int(RADICANDS[i]);
        (
            QuadExtElem::new(a, b, m.clone()).unwrap(),
            QuadExtElem::new(c, d, m.clone()).unwrap(),
            QuadExtElem::new(e, f, m).unwrap(),
        )
    })
}

fn check_axioms<F: Field>(x: &F, y: &F, z: &F) {
    assert_eq!(x.add(y).unwrap(), y.add(x).unwrap());
    assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap());
    assert_eq!(x.add(y).unwrap().add(z).unwrap(), x.add(&y.add(z).unwrap()).unwrap());
    assert_eq!(x.mul(y).unwrap().mul(z).unwrap(), x.mul(&y.mul(z).unwrap()).unwrap());
    assert_eq!(x.mul(&y.add(z).unwrap()).unwrap(), x.mul(y).unwrap().add(&x.mul(z).unwrap()).unwrap());
    assert_eq!(x.add(&F::zero()).unwrap(), *x);
    assert_eq!(x.mul(&F::one()).unwrap(), *x);
    assert!(x.add(&x.neg()).unwrap().is_zero());
    if !x.is_zero() {
        assert!(x.mul(&x.inv().unwrap()).unwrap().is_one());
    } else {
        assert!(x.inv().is_err());
    }
}

proptest! {
    #![proptest_config(cfg(1000))]

    #[test]
    fn rational_field_axioms(x in rat(), y in rat(), z in rat()) {
        check_axioms(&x, &y, &z);
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn quadratic_field_axioms((x, y, z) in quad_triple()) {
        check_axioms(&x, &y, &z);
        prop_assert_eq!(x.to_string().parse::<QuadExtElem>().unwrap(), x);
    }

    #[test]
    fn norm_is_multiplicative((x, y, _z) in quad_triple()) {
        prop_assert_eq!(x.mul(&y).unwrap().norm(), &x.norm() * &y.norm());
    }
}

fn small_poly() -> impl Strategy<Value = UnivariatePoly<Rational>> {
    proptest::collection::vec(-4i64..=4, 2..=4)
        .prop_map(|cs| UnivariatePoly::new(cs.into_iter().map(Rational::from_int).collect()))
        .prop_filter("nonconstant", |p| p.degree().unwrap_or(0) >= 1)
}

fn small_ratfunc() -> impl Strategy<Value = RationalFunction<Rational>> {
    (small_poly(), small_poly()).prop_filter_map("coprime", |(p, q)| RationalFunction::new(p, q).ok())
}

proptest! {
    #![proptest_config(cfg(200))]

    #[test]
    fn composition_degree_law(g in small_ratfunc(), h in small_ratfunc()) {
        prop_assume!(g.degree() >= 1 && h.degree() >= 1);
        let f = compose(&g, &h).unwrap();
        prop_assert_eq!(f.degree(), g.degree() * h.degree());
    }

    #[test]
    fn expand_counts_its_factors(roots in proptest::collection::btree_set(-20i64..=20, 1..=6),
                                 exps in proptest::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], 6)) {
        let factors: Vec<(Rational, i64)> =
            roots.iter().zip(&exps).map(|(&r, &e)| (Rational::from_int(r), e)).collect();
        let n = factors.len();
        let f = FactoredForm::new(factors).unwrap().expand().unwrap();
        prop_assert_eq!(f.count_zeros_poles().unwrap(), n);
    }
}

/// Every generator reduces to zero modulo its basis and every S-polynomial
/// of the basis reduces to zero, for every system the enumeration produces at
/// n = 3 and n = 4.
#[test]
fn groebner_suite_on_generated_systems() {
    let mut systems = 0;
    for n in 3..=4 {
        for (regime, t) in regimes(n) {
            let cases = enum_cases(n, t, regime.ksum_zero(), regime.sinf_mode(), &SweepMode::Calibrated.config()).unwrap();
            for c in cases {
                let gens = build_system(&c).gens;
                let vars: Vec<VarId> = (1..=c.n).map(VarId::alpha).chain((1..=c.t).map(VarId::beta)).collect();
                for ord in [MonomialOrder::grevlex(vars.clone()), MonomialOrder::lex(vars.clone())] {
                    let basis = buchberger(&gens, &ord);
                    assert!(check_groebner(&gens, &basis, &ord), "{}", c.id());
                }
                systems += 1;
            }
        }
    }
    assert!(systems > 0);
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[VarId]) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for _ in 0..rng.gen_range(1..=5) {
        let mut m = MultiPoly::constant(Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5)).unwrap());
        for v in vars {
            m = m.mul(&MultiPoly::var(*v).pow(rng.gen_range(0..=2)));
        }
        p = p.add(&m);
    }
    p
}

#[test]
fn reduce_is_idempotent_and_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let vars: Vec<VarId> = (1..=3).map(VarId::alpha).collect();
    let ord = MonomialOrder::grevlex(vars.clone());
    for _ in 0..100 {
        let gens: Vec<MultiPoly> = (0..2).map(|_| random_poly(&mut rng, &vars)).collect();
        let basis = buchberger(&gens, &ord);
        let p = random_poly(&mut rng, &vars);
        let r = reduce(&p, &basis, &ord);
        assert_eq!(reduce(&r, &basis, &ord), r);
        let (qs, r2) = reduce_with_quotients(&p, &basis, &ord);
        assert_eq!(r2, r);
        let back = qs.iter().zip(&basis).fold(r2, |acc, (q, b)| acc.add(&q.mul(b)));
        assert_eq!(back, p);
    }
}
