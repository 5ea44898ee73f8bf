use std::collections::BTreeSet;

use ratcomp::casegen::{build_system, distinct_root_part, CaseSpec};
use ratcomp::mpoly::{buchberger, check_groebner, eliminate, reduce, same_ideal, MonomialOrder, MultiPoly, VarId};

fn mp(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

fn pair_system(l: Vec<u32>) -> Vec<MultiPoly> {
    let c = CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], l).unwrap();
    build_system(&c).gens
}

fn betas() -> BTreeSet<VarId> {
    [VarId::beta(1), VarId::beta(2)].into()
}

fn alpha_order() -> MonomialOrder {
    MonomialOrder::lex((1..=4).map(VarId::alpha).collect())
}

/// Mutual reduction to zero of two generator lists.
fn assert_same(a: &[MultiPoly], b: &[MultiPoly]) {
    let ord = alpha_order();
    let ga = buchberger(a, &ord);
    let gb = buchberger(b, &ord);
    for p in b {
        assert!(reduce(p, &ga, &ord).is_zero(), "{p} not in <{a:?}>");
    }
    for p in a {
        assert!(reduce(p, &gb, &ord).is_zero(), "{p} not in <{b:?}>");
    }
    assert!(same_ideal(a, b, &ord));
}

fn pair_case(l: Vec<u32>) -> CaseSpec {
    CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], l).unwrap()
}

#[test]
fn two_one_two_one_roots_are_linear_in_a1_a2() {
    // without saturation the ideal also carries the component a2 = a4
    let raw = eliminate(&pair_system(vec![2, 1, 2, 1]), &betas());
    assert!(!same_ideal(&raw, &[mp("3*a3 - a1 - 2*a2"), mp("3*a4 - 4*a1 + a2")], &alpha_order()));
    let elim = eliminate(&distinct_root_part(&pair_case(vec![2, 1, 2, 1])), &betas());
    assert!(elim.iter().all(|g| g.vars().iter().all(VarId::is_alpha)));
    assert_same(&elim, &[mp("3*a3 - a1 - 2*a2"), mp("3*a4 - 4*a1 + a2")]);
}

#[test]
fn two_one_two_one_printed_generators_generate_the_system() {
    let printed = [
        "a1 + 1/2*a2 - a3 - 1/2*a4",
        "a2 - 4/3*a3 + 1/3*a4",
        "a2*a3^2 - 2*a2*a3*a4 + a2*a4^2 - a3^2*a4 + 2*a3*a4^2 - a4^3 - 9*b1 + 9*b2",
        "a3^3 - 3*a3^2*a4 + 3*a3*a4^2 - a4^3 - 27/4*b1 + 27/4*b2",
    ]
    .map(mp);
    let ord = MonomialOrder::grevlex(
        (1..=4).map(VarId::alpha).chain([VarId::beta(1), VarId::beta(2)]).collect(),
    );
    assert!(same_ideal(&distinct_root_part(&pair_case(vec![2, 1, 2, 1])), &printed, &ord));
}

#[test]
fn one_one_one_one_elimination_ideal() {
    let elim = eliminate(&pair_system(vec![1, 1, 1, 1]), &betas());
    assert_same(&elim, &[mp("a1 + a2 - a3 - a4")]);
}

#[test]
fn one_one_one_three_beta_free_generators() {
    let c = CaseSpec::new(4, false, vec![], vec![vec![1, 2, 3], vec![4]], vec![1, 1, 1, 3]).unwrap();
    let elim = eliminate(&build_system(&c).gens, &betas());
    assert_same(
        &elim,
        &[mp("a1 + a2 + a3 - 3*a4"), mp("a2^2 + a2*a3 - 3*a2*a4 + a3^2 - 3*a3*a4 + 3*a4^2")],
    );
}

#[test]
fn one_one_zero_two_beta_free_part() {
    let elim = eliminate(&pair_system(vec![1, 1, 0, 2]), &betas());
    assert_same(&elim, &[mp("a1 + a2 - 2*a4")]);
}

#[test]
fn eliminated_bases_are_groebner() {
    for l in [vec![2, 1, 2, 1], vec![1, 1, 1, 1]] {
        let gens = pair_system(l);
        let ord = MonomialOrder::block_elim(betas(), (1..=4).map(VarId::alpha).chain(betas()).collect());
        let basis = buchberger(&gens, &ord);
        assert!(check_groebner(&gens, &basis, &ord));
    }
}
