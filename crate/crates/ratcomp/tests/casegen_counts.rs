use ratcomp::casegen::{case_count_report, enum_cases, CaseSpec, EnumConfig, SinfMode};

fn count(n: usize, t: usize) -> usize {
    enum_cases(n, t, false, SinfMode::Empty, &EnumConfig::default()).unwrap().len()
}

#[test]
fn n3_counts() {
    assert_eq!(count(3, 2), 18);
    assert_eq!(count(3, 3), 6);
}

#[test]
fn n4_report() {
    let rep = case_count_report(4, &EnumConfig::default()).unwrap();
    let row = |t: usize| rep.rows.iter().find(|r| r.t == t && !r.ksum_zero && r.s_inf == SinfMode::Empty).unwrap();
    assert_eq!(row(2).count, 134);
    assert_eq!(row(4).count, 24);
    // t = 3 does not reach the published 48; the mismatch is reported with its breakdown
    assert_eq!(row(3).target, Some(48));
    let mm: Vec<_> = rep.mismatches.iter().map(|m| (m.t, m.count, m.target)).collect();
    assert_eq!(mm, vec![(3, row(3).count, 48)]);
    assert!(!rep.mismatches[0].by_shape.is_empty());
    assert_eq!(rep.mismatches[0].toggles.len(), 4);
}

#[test]
fn every_listed_case_round_trips() {
    for t in 2..=3 {
        for c in enum_cases(3, t, false, SinfMode::Any, &EnumConfig::default()).unwrap() {
            assert_eq!(CaseSpec::from_json(&c.to_json()).unwrap(), c);
            assert_eq!(c.id().parse::<CaseSpec>().unwrap(), c);
        }
    }
}

#[test]
fn t4_cases_are_singletons_with_unit_exponents() {
    for c in enum_cases(4, 4, false, SinfMode::Empty, &EnumConfig::default()).unwrap() {
        assert!(c.blocks.iter().all(|b| b.len() == 1));
        assert_eq!(c.l, vec![1, 1, 1, 1]);
    }
}
