//! One line per acceptance criterion. Criterion 6 is a stretch goal and never
//! gates. With `RATCOMP_ACCEPTANCE_STRICT=1` the process exits nonzero when a
//! gating criterion fails; otherwise it only reports.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ratcomp::apclassify::{classify_all, classify_case, regimes, APAssignment, Reason, SweepMode, VerdictKind};
use ratcomp::casegen::{build_system, case_count_report, distinct_root_part, enum_cases, CaseSpec, EnumConfig};
use ratcomp::exactnum::{Field, QuadExtElem, Rational};
use ratcomp::mpoly::{
    buchberger, check_groebner, eliminate, reduce, same_ideal, MonomialOrder, MultiPoly, VarId,
};
use ratcomp::verify::{
    brute_force_decompose, family_a, family_b, family_c_f, family_c_printed, random_rational, run_demo,
    verify_family, DecompositionWitness,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome { passed: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { passed: false, detail: detail.into() }
}

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let x = random_rational(rng, 10);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A pair of nonzero exponents in `-3..=3` with nonzero sum.
fn k_pair(rng: &mut ChaCha8Rng) -> (i64, i64) {
    loop {
        let k1 = rng.gen_range(-3..=3);
        let k2 = rng.gen_range(-3..=3);
        if k1 != 0 && k2 != 0 && k1 + k2 != 0 {
            return (k1, k2);
        }
    }
}

fn c1_worked_examples() -> Outcome {
    let mut notes = Vec::new();
    let mut passed = true;
    for name in ["ayad", "gutierrez-sevilla"] {
        match run_demo(name) {
            Ok(r) => {
                passed &= r.passed();
                notes.push(format!("{name}: {}/{} checks", r.checks.iter().filter(|c| c.passed).count(), r.checks.len()));
            }
            Err(e) => {
                passed = false;
                notes.push(format!("{name}: {e}"));
            }
        }
    }
    Outcome { passed, detail: notes.join("; ") }
}

fn c2_proposition_family() -> Outcome {
    let case = CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], vec![1, 1, 1, 1]).unwrap();
    let Some(fam) = classify_case(&case, &APAssignment::new(vec![0, 3, 1, 2]).unwrap()).unwrap().family else {
        return fail("the {1,2}|{3,4} (1,1,1,1) case did not survive");
    };
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..20 {
        let params: BTreeMap<VarId, Rational> = [
            (VarId::alpha0(), random_rational(&mut rng, 10)),
            (VarId::d(), nonzero_rational(&mut rng)),
            (VarId::beta(1), random_rational(&mut rng, 10)),
        ]
        .into();
        let (k1, k2) = k_pair(&mut rng);
        match verify_family(&fam, &params, &[k1, k2]) {
            Ok(w) if w.f().count_zeros_poles().unwrap() == 4 => {}
            Ok(w) => return fail(format!("sample {i}: f = {} has the wrong count", w.f())),
            Err(e) => return fail(format!("sample {i}: {e}")),
        }
    }
    ok("20 seeded instances, k_j in -3..=3 nonzero")
}

fn c3_three_root_families() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut lines = Vec::new();

    // (c): the printed g, h compose to a member of family (c)
    let mut c_ok = 0;
    let mut c_printed_f = 0;
    for _ in 0..10 {
        let a1 = random_rational(&mut rng, 10);
        let a2 = loop {
            let x = random_rational(&mut rng, 10);
            if x != a1 {
                break x;
            }
        };
        let b2 = random_rational(&mut rng, 10);
        let (k1, k2) = k_pair(&mut rng);
        let (g, h) = family_c_printed(&a1, &a2, &b2, k1, k2).unwrap();
        // the composition lands on family (c) with the roles of k1 and k2 exchanged
        let member = family_c_f(&a1, &a2, k2, k1).unwrap().expand().unwrap();
        let w = DecompositionWitness::new(member, g.clone(), h.clone(), "thm2c");
        if matches!(&w, Ok(w) if w.is_nontrivial() && w.f().count_zeros_poles().unwrap() == 3) {
            c_ok += 1;
        }
        let printed = family_c_f(&a1, &a2, k1, k2).unwrap().expand().unwrap();
        if DecompositionWitness::new(printed, g, h, "thm2c").is_ok() {
            c_printed_f += 1;
        }
    }
    lines.push(format!("(c) {c_ok}/10 verified (printed f with k1, k2 as written matches {c_printed_f}/10)"));

    // (a), (b): the oracle must find a witness for each instantiation
    let mut a_ok = 0;
    let mut b_ok = 0;
    for _ in 0..5 {
        let a1 = random_rational(&mut rng, 10);
        let (k1, k2) = k_pair(&mut rng);
        if !brute_force_decompose(&family_a(&a1, k1, k2).unwrap(), 6).unwrap().is_empty() {
            a_ok += 1;
        }
        let a2 = loop {
            let x = random_rational(&mut rng, 10);
            if x != a1 {
                break x;
            }
        };
        let (k1, k2) = k_pair(&mut rng);
        if !brute_force_decompose(&family_b(&a1, &a2, k1, k2).unwrap(), 6).unwrap().is_empty() {
            b_ok += 1;
        }
    }
    lines.push(format!("(a) {a_ok}/5 with a witness"));
    lines.push(format!("(b) {b_ok}/5 with a witness"));
    let passed = c_ok == 10 && a_ok == 5 && b_ok == 5;
    Outcome { passed, detail: lines.join("; ") }
}

fn mp(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

fn c4_pair_systems() -> Outcome {
    let betas = [VarId::beta(1), VarId::beta(2)].into();
    let ord = MonomialOrder::lex((1..=4).map(VarId::alpha).collect());
    let pair = |l: Vec<u32>| CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], l).unwrap();
    let mutual = |a: &[MultiPoly], b: &[MultiPoly]| {
        let ga = buchberger(a, &ord);
        let gb = buchberger(b, &ord);
        a.iter().all(|p| reduce(p, &gb, &ord).is_zero()) && b.iter().all(|p| reduce(p, &ga, &ord).is_zero())
    };
    let mut parts = Vec::new();
    let mut passed = true;

    let e = eliminate(&distinct_root_part(&pair(vec![2, 1, 2, 1])), &betas);
    let r = mutual(&e, &[mp("3*a3 - a1 - 2*a2"), mp("3*a4 - 4*a1 + a2")]);
    let raw = eliminate(&build_system(&pair(vec![2, 1, 2, 1])).gens, &betas);
    parts.push(format!(
        "(2,1,2,1) {} (raw system also contains a2 = a4: {})",
        if r { "ok" } else { "MISMATCH" },
        !same_ideal(&raw, &e, &ord)
    ));
    passed &= r;

    let e = eliminate(&build_system(&pair(vec![1, 1, 1, 1])).gens, &betas);
    let r = mutual(&e, &[mp("a1 + a2 - a3 - a4")]);
    parts.push(format!("(1,1,1,1) {}", if r { "ok" } else { "MISMATCH" }));
    passed &= r;

    let c = CaseSpec::new(4, false, vec![], vec![vec![1, 2, 3], vec![4]], vec![1, 1, 1, 3]).unwrap();
    let e = eliminate(&build_system(&c).gens, &betas);
    let r = mutual(&e, &[mp("a1 + a2 + a3 - 3*a4"), mp("a2^2 + a2*a3 - 3*a2*a4 + a3^2 - 3*a3*a4 + 3*a4^2")]);
    parts.push(format!("(1,1,1,3) {}", if r { "ok" } else { "MISMATCH" }));
    passed &= r;
    Outcome { passed, detail: parts.join("; ") }
}

fn c5_ap_classification() -> Outcome {
    let start = Instant::now();
    let rep = match classify_all(4, SweepMode::Calibrated, true) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let calibrated = start.elapsed();
    let t1 = Instant::now();
    let exh = classify_all(4, SweepMode::Exhaustive, false).unwrap();
    let exhaustive = t1.elapsed();
    let mut problems = Vec::new();
    for (name, r) in [("calibrated", &rep), ("exhaustive", &exh)] {
        if r.summary.family_classes.len() != 1 {
            problems.push(format!("{name}: {} family classes", r.summary.family_classes.len()));
        }
    }
    for e in rep.entries.as_ref().unwrap() {
        if e.kind != VerdictKind::Family && e.reason.is_empty() {
            problems.push(format!("{} {} has no reason", e.case, e.ap));
        }
    }

    let pair = |l: Vec<u32>| CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], l).unwrap();
    let v = classify_case(&pair(vec![2, 2, 2, 2]), &APAssignment::new(vec![0, 3, 1, 2]).unwrap()).unwrap();
    match &v.reason {
        Reason::PowerInconsistency { constraint } if constraint.n == 0 && constraint.m == q(-1) => {}
        r => problems.push(format!("(2,2,2,2): {r:?}")),
    }
    let half = Rational::new(1, 2).unwrap();
    let mut seen_1122 = 0;
    let mut seen_3311 = 0;
    for ap in APAssignment::all(4) {
        let v = classify_case(&pair(vec![1, 1, 2, 2]), &ap).unwrap();
        if let Reason::ExtraZerosPoles { count, field, d, .. } = &v.reason {
            let d: QuadExtElem = d.parse().unwrap();
            let d2 = d.mul(&d).unwrap();
            let sq = d2 == QuadExtElem::rational(half.clone()) || d2 == QuadExtElem::rational(-half.clone());
            if *count == 6 && sq && field.contains("sqrt") {
                seen_1122 += 1;
            } else {
                problems.push(format!("(1,1,2,2) {ap}: {count} at d = {d}"));
            }
        }
        let v = classify_case(&pair(vec![3, 3, 1, 1]), &ap).unwrap();
        if let Reason::ExtraZerosPoles { count, .. } = &v.reason {
            if *count > 4 && v.constraints.iter().any(|c| c.n == 4 && c.m == Rational::new(1, 4).unwrap()) {
                seen_3311 += 1;
            } else {
                problems.push(format!("(3,3,1,1) {ap}: {count}"));
            }
        }
    }
    if seen_1122 == 0 || seen_3311 == 0 {
        problems.push(format!("spot checks seen: (1,1,2,2) {seen_1122}, (3,3,1,1) {seen_3311}"));
    }
    if calibrated > Duration::from_secs(300) {
        problems.push(format!("calibrated sweep took {calibrated:?}"));
    }
    let detail = format!(
        "class {:?}; calibrated {} entries in {:.1?}, exhaustive {} entries in {:.1?}; (1,1,2,2) {seen_1122} and (3,3,1,1) {seen_3311} extra-factor entries{}",
        rep.summary.family_classes,
        rep.summary.entries,
        calibrated,
        exh.summary.entries,
        exhaustive,
        if problems.is_empty() { String::new() } else { format!("; problems: {problems:?}") }
    );
    Outcome { passed: problems.is_empty(), detail }
}

fn c6_calibration() -> Outcome {
    let cfg = EnumConfig::default();
    let mut parts = Vec::new();
    let mut passed = true;
    for n in 3..=4 {
        let rep = case_count_report(n, &cfg).unwrap();
        for r in rep.rows.iter().filter(|r| r.target.is_some()) {
            parts.push(format!("n={n} t={}: {} (published {})", r.t, r.count, r.target.unwrap()));
        }
        for m in &rep.mismatches {
            passed = false;
            eprintln!("  criterion 6 diff, n={n} t={}: {} vs {}", m.t, m.count, m.target);
            for (shape, c) in &m.by_shape {
                eprintln!("    block exponents {shape}: {c}");
            }
            for (toggle, c) in &m.toggles {
                eprintln!("    with {toggle}: {c}");
            }
            for c in enum_cases(n, m.t, false, ratcomp::casegen::SinfMode::Empty, &cfg).unwrap() {
                eprintln!("    {}", c.id());
            }
        }
    }
    Outcome { passed, detail: format!("{}; config {:?}", parts.join(", "), cfg) }
}

fn c7_groebner() -> Outcome {
    let mut systems = 0;
    for n in 3..=4 {
        for (regime, t) in regimes(n) {
            for c in enum_cases(n, t, regime.ksum_zero(), regime.sinf_mode(), &EnumConfig::default()).unwrap() {
                let gens = build_system(&c).gens;
                let vars: Vec<VarId> = (1..=c.n).map(VarId::alpha).chain((1..=c.t).map(VarId::beta)).collect();
                let ord = MonomialOrder::grevlex(vars);
                if !check_groebner(&gens, &buchberger(&gens, &ord), &ord) {
                    return fail(format!("{} is not a Groebner basis", c.id()));
                }
                systems += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let vars: Vec<VarId> = (1..=3).map(VarId::alpha).collect();
    let ord = MonomialOrder::grevlex(vars.clone());
    let poly = |rng: &mut ChaCha8Rng| {
        let mut p = MultiPoly::zero();
        for _ in 0..rng.gen_range(1..=5) {
            let mut m = MultiPoly::constant(random_rational(rng, 9));
            for v in &vars {
                m = m.mul(&MultiPoly::var(*v).pow(rng.gen_range(0..=2)));
            }
            p = p.add(&m);
        }
        p
    };
    for i in 0..100 {
        let basis = buchberger(&[poly(&mut rng), poly(&mut rng)], &ord);
        let r = reduce(&poly(&mut rng), &basis, &ord);
        if reduce(&r, &basis, &ord) != r {
            return fail(format!("reduce not idempotent on sample {i}"));
        }
    }
    ok(format!("{systems} systems (n = 3, 4), 100 idempotence samples"))
}

fn c8_exactness() -> Outcome {
    // no floating-point types anywhere in the sources
    let float_types = [["f", "32"].concat(), ["f", "64"].concat()];
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("..");
    let mut hits = Vec::new();
    let mut stack = vec![root];
    while let Some(dir) = stack.pop() {
        for e in std::fs::read_dir(&dir).unwrap().flatten() {
            let p = e.path();
            if p.is_dir() {
                if p.file_name().is_some_and(|n| n != "target") {
                    stack.push(p);
                }
            } else if p.extension().is_some_and(|x| x == "rs") {
                let text = std::fs::read_to_string(&p).unwrap();
                for t in &float_types {
                    let is_ident = |c: char| c.is_alphanumeric() || c == '_';
                    for (i, _) in text.match_indices(t.as_str()) {
                        let before = text[..i].chars().last().is_some_and(is_ident);
                        let after = text[i + t.len()..].chars().next().is_some_and(is_ident);
                        if !before && !after {
                            hits.push(p.display().to_string());
                        }
                    }
                }
            }
        }
    }
    if !hits.is_empty() {
        return fail(format!("floating point in {hits:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let radicands = [2, 3, 5, 6, 7, -1, -2];
    for i in 0..1000 {
        let (a, b, c) = (random_rational(&mut rng, 30), random_rational(&mut rng, 30), random_rational(&mut rng, 30));
        let rational_axioms = a.mul(&b.add(&c).unwrap()).unwrap() == a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            && a.mul(&b).unwrap().mul(&c).unwrap() == a.mul(&b.mul(&c).unwrap()).unwrap()
            && a.add(&b).unwrap() == b.add(&a).unwrap()
            && (a.is_zero() || a.mul(&a.inv().unwrap()).unwrap().is_one());
        let m = q(radicands[rng.gen_range(0..radicands.len())]);
        let x = QuadExtElem::new(a.clone(), b.clone(), m.clone()).unwrap();
        let y = QuadExtElem::new(c.clone(), random_rational(&mut rng, 30), m.clone()).unwrap();
        let z = QuadExtElem::new(random_rational(&mut rng, 30), random_rational(&mut rng, 30), m).unwrap();
        let axioms = x.add(&y).unwrap() == y.add(&x).unwrap()
            && x.mul(&y).unwrap() == y.mul(&x).unwrap()
            && x.mul(&y.add(&z).unwrap()).unwrap() == x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
            && x.mul(&y).unwrap().mul(&z).unwrap() == x.mul(&y.mul(&z).unwrap()).unwrap()
            && (x.is_zero() || x.mul(&x.inv().unwrap()).unwrap().is_one())
            && rational_axioms;
        if !axioms {
            return fail(format!("field axiom failed on sample {i}"));
        }
        if x.mul(&y).unwrap().norm() != &x.norm() * &y.norm() {
            return fail(format!("norm not multiplicative on sample {i}"));
        }
    }
    ok("no float types in sources; 1000 seeded samples of field axioms and norm multiplicativity")
}

type Criterion = (&'static str, bool, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 worked-example compositions", true, c1_worked_examples),
        ("2 proposition family, 20 random instances", true, c2_proposition_family),
        ("3 three-root families (a), (b), (c)", true, c3_three_root_families),
        ("4 solved systems for n = 4", true, c4_pair_systems),
        ("5 AP classification at n = 4", true, c5_ap_classification),
        ("6 enumeration calibration (stretch)", false, c6_calibration),
        ("7 Groebner property suite", true, c7_groebner),
        ("8 exactness", true, c8_exactness),
    ];
    let mut gating_failures = 0;
    for (name, gating, f) in criteria {
        let start = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            fail(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let status = match (out.passed, gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (non-gating)",
        };
        if !out.passed && gating {
            gating_failures += 1;
        }
        println!("criterion {name}: {status} [{:.1?}] {}", start.elapsed(), out.detail);
    }
    println!("acceptance: {gating_failures} gating criteria failed");
    let strict = std::env::var("RATCOMP_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && gating_failures > 0 {
        std::process::exit(1);
    }
}
