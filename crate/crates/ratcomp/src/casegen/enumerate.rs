use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::mpoly::{is_unit_ideal, MonomialOrder, MultiPoly, VarId};

use super::{build_system, CaseError, CaseSpec};

/// Which pole sets `s_inf` to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SinfMode {
    Empty,
    Nonempty,
    Any,
}

impl std::str::FromStr for SinfMode {
    type Err = CaseError;
    fn from_str(s: &str) -> Result<Self, CaseError> {
        match s {
            "empty" => Ok(SinfMode::Empty),
            "nonempty" => Ok(SinfMode::Nonempty),
            "any" => Ok(SinfMode::Any),
            _ => Err(CaseError::Invalid(format!("unknown s_inf mode {s}"))),
        }
    }
}

/// Filters applied by [`enum_cases`]. The default reproduces the counts 18 and 6
/// for `n = 3` and 134 and 24 for `n = 4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumConfig {
    /// Drop exponent tuples whose nonzero entries share a factor > 1.
    pub gcd_filter: bool,
    /// Largest local multiplicity; `None` means `n - 1`.
    pub l_cap: Option<u32>,
    /// Smallest admissible `deg h`.
    pub min_deg_h: u32,
    /// Enforce `deg h <= (n - 1) / max(t - 2, 1)`.
    pub degree_bound: bool,
    /// Drop cases whose identities cannot balance leading terms in `x`.
    pub leading_terms: bool,
    /// Drop cases whose equations force two roots or two `beta` to coincide.
    pub reject_degenerate: bool,
    /// Test distinctness of all roots and all `beta` jointly instead of pair by pair.
    pub joint_distinct: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            gcd_filter: false,
            l_cap: None,
            min_deg_h: 1,
            degree_bound: true,
            leading_terms: true,
            reject_degenerate: true,
            joint_distinct: true,
        }
    }
}

pub fn degree_bound(n: usize, t: usize) -> u32 {
    ((n - 1) / (t.saturating_sub(2)).max(1)) as u32
}

fn ordered_partitions(elems: &[usize], t: usize) -> Vec<Vec<Vec<usize>>> {
    let k = elems.len();
    let mut out = Vec::new();
    if k < t {
        return out;
    }
    let mut lab = vec![0usize; k];
    loop {
        let mut used = vec![false; t];
        for &x in &lab {
            used[x] = true;
        }
        if used.iter().all(|&u| u) {
            let blocks = (0..t)
                .map(|j| elems.iter().zip(&lab).filter(|(_, &x)| x == j).map(|(&e, _)| e).collect())
                .collect();
            out.push(blocks);
        }
        // odometer increment
        let mut p = 0;
        loop {
            if p == k {
                return out;
            }
            lab[p] += 1;
            if lab[p] < t {
                break;
            }
            lab[p] = 0;
            p += 1;
        }
    }
}

fn tuples(n: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=cap).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Leading-term balance of the pair identities.
fn leading_terms_ok(c: &CaseSpec) -> bool {
    let sig = c.block_sums();
    if c.ksum_zero {
        let d = *sig.iter().max().unwrap();
        return d > 0 && sig.iter().filter(|&&s| s < d).count() <= 1;
    }
    let si = c.inf_sum();
    for i in 0..c.t {
        for j in i + 1..c.t {
            let (a, b) = (sig[i], sig[j]);
            let ok = if a == b { si < a } else { a.max(b) == si };
            if !ok {
                return false;
            }
        }
    }
    true
}

fn diff(a: VarId, b: VarId) -> MultiPoly {
    MultiPoly::var(a).sub(&MultiPoly::var(b))
}

/// True when the system forces `a_i = a_j` or `b_i = b_j`.
///
/// Pairwise mode adds `u (v_i - v_j) - 1` for one pair at a time and asks for
/// the unit ideal. Joint mode adds a single `u * prod (v_i - v_j) - 1` over all
/// pairs, which also catches systems whose solutions always merge *some* pair.
/// With a vanishing exponent sum, setting every `beta` equal solves the
/// three-term identities, so the `beta` part is always tested jointly.
pub fn is_degenerate(case: &CaseSpec, joint: bool) -> bool {
    let mut gens = build_system(case).gens;
    if gens.iter().any(|g| g.constant_value().is_some_and(|c| !c.is_zero())) {
        return true;
    }
    let order = MonomialOrder::grevlex(vec![]);
    let mut alpha_pairs = Vec::new();
    for i in 1..=case.n {
        for j in i + 1..=case.n {
            alpha_pairs.push(diff(VarId::alpha(i), VarId::alpha(j)));
        }
    }
    let mut beta_pairs = Vec::new();
    for i in 1..=case.t {
        for j in i + 1..=case.t {
            beta_pairs.push(diff(VarId::beta(i), VarId::beta(j)));
        }
    }
    let rabinowitsch = |k: usize, p: &MultiPoly| MultiPoly::var(VarId::aux(k)).mul(p).sub(&MultiPoly::one());
    let product = |ps: &[MultiPoly]| ps.iter().fold(MultiPoly::one(), |acc, p| acc.mul(p));
    if joint {
        let mut all = alpha_pairs;
        all.extend(beta_pairs);
        gens.push(rabinowitsch(0, &product(&all)));
        return is_unit_ideal(&gens, &order);
    }
    let mut singles = alpha_pairs;
    if case.ksum_zero {
        gens.push(rabinowitsch(1, &product(&beta_pairs)));
        if is_unit_ideal(&gens, &order) {
            return true;
        }
    } else {
        singles.extend(beta_pairs);
    }
    singles.iter().any(|p| {
        let mut g = gens.clone();
        g.push(rabinowitsch(0, p));
        is_unit_ideal(&g, &order)
    })
}

/// Candidates that pass every cheap filter, before the degeneracy test.
fn candidates(n: usize, t: usize, ksum_zero: bool, mode: SinfMode, cfg: &EnumConfig) -> Vec<CaseSpec> {
    let cap = cfg.l_cap.unwrap_or(n as u32 - 1);
    let bound = degree_bound(n, t);
    let all: Vec<usize> = (1..=n).collect();
    let mut sinfs: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << n) {
        let s: Vec<usize> = all.iter().copied().filter(|m| mask & (1 << (m - 1)) != 0).collect();
        let keep = match mode {
            SinfMode::Empty => s.is_empty(),
            SinfMode::Nonempty => !s.is_empty(),
            SinfMode::Any => true,
        };
        if keep && !(ksum_zero && !s.is_empty()) && n - s.len() >= t {
            sinfs.push(s);
        }
    }
    let mut out = Vec::new();
    for s in sinfs {
        let rest: Vec<usize> = all.iter().copied().filter(|m| !s.contains(m)).collect();
        let parts = ordered_partitions(&rest, t);
        let ls = tuples(n, cap);
        for blocks in &parts {
            for l in &ls {
                let c = CaseSpec { n, t, ksum_zero, s_inf: s.clone(), blocks: blocks.clone(), l: l.clone() };
                if !s.is_empty() && c.inf_sum() == 0 {
                    // h must actually have a pole
                    continue;
                }
                let dh = c.deg_h();
                if dh < cfg.min_deg_h || (cfg.degree_bound && dh > bound) {
                    continue;
                }
                if cfg.leading_terms && !leading_terms_ok(&c) {
                    continue;
                }
                if cfg.gcd_filter {
                    let g = l.iter().fold(0u32, |g, &x| g.gcd(&x));
                    if g > 1 {
                        continue;
                    }
                }
                out.push(c);
            }
        }
    }
    out
}

/// All cases for `(n, t, regime)` in canonical order `(t, s_inf, blocks, l)`.
pub fn enum_cases(
    n: usize,
    t: usize,
    ksum_zero: bool,
    mode: SinfMode,
    cfg: &EnumConfig,
) -> Result<Vec<CaseSpec>, CaseError> {
    if n < 3 {
        return Err(CaseError::Invalid(format!("n = {n} is below the minimum 3")));
    }
    if t < 2 || t > n {
        return Err(CaseError::Invalid(format!("t = {t} must satisfy 2 <= t <= n = {n}")));
    }
    if ksum_zero && t < 3 {
        return Err(CaseError::Invalid("a vanishing exponent sum needs t >= 3".into()));
    }
    if ksum_zero && mode == SinfMode::Nonempty {
        return Ok(Vec::new());
    }
    let cands = candidates(n, t, ksum_zero, mode, cfg);
    let mut out: Vec<CaseSpec> = if cfg.reject_degenerate {
        cands.into_par_iter().filter(|c| !is_degenerate(c, cfg.joint_distinct)).collect()
    } else {
        cands
    };
    out.sort_by_key(CaseSpec::sort_key);
    let before = out.len();
    out.dedup();
    debug_assert_eq!(before, out.len());
    Ok(out)
}

/// One row of [`case_count_report`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub t: usize,
    pub ksum_zero: bool,
    pub s_inf: SinfMode,
    pub count: usize,
    /// Published count for this row, where one exists.
    pub target: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    pub config: EnumConfig,
    pub rows: Vec<CountRow>,
    /// Rows whose count differs from the target, with the per-case breakdown.
    pub mismatches: Vec<CountMismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountMismatch {
    pub t: usize,
    pub ksum_zero: bool,
    pub count: usize,
    pub target: usize,
    /// Case counts grouped by the multiset of block sizes and exponent pattern.
    pub by_shape: Vec<(String, usize)>,
    /// Counts obtained by flipping one calibration toggle at a time.
    pub toggles: Vec<(String, usize)>,
}

/// Published counts for the nonzero-sum, pole-free regime.
pub fn count_target(n: usize, t: usize) -> Option<usize> {
    match (n, t) {
        (3, 2) => Some(18),
        (3, 3) => Some(6),
        (4, 2) => Some(134),
        (4, 3) => Some(48),
        (4, 4) => Some(24),
        _ => None,
    }
}

fn shape_key(c: &CaseSpec) -> String {
    let mut parts: Vec<String> = c
        .blocks
        .iter()
        .map(|b| {
            let mut ls: Vec<u32> = b.iter().map(|&m| c.lm(m)).collect();
            ls.sort_unstable();
            format!("{ls:?}")
        })
        .collect();
    parts.sort();
    parts.join(" ")
}

/// Enumeration counts for every `(t, regime, pole mode)` at this `n`.
pub fn case_count_report(n: usize, cfg: &EnumConfig) -> Result<CountReport, CaseError> {
    if !(3..=5).contains(&n) {
        return Err(CaseError::Invalid(format!("count report supports n in 3..=5, got {n}")));
    }
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for t in 2..=n {
        for (ksum_zero, mode) in [(false, SinfMode::Empty), (false, SinfMode::Nonempty), (true, SinfMode::Empty)] {
            if ksum_zero && t < 3 {
                continue;
            }
            let cases = enum_cases(n, t, ksum_zero, mode, cfg)?;
            let target = if !ksum_zero && mode == SinfMode::Empty { count_target(n, t) } else { None };
            if let Some(tg) = target.filter(|&tg| tg != cases.len()) {
                mismatches.push(mismatch(n, t, &cases, tg, cfg)?);
            }
            rows.push(CountRow { t, ksum_zero, s_inf: mode, count: cases.len(), target });
        }
    }
    Ok(CountReport { n, config: cfg.clone(), rows, mismatches })
}

fn mismatch(n: usize, t: usize, cases: &[CaseSpec], target: usize, cfg: &EnumConfig) -> Result<CountMismatch, CaseError> {
    let mut shapes: std::collections::BTreeMap<String, usize> = Default::default();
    for c in cases {
        *shapes.entry(shape_key(c)).or_default() += 1;
    }
    let mut toggles = Vec::new();
    let variants: Vec<(&str, EnumConfig)> = vec![
        ("gcd_filter=on", EnumConfig { gcd_filter: !cfg.gcd_filter, ..cfg.clone() }),
        ("min_deg_h=2", EnumConfig { min_deg_h: 2, ..cfg.clone() }),
        ("reject_degenerate=off", EnumConfig { reject_degenerate: !cfg.reject_degenerate, ..cfg.clone() }),
        ("joint_distinct=flip", EnumConfig { joint_distinct: !cfg.joint_distinct, ..cfg.clone() }),
    ];
    for (name, v) in variants {
        toggles.push((name.to_string(), enum_cases(n, t, false, SinfMode::Empty, &v)?.len()));
    }
    Ok(CountMismatch { t, ksum_zero: false, count: cases.len(), target, by_shape: shapes.into_iter().collect(), toggles })
}

/// Variables of a case system, in the order used for exports.
pub fn system_vars(case: &CaseSpec) -> BTreeSet<VarId> {
    let mut v: BTreeSet<VarId> = (1..=case.n).map(VarId::alpha).collect();
    v.extend((1..=case.t).map(VarId::beta));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_counts() {
        let cfg = EnumConfig::default();
        assert_eq!(enum_cases(3, 2, false, SinfMode::Empty, &cfg).unwrap().len(), 18);
        assert_eq!(enum_cases(3, 3, false, SinfMode::Empty, &cfg).unwrap().len(), 6);
    }

    #[test]
    fn below_minimum() {
        assert!(enum_cases(2, 2, false, SinfMode::Empty, &EnumConfig::default()).is_err());
        assert!(enum_cases(3, 4, false, SinfMode::Empty, &EnumConfig::default()).is_err());
        assert!(enum_cases(3, 2, true, SinfMode::Empty, &EnumConfig::default()).is_err());
    }

    #[test]
    fn partitions_are_ordered() {
        assert_eq!(ordered_partitions(&[1, 2, 3], 2).len(), 6);
        assert_eq!(ordered_partitions(&[1, 2, 3, 4], 3).len(), 36);
    }

    #[test]
    fn printed_cases_are_enumerated() {
        let cases = enum_cases(3, 2, false, SinfMode::Empty, &EnumConfig::default()).unwrap();
        let want = CaseSpec::new(3, false, vec![], vec![vec![1, 2], vec![3]], vec![1, 1, 2]).unwrap();
        assert!(cases.contains(&want));
        let lin = CaseSpec::new(3, false, vec![], vec![vec![1, 2], vec![3]], vec![1, 0, 1]).unwrap();
        assert!(cases.contains(&lin));
    }
}
