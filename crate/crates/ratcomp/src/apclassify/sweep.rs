use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::casegen::{enum_cases, CaseSpec, EnumConfig, SinfMode};

use super::substitute::Scaled;
use super::{classify_case, APAssignment, ApError, Reason, Verdict, VerdictKind};

/// The three regimes of the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Nonzero exponent sum, `h` a polynomial.
    NonzeroNoPoles,
    /// Nonzero exponent sum, `h` with poles among the roots of `f`.
    NonzeroPoles,
    /// Vanishing exponent sum.
    ZeroSum,
}

impl Regime {
    pub fn ksum_zero(self) -> bool {
        self == Regime::ZeroSum
    }

    pub fn sinf_mode(self) -> SinfMode {
        match self {
            Regime::NonzeroNoPoles | Regime::ZeroSum => SinfMode::Empty,
            Regime::NonzeroPoles => SinfMode::Nonempty,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::NonzeroNoPoles => "I",
            Regime::NonzeroPoles => "II",
            Regime::ZeroSum => "III",
        }
    }
}

/// `(regime, t)` pairs swept for a given `n`.
pub fn regimes(n: usize) -> Vec<(Regime, usize)> {
    let mut out = Vec::new();
    out.extend((2..=n).map(|t| (Regime::NonzeroNoPoles, t)));
    out.extend((2..n).map(|t| (Regime::NonzeroPoles, t)));
    out.extend((3..=n).map(|t| (Regime::ZeroSum, t)));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    /// Every partition and every `l` in `0..n`, no filters.
    Exhaustive,
    /// The filtered enumeration that reproduces the case counts.
    Calibrated,
}

impl SweepMode {
    pub fn config(self) -> EnumConfig {
        match self {
            SweepMode::Exhaustive => EnumConfig {
                min_deg_h: 0,
                degree_bound: false,
                leading_terms: false,
                reject_degenerate: false,
                ..EnumConfig::default()
            },
            SweepMode::Calibrated => EnumConfig::default(),
        }
    }
}

impl FromStr for SweepMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(SweepMode::Exhaustive),
            "calibrated" => Ok(SweepMode::Calibrated),
            _ => Err(format!("unknown sweep mode {s:?} (exhaustive|calibrated)")),
        }
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMode::Exhaustive => "exhaustive",
            SweepMode::Calibrated => "calibrated",
        })
    }
}

/// Shape of `(case, T)` read along the progression: for each position the
/// block of the root there (letters by first appearance, `P` for a pole of
/// `h`) and its `l`. The smaller of the forward and backward readings is kept,
/// so entries related by relabeling blocks or by `d -> -d` share a key.
pub fn canonical_key(case: &CaseSpec, ap: &APAssignment) -> String {
    let mut at = vec![0usize; case.n];
    for m in 1..=case.n {
        at[ap.pos(m) as usize] = m;
    }
    let read = |order: &mut dyn Iterator<Item = usize>| -> String {
        let mut names: Vec<usize> = Vec::new();
        let mut parts = Vec::new();
        for m in order {
            let label = match case.block_of(m) {
                Some(b) => {
                    let k = names.iter().position(|&x| x == b).unwrap_or_else(|| {
                        names.push(b);
                        names.len() - 1
                    });
                    char::from(b'A' + k as u8).to_string()
                }
                None => "P".to_string(),
            };
            parts.push(format!("{label}{}", case.lm(m)));
        }
        parts.join(" ")
    };
    let fwd = read(&mut at.iter().copied());
    let bwd = read(&mut at.iter().rev().copied());
    let body = fwd.min(bwd);
    format!("{}:{}", if case.ksum_zero { "z" } else { "nz" }, body)
}

/// One distinct key with its verdict and a representative entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KeyRecord {
    pub key: String,
    pub kind: VerdictKind,
    pub reason: Reason,
    pub example_case: String,
    #[serde(rename = "example_T")]
    pub example_ap: APAssignment,
    pub entries: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub case: String,
    #[serde(rename = "T")]
    pub ap: APAssignment,
    pub key: String,
    pub kind: VerdictKind,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeRow {
    pub regime: Regime,
    pub t: usize,
    pub cases: usize,
    pub entries: usize,
    pub by_kind: BTreeMap<VerdictKind, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: usize,
    pub mode: SweepMode,
    pub cases: usize,
    pub entries: usize,
    pub distinct_keys: usize,
    pub by_kind: BTreeMap<VerdictKind, usize>,
    pub by_reason: BTreeMap<String, usize>,
    pub regimes: Vec<RegimeRow>,
    /// Keys of entries that end in a genuine family.
    pub family_classes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub summary: SweepSummary,
    pub keys: Vec<KeyRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<EntryRecord>>,
}

/// Classify every `(case, T)` of every regime for `n`. Verdicts are computed
/// once per canonical key, in parallel on the current rayon pool.
pub fn classify_all(n: usize, mode: SweepMode, keep_entries: bool) -> Result<SweepReport, ApError> {
    let cfg = mode.config();
    let aps = APAssignment::all(n);
    let mut rows = Vec::new();
    let mut all: Vec<(usize, CaseSpec, APAssignment, String)> = Vec::new();
    for (regime, t) in regimes(n) {
        let cases = enum_cases(n, t, regime.ksum_zero(), regime.sinf_mode(), &cfg)
            .map_err(|e| ApError::Internal(e.to_string()))?;
        rows.push(RegimeRow { regime, t, cases: cases.len(), entries: cases.len() * aps.len(), by_kind: BTreeMap::new() });
        for c in cases {
            for a in &aps {
                let key = canonical_key(&c, a);
                all.push((rows.len() - 1, c.clone(), a.clone(), key));
            }
        }
    }

    let mut reps: BTreeMap<&str, (&CaseSpec, &APAssignment)> = BTreeMap::new();
    for (_, c, a, k) in &all {
        reps.entry(k.as_str()).or_insert((c, a));
    }
    let verdicts: HashMap<&str, Verdict> = reps
        .par_iter()
        .map(|(k, (c, a))| classify_case(c, a).map(|v| (*k, v)))
        .collect::<Result<_, _>>()?;

    let mut counts: HashMap<&str, usize> = HashMap::new();
    let mut by_kind = BTreeMap::new();
    let mut by_reason = BTreeMap::new();
    for (row, _, _, k) in &all {
        let v = &verdicts[k.as_str()];
        *counts.entry(k.as_str()).or_default() += 1;
        *by_kind.entry(v.kind).or_default() += 1;
        *by_reason.entry(v.reason.tag().to_string()).or_default() += 1;
        *rows[*row].by_kind.entry(v.kind).or_default() += 1;
    }
    let keys: Vec<KeyRecord> = reps
        .iter()
        .map(|(k, (c, a))| {
            let v = &verdicts[k];
            KeyRecord {
                key: k.to_string(),
                kind: v.kind,
                reason: v.reason.clone(),
                example_case: c.id(),
                example_ap: (*a).clone(),
                entries: counts[k],
            }
        })
        .collect();
    let family_classes = keys.iter().filter(|r| r.kind == VerdictKind::Family).map(|r| r.key.clone()).collect();
    let entries = keep_entries.then(|| {
        all.iter()
            .map(|(_, c, a, k)| {
                let v = &verdicts[k.as_str()];
                EntryRecord { case: c.id(), ap: a.clone(), key: k.clone(), kind: v.kind, reason: v.reason.tag().into() }
            })
            .collect()
    });
    let cases = rows.iter().map(|r| r.cases).sum();
    Ok(SweepReport {
        summary: SweepSummary {
            n,
            mode,
            cases,
            entries: all.len(),
            distinct_keys: keys.len(),
            by_kind,
            by_reason,
            regimes: rows,
            family_classes,
        },
        keys,
        entries,
    })
}

/// How many progressions `T` satisfy the same-block evaluation identities for
/// the split `{1,2} | {3,4}` with exponents `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventoryRow {
    pub l: Vec<u32>,
    pub count: usize,
}

/// Inventory of the two-by-two split of four roots, `l` in `0..4`. Rows with
/// no admissible `T` are left out.
pub fn pair_inventory() -> Result<Vec<InventoryRow>, ApError> {
    let aps = APAssignment::all(4);
    let mut out = Vec::new();
    for code in 0..256u32 {
        let l: Vec<u32> = (0..4).map(|k| (code >> (2 * (3 - k))) & 3).collect();
        let case = CaseSpec {
            n: 4,
            t: 2,
            ksum_zero: false,
            s_inf: vec![],
            blocks: vec![vec![1, 2], vec![3, 4]],
            l: l.clone(),
        };
        let mut count = 0;
        for a in &aps {
            let sc = Scaled::new(&case, a)?;
            let mut ok = true;
            for (i, j) in [(0, 1), (1, 0)] {
                let live: Vec<usize> = case.blocks[i].iter().copied().filter(|&m| l[m - 1] > 0).collect();
                if let [r1, r2] = live[..] {
                    ok &= sc.weight(j, r1)? == sc.weight(j, r2)?;
                }
            }
            count += usize::from(ok);
        }
        if count > 0 {
            out.push(InventoryRow { l, count });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_ignores_reversal_and_labels() {
        let c = CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], vec![1, 1, 1, 1]).unwrap();
        let a = APAssignment::new(vec![0, 3, 1, 2]).unwrap();
        assert_eq!(canonical_key(&c, &a), "nz:A1 B1 B1 A1");
        assert_eq!(canonical_key(&c, &a.reversed()), canonical_key(&c, &a));
        let swapped = CaseSpec::new(4, false, vec![], vec![vec![3, 4], vec![1, 2]], vec![1, 1, 1, 1]).unwrap();
        assert_eq!(canonical_key(&swapped, &a), canonical_key(&c, &a));
    }

    #[test]
    fn inventory_nonzero_rows() {
        let inv = pair_inventory().unwrap();
        let full: Vec<_> = inv.iter().filter(|r| !r.l.contains(&0)).collect();
        assert_eq!(full.len(), 9, "{full:?}");
        assert!(full.iter().all(|r| r.count == 8));
    }
}
