//! Specialization of case systems to roots in arithmetic progression.
//!
//! With `a_i = a0 + T_i d` every case system collapses to conditions on the
//! common difference `d` and the `beta` offsets. [`classify_case`] turns those
//! conditions into a [`Verdict`]; [`classify_all`] sweeps a whole regime table.

mod classify;
mod laurent;
mod roots;
mod substitute;
mod sweep;

pub use classify::{classify_case, gb_consistent};
pub use roots::{representative_roots, RootSet};
pub use substitute::{derive_d_constraints, substitute_ap};
pub use sweep::{
    canonical_key, classify_all, pair_inventory, regimes, EntryRecord, InventoryRow, KeyRecord, Regime, SweepMode,
    RegimeRow, SweepReport, SweepSummary,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::casegen::CaseSpec;
use crate::exactnum::{ExactError, Field, Rational};
use crate::mpoly::{MultiPoly, VarId};
use crate::poly::{PolyError, UnivariatePoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApError {
    #[error("invalid progression: {0}")]
    InvalidAssignment(String),
    #[error("progression has {0} positions but the case has {1} roots")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("internal: {0}")]
    Internal(String),
}

/// Positions `T_i` of the roots along the progression, `a_i = a0 + T_i d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct APAssignment(Vec<u32>);

impl APAssignment {
    pub fn new(t: Vec<u32>) -> Result<Self, ApError> {
        let n = t.len();
        let mut seen = vec![false; n];
        for &x in &t {
            if x as usize >= n || seen[x as usize] {
                return Err(ApError::InvalidAssignment(format!("{t:?} is not a permutation of 0..{n}")));
            }
            seen[x as usize] = true;
        }
        Ok(APAssignment(t))
    }

    pub fn identity(n: usize) -> Self {
        APAssignment((0..n as u32).collect())
    }

    /// Every permutation of `0..n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (0..n as u32).collect();
        loop {
            out.push(APAssignment(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Position of root `m` (1-based).
    pub fn pos(&self, m: usize) -> u32 {
        self.0[m - 1]
    }

    pub fn positions(&self) -> &[u32] {
        &self.0
    }

    /// `T_i -> (n - 1) - T_i`, the progression read backwards.
    pub fn reversed(&self) -> Self {
        let n = self.0.len() as u32;
        APAssignment(self.0.iter().map(|&x| n - 1 - x).collect())
    }
}

impl TryFrom<Vec<u32>> for APAssignment {
    type Error = ApError;
    fn try_from(v: Vec<u32>) -> Result<Self, ApError> {
        APAssignment::new(v)
    }
}

impl From<APAssignment> for Vec<u32> {
    fn from(a: APAssignment) -> Vec<u32> {
        a.0
    }
}

impl fmt::Display for APAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `d^N = M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerConstraint {
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "M")]
    pub m: Rational,
}

impl PowerConstraint {
    /// `d^n = m` written with `N >= 0`, so `d^-2 = 2` becomes `d^2 = 1/2`.
    pub fn new(n: i64, m: Rational) -> Result<Self, ExactError> {
        if n < 0 {
            Ok(PowerConstraint { n: -n, m: m.recip()? })
        } else {
            Ok(PowerConstraint { n, m })
        }
    }

    /// `N = 0` with `M != 1` cannot hold for any `d`.
    pub fn is_contradiction(&self) -> bool {
        self.n == 0 && !self.m.is_one()
    }

    pub fn holds_at<F: Field>(&self, d: &F) -> Result<bool, ExactError> {
        Ok(d.pow(self.n)?.sub(&F::from_rational(&self.m))?.is_zero())
    }
}

impl fmt::Display for PowerConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d^{} = {}", self.n, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VerdictKind {
    Contradiction,
    TrivialDecomposition,
    Family,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictKind::Contradiction => "contradiction",
            VerdictKind::TrivialDecomposition => "trivial",
            VerdictKind::Family => "family",
        };
        f.write_str(s)
    }
}

/// Why a `(case, T)` entry ended where it did. Block indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum Reason {
    /// `deg h < 2`.
    DegHBelow2 { deg_h: u32 },
    /// The equations force `beta_i = beta_j`.
    BetaCoincide { i: usize, j: usize },
    /// Only `d = 0` solves the equations, so roots would coincide.
    RootsCoincide,
    /// A constraint `d^0 = M` with `M != 1`.
    PowerInconsistency { constraint: PowerConstraint },
    /// The constraints on `d` have no common nonzero root.
    NoCommonRoot,
    /// Building `g(h)` from the largest block representation at an admissible
    /// `d` produces more than `n` zeros and poles.
    ExtraZerosPoles { count: usize, n: usize, d: String, field: String },
    /// The point values agree but the block representations of `h` do not, and
    /// no explicit root exhibited extra zeros or poles.
    RepresentationMismatch,
    /// A genuine decomposition, but some root has multiplicity zero so `f` has
    /// fewer than `n` zeros and poles.
    TooFewZerosPoles { count: usize },
    Survives,
}

impl Reason {
    pub fn tag(&self) -> &'static str {
        match self {
            Reason::DegHBelow2 { .. } => "deg-h-below-2",
            Reason::BetaCoincide { .. } => "beta-coincide",
            Reason::RootsCoincide => "roots-coincide",
            Reason::PowerInconsistency { .. } => "power-inconsistency",
            Reason::NoCommonRoot => "no-common-root",
            Reason::ExtraZerosPoles { .. } => "extra-zeros-poles",
            Reason::RepresentationMismatch => "representation-mismatch",
            Reason::TooFewZerosPoles { .. } => "too-few-zeros-poles",
            Reason::Survives => "survives",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::DegHBelow2 { deg_h } => write!(f, "deg h = {deg_h} < 2"),
            Reason::BetaCoincide { i, j } => write!(f, "forces b{i} = b{j}"),
            Reason::RootsCoincide => write!(f, "forces d = 0"),
            Reason::PowerInconsistency { constraint } => write!(f, "{constraint} is impossible"),
            Reason::NoCommonRoot => write!(f, "constraints on d have no common nonzero root"),
            Reason::ExtraZerosPoles { count, n, d, field } => {
                write!(f, "g(h) has {count} > {n} zeros and poles at d = {d} in {field}")
            }
            Reason::RepresentationMismatch => write!(f, "block representations of h disagree"),
            Reason::TooFewZerosPoles { count } => write!(f, "f has only {count} zeros and poles"),
            Reason::Survives => write!(f, "survives"),
        }
    }
}

/// How a root of `f` enters the exponent pattern: `f_m = l * k_block`, or
/// `f_m = -l * (k_1 + ... + k_t)` for a pole of `h` (`block = None`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentEntry {
    pub root: usize,
    pub block: Option<usize>,
    pub l: u32,
}

/// A surviving parametrized solution of one `(case, T)` entry.
///
/// `alpha_forms[i]` and `beta_forms[j]` are polynomials in `parameters`. When
/// `d_poly` is present, `d` ranges over its roots and the `beta` forms are
/// reduced modulo it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionFamily {
    pub case: CaseSpec,
    /// Progression positions, when the family comes from the AP sweep.
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub ap: Option<APAssignment>,
    pub parameters: Vec<VarId>,
    pub alpha_forms: Vec<MultiPoly>,
    pub beta_forms: Vec<MultiPoly>,
    pub d_constraints: Vec<PowerConstraint>,
    /// Coefficients lowest degree first.
    pub d_poly: Option<Vec<Rational>>,
    pub exponent_pattern: Vec<ExponentEntry>,
}

impl SolutionFamily {
    pub fn d_poly(&self) -> Option<UnivariatePoly<Rational>> {
        self.d_poly.as_ref().map(|c| UnivariatePoly::new(c.clone()))
    }

    /// The same family with `beta_j` shifted so that block `j` carries the free
    /// `beta` parameter instead of block 1.
    pub fn rebase_beta(&self, j: usize) -> SolutionFamily {
        let b1 = VarId::beta(1);
        let shift = self.beta_forms[j - 1].sub(&MultiPoly::var(b1));
        let mut map = BTreeMap::new();
        map.insert(b1, MultiPoly::var(b1).sub(&shift));
        let beta_forms = self.beta_forms.iter().map(|p| p.substitute(&map)).collect();
        SolutionFamily { beta_forms, ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub reason: Reason,
    /// Constraints `d^N = M` collected on the way.
    pub constraints: Vec<PowerConstraint>,
    /// Monic polynomial whose roots are the admissible `d` after the
    /// evaluation step, lowest degree first; `None` when `d` is unconstrained.
    pub d_poly: Option<Vec<Rational>>,
    pub family: Option<SolutionFamily>,
}

impl Verdict {
    fn new(kind: VerdictKind, reason: Reason) -> Self {
        Verdict { kind, reason, constraints: Vec::new(), d_poly: None, family: None }
    }
}
