use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::MpolyError;

/// Variable families. The derived order is the presentation precedence:
/// alphas first, then betas, then `a0`, `d` and auxiliary variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Alpha,
    Beta,
    Alpha0,
    D,
    /// Helper variables for saturation (`u*p - 1`); never part of a case system.
    Aux,
}

/// A system variable: `a1..an`, `b1..bt`, `a0`, `d`, or an auxiliary `u1..`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub kind: VarKind,
    pub index: u32,
}

impl VarId {
    pub fn alpha(i: usize) -> Self {
        VarId { kind: VarKind::Alpha, index: i as u32 }
    }
    pub fn beta(j: usize) -> Self {
        VarId { kind: VarKind::Beta, index: j as u32 }
    }
    pub fn alpha0() -> Self {
        VarId { kind: VarKind::Alpha0, index: 0 }
    }
    pub fn d() -> Self {
        VarId { kind: VarKind::D, index: 0 }
    }
    pub fn aux(i: usize) -> Self {
        VarId { kind: VarKind::Aux, index: i as u32 }
    }
    pub fn is_beta(&self) -> bool {
        self.kind == VarKind::Beta
    }
    pub fn is_alpha(&self) -> bool {
        self.kind == VarKind::Alpha
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Alpha => write!(f, "a{}", self.index),
            VarKind::Beta => write!(f, "b{}", self.index),
            VarKind::Alpha0 => write!(f, "a0"),
            VarKind::D => write!(f, "d"),
            VarKind::Aux => write!(f, "u{}", self.index),
        }
    }
}

impl FromStr for VarId {
    type Err = MpolyError;

    fn from_str(s: &str) -> Result<Self, MpolyError> {
        let bad = || MpolyError::Parse(format!("unknown variable {s:?}"));
        if s == "d" {
            return Ok(VarId::d());
        }
        if s == "a0" {
            return Ok(VarId::alpha0());
        }
        let (head, tail) = s.split_at(1.min(s.len()));
        let idx: u32 = tail.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        let kind = match head {
            "a" => VarKind::Alpha,
            "b" => VarKind::Beta,
            "u" => VarKind::Aux,
            _ => return Err(bad()),
        };
        Ok(VarId { kind, index: idx })
    }
}

impl Serialize for VarId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for VarId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for v in [VarId::alpha(3), VarId::beta(1), VarId::alpha0(), VarId::d(), VarId::aux(2)] {
            assert_eq!(v.to_string().parse::<VarId>().unwrap(), v);
        }
        assert!("a".parse::<VarId>().is_err());
        assert!("b0".parse::<VarId>().is_err());
        assert!("x1".parse::<VarId>().is_err());
    }

    #[test]
    fn precedence() {
        assert!(VarId::alpha(4) < VarId::beta(1));
        assert!(VarId::beta(9) < VarId::alpha0());
        assert!(VarId::alpha0() < VarId::d());
    }
}
