use std::fmt;

use serde::{Deserialize, Serialize};

use super::CaseError;

/// One candidate variety: which roots of `f` are poles of `h` (`s_inf`), which
/// are mapped to each `beta_j` (`blocks`), and the local multiplicities `l`.
///
/// Indices are 1-based root labels; `l[m - 1]` belongs to root `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseSpec {
    pub n: usize,
    pub t: usize,
    pub ksum_zero: bool,
    pub s_inf: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub l: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct CaseJson {
    n: usize,
    t: usize,
    ksum_zero: bool,
    s_inf: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    l: Vec<u32>,
    id: String,
}

impl CaseSpec {
    pub fn new(
        n: usize,
        ksum_zero: bool,
        s_inf: Vec<usize>,
        blocks: Vec<Vec<usize>>,
        l: Vec<u32>,
    ) -> Result<Self, CaseError> {
        let c = CaseSpec { n, t: blocks.len(), ksum_zero, s_inf, blocks, l };
        c.validate()?;
        Ok(c)
    }

    /// Structural checks: disjoint nonempty blocks covering `1..=n` with `s_inf`,
    /// and the regime rules for a vanishing exponent sum.
    pub fn validate(&self) -> Result<(), CaseError> {
        let bad = |m: &str| Err(CaseError::Invalid(format!("{}: {m}", self.id())));
        if self.l.len() != self.n {
            return bad("exponent tuple has wrong length");
        }
        if self.t != self.blocks.len() || self.t < 2 {
            return bad("need at least two blocks");
        }
        let mut seen = vec![false; self.n + 1];
        for &m in self.s_inf.iter().chain(self.blocks.iter().flatten()) {
            if m == 0 || m > self.n || seen[m] {
                return bad("blocks must partition 1..=n");
            }
            seen[m] = true;
        }
        if seen[1..].iter().any(|s| !s) {
            return bad("blocks must cover 1..=n");
        }
        if self.blocks.iter().any(Vec::is_empty) {
            return bad("empty block");
        }
        if self.ksum_zero && (!self.s_inf.is_empty() || self.t < 3) {
            return bad("vanishing exponent sum needs t >= 3 and no poles of h");
        }
        Ok(())
    }

    pub fn lm(&self, m: usize) -> u32 {
        self.l[m - 1]
    }

    /// `sigma_j`, the degree of the block polynomial `omega_j`.
    pub fn block_sum(&self, j: usize) -> u32 {
        self.blocks[j].iter().map(|&m| self.lm(m)).sum()
    }

    pub fn block_sums(&self) -> Vec<u32> {
        (0..self.t).map(|j| self.block_sum(j)).collect()
    }

    pub fn inf_sum(&self) -> u32 {
        self.s_inf.iter().map(|&m| self.lm(m)).sum()
    }

    /// `deg h`: the largest block degree, compared with the pole degree when
    /// the exponent sum is nonzero.
    pub fn deg_h(&self) -> u32 {
        let b = self.block_sums().into_iter().max().unwrap_or(0);
        if self.ksum_zero {
            b
        } else {
            b.max(self.inf_sum())
        }
    }

    /// Block index (0-based) containing root `m`, if any.
    pub fn block_of(&self, m: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&m))
    }

    pub fn is_zero_block(&self, j: usize) -> bool {
        self.blocks[j].iter().all(|&m| self.lm(m) == 0)
    }

    /// Number of roots that actually occur in `f` (nonzero local multiplicity).
    pub fn support_size(&self) -> usize {
        self.l.iter().filter(|&&x| x > 0).count()
    }

    /// Stable identifier, e.g. `n4-t2-nz-s_-b1.2_3.4-l1.1.1.1`.
    pub fn id(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".");
        let sinf = if self.s_inf.is_empty() { "_".to_string() } else { join(&self.s_inf) };
        let blocks = self.blocks.iter().map(|b| join(b)).collect::<Vec<_>>().join("_");
        let l = self.l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".");
        format!(
            "n{}-t{}-{}-s{}-b{}-l{}",
            self.n,
            self.t,
            if self.ksum_zero { "z" } else { "nz" },
            sinf,
            blocks,
            l
        )
    }

    /// Canonical ordering key: `(t, s_inf, blocks, l)`.
    pub fn sort_key(&self) -> (usize, Vec<usize>, Vec<Vec<usize>>, Vec<u32>) {
        (self.t, self.s_inf.clone(), self.blocks.clone(), self.l.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CaseJson {
            n: self.n,
            t: self.t,
            ksum_zero: self.ksum_zero,
            s_inf: self.s_inf.clone(),
            blocks: self.blocks.clone(),
            l: self.l.clone(),
            id: self.id(),
        })
        .expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, CaseError> {
        let c: CaseJson = serde_json::from_value(v.clone()).map_err(|e| CaseError::Invalid(e.to_string()))?;
        let spec = CaseSpec::new(c.n, c.ksum_zero, c.s_inf, c.blocks, c.l)?;
        if spec.t != c.t || spec.id() != c.id {
            return Err(CaseError::Invalid(format!("id mismatch: {}", c.id)));
        }
        Ok(spec)
    }
}

impl std::str::FromStr for CaseSpec {
    type Err = CaseError;

    /// Inverse of [`CaseSpec::id`].
    fn from_str(s: &str) -> Result<Self, CaseError> {
        let bad = || CaseError::Invalid(format!("malformed case id {s:?}"));
        let parts: Vec<&str> = s.split('-').collect();
        let [n, t, z, sinf, blocks, l] = parts[..] else { return Err(bad()) };
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        let list = |x: &str| -> Result<Vec<usize>, CaseError> { x.split('.').map(num).collect() };
        let n = num(n.strip_prefix('n').ok_or_else(bad)?)?;
        let t = num(t.strip_prefix('t').ok_or_else(bad)?)?;
        let ksum_zero = match z {
            "z" => true,
            "nz" => false,
            _ => return Err(bad()),
        };
        let sinf = sinf.strip_prefix('s').ok_or_else(bad)?;
        let s_inf = if sinf == "_" { Vec::new() } else { list(sinf)? };
        let blocks = blocks.strip_prefix('b').ok_or_else(bad)?.split('_').map(list).collect::<Result<Vec<_>, _>>()?;
        let l = l
            .strip_prefix('l')
            .ok_or_else(bad)?
            .split('.')
            .map(|x| x.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = CaseSpec::new(n, ksum_zero, s_inf, blocks, l)?;
        if spec.t != t {
            return Err(bad());
        }
        Ok(spec)
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_and_json() {
        let c = CaseSpec::new(4, false, vec![], vec![vec![1, 2], vec![3, 4]], vec![1, 1, 2, 2]).unwrap();
        assert_eq!(c.id(), "n4-t2-nz-s_-b1.2_3.4-l1.1.2.2");
        assert_eq!(c.id().parse::<CaseSpec>().unwrap(), c);
        assert!("n4-t3-nz-s_-b1.2_3.4-l1.1.2.2".parse::<CaseSpec>().is_err());
        assert_eq!(c.deg_h(), 4);
        let back = CaseSpec::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn invalid_cases() {
        assert!(CaseSpec::new(3, false, vec![], vec![vec![1], vec![1, 2, 3]], vec![1, 1, 1]).is_err());
        assert!(CaseSpec::new(3, true, vec![1], vec![vec![2], vec![3]], vec![1, 1, 1]).is_err());
        assert!(CaseSpec::new(3, false, vec![], vec![vec![1], vec![2]], vec![1, 1, 1]).is_err());
    }
}
