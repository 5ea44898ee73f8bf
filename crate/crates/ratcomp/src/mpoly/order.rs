use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::VarId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Two blocks: the eliminated block is compared first. `inner` decides how
    /// each block is compared internally.
    BlockElim { inner: InnerOrder },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerOrder {
    Lex,
    GrevLex,
}

/// A monomial order together with a variable precedence.
///
/// `precedence` lists variables from most to least significant. Variables
/// that are not listed rank after all listed ones, in [`VarId`] order. For
/// block elimination, `block` holds the variables that are eliminated; they
/// always rank above the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Vec<VarId>,
    pub block: BTreeSet<VarId>,
}

impl MonomialOrder {
    pub fn lex(precedence: Vec<VarId>) -> Self {
        MonomialOrder { kind: OrderKind::Lex, precedence, block: BTreeSet::new() }
    }

    pub fn grevlex(precedence: Vec<VarId>) -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, precedence, block: BTreeSet::new() }
    }

    /// Block elimination with lex inside both blocks.
    pub fn block_elim(block: impl IntoIterator<Item = VarId>, precedence: Vec<VarId>) -> Self {
        MonomialOrder {
            kind: OrderKind::BlockElim { inner: InnerOrder::Lex },
            precedence,
            block: block.into_iter().collect(),
        }
    }

    pub fn with_inner(mut self, inner: InnerOrder) -> Self {
        if let OrderKind::BlockElim { .. } = self.kind {
            self.kind = OrderKind::BlockElim { inner };
        }
        self
    }

    /// The default order for case systems: betas, then `d`, eliminated first;
    /// alphas after, `a1 > a2 > ... > an > a0`.
    pub fn default_elim(vars: &BTreeSet<VarId>) -> Self {
        let block: BTreeSet<VarId> = vars.iter().copied().filter(|v| v.is_beta() || *v == VarId::d()).collect();
        Self::block_elim(block, Vec::new())
    }

    /// Arrange `vars` from most to least significant under this order.
    pub fn arrange(&self, vars: &BTreeSet<VarId>) -> (Vec<VarId>, usize) {
        let rank = |v: &VarId| -> (usize, VarId) {
            match self.precedence.iter().position(|w| w == v) {
                Some(p) => (p, *v),
                None => (usize::MAX, *v),
            }
        };
        let mut all: Vec<VarId> = vars.iter().copied().collect();
        all.sort_by_key(rank);
        match self.kind {
            OrderKind::BlockElim { .. } => {
                let (mut first, second): (Vec<VarId>, Vec<VarId>) =
                    all.into_iter().partition(|v| self.block.contains(v));
                let k = first.len();
                first.extend(second);
                (first, k)
            }
            _ => (all, 0),
        }
    }
}

/// Dense exponent-vector comparison for a fixed arrangement of variables.
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub vars: Vec<VarId>,
    pub kind: OrderKind,
    pub block: usize,
}

impl Ring {
    pub fn new(order: &MonomialOrder, vars: &BTreeSet<VarId>) -> Self {
        let (vars, block) = order.arrange(vars);
        Ring { vars, kind: order.kind, block }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => a.cmp(b),
            OrderKind::GrevLex => grevlex(a, b),
            OrderKind::BlockElim { inner } => {
                let k = self.block;
                let f = match inner {
                    InnerOrder::Lex => |x: &[u32], y: &[u32]| x.cmp(y),
                    InnerOrder::GrevLex => grevlex,
                };
                f(&a[..k], &b[..k]).then_with(|| f(&a[k..], &b[k..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}
