use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::exactnum::Rational;

use super::order::Ring;
use super::{Monomial, MonomialOrder, MultiPoly, VarId};

type Exps = Vec<u32>;

/// Polynomial with dense exponent vectors, terms sorted by decreasing monomial.
#[derive(Clone, Debug)]
struct GPoly {
    terms: Vec<(Exps, Rational)>,
}

impl GPoly {
    fn from_multi(p: &MultiPoly, ring: &Ring) -> GPoly {
        let pos: BTreeMap<VarId, usize> = ring.vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut terms: Vec<(Exps, Rational)> = p
            .terms()
            .map(|(m, c)| {
                let mut e = vec![0u32; ring.vars.len()];
                for &(v, k) in m.pairs() {
                    e[pos[&v]] = k;
                }
                (e, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        GPoly { terms }
    }

    fn to_multi(&self, ring: &Ring) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(e, c)| {
            let pairs = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (ring.vars[i], k)).collect();
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Exps {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&k| k == 0)
    }

    fn monic(mut self) -> GPoly {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip().expect("nonzero lead");
                for t in &mut self.terms {
                    t.1 = &t.1 * &inv;
                }
            }
        }
        self
    }

    /// `self - c * x^shift * q`
    fn sub_scaled(&self, c: &Rational, shift: &[u32], q: &GPoly, ring: &Ring) -> GPoly {
        let mut out = Vec::with_capacity(self.terms.len() + q.terms.len());
        let mut i = 0;
        let mut it = q.terms.iter().map(|(e, a)| (add_exps(e, shift), a * c)).peekable();
        loop {
            let a = self.terms.get(i);
            let b = it.peek();
            match (a, b) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    let (e, v) = it.next().unwrap();
                    out.push((e, -v));
                }
                (Some(x), Some(y)) => match ring.cmp(&x.0, &y.0) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let (e, v) = it.next().unwrap();
                        out.push((e, -v));
                    }
                    Ordering::Equal => {
                        let (e, v) = it.next().unwrap();
                        let s = &x.1 - &v;
                        if !s.is_zero() {
                            out.push((e, s));
                        }
                        i += 1;
                    }
                },
            }
        }
        GPoly { terms: out }
    }
}

fn add_exps(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sub_exps(b: &[u32], a: &[u32]) -> Exps {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Full reduction of `p` by `basis`. When `quots` is given it accumulates the
/// quotient for each basis element.
fn normal_form(p: &GPoly, basis: &[GPoly], ring: &Ring, mut quots: Option<&mut Vec<GPoly>>) -> GPoly {
    let mut p = p.clone();
    let mut rem: Vec<(Exps, Rational)> = Vec::new();
    while !p.terms.is_empty() {
        let (m, c) = p.terms[0].clone();
        let hit = basis.iter().position(|g| divides(g.lm(), &m));
        match hit {
            Some(k) => {
                let g = &basis[k];
                let coef = c.checked_div(g.lc()).expect("nonzero lead");
                let shift = sub_exps(&m, g.lm());
                p = p.sub_scaled(&coef, &shift, g, ring);
                if let Some(qs) = quots.as_deref_mut() {
                    let one = GPoly { terms: vec![(vec![0; ring.vars.len()], Rational::one())] };
                    qs[k] = qs[k].sub_scaled(&-coef, &shift, &one, ring);
                }
            }
            None => {
                rem.push(p.terms.remove(0));
            }
        }
    }
    GPoly { terms: rem }
}

fn spoly_g(a: &GPoly, b: &GPoly, ring: &Ring) -> GPoly {
    let l = lcm(a.lm(), b.lm());
    let sa = sub_exps(&l, a.lm());
    let sb = sub_exps(&l, b.lm());
    let zero = GPoly { terms: Vec::new() };
    let left = zero.sub_scaled(&-(a.lc().recip().expect("nonzero")), &sa, a, ring);
    left.sub_scaled(&b.lc().recip().expect("nonzero"), &sb, b, ring)
}

fn ring_for<'a>(polys: impl IntoIterator<Item = &'a MultiPoly>, order: &MonomialOrder) -> Ring {
    let mut vars = BTreeSet::new();
    for p in polys {
        vars.extend(p.vars());
    }
    Ring::new(order, &vars)
}

/// Normal form of `p` modulo `basis` (multivariate division with full reduction).
pub fn reduce(p: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> MultiPoly {
    reduce_with_quotients(p, basis, order).1
}

/// Division with recorded quotients: `p = sum q_i * basis_i + r`.
pub fn reduce_with_quotients(p: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> (Vec<MultiPoly>, MultiPoly) {
    let ring = ring_for(std::iter::once(p).chain(basis), order);
    let gb: Vec<GPoly> = basis.iter().filter(|b| !b.is_zero()).map(|b| GPoly::from_multi(b, &ring)).collect();
    let idx: Vec<usize> = basis.iter().enumerate().filter(|(_, b)| !b.is_zero()).map(|(i, _)| i).collect();
    let mut qs = vec![GPoly { terms: Vec::new() }; gb.len()];
    let r = normal_form(&GPoly::from_multi(p, &ring), &gb, &ring, Some(&mut qs));
    let mut out = vec![MultiPoly::zero(); basis.len()];
    for (k, q) in qs.iter().enumerate() {
        out[idx[k]] = q.to_multi(&ring);
    }
    (out, r.to_multi(&ring))
}

/// S-polynomial of two nonzero polynomials.
pub fn spoly(a: &MultiPoly, b: &MultiPoly, order: &MonomialOrder) -> MultiPoly {
    let ring = ring_for([a, b], order);
    spoly_g(&GPoly::from_multi(a, &ring), &GPoly::from_multi(b, &ring), &ring).to_multi(&ring)
}

/// Leading monomial under `order`.
pub fn leading_monomial(p: &MultiPoly, order: &MonomialOrder) -> Option<Monomial> {
    if p.is_zero() {
        return None;
    }
    let ring = ring_for([p], order);
    let g = GPoly::from_multi(p, &ring);
    let lead = GPoly { terms: vec![(g.lm().clone(), Rational::one())] };
    lead.to_multi(&ring).terms().next().map(|(m, _)| m.clone())
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
    seq: usize,
}

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// Pairs are selected by smallest lcm, ties broken first-in-first-out; the
/// coprime and chain criteria discard pairs. The result is monic, auto-reduced
/// and sorted by decreasing leading monomial. `[1]` signals the unit ideal.
pub fn buchberger(gens: &[MultiPoly], order: &MonomialOrder) -> Vec<MultiPoly> {
    let ring = ring_for(gens, order);
    let mut g: Vec<GPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut seq = 0usize;

    let mut add = |p: GPoly, g: &mut Vec<GPoly>, pairs: &mut Vec<Pair>, pending: &mut BTreeSet<(usize, usize)>| {
        let k = g.len();
        for (i, gi) in g.iter().enumerate() {
            pairs.push(Pair { i, j: k, lcm: lcm(gi.lm(), p.lm()), seq });
            pending.insert((i, k));
            seq += 1;
        }
        g.push(p);
    };

    for p in gens {
        if p.is_zero() {
            continue;
        }
        let h = normal_form(&GPoly::from_multi(p, &ring), &g, &ring, None);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return vec![MultiPoly::one()];
        }
        add(h, &mut g, &mut pairs, &mut pending);
    }

    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let o = ring.cmp(&pairs[k].lcm, &pairs[best].lcm);
            if o == Ordering::Less || (o == Ordering::Equal && pairs[k].seq < pairs[best].seq) {
                best = k;
            }
        }
        let pr = pairs.swap_remove(best);
        pending.remove(&(pr.i, pr.j));
        if coprime(g[pr.i].lm(), g[pr.j].lm()) {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != pr.i
                && k != pr.j
                && divides(g[k].lm(), &pr.lcm)
                && !pending.contains(&(pr.i.min(k), pr.i.max(k)))
                && !pending.contains(&(pr.j.min(k), pr.j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly_g(&g[pr.i], &g[pr.j], &ring);
        let h = normal_form(&s, &g, &ring, None);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return vec![MultiPoly::one()];
        }
        add(h, &mut g, &mut pairs, &mut pending);
    }

    // minimal basis: drop members whose lead is divisible by another lead
    let mut keep: Vec<GPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    // auto-reduction
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<GPoly> = keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
        reduced.push(normal_form(&keep[i], &others, &ring, None).monic());
    }
    reduced.sort_by(|a, b| ring.cmp(b.lm(), a.lm()));
    reduced.iter().map(|p| p.to_multi(&ring)).collect()
}

/// True when `1` lies in the ideal.
pub fn is_unit_ideal(gens: &[MultiPoly], order: &MonomialOrder) -> bool {
    let gb = buchberger(gens, order);
    gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero()
}

/// Generators of the elimination ideal `I ∩ Q[vars \ drop]`.
pub fn eliminate(gens: &[MultiPoly], drop: &BTreeSet<VarId>) -> Vec<MultiPoly> {
    let order = MonomialOrder::block_elim(drop.iter().copied(), Vec::new());
    buchberger(gens, &order).into_iter().filter(|p| p.vars().is_disjoint(drop)).collect()
}

/// Saturation `I : f^inf`, the part of the ideal away from `f = 0`, via the
/// Rabinowitsch variable `u`: eliminate `u` from `I + <u f - 1>`.
pub fn saturate(gens: &[MultiPoly], f: &MultiPoly) -> Vec<MultiPoly> {
    let u = VarId::aux(999);
    let mut all = gens.to_vec();
    all.push(MultiPoly::var(u).mul(f).sub(&MultiPoly::one()));
    eliminate(&all, &[u].into())
}

/// Buchberger's criterion: every generator and every S-polynomial reduces to zero.
pub fn check_groebner(gens: &[MultiPoly], basis: &[MultiPoly], order: &MonomialOrder) -> bool {
    if gens.iter().any(|p| !reduce(p, basis, order).is_zero()) {
        return false;
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !reduce(&spoly(&basis[i], &basis[j], order), basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Equality of ideals given two Groebner bases (or any generators): each side
/// reduces to zero modulo a Groebner basis of the other.
pub fn same_ideal(a: &[MultiPoly], b: &[MultiPoly], order: &MonomialOrder) -> bool {
    let ga = buchberger(a, order);
    let gb = buchberger(b, order);
    a.iter().all(|p| reduce(p, &gb, order).is_zero()) && b.iter().all(|p| reduce(p, &ga, order).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    // a1 plays x, a2 plays y
    fn xy_lex() -> MonomialOrder {
        MonomialOrder::lex(vec![VarId::alpha(1), VarId::alpha(2)])
    }

    #[test]
    fn reduce_example() {
        assert_eq!(reduce(&mp("a1^2*a2"), &[mp("a1*a2 - 1")], &xy_lex()), mp("a1"));
        let p = mp("a1^3 - a2*a1 + 2");
        assert!(reduce(&p, std::slice::from_ref(&p), &xy_lex()).is_zero());
    }

    #[test]
    fn quotients_certify() {
        let basis = vec![mp("a1*a2 - 1"), mp("a2^2 - a1")];
        let p = mp("a1^3*a2^2 + a2^3 - 7");
        let (qs, r) = reduce_with_quotients(&p, &basis, &xy_lex());
        let mut acc = r.clone();
        for (q, b) in qs.iter().zip(&basis) {
            acc = acc.add(&q.mul(b));
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn textbook_basis() {
        let gb = buchberger(&[mp("a1^2 - a2"), mp("a1*a2 - 1")], &xy_lex());
        assert_eq!(gb, vec![mp("a1 - a2^2"), mp("a2^3 - 1")]);
        assert!(check_groebner(&[mp("a1^2 - a2"), mp("a1*a2 - 1")], &gb, &xy_lex()));
    }

    #[test]
    fn saturation_drops_component() {
        // <x y> away from y = 0 is <x>
        let sat = saturate(&[mp("a1*a2")], &mp("a2"));
        assert_eq!(sat, vec![mp("a1")]);
    }

    #[test]
    fn unit_ideal() {
        assert!(is_unit_ideal(&[mp("a1"), mp("a1 - 1")], &xy_lex()));
        assert_eq!(buchberger(&[mp("a1")], &xy_lex()), vec![mp("a1")]);
        assert!(buchberger(&[], &xy_lex()).is_empty());
    }

    #[test]
    fn eliminate_free_beta() {
        let drop: BTreeSet<VarId> = [VarId::beta(1)].into();
        assert!(eliminate(&[mp("b1 - a1")], &drop).is_empty());
    }
}
