//! Buchberger's algorithm for submodules of free modules `A^r`.
//!
//! Ideals are the rank-one case. Module terms are `(component, monomial)`
//! pairs compared by an integer key, which is linear in the exponents so a
//! shift by a monomial is a vector addition on the key.

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use super::monomial::{Monomial, MonomialOrder};
use super::poly::{same_ring, MultiPoly, PolyRing};
use super::scalar::{Exact, Q};
use crate::error::{Error, Result};

/// Term order on `A^r`: position-over-term (component first, lower index
/// larger) or term-over-position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub pot: bool,
}

impl ModuleOrder {
    pub fn pot(mono: MonomialOrder) -> Self {
        ModuleOrder { mono, pot: true }
    }

    pub fn top(mono: MonomialOrder) -> Self {
        ModuleOrder { mono, pot: false }
    }

    pub(crate) fn key(&self, comp: usize, m: &Monomial) -> Vec<i64> {
        let mk = self.mono.key(m);
        let c = -(comp as i64);
        if self.pot {
            std::iter::once(c).chain(mk).collect()
        } else {
            mk.into_iter().chain(std::iter::once(c)).collect()
        }
    }

    fn shift_key(&self, m: &Monomial) -> Vec<i64> {
        self.key(0, m)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term<C> {
    pub key: Vec<i64>,
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: C,
}

/// Element of `A^r` with terms sorted ascending by key (leading term last).
#[derive(Clone, Debug)]
pub(crate) struct ModVec<C> {
    pub terms: Vec<Term<C>>,
}

fn add_keys(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<C: Exact> ModVec<C> {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    pub fn from_components(comps: &[MultiPoly<C>], ord: &ModuleOrder) -> Self {
        let mut terms: Vec<Term<C>> = comps
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.terms().map(move |(m, c)| Term {
                    key: ord.key(i, m),
                    comp: i,
                    mono: m.clone(),
                    coeff: c.clone(),
                })
            })
            .collect();
        terms.sort_by(|a, b| a.key.cmp(&b.key));
        ModVec { terms }
    }

    pub fn to_components(&self, rank: usize, ring: &Arc<PolyRing>) -> Vec<MultiPoly<C>> {
        let mut out = vec![MultiPoly::zero(ring); rank];
        for t in &self.terms {
            out[t.comp].add_term(t.mono.clone(), t.coeff.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term<C>> {
        self.terms.last()
    }

    pub fn scale(&mut self, c: &C) {
        for t in &mut self.terms {
            t.coeff = t.coeff.mul(c);
        }
    }

    pub fn make_monic(&mut self) {
        if let Some(inv) = self.lead().and_then(|t| t.coeff.inv()) {
            self.scale(&inv);
        }
    }

    /// `self - c * m * other`.
    pub fn sub_shifted(
        &self,
        c: &C,
        m: &Monomial,
        other: &ModVec<C>,
        ord: &ModuleOrder,
    ) -> ModVec<C> {
        let sk = ord.shift_key(m);
        let shifted = other.terms.iter().map(|t| Term {
            key: add_keys(&t.key, &sk),
            comp: t.comp,
            mono: t.mono.mul(m),
            coeff: t.coeff.mul(c).neg(),
        });
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.key.cmp(&y.key) {
                    std::cmp::Ordering::Less => out.push(a.next().unwrap()),
                    std::cmp::Ordering::Greater => out.push(b.next().unwrap()),
                    std::cmp::Ordering::Equal => {
                        let mut x = a.next().unwrap();
                        let y = b.next().unwrap();
                        x.coeff = x.coeff.add(&y.coeff);
                        if !x.coeff.is_zero() {
                            out.push(x);
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        ModVec { terms: out }
    }
}

fn find_reducer<'a, C: Exact>(t: &Term<C>, basis: &'a [ModVec<C>]) -> Option<&'a ModVec<C>> {
    basis.iter().find(|g| {
        g.lead()
            .is_some_and(|l| l.comp == t.comp && l.mono.divides(&t.mono))
    })
}

/// Reduce only while the leading term is reducible.
pub(crate) fn lead_reduce<C: Exact>(
    mut f: ModVec<C>,
    basis: &[ModVec<C>],
    ord: &ModuleOrder,
) -> ModVec<C> {
    while let Some(t) = f.lead() {
        let Some(g) = find_reducer(t, basis) else {
            break;
        };
        let gl = g.lead().unwrap();
        let c = t.coeff.div(&gl.coeff).expect("monic basis");
        let m = gl.mono.quotient_of(&t.mono);
        f = f.sub_shifted(&c, &m, g, ord);
    }
    f
}

/// Full reduction: the remainder has no term divisible by a basis lead.
pub(crate) fn full_reduce<C: Exact>(
    mut f: ModVec<C>,
    basis: &[ModVec<C>],
    ord: &ModuleOrder,
) -> ModVec<C> {
    let mut rem: Vec<Term<C>> = Vec::new();
    while let Some(t) = f.lead() {
        match find_reducer(t, basis) {
            Some(g) => {
                let gl = g.lead().unwrap();
                let c = t.coeff.div(&gl.coeff).expect("nonzero lead");
                let m = gl.mono.quotient_of(&t.mono);
                f = f.sub_shifted(&c, &m, g, ord);
            }
            None => rem.push(f.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    ModVec { terms: rem }
}

struct Pair {
    i: usize,
    j: usize,
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
///
/// Pairs are processed smallest-lcm first (normal strategy). Pairs are
/// skipped by the chain criterion, and in rank one also by the coprime
/// leading-monomial criterion.
pub(crate) fn groebner<C: Exact>(
    gens: Vec<ModVec<C>>,
    ord: &ModuleOrder,
    rank: usize,
    cancel: Option<&AtomicBool>,
) -> Result<Vec<ModVec<C>>> {
    let mut basis: Vec<ModVec<C>> = Vec::new();
    let mut queue: BTreeSet<(Vec<i64>, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<ModVec<C>>,
                queue: &mut BTreeSet<(Vec<i64>, usize, usize)>,
                pending: &mut HashSet<(usize, usize)>,
                mut g: ModVec<C>| {
        g.make_monic();
        let j = basis.len();
        let lj = g.lead().unwrap().clone();
        for (i, b) in basis.iter().enumerate() {
            let li = b.lead().unwrap();
            if li.comp != lj.comp {
                continue;
            }
            if rank == 1 && li.mono.coprime(&lj.mono) {
                continue;
            }
            let l = li.mono.lcm(&lj.mono);
            queue.insert((ord.key(lj.comp, &l), i, j));
            pending.insert((i, j));
        }
        basis.push(g);
    };

    for g in gens {
        let g = lead_reduce(g, &basis, ord);
        if !g.is_zero() {
            push(&mut basis, &mut queue, &mut pending, g);
        }
    }

    while let Some(entry) = queue.pop_first() {
        if cancel.is_some_and(|c| c.load(AtomicOrdering::Relaxed)) {
            return Err(Error::Cancelled);
        }
        let (_, i, j) = entry;
        let pair = Pair { i, j };
        pending.remove(&(pair.i, pair.j));
        let li = basis[pair.i].lead().unwrap().clone();
        let lj = basis[pair.j].lead().unwrap().clone();
        let l = li.mono.lcm(&lj.mono);
        let chain = (0..basis.len()).any(|k| {
            if k == pair.i || k == pair.j {
                return false;
            }
            let lk = basis[k].lead().unwrap();
            lk.comp == li.comp
                && lk.mono.divides(&l)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        // S-vector: (l/lm_i) g_i - (l/lm_j) g_j with monic leads.
        let mi = li.mono.quotient_of(&l);
        let mj = lj.mono.quotient_of(&l);
        let s = ModVec::zero()
            .sub_shifted(&C::one().neg(), &mi, &basis[pair.i], ord)
            .sub_shifted(&C::one(), &mj, &basis[pair.j], ord);
        let h = lead_reduce(s, &basis, ord);
        if !h.is_zero() {
            push(&mut basis, &mut queue, &mut pending, h);
        }
    }

    Ok(interreduce(basis, ord))
}

fn interreduce<C: Exact>(basis: Vec<ModVec<C>>, ord: &ModuleOrder) -> Vec<ModVec<C>> {
    // Keep one element per minimal leading term.
    let mut minimal: Vec<ModVec<C>> = Vec::new();
    for (a, g) in basis.iter().enumerate() {
        let la = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(b, h)| {
            let lb = h.lead().unwrap();
            b != a
                && lb.comp == la.comp
                && lb.mono.divides(&la.mono)
                && (lb.mono != la.mono || b < a)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let mut g = minimal[k].clone();
        let lead = g.terms.pop().unwrap();
        let others: Vec<ModVec<C>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, h)| h.clone())
            .collect();
        let mut tail = full_reduce(g, &others, ord);
        tail.terms.push(lead);
        tail.make_monic();
        out.push(tail);
    }
    out.sort_by(|a, b| b.lead().unwrap().key.cmp(&a.lead().unwrap().key));
    out
}

/// Finitely generated ideal with an optional write-once Gröbner basis cache.
#[derive(Debug)]
pub struct Ideal<C: Exact = Q> {
    ring: Arc<PolyRing>,
    gens: Vec<MultiPoly<C>>,
    basis: OnceLock<(MonomialOrder, Vec<MultiPoly<C>>)>,
}

impl<C: Exact> Clone for Ideal<C> {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            basis,
        }
    }
}

impl<C: Exact> Ideal<C> {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<MultiPoly<C>>) -> Result<Self> {
        for g in &gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch(
                    "generator outside the ideal's ring".into(),
                ));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            basis: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly<C>] {
        &self.gens
    }

    /// The cached basis, if one was computed for `order`.
    pub fn cached_basis(&self, order: &MonomialOrder) -> Option<&[MultiPoly<C>]> {
        self.basis
            .get()
            .filter(|(o, _)| o == order)
            .map(|(_, b)| b.as_slice())
    }

    pub fn cached_order(&self) -> Option<&MonomialOrder> {
        self.basis.get().map(|(o, _)| o)
    }

    /// Reduced Gröbner basis for `order`; cached on first use.
    pub fn groebner_basis(&self, order: &MonomialOrder) -> Result<Vec<MultiPoly<C>>> {
        if let Some(b) = self.cached_basis(order) {
            return Ok(b.to_vec());
        }
        let b = compute_ideal_basis(&self.ring, &self.gens, order)?;
        let _ = self.basis.set((order.clone(), b.clone()));
        Ok(b)
    }

    /// Membership by normal form; computes (and caches) a grevlex basis if needed.
    pub fn contains(&self, f: &MultiPoly<C>) -> Result<bool> {
        let order = self.cached_order().cloned().unwrap_or_default();
        self.groebner_basis(&order)?;
        Ok(normal_form(f, self, &order)?.is_zero())
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(&self, order: &MonomialOrder) -> Result<Vec<Monomial>> {
        Ok(self
            .groebner_basis(order)?
            .iter()
            .filter_map(|g| g.leading_term(order).map(|(m, _)| m.clone()))
            .collect())
    }
}

fn compute_ideal_basis<C: Exact>(
    ring: &Arc<PolyRing>,
    gens: &[MultiPoly<C>],
    order: &MonomialOrder,
) -> Result<Vec<MultiPoly<C>>> {
    let ord = ModuleOrder::pot(order.clone());
    let vecs: Vec<ModVec<C>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ModVec::from_components(std::slice::from_ref(g), &ord))
        .collect();
    let gb = groebner(vecs, &ord, 1, None)?;
    Ok(gb
        .iter()
        .map(|v| v.to_components(1, ring).pop().unwrap())
        .collect())
}

/// Compute a reduced Gröbner basis and return the ideal with it cached.
pub fn buchberger<C: Exact>(gens: &[MultiPoly<C>], order: &MonomialOrder) -> Result<Ideal<C>> {
    let ring = gens
        .first()
        .ok_or_else(|| Error::Invalid("empty generator list".into()))?
        .ring()
        .clone();
    let ideal = Ideal::new(&ring, gens.to_vec())?;
    ideal.groebner_basis(order)?;
    Ok(ideal)
}

/// Remainder of `f` on division by the cached basis of `ideal` for `order`.
pub fn normal_form<C: Exact>(
    f: &MultiPoly<C>,
    ideal: &Ideal<C>,
    order: &MonomialOrder,
) -> Result<MultiPoly<C>> {
    if !same_ring(f.ring(), ideal.ring()) {
        return Err(Error::RingMismatch(
            "polynomial and ideal live in different rings".into(),
        ));
    }
    let basis = ideal.cached_basis(order).ok_or(Error::MissingBasis)?;
    let ord = ModuleOrder::pot(order.clone());
    let bv: Vec<ModVec<C>> = basis
        .iter()
        .map(|g| ModVec::from_components(std::slice::from_ref(g), &ord))
        .collect();
    let r = full_reduce(
        ModVec::from_components(std::slice::from_ref(f), &ord),
        &bv,
        &ord,
    );
    Ok(r.to_components(1, f.ring()).pop().unwrap())
}

/// Gröbner basis of a submodule of `A^rank`, given as component vectors.
pub fn module_groebner<C: Exact>(
    ring: &Arc<PolyRing>,
    rank: usize,
    gens: &[Vec<MultiPoly<C>>],
    ord: &ModuleOrder,
    cancel: Option<&AtomicBool>,
) -> Result<Vec<Vec<MultiPoly<C>>>> {
    let vecs = gens
        .iter()
        .map(|g| ModVec::from_components(g, ord))
        .filter(|v| !v.is_zero())
        .collect();
    let gb = groebner(vecs, ord, rank, cancel)?;
    Ok(gb.iter().map(|v| v.to_components(rank, ring)).collect())
}

/// Leading `(component, monomial)` of a module element.
pub fn module_lead<C: Exact>(v: &[MultiPoly<C>], ord: &ModuleOrder) -> Option<(usize, Monomial)> {
    let mv = ModVec::from_components(v, ord);
    mv.lead().map(|t| (t.comp, t.mono.clone()))
}

/// Remainder of a module element against a Gröbner basis (component form).
pub fn module_normal_form<C: Exact>(
    ring: &Arc<PolyRing>,
    v: &[MultiPoly<C>],
    basis: &[Vec<MultiPoly<C>>],
    ord: &ModuleOrder,
) -> Vec<MultiPoly<C>> {
    let bv: Vec<ModVec<C>> = basis
        .iter()
        .map(|g| ModVec::from_components(g, ord))
        .collect();
    full_reduce(ModVec::from_components(v, ord), &bv, ord).to_components(v.len(), ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse::{parse_poly, parse_polys};
    use crate::polycore::poly::Poly;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y"])
    }

    #[test]
    fn normal_form_by_hand() {
        let r = ring2();
        let g = parse_polys(&["x^2 - y", "y^2 - 1"], &r).unwrap();
        let ideal = buchberger(&g, &MonomialOrder::grevlex()).unwrap();
        let f = parse_poly("x^2*y", &r).unwrap();
        assert_eq!(
            normal_form(&f, &ideal, &MonomialOrder::grevlex())
                .unwrap()
                .to_string(),
            "1"
        );
        let zero = Poly::zero(&r);
        assert!(normal_form(&zero, &ideal, &MonomialOrder::grevlex())
            .unwrap()
            .is_zero());
        let comb = parse_poly("(x + 3)*(x^2 - y) - y*(y^2 - 1)", &r).unwrap();
        assert!(normal_form(&comb, &ideal, &MonomialOrder::grevlex())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn missing_basis_and_ring_mismatch() {
        let r = ring2();
        let ideal = Ideal::new(&r, parse_polys(&["x"], &r).unwrap()).unwrap();
        let f = parse_poly("x*y", &r).unwrap();
        assert_eq!(
            normal_form(&f, &ideal, &MonomialOrder::grevlex()),
            Err(Error::MissingBasis)
        );
        let other = PolyRing::new(&["u"]);
        let g = parse_poly("u", &other).unwrap();
        ideal.groebner_basis(&MonomialOrder::grevlex()).unwrap();
        assert!(matches!(
            normal_form(&g, &ideal, &MonomialOrder::grevlex()),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn reduced_basis_examples() {
        let r = ring2();
        let o = MonomialOrder::grevlex();
        let b = buchberger(&parse_polys(&["x", "y"], &r).unwrap(), &o).unwrap();
        let txt: Vec<String> = b
            .groebner_basis(&o)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(txt, vec!["x", "y"]);

        let b = buchberger(&parse_polys(&["x^2 - y", "x*y - 1"], &r).unwrap(), &o).unwrap();
        let txt: Vec<String> = b
            .groebner_basis(&o)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert!(txt.contains(&"y^2 - x".to_string()), "{txt:?}");

        let b = buchberger(&parse_polys(&["3*x^2 - 6*y"], &r).unwrap(), &o).unwrap();
        let txt: Vec<String> = b
            .groebner_basis(&o)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(txt, vec!["x^2 - 2*y"]);
    }

    #[test]
    fn unit_ideal() {
        let r = ring2();
        let o = MonomialOrder::lex();
        let b = buchberger(&parse_polys(&["x*y - 1", "x"], &r).unwrap(), &o).unwrap();
        let gb = b.groebner_basis(&o).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].to_string(), "1");
    }
}
