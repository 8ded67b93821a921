//! Normalized Hochschild chains of polynomial algebras, the bar boundary,
//! the HKR map to differential forms and the shuffle product.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polycore::parse::monomial_text;
use crate::polycore::scalar::{factorial, fmt_q, q, Q};
use crate::polycore::{same_ring_checked, DifferentialForm, Monomial, Poly, PolyRing};

/// A chain of degree `r`: a linear combination of monomial tensors
/// `m_0 ⊗ m_1 ⊗ … ⊗ m_r`. Tensors with a constant entry in positions
/// `1..=r` are dropped (normalized complex).
#[derive(Clone, PartialEq, Eq)]
pub struct HochschildChain {
    ring: Arc<PolyRing>,
    degree: usize,
    terms: BTreeMap<Vec<Monomial>, Q>,
}

impl HochschildChain {
    pub fn zero(ring: &Arc<PolyRing>, degree: usize) -> Self {
        HochschildChain {
            ring: ring.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `b_0 ⊗ b_1 ⊗ … ⊗ b_r`, expanded multilinearly.
    pub fn elementary(entries: &[Poly]) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::Degree("a chain needs at least one entry".into()))?;
        let ring = first.ring().clone();
        for e in entries {
            same_ring_checked(&ring, e.ring())?;
        }
        let mut partial: Vec<(Vec<Monomial>, Q)> = vec![(Vec::new(), q(1))];
        for e in entries {
            let mut next = Vec::new();
            for (ms, c) in &partial {
                for (m, a) in e.terms() {
                    let mut ms2 = ms.clone();
                    ms2.push(m.clone());
                    next.push((ms2, c * a));
                }
            }
            partial = next;
        }
        let mut out = Self::zero(&ring, entries.len() - 1);
        for (ms, c) in partial {
            out.add_term(ms, c);
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Q)> {
        self.terms.iter()
    }

    fn add_term(&mut self, ms: Vec<Monomial>, c: Q) {
        if c == q(0) || ms[1..].iter().any(|m| m.is_one()) {
            return;
        }
        match self.terms.entry(ms) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == q(0) {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        same_ring_checked(&self.ring, &rhs.ring)?;
        if self.degree != rhs.degree {
            return Err(Error::Degree(format!(
                "chains of degree {} and {}",
                self.degree, rhs.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (ms, c) in &rhs.terms {
            out.add_term(ms.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(&self.ring, self.degree);
        for (ms, a) in &self.terms {
            out.add_term(ms.clone(), a * c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&q(-1)))
    }

    /// `b(a_0 ⊗ … ⊗ a_r) = Σ_{i<r} (-1)^i … ⊗ a_i a_{i+1} ⊗ … + (-1)^r a_r a_0 ⊗ a_1 ⊗ … ⊗ a_{r-1}`.
    pub fn boundary(&self) -> Result<Self> {
        let r = self.degree;
        if r == 0 {
            return Err(Error::Degree(
                "the boundary of a degree-0 chain is undefined".into(),
            ));
        }
        let mut out = Self::zero(&self.ring, r - 1);
        for (ms, c) in &self.terms {
            for i in 0..r {
                let mut t: Vec<Monomial> = Vec::with_capacity(r);
                t.extend_from_slice(&ms[..i]);
                t.push(ms[i].mul(&ms[i + 1]));
                t.extend_from_slice(&ms[i + 2..]);
                out.add_term(t, if i % 2 == 0 { c.clone() } else { -c });
            }
            let mut t = vec![ms[r].mul(&ms[0])];
            t.extend_from_slice(&ms[1..r]);
            out.add_term(t, if r % 2 == 0 { c.clone() } else { -c });
        }
        Ok(out)
    }

    /// HKR: `b_0 ⊗ … ⊗ b_r ↦ (1/r!) b_0 db_1 ∧ … ∧ db_r`.
    pub fn hkr(&self) -> DifferentialForm {
        let mut out = DifferentialForm::zero(&self.ring);
        let inv = Q::new(1.into(), factorial(self.degree as u32));
        for (ms, c) in &self.terms {
            let mono = |m: &Monomial| Poly::term(&self.ring, m.clone(), q(1));
            let mut w = DifferentialForm::function(&mono(&ms[0]).scale(&(c * &inv)));
            for m in &ms[1..] {
                w = w.wedge(&DifferentialForm::function(&mono(m)).exterior_d());
            }
            out = out.add(&w).expect("same ring");
        }
        out
    }

    /// Shuffle product: head `a_0 b_0`, tails summed over `(p, q)`-shuffles
    /// with their signs.
    pub fn shuffle(&self, rhs: &Self) -> Result<Self> {
        same_ring_checked(&self.ring, &rhs.ring)?;
        let (p, qd) = (self.degree, rhs.degree);
        let shuffles = shuffles(p, qd);
        let mut out = Self::zero(&self.ring, p + qd);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let c = ca * cb;
                for (slots, odd) in &shuffles {
                    let mut t = vec![a[0].mul(&b[0])];
                    let (mut ia, mut ib) = (1, 1);
                    for &from_a in slots {
                        if from_a {
                            t.push(a[ia].clone());
                            ia += 1;
                        } else {
                            t.push(b[ib].clone());
                            ib += 1;
                        }
                    }
                    out.add_term(t, if *odd { -&c } else { c.clone() });
                }
            }
        }
        Ok(out)
    }
}

/// All `(p, q)`-shuffles as slot patterns (`true` = from the left factor)
/// with the parity of the permutation.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<bool>, bool)> {
    fn rec(p: usize, q: usize, cur: &mut Vec<bool>, inv: usize, out: &mut Vec<(Vec<bool>, bool)>) {
        if p == 0 && q == 0 {
            out.push((cur.clone(), inv % 2 == 1));
            return;
        }
        if p > 0 {
            cur.push(true);
            rec(p - 1, q, cur, inv, out);
            cur.pop();
        }
        if q > 0 {
            cur.push(false);
            // Every left entry still to come crosses this right entry.
            rec(p, q - 1, cur, inv + p, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(p, q, &mut Vec::new(), 0, &mut out);
    out
}

impl fmt::Display for HochschildChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let vars = &self.ring.vars;
        for (k, (ms, c)) in self.terms.iter().enumerate() {
            let text = fmt_q(c);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            let parts: Vec<String> = ms
                .iter()
                .map(|m| {
                    if m.is_one() {
                        "1".into()
                    } else {
                        monomial_text(m, vars)
                    }
                })
                .collect();
            f.write_str(&parts.join("⊗"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for HochschildChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HochschildChain[{}]({self})", self.degree)
    }
}
