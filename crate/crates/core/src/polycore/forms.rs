//! Polynomial differential forms `Σ f_I dx_I`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::poly::{same_ring, Poly, PolyRing};
use super::scalar::{Coeff, Q};
use crate::error::{Error, Result};

/// Only strictly increasing index tuples are stored; antisymmetry is folded
/// into the coefficient sign.
#[derive(Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Vec<usize>, Poly>,
}

/// Sign of the shuffle that sorts `a ++ b`, or `None` if they share an index.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0usize;
    for &i in a {
        for &j in b {
            if i == j {
                return None;
            }
            if i > j {
                inversions += 1;
            }
        }
    }
    let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
    idx.sort_unstable();
    Some((idx, inversions % 2 == 1))
}

impl DifferentialForm {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        DifferentialForm {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(f: &Poly) -> Self {
        Self::monomial_form(f.clone(), vec![])
    }

    /// `dx_i`.
    pub fn dx(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial_form(Poly::one(ring), vec![i])
    }

    /// `f dx_{i1} ∧ ... ∧ dx_{ik}` for any (not necessarily sorted) indices.
    pub fn from_indices(f: &Poly, indices: &[usize]) -> Self {
        let mut out = Self::function(f);
        for &i in indices {
            out = out.wedge(&Self::dx(f.ring(), i));
        }
        out
    }

    fn monomial_form(f: Poly, idx: Vec<usize>) -> Self {
        let mut terms = BTreeMap::new();
        let ring = f.ring().clone();
        if !f.is_zero() {
            terms.insert(idx, f);
        }
        DifferentialForm { ring, terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Poly {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.ring))
    }

    fn add_term(&mut self, idx: Vec<usize>, f: Poly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&idx) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(idx, sum);
        }
    }

    fn check_ring(&self, rhs: &Self) -> Result<()> {
        if same_ring(&self.ring, &rhs.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                "differential forms over different rings".into(),
            ))
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_ring(rhs)?;
        let mut out = self.clone();
        for (i, f) in &rhs.terms {
            out.add_term(i.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&Q::from_i64(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(&self.ring);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), f.scale(c));
        }
        out
    }

    pub fn mul_function(&self, g: &Poly) -> Self {
        let mut out = Self::zero(&self.ring);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), f * g);
        }
        out
    }

    /// Exterior product, panicking on ring mismatch like the polynomial operators.
    pub fn wedge(&self, rhs: &Self) -> Self {
        self.check_ring(rhs).expect("forms over different rings");
        let mut out = Self::zero(&self.ring);
        for (a, f) in &self.terms {
            for (b, g) in &rhs.terms {
                if let Some((idx, odd)) = merge_sign(a, b) {
                    let p = f * g;
                    out.add_term(idx, if odd { -p } else { p });
                }
            }
        }
        out
    }

    /// De Rham differential.
    pub fn exterior_d(&self) -> Self {
        let n = self.ring.nvars();
        let mut out = Self::zero(&self.ring);
        for (idx, f) in &self.terms {
            for j in 0..n {
                let df = f.derivative(j);
                if df.is_zero() {
                    continue;
                }
                if let Some((merged, odd)) = merge_sign(&[j], idx) {
                    out.add_term(merged, if odd { -df } else { df });
                }
            }
        }
        out
    }

    /// Part of form degree `k`.
    pub fn component(&self, k: usize) -> Self {
        DifferentialForm {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| i.len() == k)
                .map(|(i, f)| (i.clone(), f.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|i| i.len()).max()
    }

    /// `Some(k)` when every term has form degree `k` (zero counts as any degree).
    pub fn pure_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|i| i.len());
        let first = it.next().unwrap_or(0);
        it.all(|k| k == first).then_some(first)
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        DifferentialForm {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| i.len() <= max_degree)
                .map(|(i, f)| (i.clone(), f.clone()))
                .collect(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.exterior_d().is_zero()
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Vec<usize>> = self.terms.keys().collect();
        keys.sort_by_key(|k| (k.len(), (*k).clone()));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|idx| {
                let c = &self.terms[idx];
                if idx.is_empty() {
                    return c.to_string();
                }
                let wedge: Vec<String> = idx
                    .iter()
                    .map(|&i| format!("d{}", self.ring.vars[i]))
                    .collect();
                let wedge = wedge.join("∧");
                let ct = c.to_string();
                if ct == "1" {
                    wedge
                } else if ct == "-1" {
                    format!("-{wedge}")
                } else if c.num_terms() == 1 {
                    format!("{ct}*{wedge}")
                } else {
                    format!("({ct})*{wedge}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DifferentialForm({self})")
    }
}
