use std::sync::Arc;

use super::hilbert::{minimalize, monomial_ideal_numerator, HilbertSeries, Laurent, Length};
use super::matrix::PolyMatrix;
use crate::error::{Error, Result};
use crate::polycore::groebner::{module_groebner, module_lead};
use crate::polycore::{same_ring_checked, ModuleOrder, Monomial, MonomialOrder, Poly, PolyRing};

/// `coker(R)` for a relation matrix `R` whose columns are relations among
/// `rank` generators of degrees `shifts`.
///
/// Presentations are canonicalized on construction: zero relations are
/// dropped and every relation with a constant entry is used to eliminate a
/// generator, so the zero module always has rank 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    ring: Arc<PolyRing>,
    relations: PolyMatrix,
    shifts: Vec<i64>,
}

impl ModulePresentation {
    pub fn new(relations: PolyMatrix, shifts: Option<Vec<i64>>) -> Result<Self> {
        let rank = relations.nrows();
        let shifts = shifts.unwrap_or_else(|| vec![0; rank]);
        if shifts.len() != rank {
            return Err(Error::Invalid(format!(
                "{} generator shifts for a presentation of rank {rank}",
                shifts.len()
            )));
        }
        relations.column_degrees(&shifts)?;
        let mut p = ModulePresentation {
            ring: relations.ring().clone(),
            relations,
            shifts,
        };
        p.canonicalize();
        Ok(p)
    }

    /// `A / (gens)`.
    pub fn quotient(ring: &Arc<PolyRing>, gens: &[Poly]) -> Result<Self> {
        for g in gens {
            same_ring_checked(ring, g.ring())?;
        }
        Self::new(PolyMatrix::row(ring, gens), None)
    }

    /// The free module with generators in the given degrees.
    pub fn free(ring: &Arc<PolyRing>, shifts: Vec<i64>) -> Self {
        ModulePresentation {
            ring: ring.clone(),
            relations: PolyMatrix::zeros(ring, shifts.len(), 0),
            shifts,
        }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::free(ring, vec![])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_free(&self) -> bool {
        self.relations.ncols() == 0
    }

    fn canonicalize(&mut self) {
        self.relations = self.relations.without_zero_columns();
        while let Some((r, c)) = self.relations.find_unit() {
            self.relations = self.relations.eliminate_unit(r, c).without_zero_columns();
            self.shifts.remove(r);
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        same_ring_checked(&self.ring, &other.ring)?;
        let (r1, r2) = (self.rank(), other.rank());
        let mut cols = Vec::new();
        for c in self.relations.columns() {
            let mut v = c.clone();
            v.extend((0..r2).map(|_| Poly::zero(&self.ring)));
            cols.push(v);
        }
        for c in other.relations.columns() {
            let mut v: Vec<Poly> = (0..r1).map(|_| Poly::zero(&self.ring)).collect();
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        let mut shifts = self.shifts.clone();
        shifts.extend(&other.shifts);
        Self::new(
            PolyMatrix::from_columns(&self.ring, r1 + r2, cols),
            Some(shifts),
        )
    }

    /// `M ⊗ N = coker([R_M ⊗ 1 | 1 ⊗ R_N])`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        same_ring_checked(&self.ring, &other.ring)?;
        let a = self
            .relations
            .kron(&PolyMatrix::identity(&self.ring, other.rank()));
        let b = PolyMatrix::identity(&self.ring, self.rank()).kron(&other.relations);
        let shifts = self
            .shifts
            .iter()
            .flat_map(|s| other.shifts.iter().map(move |t| s + t))
            .collect();
        Self::new(a.hstack(&b), Some(shifts))
    }

    /// The graded twist `M(-s)`: every generator degree raised by `s`.
    pub fn shifted(&self, s: i64) -> Self {
        let mut out = self.clone();
        for x in &mut out.shifts {
            *x += s;
        }
        out
    }

    /// Leading monomials of the relation module, grouped by generator.
    pub fn leading_monomials(&self, order: &MonomialOrder) -> Result<Vec<Vec<Monomial>>> {
        let ord = ModuleOrder::top(order.clone());
        let gb = module_groebner(
            &self.ring,
            self.rank(),
            self.relations.columns(),
            &ord,
            None,
        )?;
        let mut by_comp = vec![Vec::new(); self.rank()];
        for g in &gb {
            if let Some((c, m)) = module_lead(g, &ord) {
                by_comp[c].push(m);
            }
        }
        Ok(by_comp.iter().map(|ms| minimalize(ms)).collect())
    }

    pub fn hilbert_series_with(&self, order: &MonomialOrder) -> Result<HilbertSeries> {
        let weights = self.ring.weights.clone();
        let mut num = Laurent::new();
        for (c, ms) in self.leading_monomials(order)?.iter().enumerate() {
            for (e, k) in monomial_ideal_numerator(ms, &weights) {
                *num.entry(e + self.shifts[c]).or_insert(0) += k;
            }
        }
        Ok(HilbertSeries::new(num, weights))
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        self.hilbert_series_with(&MonomialOrder::grevlex())
    }

    pub fn krull_dim(&self) -> Result<usize> {
        Ok(self.hilbert_series()?.krull_dim())
    }

    pub fn length(&self) -> Result<Length> {
        Ok(self.hilbert_series()?.length())
    }

    /// Number of standard monomials over all generators, `None` when
    /// infinite; an independent count of the length.
    pub fn standard_monomial_count(&self, order: &MonomialOrder) -> Result<Option<u64>> {
        let n = self.ring.nvars();
        let mut total = 0u64;
        for ms in self.leading_monomials(order)? {
            // Finite iff every variable has a pure power among the leads.
            let mut bounds = Vec::with_capacity(n);
            for i in 0..n {
                let pure = ms
                    .iter()
                    .filter(|m| m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                    .map(|m| m.0[i])
                    .min();
                match pure {
                    Some(b) => bounds.push(b),
                    None => return Ok(None),
                }
            }
            let mut stack = vec![Monomial::one(n)];
            let mut seen = std::collections::HashSet::new();
            while let Some(m) = stack.pop() {
                if !seen.insert(m.clone()) || ms.iter().any(|g| g.divides(&m)) {
                    continue;
                }
                total += 1;
                for i in 0..n {
                    if m.0[i] + 1 < bounds[i] {
                        stack.push(m.mul(&Monomial::var(n, i)));
                    }
                }
            }
        }
        Ok(Some(total))
    }
}
