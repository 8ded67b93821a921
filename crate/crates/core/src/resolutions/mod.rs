//! Syzygies, minimal free resolutions, complexes, homology and Hilbert
//! series of graded modules over a polynomial ring.
//!
//! The zero module is given Krull dimension 0 and length 0, so comparisons
//! of dimensions never need a special case.

mod complex;
mod hilbert;
mod matrix;
mod presentation;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

pub use complex::FreeComplex;
pub use hilbert::{monomial_ideal_numerator, HilbertSeries, Laurent, Length};
pub use matrix::{column_degree, PolyMatrix};
pub use presentation::ModulePresentation;

use crate::error::{Error, Result};
use crate::polycore::groebner::module_groebner;
use crate::polycore::{ModuleOrder, MonomialOrder, Poly};

/// Cooperative cancellation flag shared between a caller and a running
/// computation.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }

    pub(crate) fn flag(&self) -> &AtomicBool {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub struct ResolveOptions {
    pub order: MonomialOrder,
    pub max_length: usize,
    pub cancel: Option<CancelToken>,
}

impl ResolveOptions {
    pub fn new(max_length: usize) -> Self {
        ResolveOptions {
            order: MonomialOrder::grevlex(),
            max_length,
            cancel: None,
        }
    }

    fn flag(&self) -> Option<&AtomicBool> {
        self.cancel.as_ref().map(|c| c.flag())
    }
}

/// Generators of the module of relations among the columns of `m`, as the
/// columns of the returned matrix (`m · syz = 0`).
///
/// Computed by elimination: a position-over-term basis of the vectors
/// `(m_j, e_j)` contains a generating set of syzygies in the elements whose
/// first block vanishes.
pub fn syzygies(m: &PolyMatrix, order: &MonomialOrder) -> Result<PolyMatrix> {
    syzygies_with(m, order, None)
}

fn syzygies_with(
    m: &PolyMatrix,
    order: &MonomialOrder,
    cancel: Option<&AtomicBool>,
) -> Result<PolyMatrix> {
    let ring = m.ring();
    let (r, s) = (m.nrows(), m.ncols());
    if s == 0 {
        return Ok(PolyMatrix::zeros(ring, 0, 0));
    }
    let gens: Vec<Vec<Poly>> = (0..s)
        .map(|j| {
            let mut v = m.column(j).to_vec();
            v.extend((0..s).map(|k| {
                if k == j {
                    Poly::one(ring)
                } else {
                    Poly::zero(ring)
                }
            }));
            v
        })
        .collect();
    let ord = ModuleOrder::pot(order.clone());
    let gb = module_groebner(ring, r + s, &gens, &ord, cancel)?;
    let cols: Vec<Vec<Poly>> = gb
        .into_iter()
        .filter(|g| g[..r].iter().all(|p| p.is_zero()))
        .map(|g| g[r..].to_vec())
        .collect();
    let out = PolyMatrix::from_columns(ring, s, cols);
    debug_assert!(m.mul(&out)?.is_zero());
    Ok(out)
}

/// Syzygies of a presentation's relation columns; the input must be
/// homogeneous, which construction already guarantees.
pub fn presentation_syzygies(p: &ModulePresentation, order: &MonomialOrder) -> Result<PolyMatrix> {
    syzygies(p.relations(), order)
}

pub fn free_resolution(p: &ModulePresentation, max_length: usize) -> Result<FreeComplex> {
    free_resolution_with(p, &ResolveOptions::new(max_length))
}

/// Minimal graded free resolution `F_0 ← F_1 ← …` of `coker` of the
/// presentation, with `F_0` the generators.
///
/// Each step takes syzygies of the last differential and then removes unit
/// entries by Gaussian elimination: a unit at `(r, c)` of `d_{k+1}`
/// cancels the pair of basis elements, replaces `d_{k+1}` by its Schur
/// complement and drops column `r` of `d_k`.
pub fn free_resolution_with(p: &ModulePresentation, opts: &ResolveOptions) -> Result<FreeComplex> {
    let ring = p.ring();
    let mut shifts: Vec<Vec<i64>> = vec![p.shifts().to_vec()];
    let mut diffs: Vec<PolyMatrix> = Vec::new();
    let mut next = p.relations().clone();
    // One spare step: a redundant last syzygy set is cancelled one step later.
    let step_cap = opts.max_length.max(ring.nvars()) + 2;
    while next.ncols() > 0 {
        let src = next.column_degrees(shifts.last().unwrap())?;
        let degs = src.iter().map(|d| d.unwrap_or(0)).collect();
        diffs.push(next);
        shifts.push(degs);
        let t = diffs.len() - 1;
        while let Some((r, c)) = diffs[t].find_unit() {
            diffs[t] = diffs[t].eliminate_unit(r, c);
            shifts[t + 1].remove(c);
            shifts[t].remove(r);
            if t > 0 {
                diffs[t - 1] = diffs[t - 1].drop_col(r);
            }
        }
        if diffs[t].ncols() == 0 {
            diffs.pop();
            shifts.pop();
            break;
        }
        if diffs.len() > step_cap {
            return Err(Error::ResolutionTooLong(opts.max_length));
        }
        next = syzygies_with(&diffs[t], &opts.order, opts.flag())?;
    }
    if diffs.len() > opts.max_length || diffs.len() > ring.nvars() {
        return Err(Error::ResolutionTooLong(opts.max_length.min(ring.nvars())));
    }
    Ok(FreeComplex::from_parts_unchecked(ring, 0, shifts, diffs))
}

/// Subquotient `{u ∈ F : d u ∈ im b_prev} / (im d_in + im b_here)` of a
/// complex of cokernels, returned as a presentation.
struct Spot<'a> {
    shifts: &'a [i64],
    d_out: Option<&'a PolyMatrix>,
    b_prev: Option<&'a PolyMatrix>,
    d_in: Option<&'a PolyMatrix>,
    b_here: Option<&'a PolyMatrix>,
}

fn subquotient(
    ring: &Arc<crate::polycore::PolyRing>,
    spot: Spot<'_>,
    order: &MonomialOrder,
    cancel: Option<&AtomicBool>,
) -> Result<ModulePresentation> {
    let n = spot.shifts.len();
    let kernel = match spot.d_out {
        Some(d) if !d.is_zero() || spot.b_prev.is_some_and(|b| b.ncols() > 0) => {
            let big = match spot.b_prev {
                Some(b) => d.hstack(b),
                None => d.clone(),
            };
            syzygies_with(&big, order, cancel)?
                .select_rows(0..n)
                .without_zero_columns()
        }
        _ => PolyMatrix::identity(ring, n),
    };
    let k = kernel.ncols();
    if k == 0 {
        return Ok(ModulePresentation::zero(ring));
    }
    let gen_shifts: Vec<i64> = kernel
        .column_degrees(spot.shifts)?
        .into_iter()
        .map(|d| d.expect("nonzero kernel column"))
        .collect();
    let mut big = kernel;
    if let Some(d) = spot.d_in {
        big = big.hstack(d);
    }
    if let Some(b) = spot.b_here {
        big = big.hstack(b);
    }
    let rel = syzygies_with(&big, order, cancel)?.select_rows(0..k);
    ModulePresentation::new(rel, Some(gen_shifts))
}

fn check_index(c: &FreeComplex, i: i64) -> Result<()> {
    if i < c.lo() || i > c.hi() {
        return Err(Error::IndexOutOfRange {
            index: i,
            lo: c.lo(),
            hi: c.hi(),
        });
    }
    Ok(())
}

/// `H_i(C) = ker d_i / im d_{i+1}`.
pub fn homology(c: &FreeComplex, i: i64) -> Result<ModulePresentation> {
    homology_with(c, i, &MonomialOrder::grevlex(), None)
}

pub fn homology_with(
    c: &FreeComplex,
    i: i64,
    order: &MonomialOrder,
    cancel: Option<&CancelToken>,
) -> Result<ModulePresentation> {
    check_index(c, i)?;
    let spot = Spot {
        shifts: c.shifts_at(i).unwrap(),
        d_out: c.differential(i),
        b_prev: None,
        d_in: c.differential(i + 1),
        b_here: None,
    };
    subquotient(c.ring(), spot, order, cancel.map(|t| t.flag()))
}

/// `H_i(C ⊗ N)` for a module `N = coker(R_N)`: the terms are
/// `C_i ⊗ N = coker(1 ⊗ R_N)` and the maps are `d_i ⊗ 1`.
pub fn homology_tensor(
    c: &FreeComplex,
    n: &ModulePresentation,
    i: i64,
) -> Result<ModulePresentation> {
    homology_tensor_with(c, n, i, &MonomialOrder::grevlex(), None)
}

pub fn homology_tensor_with(
    c: &FreeComplex,
    n: &ModulePresentation,
    i: i64,
    order: &MonomialOrder,
    cancel: Option<&CancelToken>,
) -> Result<ModulePresentation> {
    check_index(c, i)?;
    crate::polycore::same_ring_checked(c.ring(), n.ring())?;
    let ring = c.ring();
    let s = n.rank();
    let id_s = PolyMatrix::identity(ring, s);
    let shifts: Vec<i64> = c
        .shifts_at(i)
        .unwrap()
        .iter()
        .flat_map(|a| n.shifts().iter().map(move |b| a + b))
        .collect();
    let rel = |k: i64| PolyMatrix::identity(ring, c.rank(k)).kron(n.relations());
    let d_out = c.differential(i).map(|d| d.kron(&id_s));
    let d_in = c.differential(i + 1).map(|d| d.kron(&id_s));
    let b_prev = (i > c.lo()).then(|| rel(i - 1));
    let b_here = rel(i);
    let spot = Spot {
        shifts: &shifts,
        d_out: d_out.as_ref(),
        b_prev: b_prev.as_ref(),
        d_in: d_in.as_ref(),
        b_here: Some(&b_here),
    };
    subquotient(ring, spot, order, cancel.map(|t| t.flag()))
}

#[cfg(test)]
mod tests;
