//! Serre's intersection multiplicity `χ(M, N) = Σ (-1)^i ℓ(Tor_i(M, N))`
//! for graded modules over a polynomial ring, its classification against
//! the dimension inequality, and the two Euler characteristics of
//! `E ⊗ F` and `E* ⊗ F` built from free resolutions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::same_ring_checked;
use crate::resolutions::{
    free_resolution_with, homology_tensor_with, homology_with, FreeComplex, Length,
    ModulePresentation, ResolveOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Proper,
    NonProper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConjectureStatus {
    VanishesAsConjectured,
    PositiveAsConjectured,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub tor_lengths: Vec<u64>,
    pub chi: i64,
    pub dim_m: usize,
    pub dim_n: usize,
    pub dim_a: usize,
    pub classification: Classification,
    pub conjecture_status: ConjectureStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub tensor_dim: usize,
    pub tensor_length: Length,
    pub diagnostic: String,
}

/// Whether `M ⊗ N` has finite length.
pub fn admissible(m: &ModulePresentation, n: &ModulePresentation) -> Result<Admissibility> {
    same_ring_checked(m.ring(), n.ring())?;
    let t = m.tensor(n)?;
    let hs = t.hilbert_series()?;
    let dim = hs.krull_dim();
    let len = hs.length();
    let diagnostic = match len {
        Length::Finite(l) => format!("M ⊗ N has finite length {l}"),
        Length::Infinite => format!(
            "M ⊗ N has support of dimension {dim} (Hilbert series {hs}); the intersection is not isolated"
        ),
    };
    Ok(Admissibility {
        admissible: len != Length::Infinite,
        tensor_dim: dim,
        tensor_length: len,
        diagnostic,
    })
}

fn require_admissible(m: &ModulePresentation, n: &ModulePresentation) -> Result<()> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::ZeroModule);
    }
    let a = admissible(m, n)?;
    if !a.admissible {
        return Err(Error::Inadmissible(a.diagnostic));
    }
    Ok(())
}

fn finite(len: Length, what: &str) -> Result<u64> {
    len.finite()
        .ok_or_else(|| Error::Inadmissible(format!("{what} has infinite length")))
}

fn alternating(lengths: impl IntoIterator<Item = (i64, u64)>) -> i64 {
    lengths
        .into_iter()
        .map(|(i, l)| {
            if i.rem_euclid(2) == 0 {
                l as i64
            } else {
                -(l as i64)
            }
        })
        .sum()
}

pub fn serre_chi(m: &ModulePresentation, n: &ModulePresentation) -> Result<MultiplicityReport> {
    serre_chi_with(m, n, &ResolveOptions::new(m.ring().nvars()))
}

/// Tor is computed as `H_i(E ⊗ N)` for a minimal resolution `E` of the
/// first argument; the reported range runs up to the larger projective
/// dimension of the two modules.
pub fn serre_chi_with(
    m: &ModulePresentation,
    n: &ModulePresentation,
    opts: &ResolveOptions,
) -> Result<MultiplicityReport> {
    require_admissible(m, n)?;
    let e = free_resolution_with(m, opts)?;
    let pd_n = free_resolution_with(n, opts)?.length();
    let top = e.length().max(pd_n) as i64;
    let mut tor_lengths = Vec::new();
    for i in 0..=top {
        let len = if i <= e.hi() {
            let h = homology_tensor_with(&e, n, i, &opts.order, opts.cancel.as_ref())?;
            finite(h.length()?, &format!("Tor_{i}"))?
        } else {
            0
        };
        tor_lengths.push(len);
    }
    let chi = alternating(tor_lengths.iter().enumerate().map(|(i, l)| (i as i64, *l)));
    let dim_m = m.krull_dim()?;
    let dim_n = n.krull_dim()?;
    let dim_a = m.ring().nvars();
    if dim_m + dim_n > dim_a {
        return Err(Error::Invalid(format!(
            "dim M + dim N = {} exceeds dim A = {dim_a} for an admissible pair",
            dim_m + dim_n
        )));
    }
    let classification = if dim_m + dim_n == dim_a {
        Classification::Proper
    } else {
        Classification::NonProper
    };
    let conjecture_status = match (classification, chi) {
        (Classification::Proper, c) if c > 0 => ConjectureStatus::PositiveAsConjectured,
        (Classification::NonProper, 0) => ConjectureStatus::VanishesAsConjectured,
        _ => ConjectureStatus::Violation,
    };
    Ok(MultiplicityReport {
        tor_lengths,
        chi,
        dim_m,
        dim_n,
        dim_a,
        classification,
        conjecture_status,
    })
}

/// Homology lengths of a complex over its whole range.
pub fn homology_lengths(c: &FreeComplex, opts: &ResolveOptions) -> Result<Vec<(i64, Length)>> {
    (c.lo()..=c.hi())
        .map(|i| {
            Ok((
                i,
                homology_with(c, i, &opts.order, opts.cancel.as_ref())?.length()?,
            ))
        })
        .collect()
}

fn euler_characteristic(c: &FreeComplex, opts: &ResolveOptions) -> Result<i64> {
    let mut ls = Vec::new();
    for (i, l) in homology_lengths(c, opts)? {
        ls.push((i, finite(l, &format!("H_{i} of the tensor complex"))?));
    }
    Ok(alternating(ls))
}

pub fn chi_via_complex(m: &ModulePresentation, n: &ModulePresentation) -> Result<(i64, i64)> {
    chi_via_complex_with(m, n, &ResolveOptions::new(m.ring().nvars()))
}

/// `(χ(E ⊗ F), (-1)^{codim M} χ(E* ⊗ F))` for minimal resolutions `E` of
/// `M` and `F` of `N`, where `χ` of a complex is the alternating sum of
/// the lengths of its homology.
pub fn chi_via_complex_with(
    m: &ModulePresentation,
    n: &ModulePresentation,
    opts: &ResolveOptions,
) -> Result<(i64, i64)> {
    require_admissible(m, n)?;
    let e = free_resolution_with(m, opts)?;
    let f = free_resolution_with(n, opts)?;
    let direct = euler_characteristic(&e.tensor(&f)?, opts)?;
    let codim = m.ring().nvars() - m.krull_dim()?;
    let dual = euler_characteristic(&e.dual().tensor(&f)?, opts)?;
    let sign = if codim % 2 == 0 { 1 } else { -1 };
    Ok((direct, sign * dual))
}
