//! Comparison of the global Euler pairing of two coordinate linear
//! subspaces of `P^n` with the local Serre multiplicity at their
//! intersection point.

use serde::Serialize;

use super::classes::{euler_pairing, mukai_pairing, mukai_vector, SheafDescriptor};
use super::ring::CohRing;
use crate::error::{Error, Result};
use crate::polycore::{Poly, PolyRing, Q};
use crate::resolutions::{ModulePresentation, ResolveOptions};
use crate::serre::serre_chi_with;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub n: usize,
    pub codim_y: usize,
    pub codim_z: usize,
    /// `⟨v(O_Y), v(O_Z)⟩`, equal to `χ(O_Y, O_Z)`.
    pub raw_pairing: String,
    pub euler_pairing: String,
    /// `(-1)^{codim Y} χ(O_Y, O_Z)`.
    pub intersection_number: String,
    /// Coordinate index of the affine chart around each intersection point.
    pub charts: Vec<usize>,
    pub serre_sum: i64,
    /// The raw pairing and the intersection number differ in sign.
    pub sign_convention_flag: bool,
    pub passed: bool,
}

/// `Y = V(x_i : i ∈ y)` and `Z = V(x_j : j ∈ z)` in `P^n` with coordinates
/// `x_0..x_n`; they must meet transversally in a single point.
pub fn local_global_bridge(
    n: usize,
    y: &[usize],
    z: &[usize],
    opts: &ResolveOptions,
) -> Result<BridgeReport> {
    let mut ys = y.to_vec();
    let mut zs = z.to_vec();
    ys.sort_unstable();
    ys.dedup();
    zs.sort_unstable();
    zs.dedup();
    if ys.iter().chain(&zs).any(|&i| i > n) {
        return Err(Error::Invalid(format!("coordinate index beyond x_{n}")));
    }
    if ys.len() + zs.len() != n || ys.iter().any(|i| zs.contains(i)) {
        return Err(Error::Inadmissible(format!(
            "subspaces of codimension {} and {} in P^{n} do not meet transversally in a point",
            ys.len(),
            zs.len()
        )));
    }
    let ring = CohRing::projective(n);
    let sy = SheafDescriptor::LinearSubvariety(vec![ys.len()]);
    let sz = SheafDescriptor::LinearSubvariety(vec![zs.len()]);
    let raw: Q = mukai_pairing(&mukai_vector(&sy, &ring)?, &mukai_vector(&sz, &ring)?)?;
    let chi = euler_pairing(&sy, &sz, &ring)?;
    let sign = if ys.len() % 2 == 1 { -1 } else { 1 };
    let corrected: num_bigint::BigInt = &chi * sign;

    // The unique point has every coordinate zero except one.
    let chart = (0..=n)
        .find(|i| !ys.contains(i) && !zs.contains(i))
        .expect("n + 1 coordinates, n used");
    let names: Vec<String> = (0..=n)
        .filter(|&i| i != chart)
        .map(|i| format!("x{i}"))
        .collect();
    let affine = PolyRing::new(&names);
    let local = |ids: &[usize]| -> Result<ModulePresentation> {
        let gens: Vec<Poly> = ids
            .iter()
            .map(|&i| Poly::var(&affine, if i < chart { i } else { i - 1 }))
            .collect();
        ModulePresentation::quotient(&affine, &gens)
    };
    let report = serre_chi_with(&local(&ys)?, &local(&zs)?, opts)?;
    let serre_sum = report.chi;
    Ok(BridgeReport {
        n,
        codim_y: ys.len(),
        codim_z: zs.len(),
        raw_pairing: crate::polycore::scalar::fmt_q(&raw),
        euler_pairing: chi.to_string(),
        intersection_number: corrected.to_string(),
        charts: vec![chart],
        serre_sum,
        sign_convention_flag: Q::from_integer(corrected.clone()) != raw,
        passed: Q::from_integer(chi) == raw && corrected == serre_sum.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transverse_lines_in_the_plane() {
        let r = local_global_bridge(2, &[0], &[1], &ResolveOptions::new(8)).unwrap();
        assert_eq!(r.raw_pairing, "-1");
        assert_eq!(r.intersection_number, "1");
        assert_eq!(r.serre_sum, 1);
        assert!(r.sign_convention_flag);
        assert!(r.passed);
    }

    #[test]
    fn point_against_the_whole_space_and_higher_dimensions() {
        let r = local_global_bridge(3, &[0, 1], &[2], &ResolveOptions::new(8)).unwrap();
        assert_eq!(r.intersection_number, "1");
        assert!(!r.sign_convention_flag);
        assert!(r.passed);
        let r = local_global_bridge(3, &[], &[0, 1, 2], &ResolveOptions::new(8)).unwrap();
        assert!(r.passed);
        assert!(local_global_bridge(3, &[0], &[1], &ResolveOptions::new(8)).is_err());
        assert!(local_global_bridge(2, &[0], &[0, 1], &ResolveOptions::new(8)).is_err());
    }
}
