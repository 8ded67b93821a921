use chimukai_core::polycore::scalar::q;
use chimukai_core::polycore::{Monomial, Poly, PolyRing};
use chimukai_core::resolutions::{ModulePresentation, ResolveOptions};
use chimukai_core::serre::{admissible, chi_via_complex_with, serre_chi_with, Classification};
use proptest::prelude::*;

fn binary_form(ring: &std::sync::Arc<PolyRing>, d: u32, coeffs: &[i64]) -> Poly {
    Poly::from_terms(
        ring,
        (0..=d).map(|i| {
            (
                Monomial(vec![d - i, i]),
                q(coeffs[i as usize % coeffs.len()]),
            )
        }),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Two coprime binary forms of degrees a and b meet with multiplicity a·b.
    #[test]
    fn bezout_for_plane_curves(a in 1u32..=3, b in 1u32..=3, fc in prop::collection::vec(-3i64..=3, 1..5), gc in prop::collection::vec(-3i64..=3, 1..5)) {
        let ring = PolyRing::new(&["x", "y"]);
        let f = binary_form(&ring, a, &fc);
        let g = binary_form(&ring, b, &gc);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let m = ModulePresentation::quotient(&ring, &[f]).unwrap();
        let n = ModulePresentation::quotient(&ring, &[g]).unwrap();
        prop_assume!(admissible(&m, &n).unwrap().admissible);
        let opts = ResolveOptions::new(2);
        let r = serre_chi_with(&m, &n, &opts).unwrap();
        prop_assert_eq!(r.chi, (a * b) as i64);
        prop_assert_eq!(r.tor_lengths.clone(), vec![(a * b) as u64, 0]);
        prop_assert_eq!(r.classification, Classification::Proper);
        prop_assert_eq!(serre_chi_with(&n, &m, &opts).unwrap().chi, r.chi);
        prop_assert_eq!(chi_via_complex_with(&m, &n, &opts).unwrap(), (r.chi, r.chi));
    }
}
