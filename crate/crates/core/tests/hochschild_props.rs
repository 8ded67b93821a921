use std::sync::Arc;

use chimukai_core::hochschild::HochschildChain;
use chimukai_core::polycore::scalar::q;
use chimukai_core::polycore::{Monomial, Poly, PolyRing};
use proptest::prelude::*;

fn ring(nv: usize) -> Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z"][..nv])
}

/// Entries as lists of `(coefficient, exponents)`.
type Entry = Vec<(i64, Vec<u32>)>;

fn entry() -> impl Strategy<Value = Entry> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..=2, 3)), 1..3)
}

fn chain_strategy() -> impl Strategy<Value = Vec<Entry>> {
    (1usize..=3).prop_flat_map(|deg| prop::collection::vec(entry(), deg + 1))
}

fn build(r: &Arc<PolyRing>, entries: &[Entry]) -> HochschildChain {
    let polys: Vec<Poly> = entries
        .iter()
        .map(|e| {
            Poly::from_terms(
                r,
                e.iter()
                    .map(|(c, ex)| (Monomial(ex[..r.nvars()].to_vec()), q(*c))),
            )
        })
        .collect();
    HochschildChain::elementary(&polys).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn boundary_squares_to_zero(nv in 1usize..=3, c in chain_strategy()) {
        let r = ring(nv);
        let c = build(&r, &c);
        let b = c.boundary().unwrap();
        prop_assert!(b.hkr().is_zero());
        if c.degree() >= 2 {
            prop_assert!(b.boundary().unwrap().is_zero());
        }
    }

    #[test]
    fn hkr_is_multiplicative(nv in 1usize..=3, a in chain_strategy(), b in chain_strategy()) {
        let r = ring(nv);
        let (a, b) = (build(&r, &a), build(&r, &b));
        let lhs = a.shuffle(&b).unwrap().hkr();
        prop_assert_eq!(lhs, a.hkr().wedge(&b.hkr()));
    }

    #[test]
    fn shuffle_is_graded_commutative(nv in 1usize..=3, a in chain_strategy(), b in chain_strategy()) {
        let r = ring(nv);
        let (a, b) = (build(&r, &a), build(&r, &b));
        let sign = if (a.degree() * b.degree()) % 2 == 1 { q(-1) } else { q(1) };
        prop_assert_eq!(a.shuffle(&b).unwrap(), b.shuffle(&a).unwrap().scale(&sign));
    }
}

#[test]
fn shuffle_counts_are_binomial() {
    // (p, q)-shuffles of distinct variables produce binom(p+q, p) tensors
    let r = PolyRing::new(&["x", "y", "z"]);
    let v = |i| Poly::var(&r, i);
    let a = HochschildChain::elementary(&[Poly::one(&r), v(0), v(1)]).unwrap();
    let b = HochschildChain::elementary(&[Poly::one(&r), v(2)]).unwrap();
    assert_eq!(a.shuffle(&b).unwrap().num_terms(), 3);
    let c = HochschildChain::elementary(&[Poly::one(&r), v(2), &v(0) * &v(1)]).unwrap();
    assert_eq!(a.shuffle(&c).unwrap().num_terms(), 6);
    // x⊗y against z⊗x: two shuffles give z⊗x⊗x⊗y with opposite signs
    let d = HochschildChain::elementary(&[Poly::one(&r), v(2), v(0)]).unwrap();
    assert_eq!(a.shuffle(&d).unwrap().num_terms(), 4);
}
