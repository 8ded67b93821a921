use chimukai_core::charclass::{CohClass, CohRing};
use chimukai_core::lefschetz::{Correspondence, LefschetzContext};
use chimukai_core::polycore::scalar::q;
use chimukai_core::polycore::Q;
use proptest::prelude::*;

fn space() -> impl Strategy<Value = Vec<usize>> {
    prop_oneof![
        (1usize..=4).prop_map(|n| vec![n]),
        Just(vec![1, 1]),
        Just(vec![1, 2]),
        Just(vec![2, 2]),
        Just(vec![1, 1, 1]),
    ]
}

fn class_of_degree(x: &CohRing, j: usize, coeffs: &[i64]) -> CohClass {
    x.basis_of_degree(j)
        .iter()
        .zip(coeffs.iter().cycle())
        .fold(CohClass::zero(x), |acc, (&i, &c)| {
            acc.add(&CohClass::monomial(x, &x.exps(i), q(c)))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_reassembles(dims in space(), j in 0usize..7, coeffs in prop::collection::vec(-4i64..=4, 1..6)) {
        let x = CohRing::new(&dims);
        prop_assume!(j <= x.dim());
        let ctx = LefschetzContext::new(&x).unwrap();
        let a = class_of_degree(&x, j, &coeffs);
        let parts = ctx.primitive_decomposition(&a).unwrap();
        prop_assert_eq!(ctx.reassemble(&parts), a);
        for (_, p) in &parts {
            prop_assert!(ctx.is_primitive(p).unwrap());
        }
    }

    /// `[L, Λ](L^k m) = (δ_{k>0} - δ_{k<d-2j}) L^k m` for `m` primitive of degree `j`.
    #[test]
    fn commutator_weights(dims in space(), j in 0usize..4, k in 0usize..7, coeffs in prop::collection::vec(-4i64..=4, 1..6)) {
        let x = CohRing::new(&dims);
        let d = x.dim();
        prop_assume!(2 * j <= d && k <= d - 2 * j);
        let ctx = LefschetzContext::new(&x).unwrap();
        let basis = ctx.primitive_basis(j);
        prop_assume!(!basis.is_empty());
        let m = basis.iter().zip(coeffs.iter().cycle()).fold(CohClass::zero(&x), |acc, (b, &c)| acc.add(&b.scale(&q(c))));
        let a = m.mul(&ctx.l_power(k));
        let l = ctx.l().clone();
        let comm = ctx.lambda_op(&a).unwrap().mul(&l).sub(&ctx.lambda_op(&a.mul(&l)).unwrap());
        let weight = (k > 0) as i64 - (k < d - 2 * j) as i64;
        prop_assert_eq!(comm, a.scale(&q(weight)));
    }

    #[test]
    fn trace_form_is_positive_on_nonzero_actions(dims in space(), shift in -3i64..=3, entries in prop::collection::vec(-3i64..=3, 1..40)) {
        let x = CohRing::new(&dims);
        let n = x.basis_len();
        let mut m = vec![vec![q(0); n]; n];
        let mut it = entries.iter().cycle();
        for (b, row) in m.iter_mut().enumerate() {
            for (a, e) in row.iter_mut().enumerate() {
                if x.half_degree(b) as i64 == x.half_degree(a) as i64 + shift {
                    *e = q(*it.next().unwrap());
                }
            }
        }
        let ctx = LefschetzContext::new(&x).unwrap();
        let c = Correspondence::from_matrix(&x, &m).unwrap();
        prop_assert_eq!(c.action_matrix().unwrap(), m.clone());
        let t = ctx.trace_form(&c).unwrap();
        prop_assert!(t.positive || t.acts_as_zero, "trace {}", t.trace);
        prop_assert_eq!(t.acts_as_zero, m.iter().flatten().all(|e| *e == q(0)));
    }
}

#[test]
fn diagonal_trace_is_total_betti_number() {
    for dims in [
        vec![1],
        vec![2],
        vec![3],
        vec![4],
        vec![1, 1],
        vec![1, 2],
        vec![2, 2],
    ] {
        let x = CohRing::new(&dims);
        let ctx = LefschetzContext::new(&x).unwrap();
        let betti: usize = x.betti().iter().sum();
        let t = ctx.trace_form(&Correspondence::diagonal(&x)).unwrap();
        assert_eq!(t.trace, betti.to_string(), "{x}");
    }
}

#[test]
fn kunneth_projectors_are_orthogonal_idempotents() {
    let x = CohRing::new(&[1, 2]);
    let d = x.dim();
    let projectors: Vec<Correspondence> = (0..=d)
        .map(|p| Correspondence::kunneth_projector(&x, p))
        .collect();
    for (i, p) in projectors.iter().enumerate() {
        for (j, r) in projectors.iter().enumerate() {
            let c = p.compose(r).unwrap();
            if i == j {
                assert_eq!(c.class(), p.class());
            } else {
                assert!(c.is_zero());
            }
        }
    }
    let sum = projectors[1..]
        .iter()
        .fold(projectors[0].clone(), |acc, p| acc.add(p).unwrap());
    assert_eq!(sum.class(), Correspondence::diagonal(&x).class());
}

#[test]
fn hodge_forms_on_the_quadric() {
    // P^1 x P^1: primitive H^2 is spanned by h1 - h2 with -∫ L^0 (h1-h2)^2 = 2
    let x = CohRing::new(&[1, 1]);
    let ctx = LefschetzContext::new(&x).unwrap();
    let h = ctx.hodge_form(1).unwrap();
    assert_eq!(h.gram.len(), 1);
    let v: Q = chimukai_core::polycore::scalar::parse_q(&h.gram[0][0]).unwrap();
    assert!(v > q(0));
    assert!(h.positive_definite);
}
