use chimukai_core::polycore::scalar::{q, qr};
use chimukai_core::polycore::{Monomial, Poly, PolyRing, Q};
use chimukai_core::residue::{ade, JacobiRing};
use proptest::prelude::*;

fn fermat(exps: &[u32]) -> (Poly, Vec<u32>) {
    let names: Vec<String> = (0..exps.len()).map(|i| format!("x{i}")).collect();
    let ring = PolyRing::new(&names);
    let f = exps
        .iter()
        .enumerate()
        .fold(Poly::zero(&ring), |acc, (i, &a)| {
            &acc + &Poly::var(&ring, i).pow(a)
        });
    let l: u32 = exps.iter().product();
    let weights = exps.iter().map(|&a| l / a).collect();
    (f, weights)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// For `f = Σ x_i^{a_i}`, `Res(∏ x_i^{b_i}) = ∏ δ_{b_i, a_i - 2} / a_i` on standard monomials.
    #[test]
    fn fermat_residues(exps in prop::collection::vec(2u32..=5, 1..=3), pick in prop::collection::vec(0u32..=4, 3)) {
        let (f, w) = fermat(&exps);
        let jr = JacobiRing::new(&f, &w).unwrap();
        let mu: u32 = exps.iter().map(|a| a - 1).product();
        prop_assert_eq!(jr.milnor_number(), mu as usize);
        let b: Vec<u32> = exps.iter().zip(&pick).map(|(&a, &p)| p % (a - 1)).collect();
        let g = Poly::term(f.ring(), Monomial(b.clone()), q(1));
        let want: Q = if exps.iter().zip(&b).all(|(&a, &bi)| bi == a - 2) {
            exps.iter().map(|&a| qr(1, a as i64)).product()
        } else {
            q(0)
        };
        prop_assert_eq!(jr.residue(&g).unwrap(), want);
        prop_assert_eq!(jr.residue(jr.hessian()).unwrap(), q(mu as i64));
    }
}

#[test]
fn one_variable_oracle() {
    // f = x^{k+1}: Res(x^j) = δ_{j, k-1} / (k+1)
    let ring = PolyRing::new(&["x"]);
    for k in 1..=6i64 {
        let f = Poly::var(&ring, 0).pow(k as u32 + 1);
        let jr = JacobiRing::new(&f, &[1]).unwrap();
        for j in 0..k {
            let want = if j == k - 1 { qr(1, k + 1) } else { q(0) };
            assert_eq!(
                jr.residue(&Poly::var(&ring, 0).pow(j as u32)).unwrap(),
                want
            );
        }
    }
}

#[test]
fn simple_singularity_table() {
    // (name, μ, weighted degree, weights), from the normal forms
    let table = [
        ("A1", 1, 4, [2, 2]),
        ("A2", 2, 6, [2, 3]),
        ("A3", 3, 8, [2, 4]),
        ("A4", 4, 10, [2, 5]),
        ("A5", 5, 12, [2, 6]),
        ("D4", 4, 6, [2, 2]),
        ("D5", 5, 8, [3, 2]),
        ("E6", 6, 12, [4, 3]),
        ("E7", 7, 9, [3, 2]),
        ("E8", 8, 15, [5, 3]),
    ];
    for (name, mu, d, w) in table {
        let (f, weights) = ade(name).unwrap();
        assert_eq!(weights, w.to_vec(), "{name}");
        let jr = JacobiRing::new(&f, &weights).unwrap();
        assert_eq!(jr.degree(), d, "{name}");
        assert_eq!(jr.milnor_number(), mu, "{name}");
        let g = jr.residue_gram().unwrap();
        assert!(
            g.nondegenerate && g.symmetric && g.degree_orthogonal,
            "{name}"
        );
    }
}
