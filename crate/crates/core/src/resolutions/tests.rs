use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::polycore::scalar::q;
use crate::polycore::{parse_poly, parse_polys, Monomial, PolyRing};

fn ring(vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(vars)
}

fn quot(r: &Arc<PolyRing>, gens: &[&str]) -> ModulePresentation {
    ModulePresentation::quotient(r, &parse_polys(gens, r).unwrap()).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn assert_exact(res: &FreeComplex, m: &ModulePresentation) {
    for i in 1..=res.hi() {
        assert!(
            homology(res, i).unwrap().is_zero(),
            "H_{i} of a resolution is nonzero"
        );
    }
    let h0 = homology(res, 0).unwrap();
    assert_eq!(h0.hilbert_series().unwrap(), m.hilbert_series().unwrap());
}

fn series_of_free(r: &Arc<PolyRing>, shifts: &[i64]) -> HilbertSeries {
    let mut acc = HilbertSeries::new(Laurent::new(), r.weights.clone());
    for &s in shifts {
        acc = acc.add(
            &ModulePresentation::free(r, vec![0])
                .hilbert_series()
                .unwrap()
                .shifted(s),
            1,
        );
    }
    acc
}

#[test]
fn syzygies_of_a_regular_pair() {
    let r = ring(&["x", "y"]);
    let m = PolyMatrix::row(&r, &parse_polys(&["x", "y"], &r).unwrap());
    let s = syzygies(&m, &MonomialOrder::grevlex()).unwrap();
    assert_eq!(s.ncols(), 1);
    // proportional to (-y, x)
    let c = s.get(1, 0).coeff(&Monomial(vec![1, 0]));
    assert!(!num_traits::Zero::is_zero(&c));
    assert_eq!(s.get(0, 0), &parse_poly("-y", &r).unwrap().scale(&c));
    assert_eq!(s.get(1, 0), &parse_poly("x", &r).unwrap().scale(&c));
}

#[test]
fn syzygies_trivial_cases() {
    let r = ring(&["x", "y"]);
    let id = PolyMatrix::identity(&r, 3);
    assert_eq!(syzygies(&id, &MonomialOrder::grevlex()).unwrap().ncols(), 0);
    let m = PolyMatrix::row(&r, &parse_polys(&["x", "x"], &r).unwrap());
    let s = syzygies(&m, &MonomialOrder::grevlex()).unwrap();
    assert_eq!(s.ncols(), 1);
    assert!(s.get(0, 0).is_constant());
    assert_eq!(s.get(0, 0), &(-s.get(1, 0).clone()));
}

#[test]
fn koszul_resolutions_of_the_residue_field() {
    for n in 1..=4 {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let r = PolyRing::new(&names);
        let k =
            ModulePresentation::quotient(&r, &(0..n).map(|i| Poly::var(&r, i)).collect::<Vec<_>>())
                .unwrap();
        let res = free_resolution(&k, n).unwrap();
        let expected: Vec<usize> = (0..=n).map(|i| binom(n, i)).collect();
        assert_eq!(res.ranks(), expected);
        for (i, s) in (0..=n).map(|i| (i, res.shifts_at(i as i64).unwrap())) {
            assert!(
                s.iter().all(|&d| d == i as i64),
                "generators of F_{i} in degree {i}"
            );
        }
        assert_exact(&res, &k);
    }
}

#[test]
fn free_module_resolves_in_length_zero() {
    let r = ring(&["x", "y"]);
    let a = ModulePresentation::free(&r, vec![0, 2]);
    let res = free_resolution(&a, 2).unwrap();
    assert_eq!(res.ranks(), vec![2]);
    assert_eq!(res.length(), 0);
}

#[test]
fn non_minimal_input_is_minimized() {
    let r = ring(&["x", "y"]);
    // Redundant generator x*y and a unit relation eliminating a generator.
    let m = quot(&r, &["x", "y", "x*y", "x^2"]);
    let res = free_resolution(&m, 2).unwrap();
    assert_eq!(res.ranks(), vec![1, 2, 1]);
    for d in res.differentials() {
        assert!(d.find_unit().is_none());
    }
}

#[test]
fn resolution_length_is_guarded() {
    let r = ring(&["x", "y"]);
    let err = free_resolution(&quot(&r, &["x", "y"]), 1).unwrap_err();
    assert_eq!(err, Error::ResolutionTooLong(1));
}

#[test]
fn cancellation_is_observed() {
    let r = ring(&["x", "y", "z"]);
    let token = CancelToken::new();
    token.cancel();
    let opts = ResolveOptions {
        cancel: Some(token),
        ..ResolveOptions::new(3)
    };
    let err = free_resolution_with(&quot(&r, &["x^2", "y^2", "z^2", "x*y*z"]), &opts).unwrap_err();
    assert_eq!(err, Error::Cancelled);
}

#[test]
fn tensor_of_koszul_complexes() {
    let r = ring(&["x", "y"]);
    let [x, y] = [Poly::var(&r, 0), Poly::var(&r, 1)];
    let kx = FreeComplex::koszul(&r, std::slice::from_ref(&x)).unwrap();
    let ky = FreeComplex::koszul(&r, std::slice::from_ref(&y)).unwrap();
    let kxy = FreeComplex::koszul(&r, &[x, y]).unwrap();
    assert_eq!(kx.tensor(&ky).unwrap(), kxy);
    assert_eq!(kxy.tensor(&kx).unwrap().ranks(), vec![1, 3, 3, 1]);
    let unit = FreeComplex::free_module(&r, vec![0]);
    assert_eq!(kxy.tensor(&unit).unwrap(), kxy);
    assert_eq!(unit.tensor(&kxy).unwrap(), kxy);
}

#[test]
fn homology_of_koszul() {
    let r = ring(&["x", "y"]);
    let k = FreeComplex::koszul(&r, &parse_polys(&["x", "y"], &r).unwrap()).unwrap();
    let h0 = homology(&k, 0).unwrap();
    assert_eq!(h0.length().unwrap(), Length::Finite(1));
    assert_eq!(
        h0.hilbert_series().unwrap(),
        quot(&r, &["x", "y"]).hilbert_series().unwrap()
    );
    assert!(homology(&k, 1).unwrap().is_zero());
    assert!(homology(&k, 2).unwrap().is_zero());
    assert!(matches!(
        homology(&k, 3),
        Err(Error::IndexOutOfRange {
            index: 3,
            lo: 0,
            hi: 2
        })
    ));
}

#[test]
fn koszul_with_residue_field_coefficients() {
    let r = ring(&["x", "y"]);
    let k = FreeComplex::koszul(&r, &parse_polys(&["x", "y"], &r).unwrap()).unwrap();
    let field = quot(&r, &["x", "y"]);
    for i in 0..=2 {
        let h = homology_tensor(&k, &field, i).unwrap();
        assert_eq!(
            h.length().unwrap(),
            Length::Finite(binom(2, i as usize) as u64)
        );
    }
}

#[test]
fn dual_koszul_homology_sits_in_top_degree() {
    let r = ring(&["x", "y"]);
    let k = FreeComplex::koszul(&r, &parse_polys(&["x", "y"], &r).unwrap()).unwrap();
    let d = k.dual();
    assert_eq!((d.lo(), d.hi()), (-2, 0));
    assert!(FreeComplex::new(
        &r,
        d.lo(),
        (-2..=0).map(|i| d.shifts_at(i).unwrap().to_vec()).collect(),
        d.differentials().to_vec()
    )
    .is_ok());
    assert_eq!(
        homology(&d, -2).unwrap().length().unwrap(),
        Length::Finite(1)
    );
    assert!(homology(&d, -1).unwrap().is_zero());
    assert_eq!(homology(&d, 0).unwrap().krull_dim().unwrap(), 0);
    assert!(homology(&d, 0).unwrap().is_zero());
}

#[test]
fn complex_constructor_checks_d_squared() {
    let r = ring(&["x"]);
    let x = Poly::var(&r, 0);
    let d1 = PolyMatrix::row(&r, std::slice::from_ref(&x));
    let d2 = PolyMatrix::from_rows(&r, 1, vec![vec![x.clone()]]);
    assert!(FreeComplex::new(&r, 0, vec![vec![0], vec![1], vec![2]], vec![d1, d2]).is_err());
}

#[test]
fn weighted_resolution() {
    let w = PolyRing::weighted(&["x", "y"], &[2, 1]).unwrap();
    let m = quot(&w, &["x", "x - y^2"]);
    assert_eq!(m.length().unwrap(), Length::Finite(2));
    let res = free_resolution(&m, 2).unwrap();
    assert_eq!(res.ranks(), vec![1, 2, 1]);
    assert_eq!(res.shifts_at(2).unwrap(), &[4]);
    assert_exact(&res, &m);
}

fn euler_series(c: &FreeComplex) -> (HilbertSeries, HilbertSeries) {
    let r = c.ring();
    let mut chains = HilbertSeries::new(Laurent::new(), r.weights.clone());
    let mut homs = chains.clone();
    for i in c.lo()..=c.hi() {
        let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
        chains = chains.add(&series_of_free(r, c.shifts_at(i).unwrap()), sign);
        homs = homs.add(&homology(c, i).unwrap().hilbert_series().unwrap(), sign);
    }
    (chains, homs)
}

#[test]
fn hilbert_series_is_additive_over_a_resolution() {
    let r = ring(&["x", "y", "z"]);
    let m = quot(&r, &["x^2", "x*y", "y*z^2"]);
    let res = free_resolution(&m, 3).unwrap();
    let (chains, _) = euler_series(&res);
    assert_eq!(chains, m.hilbert_series().unwrap());
}

fn small_form(r: &Arc<PolyRing>, deg: u32, seed: &[i64]) -> Poly {
    let n = r.nvars();
    let mut mons = Vec::new();
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n - 1 {
            let mut m = cur.clone();
            m.push(d - cur.iter().sum::<u32>());
            out.push(Monomial(m));
            return;
        }
        for e in 0..=d - cur.iter().sum::<u32>() {
            cur.push(e);
            rec(n, d, cur, out);
            cur.pop();
        }
    }
    rec(n, deg, &mut Vec::new(), &mut mons);
    let terms = mons
        .into_iter()
        .zip(seed.iter().cycle())
        .map(|(m, &c)| (m, q(c)));
    Poly::from_terms(r, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn regular_sequences_have_binomial_betti_numbers(
        exps in proptest::collection::vec(1u32..=3, 1..=3),
        seed in proptest::collection::vec(-2i64..=2, 10),
    ) {
        // x_i^{a_i} + (form in later variables): leading terms are coprime
        // pure powers in lex, so the forms are a regular sequence.
        let r = ring(&["x", "y", "z"]);
        let c = exps.len();
        let fs: Vec<Poly> = exps.iter().enumerate().map(|(i, &a)| {
            let lead = Poly::term(&r, Monomial((0..3).map(|j| if j == i { a } else { 0 }).collect()), q(1));
            let tail = small_form(&r, a, &seed);
            let tail = Poly::from_terms(&r, tail.terms()
                .filter(|(m, _)| m.0[..=i].iter().all(|&e| e == 0))
                .map(|(m, c)| (m.clone(), c.clone())));
            &lead + &tail
        }).collect();
        let m = ModulePresentation::quotient(&r, &fs).unwrap();
        let res = free_resolution(&m, 3).unwrap();
        let expected: Vec<usize> = (0..=c).map(|i| binom(c, i)).collect();
        prop_assert_eq!(res.ranks(), expected);
        assert_exact(&res, &m);
    }

    #[test]
    fn euler_characteristic_of_series_matches_homology(
        degs in proptest::collection::vec(1u32..=2, 2..=3),
        seed in proptest::collection::vec(-1i64..=1, 8),
    ) {
        let r = ring(&["x", "y"]);
        let fs: Vec<Poly> = degs.iter().enumerate()
            .map(|(i, &d)| {
                let f = small_form(&r, d, &seed[i..]);
                if f.is_zero() { Poly::var(&r, i % 2).pow(d) } else { f }
            })
            .collect();
        let k = FreeComplex::koszul(&r, &fs).unwrap();
        let (chains, homs) = euler_series(&k);
        prop_assert_eq!(chains, homs);
    }
}
