use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialOrder};
use super::scalar::{Coeff, Q};
use crate::error::{Error, Result};

/// Variable names plus positive integer weights (all 1 for the standard grading).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Arc<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let weights = vec![1; vars.len()];
        Arc::new(PolyRing { vars, weights })
    }

    pub fn weighted<S: AsRef<str>>(vars: &[S], weights: &[u32]) -> Result<Arc<Self>> {
        if vars.len() != weights.len() {
            return Err(Error::Invalid(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::Invalid("variable weights must be positive".into()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let ok = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || vars[..i].contains(v) {
                return Err(Error::Invalid(format!(
                    "bad or repeated variable name `{v}`"
                )));
            }
        }
        Ok(Arc::new(PolyRing {
            vars,
            weights: weights.to_vec(),
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub fn same_ring_checked(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{:?} vs {:?}", a.vars, b.vars)))
    }
}

/// Sparse multivariate polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<C: Coeff = Q> {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, C>,
}

pub type Poly = MultiPoly<Q>;

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: C) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), C::one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: C) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms(ring: &Arc<PolyRing>, it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Nonzero constant, i.e. a unit of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, rhs: &Self) -> Result<()> {
        if same_ring(&self.ring, &rhs.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.vars, rhs.ring.vars
            )))
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_ring(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_ring(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_ring(rhs)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &C)> {
        self.terms
            .iter()
            .map(|(m, c)| (order.key(m), m, c))
            .max_by(|a, b| a.0.cmp(&b.0))
            .map(|(_, m, c)| (m, c))
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, C)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (order.key(m), m.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v.into_iter().map(|(_, m, c)| (m, c)).collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn weighted_degree_of(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.ring.weights)
    }

    /// `Ok(None)` for zero, `Ok(Some(d))` when homogeneous of weighted degree `d`.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = self.weighted_degree_of(m);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::NotHomogeneous(format!(
                        "terms of weighted degree {e} and {d} in one entry"
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[var] -= 1;
                out.add_term(m2, c.mul(&C::from_i64(e as i64)));
            }
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Re-home the polynomial in a ring with the same variable count.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Self {
        assert_eq!(ring.nvars(), self.nvars());
        MultiPoly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<C: Coeff> $tr<&MultiPoly<C>> for &MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                self.$checked(rhs)
                    .expect("polynomials from different rings")
            }
        }
        impl<C: Coeff> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.scale(&C::one().neg())
    }
}

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print_poly(self))
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::polycore::parse::parse_poly;
    use proptest::prelude::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "z"])
    }

    pub(crate) fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, 3), -5i64..6, 1i64..4),
            0..5,
        )
        .prop_map(|ts| {
            let r = ring();
            Poly::from_terms(
                &r,
                ts.into_iter()
                    .map(|(e, n, d)| (Monomial(e), crate::polycore::scalar::qr(n, d))),
            )
        })
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let r = ring();
        let p = parse_poly("x + y", &r).unwrap();
        let q = parse_poly("x - y", &r).unwrap();
        let s = &p - &p;
        assert!(s.is_zero());
        assert_eq!(s.num_terms(), 0);
        assert_eq!((&p + &q).to_string(), "2*x");
    }

    #[test]
    fn derivatives_and_homogeneity() {
        let r = PolyRing::weighted(&["x", "y"], &[2, 1]).unwrap();
        let f = parse_poly("x - y^2", &r).unwrap();
        assert_eq!(f.homogeneous_degree().unwrap(), Some(2));
        assert_eq!(f.derivative(1).to_string(), "-2*y");
        let g = parse_poly("x - y", &r).unwrap();
        assert!(matches!(
            g.homogeneous_degree(),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = parse_poly("x", &ring()).unwrap();
        let b = parse_poly("x", &PolyRing::new(&["x"])).unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch(_))));
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }
    }
}
