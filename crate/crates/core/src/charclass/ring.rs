use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::scalar::{q, Coeff, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CoeffKind {
    #[default]
    Rational,
    Gaussian,
    Float,
}

/// `H*(P^{n_1} × … × P^{n_k})` = `Q[h_1..h_k] / (h_i^{n_i+1})`, graded by
/// half-degree (a class in `H^{2p}` has half-degree `p`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohRing {
    dims: Vec<usize>,
    kind: CoeffKind,
}

impl CohRing {
    pub fn new(dims: &[usize]) -> Self {
        Self::with_kind(dims, CoeffKind::Rational)
    }

    pub fn with_kind(dims: &[usize], kind: CoeffKind) -> Self {
        CohRing {
            dims: dims.to_vec(),
            kind,
        }
    }

    pub fn projective(n: usize) -> Self {
        Self::new(&[n])
    }

    /// `X × Y`, factors of `self` first.
    pub fn product(&self, other: &CohRing) -> Self {
        let mut dims = self.dims.clone();
        dims.extend(&other.dims);
        CohRing {
            dims,
            kind: self.kind,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn kind(&self) -> CoeffKind {
        self.kind
    }

    pub fn nfactors(&self) -> usize {
        self.dims.len()
    }

    /// Complex dimension `d = Σ n_i`.
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Number of basis monomials `∏ (n_i + 1)`.
    pub fn basis_len(&self) -> usize {
        self.dims.iter().map(|n| n + 1).product()
    }

    pub fn index(&self, exps: &[usize]) -> usize {
        let mut idx = 0;
        for (e, n) in exps.iter().zip(&self.dims) {
            idx = idx * (n + 1) + e;
        }
        idx
    }

    pub fn exps(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (k, n) in self.dims.iter().enumerate().rev() {
            out[k] = idx % (n + 1);
            idx /= n + 1;
        }
        out
    }

    pub fn half_degree(&self, idx: usize) -> usize {
        self.exps(idx).iter().sum()
    }

    /// Index of the fundamental monomial `h_1^{n_1} ⋯ h_k^{n_k}`.
    pub fn top_index(&self) -> usize {
        self.basis_len() - 1
    }

    /// Betti numbers `b_{2p}` of the ring.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0; self.dim() + 1];
        for i in 0..self.basis_len() {
            b[self.half_degree(i)] += 1;
        }
        b
    }

    /// Basis indices of half-degree `p`, ordered by descending exponents.
    pub fn basis_of_degree(&self, p: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.basis_len())
            .filter(|&i| self.half_degree(i) == p)
            .collect();
        out.reverse();
        out
    }

    pub fn var_name(&self, i: usize) -> String {
        if self.dims.len() == 1 {
            "h".into()
        } else {
            format!("h{}", i + 1)
        }
    }

    pub fn monomial_text(&self, idx: usize) -> String {
        let parts: Vec<String> = self
            .exps(idx)
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.var_name(i)
                } else {
                    format!("{}^{e}", self.var_name(i))
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for CohRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|n| format!("P^{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// A class in a [`CohRing`], stored densely over the monomial basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CohClass<C: Coeff = Q> {
    ring: CohRing,
    coeffs: Vec<C>,
}

impl<C: Coeff> CohClass<C> {
    pub fn zero(ring: &CohRing) -> Self {
        CohClass {
            ring: ring.clone(),
            coeffs: vec![C::zero(); ring.basis_len()],
        }
    }

    pub fn constant(ring: &CohRing, c: C) -> Self {
        let mut out = Self::zero(ring);
        out.coeffs[0] = c;
        out
    }

    pub fn one(ring: &CohRing) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn monomial(ring: &CohRing, exps: &[usize], c: C) -> Self {
        let mut out = Self::zero(ring);
        if exps.iter().zip(ring.dims()).all(|(e, n)| e <= n) {
            out.coeffs[ring.index(exps)] = c;
        }
        out
    }

    /// Hyperplane class of factor `i`.
    pub fn h(ring: &CohRing, i: usize) -> Self {
        let mut e = vec![0; ring.nfactors()];
        e[i] = 1;
        Self::monomial(ring, &e, C::one())
    }

    /// `Σ a_i h_i`.
    pub fn linear(ring: &CohRing, a: &[C]) -> Self {
        let mut out = Self::zero(ring);
        for (i, c) in a.iter().enumerate() {
            out = out.add(&Self::h(ring, i).scale(c));
        }
        out
    }

    pub fn from_coeffs(ring: &CohRing, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.len() != ring.basis_len() {
            return Err(Error::Invalid(format!(
                "{} coefficients for a ring with {} basis monomials",
                coeffs.len(),
                ring.basis_len()
            )));
        }
        Ok(CohClass {
            ring: ring.clone(),
            coeffs,
        })
    }

    pub fn ring(&self) -> &CohRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[usize]) -> C {
        self.coeffs[self.ring.index(exps)].clone()
    }

    pub fn coeff_at(&self, idx: usize) -> &C {
        &self.coeffs[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn constant_term(&self) -> &C {
        &self.coeffs[0]
    }

    /// `∫_X a`: the coefficient of the fundamental monomial.
    pub fn integral(&self) -> C {
        self.coeffs[self.ring.top_index()].clone()
    }

    pub fn check_ring(&self, other: &CohRing) -> Result<()> {
        if self.ring.dims == other.dims {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "classes on {} and {}",
                self.ring, other
            )))
        }
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(
            self.ring.dims, other.ring.dims,
            "classes on different rings"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        CohClass {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        CohClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> CohClass<D> {
        CohClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Product in the truncated ring.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        let ring = &self.ring;
        let mut out = vec![C::zero(); ring.basis_len()];
        let exps: Vec<Vec<usize>> = (0..ring.basis_len()).map(|i| ring.exps(i)).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e: Vec<usize> = exps[i].iter().zip(&exps[j]).map(|(x, y)| x + y).collect();
                if e.iter().zip(ring.dims()).all(|(x, n)| x <= n) {
                    let k = ring.index(&e);
                    out[k] = out[k].add(&a.mul(b));
                }
            }
        }
        CohClass {
            ring: ring.clone(),
            coeffs: out,
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Half-degree `p` component.
    pub fn component(&self, p: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.half_degree(i) == p {
                out.coeffs[i] = c.clone();
            }
        }
        out
    }

    /// `(v_0, v_1, …, v_d)`.
    pub fn components(&self) -> Vec<Self> {
        (0..=self.ring.dim()).map(|p| self.component(p)).collect()
    }

    /// Half-degrees carrying a nonzero coefficient.
    pub fn support_degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| self.ring.half_degree(i))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// `Σ_k c_k x^k` for `x` with zero constant term; terms beyond the
    /// ring dimension vanish.
    pub fn eval_series(x: &Self, series: &[C]) -> Result<Self> {
        if !x.constant_term().is_zero() {
            return Err(Error::Invalid(
                "series argument must have zero constant term".into(),
            ));
        }
        let mut acc = Self::zero(&x.ring);
        let mut power = Self::one(&x.ring);
        for (k, c) in series.iter().enumerate() {
            if k > x.ring.dim() {
                break;
            }
            acc = acc.add(&power.scale(c));
            power = power.mul(x);
        }
        Ok(acc)
    }

    /// `exp(x)` for nilpotent `x`.
    pub fn exp(&self) -> Result<Self> {
        Self::eval_series(self, &exp_series(self.ring.dim()))
    }

    /// Inverse of a class with invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term().clone();
        let inv0 = c0
            .inv()
            .ok_or_else(|| Error::Invalid("constant term is not invertible".into()))?;
        // x^{-1} = c0^{-1} Σ (-u)^k with u = x/c0 - 1
        let u = self.scale(&inv0).sub(&Self::one(&self.ring));
        let series: Vec<C> = (0..=self.ring.dim())
            .map(|k| if k % 2 == 0 { C::one() } else { C::one().neg() })
            .collect();
        Ok(Self::eval_series(&u, &series)?.scale(&inv0))
    }

    /// `τ`: multiply the half-degree `p` part by `(-1)^p`.
    pub fn tau(&self) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if self.ring.half_degree(i) % 2 == 1 {
                *c = c.neg();
            }
        }
        out
    }

    /// Terms in increasing half-degree, each degree by descending exponents.
    pub fn terms(&self) -> Vec<(usize, C)> {
        let mut out = Vec::new();
        for p in 0..=self.ring.dim() {
            for i in self.ring.basis_of_degree(p) {
                if !self.coeffs[i].is_zero() {
                    out.push((i, self.coeffs[i].clone()));
                }
            }
        }
        out
    }
}

impl CohClass<Q> {
    pub fn to_gaussian(&self) -> CohClass<crate::polycore::GaussQ> {
        self.map_coeffs(crate::polycore::GaussQ::from_q)
    }

    pub fn to_float(&self) -> CohClass<f64> {
        self.map_coeffs(f64::from_q)
    }
}

/// `1/k!` for `k = 0..=n`.
pub fn exp_series<C: Coeff>(n: usize) -> Vec<C> {
    let mut out = Vec::with_capacity(n + 1);
    let mut f = q(1);
    for k in 0..=n {
        if k > 0 {
            f /= q(k as i64);
        }
        out.push(C::from_q(&f));
    }
    out
}

impl<C: Coeff> fmt::Display for CohClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (i, c)) in terms.iter().enumerate() {
            let text = c.to_text();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = self.ring.monomial_text(*i);
            if mono.is_empty() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for CohClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohClass[{}]({self})", self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::qr;

    #[test]
    fn indexing_round_trips() {
        let r = CohRing::new(&[2, 1, 3]);
        assert_eq!(r.basis_len(), 24);
        for i in 0..r.basis_len() {
            assert_eq!(r.index(&r.exps(i)), i);
        }
        assert_eq!(r.exps(r.top_index()), vec![2, 1, 3]);
        assert_eq!(r.betti(), vec![1, 3, 5, 6, 5, 3, 1]);
    }

    #[test]
    fn truncation_and_series() {
        let r = CohRing::projective(2);
        let h: CohClass = CohClass::h(&r, 0);
        assert!(h.pow(3).is_zero());
        let e = h.exp().unwrap();
        assert_eq!(e.to_string(), "1 + h + 1/2*h^2");
        let inv = e.inverse().unwrap();
        assert_eq!(inv, h.neg().exp().unwrap());
        assert_eq!(e.mul(&inv), CohClass::one(&r));
        let v = CohClass::from_coeffs(&r, vec![q(1), q(1), q(1)]).unwrap();
        assert_eq!(v.tau().to_string(), "1 - h + h^2");
        assert_eq!(v.tau().tau(), v);
        assert_eq!(v.component(1).to_string(), "h");
        assert_eq!(
            CohClass::<Q>::monomial(&r, &[2], qr(-5, 4)).to_string(),
            "-5/4*h^2"
        );
    }

    #[test]
    fn product_ring_display() {
        let r = CohRing::new(&[1, 1]);
        let a: CohClass = CohClass::h(&r, 0).sub(&CohClass::h(&r, 1));
        assert_eq!(a.to_string(), "h1 - h2");
        assert_eq!(a.mul(&a).to_string(), "-2*h1*h2");
        assert_eq!(a.mul(&a).integral(), q(-2));
    }
}
