//! Pullback, fiber integration and correspondences on products of
//! projective spaces.

use super::ring::{CohClass, CohRing};
use crate::error::{Error, Result};
use crate::polycore::scalar::Coeff;

/// Which side of `X × Y` a class lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `X × Y` with its two projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpace {
    pub left: CohRing,
    pub right: CohRing,
    pub ring: CohRing,
}

impl ProductSpace {
    pub fn new(left: &CohRing, right: &CohRing) -> Self {
        ProductSpace {
            left: left.clone(),
            right: right.clone(),
            ring: left.product(right),
        }
    }

    pub fn square(x: &CohRing) -> Self {
        Self::new(x, x)
    }

    fn factors(&self, side: Side) -> (&CohRing, Vec<usize>) {
        let k = self.left.nfactors();
        match side {
            Side::Left => (&self.left, (0..k).collect()),
            Side::Right => (&self.right, (k..k + self.right.nfactors()).collect()),
        }
    }

    /// `π^* a` for `a` on the given side.
    pub fn pullback<C: Coeff>(&self, a: &CohClass<C>, side: Side) -> Result<CohClass<C>> {
        let (src, slots) = self.factors(side);
        a.check_ring(src)?;
        embed(a, &self.ring, &slots)
    }

    /// `π_* a`: integrate out the other side.
    pub fn pushforward<C: Coeff>(&self, a: &CohClass<C>, to: Side) -> Result<CohClass<C>> {
        a.check_ring(&self.ring)?;
        let (target, keep) = self.factors(to);
        integrate(a, target, &keep)
    }

    /// `φ^μ(a) = π_{Y*}(π_X^* a · μ)`.
    pub fn integral_transform<C: Coeff>(
        &self,
        mu: &CohClass<C>,
        a: &CohClass<C>,
    ) -> Result<CohClass<C>> {
        mu.check_ring(&self.ring)?;
        let pulled = self.pullback(a, Side::Left)?;
        self.pushforward(&pulled.mul(mu), Side::Right)
    }

    /// Transform in the other direction, `π_{X*}(π_Y^* b · μ)`.
    pub fn transform_back<C: Coeff>(
        &self,
        mu: &CohClass<C>,
        b: &CohClass<C>,
    ) -> Result<CohClass<C>> {
        mu.check_ring(&self.ring)?;
        let pulled = self.pullback(b, Side::Right)?;
        self.pushforward(&pulled.mul(mu), Side::Left)
    }

    /// `μ` with the two sides exchanged, as a class on `Y × X`.
    pub fn swap<C: Coeff>(&self, mu: &CohClass<C>) -> Result<CohClass<C>> {
        mu.check_ring(&self.ring)?;
        let k = self.left.nfactors();
        let l = self.right.nfactors();
        let swapped = self.right.product(&self.left);
        let slots: Vec<usize> = (0..k).map(|i| l + i).chain(0..l).collect();
        embed(mu, &swapped, &slots)
    }
}

/// Sends factor `i` of `a.ring()` to factor `slots[i]` of `target`.
pub fn embed<C: Coeff>(a: &CohClass<C>, target: &CohRing, slots: &[usize]) -> Result<CohClass<C>> {
    let src = a.ring();
    for (i, &s) in slots.iter().enumerate() {
        if s >= target.nfactors() || target.dims()[s] != src.dims()[i] {
            return Err(Error::RingMismatch(format!(
                "cannot place factor {i} of {src} at slot {s} of {target}"
            )));
        }
    }
    let mut out = CohClass::zero(target);
    let mut coeffs = out.coeffs().to_vec();
    for (idx, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = src.exps(idx);
        let mut t = vec![0; target.nfactors()];
        for (i, &s) in slots.iter().enumerate() {
            t[s] = e[i];
        }
        coeffs[target.index(&t)] = c.clone();
    }
    out = CohClass::from_coeffs(target, coeffs)?;
    Ok(out)
}

/// Keeps factors `keep` (mapped in order onto `target`) and integrates the
/// rest against their fundamental classes.
pub fn integrate<C: Coeff>(
    a: &CohClass<C>,
    target: &CohRing,
    keep: &[usize],
) -> Result<CohClass<C>> {
    let src = a.ring();
    for (i, &k) in keep.iter().enumerate() {
        if k >= src.nfactors() || i >= target.nfactors() || src.dims()[k] != target.dims()[i] {
            return Err(Error::RingMismatch(format!(
                "factor {k} of {src} does not match {target}"
            )));
        }
    }
    let mut coeffs = vec![C::zero(); target.basis_len()];
    for (idx, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = src.exps(idx);
        let top = (0..src.nfactors())
            .filter(|j| !keep.contains(j))
            .all(|j| e[j] == src.dims()[j]);
        if top {
            let t: Vec<usize> = keep.iter().map(|&k| e[k]).collect();
            let i = target.index(&t);
            coeffs[i] = coeffs[i].add(c);
        }
    }
    CohClass::from_coeffs(target, coeffs)
}

/// Class of the diagonal in `X × X`: `∏_i Σ_j h_i^j h_i'^{n_i - j}`.
pub fn diagonal<C: Coeff>(x: &CohRing) -> CohClass<C> {
    let sq = x.product(x);
    let k = x.nfactors();
    let mut acc = CohClass::one(&sq);
    for (i, &n) in x.dims().iter().enumerate() {
        let mut f = CohClass::zero(&sq);
        for j in 0..=n {
            let mut e = vec![0; 2 * k];
            e[i] = j;
            e[k + i] = n - j;
            f = f.add(&CohClass::monomial(&sq, &e, C::one()));
        }
        acc = acc.mul(&f);
    }
    acc
}

/// For `ν` on `X × Y` and `μ` on `Y × Z`, the class `π_{13*}(π_{12}^* ν · π_{23}^* μ)`
/// on `X × Z`, so that `φ^{compose(μ, ν)} = φ^μ ∘ φ^ν`.
pub fn compose<C: Coeff>(
    mu: &CohClass<C>,
    yz: &ProductSpace,
    nu: &CohClass<C>,
    xy: &ProductSpace,
) -> Result<CohClass<C>> {
    if xy.right.dims() != yz.left.dims() {
        return Err(Error::RingMismatch(format!(
            "correspondences do not compose: {} vs {}",
            xy.right, yz.left
        )));
    }
    nu.check_ring(&xy.ring)?;
    mu.check_ring(&yz.ring)?;
    let (kx, ky, kz) = (xy.left.nfactors(), xy.right.nfactors(), yz.right.nfactors());
    let triple = xy.left.product(&xy.right).product(&yz.right);
    let s12: Vec<usize> = (0..kx + ky).collect();
    let s23: Vec<usize> = (kx..kx + ky + kz).collect();
    let prod = embed(nu, &triple, &s12)?.mul(&embed(mu, &triple, &s23)?);
    let xz = ProductSpace::new(&xy.left, &yz.right);
    let keep: Vec<usize> = (0..kx).chain(kx + ky..kx + ky + kz).collect();
    integrate(&prod, &xz.ring, &keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::{q, Q};

    #[test]
    fn pullback_and_pushforward() {
        let x = CohRing::projective(2);
        let y = CohRing::projective(1);
        let xy = ProductSpace::new(&x, &y);
        let a: CohClass = CohClass::monomial(&x, &[1], q(3));
        let pa = xy.pullback(&a, Side::Left).unwrap();
        assert_eq!(pa, CohClass::monomial(&xy.ring, &[1, 0], q(3)));
        // π_*(h1^2 h2^j) = h^j on Y
        let m: CohClass = CohClass::monomial(&xy.ring, &[2, 1], q(1));
        assert_eq!(xy.pushforward(&m, Side::Right).unwrap(), CohClass::h(&y, 0));
        let m: CohClass = CohClass::monomial(&xy.ring, &[1, 1], q(1));
        assert!(xy.pushforward(&m, Side::Right).unwrap().is_zero());
    }

    #[test]
    fn unit_correspondence_integrates() {
        let x = CohRing::projective(2);
        let xx = ProductSpace::square(&x);
        let one: CohClass = CohClass::one(&xx.ring);
        let a = CohClass::from_coeffs(&x, vec![q(5), q(-1), q(7)]).unwrap();
        assert_eq!(
            xx.integral_transform(&one, &a).unwrap(),
            CohClass::constant(&x, q(7))
        );
    }

    #[test]
    fn diagonal_acts_as_identity() {
        for dims in [vec![1], vec![2], vec![3], vec![1, 1]] {
            let x = CohRing::new(&dims);
            let xx = ProductSpace::square(&x);
            let delta = diagonal::<Q>(&x);
            for i in 0..x.basis_len() {
                let mut c = vec![q(0); x.basis_len()];
                c[i] = q(1);
                let b = CohClass::from_coeffs(&x, c).unwrap();
                assert_eq!(xx.integral_transform(&delta, &b).unwrap(), b);
            }
            assert_eq!(compose(&delta, &xx, &delta, &xx).unwrap(), delta);
        }
    }

    #[test]
    fn swap_is_an_involution() {
        let x = CohRing::projective(1);
        let y = CohRing::projective(2);
        let xy = ProductSpace::new(&x, &y);
        let mu: CohClass = CohClass::monomial(&xy.ring, &[1, 2], q(2)).add(&CohClass::monomial(
            &xy.ring,
            &[0, 1],
            q(1),
        ));
        let yx = ProductSpace::new(&y, &x);
        let s = xy.swap(&mu).unwrap();
        assert_eq!(
            s,
            CohClass::monomial(&yx.ring, &[2, 1], q(2)).add(&CohClass::monomial(
                &yx.ring,
                &[1, 0],
                q(1)
            ))
        );
        assert_eq!(yx.swap(&s).unwrap(), mu);
    }
}
