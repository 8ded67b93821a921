use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::ring::{exp_series, CohClass, CohRing};
use crate::error::{Error, Result};
use crate::polycore::scalar::{q, signed_binomial, Coeff, GaussQ, Q};

/// Series of `x / (1 - e^{-x})` up to `x^n`.
pub fn todd_series(n: usize) -> Vec<Q> {
    // (1 - e^{-x})/x = Σ (-1)^k x^k / (k+1)!
    let mut f = q(1);
    let base: Vec<Q> = (0..=n)
        .map(|k| {
            f /= q(k as i64 + 1);
            if k % 2 == 1 {
                -f.clone()
            } else {
                f.clone()
            }
        })
        .collect();
    invert_series(&base)
}

/// Reciprocal of a power series with unit constant term.
pub fn invert_series(a: &[Q]) -> Vec<Q> {
    let mut b = vec![q(0); a.len()];
    if a.is_empty() {
        return b;
    }
    let a0 = a[0].recip();
    b[0] = a0.clone();
    for k in 1..a.len() {
        let mut s = q(0);
        for j in 1..=k {
            s += &a[j] * &b[k - j];
        }
        b[k] = -s * &a0;
    }
    b
}

/// `binom(1/2, k)`, the coefficients of `(1 + u)^{1/2}`.
pub fn sqrt_series(n: usize) -> Vec<Q> {
    let half = Q::new(1.into(), 2.into());
    let mut out = Vec::with_capacity(n + 1);
    let mut c = q(1);
    for k in 0..=n {
        out.push(c.clone());
        c = c * (&half - q(k as i64)) / q(k as i64 + 1);
    }
    out
}

/// A formal sum of line bundles given by Chern roots with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleData {
    ring: CohRing,
    roots: Vec<(CohClass, i64)>,
}

impl BundleData {
    pub fn new(ring: &CohRing, roots: Vec<(CohClass, i64)>) -> Result<Self> {
        for (r, _) in &roots {
            r.check_ring(ring)?;
            if r.support_degrees().iter().any(|&p| p != 1) {
                return Err(Error::Degree(format!("Chern root {r} is not of degree 1")));
            }
        }
        let b = BundleData {
            ring: ring.clone(),
            roots,
        };
        if b.rank() < 0 {
            return Err(Error::Invalid(format!("negative rank {}", b.rank())));
        }
        Ok(b)
    }

    pub fn trivial(ring: &CohRing, rank: i64) -> Result<Self> {
        Self::new(ring, vec![(CohClass::zero(ring), rank)])
    }

    pub fn line_bundle(ring: &CohRing, twist: &[i64]) -> Result<Self> {
        check_twist(ring, twist)?;
        let a: Vec<Q> = twist.iter().map(|&t| q(t)).collect();
        Self::new(ring, vec![(CohClass::linear(ring, &a), 1)])
    }

    /// `T_X` from the Euler sequences: `n_i + 1` copies of `h_i` minus a
    /// trivial summand per factor.
    pub fn tangent(ring: &CohRing) -> Self {
        let mut roots = Vec::new();
        for (i, &n) in ring.dims().iter().enumerate() {
            roots.push((CohClass::h(ring, i), n as i64 + 1));
            roots.push((CohClass::zero(ring), -1));
        }
        BundleData {
            ring: ring.clone(),
            roots,
        }
    }

    /// `ω_X = O(-(n_1+1), …, -(n_k+1))`.
    pub fn canonical(ring: &CohRing) -> Self {
        let twist: Vec<i64> = ring.dims().iter().map(|&n| -(n as i64) - 1).collect();
        Self::line_bundle(ring, &twist).expect("canonical twist matches the ring")
    }

    pub fn ring(&self) -> &CohRing {
        &self.ring
    }

    pub fn roots(&self) -> &[(CohClass, i64)] {
        &self.roots
    }

    pub fn rank(&self) -> i64 {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        other
            .ring
            .dims()
            .eq(self.ring.dims())
            .then_some(())
            .ok_or_else(|| {
                Error::RingMismatch(format!("bundles on {} and {}", self.ring, other.ring))
            })?;
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().cloned());
        Self::new(&self.ring, roots)
    }
}

fn check_twist(ring: &CohRing, twist: &[i64]) -> Result<()> {
    if twist.len() != ring.nfactors() {
        return Err(Error::RingMismatch(format!(
            "twist of length {} on {} with {} factors",
            twist.len(),
            ring,
            ring.nfactors()
        )));
    }
    Ok(())
}

/// `ch = Σ m · exp(root)`.
pub fn chern_character(b: &BundleData) -> CohClass {
    let mut acc = CohClass::zero(&b.ring);
    for (r, m) in &b.roots {
        let e = r.exp().expect("roots have no constant term");
        acc = acc.add(&e.scale(&q(*m)));
    }
    acc
}

/// `td = ∏ (root / (1 - e^{-root}))^m`.
pub fn todd(b: &BundleData) -> CohClass {
    let d = b.ring.dim();
    let series = todd_series(d);
    let inverse = invert_series(&series);
    let mut acc = CohClass::one(&b.ring);
    for (r, m) in &b.roots {
        let s = if *m >= 0 { &series } else { &inverse };
        let t = CohClass::eval_series(r, s).expect("roots have no constant term");
        acc = acc.mul(&t.pow(m.unsigned_abs() as usize));
    }
    acc
}

/// `td(T_X)`.
pub fn todd_of(ring: &CohRing) -> CohClass {
    todd(&BundleData::tangent(ring))
}

/// The square root of `td(T_X)` with constant term 1.
pub fn sqrt_todd(ring: &CohRing) -> CohClass {
    let u = todd_of(ring).sub(&CohClass::one(ring));
    CohClass::eval_series(&u, &sqrt_series(ring.dim())).expect("td has constant term 1")
}

/// `exp(½ Σ (n_i + 1) h_i)`, the inverse of the square root of `ch(ω_X)`.
pub fn inverse_sqrt_ch_omega(ring: &CohRing) -> CohClass {
    let a: Vec<Q> = ring
        .dims()
        .iter()
        .map(|&n| Q::new((n as i64 + 1).into(), 2.into()))
        .collect();
    CohClass::linear(ring, &a)
        .exp()
        .expect("linear class is nilpotent")
}

pub fn tau<C: Coeff>(v: &CohClass<C>) -> CohClass<C> {
    v.tau()
}

/// `v^∨ = τ(v) · (√ch ω_X)^{-1}`.
pub fn dual<C: Coeff>(v: &CohClass<C>) -> CohClass<C> {
    let w = inverse_sqrt_ch_omega(v.ring()).map_coeffs(C::from_q);
    v.tau().mul(&w)
}

/// `⟨v, w⟩ = ∫ v^∨ · w`.
pub fn mukai_pairing<C: Coeff>(v: &CohClass<C>, w: &CohClass<C>) -> Result<C> {
    w.check_ring(v.ring())?;
    Ok(dual(v).mul(w).integral())
}

/// `∫ x · y · td(T_X)`.
pub fn td_pairing(x: &CohClass, y: &CohClass) -> Result<Q> {
    y.check_ring(x.ring())?;
    Ok(x.mul(y).mul(&todd_of(x.ring())).integral())
}

/// Coherent sheaves built from line bundles and coordinate linear
/// subvarieties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafDescriptor {
    /// `O(a_1, …, a_k)`.
    LineBundle(Vec<i64>),
    /// `O_Y` for `Y` cut out by `c_i` hyperplanes of factor `i`.
    LinearSubvariety(Vec<usize>),
    DirectSum(Vec<SheafDescriptor>),
    /// `F[by]`, whose class is `(-1)^by` times that of `F`.
    Shift {
        sheaf: Box<SheafDescriptor>,
        by: i64,
    },
}

impl SheafDescriptor {
    pub fn structure(ring: &CohRing) -> Self {
        SheafDescriptor::LineBundle(vec![0; ring.nfactors()])
    }

    pub fn validate(&self, ring: &CohRing) -> Result<()> {
        match self {
            SheafDescriptor::LineBundle(a) => check_twist(ring, a),
            SheafDescriptor::LinearSubvariety(c) => {
                if c.len() != ring.nfactors() {
                    return Err(Error::RingMismatch(format!(
                        "codimension vector of length {} on {}",
                        c.len(),
                        ring
                    )));
                }
                for (ci, n) in c.iter().zip(ring.dims()) {
                    if ci > n {
                        return Err(Error::Invalid(format!(
                            "codimension {ci} exceeds factor dimension {n}"
                        )));
                    }
                }
                Ok(())
            }
            SheafDescriptor::DirectSum(parts) => parts.iter().try_for_each(|p| p.validate(ring)),
            SheafDescriptor::Shift { sheaf, .. } => sheaf.validate(ring),
        }
    }

    /// Codimension of the support when it is a single linear subvariety
    /// (line bundles have codimension 0).
    pub fn codim(&self) -> Option<usize> {
        match self {
            SheafDescriptor::LineBundle(_) => Some(0),
            SheafDescriptor::LinearSubvariety(c) => Some(c.iter().sum()),
            SheafDescriptor::Shift { sheaf, .. } => sheaf.codim(),
            SheafDescriptor::DirectSum(parts) => {
                let cs: Option<Vec<usize>> = parts.iter().map(|p| p.codim()).collect();
                let cs = cs?;
                let first = *cs.first()?;
                cs.iter().all(|&c| c == first).then_some(first)
            }
        }
    }

    /// Class in `K_0` as multiplicities of line bundles, obtained from
    /// Koszul resolutions `0 → ∧^c O(-1)^c → … → O → O_Y → 0`.
    pub fn k_class(&self, ring: &CohRing) -> Result<BTreeMap<Vec<i64>, BigInt>> {
        self.validate(ring)?;
        let mut out = BTreeMap::new();
        self.k_class_into(ring, &BigInt::from(1), &mut out);
        out.retain(|_, m| *m != BigInt::from(0));
        Ok(out)
    }

    fn k_class_into(&self, ring: &CohRing, sign: &BigInt, out: &mut BTreeMap<Vec<i64>, BigInt>) {
        match self {
            SheafDescriptor::LineBundle(a) => *out.entry(a.clone()).or_default() += sign,
            SheafDescriptor::LinearSubvariety(c) => {
                let mut terms: Vec<(Vec<i64>, BigInt)> =
                    vec![(vec![0; ring.nfactors()], sign.clone())];
                for (i, &ci) in c.iter().enumerate() {
                    let mut next = Vec::new();
                    for (tw, m) in &terms {
                        for j in 0..=ci {
                            let mut t = tw.clone();
                            t[i] -= j as i64;
                            let mut b = m * signed_binomial(ci as i64, j as u32);
                            if j % 2 == 1 {
                                b = -b;
                            }
                            next.push((t, b));
                        }
                    }
                    terms = next;
                }
                for (t, m) in terms {
                    *out.entry(t).or_default() += m;
                }
            }
            SheafDescriptor::DirectSum(parts) => {
                for p in parts {
                    p.k_class_into(ring, sign, out);
                }
            }
            SheafDescriptor::Shift { sheaf, by } => {
                let s = if by.rem_euclid(2) == 1 {
                    -sign
                } else {
                    sign.clone()
                };
                sheaf.k_class_into(ring, &s, out);
            }
        }
    }
}

/// `ch(s)`; subvarieties use `ch(O_Y) = ∏ (1 - e^{-h_i})^{c_i}`.
pub fn sheaf_class(s: &SheafDescriptor, ring: &CohRing) -> Result<CohClass> {
    s.validate(ring)?;
    Ok(match s {
        SheafDescriptor::LineBundle(a) => chern_character(&BundleData::line_bundle(ring, a)?),
        SheafDescriptor::LinearSubvariety(c) => {
            let mut acc = CohClass::one(ring);
            for (i, &ci) in c.iter().enumerate() {
                let e = CohClass::one(ring).sub(&CohClass::h(ring, i).neg().exp()?);
                acc = acc.mul(&e.pow(ci));
            }
            acc
        }
        SheafDescriptor::DirectSum(parts) => {
            let mut acc = CohClass::zero(ring);
            for p in parts {
                acc = acc.add(&sheaf_class(p, ring)?);
            }
            acc
        }
        SheafDescriptor::Shift { sheaf, by } => {
            let c = sheaf_class(sheaf, ring)?;
            if by.rem_euclid(2) == 1 {
                c.neg()
            } else {
                c
            }
        }
    })
}

/// `v(s) = ch(s) · √td_X`.
pub fn mukai_vector(s: &SheafDescriptor, ring: &CohRing) -> Result<CohClass> {
    Ok(sheaf_class(s, ring)?.mul(&sqrt_todd(ring)))
}

/// `χ(O(a), O(b)) = ∏ binom(n_i + b_i - a_i, n_i)`.
pub fn line_bundle_chi(ring: &CohRing, a: &[i64], b: &[i64]) -> BigInt {
    ring.dims()
        .iter()
        .enumerate()
        .map(|(i, &n)| signed_binomial(n as i64 + b[i] - a[i], n as u32))
        .product()
}

/// `χ(s, t) = Σ (-1)^i dim Ext^i(s, t)`, computed from `K_0` classes and
/// line-bundle Euler characteristics only.
pub fn euler_pairing(s: &SheafDescriptor, t: &SheafDescriptor, ring: &CohRing) -> Result<BigInt> {
    let ks = s.k_class(ring)?;
    let kt = t.k_class(ring)?;
    let mut total = BigInt::from(0);
    for (a, m) in &ks {
        for (b, n) in &kt {
            total += m * n * line_bundle_chi(ring, a, b);
        }
    }
    Ok(total)
}

/// Both sides of an exact identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactCheck {
    pub left: String,
    pub right: String,
    pub passed: bool,
}

impl ExactCheck {
    pub fn compare(left: &Q, right: &BigInt) -> Self {
        let r = Q::from_integer(right.clone());
        ExactCheck {
            left: left.to_text(),
            right: right.to_string(),
            passed: *left == r,
        }
    }
}

/// `∫ ch(s) · td(T_X) = χ(O, s)`.
pub fn grr_check(s: &SheafDescriptor, ring: &CohRing) -> Result<ExactCheck> {
    let left = sheaf_class(s, ring)?.mul(&todd_of(ring)).integral();
    let right = euler_pairing(&SheafDescriptor::structure(ring), s, ring)?;
    Ok(ExactCheck::compare(&left, &right))
}

/// `⟨v(s), v(t)⟩ = χ(s, t)`.
pub fn hrr_check(s: &SheafDescriptor, t: &SheafDescriptor, ring: &CohRing) -> Result<ExactCheck> {
    let left = mukai_pairing(&mukai_vector(s, ring)?, &mukai_vector(t, ring)?)?;
    let right = euler_pairing(s, t, ring)?;
    Ok(ExactCheck::compare(&left, &right))
}

/// `∫ τ(ch s) · ch t · td_X = χ(s, t)`.
pub fn td_pairing_check(
    s: &SheafDescriptor,
    t: &SheafDescriptor,
    ring: &CohRing,
) -> Result<ExactCheck> {
    let left = td_pairing(&sheaf_class(s, ring)?.tau(), &sheaf_class(t, ring)?)?;
    let right = euler_pairing(s, t, ring)?;
    Ok(ExactCheck::compare(&left, &right))
}

/// Rejects `Λ` unless it lives in odd half-degrees, i.e. `τ(Λ) = -Λ`.
pub fn check_odd(lambda: &CohClass<GaussQ>) -> Result<()> {
    let even: Vec<usize> = lambda
        .support_degrees()
        .into_iter()
        .filter(|p| p % 2 == 0)
        .collect();
    if even.is_empty() {
        Ok(())
    } else {
        Err(Error::TwistNotOdd(format!(
            "components in half-degrees {even:?}"
        )))
    }
}

/// `μ_Λ(s) = ch(s) · √td_X · exp(iΛ)`.
pub fn lambda_twist_vector(
    s: &SheafDescriptor,
    lambda: &CohClass<GaussQ>,
) -> Result<CohClass<GaussQ>> {
    let ring = lambda.ring().clone();
    check_odd(lambda)?;
    let v = mukai_vector(s, &ring)?.to_gaussian();
    let twist = lambda.scale(&GaussQ::i()).exp()?;
    Ok(v.mul(&twist))
}

/// `exp` of a nilpotent class with arbitrary coefficients.
pub fn exp_class<C: Coeff>(x: &CohClass<C>) -> Result<CohClass<C>> {
    CohClass::eval_series(x, &exp_series(x.ring().dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::qr;

    fn p(n: usize) -> CohRing {
        CohRing::projective(n)
    }

    fn cls(r: &CohRing, c: &[Q]) -> CohClass {
        CohClass::from_coeffs(r, c.to_vec()).unwrap()
    }

    #[test]
    fn series_coefficients() {
        // x/(1-e^{-x}) = 1 + x/2 + x^2/12 - x^4/720
        assert_eq!(
            todd_series(4),
            vec![q(1), qr(1, 2), qr(1, 12), q(0), qr(-1, 720)]
        );
        assert_eq!(sqrt_series(3), vec![q(1), qr(1, 2), qr(-1, 8), qr(1, 16)]);
    }

    #[test]
    fn chern_characters() {
        let r = p(2);
        let triv = BundleData::trivial(&r, 3).unwrap();
        assert_eq!(chern_character(&triv), CohClass::constant(&r, q(3)));
        let o2 = BundleData::line_bundle(&r, &[2]).unwrap();
        assert_eq!(chern_character(&o2), cls(&r, &[q(1), q(2), q(2)]));
        let t = BundleData::tangent(&r);
        assert_eq!(t.rank(), 2);
        assert_eq!(chern_character(&t), cls(&r, &[q(2), q(3), qr(3, 2)]));
        let sum = o2.direct_sum(&triv).unwrap();
        assert_eq!(
            chern_character(&sum),
            chern_character(&o2).add(&chern_character(&triv))
        );
        assert!(BundleData::trivial(&r, -1).is_err());
        let bad = CohClass::h(&r, 0).mul(&CohClass::h(&r, 0));
        assert!(BundleData::new(&r, vec![(bad, 1)]).is_err());
    }

    #[test]
    fn todd_classes() {
        assert_eq!(todd_of(&p(1)), cls(&p(1), &[q(1), q(1)]));
        assert_eq!(todd_of(&p(2)), cls(&p(2), &[q(1), qr(3, 2), q(1)]));
        assert_eq!(sqrt_todd(&p(2)), cls(&p(2), &[q(1), qr(3, 4), qr(7, 32)]));
        for dims in [vec![3], vec![1, 1], vec![2, 1], vec![4]] {
            let r = CohRing::new(&dims);
            let s = sqrt_todd(&r);
            assert_eq!(s.mul(&s), todd_of(&r));
            // ∫ td = χ(O) = 1
            assert_eq!(todd_of(&r).integral(), q(1));
        }
    }

    #[test]
    fn sheaf_classes_and_mukai_vectors() {
        let r = p(2);
        let line = SheafDescriptor::LinearSubvariety(vec![1]);
        let pt = SheafDescriptor::LinearSubvariety(vec![2]);
        assert_eq!(
            sheaf_class(&line, &r).unwrap(),
            cls(&r, &[q(0), q(1), qr(-1, 2)])
        );
        assert_eq!(sheaf_class(&pt, &r).unwrap(), cls(&r, &[q(0), q(0), q(1)]));
        let o = SheafDescriptor::structure(&r);
        assert_eq!(sheaf_class(&o, &r).unwrap(), CohClass::one(&r));
        assert_eq!(mukai_vector(&o, &r).unwrap(), sqrt_todd(&r));
        let vl = mukai_vector(&line, &r).unwrap();
        assert_eq!(vl, cls(&r, &[q(0), q(1), qr(1, 4)]));
        assert_eq!(mukai_vector(&pt, &r).unwrap(), cls(&r, &[q(0), q(0), q(1)]));
        assert_eq!(dual(&vl), cls(&r, &[q(0), q(-1), qr(-5, 4)]));
        assert_eq!(mukai_pairing(&vl, &vl).unwrap(), q(-1));
        let zero = CohClass::zero(&r);
        assert_eq!(mukai_pairing(&zero, &vl).unwrap(), q(0));
        assert!(sheaf_class(&SheafDescriptor::LinearSubvariety(vec![3]), &r).is_err());
    }

    #[test]
    fn k_classes_match_characteristic_classes() {
        let r = CohRing::new(&[2, 1]);
        let s = SheafDescriptor::DirectSum(vec![
            SheafDescriptor::LinearSubvariety(vec![1, 1]),
            SheafDescriptor::Shift {
                sheaf: Box::new(SheafDescriptor::LineBundle(vec![1, -2])),
                by: 1,
            },
        ]);
        let mut via_k = CohClass::zero(&r);
        for (tw, m) in s.k_class(&r).unwrap() {
            let e = SheafDescriptor::LineBundle(tw);
            via_k = via_k.add(&sheaf_class(&e, &r).unwrap().scale(&Q::from_integer(m)));
        }
        assert_eq!(via_k, sheaf_class(&s, &r).unwrap());
    }

    #[test]
    fn euler_pairing_values() {
        let o = SheafDescriptor::LineBundle(vec![0]);
        assert_eq!(euler_pairing(&o, &o, &p(2)).unwrap(), 1.into());
        let om1 = SheafDescriptor::LineBundle(vec![-1]);
        assert_eq!(euler_pairing(&om1, &o, &p(3)).unwrap(), 4.into());
        let line = SheafDescriptor::LinearSubvariety(vec![1]);
        assert_eq!(euler_pairing(&line, &line, &p(2)).unwrap(), (-1).into());
        let o1 = SheafDescriptor::LineBundle(vec![1]);
        let o3 = SheafDescriptor::LineBundle(vec![3]);
        assert_eq!(euler_pairing(&o1, &o3, &p(2)).unwrap(), 6.into());
        // Serre duality sign: χ(O(-3)) on P^2 = binom(-1, 2) = 1
        assert_eq!(
            euler_pairing(&o, &SheafDescriptor::LineBundle(vec![-3]), &p(2)).unwrap(),
            1.into()
        );
    }

    #[test]
    fn grr_examples() {
        let r = p(2);
        assert!(
            grr_check(&SheafDescriptor::structure(&r), &r)
                .unwrap()
                .passed
        );
        let c = grr_check(&SheafDescriptor::LineBundle(vec![2]), &p(1)).unwrap();
        assert!(c.passed);
        assert_eq!(c.right, "3");
        let zero = SheafDescriptor::DirectSum(vec![]);
        let c = grr_check(&zero, &r).unwrap();
        assert!(c.passed && c.left == "0");
    }

    #[test]
    fn lambda_twist() {
        let r = p(2);
        let line = SheafDescriptor::LinearSubvariety(vec![1]);
        let lam = CohClass::<GaussQ>::h(&r, 0).scale(&GaussQ::from_i64(2));
        let mu = lambda_twist_vector(&line, &lam).unwrap();
        assert_eq!(mukai_pairing(&mu, &mu).unwrap(), GaussQ::from_i64(-1));
        let zero = CohClass::<GaussQ>::zero(&r);
        assert_eq!(
            lambda_twist_vector(&line, &zero).unwrap(),
            mukai_vector(&line, &r).unwrap().to_gaussian()
        );
        let even = CohClass::<GaussQ>::h(&r, 0).pow(2);
        assert!(matches!(
            lambda_twist_vector(&line, &even),
            Err(Error::TwistNotOdd(_))
        ));
    }
}
