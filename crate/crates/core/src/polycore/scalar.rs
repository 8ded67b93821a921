//! Coefficient fields.
//!
//! Exact work happens over [`Q`] (reduced big rationals) and [`GaussQ`]
//! (the Gaussian rationals `Q(i)`). Plain `f64` and [`Complex64`] are only
//! used by the numeric Gamma-class code, and the [`Coeff`]/[`Exact`] split
//! keeps them out of anything that needs exact cancellation.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text for a rational: `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Field operations shared by every coefficient kind.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_q(x: &Q) -> Self;
    /// Term-coefficient text used by the polynomial printer.
    fn to_text(&self) -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_q(&q(n))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// Marker for coefficient kinds with exact equality (Gröbner bases and
/// every exact acceptance check are restricted to these).
pub trait Exact: Coeff + Eq + std::hash::Hash {}

impl Coeff for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn to_text(&self) -> String {
        fmt_q(self)
    }
}

impl Exact for Q {}

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussQ {
    pub re: Q,
    pub im: Q,
}

impl GaussQ {
    pub fn new(re: Q, im: Q) -> Self {
        GaussQ { re, im }
    }

    pub fn i() -> Self {
        GaussQ::new(q(0), q(1))
    }

    pub fn conj(&self) -> Self {
        GaussQ::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Coeff for GaussQ {
    fn zero() -> Self {
        GaussQ::new(q(0), q(0))
    }
    fn one() -> Self {
        GaussQ::new(q(1), q(0))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, rhs: &Self) -> Self {
        GaussQ::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn sub(&self, rhs: &Self) -> Self {
        GaussQ::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn mul(&self, rhs: &Self) -> Self {
        GaussQ::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
    fn neg(&self) -> Self {
        GaussQ::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(GaussQ::new(&self.re / &n, -&self.im / &n))
    }
    fn from_q(x: &Q) -> Self {
        GaussQ::new(x.clone(), q(0))
    }
    fn to_text(&self) -> String {
        if Zero::is_zero(&self.im) {
            return fmt_q(&self.re);
        }
        if Zero::is_zero(&self.re) {
            return format!("{}i", fmt_q(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        format!("({}{}{}i)", fmt_q(&self.re), sign, fmt_q(&self.im.abs()))
    }
}

impl Exact for GaussQ {}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn from_q(x: &Q) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }
    fn to_text(&self) -> String {
        format!("{self}")
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Coeff::is_zero(self)).then(|| self.inv())
    }
    fn from_q(x: &Q) -> Self {
        Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn to_text(&self) -> String {
        format!("({}{:+}i)", self.re, self.im)
    }
}

/// A tagged scalar as it appears in reports: exact rational, exact Gaussian
/// rational, or a float carrying the tolerance it was produced under.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scalar {
    Rational { value: String },
    Gaussian { re: String, im: String },
    Float { value: f64, tol: f64 },
}

impl Scalar {
    pub fn rational(x: &Q) -> Self {
        Scalar::Rational { value: fmt_q(x) }
    }

    pub fn gaussian(z: &GaussQ) -> Self {
        Scalar::Gaussian {
            re: fmt_q(&z.re),
            im: fmt_q(&z.im),
        }
    }

    pub fn float(value: f64, tol: f64) -> Self {
        Scalar::Float { value, tol }
    }

    pub fn as_rational(&self) -> Result<Q> {
        match self {
            Scalar::Rational { value } => parse_q(value),
            _ => Err(Error::CoefficientKind(
                "expected an exact rational scalar".into(),
            )),
        }
    }

    pub fn as_gaussian(&self) -> Result<GaussQ> {
        match self {
            Scalar::Rational { value } => Ok(GaussQ::from_q(&parse_q(value)?)),
            Scalar::Gaussian { re, im } => Ok(GaussQ::new(parse_q(re)?, parse_q(im)?)),
            Scalar::Float { .. } => Err(Error::CoefficientKind(
                "float scalars never mix with exact ones".into(),
            )),
        }
    }

    /// Equality between scalars of the same kind; floats compare within the
    /// larger of the two tolerances. Mixing a float with an exact kind is an
    /// error rather than a silent conversion.
    pub fn agrees_with(&self, other: &Scalar) -> Result<bool> {
        match (self, other) {
            (Scalar::Float { value: a, tol: ta }, Scalar::Float { value: b, tol: tb }) => {
                Ok((a - b).abs() <= ta.max(*tb))
            }
            (Scalar::Float { .. }, _) | (_, Scalar::Float { .. }) => Err(Error::CoefficientKind(
                "cannot compare a float scalar with an exact one".into(),
            )),
            _ => Ok(self.as_gaussian()? == other.as_gaussian()?),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational { value } => f.write_str(value),
            Scalar::Gaussian { re, im } => write!(f, "{re} + ({im})i"),
            Scalar::Float { value, tol } => write!(f, "{value} (±{tol})"),
        }
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `binom(m, k)` for any integer `m`, read as the polynomial
/// `m(m-1)...(m-k+1)/k!`, so negative tops give signed values.
pub fn signed_binomial(m: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for j in 0..k as i64 {
        num *= BigInt::from(m - j);
    }
    num / factorial(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let x = qr(6, -4);
        assert_eq!(fmt_q(&x), "-3/2");
        assert_eq!(parse_q(" -3/2 ").unwrap(), x);
        assert!(parse_q("1/0").is_err());
    }

    #[test]
    fn gaussian_conjugation_is_involution() {
        let z = GaussQ::new(qr(1, 2), qr(-3, 7));
        assert_eq!(z.conj().conj(), z);
        assert_eq!(z.mul(&z.inv().unwrap()), GaussQ::one());
        assert_eq!(GaussQ::i().mul(&GaussQ::i()), GaussQ::from_i64(-1));
    }

    #[test]
    fn signed_binomials() {
        assert_eq!(signed_binomial(4, 2), BigInt::from(6));
        assert_eq!(signed_binomial(1, 2), BigInt::from(0));
        assert_eq!(signed_binomial(-1, 2), BigInt::from(1));
        assert_eq!(signed_binomial(-3, 3), BigInt::from(-10));
        assert_eq!(signed_binomial(7, 0), BigInt::from(1));
    }

    #[test]
    fn float_scalars_do_not_mix() {
        let a = Scalar::float(0.5, 1e-9);
        let b = Scalar::rational(&qr(1, 2));
        assert!(a.agrees_with(&b).is_err());
        assert!(a.agrees_with(&Scalar::float(0.5 + 1e-12, 1e-9)).unwrap());
        assert!(b
            .agrees_with(&Scalar::gaussian(&GaussQ::from_q(&qr(1, 2))))
            .unwrap());
    }
}
