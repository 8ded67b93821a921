use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::classes::{chern_character, todd_series, BundleData};
use super::ring::{CoeffKind, CohClass, CohRing};
use crate::error::{Error, Result};

// Euler's constant and ζ(2)..ζ(16) to 32 significant digits, as tabulated
// in OEIS A001620 and A013661..A013674 (cross-checked with mpmath).
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.57721566490153286060651209008240;

#[allow(clippy::excessive_precision)]
pub const ZETA: [f64; 17] = [
    f64::NAN,
    f64::INFINITY,
    1.6449340668482264364724151666460,
    1.2020569031595942853997381615114,
    1.0823232337111381915160036965412,
    1.0369277551433699263313654864570,
    1.0173430619844491397145179297909,
    1.0083492773819228268397975498498,
    1.0040773561979443393786852385087,
    1.0020083928260822144178527692324,
    1.0009945751278180853371459589003,
    1.0004941886041194645587022825265,
    1.0002460865533080482986379980477,
    1.0001227133475784891467518365264,
    1.0000612481350587048292585451051,
    1.0000305882363070204935517285106,
    1.0000152822594086518717325714876,
];

pub const MAX_GAMMA_ORDER: usize = 16;

/// `Γ̂_X = exp(γ ch_1(T_X) + Σ_{n=2}^{order} ζ(n)/n · ch_n(T_X))`, where
/// `ch_n` is the half-degree `n` part of `ch(T_X)`. Some references put a
/// factor `(-1)^n` on the zeta terms; this one does not.
pub fn gamma_class(ring: &CohRing, order: usize) -> Result<CohClass<f64>> {
    if ring.kind() != CoeffKind::Float {
        return Err(Error::CoefficientKind(format!(
            "the Gamma class needs a float ring, got {:?}",
            ring.kind()
        )));
    }
    if order > ring.dim() || order > MAX_GAMMA_ORDER {
        return Err(Error::Invalid(format!(
            "order {order} exceeds the ring dimension {}",
            ring.dim()
        )));
    }
    let ch = chern_character(&BundleData::tangent(ring)).to_float();
    let mut exponent = ch.component(1).scale(&EULER_GAMMA);
    for n in 2..=order {
        exponent = exponent.add(&ch.component(n).scale(&(ZETA[n] / n as f64)));
    }
    exponent.exp()
}

/// `exp(f)` for a power series with `f_0 = 0`, via `k g_k = Σ j f_j g_{k-j}`.
fn series_exp(f: &[Complex64]) -> Vec<Complex64> {
    let mut g = vec![Complex64::new(0.0, 0.0); f.len()];
    if f.is_empty() {
        return g;
    }
    g[0] = Complex64::new(1.0, 0.0);
    for k in 1..f.len() {
        let s: Complex64 = (1..=k).map(|j| f[j] * g[k - j] * j as f64).sum();
        g[k] = s / k as f64;
    }
    g
}

/// `log Γ(1 + s q) = -γ s q + Σ_{n≥2} ζ(n) (-s q)^n / n` for `s = ±1`.
fn log_gamma_series(order: usize, s: f64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
    if order >= 1 {
        out[1] = Complex64::new(-EULER_GAMMA * s, 0.0);
    }
    for n in 2..=order {
        out[n] = Complex64::new(ZETA[n] * (-s).powi(n as i32) / n as f64, 0.0);
    }
    out
}

/// Coefficients in `q` of `z / (1 - e^{-z})` at `z = 2πi q`.
pub fn todd_side(order: usize) -> Vec<Complex64> {
    let z = Complex64::new(0.0, 2.0 * PI);
    todd_series(order)
        .iter()
        .enumerate()
        .map(|(k, c)| z.powu(k as u32) * <f64 as crate::polycore::Coeff>::from_q(c))
        .collect()
}

/// Coefficients in `q` of `e^{iπq} Γ(1+q) Γ(1-q)`.
pub fn gamma_side(order: usize) -> Vec<Complex64> {
    let mut log = vec![Complex64::new(0.0, 0.0); order + 1];
    if order >= 1 {
        log[1] = Complex64::new(0.0, PI);
    }
    for s in [1.0, -1.0] {
        for (k, c) in log_gamma_series(order, s).into_iter().enumerate() {
            log[k] += c;
        }
    }
    series_exp(&log)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaIdentityReport {
    pub order: usize,
    pub tol: f64,
    pub max_error: f64,
    pub passed: bool,
}

/// Compares both sides of `z/(1-e^{-z}) = e^{iπq} Γ(1+q) Γ(1-q)` up to `q^order`.
pub fn gamma_identity_check(order: usize, tol: f64) -> Result<GammaIdentityReport> {
    if order > MAX_GAMMA_ORDER {
        return Err(Error::Invalid(format!(
            "order {order} exceeds {MAX_GAMMA_ORDER}"
        )));
    }
    let lhs = todd_side(order);
    let rhs = gamma_side(order);
    let max_error = lhs
        .iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(GammaIdentityReport {
        order,
        tol,
        max_error,
        passed: max_error < tol,
    })
}
