//! Hilbert series of graded modules from their leading-term modules.
//!
//! A series is stored as `N(t) / ∏_j (1 - t^{w_j})` with `N` a Laurent
//! polynomial with integer coefficients (negative exponents appear for
//! duals of free modules).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::polycore::Monomial;

pub type Laurent = BTreeMap<i64, i64>;

fn clean(mut p: Laurent) -> Laurent {
    p.retain(|_, c| *c != 0);
    p
}

pub(crate) fn laurent_add(a: &Laurent, b: &Laurent, sign: i64) -> Laurent {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert(0) += sign * c;
    }
    clean(out)
}

fn laurent_shift(a: &Laurent, s: i64) -> Laurent {
    a.iter().map(|(e, c)| (e + s, *c)).collect()
}

fn laurent_eval_one(a: &Laurent) -> i64 {
    a.values().sum()
}

/// `a / (1 - t^w)` when the division is exact.
fn divide_by_cyclotomic(a: &Laurent, w: u32) -> Option<Laurent> {
    if a.is_empty() {
        return Some(Laurent::new());
    }
    if laurent_eval_one(a) != 0 {
        return None;
    }
    let w = w as i64;
    let lo = *a.keys().next().unwrap();
    let hi = *a.keys().next_back().unwrap();
    // q_k = a_k + q_{k-w}
    let mut q = Laurent::new();
    for k in lo..=hi {
        let v = a.get(&k).copied().unwrap_or(0) + q.get(&(k - w)).copied().unwrap_or(0);
        if v != 0 {
            q.insert(k, v);
        }
    }
    // Exactness: the tail beyond `hi` must vanish.
    let tail = (hi - w + 1..=hi).any(|k| q.get(&k).copied().unwrap_or(0) != 0);
    if tail {
        return None;
    }
    Some(q)
}

/// Keep only the minimal generators of a monomial ideal.
pub(crate) fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by_key(|m| (m.degree(), m.0.clone()));
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator of the Hilbert series of `A / (gens)` over the weighted
/// denominator.
pub fn monomial_ideal_numerator(gens: &[Monomial], weights: &[u32]) -> Laurent {
    let gens = minimalize(gens);
    numerator_rec(gens, weights)
}

fn numerator_rec(gens: Vec<Monomial>, weights: &[u32]) -> Laurent {
    if gens.is_empty() {
        return BTreeMap::from([(0, 1)]);
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b)));
    if pairwise_coprime {
        let mut acc: Laurent = BTreeMap::from([(0, 1)]);
        for g in &gens {
            let d = g.weighted_degree(weights);
            acc = laurent_add(&acc, &laurent_shift(&acc, d), -1);
        }
        return acc;
    }
    // N(I' + (m)) = N(I') - t^deg(m) N(I' : m)
    let mut rest = gens;
    let m = rest.pop().unwrap();
    let colon: Vec<Monomial> = rest.iter().map(|g| m.gcd(g).quotient_of(g)).collect();
    let a = numerator_rec(rest, weights);
    let b = numerator_rec(minimalize(&colon), weights);
    laurent_add(&a, &laurent_shift(&b, m.weighted_degree(weights)), -1)
}

/// Length of a graded module, or `Infinite` for positive Krull dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(*n),
            Length::Infinite => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u64(*n),
            Length::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Laurent,
    pub weights: Vec<u32>,
}

impl HilbertSeries {
    pub fn new(numerator: Laurent, weights: Vec<u32>) -> Self {
        HilbertSeries {
            numerator: clean(numerator),
            weights,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn add(&self, other: &Self, sign: i64) -> Self {
        assert_eq!(self.weights, other.weights);
        HilbertSeries::new(
            laurent_add(&self.numerator, &other.numerator, sign),
            self.weights.clone(),
        )
    }

    pub fn shifted(&self, s: i64) -> Self {
        HilbertSeries::new(laurent_shift(&self.numerator, s), self.weights.clone())
    }

    /// Order of the pole at `t = 1`; the zero series has dimension 0.
    pub fn krull_dim(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let mut n = self.numerator.clone();
        let mut ord = 0;
        while let Some(q) = divide_by_cyclotomic(&n, 1) {
            n = q;
            ord += 1;
        }
        self.weights.len().saturating_sub(ord)
    }

    /// The series as a Laurent polynomial, when it is one.
    pub fn as_polynomial(&self) -> Option<Laurent> {
        let mut n = self.numerator.clone();
        for &w in &self.weights {
            n = divide_by_cyclotomic(&n, w)?;
        }
        Some(n)
    }

    pub fn length(&self) -> Length {
        match self.as_polynomial() {
            Some(p) => Length::Finite(laurent_eval_one(&p).max(0) as u64),
            None => Length::Infinite,
        }
    }

    /// Leading coefficients `dim_k M_t` for `t` in `lo..=hi`.
    pub fn expand(&self, lo: i64, hi: i64) -> Vec<i64> {
        // Multiply the numerator by each 1/(1 - t^w) as a power series.
        let mut coeffs: BTreeMap<i64, i64> = self.numerator.clone();
        for &w in &self.weights {
            let mut next = BTreeMap::new();
            let start = coeffs.keys().next().copied().unwrap_or(0);
            for k in start..=hi {
                let v = coeffs.get(&k).copied().unwrap_or(0)
                    + next.get(&(k - w as i64)).copied().unwrap_or(0);
                if v != 0 {
                    next.insert(k, v);
                }
            }
            coeffs = next;
        }
        (lo..=hi)
            .map(|k| coeffs.get(&k).copied().unwrap_or(0))
            .collect()
    }
}

fn term_text(c: i64, e: i64, first: bool) -> String {
    let sign = if c < 0 {
        if first {
            "-"
        } else {
            " - "
        }
    } else if first {
        ""
    } else {
        " + "
    };
    let a = c.abs();
    let mono = match e {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{e}"),
    };
    if mono.is_empty() {
        format!("{sign}{a}")
    } else if a == 1 {
        format!("{sign}{mono}")
    } else {
        format!("{sign}{a}*{mono}")
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = if self.numerator.is_empty() {
            "0".to_string()
        } else {
            self.numerator
                .iter()
                .enumerate()
                .map(|(i, (e, c))| term_text(*c, *e, i == 0))
                .collect::<String>()
        };
        let mut den: BTreeMap<u32, usize> = BTreeMap::new();
        for &w in &self.weights {
            *den.entry(w).or_insert(0) += 1;
        }
        if den.is_empty() || self.numerator.is_empty() {
            return f.write_str(&num);
        }
        let parts: Vec<String> = den
            .iter()
            .map(|(w, k)| {
                let base = if *w == 1 {
                    "(1 - t)".to_string()
                } else {
                    format!("(1 - t^{w})")
                };
                if *k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect();
        let num = if self.numerator.len() > 1 {
            format!("({num})")
        } else {
            num
        };
        write!(f, "{num}/{}", parts.join("*"))
    }
}
