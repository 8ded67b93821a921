//! Jacobi rings of quasi-homogeneous isolated singularities, Milnor
//! numbers and the Grothendieck residue pairing.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::linalg::{self, QMatrix};
use crate::polycore::parse::monomial_text;
use crate::polycore::scalar::{fmt_q, q, Q};
use crate::polycore::{normal_form, Ideal, Monomial, MonomialOrder, Poly, PolyRing};

/// `k[x] / (∂f/∂x_1, …, ∂f/∂x_m)` with its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct JacobiRing {
    f: Poly,
    weights: Vec<u32>,
    degree: i64,
    order: MonomialOrder,
    ideal: Ideal,
    basis: Vec<Monomial>,
    hessian: Poly,
    socle: Poly,
    socle_monomial: Monomial,
    socle_coefficient: Q,
}

fn weighted_degree(f: &Poly, weights: &[u32]) -> Result<i64> {
    let mut degs = f.terms().map(|(m, _)| m.weighted_degree(weights));
    let d = degs
        .next()
        .ok_or_else(|| Error::NotQuasiHomogeneous("zero polynomial".into()))?;
    if degs.any(|e| e != d) {
        return Err(Error::NotQuasiHomogeneous(format!(
            "{f} has terms of different weighted degrees"
        )));
    }
    Ok(d)
}

/// Determinant by cofactor expansion along the first row.
fn poly_det(m: &[Vec<Poly>], ring: &std::sync::Arc<PolyRing>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(ring);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &poly_det(&minor, ring);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Monomials not divisible by any of `leads`; `None` if there are infinitely many.
fn standard_monomials(leads: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    let mut bounds = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let pure = leads
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|m| m.0[i])
            .min()?;
        bounds.push(pure);
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    loop {
        let m = Monomial(cur.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == nvars {
                return Some(out);
            }
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

impl JacobiRing {
    pub fn new(f: &Poly, weights: &[u32]) -> Result<Self> {
        let ring = f.ring().clone();
        let n = ring.nvars();
        if weights.len() != n || weights.contains(&0) {
            return Err(Error::Invalid(format!(
                "need {n} positive weights, got {weights:?}"
            )));
        }
        let degree = weighted_degree(f, weights)?;
        let partials: Vec<Poly> = (0..n).map(|i| f.derivative(i)).collect();
        let order = MonomialOrder::grevlex();
        let ideal = Ideal::new(&ring, partials.clone())?;
        let leads = ideal.leading_monomials(&order)?;
        let mut basis = standard_monomials(&leads, n).ok_or(Error::NonIsolated)?;
        basis.sort_by_key(|m| (m.weighted_degree(weights), std::cmp::Reverse(m.0.clone())));
        let hess_rows: Vec<Vec<Poly>> = partials
            .iter()
            .map(|p| (0..n).map(|j| p.derivative(j)).collect())
            .collect();
        let hessian = poly_det(&hess_rows, &ring);
        let socle = normal_form(&hessian, &ideal, &order)?;
        if socle.is_zero() {
            return Err(Error::Invalid("Hessian lies in the Jacobian ideal".into()));
        }
        let top = basis
            .iter()
            .map(|m| m.weighted_degree(weights))
            .max()
            .unwrap_or(0);
        let tops: Vec<&Monomial> = basis
            .iter()
            .filter(|m| m.weighted_degree(weights) == top)
            .collect();
        if tops.len() != 1 || socle.num_terms() != 1 {
            return Err(Error::Invalid(format!(
                "top graded piece has dimension {} and the socle {socle} is not a single monomial",
                tops.len()
            )));
        }
        let socle_monomial = tops[0].clone();
        let socle_coefficient = socle.coeff(&socle_monomial);
        if socle_coefficient == q(0) {
            return Err(Error::Invalid(
                "socle class does not span the top graded piece".into(),
            ));
        }
        Ok(JacobiRing {
            f: f.clone(),
            weights: weights.to_vec(),
            degree,
            order,
            ideal,
            basis,
            hessian,
            socle,
            socle_monomial,
            socle_coefficient,
        })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Weighted degree of `f`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_text(&self) -> Vec<String> {
        let vars = &self.f.ring().vars;
        self.basis
            .iter()
            .map(|m| {
                if m.is_one() {
                    "1".into()
                } else {
                    monomial_text(m, vars)
                }
            })
            .collect()
    }

    pub fn milnor_number(&self) -> usize {
        self.basis.len()
    }

    /// `∏ (d / w_i - 1)`.
    pub fn milnor_formula(&self) -> Q {
        self.weights
            .iter()
            .map(|&w| Q::new(self.degree.into(), (w as i64).into()) - q(1))
            .product()
    }

    pub fn hessian(&self) -> &Poly {
        &self.hessian
    }

    /// Normal form of the Hessian determinant.
    pub fn socle(&self) -> &Poly {
        &self.socle
    }

    pub fn socle_degree(&self) -> i64 {
        self.socle_monomial.weighted_degree(&self.weights)
    }

    pub fn normal_form(&self, g: &Poly) -> Result<Poly> {
        normal_form(g, &self.ideal, &self.order)
    }

    /// `Res(g) = μ · c(g) / c(hess f)` where `c` reads off the socle coefficient.
    pub fn residue(&self, g: &Poly) -> Result<Q> {
        let nf = self.normal_form(g)?;
        let c = nf.coeff(&self.socle_monomial);
        Ok(q(self.milnor_number() as i64) * c / &self.socle_coefficient)
    }

    fn basis_poly(&self, i: usize) -> Poly {
        Poly::term(self.f.ring(), self.basis[i].clone(), q(1))
    }

    pub fn residue_gram(&self) -> Result<ResidueGram> {
        let n = self.basis.len();
        let mut m: QMatrix = linalg::zeros(n, n);
        let mut orthogonal = true;
        let sd = self.socle_degree();
        for i in 0..n {
            for j in 0..n {
                let v = self.residue(&(&self.basis_poly(i) * &self.basis_poly(j)))?;
                let di = self.basis[i].weighted_degree(&self.weights);
                let dj = self.basis[j].weighted_degree(&self.weights);
                if di + dj != sd && v != q(0) {
                    orthogonal = false;
                }
                m[i][j] = v;
            }
        }
        let det = linalg::det(&m);
        Ok(ResidueGram {
            basis: self.basis_text(),
            matrix: m.iter().map(|r| r.iter().map(fmt_q).collect()).collect(),
            det: fmt_q(&det),
            nondegenerate: det != q(0),
            symmetric: linalg::is_symmetric(&m),
            degree_orthogonal: orthogonal,
        })
    }
}

pub fn jacobi_ring(f: &Poly, weights: &[u32]) -> Result<JacobiRing> {
    JacobiRing::new(f, weights)
}

pub fn grothendieck_residue(g: &Poly, jr: &JacobiRing) -> Result<Q> {
    jr.residue(g)
}

pub fn residue_gram(jr: &JacobiRing) -> Result<ResidueGram> {
    jr.residue_gram()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueGram {
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub det: String,
    pub nondegenerate: bool,
    pub symmetric: bool,
    pub degree_orthogonal: bool,
}

/// Normal forms of the simple singularities in two variables with their
/// weights: `A_k` (`k ≥ 1`), `D_k` (`k ≥ 4`), `E_6`, `E_7`, `E_8`.
pub fn ade(name: &str) -> Result<(Poly, Vec<u32>)> {
    let ring = PolyRing::new(&["x", "y"]);
    let bad = || Error::Invalid(format!("unknown simple singularity {name:?}"));
    let (series, k) = name.split_at(1);
    let k: u32 = k.trim_start_matches('_').parse().map_err(|_| bad())?;
    let x = Poly::var(&ring, 0);
    let y = Poly::var(&ring, 1);
    let (f, w) = match series {
        // x^{k+1} + y^2
        "A" if k >= 1 => (x.pow(k + 1) + y.pow(2), vec![2, k + 1]),
        // x^2 y + y^{k-1}
        "D" if k >= 4 => (x.pow(2) * y.clone() + y.pow(k - 1), vec![k - 2, 2]),
        "E" if k == 6 => (x.pow(3) + y.pow(4), vec![4, 3]),
        "E" if k == 7 => (x.pow(3) + x * y.pow(3), vec![3, 2]),
        "E" if k == 8 => (x.pow(3) + y.pow(5), vec![5, 3]),
        _ => return Err(bad()),
    };
    Ok((f, w))
}
