//! Hard Lefschetz on `H*(P^{n_1} × … × P^{n_k})`: primitive decomposition,
//! the `Λ` and `*` operators, the Hodge–Riemann forms, and correspondences
//! with their transposes and trace forms.
//!
//! Degrees are half-degrees throughout: `H^{2p}` is degree `p`, and `d` is
//! the complex dimension.

use serde::Serialize;

use crate::charclass::transform::{compose, diagonal, ProductSpace};
use crate::charclass::{CohClass, CohRing};
use crate::error::{Error, Result};
use crate::polycore::linalg::{self, QMatrix};
use crate::polycore::scalar::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzDegree {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug)]
pub struct LefschetzContext {
    ring: CohRing,
    l: CohClass,
    /// `L : H^p → H^{p+1}` in the bases `basis_of_degree`.
    l_mats: Vec<QMatrix>,
    ranks: Vec<LefschetzDegree>,
}

fn homogeneous_degree(a: &CohClass) -> Result<Option<usize>> {
    match a.support_degrees().as_slice() {
        [] => Ok(None),
        [p] => Ok(Some(*p)),
        ds => Err(Error::Degree(format!(
            "class {a} is not homogeneous (degrees {ds:?})"
        ))),
    }
}

impl LefschetzContext {
    /// `L = Σ h_i`.
    pub fn new(ring: &CohRing) -> Result<Self> {
        let ones = vec![q(1); ring.nfactors()];
        Self::with_class(ring, CohClass::linear(ring, &ones))
    }

    /// Checks that `L` is ample and that every `L^{d-2p}` is bijective.
    pub fn with_class(ring: &CohRing, l: CohClass) -> Result<Self> {
        l.check_ring(ring)?;
        let zero = q(0);
        let positive = (0..ring.nfactors()).all(|i| {
            let mut e = vec![0; ring.nfactors()];
            e[i] = 1;
            l.coeff(&e) > zero
        });
        if homogeneous_degree(&l)? != Some(1) || !positive {
            return Err(Error::Invalid(format!(
                "{l} is not an ample degree-1 class"
            )));
        }
        let d = ring.dim();
        let mut ctx = LefschetzContext {
            ring: ring.clone(),
            l: l.clone(),
            l_mats: Vec::new(),
            ranks: Vec::new(),
        };
        ctx.l_mats = (0..d)
            .map(|p| ctx.degree_matrix(p, p + 1, |x| x.mul(&l)))
            .collect();
        for p in 0..=d / 2 {
            let m = ctx.l_power_matrix(p, d - 2 * p);
            let dim = ring.basis_of_degree(p).len();
            let rank = linalg::rank(&m, dim);
            let target = ring.basis_of_degree(d - p).len();
            let bijective = rank == dim && dim == target;
            ctx.ranks.push(LefschetzDegree {
                degree: p,
                dim,
                rank,
                bijective,
            });
            if !bijective {
                return Err(Error::Invalid(format!(
                    "L^{} is not bijective on degree {p}",
                    d - 2 * p
                )));
            }
        }
        Ok(ctx)
    }

    pub fn ring(&self) -> &CohRing {
        &self.ring
    }

    pub fn l(&self) -> &CohClass {
        &self.l
    }

    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    /// Hard Lefschetz data `L^{d-2p} : H^p → H^{d-p}` for `2p ≤ d`.
    pub fn lefschetz_ranks(&self) -> &[LefschetzDegree] {
        &self.ranks
    }

    pub fn coords(&self, a: &CohClass, p: usize) -> Vec<Q> {
        self.ring
            .basis_of_degree(p)
            .iter()
            .map(|&i| a.coeff_at(i).clone())
            .collect()
    }

    pub fn from_coords(&self, p: usize, v: &[Q]) -> CohClass {
        let mut c = vec![q(0); self.ring.basis_len()];
        for (&i, x) in self.ring.basis_of_degree(p).iter().zip(v) {
            c[i] = x.clone();
        }
        CohClass::from_coeffs(&self.ring, c).expect("basis length matches")
    }

    fn degree_matrix(&self, from: usize, to: usize, op: impl Fn(&CohClass) -> CohClass) -> QMatrix {
        let src = self.ring.basis_of_degree(from);
        let tgt = self.ring.basis_of_degree(to);
        let mut m = linalg::zeros(tgt.len(), src.len());
        for j in 0..src.len() {
            let mut e = vec![q(0); src.len()];
            e[j] = q(1);
            let img = op(&self.from_coords(from, &e));
            for (r, x) in self.coords(&img, to).into_iter().enumerate() {
                m[r][j] = x;
            }
        }
        m
    }

    /// Matrix of `L^k : H^p → H^{p+k}`.
    pub fn l_power_matrix(&self, p: usize, k: usize) -> QMatrix {
        let n = self.ring.basis_of_degree(p).len();
        let mut m = linalg::identity(n);
        for s in p..p + k {
            if s >= self.l_mats.len() {
                return linalg::zeros(0, n);
            }
            m = linalg::mat_mul(&self.l_mats[s], &m, n);
        }
        m
    }

    pub fn l_power(&self, k: usize) -> CohClass {
        self.l.pow(k)
    }

    /// Basis of the primitive classes of degree `m` (`2m ≤ d`), the kernel
    /// of `L^{d-2m+1}`.
    pub fn primitive_basis(&self, m: usize) -> Vec<CohClass> {
        let d = self.dim();
        if 2 * m > d {
            return Vec::new();
        }
        let n = self.ring.basis_of_degree(m).len();
        let mat = self.l_power_matrix(m, d - 2 * m + 1);
        linalg::kernel(&mat, n)
            .iter()
            .map(|v| self.from_coords(m, v))
            .collect()
    }

    pub fn is_primitive(&self, a: &CohClass) -> Result<bool> {
        let Some(m) = homogeneous_degree(a)? else {
            return Ok(true);
        };
        let d = self.dim();
        Ok(2 * m <= d && a.mul(&self.l_power(d - 2 * m + 1)).is_zero())
    }

    /// `a = Σ L^k p_k` with `p_k` primitive; zero components are omitted.
    pub fn primitive_decomposition(&self, a: &CohClass) -> Result<Vec<(usize, CohClass)>> {
        a.check_ring(&self.ring)?;
        let Some(j) = homogeneous_degree(a)? else {
            return Ok(Vec::new());
        };
        let d = self.dim();
        let kmin = (2 * j).saturating_sub(d);
        let mut cols: Vec<(usize, CohClass)> = Vec::new();
        for k in kmin..=j {
            for p in self.primitive_basis(j - k) {
                cols.push((k, p));
            }
        }
        let nrows = self.ring.basis_of_degree(j).len();
        let mut m = linalg::zeros(nrows, cols.len());
        for (c, (k, p)) in cols.iter().enumerate() {
            for (r, x) in self
                .coords(&p.mul(&self.l_power(*k)), j)
                .into_iter()
                .enumerate()
            {
                m[r][c] = x;
            }
        }
        let x = linalg::solve(&m, cols.len(), &self.coords(a, j))
            .ok_or_else(|| Error::Invalid("primitive decomposition failed".into()))?;
        let mut out: Vec<(usize, CohClass)> = Vec::new();
        for ((k, p), c) in cols.iter().zip(&x) {
            let term = p.scale(c);
            match out.iter_mut().find(|(kk, _)| kk == k) {
                Some((_, acc)) => *acc = acc.add(&term),
                None => out.push((*k, term)),
            }
        }
        out.retain(|(_, p)| !p.is_zero());
        Ok(out)
    }

    pub fn reassemble(&self, parts: &[(usize, CohClass)]) -> CohClass {
        parts
            .iter()
            .fold(CohClass::zero(&self.ring), |acc, (k, p)| {
                acc.add(&p.mul(&self.l_power(*k)))
            })
    }

    /// `Λ(L^k m) = L^{k-1} m` for `k > 0`, and `0` for `k = 0`.
    pub fn lambda_op(&self, a: &CohClass) -> Result<CohClass> {
        let parts = self.primitive_decomposition(a)?;
        Ok(parts
            .iter()
            .filter(|(k, _)| *k > 0)
            .fold(CohClass::zero(&self.ring), |acc, (k, p)| {
                acc.add(&p.mul(&self.l_power(k - 1)))
            }))
    }

    /// `*(L^k m) = (-1)^{i(i+1)/2} L^{d-i-k} m` with `i = 2 deg m` the
    /// cohomological degree of the primitive part.
    pub fn star(&self, a: &CohClass) -> Result<CohClass> {
        let d = self.dim();
        let mut out = CohClass::zero(&self.ring);
        for (k, m) in self.primitive_decomposition(a)? {
            let i = 2 * homogeneous_degree(&m)?.unwrap_or(0);
            let sign = if (i * (i + 1) / 2) % 2 == 1 {
                q(-1)
            } else {
                q(1)
            };
            out = out.add(&m.mul(&self.l_power(d - i - k)).scale(&sign));
        }
        Ok(out)
    }

    /// `*` applied to each homogeneous component.
    pub fn star_total(&self, a: &CohClass) -> Result<CohClass> {
        let mut out = CohClass::zero(&self.ring);
        for c in a.components() {
            out = out.add(&self.star(&c)?);
        }
        Ok(out)
    }

    /// Gram matrix of `(m, n) ↦ ∫ m · *n` on the monomial basis.
    pub fn pairing_gram(&self) -> Result<QMatrix> {
        let n = self.ring.basis_len();
        let basis: Vec<CohClass> = (0..n).map(|i| unit(&self.ring, i)).collect();
        let stars: Vec<CohClass> = basis.iter().map(|b| self.star(b)).collect::<Result<_>>()?;
        Ok((0..n)
            .map(|a| (0..n).map(|b| basis[a].mul(&stars[b]).integral()).collect())
            .collect())
    }

    /// `(-1)^j ∫ L^{d-2j} a b` on a basis of primitive classes of degree `j`.
    pub fn hodge_form(&self, j: usize) -> Result<HodgeForm> {
        let d = self.dim();
        if 2 * j > d {
            return Err(Error::Degree(format!("2*{j} exceeds the dimension {d}")));
        }
        let basis = self.primitive_basis(j);
        let lp = self.l_power(d - 2 * j);
        let sign = if j % 2 == 1 { q(-1) } else { q(1) };
        let gram: QMatrix = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| a.mul(b).mul(&lp).integral() * &sign)
                    .collect()
            })
            .collect();
        let minors = linalg::leading_principal_minors(&gram);
        let positive_definite = minors.iter().all(|m| *m > q(0));
        Ok(HodgeForm {
            degree: j,
            basis: basis.iter().map(|b| b.to_string()).collect(),
            gram: gram
                .iter()
                .map(|r| r.iter().map(crate::polycore::scalar::fmt_q).collect())
                .collect(),
            minors: minors.iter().map(crate::polycore::scalar::fmt_q).collect(),
            positive_definite,
        })
    }

    /// `λ'` with `(λ m, n) = (m, λ' n)` for the pairing `(m, *n)`:
    /// its matrix is `G^{-1} Mᵀ G`.
    pub fn transpose(&self, lambda: &Correspondence) -> Result<Correspondence> {
        lambda.check_base(&self.ring)?;
        let g = self.pairing_gram()?;
        let n = g.len();
        let ginv =
            linalg::inverse(&g).ok_or_else(|| Error::Invalid("pairing is degenerate".into()))?;
        let m = lambda.action_matrix()?;
        let mt = linalg::transpose(&m, n);
        let t = linalg::mat_mul(&linalg::mat_mul(&ginv, &mt, n), &g, n);
        Correspondence::from_matrix(&self.ring, &t)
    }

    /// `Tr(λ' ∘ λ)` on `H*(X)`.
    pub fn trace_form(&self, lambda: &Correspondence) -> Result<TraceReport> {
        let t = self.transpose(lambda)?;
        let comp = t.compose(lambda)?;
        let trace = linalg::trace(&comp.action_matrix()?);
        let acts_as_zero = lambda.action_matrix()?.iter().flatten().all(|x| *x == q(0));
        Ok(TraceReport {
            trace: crate::polycore::scalar::fmt_q(&trace),
            positive: trace > q(0),
            acts_as_zero,
        })
    }
}

fn unit(ring: &CohRing, i: usize) -> CohClass {
    let mut c = vec![q(0); ring.basis_len()];
    c[i] = q(1);
    CohClass::from_coeffs(ring, c).expect("basis length matches")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeForm {
    pub degree: usize,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub minors: Vec<String>,
    pub positive_definite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub trace: String,
    pub positive: bool,
    pub acts_as_zero: bool,
}

/// A class on `X × X` of pure degree, acting on `H*(X)` by
/// `a ↦ π_{2*}(π_1^* a · λ)`. Degree `dim X` gives degree-preserving maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    space: ProductSpace,
    class: CohClass,
}

impl Correspondence {
    pub fn new(x: &CohRing, class: CohClass) -> Result<Self> {
        let space = ProductSpace::square(x);
        class.check_ring(&space.ring)?;
        if class.support_degrees().len() > 1 {
            return Err(Error::Degree(format!(
                "correspondence must have pure degree, found degrees {:?}",
                class.support_degrees()
            )));
        }
        Ok(Correspondence { space, class })
    }

    pub fn diagonal(x: &CohRing) -> Self {
        Self::new(x, diagonal(x)).expect("diagonal has degree dim X")
    }

    /// `a ⊠ b = π_1^* a · π_2^* b`.
    pub fn external(x: &CohRing, a: &CohClass, b: &CohClass) -> Result<Self> {
        use crate::charclass::transform::Side;
        let space = ProductSpace::square(x);
        let c = space
            .pullback(a, Side::Left)?
            .mul(&space.pullback(b, Side::Right)?);
        Self::new(x, c)
    }

    /// The correspondence acting by a degree-homogeneous matrix `m` on the
    /// monomial basis: `Σ m[b][a] · (h^{n-e_a} ⊠ h^{e_b})`.
    pub fn from_matrix(x: &CohRing, m: &QMatrix) -> Result<Self> {
        let n = x.basis_len();
        let space = ProductSpace::square(x);
        let mut class = CohClass::zero(&space.ring);
        for a in 0..n {
            let ea = x.exps(a);
            let dual: Vec<usize> = x.dims().iter().zip(&ea).map(|(d, e)| d - e).collect();
            for (b, row) in m.iter().enumerate() {
                let c = &row[a];
                if *c == q(0) {
                    continue;
                }
                let mut e = dual.clone();
                e.extend(x.exps(b));
                class = class.add(&CohClass::monomial(&space.ring, &e, c.clone()));
            }
        }
        Self::new(x, class)
    }

    /// Künneth projector onto `H^{2p}(X)`.
    pub fn kunneth_projector(x: &CohRing, p: usize) -> Self {
        let n = x.basis_len();
        let mut m = linalg::zeros(n, n);
        for i in 0..n {
            if x.half_degree(i) == p {
                m[i][i] = q(1);
            }
        }
        Self::from_matrix(x, &m).expect("projector preserves degree")
    }

    pub fn base(&self) -> &CohRing {
        &self.space.left
    }

    pub fn class(&self) -> &CohClass {
        &self.class
    }

    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }

    fn check_base(&self, x: &CohRing) -> Result<()> {
        if self.space.left.dims() == x.dims() {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "correspondence on {} used on {x}",
                self.space.left
            )))
        }
    }

    pub fn apply(&self, a: &CohClass) -> Result<CohClass> {
        self.space.integral_transform(&self.class, a)
    }

    /// Columns are the images of the monomial basis.
    pub fn action_matrix(&self) -> Result<QMatrix> {
        let x = &self.space.left;
        let n = x.basis_len();
        let mut m = linalg::zeros(n, n);
        for a in 0..n {
            let img = self.apply(&unit(x, a))?;
            for (b, row) in m.iter_mut().enumerate() {
                row[a] = img.coeff_at(b).clone();
            }
        }
        Ok(m)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Correspondence) -> Result<Correspondence> {
        other.check_base(&self.space.left)?;
        let c = compose(&self.class, &self.space, &other.class, &other.space)?;
        Self::new(&self.space.left, c)
    }

    pub fn add(&self, other: &Correspondence) -> Result<Correspondence> {
        other.check_base(&self.space.left)?;
        Self::new(&self.space.left, self.class.add(&other.class))
    }
}
