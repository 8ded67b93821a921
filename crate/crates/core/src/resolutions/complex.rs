use std::sync::Arc;

use super::matrix::{column_degree, PolyMatrix};
use crate::error::{Error, Result};
use crate::polycore::scalar::q;
use crate::polycore::{same_ring_checked, Poly, PolyRing};

/// A bounded complex of graded free modules `C_lo ← C_{lo+1} ← … ← C_hi`.
///
/// `diffs[k]` is the differential `C_{lo+k+1} → C_{lo+k}`; its columns are
/// the images of the basis of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Arc<PolyRing>,
    lo: i64,
    shifts: Vec<Vec<i64>>,
    diffs: Vec<PolyMatrix>,
}

impl FreeComplex {
    /// Checks shapes, degree preservation and `d ∘ d = 0`.
    pub fn new(
        ring: &Arc<PolyRing>,
        lo: i64,
        shifts: Vec<Vec<i64>>,
        diffs: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::Invalid("a complex needs at least one module".into()));
        }
        if diffs.len() + 1 != shifts.len() {
            return Err(Error::Invalid(format!(
                "{} modules need {} differentials, got {}",
                shifts.len(),
                shifts.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            same_ring_checked(ring, d.ring())?;
            if d.nrows() != shifts[k].len() || d.ncols() != shifts[k + 1].len() {
                return Err(Error::Invalid(format!(
                    "differential at index {} has shape {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.nrows(),
                    d.ncols(),
                    shifts[k].len(),
                    shifts[k + 1].len()
                )));
            }
            for (j, col) in d.columns().iter().enumerate() {
                if let Some(deg) = column_degree(col, &shifts[k])? {
                    if deg != shifts[k + 1][j] {
                        return Err(Error::NotHomogeneous(format!(
                            "differential at index {} sends a generator of degree {} to degree {deg}",
                            lo + k as i64 + 1,
                            shifts[k + 1][j]
                        )));
                    }
                }
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k])?.is_zero() {
                return Err(Error::Invalid(format!(
                    "d∘d != 0 at index {}",
                    lo + k as i64 + 1
                )));
            }
        }
        Ok(FreeComplex {
            ring: ring.clone(),
            lo,
            shifts,
            diffs,
        })
    }

    pub(crate) fn from_parts_unchecked(
        ring: &Arc<PolyRing>,
        lo: i64,
        shifts: Vec<Vec<i64>>,
        diffs: Vec<PolyMatrix>,
    ) -> Self {
        FreeComplex {
            ring: ring.clone(),
            lo,
            shifts,
            diffs,
        }
    }

    /// A single free module in homological degree 0.
    pub fn free_module(ring: &Arc<PolyRing>, shifts: Vec<i64>) -> Self {
        Self::from_parts_unchecked(ring, 0, vec![shifts], vec![])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.shifts.len() as i64 - 1
    }

    /// Number of nonzero differentials' span, `hi - lo`.
    pub fn length(&self) -> usize {
        self.shifts.len() - 1
    }

    pub fn rank(&self, i: i64) -> usize {
        self.shifts_at(i).map_or(0, |s| s.len())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.shifts.iter().map(|s| s.len()).collect()
    }

    pub fn shifts_at(&self, i: i64) -> Option<&[i64]> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some(&self.shifts[(i - self.lo) as usize])
        }
    }

    /// `d_i : C_i → C_{i-1}`, when both ends are inside the range.
    pub fn differential(&self, i: i64) -> Option<&PolyMatrix> {
        if i <= self.lo || i > self.hi() {
            None
        } else {
            Some(&self.diffs[(i - self.lo - 1) as usize])
        }
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.diffs
    }

    /// Total complex with `d(a ⊗ b) = da ⊗ b + (-1)^i a ⊗ db` for `a ∈ C_i`.
    /// The basis of `(C ⊗ D)_n` lists `C_i ⊗ D_{n-i}` blocks by decreasing
    /// `i`, each block in row-major `(a, b)` order.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        same_ring_checked(&self.ring, &other.ring)?;
        let ring = &self.ring;
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        // Block offsets per total degree.
        let blocks = |n: i64| -> Vec<(i64, usize)> {
            let mut out = Vec::new();
            let mut off = 0;
            for i in (self.lo..=self.hi()).rev() {
                let j = n - i;
                if j < other.lo || j > other.hi() {
                    continue;
                }
                out.push((i, off));
                off += self.rank(i) * other.rank(j);
            }
            out
        };
        let mut shifts = Vec::new();
        for n in lo..=hi {
            let mut s = Vec::new();
            for (i, _) in blocks(n) {
                for a in self.shifts_at(i).unwrap() {
                    for b in other.shifts_at(n - i).unwrap() {
                        s.push(a + b);
                    }
                }
            }
            shifts.push(s);
        }
        let mut diffs = Vec::new();
        for n in lo + 1..=hi {
            let src = blocks(n);
            let tgt = blocks(n - 1);
            let nrows = shifts[(n - 1 - lo) as usize].len();
            let ncols = shifts[(n - lo) as usize].len();
            let mut d = PolyMatrix::zeros(ring, nrows, ncols);
            let offset_of = |i: i64| tgt.iter().find(|(k, _)| *k == i).map(|(_, o)| *o);
            for &(i, soff) in &src {
                let j = n - i;
                let (ri, rj) = (self.rank(i), other.rank(j));
                // da ⊗ b lands in C_{i-1} ⊗ D_j.
                if let (Some(dc), Some(toff)) = (self.differential(i), offset_of(i - 1)) {
                    let rj_t = other.rank(j);
                    for a in 0..ri {
                        for b in 0..rj {
                            for a2 in 0..self.rank(i - 1) {
                                let x = dc.get(a2, a);
                                if !x.is_zero() {
                                    d.set(toff + a2 * rj_t + b, soff + a * rj + b, x.clone());
                                }
                            }
                        }
                    }
                }
                // (-1)^i a ⊗ db lands in C_i ⊗ D_{j-1}.
                if let (Some(dd), Some(toff)) = (other.differential(j), offset_of(i)) {
                    let sign = if i.rem_euclid(2) == 1 { q(-1) } else { q(1) };
                    let rj_t = other.rank(j - 1);
                    for a in 0..ri {
                        for b in 0..rj {
                            for b2 in 0..rj_t {
                                let x = dd.get(b2, b);
                                if !x.is_zero() {
                                    let row = toff + a * rj_t + b2;
                                    let col = soff + a * rj + b;
                                    let v = d.get(row, col) + &x.scale(&sign);
                                    d.set(row, col, v);
                                }
                            }
                        }
                    }
                }
            }
            diffs.push(d);
        }
        Self::new(ring, lo, shifts, diffs)
    }

    /// `Hom(C, A)` as a homological complex: `C*_{-p} = (C_p)*` with
    /// generator degrees negated and `d_{-p} = (d_{p+1})^T`.
    pub fn dual(&self) -> Self {
        let shifts: Vec<Vec<i64>> = self
            .shifts
            .iter()
            .rev()
            .map(|s| s.iter().map(|x| -x).collect())
            .collect();
        let diffs = self.diffs.iter().rev().map(|d| d.transpose()).collect();
        Self::from_parts_unchecked(&self.ring, -self.hi(), shifts, diffs)
    }

    /// Koszul complex of `f_1 … f_c`: `K_p` has basis the `p`-subsets `S`
    /// in lexicographic order and `d e_S = Σ_k (-1)^k f_{s_k} e_{S∖s_k}`.
    pub fn koszul(ring: &Arc<PolyRing>, fs: &[Poly]) -> Result<Self> {
        let c = fs.len();
        let mut degs = Vec::with_capacity(c);
        for f in fs {
            same_ring_checked(ring, f.ring())?;
            degs.push(
                f.homogeneous_degree()?
                    .ok_or_else(|| Error::Invalid("zero entry in a Koszul sequence".into()))?,
            );
        }
        let subsets: Vec<Vec<Vec<usize>>> = (0..=c).map(|p| k_subsets(c, p)).collect();
        let shifts = subsets
            .iter()
            .map(|ss| {
                ss.iter()
                    .map(|s| s.iter().map(|&i| degs[i]).sum())
                    .collect()
            })
            .collect();
        let mut diffs = Vec::new();
        for p in 1..=c {
            let mut d = PolyMatrix::zeros(ring, subsets[p - 1].len(), subsets[p].len());
            for (j, s) in subsets[p].iter().enumerate() {
                for (k, &idx) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(k);
                    let row = subsets[p - 1].iter().position(|t| *t == rest).unwrap();
                    let f = if k % 2 == 1 {
                        -fs[idx].clone()
                    } else {
                        fs[idx].clone()
                    };
                    d.set(row, j, f);
                }
            }
            diffs.push(d);
        }
        Self::new(ring, 0, shifts, diffs)
    }
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
