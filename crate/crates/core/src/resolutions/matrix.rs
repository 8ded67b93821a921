//! Matrices of polynomials, stored by columns.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polycore::{Coeff, Poly, PolyRing, Q};

/// An `nrows × ncols` matrix; each column is an element of `A^nrows`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    nrows: usize,
    cols: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<PolyRing>, nrows: usize, ncols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            nrows,
            cols: vec![vec![Poly::zero(ring); nrows]; ncols],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.cols[i][i] = Poly::one(ring);
        }
        m
    }

    /// Panics if a column has the wrong length.
    pub fn from_columns(ring: &Arc<PolyRing>, nrows: usize, cols: Vec<Vec<Poly>>) -> Self {
        assert!(
            cols.iter().all(|c| c.len() == nrows),
            "column length mismatch"
        );
        PolyMatrix {
            ring: ring.clone(),
            nrows,
            cols,
        }
    }

    pub fn from_rows(ring: &Arc<PolyRing>, ncols: usize, rows: Vec<Vec<Poly>>) -> Self {
        let nrows = rows.len();
        let mut m = Self::zeros(ring, nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "row length mismatch");
            for (j, x) in row.into_iter().enumerate() {
                m.cols[j][i] = x;
            }
        }
        m
    }

    /// A one-row matrix `(f_1 … f_k)`.
    pub fn row(ring: &Arc<PolyRing>, fs: &[Poly]) -> Self {
        Self::from_columns(ring, 1, fs.iter().map(|f| vec![f.clone()]).collect())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.cols[j][i]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.cols[j][i] = p;
    }

    pub fn column(&self, j: usize) -> &[Poly] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<Poly>] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().flatten().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.ncols(), self.nrows);
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                t.cols[i][j] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.ncols() != rhs.nrows {
            return Err(Error::Invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows,
                self.ncols(),
                rhs.nrows,
                rhs.ncols()
            )));
        }
        let cols = rhs.cols.iter().map(|c| self.apply(c)).collect();
        Ok(Self::from_columns(&self.ring, self.nrows, cols))
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(&self.ring); self.nrows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, x) in self.cols[j].iter().enumerate() {
                if !x.is_zero() {
                    out[i] = &out[i] + &(x * vj);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|x| x.scale(c)).collect())
            .collect();
        Self::from_columns(&self.ring, self.nrows, cols)
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.nrows, rhs.nrows, "hstack row mismatch");
        let mut cols = self.cols.clone();
        cols.extend(rhs.cols.iter().cloned());
        Self::from_columns(&self.ring, self.nrows, cols)
    }

    /// Kronecker product, rows and columns ordered `(i, k) ↦ i * rhs_dim + k`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let nr = self.nrows * rhs.nrows;
        let mut cols = Vec::with_capacity(self.ncols() * rhs.ncols());
        for a in &self.cols {
            for b in &rhs.cols {
                let mut col = Vec::with_capacity(nr);
                for x in a {
                    for y in b {
                        col.push(x * y);
                    }
                }
                cols.push(col);
            }
        }
        Self::from_columns(&self.ring, nr, cols)
    }

    pub fn drop_row(&self, r: usize) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != r)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        Self::from_columns(&self.ring, self.nrows - 1, cols)
    }

    pub fn drop_col(&self, c: usize) -> Self {
        let mut out = self.clone();
        out.cols.remove(c);
        out
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> Self {
        let cols = self.cols.iter().map(|c| c[rows.clone()].to_vec()).collect();
        Self::from_columns(&self.ring, rows.len(), cols)
    }

    pub fn without_zero_columns(&self) -> Self {
        let cols = self
            .cols
            .iter()
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        Self::from_columns(&self.ring, self.nrows, cols)
    }

    /// First entry that is a nonzero constant, scanning columns in order.
    pub fn find_unit(&self) -> Option<(usize, usize)> {
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                if x.is_unit() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Schur complement at a unit pivot: drop row `r` and column `c`, and
    /// subtract `M[i][c] M[r][j] / M[r][c]` from the remaining entries.
    pub fn eliminate_unit(&self, r: usize, c: usize) -> Self {
        let u = self.get(r, c).constant_term().inv().expect("unit pivot");
        let mut cols = Vec::with_capacity(self.ncols().saturating_sub(1));
        for j in 0..self.ncols() {
            if j == c {
                continue;
            }
            let f = self.get(r, j).scale(&u);
            let col = (0..self.nrows)
                .filter(|&i| i != r)
                .map(|i| {
                    if f.is_zero() || self.get(i, c).is_zero() {
                        self.get(i, j).clone()
                    } else {
                        self.get(i, j) - &(self.get(i, c) * &f)
                    }
                })
                .collect();
            cols.push(col);
        }
        Self::from_columns(&self.ring, self.nrows - 1, cols)
    }

    /// Degrees of the columns when row `i` has degree `shifts[i]`; `None`
    /// for zero columns.
    pub fn column_degrees(&self, shifts: &[i64]) -> Result<Vec<Option<i64>>> {
        self.cols.iter().map(|c| column_degree(c, shifts)).collect()
    }
}

/// Degree of a homogeneous element of a graded free module.
pub fn column_degree(col: &[Poly], shifts: &[i64]) -> Result<Option<i64>> {
    let mut deg = None;
    for (i, p) in col.iter().enumerate() {
        let Some(d) = p.homogeneous_degree()? else {
            continue;
        };
        let d = d + shifts[i];
        match deg {
            None => deg = Some(d),
            Some(e) if e == d => {}
            Some(e) => {
                return Err(Error::NotHomogeneous(format!(
                    "column mixes degrees {e} and {d} (entry {i} is `{p}`)"
                )))
            }
        }
    }
    Ok(deg)
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.nrows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.ncols())
                .map(|j| self.get(i, j).to_string())
                .collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
