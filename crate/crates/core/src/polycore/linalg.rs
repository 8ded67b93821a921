//! Dense exact linear algebra over `Q` (row-major `Vec<Vec<Q>>`).

use num_traits::{One, Zero};

use super::scalar::Q;

pub type QMatrix = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> QMatrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> QMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn transpose(m: &QMatrix, cols: usize) -> QMatrix {
    let mut t = zeros(cols, m.len());
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            t[j][i] = x.clone();
        }
    }
    t
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix, b_cols: usize) -> QMatrix {
    let mut out = zeros(a.len(), b_cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..b_cols {
                if !b[k][j].is_zero() {
                    out[i][j] += x * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &QMatrix, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &QMatrix, cols: usize) -> (QMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (a, pivots)
}

pub fn rank(m: &QMatrix, cols: usize) -> usize {
    rref(m, cols).1.len()
}

/// Basis of `{v : m v = 0}`.
pub fn kernel(m: &QMatrix, cols: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = rref(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(m: &QMatrix, cols: usize, b: &[Q]) -> Option<Vec<Q>> {
    let aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(bi.clone()))
                .collect()
        })
        .collect();
    let (r, pivots) = rref(&aug, cols + 1);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[row][cols].clone();
    }
    Some(x)
}

pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by Gaussian elimination.
pub fn det(m: &QMatrix) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    d
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`.
pub fn leading_principal_minors(m: &QMatrix) -> Vec<Q> {
    (1..=m.len())
        .map(|k| det(&m[..k].iter().map(|r| r[..k].to_vec()).collect()))
        .collect()
}

pub fn is_symmetric(m: &QMatrix) -> bool {
    (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i]))
}

pub fn trace(m: &QMatrix) -> Q {
    (0..m.len()).map(|i| m[i][i].clone()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::{q, qr};

    fn m(rows: &[&[i64]]) -> QMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn small_systems() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(det(&a), q(-2));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv, 2), identity(2));
        assert_eq!(solve(&a, 2, &[q(5), q(6)]).unwrap(), vec![q(-4), qr(9, 2)]);
        let sing = m(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&sing).is_none());
        assert_eq!(rank(&sing, 2), 1);
        let k = kernel(&sing, 2);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&sing, &k[0]).iter().all(|x| x.is_zero()));
        assert!(solve(&sing, 2, &[q(1), q(1)]).is_none());
        assert_eq!(
            leading_principal_minors(&m(&[&[2, 1], &[1, 2]])),
            vec![q(2), q(3)]
        );
    }
}
