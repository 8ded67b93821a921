use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polycore::scalar::{factorial, qr, Q};
use crate::polycore::{same_ring_checked, DifferentialForm, Poly, PolyRing};

/// Square matrix `e` over a polynomial ring with `e · e = e`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentMatrix {
    ring: Arc<PolyRing>,
    n: usize,
    entries: Vec<Poly>,
}

impl IdempotentMatrix {
    /// `rows` in row-major order; rejects non-square or non-idempotent input.
    pub fn new(ring: &Arc<PolyRing>, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::Invalid(format!(
                    "row of length {} in a {n}x{n} matrix",
                    r.len()
                )));
            }
            for f in r {
                same_ring_checked(ring, f.ring())?;
                entries.push(f);
            }
        }
        let e = IdempotentMatrix {
            ring: ring.clone(),
            n,
            entries,
        };
        if e.square() != e.entries {
            return Err(Error::NotIdempotent);
        }
        Ok(e)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    fn square(&self) -> Vec<Poly> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Poly::zero(&self.ring);
                for k in 0..n {
                    s = s + self.get(i, k) * self.get(k, j);
                }
                out.push(s);
            }
        }
        out
    }

    pub fn trace(&self) -> Poly {
        (0..self.n).fold(Poly::zero(&self.ring), |acc, i| {
            acc + self.get(i, i).clone()
        })
    }
}

/// Square matrix with differential-form entries.
struct FormMatrix {
    n: usize,
    entries: Vec<DifferentialForm>,
}

impl FormMatrix {
    fn get(&self, i: usize, j: usize) -> &DifferentialForm {
        &self.entries[i * self.n + j]
    }

    /// Matrix product with wedge on entries; the left factor's forms stay on
    /// the left, so no extra sign appears.
    fn mul(&self, rhs: &FormMatrix, ring: &Arc<PolyRing>) -> FormMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut s = DifferentialForm::zero(ring);
                for k in 0..n {
                    s = s
                        .add(&self.get(i, k).wedge(rhs.get(k, j)))
                        .expect("same ring");
                }
                entries.push(s);
            }
        }
        FormMatrix { n, entries }
    }

    fn trace(&self, ring: &Arc<PolyRing>) -> DifferentialForm {
        (0..self.n).fold(DifferentialForm::zero(ring), |acc, i| {
            acc.add(self.get(i, i)).expect("same ring")
        })
    }
}

/// `(2n)! / (n!)^2`.
fn central_binomial(n: u32) -> Q {
    Q::from_integer(factorial(2 * n) / (factorial(n) * factorial(n)))
}

/// `Tr(ê)` with `ê = e + Σ_{n=1}^{max_order} (2n)!/(n!)^2 (e - 1/2)(de)^{2n}`,
/// truncated at form degree `2 max_order`.
pub fn denis_trace(e: &IdempotentMatrix, max_order: usize) -> DifferentialForm {
    let ring = &e.ring;
    let n = e.n;
    let de = FormMatrix {
        n,
        entries: e
            .entries
            .iter()
            .map(|f| DifferentialForm::function(f).exterior_d())
            .collect(),
    };
    let shifted = FormMatrix {
        n,
        entries: (0..n * n)
            .map(|k| {
                let f = if k / n == k % n {
                    e.entries[k].clone() - Poly::constant(ring, qr(1, 2))
                } else {
                    e.entries[k].clone()
                };
                DifferentialForm::function(&f)
            })
            .collect(),
    };
    let mut total = DifferentialForm::function(&e.trace());
    let mut power = de.mul(&de, ring);
    for k in 1..=max_order {
        if 2 * k > ring.nvars() {
            break;
        }
        let term = shifted
            .mul(&power, ring)
            .trace(ring)
            .scale(&central_binomial(k as u32));
        total = total.add(&term).expect("same ring");
        power = power.mul(&de, ring).mul(&de, ring);
    }
    total.truncate(2 * max_order)
}
