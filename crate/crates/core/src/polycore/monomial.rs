use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Exponent vector; its length is the number of ring variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }

    /// `rhs / self`, assuming `self` divides `rhs`.
    pub fn quotient_of(&self, rhs: &Monomial) -> Monomial {
        Monomial(rhs.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    #[default]
    Grevlex,
    Grlex,
    Lex,
}

/// A global monomial order. `priority[k]` is the variable that ranks k-th;
/// an empty priority list means the declared variable sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder {
            kind,
            priority: Vec::new(),
        }
    }

    pub fn grevlex() -> Self {
        Self::new(OrderKind::Grevlex)
    }

    pub fn grlex() -> Self {
        Self::new(OrderKind::Grlex)
    }

    pub fn lex() -> Self {
        Self::new(OrderKind::Lex)
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        MonomialOrder { kind, priority }
    }

    fn var_at(&self, k: usize) -> usize {
        if self.priority.is_empty() {
            k
        } else {
            self.priority[k]
        }
    }

    /// Integer vector whose lexicographic comparison realizes the order.
    /// The map is linear in the exponents, so `key(a*b) = key(a) + key(b)`.
    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        let n = m.nvars();
        let e = |k: usize| m.0[self.var_at(k)] as i64;
        match self.kind {
            OrderKind::Lex => (0..n).map(e).collect(),
            OrderKind::Grlex => std::iter::once(m.degree() as i64)
                .chain((0..n).map(e))
                .collect(),
            OrderKind::Grevlex => std::iter::once(m.degree() as i64)
                .chain((0..n).rev().map(|k| -e(k)))
                .collect(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 3).prop_map(Monomial)
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::grevlex()),
            Just(MonomialOrder::grlex()),
            Just(MonomialOrder::lex()),
            Just(MonomialOrder::with_priority(
                OrderKind::Grevlex,
                vec![2, 0, 1]
            )),
            Just(MonomialOrder::with_priority(OrderKind::Lex, vec![1, 2, 0])),
        ]
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::grevlex();
        // x*z < y^2 in grevlex (last variable penalized), but > in lex.
        let xz = Monomial(vec![1, 0, 1]);
        let yy = Monomial(vec![0, 2, 0]);
        assert_eq!(o.cmp(&xz, &yy), Ordering::Less);
        assert_eq!(MonomialOrder::lex().cmp(&xz, &yy), Ordering::Greater);
        assert_eq!(MonomialOrder::grlex().cmp(&xz, &yy), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_total_and_global(o in order(), a in mono(), b in mono(), w in mono()) {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(o.cmp(&a.mul(&w), &b.mul(&w)), ab);
            prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
        }
    }
}
