use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `n` of the monomial `z^n = z_1^{n_1} ... z_N^{n_N}`.
///
/// Ordered graded-lexicographically: lower total degree first, then the
/// larger leading exponent first (so `z1` sorts before `z2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    /// `e_k` (0-based `k`).
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = vec![0; dim];
        v[k] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// 0-based position of the single 1 when `self = e_k`.
    pub fn as_unit(&self) -> Option<usize> {
        if self.degree() != 1 {
            return None;
        }
        self.0.iter().position(|&e| e == 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` when any component would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn with_incremented(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v[k] += 1;
        Self(v)
    }

    /// `n! = ∏ n_k!`
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.0
            .iter()
            .map(|&e| super::rational::factorial(e))
            .product()
    }

    /// All multi-indices of total degree exactly `degree`, in graded order.
    pub fn all_of_degree(dim: usize, degree: u32) -> Vec<Self> {
        fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == dim {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(dim, left - e, prefix, out);
                prefix.pop();
            }
        }
        if dim == 0 {
            return if degree == 0 { vec![Self(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(dim, degree, &mut Vec::with_capacity(dim), &mut out);
        out
    }

    /// All multi-indices with `|n| <= max_degree`, in graded order.
    pub fn all_up_to(dim: usize, max_degree: u32) -> Vec<Self> {
        (0..=max_degree)
            .flat_map(|d| Self::all_of_degree(dim, d))
            .collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(MultiIndex::all_up_to(4, 3).len(), 35);
        assert_eq!(MultiIndex::all_of_degree(2, 2).len(), 3);
        assert_eq!(MultiIndex::all_up_to(1, 5).len(), 6);
    }

    #[test]
    fn graded_order() {
        let mut v = MultiIndex::all_up_to(2, 2);
        let sorted = {
            let mut s = v.clone();
            s.sort();
            s
        };
        assert_eq!(v, sorted);
        v.reverse();
        v.sort();
        assert_eq!(v[0], MultiIndex::zero(2));
        assert_eq!(v[1], MultiIndex::new(vec![1, 0]));
        assert_eq!(v[2], MultiIndex::new(vec![0, 1]));
    }

    #[test]
    fn subtraction_only_when_nonnegative() {
        let a = MultiIndex::new(vec![2, 1]);
        assert_eq!(a.checked_sub(&MultiIndex::unit(2, 0)), Some(MultiIndex::new(vec![1, 1])));
        assert_eq!(MultiIndex::unit(2, 1).checked_sub(&MultiIndex::unit(2, 0)), None);
    }
}
