//! Multi-indices in ℕⁿ.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use smallvec::SmallVec;

use crate::scalar::{binomial, factorial};

/// An exponent vector of fixed length `n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MIdx(SmallVec<[u8; 4]>);

impl MIdx {
    pub fn zero(n: usize) -> Self {
        MIdx(SmallVec::from_elem(0, n))
    }

    /// The unit multi-index `e_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut m = Self::zero(n);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(exps: &[u8]) -> Self {
        MIdx(SmallVec::from_slice(exps))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    /// Total degree |α|.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MIdx) -> MIdx {
        debug_assert_eq!(self.dim(), other.dim());
        MIdx(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, if every component stays non-negative.
    pub fn checked_sub(&self, other: &MIdx) -> Option<MIdx> {
        debug_assert_eq!(self.dim(), other.dim());
        let mut out = self.0.clone();
        for (o, b) in out.iter_mut().zip(&other.0) {
            *o = o.checked_sub(*b)?;
        }
        Some(MIdx(out))
    }

    pub fn inc(&self, i: usize) -> MIdx {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    pub fn dec(&self, i: usize) -> Option<MIdx> {
        let mut m = self.clone();
        m.0[i] = m.0[i].checked_sub(1)?;
        Some(m)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MIdx) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// α! = Π αᵢ!
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * factorial(u32::from(e)))
    }

    /// Π C(αᵢ, γᵢ), the Leibniz multinomial weight.
    pub fn binomial(&self, gamma: &MIdx) -> BigInt {
        self.0
            .iter()
            .zip(&gamma.0)
            .fold(BigInt::one(), |acc, (&a, &g)| {
                acc * binomial(u32::from(a), u32::from(g))
            })
    }

    /// α!/(α−γ)!, the coefficient produced by ∂^γ acting on the monomial with exponent α.
    /// Zero when γ ≰ α.
    pub fn falling(&self, gamma: &MIdx) -> BigInt {
        let mut acc = BigInt::one();
        for (&a, &g) in self.0.iter().zip(&gamma.0) {
            if g > a {
                return BigInt::from(0);
            }
            for t in 0..g {
                acc *= BigInt::from(a - t);
            }
        }
        acc
    }

    /// All multi-indices of length `n` and total degree `d`, in lexicographic order.
    pub fn of_degree(n: usize, d: u32) -> Vec<MIdx> {
        let mut out = Vec::new();
        let mut cur = vec![0u8; n];
        fill(&mut cur, 0, d, &mut out);
        out.sort();
        out
    }

    /// All multi-indices of total degree `≤ d`, ordered by degree.
    pub fn up_to_degree(n: usize, d: u32) -> Vec<MIdx> {
        (0..=d).flat_map(|k| Self::of_degree(n, k)).collect()
    }

    /// Every γ with γ ≤ self componentwise.
    pub fn divisors(&self) -> Vec<MIdx> {
        let mut out = vec![MIdx(SmallVec::new())];
        for &e in &self.0 {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..=e).map(move |g| {
                        let mut v = m.0.clone();
                        v.push(g);
                        MIdx(v)
                    })
                })
                .collect();
        }
        out
    }
}

fn fill(cur: &mut Vec<u8>, pos: usize, remaining: u32, out: &mut Vec<MIdx>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining as u8;
        out.push(MIdx::from_slice(cur));
        return;
    }
    if cur.is_empty() {
        if remaining == 0 {
            out.push(MIdx::from_slice(cur));
        }
        return;
    }
    for e in 0..=remaining {
        cur[pos] = e as u8;
        fill(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

impl fmt::Debug for MIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(MIdx::of_degree(2, 3).len(), 4);
        assert_eq!(MIdx::of_degree(3, 2).len(), 6);
        assert_eq!(MIdx::up_to_degree(3, 2).len(), 10);
        assert_eq!(MIdx::up_to_degree(3, 4).len(), 35);
    }

    #[test]
    fn falling_factorial_matches_derivative() {
        let a = MIdx::from_slice(&[3, 1]);
        assert_eq!(a.falling(&MIdx::from_slice(&[2, 0])), BigInt::from(6));
        assert_eq!(a.falling(&MIdx::from_slice(&[0, 2])), BigInt::from(0));
        assert_eq!(a.binomial(&MIdx::from_slice(&[1, 1])), BigInt::from(3));
        assert_eq!(a.divisors().len(), 8);
    }
}
