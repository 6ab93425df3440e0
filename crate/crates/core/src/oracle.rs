//! Brute-force reference arithmetic.
//!
//! Nothing in here touches digit vectors or carry chains. Elements are plain
//! integers reduced with `%`, the bottom-left entry is kept as the full value
//! `p^(m-1) c` rather than its cofactor, inverses come from the extended
//! Euclidean algorithm or exhaustive search, and ring products follow the
//! four matrix-entry formulas verbatim. The point is that a bug in the digit
//! machinery cannot be mirrored here.

use alloc::vec::Vec;
use core::ops::Range;

use crate::digits::RingParams;
use crate::error::{Error, Result};
use crate::matrix::EndoMatrix;

/// Default cap on the number of elements [`enumerate_ring`] will yield.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

/// Default cap on the ring size for the quadratic pair searches.
pub const DEFAULT_PAIRWISE_BUDGET: u64 = 2048;

pub fn add_mod(x: u128, y: u128, n: u128) -> u128 {
    (x + y) % n
}

pub fn neg_mod(x: u128, n: u128) -> u128 {
    (n - x % n) % n
}

pub fn mul_mod(x: u128, y: u128, n: u128) -> u128 {
    (x % n) * (y % n) % n
}

/// Inverse of `n` modulo `modulus` in `[0, modulus)`, via extended Euclid.
pub fn euclid_inv(n: i128, modulus: u128) -> Result<u128> {
    let m = modulus as i128;
    let (mut old_r, mut r) = (n.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 && modulus != 1 {
        return Err(Error::NotCoprime {
            value: n.rem_euclid(m) as u128,
            modulus,
        });
    }
    Ok(old_s.rem_euclid(m) as u128)
}

/// A ring element with the bottom-left entry stored in full.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NaiveMatrix {
    pub params: RingParams,
    pub a: u64,
    pub b: u64,
    /// Bottom-left entry in `[0, p^m)`, a multiple of `p^(m-1)`.
    pub c_full: u64,
    pub d: u64,
}

impl NaiveMatrix {
    pub fn new(params: RingParams, a: u64, b: u64, c_full: u64, d: u64) -> Result<Self> {
        let n = params.modulus();
        if a >= params.p() || b >= params.p() || c_full >= n || d >= n {
            return Err(Error::InvalidEntry("entry out of range"));
        }
        if !c_full.is_multiple_of(n / params.p()) {
            return Err(Error::InvalidEntry(
                "bottom-left entry must be a multiple of p^(m-1)",
            ));
        }
        Ok(NaiveMatrix {
            params,
            a,
            b,
            c_full,
            d,
        })
    }

    pub fn zero(params: RingParams) -> Self {
        NaiveMatrix {
            params,
            a: 0,
            b: 0,
            c_full: 0,
            d: 0,
        }
    }

    pub fn identity(params: RingParams) -> Self {
        NaiveMatrix {
            params,
            a: 1,
            b: 0,
            c_full: 0,
            d: 1,
        }
    }

    /// `e I`: `e mod p` on the top-left, `e mod p^m` on the bottom-right.
    pub fn scalar(params: RingParams, e: i128) -> Self {
        NaiveMatrix {
            params,
            a: e.rem_euclid(i128::from(params.p())) as u64,
            b: 0,
            c_full: 0,
            d: e.rem_euclid(i128::from(params.modulus())) as u64,
        }
    }

    fn moduli(&self) -> (u128, u128) {
        (
            u128::from(self.params.p()),
            u128::from(self.params.modulus()),
        )
    }

    fn from_wide(params: RingParams, a: u128, b: u128, c_full: u128, d: u128) -> Self {
        NaiveMatrix {
            params,
            a: a as u64,
            b: b as u64,
            c_full: c_full as u64,
            d: d as u64,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c_full == 0 && self.d == 0
    }

    pub fn add(&self, rhs: &NaiveMatrix) -> Result<NaiveMatrix> {
        self.params.ensure_same(&rhs.params)?;
        let (p, n) = self.moduli();
        Ok(Self::from_wide(
            self.params,
            add_mod(self.a.into(), rhs.a.into(), p),
            add_mod(self.b.into(), rhs.b.into(), p),
            add_mod(self.c_full.into(), rhs.c_full.into(), n),
            add_mod(self.d.into(), rhs.d.into(), n),
        ))
    }

    pub fn neg(&self) -> NaiveMatrix {
        let (p, n) = self.moduli();
        Self::from_wide(
            self.params,
            neg_mod(self.a.into(), p),
            neg_mod(self.b.into(), p),
            neg_mod(self.c_full.into(), n),
            neg_mod(self.d.into(), n),
        )
    }

    /// Entry formulas of the product, evaluated on plain integers:
    ///
    /// ```text
    /// a = a1 a2                mod p
    /// b = a1 b2 + b1 d2        mod p
    /// C = C1 a2 + C2 d1        mod p^m
    /// d = C1 b2 + d1 d2        mod p^m
    /// ```
    pub fn mul(&self, rhs: &NaiveMatrix) -> Result<NaiveMatrix> {
        self.params.ensure_same(&rhs.params)?;
        let (p, n) = self.moduli();
        let (a1, b1, c1, d1) = self.wide();
        let (a2, b2, c2, d2) = rhs.wide();
        Ok(Self::from_wide(
            self.params,
            mul_mod(a1, a2, p),
            add_mod(mul_mod(a1, b2, p), mul_mod(b1, d2, p), p),
            add_mod(mul_mod(c1, a2, n), mul_mod(c2, d1, n), n),
            add_mod(mul_mod(c1, b2, n), mul_mod(d1, d2, n), n),
        ))
    }

    fn wide(&self) -> (u128, u128, u128, u128) {
        (
            self.a.into(),
            self.b.into(),
            self.c_full.into(),
            self.d.into(),
        )
    }

    /// `(x, y) -> (a x + b y mod p, C x + d y mod p^m)`.
    pub fn apply(&self, x: u64, y: u64) -> (u64, u64) {
        let (p, n) = self.moduli();
        let (a, b, c, d) = self.wide();
        let (x, y) = (u128::from(x), u128::from(y));
        (
            add_mod(mul_mod(a, x, p), mul_mod(b, y, p), p) as u64,
            add_mod(mul_mod(c, x, n), mul_mod(d, y, n), n) as u64,
        )
    }

    /// Horner evaluation of `sum coeffs[i] x^i` at this element.
    pub fn eval_poly(&self, coeffs: &[i128]) -> NaiveMatrix {
        coeffs.iter().rev().fold(Self::zero(self.params), |acc, &c| {
            acc.mul(self)
                .and_then(|t| t.add(&Self::scalar(self.params, c)))
                .expect("same params")
        })
    }
}

impl From<&EndoMatrix> for NaiveMatrix {
    fn from(x: &EndoMatrix) -> Self {
        NaiveMatrix {
            params: x.params(),
            a: x.a(),
            b: x.b(),
            c_full: x.c_full(),
            d: x.d().to_int(),
        }
    }
}

impl TryFrom<&NaiveMatrix> for EndoMatrix {
    type Error = Error;

    fn try_from(x: &NaiveMatrix) -> Result<Self> {
        EndoMatrix::from_entries(x.params, x.a, x.b, x.c_full, x.d)
    }
}

/// `p^(m+3)` without overflow.
pub fn ring_size(params: RingParams) -> u128 {
    u128::from(params.p()).pow(3) * u128::from(params.modulus())
}

/// The element with the given index in the fixed enumeration order
/// (`d` fastest, then `c`, `b`, `a`).
pub fn element_at(params: RingParams, index: u64) -> NaiveMatrix {
    let p = params.p();
    let n = params.modulus();
    let d = index % n;
    let rest = index / n;
    let c = rest % p;
    let b = (rest / p) % p;
    let a = (rest / p / p) % p;
    NaiveMatrix {
        params,
        a,
        b,
        c_full: c * (n / p),
        d,
    }
}

/// Iterator over a contiguous index range of the ring.
#[derive(Debug, Clone)]
pub struct RingElements {
    params: RingParams,
    range: Range<u64>,
}

impl RingElements {
    /// Split into at most `parts` disjoint, contiguous pieces that together
    /// cover the remaining range.
    pub fn split(&self, parts: usize) -> Vec<RingElements> {
        let len = self.range.end - self.range.start;
        let parts = (parts.max(1) as u64).min(len.max(1));
        let chunk = len.div_ceil(parts);
        (0..parts)
            .map(|i| {
                let start = self.range.start + (i * chunk).min(len);
                let end = self.range.start + ((i + 1) * chunk).min(len);
                RingElements {
                    params: self.params,
                    range: start..end,
                }
            })
            .filter(|r| !r.range.is_empty())
            .collect()
    }

    pub fn range(&self) -> Range<u64> {
        self.range.clone()
    }
}

impl Iterator for RingElements {
    type Item = NaiveMatrix;

    fn next(&mut self) -> Option<NaiveMatrix> {
        self.range.next().map(|i| element_at(self.params, i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.range.size_hint()
    }
}

impl ExactSizeIterator for RingElements {}

fn check_budget(required: u128, budget: u64) -> Result<()> {
    if required > u128::from(budget) {
        Err(Error::BudgetExceeded { required, budget })
    } else {
        Ok(())
    }
}

/// Every element of the ring exactly once, provided `p^(m+3) <= budget`.
pub fn enumerate_ring(params: RingParams, budget: u64) -> Result<RingElements> {
    let size = ring_size(params);
    check_budget(size, budget)?;
    Ok(RingElements {
        params,
        range: 0..size as u64,
    })
}

/// A two-sided inverse found by exhaustive search over `universe`.
pub fn find_inverse(x: &NaiveMatrix, universe: &[NaiveMatrix]) -> Option<NaiveMatrix> {
    let id = NaiveMatrix::identity(x.params);
    universe
        .iter()
        .find(|y| x.mul(y).ok() == Some(id) && y.mul(x).ok() == Some(id))
        .copied()
}

/// Number of elements with a two-sided inverse, by exhaustive pair search.
/// `budget` caps the ring size.
pub fn count_units_bruteforce(params: RingParams, budget: u64) -> Result<u64> {
    let universe: Vec<NaiveMatrix> = enumerate_ring(params, budget)?.collect();
    Ok(universe
        .iter()
        .filter(|x| find_inverse(x, &universe).is_some())
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, m: u32) -> RingParams {
        RingParams::new(p, m).unwrap()
    }

    #[test]
    fn euclid_examples() {
        assert_eq!(euclid_inv(67, 125), Ok(28));
        assert_eq!(euclid_inv(1, 49), Ok(1));
        assert_eq!(euclid_inv(34, 125), Ok(114));
        assert_eq!(euclid_inv(-1, 125), Ok(124));
        assert_eq!(
            euclid_inv(25, 125),
            Err(Error::NotCoprime {
                value: 25,
                modulus: 125
            })
        );
        for n in 1..97 {
            let inv = euclid_inv(n, 97).unwrap();
            assert_eq!((inv * n as u128) % 97, 1);
        }
    }

    #[test]
    fn naive_mul_examples() {
        let pp = params(5, 3);
        let a = NaiveMatrix::new(pp, 2, 3, 75, 67).unwrap();
        let b = NaiveMatrix::new(pp, 3, 3, 75, 103).unwrap();
        let id = NaiveMatrix::identity(pp);
        assert_eq!(a.mul(&b).unwrap(), id);
        assert_eq!(b.mul(&a).unwrap(), id);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert_eq!(id.mul(&a).unwrap(), a);
        assert!(NaiveMatrix::new(pp, 2, 3, 7, 67).is_err());
    }

    #[test]
    fn enumeration_counts() {
        for (p, m, size) in [(2, 2, 32), (2, 3, 64), (3, 2, 243)] {
            let pp = params(p, m);
            let all: Vec<_> = enumerate_ring(pp, DEFAULT_ENUMERATION_BUDGET)
                .unwrap()
                .collect();
            assert_eq!(all.len(), size);
            let distinct: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), size);
            assert!(all
                .iter()
                .all(|x| NaiveMatrix::new(pp, x.a, x.b, x.c_full, x.d).is_ok()));
        }
        assert!(matches!(
            enumerate_ring(params(5, 3), 1000),
            Err(Error::BudgetExceeded { required: 15625, budget: 1000 })
        ));
    }

    #[test]
    fn split_partitions_the_range() {
        let all = enumerate_ring(params(3, 2), 1000).unwrap();
        for parts in [1, 2, 7, 243, 500] {
            let pieces = all.split(parts);
            let joined: Vec<_> = pieces.into_iter().flatten().collect();
            assert_eq!(joined, all.clone().collect::<Vec<_>>());
        }
    }

    #[test]
    fn unit_counts() {
        assert_eq!(count_units_bruteforce(params(2, 2), DEFAULT_PAIRWISE_BUDGET), Ok(8));
        assert_eq!(count_units_bruteforce(params(2, 3), DEFAULT_PAIRWISE_BUDGET), Ok(16));
        assert_eq!(count_units_bruteforce(params(3, 2), DEFAULT_PAIRWISE_BUDGET), Ok(108));
        assert!(count_units_bruteforce(params(5, 2), DEFAULT_PAIRWISE_BUDGET).is_err());
    }

    #[test]
    fn bridge_is_a_bijection_respecting_operations() {
        let pp = params(2, 2);
        let all: Vec<_> = enumerate_ring(pp, 100).unwrap().collect();
        let endo: Vec<EndoMatrix> = all.iter().map(|x| EndoMatrix::try_from(x).unwrap()).collect();
        for (x, ex) in all.iter().zip(&endo) {
            assert_eq!(NaiveMatrix::from(ex), *x);
            assert_eq!(NaiveMatrix::from(&ex.neg()), x.neg());
            for (y, ey) in all.iter().zip(&endo) {
                assert_eq!(NaiveMatrix::from(&ex.add(ey).unwrap()), x.add(y).unwrap());
                assert_eq!(NaiveMatrix::from(&ex.mul(ey).unwrap()), x.mul(y).unwrap());
            }
        }
    }

    #[test]
    fn horner_evaluation() {
        let pp = params(5, 3);
        let a = NaiveMatrix::new(pp, 2, 3, 75, 67).unwrap();
        assert!(a.eval_poly(&[34, 56, 1]).is_zero());
        assert_eq!(a.eval_poly(&[0, 1]), a);
        assert_eq!(a.eval_poly(&[]), NaiveMatrix::zero(pp));
        assert_eq!(a.apply(1, 1), (0, 17));
    }
}
