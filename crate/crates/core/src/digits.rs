//! `Z_{p^m}` arithmetic on canonical base-`p` digit vectors.
//!
//! An element `n` of `Z_{p^m}` is stored as its unique expansion
//! `n = u_0 + p u_1 + ... + p^(m-1) u_(m-1)` with every `u_i` in `[0, p)`.
//! Addition, negation, multiplication and inversion run digit by digit,
//! threading a floored carry from one position into the next. Whatever
//! spills past position `m - 1` is dropped, which is exactly reduction
//! modulo `p^m`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A validated prime `p` and exponent `m >= 2`, together with `p^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingParams {
    p: u64,
    m: u32,
    modulus: u64,
}

impl RingParams {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // m = 1 collapses the ring to the full 2x2 matrix ring over Z_p,
        // whose bottom-left entry is no longer confined to p^(m-1) Z.
        if m < 2 {
            return Err(Error::BadExponent(m));
        }
        let modulus = p.checked_pow(m).ok_or(Error::Overflow)?;
        Ok(RingParams { p, m, modulus })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// `p^m`.
    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `p^(m-1)`, the weight of the top digit.
    #[inline]
    pub fn top_weight(&self) -> u64 {
        self.modulus / self.p
    }

    /// Exclusive upper bound on every [`CarryState`] value produced by the
    /// digit recurrences: `m * p * (p - 1)`.
    ///
    /// A product column holds at most `m` terms of size `(p-1)^2`, and the
    /// incoming carries form a geometric series with ratio `1/p`, so the
    /// accumulator never reaches `m (p-1)^2 * p / (p-1)`.
    pub fn carry_bound(&self) -> u128 {
        let p = u128::from(self.p);
        u128::from(self.m) * p * (p - 1)
    }

    /// Reduce a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_p(&self, n: i128) -> u64 {
        n.rem_euclid(i128::from(self.p)) as u64
    }

    /// Reduce a signed integer into `[0, p^m)`.
    #[inline]
    pub fn reduce_modulus(&self, n: i128) -> u64 {
        n.rem_euclid(i128::from(self.modulus)) as u64
    }

    #[inline]
    pub(crate) fn mul_p(&self, x: u64, y: u64) -> u64 {
        ((u128::from(x) * u128::from(y)) % u128::from(self.p)) as u64
    }

    #[inline]
    pub(crate) fn add_p(&self, x: u64, y: u64) -> u64 {
        ((u128::from(x) + u128::from(y)) % u128::from(self.p)) as u64
    }

    #[inline]
    pub(crate) fn neg_p(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    /// Inverse in the prime field `Z_p` by Fermat's little theorem.
    pub(crate) fn inv_p(&self, x: u64) -> Option<u64> {
        if x.is_multiple_of(self.p) {
            return None;
        }
        let mut base = x % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_p(acc, base);
            }
            base = self.mul_p(base, base);
            exp >>= 1;
        }
        Some(acc)
    }

    pub(crate) fn ensure_same(&self, other: &RingParams) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamMismatch)
        }
    }
}

impl fmt::Display for RingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p = {}, m = {})", self.p, self.m)
    }
}

/// Trial division; parameters are small enough that nothing cleverer is needed.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// One step of a carry chain: an accumulator before reduction, and its
/// floored quotient by `p` that flows into the next digit position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CarryState {
    pub value: u128,
    pub carry: u128,
}

impl CarryState {
    #[inline]
    fn settle(value: u128, p: u64) -> Self {
        CarryState {
            value,
            carry: value / u128::from(p),
        }
    }

    #[inline]
    fn digit(&self, p: u64) -> u64 {
        (self.value % u128::from(p)) as u64
    }
}

/// An element of `Z_{p^m}` as little-endian base-`p` digits (`u[0] = u_0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digits {
    params: RingParams,
    u: Vec<u64>,
}

impl Digits {
    /// Digits of `n mod p^m`; negative inputs are reduced into `[0, p^m)` first.
    pub fn from_int(params: RingParams, n: i128) -> Self {
        Self::from_u64(params, params.reduce_modulus(n))
    }

    /// Digits of `n mod p^m`.
    pub fn from_u64(params: RingParams, n: u64) -> Self {
        let mut n = n % params.modulus;
        let mut u = Vec::with_capacity(params.m as usize);
        for _ in 0..params.m {
            u.push(n % params.p);
            n /= params.p;
        }
        Digits { params, u }
    }

    /// Build from explicit little-endian digits. Every digit must lie in `[0, p)`.
    pub fn from_digits(params: RingParams, u: &[u64]) -> Result<Self> {
        if u.len() != params.m as usize {
            return Err(Error::InvalidEntry("digit vector length must equal m"));
        }
        if u.iter().any(|&x| x >= params.p) {
            return Err(Error::InvalidEntry("digit out of range [0, p)"));
        }
        Ok(Digits {
            params,
            u: u.to_vec(),
        })
    }

    pub fn zero(params: RingParams) -> Self {
        Digits {
            params,
            u: alloc::vec![0; params.m as usize],
        }
    }

    pub fn one(params: RingParams) -> Self {
        let mut d = Self::zero(params);
        d.u[0] = 1;
        d
    }

    /// `p^(m-1) * c` for `c` in `Z_p`: a single nonzero top digit.
    pub fn top(params: RingParams, c: u64) -> Self {
        let mut d = Self::zero(params);
        d.u[params.m as usize - 1] = c % params.p;
        d
    }

    #[inline]
    pub fn params(&self) -> RingParams {
        self.params
    }

    /// The digits `u_0, ..., u_(m-1)`.
    #[inline]
    pub fn digits(&self) -> &[u64] {
        &self.u
    }

    /// `u_0`, which is also the residue of the element modulo `p`.
    #[inline]
    pub fn low(&self) -> u64 {
        self.u[0]
    }

    pub fn to_int(&self) -> u64 {
        self.u
            .iter()
            .rev()
            .fold(0u64, |acc, &x| acc * self.params.p + x)
    }

    pub fn is_zero(&self) -> bool {
        self.u.iter().all(|&x| x == 0)
    }

    /// Units of `Z_{p^m}` are exactly the elements with `u_0 != 0`.
    #[inline]
    pub fn is_unit(&self) -> bool {
        self.u[0] != 0
    }

    pub fn add(&self, rhs: &Digits) -> Result<Digits> {
        self.add_observed(rhs, |_| ())
    }

    /// [`Digits::add`], reporting every carry-chain accumulator to `observe`.
    pub fn add_observed(
        &self,
        rhs: &Digits,
        mut observe: impl FnMut(&CarryState),
    ) -> Result<Digits> {
        self.params.ensure_same(&rhs.params)?;
        let p = self.params.p;
        let mut out = Vec::with_capacity(self.u.len());
        let mut carry = 0u128;
        for (&x, &y) in self.u.iter().zip(&rhs.u) {
            // v_k = u_k + u'_k + floor(v_(k-1) / p)
            let state = CarryState::settle(u128::from(x) + u128::from(y) + carry, p);
            observe(&state);
            out.push(state.digit(p));
            carry = state.carry;
        }
        Ok(Digits {
            params: self.params,
            u: out,
        })
    }

    pub fn neg(&self) -> Digits {
        self.neg_observed(|_| ())
    }

    /// [`Digits::neg`], reporting every carry-chain accumulator to `observe`.
    ///
    /// Each output digit `v_k` is chosen so that `u_k + v_k + carry` vanishes
    /// modulo `p`; the sum `w_k` is then carried forward like an addition.
    pub fn neg_observed(&self, mut observe: impl FnMut(&CarryState)) -> Digits {
        let p = self.params.p;
        let mut out = Vec::with_capacity(self.u.len());
        let mut carry = 0u128;
        for &x in &self.u {
            let pending = u128::from(x) + carry;
            let v = ((u128::from(p) - pending % u128::from(p)) % u128::from(p)) as u64;
            let state = CarryState::settle(pending + u128::from(v), p);
            observe(&state);
            debug_assert_eq!(state.digit(p), 0);
            out.push(v);
            carry = state.carry;
        }
        Digits {
            params: self.params,
            u: out,
        }
    }

    pub fn sub(&self, rhs: &Digits) -> Result<Digits> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Digits) -> Result<Digits> {
        self.mul_observed(rhs, |_| ())
    }

    /// [`Digits::mul`], reporting every carry-chain accumulator to `observe`.
    pub fn mul_observed(
        &self,
        rhs: &Digits,
        mut observe: impl FnMut(&CarryState),
    ) -> Result<Digits> {
        self.params.ensure_same(&rhs.params)?;
        let p = self.params.p;
        let m = self.u.len();
        let mut out = Vec::with_capacity(m);
        let mut carry = 0u128;
        for k in 0..m {
            // w_k = sum_{i+j=k} u_i u'_j + floor(w_(k-1) / p)
            let column: u128 = (0..=k)
                .map(|i| u128::from(self.u[i]) * u128::from(rhs.u[k - i]))
                .sum();
            let state = CarryState::settle(column + carry, p);
            observe(&state);
            out.push(state.digit(p));
            carry = state.carry;
        }
        Ok(Digits {
            params: self.params,
            u: out,
        })
    }

    pub fn inv(&self) -> Result<Digits> {
        self.inv_observed(|_| ())
    }

    /// [`Digits::inv`], reporting every carry-chain accumulator to `observe`.
    ///
    /// Digit-by-digit Hensel lifting: `s_0 = u_0^(-1) mod p`, and each later
    /// `s_k` is the unique digit that makes position `k` of the running
    /// product `self * s` vanish modulo `p`.
    pub fn inv_observed(&self, mut observe: impl FnMut(&CarryState)) -> Result<Digits> {
        let params = self.params;
        let p = params.p;
        let u0_inv = params.inv_p(self.u[0]).ok_or(Error::NotAUnit)?;
        let m = self.u.len();
        let mut s: Vec<u64> = Vec::with_capacity(m);
        let mut carry = 0u128;
        for k in 0..m {
            // Column k of the product without its u_0 * s_k term.
            let partial: u128 = (1..=k)
                .map(|i| u128::from(self.u[i]) * u128::from(s[k - i]))
                .sum::<u128>()
                + carry;
            let s_k = if k == 0 {
                u0_inv
            } else {
                let residue = (partial % u128::from(p)) as u64;
                params.mul_p(params.neg_p(residue), u0_inv)
            };
            let state = CarryState::settle(partial + u128::from(self.u[0]) * u128::from(s_k), p);
            observe(&state);
            debug_assert_eq!(state.digit(p), u64::from(k == 0));
            s.push(s_k);
            carry = state.carry;
        }
        Ok(Digits { params, u: s })
    }

    /// `self + p^(m-1) * k`: only the top digit moves, anything that would
    /// carry out of it is a multiple of `p^m`.
    pub fn add_top(&self, k: u64) -> Digits {
        let mut out = self.clone();
        let top = out.u.len() - 1;
        out.u[top] = self.params.add_p(out.u[top], k);
        out
    }

    /// Multiply by an integer scalar reduced into `Z_{p^m}`.
    pub fn scale(&self, n: i128) -> Digits {
        self.mul(&Digits::from_int(self.params, n))
            .expect("same params")
    }
}

impl fmt::Display for Digits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_int())
    }
}
