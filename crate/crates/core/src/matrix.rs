//! The matrix ring `E_{p,p^m}`.
//!
//! An element is stored as `(a, b, c, d)` where `a, b, c` live in `Z_p` and
//! `d` in `Z_{p^m}`; the matrix it stands for is
//!
//! ```text
//! [ a            b ]
//! [ p^(m-1) c    d ]
//! ```
//!
//! Entries in the first row multiply `Z_{p^m}` values only through their
//! residue mod `p`, so mixed products like `b * d` use `d mod p = u_0`.

use core::fmt;

use crate::digits::{Digits, RingParams};
use crate::error::{Error, InvertibilityFailure, Result};
use crate::poly::{AnnPoly, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EndoMatrix {
    params: RingParams,
    a: u64,
    b: u64,
    c: u64,
    d: Digits,
}

impl EndoMatrix {
    /// Build from the cofactor form: `c` is the `Z_p` cofactor of `p^(m-1)`.
    pub fn new(params: RingParams, a: u64, b: u64, c: u64, d: Digits) -> Result<Self> {
        let p = params.p();
        if a >= p || b >= p || c >= p {
            return Err(Error::InvalidEntry("first-row entries and c must lie in [0, p)"));
        }
        params.ensure_same(&d.params())?;
        Ok(EndoMatrix { params, a, b, c, d })
    }

    /// Build from the matrix as written, `[[a, b], [c_full, d]]`.
    ///
    /// Entries must already be reduced, and `c_full` must be a multiple of
    /// `p^(m-1)`.
    pub fn from_entries(params: RingParams, a: u64, b: u64, c_full: u64, d: u64) -> Result<Self> {
        let p = params.p();
        if a >= p || b >= p {
            return Err(Error::InvalidEntry("top-row entries must lie in [0, p)"));
        }
        if c_full >= params.modulus() || d >= params.modulus() {
            return Err(Error::InvalidEntry("bottom-row entries must lie in [0, p^m)"));
        }
        if !c_full.is_multiple_of(params.top_weight()) {
            return Err(Error::InvalidEntry(
                "bottom-left entry must be a multiple of p^(m-1)",
            ));
        }
        Ok(EndoMatrix {
            params,
            a,
            b,
            c: c_full / params.top_weight(),
            d: Digits::from_u64(params, d),
        })
    }

    /// Like [`EndoMatrix::from_entries`], but reduces every entry into range
    /// first (`a`, `b` mod `p`; `c_full`, `d` mod `p^m`). The reduced
    /// `c_full` still has to be a multiple of `p^(m-1)`.
    pub fn from_entries_reduced(
        params: RingParams,
        a: i128,
        b: i128,
        c_full: i128,
        d: i128,
    ) -> Result<Self> {
        Self::from_entries(
            params,
            params.reduce_p(a),
            params.reduce_p(b),
            params.reduce_modulus(c_full),
            params.reduce_modulus(d),
        )
    }

    pub fn zero(params: RingParams) -> Self {
        EndoMatrix {
            params,
            a: 0,
            b: 0,
            c: 0,
            d: Digits::zero(params),
        }
    }

    pub fn identity(params: RingParams) -> Self {
        EndoMatrix {
            params,
            a: 1,
            b: 0,
            c: 0,
            d: Digits::one(params),
        }
    }

    #[inline]
    pub fn params(&self) -> RingParams {
        self.params
    }

    #[inline]
    pub fn a(&self) -> u64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> u64 {
        self.b
    }

    /// Cofactor `c` of the bottom-left entry `p^(m-1) c`.
    #[inline]
    pub fn c(&self) -> u64 {
        self.c
    }

    /// The bottom-left entry `p^(m-1) c` as an integer in `[0, p^m)`.
    #[inline]
    pub fn c_full(&self) -> u64 {
        self.c * self.params.top_weight()
    }

    #[inline]
    pub fn d(&self) -> &Digits {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0 && self.d.is_zero()
    }

    pub fn add(&self, rhs: &EndoMatrix) -> Result<EndoMatrix> {
        self.params.ensure_same(&rhs.params)?;
        let pp = self.params;
        Ok(EndoMatrix {
            params: pp,
            a: pp.add_p(self.a, rhs.a),
            b: pp.add_p(self.b, rhs.b),
            c: pp.add_p(self.c, rhs.c),
            d: self.d.add(&rhs.d)?,
        })
    }

    pub fn neg(&self) -> EndoMatrix {
        let pp = self.params;
        EndoMatrix {
            params: pp,
            a: pp.neg_p(self.a),
            b: pp.neg_p(self.b),
            c: pp.neg_p(self.c),
            d: self.d.neg(),
        }
    }

    pub fn sub(&self, rhs: &EndoMatrix) -> Result<EndoMatrix> {
        self.add(&rhs.neg())
    }

    /// Matrix product, i.e. composition `self after rhs` of endomorphisms.
    pub fn mul(&self, rhs: &EndoMatrix) -> Result<EndoMatrix> {
        self.params.ensure_same(&rhs.params)?;
        let pp = self.params;
        let a = pp.mul_p(self.a, rhs.a);
        let b = pp.add_p(pp.mul_p(self.a, rhs.b), pp.mul_p(self.b, rhs.d.low()));
        let c = pp.add_p(pp.mul_p(self.c, rhs.a), pp.mul_p(rhs.c, self.d.low()));
        // p^(m-1) c1 b2 only touches the top digit of d1 d2.
        let d = self.d.mul(&rhs.d)?.add_top(pp.mul_p(self.c, rhs.b));
        Ok(EndoMatrix {
            params: pp,
            a,
            b,
            c,
            d,
        })
    }

    /// Multiply every entry by the scalar `n`, reduced per entry: mod `p`
    /// for `a`, `b`, `c` and mod `p^m` for `d`. Equals `n`-fold addition.
    pub fn scalar_mul(&self, n: i128) -> EndoMatrix {
        self.scalar_mul_digits(&Digits::from_int(self.params, n))
    }

    /// [`EndoMatrix::scalar_mul`] with the scalar given as an element of `Z_{p^m}`.
    pub fn scalar_mul_digits(&self, n: &Digits) -> EndoMatrix {
        let pp = self.params;
        let low = n.low();
        EndoMatrix {
            params: pp,
            a: pp.mul_p(self.a, low),
            b: pp.mul_p(self.b, low),
            c: pp.mul_p(self.c, low),
            d: self.d.mul(n).expect("scalar shares the matrix params"),
        }
    }

    /// The scalar matrix `n I`.
    pub fn scalar(params: RingParams, n: &Digits) -> EndoMatrix {
        EndoMatrix::identity(params).scalar_mul_digits(n)
    }

    /// `self^n` by repeated squaring; `self^0 = I`.
    pub fn pow(&self, mut n: u64) -> EndoMatrix {
        let mut base = self.clone();
        let mut acc = EndoMatrix::identity(self.params);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same params");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same params");
            }
        }
        acc
    }

    /// `None` when invertible, otherwise the part of `a != 0 && u_0 != 0`
    /// that fails.
    pub fn invertibility_failure(&self) -> Option<InvertibilityFailure> {
        InvertibilityFailure::check(self.a, self.d.low())
    }

    pub fn is_invertible(&self) -> bool {
        self.invertibility_failure().is_none()
    }

    /// Closed-form inverse.
    ///
    /// With `a' = a^(-1)`, `v = u_0^(-1)` in `Z_p` and `s = d^(-1)` in `Z_{p^m}`:
    ///
    /// ```text
    /// [ a'                 -a' b v                 ]
    /// [ p^(m-1)(-a' c v)   s + p^(m-1)(c a' b v^2) ]
    /// ```
    pub fn inverse_direct(&self) -> Result<EndoMatrix> {
        if let Some(why) = self.invertibility_failure() {
            return Err(Error::NotInvertible(why));
        }
        let pp = self.params;
        let a_inv = pp.inv_p(self.a).expect("a != 0");
        let u0_inv = pp.inv_p(self.d.low()).expect("u_0 != 0");
        let b = pp.neg_p(pp.mul_p(pp.mul_p(a_inv, self.b), u0_inv));
        let c = pp.neg_p(pp.mul_p(pp.mul_p(a_inv, self.c), u0_inv));
        let correction = pp.mul_p(
            pp.mul_p(pp.mul_p(self.c, a_inv), self.b),
            pp.mul_p(u0_inv, u0_inv),
        );
        let d = self.d.inv()?.add_top(correction);
        Ok(EndoMatrix {
            params: pp,
            a: a_inv,
            b,
            c,
            d,
        })
    }

    /// `x^2 + r x + s` with `r = -(a + d)` and `s = a d - p^(m-1) b c`,
    /// computed in `Z_{p^m}` with `a` read as an integer in `[0, p)`.
    pub fn annihilating_poly(&self) -> AnnPoly {
        let pp = self.params;
        let a = Digits::from_u64(pp, self.a);
        let r = a.add(&self.d).expect("same params").neg();
        let bc = Digits::top(pp, pp.mul_p(self.b, self.c));
        let s = a
            .mul(&self.d)
            .and_then(|ad| ad.sub(&bc))
            .expect("same params");
        AnnPoly { r, s }
    }

    /// Inverse through the annihilating polynomial: `A^(-1) = -s^(-1) (A + r I)`.
    pub fn inverse_via_minpoly(&self) -> Result<EndoMatrix> {
        if let Some(why) = self.invertibility_failure() {
            return Err(Error::NotInvertible(why));
        }
        let AnnPoly { r, s } = self.annihilating_poly();
        let factor = s.inv()?.neg();
        let shifted = self.add(&EndoMatrix::scalar(self.params, &r))?;
        Ok(shifted.scalar_mul_digits(&factor))
    }

    /// Least-degree monic annihilating polynomial, coefficients in `[0, p^m)`.
    ///
    /// Scalar-like elements (`b = c = 0`, `a = d mod p`) are killed by
    /// `x - d`; everything else needs the full quadratic.
    pub fn minimal_poly(&self) -> IntPoly {
        if self.b == 0 && self.c == 0 && self.a == self.d.low() {
            let e = self.d.neg().to_int();
            IntPoly::new(alloc::vec![i128::from(e), 1])
        } else {
            self.annihilating_poly().to_int_poly()
        }
    }

    /// Evaluate `g(A)`.
    ///
    /// `g` is first reduced modulo the annihilating quadratic, leaving a
    /// remainder `r_0 + r_1 x` that is evaluated as `r_0 I + r_1 A`.
    pub fn eval_poly(&self, g: &IntPoly) -> EndoMatrix {
        let pp = self.params;
        let rem = g.rem_monic(&self.annihilating_poly().to_int_poly(), pp.modulus());
        let coeff = |i: usize| Digits::from_int(pp, rem.coeffs().get(i).copied().unwrap_or(0));
        EndoMatrix::scalar(pp, &coeff(0))
            .add(&self.scalar_mul_digits(&coeff(1)))
            .expect("same params")
    }
}

impl fmt::Display for EndoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.a,
            self.b,
            self.c_full(),
            self.d
        )
    }
}

/// Ring size and number of units for given parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    /// `p^(m+3)`.
    pub ring_size: u64,
    /// `p^(m+1) (p-1)^2`.
    pub unit_count: u64,
}

pub fn census(params: RingParams) -> Result<Census> {
    let p = params.p();
    let m = params.m();
    let ring_size = p.checked_pow(m + 3).ok_or(Error::Overflow)?;
    let unit_count = p
        .checked_pow(m + 1)
        .and_then(|x| x.checked_mul((p - 1) * (p - 1)))
        .ok_or(Error::Overflow)?;
    Ok(Census {
        ring_size,
        unit_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec::Vec;

    fn params(p: u64, m: u32) -> RingParams {
        RingParams::new(p, m).unwrap()
    }

    fn mat(pp: RingParams, a: u64, b: u64, c_full: u64, d: u64) -> EndoMatrix {
        EndoMatrix::from_entries(pp, a, b, c_full, d).unwrap()
    }

    fn all(pp: RingParams) -> Vec<EndoMatrix> {
        let p = pp.p();
        let mut out = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..pp.modulus() {
                        out.push(mat(pp, a, b, c * pp.top_weight(), d));
                    }
                }
            }
        }
        out
    }

    fn example() -> EndoMatrix {
        mat(params(5, 3), 2, 3, 75, 67)
    }

    #[test]
    fn construction() {
        let pp = params(5, 3);
        let a = example();
        assert_eq!((a.a(), a.b(), a.c(), a.c_full(), a.d().to_int()), (2, 3, 3, 75, 67));
        assert!(EndoMatrix::from_entries(pp, 2, 3, 7, 67).is_err());
        assert!(EndoMatrix::from_entries(pp, 5, 3, 75, 67).is_err());
        assert!(EndoMatrix::from_entries(pp, 2, 3, 75, 125).is_err());
        assert!(EndoMatrix::from_entries(pp, 2, 3, 125, 1).is_err());
        assert_eq!(
            EndoMatrix::from_entries_reduced(pp, 7, -2, 200, -58).unwrap(),
            example()
        );
        assert!(EndoMatrix::new(pp, 0, 0, 5, Digits::zero(pp)).is_err());
        assert_eq!(
            EndoMatrix::new(pp, 0, 0, 0, Digits::zero(params(5, 2))),
            Err(Error::ParamMismatch)
        );
        assert_eq!(example().to_string(), "[[2,3],[75,67]]");
    }

    #[test]
    fn identities() {
        let pp = params(5, 3);
        let i = EndoMatrix::identity(pp);
        assert_eq!((i.a(), i.b(), i.c(), i.d().to_int()), (1, 0, 0, 1));
        assert!(EndoMatrix::zero(pp).is_zero());
        assert_eq!(i.mul(&example()).unwrap(), example());
        assert_eq!(example().add(&EndoMatrix::zero(pp)).unwrap(), example());
    }

    #[test]
    fn add_examples() {
        let pp = params(5, 3);
        let diag = EndoMatrix::new(pp, 4, 0, 0, Digits::from_u64(pp, 56)).unwrap();
        assert_eq!(example().add(&diag).unwrap(), mat(pp, 1, 3, 75, 123));
        // A + rI with r = 56, reduced per entry: r mod 5 = 1 in the top-left.
        let shifted = example()
            .add(&EndoMatrix::scalar(pp, &Digits::from_u64(pp, 56)))
            .unwrap();
        assert_eq!(shifted, mat(pp, 3, 3, 75, 123));
        assert_eq!(
            example().add(&EndoMatrix::zero(params(5, 2))),
            Err(Error::ParamMismatch)
        );
    }

    #[test]
    fn neg_examples() {
        let pp = params(5, 3);
        assert!(EndoMatrix::zero(pp).neg().is_zero());
        assert_eq!(example().neg(), mat(pp, 3, 2, 50, 58));
        for x in all(params(2, 2)) {
            assert_eq!(x.neg().neg(), x);
            assert!(x.add(&x.neg()).unwrap().is_zero());
        }
    }

    #[test]
    fn mul_examples() {
        let pp = params(5, 3);
        let n = mat(pp, 3, 3, 75, 103);
        assert_eq!(example().mul(&n).unwrap(), EndoMatrix::identity(pp));

        let p2 = params(2, 2);
        let x = mat(p2, 0, 1, 0, 0);
        let y = mat(p2, 0, 0, 2, 0);
        assert!(x.mul(&y).unwrap().is_zero());
        assert_eq!(y.mul(&x).unwrap(), mat(p2, 0, 0, 0, 2));

        let id = EndoMatrix::identity(p2);
        for x in all(p2) {
            assert_eq!(x.mul(&id).unwrap(), x);
            assert_eq!(id.mul(&x).unwrap(), x);
        }
    }

    #[test]
    fn scalar_examples() {
        let pp = params(5, 3);
        assert_eq!(mat(pp, 3, 3, 75, 123).scalar_mul(11), mat(pp, 3, 3, 75, 103));
        assert!(example().scalar_mul(0).is_zero());
        assert_eq!(example().scalar_mul(1), example());
        let mut sum = EndoMatrix::zero(pp);
        for _ in 0..7 {
            sum = sum.add(&example()).unwrap();
        }
        assert_eq!(example().scalar_mul(7), sum);
        assert_eq!(example().scalar_mul(-1), example().neg());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let x = example();
        let mut acc = EndoMatrix::identity(x.params());
        for n in 0..12 {
            assert_eq!(x.pow(n), acc);
            acc = acc.mul(&x).unwrap();
        }
    }

    #[test]
    fn invertibility_examples() {
        let pp = params(5, 3);
        assert!(example().is_invertible());
        assert!(!EndoMatrix::zero(pp).is_invertible());
        assert_eq!(
            mat(pp, 0, 1, 0, 1).invertibility_failure(),
            Some(InvertibilityFailure::TopLeftZero)
        );
        assert_eq!(
            mat(pp, 1, 1, 0, 5).inverse_direct(),
            Err(Error::NotInvertible(InvertibilityFailure::UnitDigitZero))
        );
        assert_eq!(
            EndoMatrix::zero(pp).inverse_via_minpoly(),
            Err(Error::NotInvertible(InvertibilityFailure::Both))
        );
        let count = all(params(2, 2)).iter().filter(|x| x.is_invertible()).count();
        assert_eq!(count, 8);
    }

    #[test]
    fn inverse_examples() {
        let pp = params(5, 3);
        let expected = mat(pp, 3, 3, 75, 103);
        assert_eq!(example().inverse_direct().unwrap(), expected);
        assert_eq!(example().inverse_via_minpoly().unwrap(), expected);
        let id = EndoMatrix::identity(pp);
        assert_eq!(id.inverse_direct().unwrap(), id);
        assert_eq!(id.inverse_via_minpoly().unwrap(), id);
    }

    // The printed bottom-right entry (top digit corrected digit-wise) equals
    // d^(-1) + p^(m-1) * (c a^(-1) b u_0^(-2)) as an integer mod p^m.
    #[test]
    fn direct_inverse_bottom_right_closed_form() {
        for pp in [params(2, 3), params(3, 2), params(5, 2)] {
            for x in all(pp).into_iter().filter(EndoMatrix::is_invertible) {
                let p = u128::from(pp.p());
                let n = u128::from(pp.modulus());
                let a_inv = (1..p).find(|&t| (t * u128::from(x.a())) % p == 1).unwrap();
                let u0_inv = (1..p).find(|&t| (t * u128::from(x.d().low())) % p == 1).unwrap();
                let d_inv = (1..n)
                    .find(|&t| (t * u128::from(x.d().to_int())) % n == 1)
                    .unwrap();
                let k = (u128::from(x.c()) * a_inv * u128::from(x.b()) * u0_inv * u0_inv) % p;
                let expected = (d_inv + u128::from(pp.top_weight()) * k) % n;
                assert_eq!(u128::from(x.inverse_direct().unwrap().d().to_int()), expected);
            }
        }
    }

    #[test]
    fn annihilating_poly_examples() {
        let ann = example().annihilating_poly();
        assert_eq!((ann.r.to_int(), ann.s.to_int()), (56, 34));
        assert_eq!(ann.to_string(), "x^2 + 56x + 34");
        let id = EndoMatrix::identity(params(5, 3)).annihilating_poly();
        assert_eq!((id.r.to_int(), id.s.to_int()), (123, 1));
        for x in all(params(2, 2)) {
            let ann = x.annihilating_poly();
            let val = x
                .mul(&x)
                .unwrap()
                .add(&x.scalar_mul_digits(&ann.r))
                .unwrap()
                .add(&EndoMatrix::scalar(x.params(), &ann.s))
                .unwrap();
            assert!(val.is_zero(), "{x}");
        }
    }

    #[test]
    fn minimal_poly_examples() {
        assert_eq!(example().minimal_poly(), IntPoly::new(alloc::vec![34, 56, 1]));
        let id = EndoMatrix::identity(params(5, 3));
        assert_eq!(id.minimal_poly(), IntPoly::new(alloc::vec![124, 1]));
        assert_eq!(id.minimal_poly().to_string(), "x + 124");
        // Zero matrix: x.
        assert_eq!(
            EndoMatrix::zero(params(5, 3)).minimal_poly(),
            IntPoly::monomial(1)
        );
        for x in all(params(2, 2)) {
            let f = x.minimal_poly();
            assert!(f.is_monic());
            assert!(x.eval_poly(&f).is_zero(), "{x}");
        }
    }

    #[test]
    fn eval_poly_examples() {
        let x = example();
        assert!(x.eval_poly(&IntPoly::new(alloc::vec![34, 56, 1])).is_zero());
        assert_eq!(x.eval_poly(&IntPoly::monomial(1)), x);
        assert_eq!(x.eval_poly(&IntPoly::monomial(0)), EndoMatrix::identity(x.params()));
        assert!(x.eval_poly(&IntPoly::zero()).is_zero());
        assert_eq!(x.eval_poly(&IntPoly::monomial(3)), x.pow(3));
        assert_eq!(x.eval_poly(&IntPoly::monomial(1000)), x.pow(1000));
        // Negative and oversized coefficients.
        let g = IntPoly::new(alloc::vec![-3, 250, 0, 1]);
        let expected = x
            .pow(3)
            .add(&x.scalar_mul(250))
            .unwrap()
            .add(&EndoMatrix::identity(x.params()).scalar_mul(-3))
            .unwrap();
        assert_eq!(x.eval_poly(&g), expected);
    }

    #[test]
    fn census_examples() {
        let c = census(params(2, 2)).unwrap();
        assert_eq!((c.ring_size, c.unit_count), (32, 8));
        let c = census(params(5, 3)).unwrap();
        assert_eq!((c.ring_size, c.unit_count), (15625, 10000));
        let c = census(params(3, 2)).unwrap();
        assert_eq!((c.ring_size, c.unit_count), (243, 108));
        assert_eq!(census(params(2, 62)), Err(Error::Overflow));
    }
}
