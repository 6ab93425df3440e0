//! Ring elements acting as endomorphisms of `Z_p x Z_{p^m}`.
//!
//! A point `(x, y)` decomposes as `x (1, 0) + y (0, 1)`, and a matrix sends
//! the generators to its columns: `(1, 0) -> (a, p^(m-1) c)` and
//! `(0, 1) -> (b, d)`.

use core::fmt;

use crate::digits::{Digits, RingParams};
use crate::error::{Error, Result};
use crate::matrix::EndoMatrix;

/// A point `(x, y)` of `Z_p x Z_{p^m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModulePoint {
    params: RingParams,
    x: u64,
    y: Digits,
}

impl ModulePoint {
    pub fn new(params: RingParams, x: u64, y: u64) -> Result<Self> {
        if x >= params.p() || y >= params.modulus() {
            return Err(Error::InvalidEntry("point coordinates out of range"));
        }
        Ok(ModulePoint {
            params,
            x,
            y: Digits::from_u64(params, y),
        })
    }

    pub fn zero(params: RingParams) -> Self {
        ModulePoint {
            params,
            x: 0,
            y: Digits::zero(params),
        }
    }

    /// `(1, 0)`.
    pub fn first_generator(params: RingParams) -> Self {
        ModulePoint {
            params,
            x: 1,
            y: Digits::zero(params),
        }
    }

    /// `(0, 1)`.
    pub fn second_generator(params: RingParams) -> Self {
        ModulePoint {
            params,
            x: 0,
            y: Digits::one(params),
        }
    }

    #[inline]
    pub fn params(&self) -> RingParams {
        self.params
    }

    #[inline]
    pub fn x(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> &Digits {
        &self.y
    }

    pub fn add(&self, rhs: &ModulePoint) -> Result<ModulePoint> {
        self.params.ensure_same(&rhs.params)?;
        Ok(ModulePoint {
            params: self.params,
            x: self.params.add_p(self.x, rhs.x),
            y: self.y.add(&rhs.y)?,
        })
    }
}

impl fmt::Display for ModulePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl EndoMatrix {
    /// Image of `v`: `(a x + b (y mod p), p^(m-1) c x + d y)`.
    ///
    /// `b` lives in `Z_p`, so it only sees `y` through its residue mod `p`.
    pub fn apply(&self, v: &ModulePoint) -> Result<ModulePoint> {
        let pp = self.params();
        pp.ensure_same(&v.params)?;
        let x = pp.add_p(pp.mul_p(self.a(), v.x), pp.mul_p(self.b(), v.y.low()));
        let y = self.d().mul(&v.y)?.add_top(pp.mul_p(self.c(), v.x));
        Ok(ModulePoint { params: pp, x, y })
    }
}
