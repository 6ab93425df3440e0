//! Integer polynomials and the quadratic annihilating polynomial.

use alloc::vec::Vec;
use core::fmt;

use crate::digits::Digits;

/// A polynomial with integer coefficients, little-endian (`coeffs[i]` multiplies `x^i`).
///
/// Trailing zeros are trimmed, so the empty vector is the zero polynomial and
/// the last coefficient is the leading one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = alloc::vec![0; n + 1];
        coeffs[n] = 1;
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Remainder of `self` divided by the monic `divisor`, with every
    /// coefficient reduced into `[0, modulus)`.
    ///
    /// Long division by a monic polynomial never leaves `Z[x]`, and reducing
    /// coefficients modulo `modulus` commutes with every step, so working in
    /// `Z_modulus[x]` keeps the numbers small without changing the answer
    /// modulo `modulus`.
    pub fn rem_monic(&self, divisor: &IntPoly, modulus: u64) -> IntPoly {
        assert!(divisor.is_monic(), "divisor must be monic");
        let n = u128::from(modulus);
        let reduce = |c: i128| c.rem_euclid(modulus as i128) as u128;
        let mut rem: Vec<u128> = self.coeffs.iter().map(|&c| reduce(c)).collect();
        let div: Vec<u128> = divisor.coeffs.iter().map(|&c| reduce(c)).collect();
        let dd = div.len() - 1;
        while rem.len() > dd {
            let lead = rem.pop().expect("non-empty");
            if lead == 0 {
                continue;
            }
            let shift = rem.len() - dd;
            for (i, &c) in div[..dd].iter().enumerate() {
                let slot = &mut rem[shift + i];
                *slot = (*slot + n - (lead * c) % n) % n;
            }
        }
        IntPoly::new(rem.into_iter().map(|c| c as i128).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if mag != 1 || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The monic quadratic `x^2 + r x + s` that annihilates a ring element, with
/// `r = -(a + d)` and `s = a d - p^(m-1) b c` in `Z_{p^m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnPoly {
    pub r: Digits,
    pub s: Digits,
}

impl AnnPoly {
    /// `[s, r, 1]` as an integer polynomial with coefficients in `[0, p^m)`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(alloc::vec![
            i128::from(self.s.to_int()),
            i128::from(self.r.to_int()),
            1
        ])
    }
}

impl fmt::Display for AnnPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^2 + {}x + {}", self.r, self.s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn trims_and_degrees() {
        assert_eq!(IntPoly::new(vec![0, 0]), IntPoly::zero());
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(IntPoly::new(vec![3, 1, 0]).degree(), Some(1));
        assert!(IntPoly::monomial(3).is_monic());
        assert!(!IntPoly::new(vec![1, 2]).is_monic());
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::new(vec![34, 56, 1]).to_string(), "x^2 + 56x + 34");
        assert_eq!(IntPoly::new(vec![124, 1]).to_string(), "x + 124");
        assert_eq!(IntPoly::new(vec![1, 0, 1]).to_string(), "x^2 + 1");
        assert_eq!(IntPoly::new(vec![-1, -3, 2]).to_string(), "2x^2 - 3x - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::new(vec![0, 1]).to_string(), "x");
    }

    #[test]
    fn remainder_by_monic_quadratic() {
        // x^3 = (x - 1)(x^2 + x + 1) + 1
        let f = IntPoly::new(vec![1, 1, 1]);
        let rem = IntPoly::monomial(3).rem_monic(&f, 1000);
        assert_eq!(rem, IntPoly::new(vec![1]));
        // x^4 + 3 mod (x^2 + 2) = 4 + 3 = 7
        let f = IntPoly::new(vec![2, 0, 1]);
        let g = IntPoly::new(vec![3, 0, 0, 0, 1]);
        assert_eq!(g.rem_monic(&f, 125), IntPoly::new(vec![7]));
        // Low-degree input is only reduced.
        let g = IntPoly::new(vec![-1, 130]);
        assert_eq!(g.rem_monic(&f, 125), IntPoly::new(vec![124, 5]));
        assert_eq!(f.rem_monic(&f, 125), IntPoly::zero());
    }

    #[test]
    fn remainder_matches_integer_division() {
        // Exact division over Z for a small case, then reduce.
        // g = x^5 - 7x^2 + 11, f = x^2 + 3x + 5
        let f = IntPoly::new(vec![5, 3, 1]);
        let g = IntPoly::new(vec![11, 0, -7, 0, 0, 1]);
        let mut rem: Vec<i128> = g.coeffs().to_vec();
        while rem.len() > 2 {
            let lead = rem.pop().unwrap();
            let k = rem.len() - 2;
            rem[k] -= lead * 5;
            rem[k + 1] -= lead * 3;
        }
        let expected = IntPoly::new(rem.iter().map(|c| c.rem_euclid(49)).collect());
        assert_eq!(g.rem_monic(&f, 49), expected);
    }
}
