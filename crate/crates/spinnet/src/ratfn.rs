//! Rational functions of the bracket variable, the coefficient field for
//! projector expansions and network evaluations.
//!
//! Values are kept in a canonical form at all times: numerator and denominator
//! share no polynomial factor, no common monomial power of `A`, and no common
//! integer content, and the denominator's lowest-exponent coefficient is
//! positive. Equality is therefore plain structural comparison.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Signed;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{gcd_bigint, laurent_gcd, LaurentPoly};
use crate::root::RootParams;

/// A quotient of Laurent polynomials in canonical (fully reduced) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    /// Builds `num / den` in canonical form. Panics if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        Self { num, den }.canonicalized()
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_poly(LaurentPoly::constant(n))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether the value reduced to a Laurent polynomial (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying polynomial, if the denominator reduced to 1.
    pub fn as_polynomial(&self) -> Option<&LaurentPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Canonicalizes: cancels the polynomial gcd, common monomial powers of
    /// `A`, common integer content, and fixes the denominator sign.
    fn canonicalized(self) -> Self {
        let Self { mut num, mut den } = self;
        if num.is_zero() {
            return Self { num: LaurentPoly::zero(), den: LaurentPoly::one() };
        }
        if den.is_one() {
            return Self { num, den };
        }
        // polynomial gcd (normalized to min exponent 0)
        let g = laurent_gcd(&num, &den);
        if !g.is_one() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        // absorb monomial units into the numerator: denominator min exponent 0
        let shift = den.min_exp().unwrap();
        if shift != 0 {
            num = num.shifted(-shift);
            den = den.shifted(-shift);
        }
        // remove shared integer content
        let c = gcd_bigint(&num.content(), &den.content());
        if c > BigInt::from(1) {
            num = num.div_content(&c);
            den = den.div_content(&c);
        }
        // denominator's lowest-exponent coefficient positive
        let lowest = den.coeff(den.min_exp().unwrap());
        if lowest.is_negative() {
            num = -&num;
            den = -&den;
        }
        Self { num, den }
    }

    /// Re-canonicalizes a value (idempotent; exposed for tests).
    pub fn canon(&self) -> Self {
        self.clone().canonicalized()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        Self::new(self.num.pow(n), self.den.pow(n))
    }

    /// Numeric evaluation at a root of unity.
    ///
    /// Fails with [`Error::DenominatorVanishes`] when the denominator's
    /// magnitude is at or below the tolerance.
    pub fn eval_at_root(&self, params: &RootParams) -> Result<Complex64> {
        let d = self.den.eval_at_root(params);
        if d.norm() <= params.tol() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.eval_at_root(params) / d)
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

// owned-value forms, for generic numeric code
impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Div for RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: RationalFunction) -> RationalFunction {
        &self / &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Serializes as `{"num": <poly>, "den": <poly>}`.
impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("num", &self.num)?;
        map.serialize_entry("den", &self.den)?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_pow(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, 1)
    }

    fn d_poly() -> LaurentPoly {
        // d = -A^2 - A^{-2}
        LaurentPoly::from_terms(vec![(2, BigInt::from(-1)), (-2, BigInt::from(-1))])
    }

    #[test]
    fn reduction_cancels_polynomial_factors() {
        // (A^4 - 1) / (A^2 - 1) = A^2 + 1
        let num = &a_pow(4) - &LaurentPoly::one();
        let den = &a_pow(2) - &LaurentPoly::one();
        let rf = RationalFunction::new(num, den);
        assert!(rf.is_polynomial());
        assert_eq!(*rf.numerator(), &a_pow(2) + &LaurentPoly::one());
    }

    #[test]
    fn canonical_equality() {
        let x = RationalFunction::new(d_poly(), LaurentPoly::constant(2));
        let y = RationalFunction::new(
            &d_poly() * &LaurentPoly::monomial(3, 5),
            LaurentPoly::monomial(3, 10),
        );
        assert_eq!(x, y);
    }

    #[test]
    fn canonicalization_idempotent() {
        let x = RationalFunction::new(
            &d_poly() * &d_poly(),
            LaurentPoly::from_terms(vec![(1, BigInt::from(-6)), (5, BigInt::from(2))]),
        );
        assert_eq!(x.canon(), x);
        assert_eq!(x.canon().canon(), x.canon());
    }

    #[test]
    fn field_arithmetic() {
        let d = RationalFunction::from_poly(d_poly());
        let inv = d.recip();
        assert_eq!(&d * &inv, RationalFunction::one());
        let s = &d + &(-&d);
        assert!(s.is_zero());
        let q = &RationalFunction::one() / &d;
        assert_eq!(q, inv);
    }

    #[test]
    fn denominator_vanishes_detected() {
        // 1 / [3] : at r = 3, [3] = 0
        let q3 = LaurentPoly::from_terms(vec![
            (4, BigInt::from(1)),
            (0, BigInt::from(1)),
            (-4, BigInt::from(1)),
        ]);
        let rf = RationalFunction::new(LaurentPoly::one(), q3);
        let p3 = RootParams::with_default_tol(3).unwrap();
        assert_eq!(rf.eval_at_root(&p3), Err(Error::DenominatorVanishes));
        let p5 = RootParams::with_default_tol(5).unwrap();
        assert!(rf.eval_at_root(&p5).is_ok());
    }
}
