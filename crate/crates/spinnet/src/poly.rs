//! Laurent polynomials in the bracket variable `A` with arbitrary-precision
//! integer coefficients.
//!
//! All generic (symbolic) evaluations in this crate are carried out in
//! `Z[A, A^{-1}]`. Exponents may be negative; coefficients are `BigInt`
//! because quantum factorials outgrow any fixed-width integer quickly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::root::RootParams;

/// A Laurent polynomial in the bracket variable `A`.
///
/// Stored as a sparse map from exponent to coefficient. Zero coefficients are
/// never stored; the zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0, BigInt::from(1))
    }

    /// The constant polynomial `c`.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c.into())
    }

    /// `c * A^exp`.
    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| *c == BigInt::from(1))
    }

    /// Iterates terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Multiplies by `A^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        result
    }

    /// The gcd of all coefficients (positive), or zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = gcd_bigint(&g, c);
            if g == BigInt::from(1) {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `g`; panics if not exact.
    pub fn div_content(&self, g: &BigInt) -> Self {
        assert!(!g.is_zero(), "division by zero content");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| {
                    let (q, r) = num_integer_div_rem(c, g);
                    assert!(r.is_zero(), "content division not exact");
                    (*e, q)
                })
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Exact division: returns `Some(q)` with `self = q * rhs` when the
    /// division leaves no remainder, `None` otherwise.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let a_min = self.min_exp().unwrap();
        let b_min = rhs.min_exp().unwrap();
        let mut num = dense_from(self, a_min);
        let den = dense_from(rhs, b_min);
        let dn = num.len();
        let dd = den.len();
        if dn < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        let lead = &den[dd - 1];
        for k in (0..quot.len()).rev() {
            let c = num[k + dd - 1].clone();
            if c.is_zero() {
                continue;
            }
            let (q, r) = num_integer_div_rem(&c, lead);
            if !r.is_zero() {
                return None;
            }
            for (i, d) in den.iter().enumerate() {
                let t = d * &q;
                num[k + i] -= t;
            }
            quot[k] = q;
        }
        if num.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(from_dense(&quot, a_min - b_min))
    }

    /// Numeric evaluation at `A = e^{i pi / 2r}`.
    ///
    /// Each power of `A` is constructed trigonometrically from the angle, not
    /// by repeated multiplication, so phases do not drift for large exponents.
    pub fn eval_at_root(&self, params: &RootParams) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            let coeff = c.to_f64().expect("coefficient out of f64 range");
            acc += coeff * Complex64::from_polar(1.0, params.angle() * e as f64);
        }
        acc
    }
}

fn dense_from(p: &LaurentPoly, min: i64) -> Vec<BigInt> {
    let max = p.max_exp().unwrap();
    let mut v = vec![BigInt::zero(); (max - min + 1) as usize];
    for (e, c) in p.terms() {
        v[(e - min) as usize] = c.clone();
    }
    v
}

fn from_dense(v: &[BigInt], offset: i64) -> LaurentPoly {
    LaurentPoly::from_terms(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (offset + i as i64, c.clone())),
    )
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    use num_integer::Integer;
    a.div_rem(b)
}

pub(crate) fn gcd_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b)
}

// ---- dense integer-polynomial gcd (primitive PRS) ----
//
// Used by `RationalFunction` to keep fractions fully reduced so that equality
// is decidable structurally.

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = gcd_bigint(&g, c);
    }
    g
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = dense_content(&v);
    if g.is_zero() || g == BigInt::from(1) {
        return v;
    }
    for c in v.iter_mut() {
        use num_integer::Integer;
        *c = c.div_floor(&g);
    }
    v
}

/// Pseudo-remainder of `a` by `b` (b nonzero): repeatedly scales `a` by the
/// leading coefficient of `b` and cancels the top term.
fn pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = b[db].clone();
    trim(&mut a);
    while a.len() >= b.len() {
        let da = a.len() - 1;
        let c = a[da].clone();
        // a := lead * a - c * x^(da-db) * b  (cancels the degree-da term)
        for coeff in a.iter_mut() {
            *coeff *= &lead;
        }
        let shift = da - db;
        for (i, bc) in b.iter().enumerate() {
            let sub = bc * &c;
            a[shift + i] -= sub;
        }
        trim(&mut a);
    }
    a
}

/// Gcd of two dense integer polynomials (primitive PRS), sign-normalized so
/// the leading coefficient is positive. Content gcd is included.
pub(crate) fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = a.to_vec();
    let mut q: Vec<BigInt> = b.to_vec();
    trim(&mut p);
    trim(&mut q);
    if p.is_empty() {
        return q;
    }
    if q.is_empty() {
        return p;
    }
    let content_g = gcd_bigint(&dense_content(&p), &dense_content(&q));
    p = primitive_part(p);
    q = primitive_part(q);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let r = pseudo_rem(p.clone(), &q);
        p = q;
        q = primitive_part(r);
        trim(&mut q);
    }
    // p is the primitive gcd (up to sign)
    let mut g: Vec<BigInt> = p.iter().map(|c| c * &content_g).collect();
    if g.last().is_some_and(|c| c.is_negative()) {
        for c in g.iter_mut() {
            *c = -c.clone();
        }
    }
    g
}

/// Gcd of two Laurent polynomials, well-defined up to a unit; normalized to
/// have minimum exponent 0 and positive leading coefficient.
pub(crate) fn laurent_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.shifted(-b.min_exp().unwrap_or(0));
    }
    if b.is_zero() {
        return a.shifted(-a.min_exp().unwrap_or(0));
    }
    let da = dense_from(a, a.min_exp().unwrap());
    let db = dense_from(b, b.min_exp().unwrap());
    let g = dense_gcd(&da, &db);
    from_dense(&g, 0)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (sep, abs) = if first {
                ("", c.clone())
            } else if c.is_negative() {
                (" - ", c.abs())
            } else {
                (" + ", c.clone())
            };
            first = false;
            let unit = abs == BigInt::from(1) || (sep.is_empty() && abs == BigInt::from(-1));
            match (e, unit) {
                (0, _) => write!(f, "{sep}{abs}")?,
                (1, true) => write!(f, "{sep}{}A", if abs.is_negative() { "-" } else { "" })?,
                (1, false) => write!(f, "{sep}{abs}*A")?,
                (_, true) => write!(f, "{sep}{}A^{e}", if abs.is_negative() { "-" } else { "" })?,
                (_, false) => write!(f, "{sep}{abs}*A^{e}")?,
            }
        }
        Ok(())
    }
}

/// Serializes as `{"coeffs": [[exponent, "coefficient"], ...]}` sorted by
/// ascending exponent, with coefficients as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a LaurentPoly);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.coeffs.len()))?;
                for (e, c) in self.0.terms() {
                    seq.serialize_element(&(e, c.to_string()))?;
                }
                seq.end()
            }
        }
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("coeffs", &Terms(self))?;
        map.end()
    }
}
