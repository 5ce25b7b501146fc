//! Formal linear combinations of planar matchings: elements of the
//! Temperley-Lieb category with rational-function coefficients.
//!
//! Composition stacks diagrams and converts every closed loop into a factor
//! of the loop value `d = -A^2 - A^{-2}`.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matching::PlanarMatching;
use crate::qint;
use crate::ratfn::RationalFunction;

/// A linear combination of planar matchings sharing the same boundary shape.
#[derive(Debug, Clone, PartialEq)]
pub struct TLElement {
    bottom: usize,
    top: usize,
    terms: BTreeMap<PlanarMatching, RationalFunction>,
}

impl TLElement {
    /// The zero element of the given shape.
    pub fn zero(bottom: usize, top: usize) -> Self {
        Self { bottom, top, terms: BTreeMap::new() }
    }

    /// The identity on `n` strands.
    pub fn identity(n: usize) -> Self {
        Self::from_matching(PlanarMatching::identity(n))
    }

    /// The cup-cap generator `e_i` on `n` strands (1-indexed).
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_matching(PlanarMatching::generator(n, i)?))
    }

    /// A single diagram with coefficient 1.
    pub fn from_matching(m: PlanarMatching) -> Self {
        let (bottom, top) = (m.bottom_count(), m.top_count());
        let mut terms = BTreeMap::new();
        terms.insert(m, RationalFunction::one());
        Self { bottom, top, terms }
    }

    pub fn bottom_count(&self) -> usize {
        self.bottom
    }

    pub fn top_count(&self) -> usize {
        self.top
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlanarMatching, &RationalFunction)> {
        self.terms.iter()
    }

    /// The coefficient of a given diagram (zero if absent).
    pub fn coeff(&self, m: &PlanarMatching) -> RationalFunction {
        self.terms.get(m).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn add_term(&mut self, m: PlanarMatching, c: RationalFunction) {
        debug_assert_eq!(m.bottom_count(), self.bottom);
        debug_assert_eq!(m.top_count(), self.top);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.bottom != other.bottom || self.top != other.top {
            return Err(Error::ShapeMismatch { expected: self.bottom, got: other.bottom });
        }
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(&-&RationalFunction::one()))
    }

    pub fn scaled(&self, s: &RationalFunction) -> Self {
        if s.is_zero() {
            return Self::zero(self.bottom, self.top);
        }
        Self {
            bottom: self.bottom,
            top: self.top,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Stacks `other` on top of `self`. Closed loops formed by the gluing
    /// multiply the coefficient by the loop value `d` once per loop.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.top != other.bottom {
            return Err(Error::ShapeMismatch { expected: self.top, got: other.bottom });
        }
        let d = RationalFunction::from_poly(qint::loop_value());
        // cache small powers of d per call
        let mut d_pows: Vec<RationalFunction> = vec![RationalFunction::one()];
        let mut out = Self::zero(self.bottom, other.top);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let (m, loops) = m1.compose(m2)?;
                while d_pows.len() <= loops {
                    let next = &d_pows[d_pows.len() - 1] * &d;
                    d_pows.push(next);
                }
                let coeff = &(c1 * c2) * &d_pows[loops];
                out.add_term(m, coeff);
            }
        }
        Ok(out)
    }

    /// Horizontal juxtaposition; strand counts add.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.bottom + other.bottom, self.top + other.top);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.tensor(m2), c1 * c2);
            }
        }
        out
    }

    /// Markov-style trace: joins bottom point `k` to top point `k` around the
    /// side and evaluates each diagram to `d^loops`.
    pub fn trace_closure(&self) -> Result<RationalFunction> {
        if self.bottom != self.top {
            return Err(Error::ShapeMismatch { expected: self.bottom, got: self.top });
        }
        let d = RationalFunction::from_poly(qint::loop_value());
        let mut acc = RationalFunction::zero();
        for (m, c) in self.terms() {
            let loops = m.closure_loops()?;
            acc = &acc + &(c * &d.pow(loops as u32));
        }
        Ok(acc)
    }

    /// The scalar value of a closed (0 -> 0) element.
    pub fn closed_value(&self) -> Result<RationalFunction> {
        if self.bottom != 0 || self.top != 0 {
            return Err(Error::ShapeMismatch { expected: 0, got: self.bottom.max(self.top) });
        }
        let mut acc = RationalFunction::zero();
        for (_, c) in self.terms() {
            acc = &acc + c;
        }
        Ok(acc)
    }
}

/// Serializes as `{"n": bottom, "m": top, "terms": [{"pairing": [...], "coeff": {...}}]}`.
impl Serialize for TLElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            pairing: &'a PlanarMatching,
            coeff: &'a RationalFunction,
        }
        struct Terms<'a>(&'a TLElement);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.terms.len()))?;
                for (m, c) in self.0.terms() {
                    seq.serialize_element(&Term { pairing: m, coeff: c })?;
                }
                seq.end()
            }
        }
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("n", &self.bottom)?;
        map.serialize_entry("m", &self.top)?;
        map.serialize_entry("terms", &Terms(self))?;
        map.end()
    }
}
