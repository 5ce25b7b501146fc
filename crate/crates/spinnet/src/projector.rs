//! Jones-Wenzl projectors and bracket-expanded crossings.
//!
//! The `n`-strand projector is the unique idempotent in `TL_n` killed by
//! every cup-cap generator. It is built by the Wenzl recursion
//!
//! ```text
//! P_n = P_{n-1} (x) 1  -  (delta_{n-2} / delta_{n-1}) (P_{n-1} (x) 1) e_{n-1} (P_{n-1} (x) 1)
//! ```
//!
//! whose coefficient sign is pinned by the killing property
//! `P_n e_i = e_i P_n = 0` (checked exactly in the tests).

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::element::TLElement;
use crate::error::{Error, Result};
use crate::matching::PlanarMatching;
use crate::poly::LaurentPoly;
use crate::qint;
use crate::ratfn::RationalFunction;

/// Thread-safe memo of Jones-Wenzl projectors by strand count.
///
/// Concurrent readers are cheap; fills are idempotent, so a race at worst
/// recomputes the same element.
#[derive(Debug, Default)]
pub struct ProjectorCache {
    memo: RwLock<HashMap<usize, Arc<TLElement>>>,
}

impl ProjectorCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The `n`-strand Jones-Wenzl projector.
    pub fn get(&self, n: usize) -> Arc<TLElement> {
        if let Some(p) = self.memo.read().expect("projector cache poisoned").get(&n) {
            return Arc::clone(p);
        }
        let p = Arc::new(self.build(n));
        self.memo
            .write()
            .expect("projector cache poisoned")
            .entry(n)
            .or_insert(p)
            .clone()
    }

    fn build(&self, n: usize) -> TLElement {
        match n {
            0 => TLElement::from_matching(
                PlanarMatching::new(0, 0, Vec::new()).expect("empty matching"),
            ),
            1 => TLElement::identity(1),
            _ => {
                let prev = self.get(n - 1);
                let ext = prev.tensor(&TLElement::identity(1));
                let e = TLElement::generator(n, n - 1).expect("generator index in range");
                let ratio = RationalFunction::new(qint::delta(n - 2), qint::delta(n - 1));
                let correction = ext
                    .compose(&e)
                    .and_then(|x| x.compose(&ext))
                    .expect("shapes agree in the Wenzl recursion");
                ext.sub(&correction.scaled(&ratio))
                    .expect("shapes agree in the Wenzl recursion")
            }
        }
    }
}

/// The `n`-strand Jones-Wenzl projector, using (and filling) `cache`.
pub fn jones_wenzl(n: usize, cache: &ProjectorCache) -> Arc<TLElement> {
    cache.get(n)
}

/// Sign of a braid crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingSign {
    Positive,
    Negative,
}

/// Bracket expansion of the braid generator `sigma_i^{+-1}` on `n` strands:
/// the positive crossing expands as `A^{-1} id + A e_i`, the negative one as
/// `A id + A^{-1} e_i` (its inverse). With this assignment the positive
/// crossing acts on the two-strand fusion channels `c = 0, 2` with scalars
/// `-A^3` and `A^{-1}`, matching the local braiding phases `lambda_c^{11}`.
pub fn crossing_element(n: usize, i: usize, sign: CrossingSign) -> Result<TLElement> {
    if i < 1 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    let id = TLElement::identity(n);
    let e = TLElement::generator(n, i)?;
    let (id_exp, e_exp) = match sign {
        CrossingSign::Positive => (-1, 1),
        CrossingSign::Negative => (1, -1),
    };
    let id_coeff = RationalFunction::from_poly(LaurentPoly::monomial(id_exp, 1));
    let e_coeff = RationalFunction::from_poly(LaurentPoly::monomial(e_exp, 1));
    id.scaled(&id_coeff).add(&e.scaled(&e_coeff))
}
