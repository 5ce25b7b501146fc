//! Brute-force evaluation of closed spin networks by diagram expansion.
//!
//! Trivalent vertices are realized as flat tangles that share strands between
//! three projector bundles: a vertex with legs `(x, y, z)` splits into
//! `(x+y-z)/2`, `(y+z-x)/2` and `(z+x-y)/2` internal lines. Networks are
//! assembled bottom-to-top from cups, splits, merges and caps, with one
//! Jones-Wenzl projector inserted per edge, then evaluated exactly.
//!
//! Everything here is deliberately elementary; it is the independent oracle
//! against which the closed-form evaluations are verified.

use std::sync::Arc;

use crate::braid::BraidWord;
use crate::element::TLElement;
use crate::error::{Error, Result};
use crate::matching::PlanarMatching;
use crate::projector::{crossing_element, jones_wenzl, CrossingSign, ProjectorCache};
use crate::qint;
use crate::ratfn::RationalFunction;
use crate::recoupling::AdmissibleTriple;

/// Default cap on the widest intermediate strand count an oracle evaluation
/// may reach (the matching count grows like the Catalan numbers).
pub const DEFAULT_STRAND_BUDGET: usize = 12;

/// Diagrammatic evaluation engine with a shared projector cache and a strand
/// budget guarding against exponential blowup.
#[derive(Debug, Default)]
pub struct DiagramOracle {
    cache: ProjectorCache,
    budget: usize,
}

impl DiagramOracle {
    pub fn new() -> Self {
        Self::with_budget(DEFAULT_STRAND_BUDGET)
    }

    pub fn with_budget(budget: usize) -> Self {
        Self { cache: ProjectorCache::new(), budget }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn projector(&self, n: usize) -> Arc<TLElement> {
        jones_wenzl(n, &self.cache)
    }

    fn check_budget(&self, widths: &[usize]) -> Result<()> {
        let needed = widths.iter().copied().max().unwrap_or(0);
        if needed > self.budget {
            return Err(Error::BudgetExceeded { needed, budget: self.budget });
        }
        Ok(())
    }

    /// Bracket evaluation of the theta network: two trivalent vertices joined
    /// along three projected bands labelled `a`, `b`, `c`.
    pub fn theta(&self, a: usize, b: usize, c: usize) -> Result<RationalFunction> {
        let _ = AdmissibleTriple::new(a, b, c)?;
        self.check_budget(&[a, b + c])?;
        let p_a = self.projector(a);
        let p_b = self.projector(b);
        let p_c = self.projector(c);
        let network = p_a
            .compose(&split(a, b, c))?
            .compose(&p_b.tensor(&p_c))?
            .compose(&merge(b, c, a))?;
        network.trace_closure()
    }

    /// Bracket evaluation of the tetrahedral network with vertex triples
    /// `(a,b,i)`, `(c,d,i)`, `(a,d,j)`, `(b,c,j)` (so the opposite edge pairs
    /// are `(a,c)`, `(b,d)`, `(i,j)`).
    pub fn tet(
        &self,
        a: usize,
        b: usize,
        i: usize,
        c: usize,
        d: usize,
        j: usize,
    ) -> Result<RationalFunction> {
        let _ = AdmissibleTriple::new(a, b, i)?;
        let _ = AdmissibleTriple::new(c, d, i)?;
        let _ = AdmissibleTriple::new(a, d, j)?;
        let _ = AdmissibleTriple::new(b, c, j)?;
        self.check_budget(&[2 * j, a + d + j, a + d + c + b, a + i + b])?;

        // bottom-to-top sweep: cup the j-edge, open it into the (a,d) and
        // (c,b) vertices, fuse d with c into i, then cap against (a, i, b)
        let id = TLElement::identity;
        let x = TLElement::from_matching(cup(j));
        let x = x.compose(&self.projector(j).tensor(&id(j)))?;
        let x = x.compose(&split(j, a, d).tensor(&id(j)))?;
        let x = x.compose(&id(a + d).tensor(&split(j, c, b)))?;
        let x = x.compose(
            &id(a)
                .tensor(&self.projector(d))
                .tensor(&self.projector(c))
                .tensor(&id(b)),
        )?;
        let x = x.compose(&id(a).tensor(&merge(d, c, i)).tensor(&id(b)))?;
        let x = x.compose(
            &self
                .projector(a)
                .tensor(&self.projector(i))
                .tensor(&self.projector(b)),
        )?;
        let x = x.compose(&cap3(a, i, b))?;
        x.closed_value()
    }

    /// Bracket of the trace closure of a braid word: composes one crossing per
    /// letter and closes strand `k` onto strand `k`.
    ///
    /// The raw value assigns `d` to the unknot's simple closed curve; the
    /// normalized value divides one factor of `d` out.
    pub fn bracket_closure(&self, word: &BraidWord) -> Result<BracketClosure> {
        let n = word.strand_count();
        self.check_budget(&[n])?;
        let mut x = TLElement::identity(n);
        for &letter in word.letters() {
            let i = letter.unsigned_abs() as usize;
            let sign = if letter > 0 { CrossingSign::Positive } else { CrossingSign::Negative };
            x = x.compose(&crossing_element(n, i, sign)?)?;
        }
        let raw = x.trace_closure()?;
        let d = RationalFunction::from_poly(qint::loop_value());
        let normalized = &raw / &d;
        Ok(BracketClosure { raw, normalized })
    }
}

/// Raw and unknot-normalized bracket values of a braid closure.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketClosure {
    pub raw: RationalFunction,
    pub normalized: RationalFunction,
}

/// `0 -> 2j` nested arcs creating a bent `j`-edge.
fn cup(j: usize) -> PlanarMatching {
    let pair: Vec<usize> = (0..2 * j).map(|k| 2 * j - 1 - k).collect();
    PlanarMatching::new(0, 2 * j, pair).expect("cup is planar")
}

/// The vertex tangle `z -> (x, y)`: a single flat diagram in which
/// `(z+x-y)/2` strands pass to the left leg, `(z+y-x)/2` to the right leg and
/// `(x+y-z)/2` arcs connect the two legs.
fn split(z: usize, x: usize, y: usize) -> TLElement {
    let zx = (z + x - y) / 2;
    let xy = (x + y - z) / 2;
    let zy = (z + y - x) / 2;
    let total = z + x + y;
    let mut pair = vec![usize::MAX; total];
    let mut link = |p: usize, q: usize| {
        pair[p] = q;
        pair[q] = p;
    };
    // bottom left part straight into x's left part
    for s in 0..zx {
        link(s, z + s);
    }
    // nested arcs between x's right part and y's left part
    for s in 0..xy {
        link(z + zx + s, z + x + (xy - 1 - s));
    }
    // bottom right part straight into y's right part
    for s in 0..zy {
        link(zx + s, z + x + xy + s);
    }
    TLElement::from_matching(PlanarMatching::new(z, x + y, pair).expect("split is planar"))
}

/// The vertex tangle `(x, y) -> z`, the vertical mirror of [`split`].
fn merge(x: usize, y: usize, z: usize) -> TLElement {
    let zx = (z + x - y) / 2;
    let xy = (x + y - z) / 2;
    let zy = (z + y - x) / 2;
    let total = x + y + z;
    let mut pair = vec![usize::MAX; total];
    let mut link = |p: usize, q: usize| {
        pair[p] = q;
        pair[q] = p;
    };
    for s in 0..zx {
        link(s, x + y + s);
    }
    for s in 0..xy {
        link(zx + s, x + (xy - 1 - s));
    }
    for s in 0..zy {
        link(x + xy + s, x + y + zx + s);
    }
    TLElement::from_matching(PlanarMatching::new(x + y, z, pair).expect("merge is planar"))
}

/// Caps the three bundles `(x, z, y)` (left to right) against each other:
/// the closing vertex with legs `x`, `z`, `y`.
fn cap3(x: usize, z: usize, y: usize) -> TLElement {
    let xz = (x + z - y) / 2;
    let zy = (z + y - x) / 2;
    let xy = (x + y - z) / 2;
    let total = x + z + y;
    let mut pair = vec![usize::MAX; total];
    let mut link = |p: usize, q: usize| {
        pair[p] = q;
        pair[q] = p;
    };
    // x's inner part against z's left part (nested)
    for s in 0..xz {
        link(xy + s, x + (xz - 1 - s));
    }
    // z's right part against y's left part (nested)
    for s in 0..zy {
        link(x + xz + s, x + z + (zy - 1 - s));
    }
    // x's outer part against y's outer part (enclosing arcs)
    for s in 0..xy {
        link(s, x + z + zy + (xy - 1 - s));
    }
    TLElement::from_matching(PlanarMatching::new(total, 0, pair).expect("cap is planar"))
}
