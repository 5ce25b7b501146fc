//! Planar perfect matchings: the diagram basis of the Temperley-Lieb algebra.
//!
//! A matching connects `bottom + top` boundary points of a rectangle in
//! pairs without crossings. Bottom points are indexed `0..bottom` left to
//! right, then top points `bottom..bottom+top` left to right.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A planar pairing of the boundary points of a rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarMatching {
    bottom: usize,
    top: usize,
    /// Involution: `pair[i] = j` iff points `i` and `j` are connected.
    pair: Vec<usize>,
}

impl PlanarMatching {
    /// Builds a matching from an involution array, validating shape,
    /// involutivity and planarity.
    pub fn new(bottom: usize, top: usize, pair: Vec<usize>) -> Result<Self> {
        if (bottom + top) % 2 != 0 || pair.len() != bottom + top {
            return Err(Error::ShapeMismatch { expected: bottom + top, got: pair.len() });
        }
        let m = Self { bottom, top, pair };
        for i in 0..m.pair.len() {
            let j = m.pair[i];
            if j >= m.pair.len() || j == i || m.pair[j] != i {
                return Err(Error::Parse(format!("pairing is not an involution at {i}")));
            }
        }
        if !m.is_planar() {
            return Err(Error::Parse("pairing has crossing chords".into()));
        }
        Ok(m)
    }

    /// The identity diagram on `n` strands.
    pub fn identity(n: usize) -> Self {
        let pair = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        Self { bottom: n, top: n, pair }
    }

    /// The cup-cap generator `e_i` (1-indexed, `1 <= i <= n-1`): bottom points
    /// `i-1, i` joined, top points `i-1, i` joined, all other strands vertical.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i < 1 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
        }
        let mut pair: Vec<usize> = (0..2 * n)
            .map(|p| if p < n { p + n } else { p - n })
            .collect();
        let (a, b) = (i - 1, i);
        pair[a] = b;
        pair[b] = a;
        pair[n + a] = n + b;
        pair[n + b] = n + a;
        Ok(Self { bottom: n, top: n, pair })
    }

    pub fn bottom_count(&self) -> usize {
        self.bottom
    }

    pub fn top_count(&self) -> usize {
        self.top
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pair
    }

    /// Position on the boundary circle walked counterclockwise: across the
    /// bottom left to right, then across the top right to left.
    fn circle_pos(&self, i: usize) -> usize {
        if i < self.bottom {
            i
        } else {
            self.bottom + self.top - 1 - (i - self.bottom)
        }
    }

    /// Non-crossing test: two chords cross iff exactly one endpoint of one
    /// lies strictly between the endpoints of the other in circle order.
    pub fn is_planar(&self) -> bool {
        let total = self.pair.len();
        let chords: Vec<(usize, usize)> = (0..total)
            .filter(|&i| i < self.pair[i])
            .map(|i| {
                let (a, b) = (self.circle_pos(i), self.circle_pos(self.pair[i]));
                (a.min(b), a.max(b))
            })
            .collect();
        for (k, &(a1, b1)) in chords.iter().enumerate() {
            for &(a2, b2) in &chords[k + 1..] {
                let inside1 = a1 < a2 && a2 < b1;
                let inside2 = a1 < b2 && b2 < b1;
                if inside1 != inside2 {
                    return false;
                }
            }
        }
        true
    }

    /// Stacks `other` on top of `self` (requires `self.top == other.bottom`),
    /// returning the glued matching and the number of closed loops removed.
    pub fn compose(&self, other: &Self) -> Result<(Self, usize)> {
        if self.top != other.bottom {
            return Err(Error::ShapeMismatch { expected: self.top, got: other.bottom });
        }
        let nb = self.bottom;
        let mid = self.top;
        let nt = other.top;
        // Point classes for the walk: self-bottom (B), glued middle (M), other-top (T)
        let mut new_pair = vec![usize::MAX; nb + nt];
        let mut seen_mid = vec![false; mid];

        // follow the strand starting at a boundary point; boundary encoding:
        // 0..nb = result bottom, nb..nb+nt = result top
        let trace_from = |start_is_bottom: bool, start: usize, seen_mid: &mut [bool]| -> usize {
            // returns the terminal boundary point in result encoding
            let mut in_self = start_is_bottom;
            let mut point = if start_is_bottom { start } else { mid + start };
            loop {
                if in_self {
                    let p = self.pair[point];
                    if p < nb {
                        return p; // ended on result bottom
                    }
                    let m = p - nb;
                    seen_mid[m] = true;
                    in_self = false;
                    point = m; // continue from other's bottom point m
                } else {
                    let p = other.pair[point];
                    if p >= mid {
                        return nb + (p - mid); // ended on result top
                    }
                    seen_mid[p] = true;
                    in_self = true;
                    point = nb + p; // continue from self's top point p
                }
            }
        };

        for b in 0..nb {
            if new_pair[b] != usize::MAX {
                continue;
            }
            let end = trace_from(true, b, &mut seen_mid);
            new_pair[b] = end;
            new_pair[end] = b;
        }
        for t in 0..nt {
            let idx = nb + t;
            if new_pair[idx] != usize::MAX {
                continue;
            }
            let end = trace_from(false, t, &mut seen_mid);
            new_pair[idx] = end;
            new_pair[end] = idx;
        }

        // cycles entirely inside the glued middle are closed loops
        let mut loops = 0;
        for m0 in 0..mid {
            if seen_mid[m0] {
                continue;
            }
            loops += 1;
            let mut m = m0;
            loop {
                seen_mid[m] = true;
                // up through other: other's bottom m -> partner
                let p = other.pair[m];
                debug_assert!(p < mid, "loop strand escaped to the boundary");
                seen_mid[p] = true;
                // back down through self: self's top p -> partner
                let q = self.pair[nb + p];
                debug_assert!(q >= nb, "loop strand escaped to the boundary");
                m = q - nb;
                if m == m0 {
                    break;
                }
            }
        }

        let result = Self { bottom: nb, top: nt, pair: new_pair };
        debug_assert!(result.is_planar());
        Ok((result, loops))
    }

    /// Places `other` to the right of `self`; strand counts add.
    pub fn tensor(&self, other: &Self) -> Self {
        let nb = self.bottom + other.bottom;
        let nt = self.top + other.top;
        let remap_self = |i: usize| -> usize {
            if i < self.bottom {
                i
            } else {
                nb + (i - self.bottom)
            }
        };
        let remap_other = |i: usize| -> usize {
            if i < other.bottom {
                self.bottom + i
            } else {
                nb + self.top + (i - other.bottom)
            }
        };
        let mut pair = vec![usize::MAX; nb + nt];
        for i in 0..self.pair.len() {
            pair[remap_self(i)] = remap_self(self.pair[i]);
        }
        for i in 0..other.pair.len() {
            pair[remap_other(i)] = remap_other(other.pair[i]);
        }
        let result = Self { bottom: nb, top: nt, pair };
        debug_assert!(result.is_planar());
        result
    }

    /// Closes bottom point `k` onto top point `k` around the side for every
    /// `k` and returns the number of resulting loops. Requires `bottom == top`.
    pub fn closure_loops(&self) -> Result<usize> {
        if self.bottom != self.top {
            return Err(Error::ShapeMismatch { expected: self.bottom, got: self.top });
        }
        let n = self.bottom;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut p = start;
            loop {
                seen[p] = true;
                let q = self.pair[p]; // across the diagram
                seen[q] = true;
                // around the side: bottom k <-> top k
                p = if q < n { q + n } else { q - n };
                if p == start {
                    break;
                }
            }
        }
        Ok(loops)
    }
}

/// All planar matchings with the given boundary counts, in a deterministic
/// order. The count for `(n, n)` is the Catalan number `C_n`.
pub fn enumerate_matchings(bottom: usize, top: usize) -> Vec<PlanarMatching> {
    let total = bottom + top;
    if total % 2 != 0 {
        return Vec::new();
    }
    fn noncrossing(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if points.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let first = points[0];
        for k in (1..points.len()).step_by(2) {
            let mate = points[k];
            for inner in noncrossing(&points[1..k]) {
                for outer in noncrossing(&points[k + 1..]) {
                    let mut chords = vec![(first, mate)];
                    chords.extend_from_slice(&inner);
                    chords.extend_from_slice(&outer);
                    out.push(chords);
                }
            }
        }
        out
    }
    let circle: Vec<usize> = (0..total).collect();
    let to_boundary = |c: usize| -> usize {
        if c < bottom {
            c
        } else {
            bottom + (total - 1 - c)
        }
    };
    let mut results = Vec::new();
    for chords in noncrossing(&circle) {
        let mut pair = vec![usize::MAX; total];
        for (a, b) in chords {
            let (i, j) = (to_boundary(a), to_boundary(b));
            pair[i] = j;
            pair[j] = i;
        }
        results.push(
            PlanarMatching::new(bottom, top, pair)
                .expect("non-crossing circle matching must be planar"),
        );
    }
    results.sort();
    results.dedup();
    results
}

impl Serialize for PlanarMatching {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.pair.len()))?;
        for p in &self.pair {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}
