//! Fusion-tree bases for rows of identically labelled strands.
//!
//! States live on the left-comb tree `(((l l) l) ... l)`: a path records the
//! intermediate labels `x_1, ..., x_{n-1}` where `x_k` is the total charge of
//! the first `k + 1` strands; `x_0` is the first leaf's label itself and
//! `x_{n-1}` is the total charge.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::recoupling::is_admissible;
use crate::root::RootParams;

/// One admissible labelling of the left-comb internal edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FusionPath {
    internals: Vec<usize>,
}

impl FusionPath {
    /// The intermediate labels `x_1, ..., x_{n-1}`.
    pub fn internals(&self) -> &[usize] {
        &self.internals
    }

    /// `x_k` with the convention `x_0 = leaf label`.
    pub fn x(&self, k: usize, leaf: usize) -> usize {
        if k == 0 {
            leaf
        } else {
            self.internals[k - 1]
        }
    }
}

/// The fusion-tree state space of `n` strands of label `leaf` with total
/// charge `total`, enumerated in lexicographic order of the internal labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FusionBasis {
    n: usize,
    leaf: usize,
    total: usize,
    params: RootParams,
    paths: Vec<FusionPath>,
}

impl FusionBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leaf(&self) -> usize {
        self.leaf
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn params(&self) -> &RootParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[FusionPath] {
        &self.paths
    }

    /// Index of a path by its internal labels, if present.
    pub fn position(&self, internals: &[usize]) -> Option<usize> {
        self.paths.binary_search_by(|p| p.internals.as_slice().cmp(internals)).ok()
    }
}

/// Enumerates all admissible fusion paths, lexicographically.
///
/// An empty basis is legal (for instance when the total charge is
/// unreachable); `n` must be at least 1.
pub fn enumerate_basis(
    n: usize,
    leaf: usize,
    total: usize,
    params: &RootParams,
) -> Result<FusionBasis> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: 0 });
    }
    if leaf > params.max_label() {
        return Err(Error::NotAdmissible { a: leaf, b: leaf, c: 0 });
    }
    let mut paths = Vec::new();
    if n == 1 {
        if leaf == total {
            paths.push(FusionPath { internals: Vec::new() });
        }
    } else {
        let mut stack: Vec<usize> = Vec::with_capacity(n - 1);
        enumerate_rec(n, leaf, total, params, &mut stack, &mut paths);
    }
    Ok(FusionBasis { n, leaf, total, params: *params, paths })
}

fn enumerate_rec(
    n: usize,
    leaf: usize,
    total: usize,
    params: &RootParams,
    stack: &mut Vec<usize>,
    out: &mut Vec<FusionPath>,
) {
    let k = stack.len(); // choosing x_{k+1}
    let prev = if k == 0 { leaf } else { stack[k - 1] };
    let last = k + 1 == n - 1;
    for x in 0..=params.max_label() {
        if !is_admissible(prev, leaf, x, Some(params)) {
            continue;
        }
        if last && x != total {
            continue;
        }
        stack.push(x);
        if last {
            out.push(FusionPath { internals: stack.clone() });
        } else {
            enumerate_rec(n, leaf, total, params, stack, out);
        }
        stack.pop();
    }
}

/// Independent dimension count by dynamic programming over the transfer
/// relation; used to cross-check the path enumeration.
pub fn path_count_dp(n: usize, leaf: usize, total: usize, params: &RootParams) -> usize {
    if n == 0 || leaf > params.max_label() {
        return 0;
    }
    let max = params.max_label();
    let mut counts = vec![0usize; max + 1];
    counts[leaf] = 1; // x_0
    for _ in 1..n {
        let mut next = vec![0usize; max + 1];
        for (prev, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (x, slot) in next.iter_mut().enumerate() {
                if is_admissible(prev, leaf, x, Some(params)) {
                    *slot += c;
                }
            }
        }
        counts = next;
    }
    if total <= max {
        counts[total]
    } else {
        0
    }
}
