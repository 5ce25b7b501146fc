//! Braid words and their compilation to unitary matrices on fusion bases.
//!
//! The generator exchanging strands `i` and `i+1` acts on the window
//! `(x_{i-2}, l, l, x_i)` of a left-comb path: conjugating the diagonal of
//! local braiding phases `lambda_c^{ll}` by the recoupling matrix
//! `M[x_{i-2}, l, l, x_i]` yields its matrix on the comb coordinates,
//! `sigma = M diag(lambda) M^T`. The first generator is already diagonal
//! with phases `lambda_{x_1}^{ll}`.

use num_complex::Complex64;

use crate::cmat::ComplexMatrix;
use crate::error::{Error, Result};
use crate::fusion::{enumerate_basis, FusionBasis};
use crate::qint;
use crate::ratfn::RationalFunction;
use crate::recoupling::{braid_phase_poly, fmatrix, fusion_channels, is_admissible};
use crate::root::RootParams;

/// A word in the braid group generators: signed indices, letter `+-i` for
/// `sigma_i^{+-1}`, `1 <= i <= n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(Error::IndexOutOfRange { index: i, max: strands - 1 });
            }
        }
        Ok(Self { strands, letters })
    }

    /// Parses comma-separated signed integers like `"1,-2,1"`. The strand
    /// count is `max |letter| + 1` unless overridden; an empty word requires
    /// an explicit strand count.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        let trimmed = text.trim();
        let letters: Vec<i32> = if trimmed.is_empty() {
            Vec::new()
        } else {
            trimmed
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    let v: i32 = tok
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad braid letter {tok:?}")))?;
                    if v == 0 {
                        return Err(Error::Parse("braid letters are nonzero".into()));
                    }
                    Ok(v)
                })
                .collect::<Result<_>>()?
        };
        let inferred = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max();
        let n = match (strands, inferred) {
            (Some(n), _) => n,
            (None, Some(n)) => n,
            (None, None) => {
                return Err(Error::Parse(
                    "an empty word needs an explicit strand count".into(),
                ))
            }
        };
        Self::new(n, letters)
    }

    pub fn strand_count(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Positions of basis paths grouped by all coordinates except `x_m`; each
/// group is one block of the generator's matrix.
fn window_groups(basis: &FusionBasis, m: usize) -> Vec<Vec<usize>> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (idx, path) in basis.paths().iter().enumerate() {
        let mut key = path.internals().to_vec();
        key[m - 1] = usize::MAX; // mask the moving coordinate
        groups.entry(key).or_default().push(idx);
    }
    groups.into_values().collect()
}

/// The unitary matrix of the braid generator `sigma_i` on the fusion basis.
pub fn sigma_matrix(basis: &FusionBasis, i: usize) -> Result<ComplexMatrix> {
    let n = basis.n();
    if i < 1 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    let params = *basis.params();
    let leaf = basis.leaf();
    let dim = basis.dim();
    let mut out = ComplexMatrix::zeros(dim);

    if i == 1 {
        for (idx, path) in basis.paths().iter().enumerate() {
            let x1 = path.x(1, leaf);
            let lam = braid_phase_poly(leaf, leaf, x1)?.eval_at_root(&params);
            out[(idx, idx)] = lam;
        }
        return Ok(out);
    }

    // sigma_i moves coordinate x_{i-1} inside the window (x_{i-2}, l, l, x_i)
    let m = i - 1;
    for group in window_groups(basis, m) {
        let sample = &basis.paths()[group[0]];
        let p = sample.x(m - 1, leaf);
        let q = sample.x(m + 1, leaf);
        let f = fmatrix(p, leaf, leaf, q, &params)?;
        let rows = f.row_labels();
        debug_assert_eq!(
            rows,
            group
                .iter()
                .map(|&idx| basis.paths()[idx].x(m, leaf))
                .collect::<Vec<_>>()
                .as_slice(),
            "window rows must match the paths present in the basis"
        );
        let cols = f.col_labels().to_vec();
        let lambdas: Vec<Complex64> = cols
            .iter()
            .map(|&c| braid_phase_poly(leaf, leaf, c).map(|p| p.eval_at_root(&params)))
            .collect::<Result<_>>()?;
        // block = M diag(lambda) M^T on the group's coordinates
        for (bi, &pi) in group.iter().enumerate() {
            for (bk, &pk) in group.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, lam) in lambdas.iter().enumerate() {
                    acc += f.entry(bi, j) * lam * f.entry(bk, j);
                }
                out[(pi, pk)] = acc;
            }
        }
    }
    Ok(out)
}

/// Compiles a braid word to a unitary: the first letter acts first on column
/// vectors, so it is the right-most factor of the product.
pub fn compile_braid(basis: &FusionBasis, word: &BraidWord) -> Result<ComplexMatrix> {
    if word.strand_count() != basis.n() {
        return Err(Error::ShapeMismatch { expected: basis.n(), got: word.strand_count() });
    }
    let mut u = ComplexMatrix::identity(basis.dim());
    for &letter in word.letters() {
        let i = letter.unsigned_abs() as usize;
        let s = sigma_matrix(basis, i)?;
        let s = if letter > 0 { s } else { s.dagger() };
        u = s.mul(&u);
    }
    Ok(u)
}

/// `max |U^dagger U - I|`; callers compare against their tolerance.
pub fn check_unitarity(matrix: &ComplexMatrix) -> f64 {
    matrix.unitarity_deviation()
}

// ---- trace closure over all charge sectors ----

/// Weighted character of a braid word at a root of unity, for strands
/// labelled 1: `sum_t delta_t Tr rho_t(word)`. Equals the bracket of the
/// braid closure (the empty word on `n` strands gives `d^n`).
pub fn closure_invariant_via_trace_at(word: &BraidWord, params: &RootParams) -> Result<Complex64> {
    let n = word.strand_count();
    let mut acc = Complex64::new(0.0, 0.0);
    for t in 0..=params.max_label() {
        let basis = enumerate_basis(n, 1, t, params)?;
        if basis.dim() == 0 {
            continue;
        }
        let u = compile_braid(&basis, word)?;
        acc += Complex64::new(params.delta(t), 0.0) * u.trace();
    }
    Ok(acc)
}

/// Exact form of [`closure_invariant_via_trace_at`] at generic `A`: the
/// representation matrices are built from exact 6j change-of-basis data, so
/// the weighted trace is an exact rational function that must coincide with
/// the diagrammatic bracket of the closure.
pub fn closure_invariant_via_trace(word: &BraidWord) -> Result<RationalFunction> {
    let n = word.strand_count();
    let mut acc = RationalFunction::zero();
    for rep in exact_charge_sectors(n)? {
        let tr = rep.word_matrix(word)?.trace();
        acc = &acc + &(&RationalFunction::from_poly(qint::delta(rep.total)) * &tr);
    }
    Ok(acc)
}

/// The exact strand-label-1 representations for every reachable total
/// charge on `n` strands.
pub(crate) fn exact_charge_sectors(n: usize) -> Result<Vec<ExactRep>> {
    let mut sectors = Vec::new();
    let mut t = n % 2;
    while t <= n {
        let rep = ExactRep::build(n, t)?;
        if rep.dim > 0 {
            sectors.push(rep);
        }
        t += 2;
    }
    Ok(sectors)
}

/// Left-comb paths for leaf label `l` with no level cutoff.
fn generic_paths(n: usize, leaf: usize, total: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return if leaf == total { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(n - 1);
    fn rec(
        n: usize,
        leaf: usize,
        total: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = stack.len();
        let prev = if k == 0 { leaf } else { stack[k - 1] };
        let last = k + 1 == n - 1;
        for x in fusion_channels(prev, leaf, None) {
            if last && x != total {
                continue;
            }
            stack.push(x);
            if last {
                out.push(stack.clone());
            } else {
                rec(n, leaf, total, stack, out);
            }
            stack.pop();
        }
    }
    rec(n, leaf, total, &mut stack, &mut out);
    out.sort();
    out
}

/// Exact (non-unitary but trace-equivalent) braid representation of the
/// charge-`total` sector of `n` strands labelled 1, with generator matrices
/// precomputed for reuse across many words.
#[derive(Debug, Clone)]
pub(crate) struct ExactRep {
    pub(crate) n: usize,
    pub(crate) total: usize,
    pub(crate) dim: usize,
    /// `gens[i-1]` is the matrix of `sigma_i`, `inv_gens[i-1]` its inverse.
    gens: Vec<RatMat>,
    inv_gens: Vec<RatMat>,
}

impl ExactRep {
    pub(crate) fn build(n: usize, total: usize) -> Result<Self> {
        let leaf = 1usize;
        let paths = generic_paths(n, leaf, total);
        let dim = paths.len();
        let x_of = |path: &[usize], k: usize| -> usize {
            if k == 0 {
                leaf
            } else {
                path[k - 1]
            }
        };
        let lam = |c: usize| -> Result<RationalFunction> {
            Ok(RationalFunction::from_poly(braid_phase_poly(leaf, leaf, c)?))
        };
        let mut gens = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let mut mat = RatMat::zeros(dim);
            if i == 1 {
                for (idx, path) in paths.iter().enumerate() {
                    mat.set(idx, idx, lam(x_of(path, 1))?);
                }
            } else {
                let m = i - 1;
                use std::collections::BTreeMap;
                let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
                for (idx, path) in paths.iter().enumerate() {
                    let mut key = path.clone();
                    key[m - 1] = usize::MAX;
                    groups.entry(key).or_default().push(idx);
                }
                for group in groups.into_values() {
                    let sample = &paths[group[0]];
                    let p = x_of(sample, m - 1);
                    let q = x_of(sample, m + 1);
                    let xs: Vec<usize> = group.iter().map(|&idx| x_of(&paths[idx], m)).collect();
                    let cols: Vec<usize> = fusion_channels(leaf, leaf, None)
                        .into_iter()
                        .filter(|&j| is_admissible(p, j, q, None))
                        .collect();
                    assert_eq!(xs.len(), cols.len(), "generic window must be square");
                    // unnormalized change of basis: comb coordinates -> pair
                    // coordinates via the transpose of the 6j matrix
                    let k = xs.len();
                    let mut t_mat = RatMat::zeros(k);
                    for (ri, &x) in xs.iter().enumerate() {
                        for (cj, &j) in cols.iter().enumerate() {
                            t_mat.set(ri, cj, crate::recoupling::sixj(p, leaf, x, leaf, q, j)?);
                        }
                    }
                    let c_mat = t_mat.transposed(); // pair-from-comb coordinates
                    let c_inv = c_mat.inverse();
                    let mut lam_diag = RatMat::zeros(k);
                    for (cj, &j) in cols.iter().enumerate() {
                        lam_diag.set(cj, cj, lam(j)?);
                    }
                    let block = c_inv.mul(&lam_diag).mul(&c_mat);
                    for (bi, &pi) in group.iter().enumerate() {
                        for (bj, &pj) in group.iter().enumerate() {
                            mat.set(pi, pj, block.get(bi, bj).clone());
                        }
                    }
                }
            }
            gens.push(mat);
        }
        let inv_gens = gens.iter().map(|g| g.inverse()).collect();
        Ok(Self { n, total, dim, gens, inv_gens })
    }

    pub(crate) fn identity(&self) -> RatMat {
        RatMat::identity(self.dim)
    }

    pub(crate) fn generator(&self, letter: i32) -> &RatMat {
        let i = letter.unsigned_abs() as usize;
        if letter > 0 {
            &self.gens[i - 1]
        } else {
            &self.inv_gens[i - 1]
        }
    }

    /// Applies one more letter to an accumulated word matrix (the new letter
    /// acts after the existing word, so it multiplies on the left).
    pub(crate) fn extend(&self, acc: &RatMat, letter: i32) -> RatMat {
        self.generator(letter).mul(acc)
    }

    pub(crate) fn word_matrix(&self, word: &BraidWord) -> Result<RatMat> {
        if word.strand_count() != self.n {
            return Err(Error::ShapeMismatch { expected: self.n, got: word.strand_count() });
        }
        let mut u = self.identity();
        for &letter in word.letters() {
            u = self.extend(&u, letter);
        }
        Ok(u)
    }
}

/// Dense matrix over the rational-function field; only used for small exact
/// representation blocks.
#[derive(Debug, Clone)]
pub(crate) struct RatMat {
    dim: usize,
    data: Vec<RationalFunction>,
}

impl RatMat {
    fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![RationalFunction::zero(); dim * dim] }
    }

    fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, RationalFunction::one());
        }
        m
    }

    fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.data[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.data[i * self.dim + j] = v;
    }

    fn transposed(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = RationalFunction::zero();
                for k in 0..self.dim {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub(crate) fn trace(&self) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for i in 0..self.dim {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Exact Gauss-Jordan inverse; panics on a singular matrix (the change
    /// of basis matrices used here are invertible).
    fn inverse(&self) -> Self {
        let n = self.dim;
        let mut a = self.clone();
        let mut b = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .expect("change-of-basis matrix is singular");
            if pivot != col {
                for j in 0..n {
                    let tmp = a.get(col, j).clone();
                    a.set(col, j, a.get(pivot, j).clone());
                    a.set(pivot, j, tmp);
                    let tmp = b.get(col, j).clone();
                    b.set(col, j, b.get(pivot, j).clone());
                    b.set(pivot, j, tmp);
                }
            }
            let inv = a.get(col, col).recip();
            for j in 0..n {
                a.set(col, j, a.get(col, j) * &inv);
                b.set(col, j, b.get(col, j) * &inv);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let av = a.get(r, j) - &(&factor * a.get(col, j));
                    a.set(r, j, av);
                    let bv = b.get(r, j) - &(&factor * b.get(col, j));
                    b.set(r, j, bv);
                }
            }
        }
        b
    }
}
