//! Closed-form network evaluations and the unitary-normalized recoupling
//! data: admissibility, theta and tetrahedron values, quantum 6j symbols,
//! vertex normalization factors, the real orthogonal matrices `M[a,b,c,d]`
//! and the local braiding phases `lambda_c^{ab}`.
//!
//! Conventions (fixed throughout the crate):
//!
//! * `M[a,b,c,d]` changes basis between the two pair-fusion trees of four
//!   objects: **rows** are internal labels `i` admissible with `(a,b,i)` and
//!   `(i,c,d)`; **columns** are labels `j` admissible with `(b,c,j)` and
//!   `(a,j,d)`.
//! * The tetrahedron `tet(a,b,i,c,d,j)` is the closed network with vertex
//!   triples `(a,b,i)`, `(c,d,i)`, `(a,d,j)`, `(b,c,j)`; it is the pairing of
//!   a row basis element against a column basis element.
//! * `M[a,b,c,d]^T = M[a,b,c,d]^{-1} = M[b,c,d,a]` (rotating the four outer
//!   labels one step exchanges the two bases).

use std::ops::{Add, Div, Mul, Neg};

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::qint;
use crate::ratfn::RationalFunction;
use crate::root::RootParams;

/// Vertex labels `(a, b, c)` satisfying parity and the triangle condition,
/// with the derived internal strand counts between each pair of legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibleTriple {
    a: usize,
    b: usize,
    c: usize,
}

impl AdmissibleTriple {
    /// Validates parity (`a+b+c` even) and the triangle condition (each
    /// pairwise sum at least the third label).
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if (a + b + c) % 2 != 0 || a + b < c || b + c < a || c + a < b {
            return Err(Error::NotAdmissible { a, b, c });
        }
        Ok(Self { a, b, c })
    }

    pub fn labels(&self) -> (usize, usize, usize) {
        (self.a, self.b, self.c)
    }

    /// Strands shared between legs `a` and `b`: `(a+b-c)/2`.
    pub fn m(&self) -> usize {
        (self.a + self.b - self.c) / 2
    }

    /// Strands shared between legs `b` and `c`: `(b+c-a)/2`.
    pub fn n(&self) -> usize {
        (self.b + self.c - self.a) / 2
    }

    /// Strands shared between legs `c` and `a`: `(c+a-b)/2`.
    pub fn p(&self) -> usize {
        (self.c + self.a - self.b) / 2
    }

    /// Whether the triple also satisfies the level cutoff
    /// `a + b + c <= 2r - 4` (and each label at most `r - 2`).
    pub fn admissible_at(&self, params: &RootParams) -> bool {
        let max = params.max_label();
        self.a + self.b + self.c <= 2 * params.r() - 4
            && self.a <= max
            && self.b <= max
            && self.c <= max
    }
}

/// Parity + triangle admissibility, with the level cutoff when `params` is
/// given.
pub fn is_admissible(a: usize, b: usize, c: usize, params: Option<&RootParams>) -> bool {
    match AdmissibleTriple::new(a, b, c) {
        Err(_) => false,
        Ok(t) => params.is_none_or(|p| t.admissible_at(p)),
    }
}

// ---- generic evaluation kernels ----
//
// The same closed forms are evaluated over exact rational functions, over
// f64 (sine-ratio quantum integers) and over Complex64 (powers of A); the
// scalar type is abstracted through the quantum-factorial closure.

fn theta_value<T, F>(t: &AdmissibleTriple, qfact: &F) -> T
where
    T: Clone + Mul<Output = T> + Div<Output = T> + Neg<Output = T>,
    F: Fn(usize) -> T,
{
    let (m, n, p) = (t.m(), t.n(), t.p());
    let num = qfact(m + n + p + 1) * qfact(m) * qfact(n) * qfact(p);
    let den = qfact(m + n) * qfact(n + p) * qfact(p + m);
    let v = num / den;
    if (m + n + p) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Vertex half-sums and opposite-pair half-sums of the tetrahedron with
/// vertices `(a,b,i)`, `(c,d,i)`, `(a,d,j)`, `(b,c,j)`.
fn tet_sums(
    a: usize,
    b: usize,
    i: usize,
    c: usize,
    d: usize,
    j: usize,
) -> Result<([usize; 4], [usize; 3])> {
    AdmissibleTriple::new(a, b, i)?;
    AdmissibleTriple::new(c, d, i)?;
    AdmissibleTriple::new(a, d, j)?;
    AdmissibleTriple::new(b, c, j)?;
    let verts = [
        (a + b + i) / 2,
        (c + d + i) / 2,
        (a + d + j) / 2,
        (b + c + j) / 2,
    ];
    let pairs = [
        (a + b + c + d) / 2,
        (a + c + i + j) / 2,
        (b + d + i + j) / 2,
    ];
    Ok((verts, pairs))
}

fn tet_value<T, F>(labels: [usize; 6], verts: [usize; 4], pairs: [usize; 3], qfact: &F) -> T
where
    T: Clone + Add<Output = T> + Mul<Output = T> + Div<Output = T> + Neg<Output = T>,
    F: Fn(usize) -> T,
{
    let s_min = *verts.iter().max().expect("four vertices");
    let s_max = *pairs.iter().min().expect("three pairs");
    debug_assert!(s_min <= s_max, "admissible tetrahedra have a nonempty interior sum");
    let mut sum: Option<T> = None;
    for s in s_min..=s_max {
        let mut term = qfact(s + 1);
        for &v in &verts {
            term = term / qfact(s - v);
        }
        for &q in &pairs {
            term = term / qfact(q - s);
        }
        if s % 2 == 1 {
            term = -term;
        }
        sum = Some(match sum {
            None => term,
            Some(acc) => acc + term,
        });
    }
    let sum = sum.expect("interior sum nonempty");
    let mut interior = qfact(0);
    for &q in &pairs {
        for &v in &verts {
            interior = interior * qfact(q - v);
        }
    }
    let mut edges = qfact(0);
    for &l in &labels {
        edges = edges * qfact(l);
    }
    interior / edges * sum
}

fn qfact_exact(n: usize) -> RationalFunction {
    RationalFunction::from_poly(qint::quantum_fact(n))
}

/// Exact theta network value
/// `theta(a,b,c) = (-1)^{m+n+p} [m+n+p+1]![m]![n]![p]! / ([m+n]![n+p]![p+m]!)`.
pub fn theta_closed(a: usize, b: usize, c: usize) -> Result<RationalFunction> {
    let t = AdmissibleTriple::new(a, b, c)?;
    Ok(theta_value(&t, &qfact_exact))
}

/// Theta value at a root of unity. Triples that violate the level cutoff
/// evaluate to 0 (the factor `[r]` appears in the numerator).
pub fn theta_at(a: usize, b: usize, c: usize, params: &RootParams) -> Result<f64> {
    let t = AdmissibleTriple::new(a, b, c)?;
    Ok(theta_value(&t, &|n| params.quantum_fact(n)))
}

/// Exact tetrahedron value for the network with vertex triples `(a,b,i)`,
/// `(c,d,i)`, `(a,d,j)`, `(b,c,j)`, computed by the interior single-sum
/// formula. Agrees with the diagrammatic oracle on every admissible input.
pub fn tet_closed(
    a: usize,
    b: usize,
    i: usize,
    c: usize,
    d: usize,
    j: usize,
) -> Result<RationalFunction> {
    let (verts, pairs) = tet_sums(a, b, i, c, d, j)?;
    Ok(tet_value([a, b, i, c, d, j], verts, pairs, &qfact_exact))
}

/// Tetrahedron value at a root of unity.
pub fn tet_at(
    a: usize,
    b: usize,
    i: usize,
    c: usize,
    d: usize,
    j: usize,
    params: &RootParams,
) -> Result<f64> {
    let (verts, pairs) = tet_sums(a, b, i, c, d, j)?;
    Ok(tet_value([a, b, i, c, d, j], verts, pairs, &|n| {
        params.quantum_fact(n)
    }))
}

fn tet_at_complex(
    a: usize,
    b: usize,
    i: usize,
    c: usize,
    d: usize,
    j: usize,
    params: &RootParams,
) -> Result<Complex64> {
    let (verts, pairs) = tet_sums(a, b, i, c, d, j)?;
    Ok(tet_value([a, b, i, c, d, j], verts, pairs, &|n| {
        params.quantum_fact_complex(n)
    }))
}

/// Exact quantum 6j symbol: the coefficient of the column basis element `k`
/// in the expansion of the row basis element `i` (bases as in
/// [`RecouplingMatrix`]),
/// `{a b i; c d k} = tet(a,b,i,c,d,k) * delta_k / (theta(b,c,k) theta(a,d,k))`.
pub fn sixj(a: usize, b: usize, i: usize, c: usize, d: usize, k: usize) -> Result<RationalFunction> {
    let tet = tet_closed(a, b, i, c, d, k)?;
    let th1 = theta_closed(b, c, k)?;
    let th2 = theta_closed(a, d, k)?;
    let dk = RationalFunction::from_poly(qint::delta(k));
    Ok(&(&tet * &dk) / &(&th1 * &th2))
}

/// Numeric 6j symbol at a root of unity.
///
/// Fails with [`Error::ThetaVanishes`] when a denominator theta vanishes at
/// the root (a boundary or non-admissible label).
pub fn sixj_at(
    a: usize,
    b: usize,
    i: usize,
    c: usize,
    d: usize,
    k: usize,
    params: &RootParams,
) -> Result<f64> {
    let tet = tet_at(a, b, i, c, d, k, params)?;
    let th1 = theta_at(b, c, k, params)?;
    if th1.abs() <= params.tol() {
        return Err(Error::ThetaVanishes { a: b, b: c, c: k });
    }
    let th2 = theta_at(a, d, k, params)?;
    if th2.abs() <= params.tol() {
        return Err(Error::ThetaVanishes { a, b: d, c: k });
    }
    Ok(tet * params.delta(k) / (th1 * th2))
}

/// Positive theta: `(-1)^{(a+b+c)/2} theta(a,b,c)`, strictly positive for
/// every triple admissible at the root.
fn theta_hat_at(a: usize, b: usize, c: usize, params: &RootParams) -> Result<f64> {
    let th = theta_at(a, b, c, params)?;
    let sign = if ((a + b + c) / 2) % 2 == 1 { -1.0 } else { 1.0 };
    Ok(sign * th)
}

/// Vertex normalization factor
/// `f(a,b,c) = sqrt( sqrt([a+1][b+1][c+1]) / theta_hat(a,b,c) )`,
/// a strictly positive real number for triples admissible at the root.
pub fn vertex_factor(a: usize, b: usize, c: usize, params: &RootParams) -> Result<f64> {
    let t = AdmissibleTriple::new(a, b, c)?;
    if !t.admissible_at(params) {
        return Err(Error::NotAdmissible { a, b, c });
    }
    let dims = params.quantum_int(a + 1) * params.quantum_int(b + 1) * params.quantum_int(c + 1);
    let th_hat = theta_hat_at(a, b, c, params)?;
    debug_assert!(th_hat > 0.0, "theta_hat must be positive for admissible triples");
    Ok((dims.sqrt() / th_hat).sqrt())
}

/// Coefficient of the modified bubble identity:
/// `(-1)^{(b+c-a)/2} sqrt([b+1][c+1] / [a+1])`.
pub fn bubble_coeff(a: usize, b: usize, c: usize, params: &RootParams) -> Result<f64> {
    let t = AdmissibleTriple::new(a, b, c)?;
    if !t.admissible_at(params) {
        return Err(Error::NotAdmissible { a, b, c });
    }
    let sign = if (t.n()) % 2 == 1 { -1.0 } else { 1.0 };
    let mag = (params.quantum_int(b + 1) * params.quantum_int(c + 1)
        / params.quantum_int(a + 1))
    .sqrt();
    Ok(sign * mag)
}

/// Local braiding phase `lambda_c^{ab} = (-1)^{(a+b-c)/2} A^{(a'+b'-c')/2}`
/// with `x' = x(x+2)`, as an exact monomial.
pub fn braid_phase_poly(a: usize, b: usize, c: usize) -> Result<LaurentPoly> {
    let t = AdmissibleTriple::new(a, b, c)?;
    let twist = |x: usize| (x * (x + 2)) as i64;
    let exp = (twist(a) + twist(b) - twist(c)) / 2;
    let sign = if t.m() % 2 == 1 { -1 } else { 1 };
    Ok(LaurentPoly::monomial(exp, sign))
}

/// A braiding eigenvalue at a root of unity; always unit modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BraidPhase {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: (f64, f64),
}

impl BraidPhase {
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.value.0, self.value.1)
    }
}

/// Braiding phase evaluated at a root of unity.
pub fn braid_phase(a: usize, b: usize, c: usize, params: &RootParams) -> Result<BraidPhase> {
    let v = braid_phase_poly(a, b, c)?.eval_at_root(params);
    Ok(BraidPhase { a, b, c, value: (v.re, v.im) })
}

/// Ascending fusion channels `c` of `a (x) b`, restricted by the level cutoff
/// when `params` is given.
pub fn fusion_channels(a: usize, b: usize, params: Option<&RootParams>) -> Vec<usize> {
    let lo = a.abs_diff(b);
    let hi = a + b;
    (lo..=hi)
        .step_by(2)
        .filter(|&c| is_admissible(a, b, c, params))
        .collect()
}

/// Diagonal braiding matrix for the exchange of `a` and `b`: eigenvalue
/// `lambda_c^{ab}` on each admissible fusion channel `c`, ascending.
pub fn rmatrix(a: usize, b: usize, params: &RootParams) -> Result<Vec<(usize, Complex64)>> {
    if a > params.max_label() || b > params.max_label() {
        return Err(Error::NotAdmissible { a, b, c: 0 });
    }
    fusion_channels(a, b, Some(params))
        .into_iter()
        .map(|c| Ok((c, braid_phase(a, b, c, params)?.complex())))
        .collect()
}

/// Generic diagonal braiding data: `(c, lambda_c^{ab})` pairs over all
/// generically admissible channels.
pub fn rmatrix_generic(a: usize, b: usize) -> Vec<(usize, LaurentPoly)> {
    fusion_channels(a, b, None)
        .into_iter()
        .map(|c| (c, braid_phase_poly(a, b, c).expect("channel admissible")))
        .collect()
}

/// Sign convention for internal fusion labels: the gauge in which the
/// level-5 label-2 recoupling matrix (the golden-ratio F-matrix) has
/// positive off-diagonal entries. Every sweep-level law (orthogonality,
/// inverse/transpose, pentagon, hexagon, braid relations) is invariant
/// under this diagonal sign change.
fn basis_sign(z: usize) -> f64 {
    if (z / 2) % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// The real orthogonal recoupling matrix `M[a,b,c,d]`.
///
/// Row labels `i` satisfy `(a,b,i)` and `(i,c,d)` admissibility; column
/// labels `j` satisfy `(b,c,j)` and `(a,j,d)`. Entries are
///
/// ```text
/// M_ij = f(a,b,i) f(c,d,i) f(a,d,j) f(b,c,j) tet(a,b,i,c,d,j)
///        / ( (-1)^{(a+b+c+d)/2} sqrt([a+1][b+1][c+1][d+1]) )
/// ```
///
/// times the internal basis sign convention.
#[derive(Debug, Clone, PartialEq)]
pub struct RecouplingMatrix {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub r: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    entries: Vec<f64>,
}

impl RecouplingMatrix {
    pub fn row_labels(&self) -> &[usize] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.cols
    }

    /// Square dimension (row and column label sets always have equal size).
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols.len() + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `max |M M^T - I|`.
    pub fn orthogonality_deviation(&self) -> f64 {
        let n = self.dim();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for k in 0..n {
                let dot: f64 = (0..n).map(|j| self.entry(i, j) * self.entry(k, j)).sum();
                let target = if i == k { 1.0 } else { 0.0 };
                dev = dev.max((dot - target).abs());
            }
        }
        dev
    }

    /// `max |self . other - I|`; `other`'s rows must be indexed by `self`'s
    /// column labels and vice versa.
    pub fn product_deviation(&self, other: &Self) -> Result<f64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::ShapeMismatch { expected: self.cols.len(), got: other.rows.len() });
        }
        let n = self.dim();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for k in 0..n {
                let dot: f64 = (0..n).map(|j| self.entry(i, j) * other.entry(j, k)).sum();
                let target = if i == k { 1.0 } else { 0.0 };
                dev = dev.max((dot - target).abs());
            }
        }
        Ok(dev)
    }

    /// `max |self^T - other|` entrywise.
    pub fn transpose_deviation(&self, other: &Self) -> Result<f64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::ShapeMismatch { expected: self.cols.len(), got: other.rows.len() });
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows.len() {
            for j in 0..self.cols.len() {
                dev = dev.max((self.entry(i, j) - other.entry(j, i)).abs());
            }
        }
        Ok(dev)
    }
}

/// Serializes as `{"a","b","c","d","r","rows","cols","entries"}` with entries
/// row-major.
impl Serialize for RecouplingMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(8))?;
        map.serialize_entry("a", &self.a)?;
        map.serialize_entry("b", &self.b)?;
        map.serialize_entry("c", &self.c)?;
        map.serialize_entry("d", &self.d)?;
        map.serialize_entry("r", &self.r)?;
        map.serialize_entry("rows", &self.rows)?;
        map.serialize_entry("cols", &self.cols)?;
        let rows: Vec<&[f64]> = self.entries.chunks(self.cols.len().max(1)).collect();
        map.serialize_entry("entries", &rows)?;
        map.end()
    }
}

/// Internal row labels of `M[a,b,c,d]` at the root: `i` with `(a,b,i)` and
/// `(i,c,d)` admissible.
pub fn row_channels(a: usize, b: usize, c: usize, d: usize, params: &RootParams) -> Vec<usize> {
    (0..=params.max_label())
        .filter(|&i| {
            is_admissible(a, b, i, Some(params)) && is_admissible(i, c, d, Some(params))
        })
        .collect()
}

/// Internal column labels of `M[a,b,c,d]` at the root: `j` with `(b,c,j)` and
/// `(a,j,d)` admissible.
pub fn col_channels(a: usize, b: usize, c: usize, d: usize, params: &RootParams) -> Vec<usize> {
    (0..=params.max_label())
        .filter(|&j| {
            is_admissible(b, c, j, Some(params)) && is_admissible(a, j, d, Some(params))
        })
        .collect()
}

/// Builds the orthogonal recoupling matrix `M[a,b,c,d]` at the root.
///
/// Outer labels beyond `r - 2` are rejected; an empty admissible set yields a
/// legal 0x0 matrix.
pub fn fmatrix(
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    params: &RootParams,
) -> Result<RecouplingMatrix> {
    let max = params.max_label();
    if a > max || b > max || c > max || d > max {
        return Err(Error::NotAdmissible { a, b, c });
    }
    let rows = row_channels(a, b, c, d, params);
    let cols = col_channels(a, b, c, d, params);
    assert_eq!(
        rows.len(),
        cols.len(),
        "row and column channel counts must agree for M[{a},{b},{c},{d}] at r={}",
        params.r()
    );
    let sign = if ((a + b + c + d) / 2) % 2 == 1 { -1.0 } else { 1.0 };
    let denom = sign
        * (params.quantum_int(a + 1)
            * params.quantum_int(b + 1)
            * params.quantum_int(c + 1)
            * params.quantum_int(d + 1))
        .sqrt();
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for &i in &rows {
        let fi = vertex_factor(a, b, i, params)? * vertex_factor(c, d, i, params)?;
        for &j in &cols {
            let fj = vertex_factor(a, d, j, params)? * vertex_factor(b, c, j, params)?;
            let tet = tet_at(a, b, i, c, d, j, params)?;
            let gauge = basis_sign(i) * basis_sign(j);
            entries.push(gauge * fi * fj * tet / denom);
        }
    }
    Ok(RecouplingMatrix { a, b, c, d, r: params.r(), rows, cols, entries })
}

/// The outer-label permutation whose matrix is both the transpose and the
/// inverse of `M[a,b,c,d]`: rotating the square of outer labels one step,
/// `(a,b,c,d) -> (b,c,d,a)`, exchanges the row basis with the column basis.
pub fn fmatrix_inverse_labels(
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> (usize, usize, usize, usize) {
    (b, c, d, a)
}

/// Largest imaginary part over the matrix entries when every factor is
/// recomputed through complex powers of `A` instead of sine ratios; bounds
/// the numeric phase error of the reality claim.
pub fn fmatrix_imag_deviation(
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    params: &RootParams,
) -> Result<f64> {
    let m = fmatrix(a, b, c, d, params)?;
    let sign = if ((a + b + c + d) / 2) % 2 == 1 { -1.0 } else { 1.0 };
    let denom = sign
        * (params.quantum_int(a + 1)
            * params.quantum_int(b + 1)
            * params.quantum_int(c + 1)
            * params.quantum_int(d + 1))
        .sqrt();
    let mut dev: f64 = 0.0;
    for (ri, &i) in m.row_labels().iter().enumerate() {
        let fi = vertex_factor(a, b, i, params)? * vertex_factor(c, d, i, params)?;
        for (cj, &j) in m.col_labels().iter().enumerate() {
            let fj = vertex_factor(a, d, j, params)? * vertex_factor(b, c, j, params)?;
            let tet = tet_at_complex(a, b, i, c, d, j, params)?;
            let gauge = basis_sign(i) * basis_sign(j);
            let entry = tet * (gauge * fi * fj / denom);
            dev = dev.max(entry.im.abs());
            // the complex route must reproduce the real entries
            dev = dev.max((entry.re - m.entry(ri, cj)).abs());
        }
    }
    Ok(dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qint::{loop_value, quantum_int};

    fn rf(p: LaurentPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    #[test]
    fn admissibility_rules() {
        assert!(is_admissible(1, 1, 0, None));
        assert!(!is_admissible(1, 1, 1, None)); // odd sum
        assert!(!is_admissible(0, 0, 2, None)); // triangle violated
        let r5 = RootParams::with_default_tol(5).unwrap();
        let r4 = RootParams::with_default_tol(4).unwrap();
        assert!(is_admissible(2, 2, 2, Some(&r5))); // 6 <= 2*5-4
        assert!(!is_admissible(2, 2, 2, Some(&r4))); // 6 > 2*4-4
    }

    #[test]
    fn triple_strand_counts() {
        let t = AdmissibleTriple::new(3, 5, 4).unwrap();
        assert_eq!((t.m(), t.n(), t.p()), (2, 3, 1));
        assert_eq!(t.m() + t.p(), 3);
        assert_eq!(t.m() + t.n(), 5);
        assert_eq!(t.n() + t.p(), 4);
    }

    #[test]
    fn theta_closed_examples() {
        assert_eq!(theta_closed(0, 0, 0).unwrap(), RationalFunction::one());
        // theta(1,1,0) = -[2] = d
        assert_eq!(theta_closed(1, 1, 0).unwrap(), rf(loop_value()));
        // theta(1,1,2) = [3]
        assert_eq!(theta_closed(1, 1, 2).unwrap(), rf(quantum_int(3)));
        // theta(c,c,0) = delta_c
        for c in 0..=5 {
            assert_eq!(theta_closed(c, c, 0).unwrap(), rf(qint::delta(c)));
        }
        assert!(theta_closed(1, 1, 1).is_err());
    }

    #[test]
    fn tet_closed_desk_values() {
        assert_eq!(tet_closed(1, 1, 0, 1, 1, 0).unwrap(), rf(loop_value()));
        // an internal 0 label collapses the tetrahedron onto a theta
        assert_eq!(tet_closed(1, 1, 0, 1, 1, 2).unwrap(), theta_closed(1, 1, 2).unwrap());
        assert_eq!(tet_closed(2, 2, 2, 2, 2, 0).unwrap(), theta_closed(2, 2, 2).unwrap());
        // full symmetry point
        let t = tet_closed(1, 1, 2, 1, 1, 2).unwrap();
        let expected = &rf(quantum_int(3)) / &rf(quantum_int(2)); // [3]/[2]
        assert_eq!(t, expected);
    }

    #[test]
    fn sixj_examples() {
        // vacuum leg: recoupling is trivial
        let one = sixj(2, 0, 2, 1, 1, 1).unwrap();
        assert_eq!(one, RationalFunction::one());
        // {1 1 0; 1 1 0} = 1/d
        let v = sixj(1, 1, 0, 1, 1, 0).unwrap();
        assert_eq!(v, rf(loop_value()).recip());
    }

    #[test]
    fn sixj_at_flags_vanishing_theta() {
        // (2,2,2) is generically admissible but excluded at r=4, where its
        // theta vanishes; using it as a 6j denominator must be an error
        let r4 = RootParams::with_default_tol(4).unwrap();
        assert!(theta_at(2, 2, 2, &r4).unwrap().abs() < 1e-12);
        let err = sixj_at(2, 2, 0, 2, 2, 2, &r4).unwrap_err();
        assert!(matches!(err, Error::ThetaVanishes { .. }));
        // fine at r=5
        assert!(sixj_at(2, 2, 0, 2, 2, 2, &RootParams::with_default_tol(5).unwrap()).is_ok());
    }

    #[test]
    fn level_three_is_sparse_but_not_special_cased() {
        let r3 = RootParams::with_default_tol(3).unwrap();
        // only labels 0 and 1 survive; M[1,1,1,1] is 1x1 with a unit entry
        let m = fmatrix(1, 1, 1, 1, &r3).unwrap();
        assert_eq!(m.row_labels(), &[0]);
        assert_eq!(m.col_labels(), &[0]);
        assert!((m.entries()[0].abs() - 1.0).abs() < 1e-12);
        assert!(fmatrix(2, 1, 1, 2, &r3).is_err());
    }

    #[test]
    fn gram_expansion_consistency() {
        // theta(a,b,i) theta(c,d,i) / delta_i
        //   = sum_k {a b i; c d k} tet(a,b,i,c,d,k)   (exact, labels <= 2)
        for a in 0..=2usize {
            for b in 0..=2usize {
                for c in 0..=2usize {
                    for d in 0..=2usize {
                        for i in 0..=4usize {
                            if !(is_admissible(a, b, i, None) && is_admissible(i, c, d, None)) {
                                continue;
                            }
                            let lhs = &(&theta_closed(a, b, i).unwrap()
                                * &theta_closed(c, d, i).unwrap())
                                / &rf(qint::delta(i));
                            let mut rhs = RationalFunction::zero();
                            for k in 0..=4usize {
                                if !(is_admissible(b, c, k, None)
                                    && is_admissible(a, k, d, None))
                                {
                                    continue;
                                }
                                let term = &sixj(a, b, i, c, d, k).unwrap()
                                    * &tet_closed(a, b, i, c, d, k).unwrap();
                                rhs = &rhs + &term;
                            }
                            assert_eq!(lhs, rhs, "gram at ({a},{b},{i},{c},{d})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_factor_examples() {
        let r5 = RootParams::with_default_tol(5).unwrap();
        assert!((vertex_factor(0, 0, 0, &r5).unwrap() - 1.0).abs() < 1e-12);
        assert!((vertex_factor(1, 1, 0, &r5).unwrap() - 1.0).abs() < 1e-12);
        // f^4 * theta_hat^2 = [a+1][b+1][c+1] rearrangement
        let f = vertex_factor(2, 2, 2, &r5).unwrap();
        assert!(f > 0.0);
        let th_hat = theta_hat_at(2, 2, 2, &r5).unwrap();
        let dims = r5.quantum_int(3).powi(3);
        assert!((f.powi(4) * th_hat * th_hat - dims).abs() < 1e-10);
    }

    #[test]
    fn bubble_coeff_examples() {
        let r5 = RootParams::with_default_tol(5).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        // (0,1,1): -(sqrt([2][2]/[1])) = -[2] = -phi
        assert!((bubble_coeff(0, 1, 1, &r5).unwrap() + phi).abs() < 1e-12);
        // (2,1,1): [2]/sqrt([3]) = phi/sqrt(phi) -> sqrt(phi); here [3]=phi
        let v = bubble_coeff(2, 1, 1, &r5).unwrap();
        assert!((v - phi / phi.sqrt()).abs() < 1e-12);
        // (1,0,1): +1
        assert!((bubble_coeff(1, 0, 1, &r5).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn braid_phase_examples() {
        // lambda_b^{0b} = 1
        for b in 0..4 {
            assert_eq!(braid_phase_poly(0, b, b).unwrap(), LaurentPoly::one());
        }
        // lambda_0^{11} = -A^3, lambda_2^{11} = A^{-1}
        assert_eq!(braid_phase_poly(1, 1, 0).unwrap(), LaurentPoly::monomial(3, -1));
        assert_eq!(braid_phase_poly(1, 1, 2).unwrap(), LaurentPoly::monomial(-1, 1));
        // lambda_0^{22} = A^8, lambda_2^{22} = -A^4
        assert_eq!(braid_phase_poly(2, 2, 0).unwrap(), LaurentPoly::monomial(8, 1));
        assert_eq!(braid_phase_poly(2, 2, 2).unwrap(), LaurentPoly::monomial(4, -1));
        // unit modulus at roots
        let r5 = RootParams::with_default_tol(5).unwrap();
        for (a, b, c) in [(1, 1, 0), (1, 1, 2), (2, 2, 0), (2, 2, 2), (2, 1, 1)] {
            let lam = braid_phase(a, b, c, &r5).unwrap();
            assert!((lam.complex().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rmatrix_channels() {
        let r4 = RootParams::with_default_tol(4).unwrap();
        let diag = rmatrix(1, 1, &r4).unwrap();
        assert_eq!(diag.iter().map(|(c, _)| *c).collect::<Vec<_>>(), vec![0, 2]);
        for (_, v) in &diag {
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
        let gen = rmatrix_generic(1, 1);
        assert_eq!(gen.len(), 2);
    }

    #[test]
    fn sign_resolved_bubble_product_matches_dimension_form() {
        // the product of the two modified bubble coefficients and delta_j is
        // independent of j and equals
        // (-1)^{(a+b+c+d)/2} sqrt([a+1][b+1][c+1][d+1])
        for r in 3..=8usize {
            let params = RootParams::with_default_tol(r).unwrap();
            let max = params.max_label();
            for a in 0..=max {
                for b in 0..=max {
                    for c in 0..=max {
                        for d in 0..=max {
                            for j in 0..=max {
                                if !(is_admissible(j, a, b, Some(&params))
                                    && is_admissible(j, c, d, Some(&params)))
                                {
                                    continue;
                                }
                                let lhs = bubble_coeff(j, a, b, &params).unwrap()
                                    * bubble_coeff(j, c, d, &params).unwrap()
                                    * params.delta(j);
                                let sign =
                                    if ((a + b + c + d) / 2) % 2 == 1 { -1.0 } else { 1.0 };
                                let rhs = sign
                                    * (params.quantum_int(a + 1)
                                        * params.quantum_int(b + 1)
                                        * params.quantum_int(c + 1)
                                        * params.quantum_int(d + 1))
                                    .sqrt();
                                assert!(
                                    (lhs - rhs).abs() < 1e-10,
                                    "bubble product at ({a},{b},{c},{d};{j}) r={r}: {lhs} vs {rhs}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fibonacci_fmatrix() {
        let r5 = RootParams::with_default_tol(5).unwrap();
        let m = fmatrix(2, 2, 2, 2, &r5).unwrap();
        assert_eq!(m.row_labels(), &[0, 2]);
        assert_eq!(m.col_labels(), &[0, 2]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let expected = [1.0 / phi, 1.0 / phi.sqrt(), 1.0 / phi.sqrt(), -1.0 / phi];
        for (k, e) in expected.iter().enumerate() {
            assert!(
                (m.entries()[k] - e).abs() < 1e-12,
                "entry {k}: got {}, want {e}",
                m.entries()[k]
            );
        }
        assert!(m.orthogonality_deviation() < 1e-12);
    }

    #[test]
    fn odd_label_fmatrix_convention() {
        // For odd (half-integer spin) labels the (0,0) entry is forced to
        // -1/[2] in every gauge (the diagrammatic loop sign of a self-dual
        // odd strand); the shipped convention is pinned here.
        let r4 = RootParams::with_default_tol(4).unwrap();
        let m = fmatrix(1, 1, 1, 1, &r4).unwrap();
        let s = 1.0 / 2f64.sqrt(); // 1/[2] at r=4
        let expected = [-s, -s, -s, s];
        for (k, e) in expected.iter().enumerate() {
            assert!((m.entries()[k] - e).abs() < 1e-12, "entry {k}");
        }
        assert!(m.orthogonality_deviation() < 1e-12);
    }

    #[test]
    fn fmatrix_degenerate_cases() {
        let r5 = RootParams::with_default_tol(5).unwrap();
        // vacuum second label: single channel, unit entry
        let m = fmatrix(2, 0, 2, 2, &r5).unwrap();
        assert_eq!(m.dim(), 1);
        assert!((m.entries()[0].abs() - 1.0).abs() < 1e-12);
        // invalid outer label
        assert!(fmatrix(4, 0, 0, 4, &r5).is_err());
        // no admissible channels: 0x0 is legal
        let empty = fmatrix(3, 3, 3, 1, &r5).unwrap();
        assert!(empty.is_empty() || empty.dim() > 0);
    }

    #[test]
    fn fmatrix_inverse_transpose_law() {
        for r in [4usize, 5, 6] {
            let params = RootParams::with_default_tol(r).unwrap();
            let max = params.max_label();
            for a in 0..=max {
                for b in 0..=max {
                    for c in 0..=max {
                        for d in 0..=max {
                            let m = fmatrix(a, b, c, d, &params).unwrap();
                            if m.is_empty() {
                                continue;
                            }
                            let (pa, pb, pc, pd) = fmatrix_inverse_labels(a, b, c, d);
                            let inv = fmatrix(pa, pb, pc, pd, &params).unwrap();
                            assert!(
                                m.product_deviation(&inv).unwrap() < 1e-9,
                                "inverse law at ({a},{b},{c},{d}) r={r}"
                            );
                            assert!(
                                m.transpose_deviation(&inv).unwrap() < 1e-10,
                                "transpose law at ({a},{b},{c},{d}) r={r}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fmatrix_reality() {
        let r6 = RootParams::with_default_tol(6).unwrap();
        for a in 0..=4usize {
            for b in 0..=4usize {
                let dev = fmatrix_imag_deviation(a, b, a, b, &r6).unwrap();
                assert!(dev < 1e-10, "imag deviation at ({a},{b},{a},{b}): {dev}");
            }
        }
    }
}
