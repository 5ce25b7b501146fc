//! Consistency sweeps: braid relations, pentagon and hexagon route
//! comparisons, orthogonality and inverse laws, and the exact
//! closed-form-versus-diagram oracle equivalences.
//!
//! Checks never panic on a violation; every configuration contributes a
//! report entry with its deviation, and callers compare the maximum against
//! their tolerance.

use num_complex::Complex64;
use serde::Serialize;

use crate::braid::sigma_matrix;
use crate::error::Result;
use crate::fusion::enumerate_basis;
use crate::network::DiagramOracle;
use crate::qint;
use crate::ratfn::RationalFunction;
use crate::recoupling::{
    braid_phase_poly, fmatrix, fmatrix_imag_deviation, fmatrix_inverse_labels, is_admissible,
    tet_closed, theta_closed,
};
use crate::root::RootParams;

/// One checked configuration.
#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub check: &'static str,
    pub labels: Vec<usize>,
    pub deviation: f64,
}

/// A collection of check results.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn push(&mut self, check: &'static str, labels: Vec<usize>, deviation: f64) {
        self.entries.push(CheckEntry { check, labels, deviation });
    }

    pub fn merge(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Largest deviation over all entries (0 for an empty report).
    pub fn max_deviation(&self) -> f64 {
        self.entries.iter().map(|e| e.deviation).fold(0.0, f64::max)
    }

    /// Entries whose deviation exceeds `tol`.
    pub fn violations(&self, tol: f64) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| e.deviation > tol).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Sweeps every outer 4-tuple up to `max_label` and records
/// `max |M M^T - I|` ("orthogonality") and the largest imaginary part along
/// the complex evaluation route ("reality").
pub fn orthogonality_check(params: &RootParams, max_label: usize) -> Result<Report> {
    let max = max_label.min(params.max_label());
    let mut report = Report::default();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                for d in 0..=max {
                    let m = fmatrix(a, b, c, d, params)?;
                    if m.is_empty() {
                        continue;
                    }
                    report.push("orthogonality", vec![a, b, c, d], m.orthogonality_deviation());
                    report.push(
                        "reality",
                        vec![a, b, c, d],
                        fmatrix_imag_deviation(a, b, c, d, params)?,
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Same sweep as [`orthogonality_check`], verifying
/// `M[a,b,c,d] . M[rot(a,b,c,d)] = I` ("inverse") and
/// `M[a,b,c,d]^T = M[rot(a,b,c,d)]` entrywise ("transpose").
pub fn inverse_law_check(params: &RootParams, max_label: usize) -> Result<Report> {
    let max = max_label.min(params.max_label());
    let mut report = Report::default();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                for d in 0..=max {
                    let m = fmatrix(a, b, c, d, params)?;
                    if m.is_empty() {
                        continue;
                    }
                    let (pa, pb, pc, pd) = fmatrix_inverse_labels(a, b, c, d);
                    let inv = fmatrix(pa, pb, pc, pd, params)?;
                    report.push("inverse", vec![a, b, c, d], m.product_deviation(&inv)?);
                    report.push("transpose", vec![a, b, c, d], m.transpose_deviation(&inv)?);
                }
            }
        }
    }
    Ok(report)
}

/// Braid-relation sweep on one fusion basis: adjacent relations
/// `s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}` and far commutation
/// `s_i s_j = s_j s_i` for `|i-j| >= 2`.
pub fn check_braid_relations(
    n: usize,
    leaf: usize,
    total: usize,
    params: &RootParams,
) -> Result<Report> {
    let mut report = Report::default();
    let basis = enumerate_basis(n, leaf, total, params)?;
    if basis.dim() == 0 {
        return Ok(report);
    }
    let sigmas: Vec<_> = (1..n).map(|i| sigma_matrix(&basis, i)).collect::<Result<_>>()?;
    for i in 0..sigmas.len() {
        if i + 1 < sigmas.len() {
            let (s, t) = (&sigmas[i], &sigmas[i + 1]);
            let lhs = s.mul(t).mul(s);
            let rhs = t.mul(s).mul(t);
            report.push(
                "braid_relation",
                vec![n, leaf, total, i + 1],
                lhs.max_diff(&rhs),
            );
        }
        for j in i + 2..sigmas.len() {
            let (s, t) = (&sigmas[i], &sigmas[j]);
            report.push(
                "far_commutation",
                vec![n, leaf, total, i + 1, j + 1],
                s.mul(t).max_diff(&t.mul(s)),
            );
        }
    }
    Ok(report)
}

// ---- pentagon ----

/// Dense real matrix keyed by explicit index sets; a small helper for the
/// route comparisons.
struct RouteMat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RouteMat {
    fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    fn max_diff(&self, rhs: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn position(set: &[(usize, usize)], key: (usize, usize)) -> usize {
    set.binary_search(&key).expect("route index present")
}

/// Pentagon sweep: both recoupling routes from `(((a b) c) d)` to
/// `(a (b (c d)))` — two moves against three — must agree entrywise for all
/// outer labels up to `max_label` and every total charge.
pub fn pentagon_check(params: &RootParams, max_label: usize) -> Result<Report> {
    let max = max_label.min(params.max_label());
    let adm = |x: usize, y: usize, z: usize| is_admissible(x, y, z, Some(params));
    let mut report = Report::default();
    let labels = 0..=max;
    for a in labels.clone() {
        for b in labels.clone() {
            for c in labels.clone() {
                for d in labels.clone() {
                    for t in 0..=params.max_label() {
                        let lab = 0..=params.max_label();
                        // basis index sets for the five trees
                        let s1: Vec<(usize, usize)> = lab
                            .clone()
                            .flat_map(|x| lab.clone().map(move |y| (x, y)))
                            .filter(|&(x, y)| adm(a, b, x) && adm(x, c, y) && adm(y, d, t))
                            .collect();
                        if s1.is_empty() {
                            continue;
                        }
                        let s2: Vec<(usize, usize)> = lab
                            .clone()
                            .flat_map(|x| lab.clone().map(move |w| (x, w)))
                            .filter(|&(x, w)| adm(a, b, x) && adm(c, d, w) && adm(x, w, t))
                            .collect();
                        let s3: Vec<(usize, usize)> = lab
                            .clone()
                            .flat_map(|w| lab.clone().map(move |v| (w, v)))
                            .filter(|&(w, v)| adm(c, d, w) && adm(b, w, v) && adm(a, v, t))
                            .collect();
                        let s4: Vec<(usize, usize)> = lab
                            .clone()
                            .flat_map(|z| lab.clone().map(move |y| (z, y)))
                            .filter(|&(z, y)| adm(b, c, z) && adm(a, z, y) && adm(y, d, t))
                            .collect();
                        let s5: Vec<(usize, usize)> = lab
                            .clone()
                            .flat_map(|z| lab.clone().map(move |s| (z, s)))
                            .filter(|&(z, s)| adm(b, c, z) && adm(z, d, s) && adm(a, s, t))
                            .collect();

                        // route A: S1 -> S2 -> S3
                        let mut g12 = RouteMat::zeros(s2.len(), s1.len());
                        for &(x, y) in &s1 {
                            let m = fmatrix(x, c, d, t, params)?;
                            let yi = m.row_labels().iter().position(|&l| l == y).unwrap();
                            for (ji, &w) in m.col_labels().iter().enumerate() {
                                g12.set(
                                    position(&s2, (x, w)),
                                    position(&s1, (x, y)),
                                    m.entry(yi, ji),
                                );
                            }
                        }
                        let mut g23 = RouteMat::zeros(s3.len(), s2.len());
                        for &(x, w) in &s2 {
                            let m = fmatrix(a, b, w, t, params)?;
                            let xi = m.row_labels().iter().position(|&l| l == x).unwrap();
                            for (ji, &v) in m.col_labels().iter().enumerate() {
                                g23.set(
                                    position(&s3, (w, v)),
                                    position(&s2, (x, w)),
                                    m.entry(xi, ji),
                                );
                            }
                        }
                        let route_a = g23.mul(&g12);

                        // route B: S1 -> S4 -> S5 -> S3
                        let mut g14 = RouteMat::zeros(s4.len(), s1.len());
                        for &(x, y) in &s1 {
                            let m = fmatrix(a, b, c, y, params)?;
                            let xi = m.row_labels().iter().position(|&l| l == x).unwrap();
                            for (ji, &z) in m.col_labels().iter().enumerate() {
                                g14.set(
                                    position(&s4, (z, y)),
                                    position(&s1, (x, y)),
                                    m.entry(xi, ji),
                                );
                            }
                        }
                        let mut g45 = RouteMat::zeros(s5.len(), s4.len());
                        for &(z, y) in &s4 {
                            let m = fmatrix(a, z, d, t, params)?;
                            let yi = m.row_labels().iter().position(|&l| l == y).unwrap();
                            for (ji, &s) in m.col_labels().iter().enumerate() {
                                g45.set(
                                    position(&s5, (z, s)),
                                    position(&s4, (z, y)),
                                    m.entry(yi, ji),
                                );
                            }
                        }
                        let mut g53 = RouteMat::zeros(s3.len(), s5.len());
                        for &(z, s) in &s5 {
                            let m = fmatrix(b, c, d, s, params)?;
                            let zi = m.row_labels().iter().position(|&l| l == z).unwrap();
                            for (ji, &w) in m.col_labels().iter().enumerate() {
                                g53.set(
                                    position(&s3, (w, s)),
                                    position(&s5, (z, s)),
                                    m.entry(zi, ji),
                                );
                            }
                        }
                        let route_b = g53.mul(&g45.mul(&g14));

                        report.push(
                            "pentagon",
                            vec![a, b, c, d, t],
                            route_a.max_diff(&route_b),
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

// ---- hexagon ----

struct CRouteMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CRouteMat {
    fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self.get(i, k);
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += v * rhs.get(k, j);
                }
            }
        }
        out
    }

    fn max_diff(&self, rhs: &Self) -> f64 {
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Hexagon sweep: braiding `w` past the fused pair `(u, v)` in one move must
/// equal braiding past `u` and `v` step by step through recoupled bases.
/// Both orientations (phases and conjugate phases) are checked.
pub fn hexagon_check(params: &RootParams, max_label: usize) -> Result<Report> {
    let max = max_label.min(params.max_label());
    let adm = |x: usize, y: usize, z: usize| is_admissible(x, y, z, Some(params));
    let mut report = Report::default();
    for w in 0..=max {
        for u in 0..=max {
            for v in 0..=max {
                for t in 0..=params.max_label() {
                    let lab = 0..=params.max_label();
                    let p_set: Vec<usize> =
                        lab.clone().filter(|&x| adm(w, u, x) && adm(x, v, t)).collect();
                    if p_set.is_empty() {
                        continue;
                    }
                    let q_set: Vec<usize> =
                        lab.clone().filter(|&y| adm(u, v, y) && adm(w, y, t)).collect();
                    for mirror in [false, true] {
                        let lam = |x: usize, y: usize, c: usize| -> Result<Complex64> {
                            let val = braid_phase_poly(x, y, c)?.eval_at_root(params);
                            Ok(if mirror { val.conj() } else { val })
                        };
                        // route 1: recouple, then braid w past the composite
                        let f1 = fmatrix(w, u, v, t, params)?;
                        let mut route1 = CRouteMat::zeros(q_set.len(), p_set.len());
                        for (xi, _) in p_set.iter().enumerate() {
                            for (yi, &y) in q_set.iter().enumerate() {
                                route1.set(
                                    yi,
                                    xi,
                                    lam(w, y, t)? * Complex64::new(f1.entry(xi, yi), 0.0),
                                );
                            }
                        }
                        // route 2: braid w past u, recouple, braid w past v,
                        // recouple back
                        let f2 = fmatrix(u, w, v, t, params)?;
                        let z_set = f2.col_labels().to_vec();
                        let f4 = fmatrix(u, v, w, t, params)?;
                        debug_assert_eq!(f4.row_labels(), q_set.as_slice());
                        debug_assert_eq!(f4.col_labels(), z_set.as_slice());
                        let mut step1 = CRouteMat::zeros(p_set.len(), p_set.len());
                        for (xi, &x) in p_set.iter().enumerate() {
                            step1.set(xi, xi, lam(w, u, x)?);
                        }
                        let mut step2 = CRouteMat::zeros(z_set.len(), p_set.len());
                        debug_assert_eq!(f2.row_labels(), p_set.as_slice());
                        for (xi, _) in p_set.iter().enumerate() {
                            for (zi, _) in z_set.iter().enumerate() {
                                step2.set(zi, xi, Complex64::new(f2.entry(xi, zi), 0.0));
                            }
                        }
                        let mut step3 = CRouteMat::zeros(z_set.len(), z_set.len());
                        for (zi, &z) in z_set.iter().enumerate() {
                            step3.set(zi, zi, lam(w, v, z)?);
                        }
                        let mut step4 = CRouteMat::zeros(q_set.len(), z_set.len());
                        for (yi, _) in q_set.iter().enumerate() {
                            for (zi, _) in z_set.iter().enumerate() {
                                step4.set(yi, zi, Complex64::new(f4.entry(yi, zi), 0.0));
                            }
                        }
                        let route2 = step4.mul(&step3.mul(&step2.mul(&step1)));
                        let check = if mirror { "hexagon_mirror" } else { "hexagon" };
                        report.push(check, vec![w, u, v, t], route1.max_diff(&route2));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Exact oracle equivalence: closed-form theta, tetrahedron and projector
/// loop values against the diagrammatic engine. Deviations are 0.0 on exact
/// equality and 1.0 on any mismatch.
pub fn oracle_check(
    theta_sum_budget: usize,
    tet_label_budget: usize,
    projector_budget: usize,
) -> Result<Report> {
    let oracle = DiagramOracle::new();
    let mut report = Report::default();

    for a in 0..=theta_sum_budget {
        for b in 0..=theta_sum_budget {
            for c in 0..=theta_sum_budget {
                if a + b + c > theta_sum_budget || !is_admissible(a, b, c, None) {
                    continue;
                }
                let closed = theta_closed(a, b, c)?;
                let diagram = oracle.theta(a, b, c)?;
                report.push(
                    "theta_oracle",
                    vec![a, b, c],
                    if closed == diagram { 0.0 } else { 1.0 },
                );
            }
        }
    }

    let lab = 0..=tet_label_budget;
    for a in lab.clone() {
        for b in lab.clone() {
            for i in lab.clone() {
                for c in lab.clone() {
                    for d in lab.clone() {
                        for j in lab.clone() {
                            if !(is_admissible(a, b, i, None)
                                && is_admissible(c, d, i, None)
                                && is_admissible(a, d, j, None)
                                && is_admissible(b, c, j, None))
                            {
                                continue;
                            }
                            let closed = tet_closed(a, b, i, c, d, j)?;
                            let diagram = oracle.tet(a, b, i, c, d, j)?;
                            report.push(
                                "tet_oracle",
                                vec![a, b, i, c, d, j],
                                if closed == diagram { 0.0 } else { 1.0 },
                            );
                        }
                    }
                }
            }
        }
    }

    for n in 0..=projector_budget {
        let closed = RationalFunction::from_poly(qint::delta(n));
        let diagram = oracle.projector(n).trace_closure()?;
        report.push("delta_oracle", vec![n], if closed == diagram { 0.0 } else { 1.0 });
    }

    Ok(report)
}

/// Exact equivalence of the weighted representation trace against the
/// diagrammatic bracket for every braid word up to the given length.
///
/// Words are walked breadth-first so that each prefix product (both the
/// representation matrices and the Temperley-Lieb element) is computed once.
pub fn trace_closure_check(max_strands: usize, max_len: usize) -> Result<Report> {
    use crate::element::TLElement;
    use crate::projector::{crossing_element, CrossingSign};

    let mut report = Report::default();
    for n in 1..=max_strands {
        let sectors = crate::braid::exact_charge_sectors(n)?;
        let gens: Vec<i32> = (1..n as i32).flat_map(|i| [i, -i]).collect();
        let crossings: Vec<(i32, TLElement)> = gens
            .iter()
            .map(|&g| {
                let i = g.unsigned_abs() as usize;
                let sign =
                    if g > 0 { CrossingSign::Positive } else { CrossingSign::Negative };
                Ok((g, crossing_element(n, i, sign)?))
            })
            .collect::<Result<_>>()?;

        struct Node {
            letters: Vec<i32>,
            mats: Vec<crate::braid::RatMat>,
            diagram: TLElement,
        }
        let mut frontier = vec![Node {
            letters: Vec::new(),
            mats: sectors.iter().map(|s| s.identity()).collect(),
            diagram: TLElement::identity(n),
        }];
        for len in 0..=max_len {
            for node in &frontier {
                let mut lhs = RationalFunction::zero();
                for (sector, mat) in sectors.iter().zip(node.mats.iter()) {
                    let weight = RationalFunction::from_poly(qint::delta(sector.total));
                    lhs = &lhs + &(&weight * &mat.trace());
                }
                let rhs = node.diagram.trace_closure()?;
                let mut labels = vec![n];
                labels.extend(node.letters.iter().map(|&l| l.unsigned_abs() as usize));
                report.push("trace_closure", labels, if lhs == rhs { 0.0 } else { 1.0 });
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for node in &frontier {
                for (g, crossing) in &crossings {
                    let mut letters = node.letters.clone();
                    letters.push(*g);
                    let mats = sectors
                        .iter()
                        .zip(node.mats.iter())
                        .map(|(s, m)| s.extend(m, *g))
                        .collect();
                    let diagram = node.diagram.compose(crossing)?;
                    next.push(Node { letters, mats, diagram });
                }
            }
            frontier = next;
        }
    }
    Ok(report)
}
