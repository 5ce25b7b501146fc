//! Acceptance suite: one test per headline guarantee, each printing a
//! pass/fail line (run with `--nocapture` to see them all).

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use spinnet::braid::{check_unitarity, closure_invariant_via_trace, compile_braid, BraidWord};
use spinnet::coherence::{
    check_braid_relations, hexagon_check, inverse_law_check, orthogonality_check, oracle_check,
    pentagon_check, trace_closure_check,
};
use spinnet::element::TLElement;
use spinnet::fusion::enumerate_basis;
use spinnet::network::DiagramOracle;
use spinnet::poly::LaurentPoly;
use spinnet::ratfn::RationalFunction;
use spinnet::recoupling::{braid_phase_poly, fmatrix, is_admissible, vertex_factor};
use spinnet::root::RootParams;

fn report(criterion: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {verdict} ({detail})");
    assert!(pass, "{criterion}: {detail}");
}

/// Orthogonality of the recoupling matrices across every level and label.
#[test]
fn criterion_01_orthogonality() {
    let mut worst = 0.0f64;
    let mut worst_imag = 0.0f64;
    for r in 3..=8 {
        let params = RootParams::with_default_tol(r).unwrap();
        let rep = orthogonality_check(&params, params.max_label()).unwrap();
        for e in &rep.entries {
            match e.check {
                "orthogonality" => worst = worst.max(e.deviation),
                "reality" => worst_imag = worst_imag.max(e.deviation),
                _ => {}
            }
        }
    }
    report(
        "1 (orthogonality r=3..8)",
        worst < 1e-9 && worst_imag < 1e-10,
        format!("max |MM^T - I| = {worst:.3e}, max imag = {worst_imag:.3e}"),
    );
}

/// Inverse and transpose laws under the outer-label rotation.
#[test]
fn criterion_02_inverse_transpose() {
    let mut worst_inv = 0.0f64;
    let mut worst_tr = 0.0f64;
    for r in 3..=8 {
        let params = RootParams::with_default_tol(r).unwrap();
        let rep = inverse_law_check(&params, params.max_label()).unwrap();
        for e in &rep.entries {
            match e.check {
                "inverse" => worst_inv = worst_inv.max(e.deviation),
                "transpose" => worst_tr = worst_tr.max(e.deviation),
                _ => {}
            }
        }
    }
    report(
        "2 (inverse/transpose laws r=3..8)",
        worst_inv < 1e-9 && worst_tr < 1e-10,
        format!("max |M M' - I| = {worst_inv:.3e}, max |M^T - M'| = {worst_tr:.3e}"),
    );
}

/// Exact agreement of the closed forms with the diagram engine.
#[test]
fn criterion_03_oracle_equivalence() {
    let rep = oracle_check(8, 3, 6).unwrap();
    let mismatches = rep.violations(0.0).len();
    report(
        "3 (closed forms = diagram oracle, exact)",
        mismatches == 0 && rep.len() > 100,
        format!("{} comparisons, {mismatches} mismatches", rep.len()),
    );
}

/// Projector laws: idempotence and the killing property, exactly.
#[test]
fn criterion_04_projector_laws() {
    let oracle = DiagramOracle::new();
    let mut failures = Vec::new();
    for n in 0..=6usize {
        let p = oracle.projector(n);
        if p.compose(&p).unwrap() != *p {
            failures.push(format!("P_{n}^2 != P_{n}"));
        }
        for i in 1..n {
            let e = TLElement::generator(n, i).unwrap();
            if !p.compose(&e).unwrap().is_zero() || !e.compose(&p).unwrap().is_zero() {
                failures.push(format!("P_{n} e_{i} != 0"));
            }
        }
    }
    report(
        "4 (projector laws n<=6, exact)",
        failures.is_empty(),
        if failures.is_empty() { "all identities exact".into() } else { failures.join("; ") },
    );
}

/// Vertex normalization factors are strictly positive reals.
#[test]
fn criterion_05_vertex_factor_positivity() {
    let mut checked = 0usize;
    let mut min_f = f64::INFINITY;
    for r in 3..=10 {
        let params = RootParams::with_default_tol(r).unwrap();
        let max = params.max_label();
        for a in 0..=max {
            for b in 0..=max {
                for c in 0..=max {
                    if !is_admissible(a, b, c, Some(&params)) {
                        continue;
                    }
                    let f = vertex_factor(a, b, c, &params).unwrap();
                    assert!(f.is_finite());
                    min_f = min_f.min(f);
                    checked += 1;
                }
            }
        }
    }
    report(
        "5 (vertex factor positivity r<=10)",
        min_f > 0.0 && checked > 0,
        format!("{checked} admissible triples, min f = {min_f:.6}"),
    );
}

/// Quantum-integer boundary: the label space ends where `[n]` vanishes.
/// (The sine form gives `[r] = 0` with `[1..=r-1]` strictly positive;
/// the vanishing index is `r`, equivalently `delta_{r-1} = 0`.)
#[test]
fn criterion_06_quantum_integer_boundary() {
    let mut worst_boundary = 0.0f64;
    let mut min_positive = f64::INFINITY;
    for r in 3..=10usize {
        let params = RootParams::with_default_tol(r).unwrap();
        worst_boundary = worst_boundary.max(params.quantum_int(r).abs());
        worst_boundary = worst_boundary.max(params.delta(r - 1).abs());
        for n in 0..=r - 2 {
            min_positive = min_positive.min(params.quantum_int(n + 1));
        }
    }
    report(
        "6 (quantum integer boundary r=3..10)",
        worst_boundary < 1e-12 && min_positive > 0.0,
        format!("max |[r]| = {worst_boundary:.3e}, min [n+1] = {min_positive:.6}"),
    );
}

/// Braid relations, far commutation, and unitarity of compiled words.
#[test]
fn criterion_07_braid_representation() {
    let mut worst_rel = 0.0f64;
    let mut worst_unitary = 0.0f64;
    let mut rng = StdRng::seed_from_u64(20260809);
    for &r in &[4usize, 5, 7] {
        let params = RootParams::with_default_tol(r).unwrap();
        for &n in &[3usize, 4, 5] {
            for &leaf in &[1usize, 2] {
                for t in 0..=params.max_label() {
                    let rep = check_braid_relations(n, leaf, t, &params).unwrap();
                    worst_rel = worst_rel.max(rep.max_deviation());
                }
                // random words, compiled on every nonempty charge sector
                let bases: Vec<_> = (0..=params.max_label())
                    .filter_map(|t| {
                        let b = enumerate_basis(n, leaf, t, &params).unwrap();
                        (b.dim() > 0).then_some(b)
                    })
                    .collect();
                for _ in 0..100 {
                    let len = rng.gen_range(0..=20);
                    let letters: Vec<i32> = (0..len)
                        .map(|_| {
                            let i = rng.gen_range(1..n as i32);
                            if rng.gen_bool(0.5) {
                                i
                            } else {
                                -i
                            }
                        })
                        .collect();
                    let word = BraidWord::new(n, letters).unwrap();
                    for basis in &bases {
                        let u = compile_braid(basis, &word).unwrap();
                        worst_unitary = worst_unitary.max(check_unitarity(&u));
                    }
                }
            }
        }
    }
    report(
        "7 (braid representation n=3..5, l=1,2, r=4,5,7)",
        worst_rel < 1e-9 && worst_unitary < 1e-9,
        format!("max relation dev = {worst_rel:.3e}, max unitarity dev = {worst_unitary:.3e}"),
    );
}

/// Pentagon and hexagon coherence sweeps.
#[test]
fn criterion_08_pentagon_hexagon() {
    let mut worst_pentagon = 0.0f64;
    let mut worst_hexagon = 0.0f64;
    for r in 4..=6usize {
        let params = RootParams::with_default_tol(r).unwrap();
        let max = params.max_label();
        worst_pentagon = worst_pentagon.max(pentagon_check(&params, max).unwrap().max_deviation());
        worst_hexagon = worst_hexagon.max(hexagon_check(&params, max).unwrap().max_deviation());
    }
    report(
        "8 (pentagon/hexagon r=4..6)",
        worst_pentagon < 1e-9 && worst_hexagon < 1e-9,
        format!("pentagon = {worst_pentagon:.3e}, hexagon = {worst_hexagon:.3e}"),
    );
}

/// The compiled representation's weighted trace reproduces the bracket of
/// the braid closure, exactly, word by word.
#[test]
fn criterion_09_knot_invariant_cross_check() {
    let rep = trace_closure_check(3, 6).unwrap();
    let mismatches = rep.violations(0.0).len();

    // the trefoil desk value
    let oracle = DiagramOracle::new();
    let trefoil = BraidWord::new(2, vec![-1, -1, -1]).unwrap();
    let bracket = oracle.bracket_closure(&trefoil).unwrap();
    let expected = RationalFunction::from_poly(LaurentPoly::from_terms(vec![
        (5, (-1).into()),
        (-3, (-1).into()),
        (-7, 1.into()),
    ]));
    let trefoil_ok = bracket.normalized == expected
        && closure_invariant_via_trace(&trefoil).unwrap() == bracket.raw;

    report(
        "9 (trace closure = bracket, words <= 6 on <= 3 strands, exact)",
        mismatches == 0 && rep.len() > 5000 && trefoil_ok,
        format!("{} words compared, {mismatches} mismatches, trefoil ok = {trefoil_ok}", rep.len()),
    );
}

/// The golden-ratio desk check: the level-5 label-2 theory.
#[test]
fn criterion_10_fibonacci_desk_check() {
    let r5 = RootParams::with_default_tol(5).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;

    let f = fmatrix(2, 2, 2, 2, &r5).unwrap();
    let expected = [1.0 / phi, 1.0 / phi.sqrt(), 1.0 / phi.sqrt(), -1.0 / phi];
    let mut worst = 0.0f64;
    for (k, e) in expected.iter().enumerate() {
        worst = worst.max((f.entries()[k] - e).abs());
    }

    // compiled generators on three strands of label 2
    let basis = enumerate_basis(3, 2, 2, &r5).unwrap();
    let s1 = spinnet::braid::sigma_matrix(&basis, 1).unwrap();
    let s2 = spinnet::braid::sigma_matrix(&basis, 2).unwrap();
    let lam0 = braid_phase_poly(2, 2, 0).unwrap().eval_at_root(&r5);
    let lam2 = braid_phase_poly(2, 2, 2).unwrap().eval_at_root(&r5);
    let mut dev = (s1[(0, 0)] - lam0).norm().max((s1[(1, 1)] - lam2).norm());
    dev = dev.max(s1[(0, 1)].norm()).max(s1[(1, 0)].norm());
    for i in 0..2 {
        for k in 0..2 {
            let via_f = f.entry(i, 0) * lam0 * f.entry(k, 0) + f.entry(i, 1) * lam2 * f.entry(k, 1);
            dev = dev.max((s2[(i, k)] - via_f).norm());
        }
    }

    report(
        "10 (golden-ratio recoupling matrix and generators)",
        worst < 1e-12 && dev < 1e-12,
        format!("F-matrix dev = {worst:.3e}, generator dev = {dev:.3e}"),
    );
}
