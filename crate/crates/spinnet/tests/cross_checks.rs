//! Cross-module consistency: the closed-form braiding phases against the
//! diagrammatic crossing, and the homomorphism property of compiled words.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use spinnet::braid::{compile_braid, BraidWord};
use spinnet::element::TLElement;
use spinnet::fusion::enumerate_basis;
use spinnet::network::DiagramOracle;
use spinnet::projector::{crossing_element, CrossingSign};
use spinnet::ratfn::RationalFunction;
use spinnet::recoupling::braid_phase_poly;
use spinnet::root::RootParams;

/// The two channel scalars of the positive crossing on two strands, read off
/// diagrammatically, are exactly the braiding phases `lambda_c^{11}`.
#[test]
fn braiding_phases_match_crossing_channels() {
    let sigma = crossing_element(2, 1, CrossingSign::Positive).unwrap();
    let oracle = DiagramOracle::new();

    // cup-cap channel (c = 0): sigma e_1 = lambda_0^{11} e_1
    let e1 = TLElement::generator(2, 1).unwrap();
    let lam0 = RationalFunction::from_poly(braid_phase_poly(1, 1, 0).unwrap());
    assert_eq!(sigma.compose(&e1).unwrap(), e1.scaled(&lam0));

    // projector channel (c = 2): sigma P_2 = lambda_2^{11} P_2
    let p2 = oracle.projector(2);
    let lam2 = RationalFunction::from_poly(braid_phase_poly(1, 1, 2).unwrap());
    assert_eq!(sigma.compose(&p2).unwrap(), p2.scaled(&lam2));
}

/// Compilation is a homomorphism: random word pairs concatenate to the
/// product of their compiled unitaries.
#[test]
fn compile_is_a_homomorphism_on_random_words() {
    let mut rng = StdRng::seed_from_u64(42);
    for &r in &[4usize, 5, 7] {
        let params = RootParams::with_default_tol(r).unwrap();
        for &n in &[3usize, 4, 5] {
            for &leaf in &[1usize, 2] {
                let bases: Vec<_> = (0..=params.max_label())
                    .filter_map(|t| {
                        let b = enumerate_basis(n, leaf, t, &params).unwrap();
                        (b.dim() > 0).then_some(b)
                    })
                    .collect();
                for _ in 0..10 {
                    let mut random_word = |max_len: usize| -> BraidWord {
                        let len = rng.gen_range(0..=max_len);
                        let letters = (0..len)
                            .map(|_| {
                                let i = rng.gen_range(1..n as i32);
                                if rng.gen_bool(0.5) {
                                    i
                                } else {
                                    -i
                                }
                            })
                            .collect();
                        BraidWord::new(n, letters).unwrap()
                    };
                    let w1 = random_word(10);
                    let w2 = random_word(10);
                    let mut joined = w1.letters().to_vec();
                    joined.extend_from_slice(w2.letters());
                    let w12 = BraidWord::new(n, joined).unwrap();
                    for basis in &bases {
                        let u1 = compile_braid(basis, &w1).unwrap();
                        let u2 = compile_braid(basis, &w2).unwrap();
                        let u12 = compile_braid(basis, &w12).unwrap();
                        let dev = u12.max_diff(&u2.mul(&u1));
                        assert!(
                            dev < 1e-10,
                            "homomorphism deviation {dev:.3e} at n={n}, leaf={leaf}, r={r}"
                        );
                    }
                }
            }
        }
    }
}

/// Numeric trace closures agree with the exact generic values at several
/// roots, tying the compiled representation to the bracket across regimes.
#[test]
fn numeric_and_exact_closures_agree() {
    for r in [4usize, 5, 7] {
        let params = RootParams::with_default_tol(r).unwrap();
        for (n, letters) in [
            (2usize, vec![1, 1]),
            (3, vec![1, -2, 1]),
            (3, vec![2, 2, 1, -2]),
        ] {
            let word = BraidWord::new(n, letters).unwrap();
            let exact = spinnet::braid::closure_invariant_via_trace(&word).unwrap();
            let lhs = exact.eval_at_root(&params).unwrap();
            let rhs = spinnet::braid::closure_invariant_via_trace_at(&word, &params).unwrap();
            assert!((lhs - rhs).norm() < 1e-9, "closure mismatch at r={r}");
        }
    }
}
