//! Generic quantum integers, factorials and projector loop values as exact
//! Laurent polynomials.

use num_bigint::BigInt;

use crate::poly::LaurentPoly;

/// The loop value `d = -A^2 - A^{-2}`: the scalar contributed by a closed
/// unknotted curve in a bracket evaluation.
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms(vec![(2, BigInt::from(-1)), (-2, BigInt::from(-1))])
}

/// Quantum integer `[n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2})` as an exact
/// Laurent polynomial; the division never leaves a remainder.
pub fn quantum_int(n: usize) -> LaurentPoly {
    let n = n as i64;
    let num = &LaurentPoly::monomial(2 * n, 1) - &LaurentPoly::monomial(-2 * n, 1);
    let den = &LaurentPoly::monomial(2, 1) - &LaurentPoly::monomial(-2, 1);
    num.div_exact(&den).expect("quantum integer division is exact")
}

/// Quantum factorial `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
pub fn quantum_fact(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for k in 1..=n {
        p = &p * &quantum_int(k);
    }
    p
}

/// Loop value of the closed `n`-strand projector,
/// `delta_n = (-1)^n (A^{2n+2} - A^{-2n-2}) / (A^2 - A^{-2}) = (-1)^n [n+1]`.
pub fn delta(n: usize) -> LaurentPoly {
    let q = quantum_int(n + 1);
    if n % 2 == 0 {
        q
    } else {
        -&q
    }
}
