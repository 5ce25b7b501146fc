//! Evaluation at roots of unity `A = e^{i pi / 2r}`.
//!
//! At these values the loop parameter becomes `d = -2cos(pi/r)` and the
//! recoupling theory truncates to the labels `0..=r-2`. Quantum integers are
//! computed from sine ratios rather than by substituting powers of `A`, which
//! keeps them exactly real.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratfn::RationalFunction;

/// Default numeric comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Parameters of the root of unity `A = e^{i pi / 2r}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootParams {
    r: usize,
    tol: f64,
}

impl RootParams {
    /// Creates parameters for level `r >= 3` with comparison tolerance `tol > 0`.
    pub fn new(r: usize, tol: f64) -> Result<Self> {
        if r < 3 {
            return Err(Error::Parse(format!("level r must be >= 3, got {r}")));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::Parse(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Self { r, tol })
    }

    /// Level `r` with the default tolerance.
    pub fn with_default_tol(r: usize) -> Result<Self> {
        Self::new(r, DEFAULT_TOL)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// The phase angle of `A`, i.e. `pi / 2r`.
    pub fn angle(&self) -> f64 {
        PI / (2.0 * self.r as f64)
    }

    /// The value of `A` itself.
    pub fn a_value(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle())
    }

    /// Largest admissible label, `r - 2`.
    pub fn max_label(&self) -> usize {
        self.r - 2
    }

    /// Quantum integer `[n] = sin(n pi / r) / sin(pi / r)`.
    pub fn quantum_int(&self, n: usize) -> f64 {
        let r = self.r as f64;
        (n as f64 * PI / r).sin() / (PI / r).sin()
    }

    /// Quantum factorial `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
    pub fn quantum_fact(&self, n: usize) -> f64 {
        (1..=n).map(|k| self.quantum_int(k)).product()
    }

    /// Loop value of the `n`-strand projector closure,
    /// `delta_n = (-1)^n [n+1]`.
    pub fn delta(&self, n: usize) -> f64 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sign * self.quantum_int(n + 1)
    }

    /// The loop value `d = -A^2 - A^{-2} = -2cos(pi/r)`.
    pub fn loop_value(&self) -> f64 {
        -2.0 * (PI / self.r as f64).cos()
    }

    /// Quantum integer computed through complex powers of `A`,
    /// `(A^{2n} - A^{-2n}) / (A^2 - A^{-2})`.
    ///
    /// Mathematically real; the residual imaginary part measures phase error
    /// and is used by reality checks as a route independent of the sine form.
    pub fn quantum_int_complex(&self, n: usize) -> Complex64 {
        let pw = |e: f64| Complex64::from_polar(1.0, self.angle() * e);
        let den = pw(2.0) - pw(-2.0);
        (pw(2.0 * n as f64) - pw(-2.0 * n as f64)) / den
    }

    /// Quantum factorial along the complex route.
    pub fn quantum_fact_complex(&self, n: usize) -> Complex64 {
        (1..=n).map(|k| self.quantum_int_complex(k)).product()
    }
}

/// A scalar that is either exact (a rational function of `A`) or numeric
/// (evaluated at a specific root of unity).
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarValue {
    Exact(RationalFunction),
    Numeric { value: Complex64, params: RootParams },
}

impl ScalarValue {
    /// Evaluates an exact scalar at a root; numeric scalars are returned as-is
    /// when the parameters agree.
    pub fn numeric(&self, params: &RootParams) -> Result<Complex64> {
        match self {
            ScalarValue::Exact(rf) => rf.eval_at_root(params),
            ScalarValue::Numeric { value, params: p } => {
                if p.r() == params.r() {
                    Ok(*value)
                } else {
                    Err(Error::Parse(format!(
                        "numeric scalar was evaluated at r={}, requested r={}",
                        p.r(),
                        params.r()
                    )))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(RootParams::new(2, 1e-10).is_err());
        assert!(RootParams::new(5, 0.0).is_err());
        assert!(RootParams::new(3, 1e-10).is_ok());
    }

    #[test]
    fn quantum_int_boundary_vanishes() {
        // [r] = 0 at every level; [1..=r-1] are strictly positive.
        for r in 3..=10 {
            let p = RootParams::with_default_tol(r).unwrap();
            assert!(p.quantum_int(r).abs() < 1e-12, "[r] must vanish at r={r}");
            for n in 1..r {
                assert!(p.quantum_int(n) > 0.0, "[{n}] must be positive at r={r}");
            }
        }
    }

    #[test]
    fn loop_value_examples() {
        let p3 = RootParams::with_default_tol(3).unwrap();
        assert!((p3.loop_value() - (-1.0)).abs() < 1e-12);
        let p4 = RootParams::with_default_tol(4).unwrap();
        assert!((p4.loop_value() - (-(2f64.sqrt()))).abs() < 1e-12);
    }

    #[test]
    fn scalar_value_bridges_regimes() {
        use crate::poly::LaurentPoly;
        let p5 = RootParams::with_default_tol(5).unwrap();
        let exact = ScalarValue::Exact(RationalFunction::from_poly(LaurentPoly::from_terms(
            [(2i64, 1.into()), (-2i64, 1.into())],
        )));
        let v = exact.numeric(&p5).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((v.re - phi).abs() < 1e-12);
        let frozen = ScalarValue::Numeric { value: v, params: p5 };
        assert_eq!(frozen.numeric(&p5).unwrap(), v);
        let p7 = RootParams::with_default_tol(7).unwrap();
        assert!(frozen.numeric(&p7).is_err());
    }

    #[test]
    fn golden_ratio_at_r5() {
        let p = RootParams::with_default_tol(5).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((p.quantum_int(2) - phi).abs() < 1e-12);
        assert!((p.quantum_int(3) - phi).abs() < 1e-12);
        // [3]! = [3][2][1] = phi^2
        assert!((p.quantum_fact(3) - phi * phi).abs() < 1e-10);
    }
}
