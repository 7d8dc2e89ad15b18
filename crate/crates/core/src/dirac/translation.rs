//! The translation action `Π_{(j,n)}` on `C^4 ⊗ M_N(C)`.

use num_complex::Complex64;

use super::clifford::clifford_module;
use crate::bimodule::{left_superop, right_superop};
use crate::clockshift::FuzzyTorus;
use crate::error::Result;
use crate::linalg::{kron, DenseMatrix};
use crate::metric::IntegerMetric;

/// `exp(-α γ^{ij} / 2) = cos(α/2) - sin(α/2) γ^{ij}`, valid since `(γ^{ij})² = -1`.
fn spin_rotation(gij: &DenseMatrix, alpha: f64) -> DenseMatrix {
    let (s, c) = (alpha / 2.0).sin_cos();
    DenseMatrix::identity(4, 4) * Complex64::from(c) - gij * Complex64::from(s)
}

/// `W = exp(-½(γ¹γ²(aΘ + bΦ) + γ³γ⁴(cΘ + dΦ)))` with `Θ = 2πKj/N`, `Φ = 2πKn/N`,
/// where `K` is read off `q^{1/2} = e^{iπK/N}`.
pub fn spinor_factor(metric: &IntegerMetric, torus: &FuzzyTorus, j: i64, n: i64) -> DenseMatrix {
    let root = torus.root();
    let step = 2.0 * std::f64::consts::PI * root.effective_k() as f64 / root.order() as f64;
    let (theta, phi) = (step * j as f64, step * n as f64);
    let cl = clifford_module();
    let IntegerMetric { a, b, c, d } = *metric;
    // γ¹γ² and γ³γ⁴ commute, so the exponential factorises.
    spin_rotation(&cl.product(&[1, 2]), a as f64 * theta + b as f64 * phi)
        * spin_rotation(&cl.product(&[3, 4]), c as f64 * theta + d as f64 * phi)
}

/// `Π_{(j,n)}(v ⊗ m) = Wv ⊗ P m P^{-1}` with `P = V^{-j} U^n`.
pub fn translation_action(metric: &IntegerMetric, torus: &FuzzyTorus, j: i64, n: i64) -> Result<DenseMatrix> {
    let p = torus.translation_op(j, n);
    let ad = left_superop(&p)? * right_superop(&p.adjoint())?;
    Ok(kron(&spinor_factor(metric, torus, j, n), &ad))
}
