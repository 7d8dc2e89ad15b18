//! Unitaries `𝒰_L`, `𝒰_R` with `𝒰 D² 𝒰* = 1 ⊗ Δ` when `σ_c = 0`.

use super::clifford::clifford_module;
use crate::bimodule::{left_superop, real_structure, AntilinearOp};
use crate::clockshift::FuzzyTorus;
use crate::error::{Error, Result};
use crate::linalg::{kron, DenseMatrix, I};
use crate::metric::IntegerMetric;

/// `𝒰_L = ¼( i(γ¹γ² - γ³γ⁴) ⊗ (H* - H) - i(γ¹γ² + γ³γ⁴) ⊗ (T* - T)
///          + (1 + γ) ⊗ (H + H*) + (1 - γ) ⊗ (T + T*) )`
/// acting by left multiplication, with `T = E^{((a+c)/2, (b+d)/2)}` and
/// `H = E^{((c-a)/2, (d-b)/2)}`.
pub fn intertwiner_ul(metric: &IntegerMetric, torus: &FuzzyTorus) -> Result<DenseMatrix> {
    let IntegerMetric { a, b, c, d } = *metric;
    if metric.canonical_spin_structure() != (0, 0) {
        return Err(Error::ParityMismatch(format!(
            "metric {metric} has σ_c = {:?}; intertwiners need (0, 0)",
            metric.canonical_spin_structure()
        )));
    }
    let t = torus.monomial((a + c) / 2, (b + d) / 2);
    let h = torus.monomial((c - a) / 2, (d - b) / 2);
    let (lt, lts) = (left_superop(&t)?, left_superop(&t.adjoint())?);
    let (lh, lhs) = (left_superop(&h)?, left_superop(&h.adjoint())?);
    let cl = clifford_module();
    let g12 = cl.product(&[1, 2]);
    let g34 = cl.product(&[3, 4]);
    let one = DenseMatrix::identity(4, 4);
    let u = kron(&((&g12 - &g34) * I), &(&lhs - &lh)) - kron(&((&g12 + &g34) * I), &(&lts - &lt))
        + kron(&(&one + &cl.chirality), &(&lh + &lhs))
        + kron(&(&one - &cl.chirality), &(&lt + &lts));
    Ok(u * num_complex::Complex64::from(0.25))
}

/// Real structure `J = j ⊗ *` on `C^4 ⊗ M_N(C)`.
pub fn full_real_structure(n: usize) -> AntilinearOp {
    clifford_module().spinor_real.tensor(&real_structure(n))
}

/// `𝒰_R = J 𝒰_L J^{-1}`.
pub fn intertwiner_ur(metric: &IntegerMetric, torus: &FuzzyTorus) -> Result<DenseMatrix> {
    let ul = intertwiner_ul(metric, torus)?;
    Ok(full_real_structure(torus.dim()).conjugate_linear(&ul))
}
