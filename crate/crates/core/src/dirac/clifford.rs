//! Gamma matrices on `C^4`, chirality and the spinor real structure `j`.

use crate::bimodule::AntilinearOp;
use crate::linalg::{DenseMatrix, I, ONE, ZERO};

#[derive(Clone, Debug)]
pub struct CliffordModule {
    pub gammas: [DenseMatrix; 4],
    /// `γ = γ¹γ²γ³γ⁴`.
    pub chirality: DenseMatrix,
    /// `j(v₁, v₂, v₃, v₄) = (v̄₂, -v̄₁, -v̄₄, v̄₃)`.
    pub spinor_real: AntilinearOp,
}

impl CliffordModule {
    /// Product `γ^{i₁} γ^{i₂} ...` of one-based indices.
    pub fn product(&self, indices: &[usize]) -> DenseMatrix {
        indices
            .iter()
            .fold(DenseMatrix::identity(4, 4), |acc, &i| acc * &self.gammas[i - 1])
    }
}

fn m4(rows: [[i8; 4]; 4], unit: num_complex::Complex64) -> DenseMatrix {
    DenseMatrix::from_fn(4, 4, |r, c| match rows[r][c] {
        0 => ZERO,
        s => unit * f64::from(s),
    })
}

pub fn clifford_module() -> CliffordModule {
    let g1 = m4([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], I);
    let g2 = m4([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], ONE);
    let g3 = m4([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]], I);
    let g4 = m4([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], ONE);
    let chirality = &g1 * &g2 * &g3 * &g4;
    let jm = m4([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], ONE);
    CliffordModule {
        gammas: [g1, g2, g3, g4],
        chirality,
        spinor_real: AntilinearOp::new(jm),
    }
}
