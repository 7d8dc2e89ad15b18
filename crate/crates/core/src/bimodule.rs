//! The Hilbert space `𝔥 = M_N(C)` with `⟨ψ, φ⟩ = tr(ψ*φ)`, its left and right
//! actions as superoperators, the real structure `J = *` and the sector
//! decomposition under the deck group generated by `C^{N/2}`, `S^{N/2}`.
//!
//! Vectorization is row-major everywhere: entry `(i, j)` of `ψ` sits at
//! index `i·N + j`. Then `vec(AψB) = (A ⊗ Bᵀ) vec(ψ)`.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{conj, identity, kron, max_abs_diff, unitarity_defect, DenseMatrix, ONE, ZERO};
use crate::qroots::Phase;

/// A matrix `ψ ∈ M_N(C)` flattened row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorizedState {
    pub data: DVector<Complex64>,
    pub n: usize,
}

impl VectorizedState {
    pub fn vectorize(psi: &DenseMatrix) -> Self {
        let n = psi.nrows();
        let data = DVector::from_fn(n * n, |idx, _| psi[(idx / n, idx % n)]);
        Self { data, n }
    }

    pub fn devectorize(&self) -> DenseMatrix {
        let n = self.n;
        DenseMatrix::from_fn(n, n, |i, j| self.data[i * n + j])
    }

    /// `tr(ψ*φ)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.data.dotc(&other.data)
    }
}

/// `ψ ↦ M·conj(ψ)`.
#[derive(Clone, Debug)]
pub struct AntilinearOp {
    pub matrix: DenseMatrix,
}

impl AntilinearOp {
    pub fn new(matrix: DenseMatrix) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.matrix * v.map(|z| z.conj())
    }

    /// Matrix of `J B J^{-1}` for linear `B`, assuming `M` unitary.
    pub fn conjugate_linear(&self, b: &DenseMatrix) -> DenseMatrix {
        &self.matrix * conj(b) * self.matrix.adjoint()
    }

    /// `J²`, which is linear with matrix `M·conj(M)`.
    pub fn square(&self) -> DenseMatrix {
        &self.matrix * conj(&self.matrix)
    }

    /// `⟨Jψ, Jφ⟩ = ⟨φ, ψ⟩` holds iff `M` is unitary; returns `|M*M - 1|`.
    pub fn antiunitarity_defect(&self) -> f64 {
        unitarity_defect(&self.matrix)
    }

    /// `J ⊗ K` for antilinear factors.
    pub fn tensor(&self, other: &AntilinearOp) -> AntilinearOp {
        AntilinearOp::new(kron(&self.matrix, &other.matrix))
    }

    /// Compression `B* J B` by an isometry `B` whose range is `J`-invariant.
    pub fn compress(&self, isometry: &DenseMatrix) -> AntilinearOp {
        AntilinearOp::new(isometry.adjoint() * &self.matrix * conj(isometry))
    }
}

fn check_square(x: &DenseMatrix) -> Result<()> {
    if x.is_square() {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!(
            "expected a square matrix, got {:?}",
            x.shape()
        )))
    }
}

/// `L_X = X ⊗ 1`, so that `L_X vec(ψ) = vec(Xψ)`.
pub fn left_superop(x: &DenseMatrix) -> Result<DenseMatrix> {
    check_square(x)?;
    Ok(kron(x, &identity(x.nrows())))
}

/// `R_X = 1 ⊗ Xᵀ`, so that `R_X vec(ψ) = vec(ψX)`.
pub fn right_superop(x: &DenseMatrix) -> Result<DenseMatrix> {
    check_square(x)?;
    Ok(kron(&identity(x.nrows()), &x.transpose()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracket {
    Commutator,
    Anticommutator,
}

/// `L_X ∓ R_X`.
pub fn bracket_superop(x: &DenseMatrix, bracket: Bracket) -> Result<DenseMatrix> {
    let l = left_superop(x)?;
    let r = right_superop(x)?;
    Ok(match bracket {
        Bracket::Commutator => l - r,
        Bracket::Anticommutator => l + r,
    })
}

/// Permutation `P` with `P vec(ψ) = vec(ψᵀ)`.
pub fn transpose_permutation(n: usize) -> DenseMatrix {
    let mut p = DenseMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            p[(i * n + j, j * n + i)] = ONE;
        }
    }
    p
}

/// `J = *` on vectorized `M_N(C)`.
pub fn real_structure(n: usize) -> AntilinearOp {
    AntilinearOp::new(transpose_permutation(n))
}

/// Orthonormal basis `vec(C^k S^l)/√N` of the sector `(k, l) ≡ (h, j) mod 2`,
/// as the columns of an `N² × N²/4` isometry.
pub fn sector_basis(n: usize, h: u8, j: u8) -> Result<DenseMatrix> {
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    let q = Phase::new(2, n as i128);
    let norm = 1.0 / (n as f64).sqrt();
    let ks: Vec<usize> = (0..n).filter(|k| k % 2 == h as usize).collect();
    let ls: Vec<usize> = (0..n).filter(|l| l % 2 == j as usize).collect();
    let mut b = DenseMatrix::zeros(n * n, ks.len() * ls.len());
    for (ik, &k) in ks.iter().enumerate() {
        for (il, &l) in ls.iter().enumerate() {
            let col = ik * ls.len() + il;
            // (C^k S^l)_{r, s} = q^{rk} δ_{r, s + l}
            for s in 0..n {
                let r = (s + l) % n;
                b[(r * n + s, col)] = q.pow((r * k) as i64).value() * norm;
            }
        }
    }
    Ok(b)
}

/// Orthogonal projector onto the sector `(h, j)`.
pub fn sector_project(n: usize, h: u8, j: u8) -> Result<DenseMatrix> {
    let b = sector_basis(n, h, j)?;
    Ok(&b * b.adjoint())
}

/// `max |J ψ - ψ*|` over the standard basis; a self-check of the vec convention.
pub fn real_structure_defect(n: usize) -> f64 {
    let j = real_structure(n);
    let mut worst = 0.0_f64;
    for idx in 0..n * n {
        let mut psi = DenseMatrix::from_element(n, n, ZERO);
        psi[(idx / n, idx % n)] = Complex64::new(0.3, 0.7);
        let lhs = j.apply(&VectorizedState::vectorize(&psi).data);
        let rhs = VectorizedState::vectorize(&psi.adjoint()).data;
        worst = worst.max((lhs - rhs).camax());
    }
    worst.max(max_abs_diff(&j.square(), &identity(n * n)))
}
