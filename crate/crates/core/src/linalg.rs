//! Dense complex matrix helpers shared by every operator constructor.
//!
//! All operators (algebra elements, superoperators, Dirac operators) are
//! stored as [`DenseMatrix`]. Most of them are very sparse in practice
//! (monomials are phase permutations), so [`RowSparse`] offers a cheap
//! product for the axiom checks where dense `O(n^3)` products would dominate.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type DenseMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(n: usize) -> DenseMatrix {
    DenseMatrix::identity(n, n)
}

pub fn zeros(n: usize) -> DenseMatrix {
    DenseMatrix::zeros(n, n)
}

pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    a.kronecker(b)
}

pub fn commutator(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    a * b + b * a
}

/// Largest entry modulus.
pub fn max_abs(a: &DenseMatrix) -> f64 {
    a.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

/// `max |a_ij - b_ij|`; infinite on shape mismatch.
pub fn max_abs_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).norm()))
}

pub fn hermiticity_defect(a: &DenseMatrix) -> f64 {
    max_abs_diff(a, &a.adjoint())
}

pub fn unitarity_defect(a: &DenseMatrix) -> f64 {
    max_abs_diff(&(a.adjoint() * a), &identity(a.nrows()))
}

/// Integer power of a unitary matrix; negative exponents use the adjoint.
pub fn unitary_pow(a: &DenseMatrix, k: i64) -> DenseMatrix {
    let base = if k < 0 { a.adjoint() } else { a.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = identity(a.nrows());
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Entrywise complex conjugate.
pub fn conj(a: &DenseMatrix) -> DenseMatrix {
    a.map(|z| z.conj())
}

/// Row-compressed copy of a matrix, keeping entries above `1e-300` in modulus.
#[derive(Clone, Debug)]
pub struct RowSparse {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl RowSparse {
    pub fn from_dense(a: &DenseMatrix) -> Self {
        let rows = (0..a.nrows())
            .map(|i| {
                (0..a.ncols())
                    .filter_map(|j| {
                        let z = a[(i, j)];
                        (z.norm_sqr() > 1e-300).then_some((j, z))
                    })
                    .collect()
            })
            .collect();
        Self {
            nrows: a.nrows(),
            ncols: a.ncols(),
            rows,
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `self * b` with cost `nnz(self) * b.ncols()`.
    pub fn mul_dense(&self, b: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.ncols, b.nrows(), "RowSparse::mul_dense shape mismatch");
        let mut out = DenseMatrix::zeros(self.nrows, b.ncols());
        for (i, row) in self.rows.iter().enumerate() {
            for &(k, z) in row {
                for j in 0..b.ncols() {
                    out[(i, j)] += z * b[(k, j)];
                }
            }
        }
        out
    }
}

/// Product that exploits sparsity on whichever side has fewer nonzeros.
pub fn sparse_product(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let sa = RowSparse::from_dense(a);
    let bt = b.adjoint();
    let sbt = RowSparse::from_dense(&bt);
    if sa.nnz() <= sbt.nnz() {
        sa.mul_dense(b)
    } else {
        // (a b) = (b* a*)*
        sbt.mul_dense(&a.adjoint()).adjoint()
    }
}

/// `[a, b]` via [`sparse_product`].
pub fn sparse_commutator(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    sparse_product(a, b) - sparse_product(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize, seed: u64) -> DenseMatrix {
        let mut s = seed;
        DenseMatrix::from_fn(n, n, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((s >> 33) as f64) / (1u64 << 31) as f64 - 0.5;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let im = ((s >> 33) as f64) / (1u64 << 31) as f64 - 0.5;
            Complex64::new(re, im)
        })
    }

    #[test]
    fn sparse_product_matches_dense() {
        let a = sample(7, 1);
        let mut b = sample(7, 2);
        for i in 0..7 {
            for j in 0..7 {
                if (i + 2 * j) % 3 != 0 {
                    b[(i, j)] = ZERO;
                }
            }
        }
        assert!(max_abs_diff(&sparse_product(&a, &b), &(&a * &b)) < 1e-13);
        assert!(max_abs_diff(&sparse_product(&b, &a), &(&b * &a)) < 1e-13);
    }

    #[test]
    fn unitary_pow_negative_is_inverse() {
        let mut p = zeros(3);
        p[(1, 0)] = ONE;
        p[(2, 1)] = I;
        p[(0, 2)] = -ONE;
        let prod = unitary_pow(&p, 5) * unitary_pow(&p, -5);
        assert!(max_abs_diff(&prod, &identity(3)) < 1e-15);
        assert!(max_abs_diff(&unitary_pow(&p, 0), &identity(3)) == 0.0);
    }
}
