//! Assembled real spectral triples and the axiom suite.

use rayon::prelude::*;
use serde::Serialize;

use super::clifford::clifford_module;
use super::intertwiner::full_real_structure;
use super::operator::{chirality_operator, dirac_operator};
use crate::bimodule::{left_superop, AntilinearOp};
use crate::clockshift::FuzzyTorus;
use crate::error::Result;
use crate::linalg::{
    anticommutator, conj, hermiticity_defect, identity, kron, max_abs, max_abs_diff, sparse_commutator,
    sparse_product, unitarity_defect, unitary_pow, DenseMatrix,
};
use crate::metric::IntegerMetric;

/// Relative tolerance; a check passes when its violation is at most `AXIOM_TOL · dim`.
pub const AXIOM_TOL: f64 = 1e-10;

/// Default largest generator period for which the full monomial basis is used.
pub const DEFAULT_BASIS_LIMIT: usize = 4;

/// `(𝓗, A, D, J, Γ)` with `A` generated by the torus unitaries.
///
/// `𝓗` is `C^4 ⊗ M_N(C)` or, when `embed` is set, the range of that isometry
/// inside it; the algebra then acts by compressing `1 ⊗ L_a`.
#[derive(Clone, Debug)]
pub struct SpectralTriple {
    pub hilbert_dim: usize,
    pub torus: FuzzyTorus,
    pub d: DenseMatrix,
    pub j: AntilinearOp,
    pub gamma: DenseMatrix,
    pub ko_dim: u8,
    pub embed: Option<DenseMatrix>,
}

impl SpectralTriple {
    /// The triple of the metric `A` on `C^4 ⊗ M_N(C)`.
    pub fn fuzzy(torus: &FuzzyTorus, metric: &IntegerMetric) -> Result<Self> {
        let p = torus.derived_pair(metric)?;
        let d = dirac_operator(&p.x, &p.y, p.xi.q_quarter())?;
        Ok(Self::with_dirac(torus, d))
    }

    /// Full-space triple with a caller-supplied Dirac operator.
    pub fn with_dirac(torus: &FuzzyTorus, d: DenseMatrix) -> Self {
        let n = torus.dim();
        Self {
            hilbert_dim: 4 * n * n,
            torus: torus.clone(),
            d,
            j: full_real_structure(n),
            gamma: chirality_operator(&clifford_module(), n),
            ko_dim: 4,
            embed: None,
        }
    }

    /// `π(a)` on `𝓗`.
    pub fn represent(&self, a: &DenseMatrix) -> Result<DenseMatrix> {
        let full = kron(&identity(4), &left_superop(a)?);
        Ok(match &self.embed {
            Some(b) => b.adjoint() * sparse_product(&full, b),
            None => full,
        })
    }

    /// `J B J^{-1}`.
    pub fn opposite(&self, b: &DenseMatrix) -> DenseMatrix {
        self.j.conjugate_linear(b)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub violation: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub dim: usize,
    pub ko_dim: u8,
    pub tolerance: f64,
    pub basis_size: usize,
    pub checks: Vec<AxiomCheck>,
    pub pass: bool,
}

impl AxiomReport {
    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_violation(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| m.max(c.violation))
    }
}

/// Smallest `p >= 1` with `U^p = 1`.
fn period(u: &DenseMatrix) -> usize {
    let n = u.nrows();
    let one = identity(n);
    let mut acc = u.clone();
    for p in 1..=n * n {
        if max_abs_diff(&acc, &one) < 1e-9 {
            return p;
        }
        acc = sparse_product(&acc, u);
    }
    n * n
}

/// All `U^m V^n` when both periods are at most `basis_limit`, otherwise
/// `{U, V, U*, V*, UV}`.
fn algebra_basis(torus: &FuzzyTorus, basis_limit: usize) -> Vec<DenseMatrix> {
    let (u, v) = (torus.u(), torus.v());
    let (pu, pv) = (period(u), period(v));
    if pu <= basis_limit && pv <= basis_limit {
        let mut out = Vec::with_capacity(pu * pv);
        for m in 0..pu as i64 {
            for n in 0..pv as i64 {
                out.push(unitary_pow(u, m) * unitary_pow(v, n));
            }
        }
        out
    } else {
        vec![u.clone(), v.clone(), u.adjoint(), v.adjoint(), u * v]
    }
}

/// Runs the nine checks of a real spectral triple of KO-dimension 4.
pub fn verify_axioms(triple: &SpectralTriple, basis_limit: usize) -> Result<AxiomReport> {
    verify_axioms_with_tol(triple, basis_limit, AXIOM_TOL)
}

/// [`verify_axioms`] with the relative tolerance `tol · dim`.
pub fn verify_axioms_with_tol(triple: &SpectralTriple, basis_limit: usize, tol: f64) -> Result<AxiomReport> {
    let dim = triple.hilbert_dim;
    let tolerance = tol * dim as f64;
    let (d, g, m) = (&triple.d, &triple.gamma, &triple.j.matrix);

    let basis = algebra_basis(&triple.torus, basis_limit);
    let reps: Vec<DenseMatrix> = basis.iter().map(|a| triple.represent(a)).collect::<Result<_>>()?;
    let opp: Vec<DenseMatrix> = reps.iter().map(|b| triple.opposite(b)).collect();
    let opp_adj: Vec<DenseMatrix> = reps.iter().map(|b| triple.opposite(&b.adjoint())).collect();
    let da: Vec<DenseMatrix> = reps.iter().map(|a| sparse_commutator(d, a)).collect();

    let pairs: Vec<(usize, usize)> = (0..reps.len())
        .flat_map(|i| (0..reps.len()).map(move |k| (i, k)))
        .collect();
    let (zeroth, first) = pairs
        .par_iter()
        .map(|&(i, k)| {
            (
                max_abs(&sparse_commutator(&reps[i], &opp_adj[k])),
                max_abs(&sparse_commutator(&da[i], &opp[k])),
            )
        })
        .reduce(|| (0.0, 0.0), |x, y| (x.0.max(y.0), x.1.max(y.1)));
    let gamma_alg = reps
        .iter()
        .map(|a| max_abs(&sparse_commutator(g, a)))
        .fold(0.0, f64::max);

    let violations = [
        ("hermiticity", hermiticity_defect(d)),
        ("j_antiunitary", unitarity_defect(m)),
        ("j_squared", max_abs(&(triple.j.square() + identity(dim)))),
        ("j_gamma_commute", max_abs_diff(&sparse_product(m, &conj(g)), &sparse_product(g, m))),
        ("d_j_commute", max_abs_diff(&sparse_product(d, m), &sparse_product(m, &conj(d)))),
        ("d_gamma_anticommute", max_abs(&anticommutator(d, g))),
        ("zeroth_order", zeroth),
        ("first_order", first),
        ("gamma_algebra_commute", gamma_alg),
    ];
    let checks: Vec<AxiomCheck> = violations
        .into_iter()
        .map(|(name, violation)| AxiomCheck {
            name,
            violation,
            pass: violation <= tolerance,
        })
        .collect();
    Ok(AxiomReport {
        dim,
        ko_dim: triple.ko_dim,
        tolerance,
        basis_size: basis.len(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qroots::RootOfUnity;
    use num_complex::Complex64;

    fn triple(n: i64, metric: IntegerMetric) -> SpectralTriple {
        let root = RootOfUnity::with_default_branches(n, 1).unwrap();
        SpectralTriple::fuzzy(&FuzzyTorus::clock_shift(&root), &metric).unwrap()
    }

    #[test]
    fn square_n2_passes() {
        let t = triple(2, IntegerMetric::identity());
        assert_eq!(t.hilbert_dim, 16);
        let r = verify_axioms(&t, DEFAULT_BASIS_LIMIT).unwrap();
        assert_eq!(r.checks.len(), 9);
        assert_eq!(r.basis_size, 4);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn corrupted_dirac_fails() {
        let mut t = triple(3, IntegerMetric::identity());
        t.d[(0, 5)] += Complex64::from(1e-3);
        let r = verify_axioms(&t, DEFAULT_BASIS_LIMIT).unwrap();
        assert!(!r.pass);
        assert!(!r.check("hermiticity").unwrap().pass || !r.check("first_order").unwrap().pass);
    }

    #[test]
    fn stretched_n4_full_basis() {
        let t = triple(4, IntegerMetric::new(2, 0, 0, 1).unwrap());
        let r = verify_axioms(&t, 4).unwrap();
        assert_eq!(r.basis_size, 16);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn larger_orders_use_generators() {
        let t = triple(5, IntegerMetric::new(1, 1, 0, 2).unwrap());
        let r = verify_axioms(&t, DEFAULT_BASIS_LIMIT).unwrap();
        assert_eq!(r.basis_size, 5);
        assert!(r.pass, "{r:?}");
    }
}
