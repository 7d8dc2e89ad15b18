//! The scalar Laplacian `Δ_{X,Y}` on `M_N(C)` and its closed-form spectra.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bimodule::{bracket_superop, Bracket};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::metric::IntegerMetric;
use crate::qroots::RootOfUnity;

pub use crate::oracle::commutative_laplace_spectrum;

/// Smallest admissible `|Ξ^{1/2} - Ξ^{-1/2}|`.
pub const PREFACTOR_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaplaceSpectrumRecord {
    pub k: i64,
    pub l: i64,
    pub eigenvalue: f64,
    /// Parities `(k mod 2, l mod 2)` when the record belongs to a sector.
    pub sector: Option<(u8, u8)>,
}

/// `-(Ξ^{1/2} - Ξ^{-1/2})^{-2} ([X,[X*,·]] + [Y,[Y*,·]])`.
pub fn laplacian_superop(x: &DenseMatrix, y: &DenseMatrix, xi_half: Complex64) -> Result<DenseMatrix> {
    let pref = xi_half - xi_half.inv();
    if pref.norm() <= PREFACTOR_TOL {
        return Err(Error::DegenerateDeformation(format!(
            "Ξ^{{1/2}} - Ξ^{{-1/2}} = {pref}"
        )));
    }
    let cx = bracket_superop(x, Bracket::Commutator)?;
    let cxs = bracket_superop(&x.adjoint(), Bracket::Commutator)?;
    let cy = bracket_superop(y, Bracket::Commutator)?;
    let cys = bracket_superop(&y.adjoint(), Bracket::Commutator)?;
    let sum = &cx * &cxs + &cy * &cys;
    Ok(sum * (-1.0 / (pref * pref)))
}

/// Labels `-N/2 < k <= N/2`.
pub fn label_window(n: u64) -> std::ops::RangeInclusive<i64> {
    let n = n as i64;
    (n.div_euclid(2) - n + 1)..=n.div_euclid(2)
}

/// `λ_{k,l} = ([al-bk]² + [dk-cl]²) / [ad-bc]²` over the fundamental window,
/// with quantum integers taken in the torus root `Q`.
pub fn laplace_spectrum_formula(
    metric: &IntegerMetric,
    root: &RootOfUnity,
) -> Result<Vec<LaplaceSpectrumRecord>> {
    let det = root.qint(metric.det(), 1)?;
    if det.abs() <= PREFACTOR_TOL {
        return Err(Error::DegenerateDeformation(format!(
            "[{}]_q = {det:e}",
            metric.det()
        )));
    }
    let ks: Vec<i64> = label_window(root.order()).collect();
    let rows: Result<Vec<Vec<LaplaceSpectrumRecord>>> = ks
        .par_iter()
        .map(|&k| {
            label_window(root.order())
                .map(|l| {
                    let p = root.qint(metric.a * l - metric.b * k, 1)?;
                    let r = root.qint(metric.d * k - metric.c * l, 1)?;
                    Ok(LaplaceSpectrumRecord {
                        k,
                        l,
                        eigenvalue: (p * p + r * r) / (det * det),
                        sector: Some((k.rem_euclid(2) as u8, l.rem_euclid(2) as u8)),
                    })
                })
                .collect()
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

/// Eigenvalues `[m - h/2]_Q² + [n - j/2]_Q²` on the sector `(h, j)` of the
/// `X = C², Y = S²` torus, with `Q = q⁴` and `Q^{1/4} = q`.
///
/// The sector `(h, j)` is spanned by `C^k S^l` with `(k, l) ≡ (h, j) mod 2`;
/// writing `k = 2m - h`, `l = 2n - j` the labels run over `N/2` values each.
pub fn four_sector_laplace_spectrum(q: &RootOfUnity, h: u8, j: u8) -> Result<Vec<LaplaceSpectrumRecord>> {
    let n = q.order() as i64;
    if n % 2 != 0 {
        return Err(Error::OddDimension(n as usize));
    }
    let big_q = q.power(4);
    let mut out = Vec::with_capacity((n * n / 4) as usize);
    for m in 0..n / 2 {
        for nn in 0..n / 2 {
            let (k, l) = (2 * m - h as i64, 2 * nn - j as i64);
            let x = big_q.qint(k, 2)?;
            let y = big_q.qint(l, 2)?;
            out.push(LaplaceSpectrumRecord {
                k,
                l,
                eigenvalue: x * x + y * y,
                sector: Some((h, j)),
            });
        }
    }
    Ok(out)
}

pub fn eigenvalues(records: &[LaplaceSpectrumRecord]) -> Vec<f64> {
    let mut v: Vec<f64> = records.iter().map(|r| r.eigenvalue).collect();
    v.sort_by(f64::total_cmp);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{left_superop, right_superop, sector_basis, VectorizedState};
    use crate::clockshift::FuzzyTorus;
    use crate::linalg::{hermiticity_defect, identity, max_abs_diff};
    use crate::oracle::{hermitian_eigs, multiset_match, SPECTRUM_TOL};

    fn lap_cs(root: &RootOfUnity, metric: &IntegerMetric) -> Result<DenseMatrix> {
        let t = FuzzyTorus::clock_shift(root);
        let p = t.derived_pair(metric)?;
        laplacian_superop(&p.x, &p.y, p.xi.q_half())
    }

    #[test]
    fn degenerate_prefactor() {
        let id = identity(3);
        assert!(matches!(
            laplacian_superop(&id, &id, Complex64::from(1.0)),
            Err(Error::DegenerateDeformation(_))
        ));
        let root = RootOfUnity::with_default_branches(4, 1).unwrap();
        let sq = IntegerMetric::new(2, 0, 0, 2).unwrap();
        assert!(lap_cs(&root, &sq).is_err());
        assert!(laplace_spectrum_formula(&sq, &root).is_err());
    }

    #[test]
    fn square_torus_eigenvectors() {
        let root = RootOfUnity::with_default_branches(3, 1).unwrap();
        let t = FuzzyTorus::clock_shift(&root);
        let lap = lap_cs(&root, &IntegerMetric::identity()).unwrap();
        let v = VectorizedState::vectorize(&t.monomial(1, 0)).data;
        assert!((&lap * &v - &v).camax() < 1e-12);

        let root = RootOfUnity::with_default_branches(4, 1).unwrap();
        let t = FuzzyTorus::clock_shift(&root);
        let lap = lap_cs(&root, &IntegerMetric::identity()).unwrap();
        let v = VectorizedState::vectorize(&t.monomial(1, 1)).data;
        assert!((&lap * &v - &v * Complex64::from(2.0)).camax() < 1e-12);
    }

    #[test]
    fn formula_matches_diagonalization() {
        for metric in IntegerMetric::hnf_family(2) {
            for n in 3..=8 {
                let root = RootOfUnity::with_default_branches(n, 1).unwrap();
                let Ok(recs) = laplace_spectrum_formula(&metric, &root) else {
                    continue;
                };
                let lap = lap_cs(&root, &metric).unwrap();
                assert!(hermiticity_defect(&lap) < 1e-12);
                let ev = hermitian_eigs(&lap).unwrap();
                assert!(ev[0] >= -1e-9);
                let cmp = multiset_match(&ev, &eigenvalues(&recs), SPECTRUM_TOL);
                assert!(cmp.passed(), "{metric} N={n}: {:?}", cmp.verdict);
            }
        }
    }

    #[test]
    fn equivariance_under_conjugation() {
        let root = RootOfUnity::with_default_branches(5, 2).unwrap();
        let t = FuzzyTorus::clock_shift(&root);
        let pair = t.derived_pair(&IntegerMetric::new(1, 0, 1, 2).unwrap()).unwrap();
        let p = crate::clockshift::modular_rot(&root);
        let (px, py) = (&p * &pair.x * p.adjoint(), &p * &pair.y * p.adjoint());
        let lap = laplacian_superop(&pair.x, &pair.y, pair.xi.q_half()).unwrap();
        let lap_p = laplacian_superop(&px, &py, pair.xi.q_half()).unwrap();
        let w = left_superop(&p).unwrap() * right_superop(&p.adjoint()).unwrap();
        assert!(max_abs_diff(&lap_p, &(&w * lap * w.adjoint())) < 1e-12);
    }

    #[test]
    fn c2s2_sectors() {
        for n in [8i64, 12] {
            let root = RootOfUnity::with_default_branches(n, 1).unwrap();
            let lap = lap_cs(&root, &IntegerMetric::new(2, 0, 0, 2).unwrap()).unwrap();
            for h in 0..2u8 {
                for j in 0..2u8 {
                    let b = sector_basis(n as usize, h, j).unwrap();
                    let block = b.adjoint() * &lap * &b;
                    let ev = hermitian_eigs(&block).unwrap();
                    let recs = four_sector_laplace_spectrum(&root, h, j).unwrap();
                    let cmp = multiset_match(&ev, &eigenvalues(&recs), SPECTRUM_TOL);
                    assert!(cmp.passed(), "N={n} sector {h}{j}: {:?}", cmp.verdict);
                }
            }
        }
    }

    #[test]
    fn c2s_odd_is_rescaled_square() {
        for n in [5i64, 7] {
            let root = RootOfUnity::with_default_branches(n, 1).unwrap();
            let stretched = laplace_spectrum_formula(&IntegerMetric::new(2, 0, 0, 1).unwrap(), &root).unwrap();
            let two = root.qint(2, 1).unwrap();
            let square: Vec<f64> = laplace_spectrum_formula(&IntegerMetric::identity(), &root)
                .unwrap()
                .iter()
                .map(|r| r.eigenvalue / (two * two))
                .collect();
            assert!(multiset_match(&eigenvalues(&stretched), &square, SPECTRUM_TOL).passed());
        }
    }

    #[test]
    fn window() {
        assert_eq!(label_window(4), -1..=2);
        assert_eq!(label_window(5), -2..=2);
        assert_eq!(label_window(1), 0..=0);
    }
}
