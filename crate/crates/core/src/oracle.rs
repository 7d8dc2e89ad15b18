//! Brute-force references: dense Hermitian diagonalization, multiset
//! comparison and the commutative Dirac spectrum.

use serde::Serialize;

use crate::dirac::spectrum::{DiracSpectrumRecord, HalfInt};
use crate::error::{Error, Result};
use crate::linalg::{hermiticity_defect, max_abs, DenseMatrix};
use crate::metric::IntegerMetric;

/// Default gap tolerance for spectrum comparisons.
pub const SPECTRUM_TOL: f64 = 1e-9;

/// Relative width used to merge numerically equal eigenvalues.
pub const GROUPING_TOL: f64 = 1e-8;

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigs(m: &DenseMatrix) -> Result<Vec<f64>> {
    let defect = hermiticity_defect(m);
    if defect > 1e-10 * max_abs(m).max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    // Symmetrise to remove rounding noise before the solver sees it.
    let h = (m + m.adjoint()) * num_complex::Complex64::from(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Groups sorted values whose neighbours differ by at most `GROUPING_TOL·(1+|λ|)`.
/// Returns `(representative, count)` in ascending order.
pub fn group_multiplicities(values: &[f64]) -> Vec<(f64, usize)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for v in sorted {
        match groups.last_mut() {
            Some((rep, count)) if (v - *rep).abs() <= GROUPING_TOL * (1.0 + rep.abs()) => {
                *count += 1;
            }
            _ => groups.push((v, 1)),
        }
    }
    groups
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    LengthMismatch { computed: usize, reference: usize },
    GapExceeded { gap: f64, tol: f64 },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumComparison {
    pub computed: Vec<f64>,
    pub reference: Vec<f64>,
    pub max_abs_gap: f64,
    pub multiplicity_table: Vec<(f64, usize)>,
    pub verdict: Verdict,
}

impl SpectrumComparison {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

/// Pairs the two sorted lists entry by entry.
pub fn multiset_match(computed: &[f64], reference: &[f64], tol: f64) -> SpectrumComparison {
    let mut c = computed.to_vec();
    let mut r = reference.to_vec();
    c.sort_by(f64::total_cmp);
    r.sort_by(f64::total_cmp);
    let max_abs_gap = if c.len() == r.len() {
        c.iter()
            .zip(&r)
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
    } else {
        f64::INFINITY
    };
    let verdict = if c.len() != r.len() {
        Verdict::LengthMismatch {
            computed: c.len(),
            reference: r.len(),
        }
    } else if max_abs_gap > tol {
        Verdict::GapExceeded {
            gap: max_abs_gap,
            tol,
        }
    } else {
        Verdict::Pass
    };
    SpectrumComparison {
        multiplicity_table: group_multiplicities(&c),
        computed: c,
        reference: r,
        max_abs_gap,
        verdict,
    }
}

/// Pairs sorted `computed` values with a reference given as `(value, multiplicity)`
/// entries and returns the largest gap seen by each entry, or `None` when the
/// total multiplicities differ.
pub fn entry_gaps(reference: &[(f64, usize)], computed: &[f64]) -> Option<Vec<f64>> {
    let mut expanded: Vec<(f64, usize)> = reference
        .iter()
        .enumerate()
        .flat_map(|(i, &(v, m))| std::iter::repeat_n((v, i), m))
        .collect();
    if expanded.len() != computed.len() {
        return None;
    }
    expanded.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut c = computed.to_vec();
    c.sort_by(f64::total_cmp);
    let mut gaps = vec![0.0_f64; reference.len()];
    for ((v, i), x) in expanded.into_iter().zip(c) {
        gaps[i] = gaps[i].max((v - x).abs());
    }
    Some(gaps)
}

/// Flat-torus Dirac spectrum `±|det A|^{-1} √((dk-cl)² + (al-bk)²)` over labels
/// with `2(k,l) ≡ σ mod 2` and `-W < k, l <= W`.
pub fn commutative_dirac_spectrum(
    metric: &IntegerMetric,
    sigma: (u8, u8),
    window: i64,
) -> Vec<DiracSpectrumRecord> {
    let det = metric.det() as f64;
    let mut out = Vec::new();
    for k2 in (-2 * window + 1)..=(2 * window) {
        if k2.rem_euclid(2) != sigma.0 as i64 {
            continue;
        }
        for l2 in (-2 * window + 1)..=(2 * window) {
            if l2.rem_euclid(2) != sigma.1 as i64 {
                continue;
            }
            let (k, l) = (k2 as f64 / 2.0, l2 as f64 / 2.0);
            let p = metric.d as f64 * k - metric.c as f64 * l;
            let r = metric.a as f64 * l - metric.b as f64 * k;
            let lambda = (p * p + r * r).sqrt() / det.abs();
            out.extend(DiracSpectrumRecord::pair(
                HalfInt(k2),
                HalfInt(l2),
                lambda,
                sigma,
            ));
        }
    }
    out
}

/// `|det A|^{-2} ((al-bk)² + (dk-cl)²)`.
pub fn commutative_laplace_spectrum(metric: &IntegerMetric, k: i64, l: i64) -> f64 {
    let det = metric.det() as f64;
    let p = (metric.a * l - metric.b * k) as f64;
    let r = (metric.d * k - metric.c * l) as f64;
    (p * p + r * r) / (det * det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;
    use num_complex::Complex64;

    #[test]
    fn trivial_spectra() {
        assert_eq!(hermitian_eigs(&identity(3)).unwrap(), vec![1.0, 1.0, 1.0]);
        let mut d = DenseMatrix::zeros(2, 2);
        d[(0, 0)] = Complex64::from(2.0);
        d[(1, 1)] = Complex64::from(-1.0);
        assert_eq!(hermitian_eigs(&d).unwrap(), vec![-1.0, 2.0]);
        d[(0, 1)] = Complex64::from(1.0);
        assert!(matches!(hermitian_eigs(&d), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn matching() {
        let a = [1.0, 2.0, 2.0, 3.0];
        let same = multiset_match(&a, &a, 1e-9);
        assert!(same.passed());
        assert_eq!(same.max_abs_gap, 0.0);
        assert_eq!(same.multiplicity_table, vec![(1.0, 1), (2.0, 2), (3.0, 1)]);
        let near: Vec<f64> = a.iter().rev().map(|x| x + 1e-12).collect();
        assert!(multiset_match(&a, &near, 1e-9).passed());
        let short = multiset_match(&a, &a[..3], 1e-9);
        assert!(matches!(short.verdict, Verdict::LengthMismatch { .. }));
        let far = multiset_match(&a, &[1.0, 2.0, 2.0, 3.1], 1e-9);
        assert!(matches!(far.verdict, Verdict::GapExceeded { .. }));
    }

    #[test]
    fn per_entry_gaps() {
        let reference = [(2.0, 2), (-1.0, 1)];
        let gaps = entry_gaps(&reference, &[2.0 + 1e-3, -1.0, 2.0]).unwrap();
        assert!((gaps[0] - 1e-3).abs() < 1e-15);
        assert_eq!(gaps[1], 0.0);
        assert!(entry_gaps(&reference, &[1.0]).is_none());
    }

    #[test]
    fn commutative_values() {
        let id = IntegerMetric::identity();
        assert_eq!(commutative_laplace_spectrum(&id, 3, 4), 25.0);
        assert_eq!(commutative_laplace_spectrum(&id, 0, 0), 0.0);
        let shear = IntegerMetric::new(1, 1, 0, 1).unwrap();
        assert_eq!(commutative_laplace_spectrum(&shear, 1, 0), 2.0);

        let zero = commutative_dirac_spectrum(&id, (0, 0), 2);
        let z = zero
            .iter()
            .find(|r| r.k == HalfInt(0) && r.l == HalfInt(0))
            .unwrap();
        assert_eq!((z.eigenvalue, z.multiplicity, z.sign), (0.0, 4, 0));

        let sq = IntegerMetric::new(2, 0, 0, 2).unwrap();
        let recs = commutative_dirac_spectrum(&sq, (0, 0), 2);
        let at: Vec<f64> = recs
            .iter()
            .filter(|r| r.k == HalfInt(2) && r.l == HalfInt(0))
            .map(|r| r.eigenvalue)
            .collect();
        assert_eq!(at, vec![-0.5, 0.5]);

        let half = commutative_dirac_spectrum(&id, (1, 1), 1);
        let lowest = half.iter().map(|r| r.eigenvalue.abs()).fold(f64::INFINITY, f64::min);
        assert!((lowest - 0.5f64.sqrt()).abs() < 1e-15);
        let total: usize = half.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 4 * 2 * 2);
    }
}
