//! Closed-form Dirac spectra and the explicit `D²` eigenvectors.

use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::bimodule::VectorizedState;
use crate::clockshift::FuzzyTorus;
use crate::error::{Error, Result};
use crate::metric::IntegerMetric;
use crate::qroots::RootOfUnity;

/// Eigenvalues below this are reported as zero modes.
pub const ZERO_MODE_TOL: f64 = 1e-9;

/// An integer or half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}", self.value())
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiracSpectrumRecord {
    pub k: HalfInt,
    pub l: HalfInt,
    /// `+1`, `-1`, or `0` for a zero mode.
    pub sign: i8,
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub sigma: (u8, u8),
}

impl DiracSpectrumRecord {
    /// The `±λ` records of one label: multiplicity 2 each, or a single zero
    /// mode of multiplicity 4.
    pub fn pair(k: HalfInt, l: HalfInt, lambda: f64, sigma: (u8, u8)) -> Vec<Self> {
        if lambda.abs() < ZERO_MODE_TOL {
            return vec![Self {
                k,
                l,
                sign: 0,
                eigenvalue: 0.0,
                multiplicity: 4,
                sigma,
            }];
        }
        [-1i8, 1]
            .into_iter()
            .map(|sign| Self {
                k,
                l,
                sign,
                eigenvalue: f64::from(sign) * lambda.abs(),
                multiplicity: 2,
                sigma,
            })
            .collect()
    }
}

/// All eigenvalues with multiplicity, ascending.
pub fn expand(records: &[DiracSpectrumRecord]) -> Vec<f64> {
    let mut v: Vec<f64> = records
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.eigenvalue, r.multiplicity))
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Sorts by `k`, then `l`, then sign.
pub fn sort_records(records: &mut [DiracSpectrumRecord]) {
    records.sort_by(|a, b| (a.k, a.l, a.sign).cmp(&(b.k, b.l, b.sign)));
}

/// `D²` eigenvalue `([al-bk]² + [dk-cl]²) / [ad-bc]²` at `(k, l) = (k2, l2)/2`.
pub fn dirac_squared_eigenvalue(metric: &IntegerMetric, root: &RootOfUnity, k2: i64, l2: i64) -> Result<f64> {
    let det = root.qint(metric.det(), 1)?;
    if det.abs() <= super::operator::PREFACTOR_TOL {
        return Err(Error::DegenerateDeformation(format!(
            "[{}]_q = {det:e}",
            metric.det()
        )));
    }
    let p = root.qint(metric.a * l2 - metric.b * k2, 2)?;
    let r = root.qint(metric.d * k2 - metric.c * l2, 2)?;
    Ok((p * p + r * r) / (det * det))
}

/// Records over labels `2(k,l) ≡ σ mod 2` with doubled labels in `(-w, w]`.
///
/// No spin-structure check is made; the irreducible torus uses
/// [`dirac_spectrum_formula`], covering sectors use other `σ`.
pub fn dirac_spectrum_in_window(
    metric: &IntegerMetric,
    root: &RootOfUnity,
    sigma: (u8, u8),
    w: i64,
) -> Result<Vec<DiracSpectrumRecord>> {
    let mut out = Vec::new();
    for k2 in (-w + 1)..=w {
        if k2.rem_euclid(2) != sigma.0 as i64 {
            continue;
        }
        for l2 in (-w + 1)..=w {
            if l2.rem_euclid(2) != sigma.1 as i64 {
                continue;
            }
            let lam2 = dirac_squared_eigenvalue(metric, root, k2, l2)?;
            out.extend(DiracSpectrumRecord::pair(
                HalfInt(k2),
                HalfInt(l2),
                lam2.max(0.0).sqrt(),
                sigma,
            ));
        }
    }
    sort_records(&mut out);
    Ok(out)
}

/// Spectrum of `D_{X,Y}` on the clock/shift torus of order `N`: `±√(...)`
/// over `-N/2 < k, l <= N/2` with `2(k,l) ≡ σ_c`.
pub fn dirac_spectrum_formula(
    metric: &IntegerMetric,
    root: &RootOfUnity,
    sigma: (u8, u8),
) -> Result<Vec<DiracSpectrumRecord>> {
    let canonical = metric.canonical_spin_structure();
    if sigma != canonical {
        return Err(Error::WrongSpinStructure {
            requested: sigma,
            canonical,
        });
    }
    dirac_spectrum_in_window(metric, root, sigma, root.order() as i64)
}

/// The four vectors `e_i ⊗ e^{(...)}` spanning a `D²` eigenspace at the label
/// `(k, l) = (k2, l2)/2`:
/// slot 1 `e^{(k+(a+c)/2, l+(b+d)/2)}`, slot 2 `e^{(k-(a+c)/2, l-(b+d)/2)}`,
/// slot 3 `e^{(k+(c-a)/2, l+(d-b)/2)}`, slot 4 `e^{(k+(a-c)/2, l+(b-d)/2)}`.
pub fn eigenvector_ansatz(
    torus: &FuzzyTorus,
    metric: &IntegerMetric,
    k2: i64,
    l2: i64,
) -> Result<[DVector<Complex64>; 4]> {
    let IntegerMetric { a, b, c, d } = *metric;
    let exps = [
        (k2 + a + c, l2 + b + d),
        (k2 - a - c, l2 - b - d),
        (k2 + c - a, l2 + d - b),
        (k2 + a - c, l2 + b - d),
    ];
    if exps.iter().any(|(m, n)| m % 2 != 0 || n % 2 != 0) {
        return Err(Error::ParityMismatch(format!(
            "label ({}, {}) with metric {metric} gives half-integer exponents",
            HalfInt(k2),
            HalfInt(l2)
        )));
    }
    let n2 = torus.dim() * torus.dim();
    Ok(std::array::from_fn(|slot| {
        let (m, n) = exps[slot];
        let mono = VectorizedState::vectorize(&torus.monomial(m / 2, n / 2)).data;
        let mut v = DVector::zeros(4 * n2);
        v.rows_mut(slot * n2, n2).copy_from(&mono);
        v
    }))
}
