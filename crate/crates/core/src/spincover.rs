//! The four-fold covering `A = ⟨C², S²⟩ ⊂ M_N(C)` with `N = 4N'`, its
//! `Z₂ × Z₂` deck group and the sector triples carrying all four spin structures.

use rayon::prelude::*;
use serde::Serialize;

use crate::bimodule::sector_basis;
use crate::clockshift::{clock, shift, FuzzyTorus};
use crate::dirac::axioms::SpectralTriple;
use crate::dirac::spectrum::{dirac_spectrum_in_window, expand, DiracSpectrumRecord, ZERO_MODE_TOL};
use crate::error::{Error, Result};
use crate::linalg::{commutator, identity, kron, max_abs, max_abs_diff, unitary_pow, DenseMatrix};
use crate::metric::IntegerMetric;
use crate::oracle::{hermitian_eigs, multiset_match, SpectrumComparison, SPECTRUM_TOL};
use crate::qroots::RootOfUnity;

/// Largest admissible off-block norm of `D` on a sector.
pub const SECTOR_LEAK_TOL: f64 = 1e-10;

/// The four characters `χ = (-1)^t` of the deck group, as bit pairs `t`.
pub const CHARACTERS: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

#[derive(Clone, Debug)]
pub struct FuzzyCover {
    pub n_prime: u64,
    /// Root `q` of order `N = 4N'` defining `C` and `S`.
    pub root: RootOfUnity,
    /// `U = C²`, `V = S²` with `Q = q⁴`, `Q^{1/2} = q²`, `Q^{1/4} = q`.
    pub base: FuzzyTorus,
    /// `(C^{N/2}, S^{N/2})`.
    pub deck: (DenseMatrix, DenseMatrix),
}

impl FuzzyCover {
    pub fn order(&self) -> usize {
        4 * self.n_prime as usize
    }
}

/// `(C^{N/2}, S^{N/2})` for even `N`.
pub fn deck_generators(root: &RootOfUnity) -> Result<(DenseMatrix, DenseMatrix)> {
    let n = root.order() as usize;
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    let half = (n / 2) as i64;
    Ok((unitary_pow(&clock(n, root), half), unitary_pow(&shift(n), half)))
}

pub fn build_cover(n_prime: u64, root: &RootOfUnity) -> Result<FuzzyCover> {
    if n_prime == 0 || root.order() != 4 * n_prime {
        return Err(Error::OrderMismatch {
            expected: 4 * n_prime,
            actual: root.order(),
        });
    }
    let n = root.order() as usize;
    let (c, s) = (clock(n, root), shift(n));
    let base = FuzzyTorus::new(&c * &c, &s * &s, root.power(4))?;
    let deck = deck_generators(root)?;

    let tol = 1e-10 * n as f64;
    let one = identity(n);
    let np = n_prime as i64;
    for g in [base.u(), base.v()] {
        if max_abs_diff(&unitary_pow(g, np), &one) < tol {
            return Err(Error::InvalidTorus(format!("generator has order dividing N' = {np}")));
        }
        if max_abs_diff(&unitary_pow(g, 2 * np), &one) > tol {
            return Err(Error::InvalidTorus("generator order exceeds 2N'".into()));
        }
        for h in [&deck.0, &deck.1] {
            let gap = max_abs(&commutator(g, h));
            if gap > tol {
                return Err(Error::InvalidTorus(format!("deck generator moves A (gap {gap:e})")));
            }
        }
    }
    Ok(FuzzyCover {
        n_prime,
        root: *root,
        base,
        deck,
    })
}

/// `σ_c = (a + c, b + d) mod 2`.
pub fn canonical_spin_structure(metric: &IntegerMetric) -> (u8, u8) {
    metric.canonical_spin_structure()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpinStructureLabel {
    pub sigma: (u8, u8),
    pub character: (u8, u8),
    pub canonical: (u8, u8),
}

impl SpinStructureLabel {
    /// `σ = σ_c + t mod 2`.
    pub fn new(metric: &IntegerMetric, chi: (u8, u8)) -> Self {
        let canonical = metric.canonical_spin_structure();
        Self {
            sigma: ((canonical.0 + chi.0) % 2, (canonical.1 + chi.1) % 2),
            character: chi,
            canonical,
        }
    }
}

fn check_chi(chi: (u8, u8)) -> Result<()> {
    if chi.0 > 1 || chi.1 > 1 {
        return Err(Error::Config(format!("character bits must be 0 or 1, got {chi:?}")));
    }
    Ok(())
}

/// The triple on `C^4 ⊗ 𝔥_χ`, where `𝔥_χ` is spanned by `C^k S^l` with
/// `(k, l) ≡ χ mod 2`.
pub fn sector_triple(cover: &FuzzyCover, chi: (u8, u8), metric: &IntegerMetric) -> Result<SpectralTriple> {
    check_chi(chi)?;
    let full = SpectralTriple::fuzzy(&cover.base, metric)?;
    let b = kron(&identity(4), &sector_basis(cover.order(), chi.0, chi.1)?);
    let d = b.adjoint() * &full.d * &b;
    let norm = max_abs(&(&full.d * &b - &b * &d));
    if norm > SECTOR_LEAK_TOL {
        return Err(Error::SectorLeak { chi, norm });
    }
    Ok(SpectralTriple {
        hilbert_dim: b.ncols(),
        torus: cover.base.clone(),
        gamma: b.adjoint() * &full.gamma * &b,
        j: full.j.compress(&b),
        d,
        ko_dim: full.ko_dim,
        embed: Some(b),
    })
}

/// Closed-form records at labels `2(k,l) ≡ σ_c + χ`, doubled labels in
/// `(-N/2, N/2]`, quantum integers in `Q = q⁴`.
pub fn sector_spectrum_formula(
    cover: &FuzzyCover,
    chi: (u8, u8),
    metric: &IntegerMetric,
) -> Result<Vec<DiracSpectrumRecord>> {
    check_chi(chi)?;
    let label = SpinStructureLabel::new(metric, chi);
    dirac_spectrum_in_window(metric, cover.base.root(), label.sigma, 2 * cover.n_prime as i64)
}

/// [`sector_spectrum_formula`] after checking it against diagonalization of
/// the sector triple.
pub fn sector_spectrum_conjecture(
    cover: &FuzzyCover,
    chi: (u8, u8),
    metric: &IntegerMetric,
) -> Result<Vec<DiracSpectrumRecord>> {
    let records = sector_spectrum_formula(cover, chi, metric)?;
    let triple = sector_triple(cover, chi, metric)?;
    let cmp = multiset_match(&hermitian_eigs(&triple.d)?, &expand(&records), SPECTRUM_TOL);
    if !cmp.passed() {
        return Err(Error::ConjectureViolation {
            chi,
            gap: cmp.max_abs_gap,
        });
    }
    Ok(records)
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorAnalysis {
    pub label: SpinStructureLabel,
    pub dim: usize,
    pub kernel_dim: usize,
    pub eigenvalues: Vec<f64>,
    pub formula: Vec<DiracSpectrumRecord>,
    /// Diagonalization against the closed form; a failure is a finding.
    pub conjecture: SpectrumComparison,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverAnalysis {
    pub n_prime: u64,
    pub metric: IntegerMetric,
    pub sectors: Vec<SectorAnalysis>,
    /// Union of the sector spectra against the full `C^4 ⊗ M_N(C)` spectrum.
    pub partition: SpectrumComparison,
}

fn analyze_sector(cover: &FuzzyCover, chi: (u8, u8), metric: &IntegerMetric) -> Result<SectorAnalysis> {
    let triple = sector_triple(cover, chi, metric)?;
    let eigenvalues = hermitian_eigs(&triple.d)?;
    let formula = sector_spectrum_formula(cover, chi, metric)?;
    Ok(SectorAnalysis {
        label: SpinStructureLabel::new(metric, chi),
        dim: triple.hilbert_dim,
        kernel_dim: eigenvalues.iter().filter(|v| v.abs() < ZERO_MODE_TOL).count(),
        conjecture: multiset_match(&eigenvalues, &expand(&formula), SPECTRUM_TOL),
        eigenvalues,
        formula,
    })
}

/// All four sectors, computed concurrently.
pub fn analyze_cover(cover: &FuzzyCover, metric: &IntegerMetric) -> Result<CoverAnalysis> {
    let sectors: Vec<SectorAnalysis> = CHARACTERS
        .par_iter()
        .map(|&chi| analyze_sector(cover, chi, metric))
        .collect::<Result<_>>()?;
    let full = SpectralTriple::fuzzy(&cover.base, metric)?;
    let union: Vec<f64> = sectors.iter().flat_map(|s| s.eigenvalues.iter().copied()).collect();
    Ok(CoverAnalysis {
        n_prime: cover.n_prime,
        metric: *metric,
        partition: multiset_match(&union, &hermitian_eigs(&full.d)?, SPECTRUM_TOL),
        sectors,
    })
}
