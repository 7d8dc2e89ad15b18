//! Verifies the real spectral triple axioms in KO-dimension 4, then shows a
//! perturbed Dirac operator failing the first-order condition.

use fuzzy_torus::bimodule::{left_superop, right_superop};
use fuzzy_torus::clockshift::FuzzyTorus;
use fuzzy_torus::dirac::axioms::DEFAULT_BASIS_LIMIT;
use fuzzy_torus::dirac::{clifford_module, verify_axioms, AxiomReport, SpectralTriple};
use fuzzy_torus::linalg::{kron, I};
use fuzzy_torus::{IntegerMetric, RootOfUnity};

fn show(title: &str, report: &AxiomReport) {
    println!("{title}: dim {}, {} basis elements", report.dim, report.basis_size);
    for c in &report.checks {
        println!("  {:<22} {:>10.2e} {}", c.name, c.violation, if c.pass { "ok" } else { "FAIL" });
    }
}

fn main() -> fuzzy_torus::Result<()> {
    let root = RootOfUnity::with_default_branches(4, 1)?;
    let torus = FuzzyTorus::clock_shift(&root);
    let metric = IntegerMetric::new(2, 0, 0, 1)?;
    let triple = SpectralTriple::fuzzy(&torus, &metric)?;
    show("fuzzy torus, metric diag(2,1)", &verify_axioms(&triple, DEFAULT_BASIS_LIMIT)?);

    // B = iγ¹ ⊗ L_a R_b with a = U + U*, b = V + V* is hermitian and odd;
    // adding B + JBJ⁻¹ keeps every condition except the first-order one.
    let (u, v) = (torus.u(), torus.v());
    let (a, b) = (u + u.adjoint(), v + v.adjoint());
    let g1 = &clifford_module().gammas[0] * I;
    let bump = kron(&g1, &(left_superop(&a)? * right_superop(&b)?));
    let d = &triple.d + &bump + triple.opposite(&bump);
    let broken = SpectralTriple::with_dirac(&torus, d);
    show("perturbed", &verify_axioms(&broken, DEFAULT_BASIS_LIMIT)?);
    Ok(())
}
