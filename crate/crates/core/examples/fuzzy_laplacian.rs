//! Scalar Laplacian of an integral metric: closed form against diagonalization.
//!
//! cargo run --example fuzzy_laplacian -- 6 2 1 1 2

use fuzzy_torus::clockshift::FuzzyTorus;
use fuzzy_torus::laplace::{eigenvalues, laplace_spectrum_formula, laplacian_superop};
use fuzzy_torus::oracle::{hermitian_eigs, multiset_match, SPECTRUM_TOL};
use fuzzy_torus::{IntegerMetric, RootOfUnity};

fn main() -> fuzzy_torus::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, a, b, c, d) = match args[..] {
        [n, a, b, c, d] => (n, a, b, c, d),
        _ => (6, 2, 1, 1, 2),
    };
    let metric = IntegerMetric::new(a, b, c, d)?;
    let root = RootOfUnity::with_default_branches(n, 1)?;
    let torus = FuzzyTorus::clock_shift(&root);
    let pair = torus.derived_pair(&metric)?;

    let lap = laplacian_superop(&pair.x, &pair.y, pair.xi.q_half())?;
    let computed = hermitian_eigs(&lap)?;
    let records = laplace_spectrum_formula(&metric, &root)?;
    let cmp = multiset_match(&computed, &eigenvalues(&records), SPECTRUM_TOL);

    println!("N = {n}, metric {metric}");
    for r in records.iter().take(8) {
        println!("  λ({:>2},{:>2}) = {:.10}", r.k, r.l, r.eigenvalue);
    }
    println!("  ... {} eigenvalues", records.len());
    println!("max gap to diagonalization {:.2e}: {}", cmp.max_abs_gap, if cmp.passed() { "match" } else { "MISMATCH" });
    Ok(())
}
