//! Dirac spectra across a family of integral metrics in Hermite normal form,
//! each with its canonical spin structure.

use fuzzy_torus::clockshift::FuzzyTorus;
use fuzzy_torus::dirac::spectrum::expand;
use fuzzy_torus::dirac::{dirac_operator, dirac_spectrum_formula};
use fuzzy_torus::oracle::{hermitian_eigs, multiset_match, SPECTRUM_TOL};
use fuzzy_torus::{Error, IntegerMetric, RootOfUnity};

fn main() -> fuzzy_torus::Result<()> {
    let n = 7;
    let root = RootOfUnity::with_default_branches(n, 1)?;
    let torus = FuzzyTorus::clock_shift(&root);
    println!("{:<16} {:>6} {:>10} {:>10}", "metric", "σ_c", "max |λ|", "gap");
    for metric in IntegerMetric::hnf_family(3) {
        let pair = torus.derived_pair(&metric)?;
        let d = match dirac_operator(&pair.x, &pair.y, pair.xi.q_quarter()) {
            Ok(d) => d,
            Err(Error::DegenerateDeformation(_)) => {
                println!("{:<16} degenerate at N = {n}", metric.to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        let sigma = metric.canonical_spin_structure();
        let computed = hermitian_eigs(&d)?;
        let reference = expand(&dirac_spectrum_formula(&metric, &root, sigma)?);
        let cmp = multiset_match(&computed, &reference, SPECTRUM_TOL);
        let top = computed.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        println!(
            "{:<16} {:>6} {top:>10.5} {:>10.2e}",
            metric.to_string(),
            format!("{}{}", sigma.0, sigma.1),
            cmp.max_abs_gap
        );
    }
    Ok(())
}
