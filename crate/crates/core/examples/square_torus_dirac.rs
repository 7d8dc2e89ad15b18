//! Dirac operator of the square fuzzy torus: `E_X + E_Y` split, closed form of
//! `D²` and the spectrum with multiplicities.

use fuzzy_torus::clockshift::FuzzyTorus;
use fuzzy_torus::dirac::{dirac_operator, dirac_spectrum_formula, dirac_squared_formula, ex_ey_split};
use fuzzy_torus::linalg::{anticommutator, hermiticity_defect, max_abs, max_abs_diff};
use fuzzy_torus::oracle::{group_multiplicities, hermitian_eigs, multiset_match, SPECTRUM_TOL};
use fuzzy_torus::{IntegerMetric, RootOfUnity};

fn main() -> fuzzy_torus::Result<()> {
    let n = 6;
    let metric = IntegerMetric::identity();
    let root = RootOfUnity::with_default_branches(n, 1)?;
    let torus = FuzzyTorus::clock_shift(&root);
    let pair = torus.derived_pair(&metric)?;
    let xi4 = pair.xi.q_quarter();

    let d = dirac_operator(&pair.x, &pair.y, xi4)?;
    println!("dim {}, hermiticity defect {:.2e}", d.nrows(), hermiticity_defect(&d));

    let (ex, ey) = ex_ey_split(&pair.x, &pair.y, xi4)?;
    println!("|E_X + E_Y - D| = {:.2e}", max_abs_diff(&(&ex + &ey), &d));
    println!("|{{E_X, E_Y}}| = {:.2e}", max_abs(&anticommutator(&ex, &ey)));

    let d2 = dirac_squared_formula(&pair.x, &pair.y, pair.xi.q_half(), xi4)?;
    println!("|D² - closed form| = {:.2e}", max_abs_diff(&(&d * &d), &d2));

    let computed = hermitian_eigs(&d)?;
    let records = dirac_spectrum_formula(&metric, &root, metric.canonical_spin_structure())?;
    let reference = fuzzy_torus::dirac::spectrum::expand(&records);
    let cmp = multiset_match(&computed, &reference, SPECTRUM_TOL);
    println!("spectrum gap {:.2e}", cmp.max_abs_gap);
    for (value, mult) in group_multiplicities(&computed).into_iter().filter(|(v, _)| *v >= -1e-9) {
        println!("  {value:>12.8}  ×{mult}");
    }
    Ok(())
}
