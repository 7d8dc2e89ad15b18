//! The unitary `U_L` conjugating `D²` to the scalar Laplacian, its mirror
//! `U_R = J U_L J⁻¹`, and the translation action commuting with `D`.

use fuzzy_torus::clockshift::FuzzyTorus;
use fuzzy_torus::dirac::dirac_operator;
use fuzzy_torus::dirac::intertwiner::{intertwiner_ul, intertwiner_ur};
use fuzzy_torus::dirac::translation::translation_action;
use fuzzy_torus::laplace::laplacian_superop;
use fuzzy_torus::linalg::{commutator, identity, kron, max_abs, max_abs_diff, unitarity_defect};
use fuzzy_torus::{IntegerMetric, RootOfUnity};

fn main() -> fuzzy_torus::Result<()> {
    let root = RootOfUnity::with_default_branches(5, 1)?;
    let torus = FuzzyTorus::clock_shift(&root);
    let metric = IntegerMetric::new(2, 0, 0, 2)?;
    let pair = torus.derived_pair(&metric)?;
    let d = dirac_operator(&pair.x, &pair.y, pair.xi.q_quarter())?;
    let d2 = &d * &d;
    let lap = kron(&identity(4), &laplacian_superop(&pair.x, &pair.y, pair.xi.q_half())?);

    for (name, w) in [("U_L", intertwiner_ul(&metric, &torus)?), ("U_R", intertwiner_ur(&metric, &torus)?)] {
        let conj = &w * &d2 * w.adjoint();
        println!(
            "{name}: unitarity {:.2e}, |{name} D² {name}* - 1⊗Δ| = {:.2e}",
            unitarity_defect(&w),
            max_abs_diff(&conj, &lap)
        );
    }

    // Odd spin structures have no such intertwiner.
    let odd = IntegerMetric::identity();
    if let Err(e) = intertwiner_ul(&odd, &torus) {
        println!("metric {odd}: {e}");
    }

    let mut worst = 0.0_f64;
    for j in 0..5 {
        for n in 0..5 {
            let pi = translation_action(&metric, &torus, j, n)?;
            worst = worst.max(max_abs(&commutator(&d, &pi)));
        }
    }
    println!("max |[D, Π_(j,n)]| over the torus: {worst:.2e}");
    Ok(())
}
