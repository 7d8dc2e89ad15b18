//! Clock and shift matrices, the relation `CS = qSC`, monomials and the
//! modular matrices `P_A`, `P_B`.

use fuzzy_torus::clockshift::{modular_rot, modular_shear, FuzzyTorus};
use fuzzy_torus::linalg::{max_abs_diff, unitarity_defect};
use fuzzy_torus::{IntegerMetric, RootOfUnity};

fn main() -> fuzzy_torus::Result<()> {
    let root = RootOfUnity::with_default_branches(5, 1)?;
    let torus = FuzzyTorus::clock_shift(&root);
    let (c, s) = (torus.u(), torus.v());

    let gap = max_abs_diff(&(c * s), &((s * c) * root.q()));
    println!("N = {}: |CS - qSC| = {gap:.2e}", torus.dim());

    let e = torus.monomial(2, 3);
    println!("E^(2,3) unitarity defect {:.2e}", unitarity_defect(&e));

    let metric = IntegerMetric::new(1, 1, 0, 2)?;
    let pair = torus.derived_pair(&metric)?;
    let gap = max_abs_diff(&(&pair.x * &pair.y), &((&pair.y * &pair.x) * pair.xi.q()));
    println!("metric {metric}: Ξ = q^{}, |XY - ΞYX| = {gap:.2e}", metric.det());

    let (pa, pb) = (modular_shear(&root), modular_rot(&root));
    println!("P_A unitarity defect {:.2e}", unitarity_defect(&pa));
    println!("P_B unitarity defect {:.2e}", unitarity_defect(&pb));
    let target = (c * s) * root.q_half().inv();
    println!("|P_A C P_A* - q^-1/2 CS| = {:.2e}", max_abs_diff(&(&pa * c * pa.adjoint()), &target));
    println!("|P_A S P_A* - S| = {:.2e}", max_abs_diff(&(&pa * s * pa.adjoint()), s));
    println!("|P_B C P_B* - S*| = {:.2e}", max_abs_diff(&(&pb * c * pb.adjoint()), &s.adjoint()));
    println!("|P_B S P_B* - C| = {:.2e}", max_abs_diff(&(&pb * s * pb.adjoint()), c));
    Ok(())
}
