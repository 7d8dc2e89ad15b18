//! The Dirac operator `D_{X,Y}` on `C^4 ⊗ M_N(C)`, its `E_X + E_Y` split and
//! the closed form of its square.

use num_complex::Complex64;

use super::clifford::{clifford_module, CliffordModule};
use crate::bimodule::{bracket_superop, Bracket};
use crate::error::{Error, Result};
use crate::linalg::{kron, DenseMatrix, I};

/// Smallest admissible `|Ξ^{1/4} ∓ Ξ^{-1/4}|`.
pub const PREFACTOR_TOL: f64 = 1e-9;

/// `(Ξ^{1/4} - Ξ^{-1/4}, Ξ^{1/4} + Ξ^{-1/4})`.
fn prefactors(xi_quarter: Complex64) -> Result<(Complex64, Complex64)> {
    let inv = xi_quarter.inv();
    let (minus, plus) = (xi_quarter - inv, xi_quarter + inv);
    if minus.norm() <= PREFACTOR_TOL || plus.norm() <= PREFACTOR_TOL {
        return Err(Error::DegenerateDeformation(format!(
            "Ξ^{{1/4}} = {xi_quarter} makes a Dirac prefactor vanish"
        )));
    }
    Ok((minus, plus))
}

fn com(x: &DenseMatrix) -> Result<DenseMatrix> {
    bracket_superop(x, Bracket::Commutator)
}

fn acom(x: &DenseMatrix) -> Result<DenseMatrix> {
    bracket_superop(x, Bracket::Anticommutator)
}

/// `D = Σ γⁱ ⊗ [K_i, ·]/(Ξ^{1/4} - Ξ^{-1/4}) + Σ γⁱγʲγᵏ ⊗ {K_ijk, ·}/(Ξ^{1/4} + Ξ^{-1/4})`.
pub fn dirac_operator(x: &DenseMatrix, y: &DenseMatrix, xi_quarter: Complex64) -> Result<DenseMatrix> {
    let (minus, plus) = prefactors(xi_quarter)?;
    let cl = clifford_module();
    let (xs, ys) = (x.adjoint(), y.adjoint());
    let k1 = (x + &xs) * Complex64::from(-0.25);
    let k2 = (&xs - x) * (-I * 0.25);
    let k3 = (y + &ys) * Complex64::from(0.25);
    let k4 = (&ys - y) * (I * 0.25);
    let single = [(1, &k1), (2, &k2), (3, &k3), (4, &k4)];
    let k234 = k1.clone();
    let k134 = -&k2;
    let k124 = -&k3;
    let k123 = k4.clone();
    let triple = [
        ([1, 2, 3], &k123),
        ([1, 2, 4], &k124),
        ([1, 3, 4], &k134),
        ([2, 3, 4], &k234),
    ];
    let dim = 4 * x.nrows() * x.nrows();
    let mut d = DenseMatrix::zeros(dim, dim);
    for (i, k) in single {
        d += kron(&cl.gammas[i - 1], &com(k)?) / minus;
    }
    for (idx, k) in triple {
        d += kron(&cl.product(&idx), &acom(k)?) / plus;
    }
    Ok(d)
}

/// `E_X` written with an arbitrary ordered set of gamma matrices `(g₁, g₂, g₃, g₄)`:
///
/// `-(g₁ ⊗ [X+X*, ·] + g₂ ⊗ i[X*-X, ·]) / 4(ξ - ξ⁻¹)
///  - (g₂g₃g₄ ⊗ {X+X*, ·} - g₁g₃g₄ ⊗ i{X*-X, ·}) / 4(ξ + ξ⁻¹)`.
pub fn ex_part(gammas: [&DenseMatrix; 4], x: &DenseMatrix, xi_quarter: Complex64) -> Result<DenseMatrix> {
    let (minus, plus) = prefactors(xi_quarter)?;
    let [g1, g2, g3, g4] = gammas;
    let xs = x.adjoint();
    let sum = x + &xs;
    let diff = (&xs - x) * I;
    let deriv = kron(g1, &com(&sum)?) + kron(g2, &com(&diff)?);
    let conn = kron(&(g2 * g3 * g4), &acom(&sum)?) - kron(&(g1 * g3 * g4), &acom(&diff)?);
    Ok(deriv / (minus * -4.0) - conn / (plus * 4.0))
}

/// `(E_X, E_Y)` with `E_X + E_Y = D` and `E_X E_Y + E_Y E_X = 0`.
pub fn ex_ey_split(
    x: &DenseMatrix,
    y: &DenseMatrix,
    xi_quarter: Complex64,
) -> Result<(DenseMatrix, DenseMatrix)> {
    let (minus, plus) = prefactors(xi_quarter)?;
    let cl = clifford_module();
    let [g1, g2, g3, g4] = &cl.gammas;
    let ex = ex_part([g1, g2, g3, g4], x, xi_quarter)?;
    let ys = y.adjoint();
    let sum = y + &ys;
    let diff = (&ys - y) * I;
    let deriv = -kron(g3, &com(&sum)?) - kron(g4, &com(&diff)?);
    let conn = kron(&cl.product(&[1, 2, 4]), &acom(&sum)?) - kron(&cl.product(&[1, 2, 3]), &acom(&diff)?);
    let ey = deriv / (minus * -4.0) - conn / (plus * 4.0);
    Ok((ex, ey))
}

/// Closed form of `D²`:
///
/// `-(1 ⊗ [X,[X*,·]] + 1 ⊗ [Y,[Y*,·]]) / 4(Ξ^{1/4} - Ξ^{-1/4})²
///  + i/2(Ξ^{1/2} - Ξ^{-1/2}) (γ¹γ² ⊗ {Y,[Y*,·]} - γ³γ⁴ ⊗ {X,[X*,·]})
///  + (1 ⊗ {X,{X*,·}} + 1 ⊗ {Y,{Y*,·}}) / 4(Ξ^{1/4} + Ξ^{-1/4})²`.
pub fn dirac_squared_formula(
    x: &DenseMatrix,
    y: &DenseMatrix,
    xi_half: Complex64,
    xi_quarter: Complex64,
) -> Result<DenseMatrix> {
    let (minus, plus) = prefactors(xi_quarter)?;
    let half = xi_half - xi_half.inv();
    let cl = clifford_module();
    let one = DenseMatrix::identity(4, 4);
    let (xs, ys) = (x.adjoint(), y.adjoint());
    let (cx, cxs, cy, cys) = (com(x)?, com(&xs)?, com(y)?, com(&ys)?);
    let (ax, axs, ay, ays) = (acom(x)?, acom(&xs)?, acom(y)?, acom(&ys)?);
    let t1 = kron(&one, &(&cx * &cxs + &cy * &cys)) / (minus * minus * -4.0);
    let t2 = (kron(&cl.product(&[1, 2]), &(&ay * &cys)) - kron(&cl.product(&[3, 4]), &(&ax * &cxs)))
        * (I / (half * 2.0));
    let t3 = kron(&one, &(&ax * &axs + &ay * &ays)) / (plus * plus * 4.0);
    Ok(t1 + t2 + t3)
}

/// `Γ = γ ⊗ 1`.
pub fn chirality_operator(cl: &CliffordModule, n: usize) -> DenseMatrix {
    kron(&cl.chirality, &DenseMatrix::identity(n * n, n * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clockshift::FuzzyTorus;
    use crate::linalg::{hermiticity_defect, max_abs, max_abs_diff};
    use crate::metric::IntegerMetric;
    use crate::oracle::hermitian_eigs;
    use crate::qroots::{RootOfUnity, Sign};

    fn pair(n: i64, metric: IntegerMetric) -> crate::clockshift::DerivedPair {
        let root = RootOfUnity::with_default_branches(n, 1).unwrap();
        FuzzyTorus::clock_shift(&root).derived_pair(&metric).unwrap()
    }

    #[test]
    fn two_by_two_square_torus() {
        let root = RootOfUnity::new(2, 1, Sign::Plus, Sign::Plus).unwrap();
        assert!((root.q_quarter() - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)).norm() < 1e-15);
        let t = FuzzyTorus::clock_shift(&root);
        let d = dirac_operator(t.u(), t.v(), root.q_quarter()).unwrap();
        let ev = hermitian_eigs(&d).unwrap();
        assert_eq!(ev.len(), 16);
        assert!(ev[..8].iter().all(|v| (v + 1.0).abs() < 1e-12));
        assert!(ev[8..].iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn hermitian_and_odd() {
        let cl = clifford_module();
        for metric in [IntegerMetric::identity(), IntegerMetric::new(1, 1, 0, 2).unwrap()] {
            let p = pair(3, metric);
            let d = dirac_operator(&p.x, &p.y, p.xi.q_quarter()).unwrap();
            assert!(hermiticity_defect(&d) < 1e-13);
            let g = chirality_operator(&cl, 3);
            assert!(max_abs(&(&d * &g + &g * &d)) < 1e-13);
        }
    }

    #[test]
    fn degenerate_prefactors() {
        let id = DenseMatrix::identity(2, 2);
        for z in [Complex64::from(1.0), Complex64::from(-1.0), I, -I] {
            assert!(matches!(dirac_operator(&id, &id, z), Err(Error::DegenerateDeformation(_))));
        }
    }

    #[test]
    fn split_and_square() {
        for n in 2..=6 {
            for metric in [IntegerMetric::identity(), IntegerMetric::new(2, 0, 1, 2).unwrap()] {
                let p = pair(n, metric);
                let Ok(d) = dirac_operator(&p.x, &p.y, p.xi.q_quarter()) else {
                    continue;
                };
                let (ex, ey) = ex_ey_split(&p.x, &p.y, p.xi.q_quarter()).unwrap();
                assert!(max_abs_diff(&(&ex + &ey), &d) < 1e-13);
                let scale = max_abs(&ex) * max_abs(&ey);
                assert!(max_abs(&(&ex * &ey + &ey * &ex)) <= 1e-10 * scale.max(1.0));
                let dd = &d * &d;
                assert!(max_abs_diff(&dd, &(&ex * &ex + &ey * &ey)) <= 1e-10 * max_abs(&dd));
                let formula = dirac_squared_formula(&p.x, &p.y, p.xi.q_half(), p.xi.q_quarter()).unwrap();
                assert!(max_abs_diff(&formula, &dd) <= 1e-10 * max_abs(&dd), "N={n} {metric}");
            }
        }
    }

    #[test]
    fn swap_symmetry() {
        let p = pair(4, IntegerMetric::identity());
        let cl = clifford_module();
        let [g1, g2, g3, g4] = &cl.gammas;
        let (_, ey) = ex_ey_split(&p.x, &p.y, p.xi.q_quarter()).unwrap();
        let swapped = ex_part([g3, g4, g1, g2], &p.y, p.xi.q_quarter().inv()).unwrap();
        assert!(max_abs_diff(&ey, &swapped) < 1e-13);
    }

    #[test]
    fn coefficient_rigidity() {
        let p = pair(4, IntegerMetric::identity());
        let xi = p.xi.q_quarter();
        let (ex, ey) = ex_ey_split(&p.x, &p.y, xi).unwrap();
        let base = max_abs(&(&ex * &ey + &ey * &ex));
        // Rescale only the connection part of E_X by 1 + 1e-3.
        let cl = clifford_module();
        let [g1, g2, g3, g4] = &cl.gammas;
        let ex_full = ex_part([g1, g2, g3, g4], &p.x, xi).unwrap();
        let xs = p.x.adjoint();
        let sum = &p.x + &xs;
        let diff = (&xs - &p.x) * I;
        let conn = (kron(&(g2 * g3 * g4), &acom(&sum).unwrap()) - kron(&(g1 * g3 * g4), &acom(&diff).unwrap()))
            / ((xi + xi.inv()) * 4.0);
        let perturbed = ex_full - conn * Complex64::from(1e-3);
        let broken = max_abs(&(&perturbed * &ey + &ey * &perturbed));
        assert!(base < 1e-12);
        assert!(broken > 1e-5, "anticommutator {broken:e}");
    }

    #[test]
    fn square_commutes_with_chirality_and_is_positive() {
        let p = pair(3, IntegerMetric::identity());
        let d2 = dirac_squared_formula(&p.x, &p.y, p.xi.q_half(), p.xi.q_quarter()).unwrap();
        let g = chirality_operator(&clifford_module(), 3);
        assert!(max_abs(&(&d2 * &g - &g * &d2)) < 1e-12);
        assert!(hermitian_eigs(&d2).unwrap()[0] > -1e-10);
    }
}
