//! Clock and shift matrices, normalised monomials, translations and the
//! modular transformations `P_A`, `P_B`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, unitarity_defect, unitary_pow, DenseMatrix, ONE, ZERO};
use crate::metric::IntegerMetric;
use crate::qroots::RootOfUnity;

/// Tolerance for the defining relations of a torus.
pub const RELATION_TOL: f64 = 1e-12;

/// `diag(1, q, ..., q^{N-1})`.
pub fn clock(n: usize, root: &RootOfUnity) -> DenseMatrix {
    let q = root.q_phase();
    DenseMatrix::from_fn(n, n, |i, j| if i == j { q.pow(i as i64).value() } else { ZERO })
}

/// Cyclic permutation with `S[(j+1) mod N, j] = 1`.
pub fn shift(n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |i, j| if i == (j + 1) % n { ONE } else { ZERO })
}

/// Unitaries `U`, `V` with `UV = Q VU`, together with the root `Q` and its branches.
#[derive(Clone, Debug)]
pub struct FuzzyTorus {
    u: DenseMatrix,
    v: DenseMatrix,
    root: RootOfUnity,
}

impl FuzzyTorus {
    /// Checks unitarity and `UV = QVU` to [`RELATION_TOL`].
    pub fn new(u: DenseMatrix, v: DenseMatrix, root: RootOfUnity) -> Result<Self> {
        if !u.is_square() || u.shape() != v.shape() {
            return Err(Error::ShapeMismatch(format!(
                "U is {:?}, V is {:?}",
                u.shape(),
                v.shape()
            )));
        }
        for (name, m) in [("U", &u), ("V", &v)] {
            let defect = unitarity_defect(m);
            if defect > RELATION_TOL {
                return Err(Error::InvalidTorus(format!(
                    "{name} is not unitary (defect {defect:e})"
                )));
            }
        }
        let gap = max_abs_diff(&(&u * &v), &((&v * &u) * root.q()));
        if gap > RELATION_TOL {
            return Err(Error::InvalidTorus(format!("UV != QVU (gap {gap:e})")));
        }
        Ok(Self { u, v, root })
    }

    /// `U = C`, `V = S` of size `N = order(q)`.
    pub fn clock_shift(root: &RootOfUnity) -> Self {
        let n = root.order() as usize;
        Self {
            u: clock(n, root),
            v: shift(n),
            root: *root,
        }
    }

    pub fn u(&self) -> &DenseMatrix {
        &self.u
    }

    pub fn v(&self) -> &DenseMatrix {
        &self.v
    }

    /// `Q` with its `Q^{1/2}`, `Q^{1/4}` branches.
    pub fn root(&self) -> &RootOfUnity {
        &self.root
    }

    pub fn q(&self) -> Complex64 {
        self.root.q()
    }

    pub fn q_half(&self) -> Complex64 {
        self.root.q_half()
    }

    /// Side length of the matrices.
    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// `E^{(m,n)} = Q^{-mn/2} U^m V^n`.
    pub fn monomial(&self, m: i64, n: i64) -> DenseMatrix {
        let phase = self.root.half_phase().pow(-m * n).value();
        (unitary_pow(&self.u, m) * unitary_pow(&self.v, n)) * phase
    }

    /// `X = E^{(a,b)}`, `Y = E^{(c,d)}` and `Ξ = Q^{ad-bc}`.
    pub fn derived_pair(&self, metric: &IntegerMetric) -> Result<DerivedPair> {
        let x = self.monomial(metric.a, metric.b);
        let y = self.monomial(metric.c, metric.d);
        let xi = self.root.power(metric.det());
        let gap = max_abs_diff(&(&x * &y), &((&y * &x) * xi.q()));
        if gap > RELATION_TOL * self.dim() as f64 {
            return Err(Error::InvalidTorus(format!("XY != ΞYX (gap {gap:e})")));
        }
        Ok(DerivedPair { x, y, xi })
    }

    /// `P_{(j,n)} = V^{-j} U^n`, so that `P U P^{-1} = Q^j U` and `P V P^{-1} = Q^n V`.
    pub fn translation_op(&self, j: i64, n: i64) -> DenseMatrix {
        unitary_pow(&self.v, -j) * unitary_pow(&self.u, n)
    }
}

/// Generators selected by an integral metric, with `XY = ΞYX`.
#[derive(Clone, Debug)]
pub struct DerivedPair {
    pub x: DenseMatrix,
    pub y: DenseMatrix,
    pub xi: RootOfUnity,
}

/// `(P_A)_{jk} = N^{-1/2} q^{(j-k)^2/2}`, with `q^{1/2}` on the branch carried by `root`.
pub fn modular_shear(root: &RootOfUnity) -> DenseMatrix {
    let n = root.order() as usize;
    let norm = 1.0 / (n as f64).sqrt();
    let half = root.half_phase();
    DenseMatrix::from_fn(n, n, |j, k| {
        let s = j as i64 - k as i64;
        half.pow(s * s).value() * norm
    })
}

/// `(P_B)_{jk} = N^{-1/2} q^{jk}`.
pub fn modular_rot(root: &RootOfUnity) -> DenseMatrix {
    let n = root.order() as usize;
    let norm = 1.0 / (n as f64).sqrt();
    let q = root.q_phase();
    DenseMatrix::from_fn(n, n, |j, k| q.pow((j * k) as i64).value() * norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, identity};
    use crate::qroots::Sign;

    fn cs(n: i64) -> FuzzyTorus {
        FuzzyTorus::clock_shift(&RootOfUnity::with_default_branches(n, 1).unwrap())
    }

    fn conj_by(p: &DenseMatrix, x: &DenseMatrix) -> DenseMatrix {
        p * x * p.adjoint()
    }

    #[test]
    fn small_clock_and_shift() {
        let r2 = RootOfUnity::new(2, 1, Sign::Plus, Sign::Plus).unwrap();
        let c = clock(2, &r2);
        assert!((c[(1, 1)] + ONE).norm() < 1e-15);
        let s = shift(2);
        assert_eq!(s[(0, 1)], ONE);
        assert_eq!(s[(1, 0)], ONE);
        assert!(max_abs_diff(&(&c * &s), &(-(&s * &c))) < 1e-15);
        let r4 = RootOfUnity::new(4, 1, Sign::Plus, Sign::Plus).unwrap();
        let c4 = clock(4, &r4);
        assert!((c4[(1, 1)] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((c4[(3, 3)] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!(max_abs_diff(&unitary_pow(&shift(3), 3), &identity(3)) == 0.0);
        assert_eq!(clock(1, &RootOfUnity::new(1, 1, Sign::Plus, Sign::Plus).unwrap())[(0, 0)], ONE);
    }

    #[test]
    fn clock_shift_relation() {
        for n in 1..9 {
            let t = cs(n);
            let lhs = t.u() * t.v();
            let rhs = (t.v() * t.u()) * t.q();
            assert!(max_abs_diff(&lhs, &rhs) < RELATION_TOL);
            assert!(FuzzyTorus::new(t.u().clone(), t.v().clone(), *t.root()).is_ok());
        }
        let t = cs(4);
        assert!(matches!(
            FuzzyTorus::new(t.v().clone(), t.u().clone(), *t.root()),
            Err(Error::InvalidTorus(_))
        ));
    }

    #[test]
    fn monomial_multiplication_law() {
        for n in [3i64, 4] {
            let t = cs(n);
            let qh = t.root().half_phase();
            for m in -n..=n {
                for nn in -n..=n {
                    for k in [-n, -1, 0, 2, n] {
                        for l in [-n, -1, 0, 1, n] {
                            let lhs = t.monomial(m, nn) * t.monomial(k, l);
                            let rhs = t.monomial(m + k, nn + l) * qh.pow(m * l - nn * k).value();
                            assert!(max_abs_diff(&lhs, &rhs) < RELATION_TOL);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn commutators_are_quantum_integers() {
        let t = cs(5);
        let w = t.q_half();
        let pref = w - w.inv();
        for (m, n, k, l) in [(1, 0, 0, 1), (2, 1, -1, 3), (1, 1, 1, -1), (3, 2, 1, 4)] {
            let lhs = commutator(&t.monomial(m, n), &t.monomial(k, l)) / pref;
            let rhs = t.monomial(m + k, n + l) * Complex64::from(t.root().qint(m * l - n * k, 1).unwrap());
            assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
        }
    }

    #[test]
    fn periodicity() {
        for n in 2..8i64 {
            let t = cs(n);
            for m in -2..3 {
                for k in -2..3i64 {
                    let sign = if n % 2 == 0 && k.rem_euclid(2) == 1 { -ONE } else { ONE };
                    let shifted = t.monomial(m + n, k);
                    assert!(max_abs_diff(&shifted, &(t.monomial(m, k) * sign)) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn monomials_have_power_one_when_exponents_vanish() {
        // N odd: (E^{(m,n)})^k = 1 whenever km ≡ kn ≡ 0 mod N.
        let t = cs(5);
        for m in 0..5 {
            for n in 0..5 {
                let e = t.monomial(m, n);
                assert!(max_abs_diff(&unitary_pow(&e, 5), &identity(5)) < 1e-12);
            }
        }
    }

    #[test]
    fn monomial_gram_matrix() {
        for n in [2i64, 3, 4] {
            let t = cs(n);
            let basis: Vec<DenseMatrix> = (0..n)
                .flat_map(|m| (0..n).map(move |k| (m, k)))
                .map(|(m, k)| t.monomial(m, k))
                .collect();
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let g = (a.adjoint() * b).trace();
                    let expect = if i == j { n as f64 } else { 0.0 };
                    assert!((g - Complex64::new(expect, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn derived_pairs() {
        let t = cs(4);
        let id = t.derived_pair(&IntegerMetric::identity()).unwrap();
        assert!(max_abs_diff(&id.x, t.u()) < 1e-15);
        assert!(max_abs_diff(&id.y, t.v()) < 1e-15);
        let sq = t.derived_pair(&IntegerMetric::new(2, 0, 0, 2).unwrap()).unwrap();
        assert!(sq.xi.is_degenerate());
        let sh = t.derived_pair(&IntegerMetric::new(1, 1, 0, 1).unwrap()).unwrap();
        let expect = (t.u() * t.v()) * t.q_half().inv();
        assert!(max_abs_diff(&sh.x, &expect) < 1e-14);
        assert_eq!(sh.xi.q_phase(), t.root().q_phase());
    }

    #[test]
    fn translations() {
        let t = cs(3);
        assert!(max_abs_diff(&t.translation_op(0, 0), &identity(3)) == 0.0);
        for j in -3..4 {
            for n in -3..4 {
                let p = t.translation_op(j, n);
                let qj = t.root().q_phase().pow(j).value();
                let qn = t.root().q_phase().pow(n).value();
                assert!(max_abs_diff(&conj_by(&p, t.u()), &(t.u() * qj)) < 1e-12);
                assert!(max_abs_diff(&conj_by(&p, t.v()), &(t.v() * qn)) < 1e-12);
            }
        }
        let ab = t.translation_op(1, 0) * t.translation_op(0, 1);
        let ba = t.translation_op(0, 1) * t.translation_op(1, 0);
        assert!(max_abs_diff(&ab, &ba) > 0.5);
    }

    #[test]
    fn modular_matrices() {
        let trivial = RootOfUnity::new(1, 1, Sign::Plus, Sign::Plus).unwrap();
        assert!(max_abs_diff(&modular_shear(&trivial), &identity(1)) < 1e-15);
        assert!(max_abs_diff(&modular_rot(&trivial), &identity(1)) < 1e-15);

        let r2 = RootOfUnity::new(2, 1, Sign::Plus, Sign::Plus).unwrap();
        let pb = modular_rot(&r2);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expect = DenseMatrix::from_row_slice(
            2,
            2,
            &[h.into(), h.into(), h.into(), (-h).into()],
        );
        assert!(max_abs_diff(&pb, &expect) < 1e-15);
        assert!(max_abs_diff(&conj_by(&pb, &clock(2, &r2)), &shift(2)) < 1e-15);

        for n in 1..=6 {
            let root = RootOfUnity::with_default_branches(n, 1).unwrap();
            let c = clock(n as usize, &root);
            let s = shift(n as usize);
            let pa = modular_shear(&root);
            let pb = modular_rot(&root);
            assert!(unitarity_defect(&pa) < 1e-12, "N = {n}");
            assert!(unitarity_defect(&pb) < 1e-12);
            let cs_half = (&c * &s) * root.q_half().inv();
            assert!(max_abs_diff(&conj_by(&pa, &c), &cs_half) < 1e-12);
            assert!(max_abs_diff(&conj_by(&pa, &s), &s) < 1e-12);
            assert!(max_abs_diff(&conj_by(&pb, &c), &s.adjoint()) < 1e-12);
            assert!(max_abs_diff(&conj_by(&pb, &s), &c) < 1e-12);
            let pb2 = &pb * &pb;
            assert!(max_abs_diff(&conj_by(&pb2, &c), &c.adjoint()) < 1e-12);
            assert!(max_abs_diff(&conj_by(&pb2, &s), &s.adjoint()) < 1e-12);
        }
    }
}
