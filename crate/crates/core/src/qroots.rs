//! Roots of unity with explicit square- and fourth-root branches, and
//! quantum integers `[x]_q` for integer and half/quarter-integer `x`.
//!
//! Every branch is carried as an exact rational multiple of `π` ([`Phase`]),
//! so powers such as `Ξ = q^{ad-bc}` keep their branches without rounding.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the imaginary part of a quantum integer.
pub const QINT_IMAG_TOL: f64 = 1e-12;

/// The unit complex number `e^{iπ num/den}`, kept in lowest terms with
/// `0 <= num < 2 den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase {
    num: i64,
    den: i64,
}

impl Phase {
    pub const ONE: Phase = Phase { num: 0, den: 1 };
    pub const MINUS_ONE: Phase = Phase { num: 1, den: 1 };
    pub const I: Phase = Phase { num: 1, den: 2 };

    /// `e^{iπ num/den}`.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den > 0, "phase denominator must be positive");
        let g = gcd_i128(num.abs(), den).max(1);
        let (num, den) = (num / g, den / g);
        let num = num.rem_euclid(2 * den);
        Phase {
            num: num as i64,
            den: den as i64,
        }
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    pub fn pow(self, m: i64) -> Self {
        Phase::new(self.num as i128 * m as i128, self.den as i128)
    }

    pub fn mul(self, other: Phase) -> Self {
        let (a, b) = (self.num as i128, self.den as i128);
        let (c, d) = (other.num as i128, other.den as i128);
        Phase::new(a * d + c * b, b * d)
    }

    pub fn inv(self) -> Self {
        self.pow(-1)
    }

    /// Square root with angle in `[0, π)`.
    pub fn principal_sqrt(self) -> Self {
        Phase::new(self.num as i128, 2 * self.den as i128)
    }

    /// Angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        PI * self.num as f64 / self.den as f64
    }

    pub fn value(self) -> Complex64 {
        let (s, c) = self.angle().sin_cos();
        Complex64::new(c, s)
    }

    /// `true` for `±1`.
    pub fn is_real(self) -> bool {
        self.num == 0 || self.num == self.den
    }
}

/// Branch selector for `q^{1/2}` and `q^{1/4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn phase(self) -> Phase {
        match self {
            Sign::Plus => Phase::ONE,
            Sign::Minus => Phase::MINUS_ONE,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "+1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Config(format!("invalid branch sign {other:?}"))),
        }
    }
}

/// A primitive `N`-th root of unity `q = e^{2πiK/N}` with chosen branches.
///
/// * `q^{1/2} = ±e^{iπK/N}` (sign = `half_branch`);
/// * `q^{1/4} = ±ρ` (sign = `quarter_branch`) where `ρ = e^{iπK/2N}` when the
///   half branch is `+`, and `ρ = i e^{iπK/2N}` when it is `-`, so that
///   `(q^{1/4})^2 = q^{1/2}` always holds;
/// * `q^{1/8}` is the square root of `q^{1/4}` with angle in `[0, π)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: u64,
    k: i64,
    half_branch: Sign,
    quarter_branch: Sign,
    q: Phase,
    half: Phase,
    quarter: Phase,
    eighth: Phase,
}

impl RootOfUnity {
    /// Root with explicit branches.
    pub fn new(n: i64, k: i64, half_branch: Sign, quarter_branch: Sign) -> Result<Self> {
        if n < 1 {
            return Err(Error::NonPositiveOrder(n));
        }
        if gcd_i128(k.rem_euclid(n) as i128, n as i128) != 1 {
            return Err(Error::NotCoprime { n, k });
        }
        let (n128, k128) = (n as i128, k as i128);
        let q = Phase::new(2 * k128, n128);
        let half = Phase::new(k128, n128).mul(half_branch.phase());
        let rho = match half_branch {
            Sign::Plus => Phase::new(k128, 2 * n128),
            Sign::Minus => Phase::new(k128, 2 * n128).mul(Phase::I),
        };
        let quarter = rho.mul(quarter_branch.phase());
        Ok(Self {
            order: n as u64,
            k,
            half_branch,
            quarter_branch,
            q,
            half,
            quarter,
            eighth: quarter.principal_sqrt(),
        })
    }

    /// Root with the conventional branches: `q^{1/2} = e^{iπK/N}` for even `N`,
    /// and for odd `N` the sign making `q^{N/2} = +1`; `q^{1/4}` on the `+` branch.
    pub fn with_default_branches(n: i64, k: i64) -> Result<Self> {
        Self::new(n, k, Self::default_half_branch(n, k), Sign::Plus)
    }

    /// `-` exactly when `N` and `K` are both odd.
    pub fn default_half_branch(n: i64, k: i64) -> Sign {
        if n.rem_euclid(2) == 1 && k.rem_euclid(2) == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn half_branch(&self) -> Sign {
        self.half_branch
    }

    pub fn quarter_branch(&self) -> Sign {
        self.quarter_branch
    }

    pub fn q_phase(&self) -> Phase {
        self.q
    }

    pub fn half_phase(&self) -> Phase {
        self.half
    }

    pub fn quarter_phase(&self) -> Phase {
        self.quarter
    }

    pub fn q(&self) -> Complex64 {
        self.q.value()
    }

    pub fn q_half(&self) -> Complex64 {
        self.half.value()
    }

    pub fn q_quarter(&self) -> Complex64 {
        self.quarter.value()
    }

    /// `q = 1`: quantum integers and the Laplace/Dirac prefactors are undefined.
    pub fn is_degenerate(&self) -> bool {
        self.half.is_real()
    }

    /// Integer `K'` with `q^{1/2} = e^{iπK'/N}`, in `[0, 2N)`.
    pub fn effective_k(&self) -> i64 {
        // half = e^{iπ num/den} and den divides N.
        let n = self.order as i64;
        self.half.num * (n / self.half.den)
    }

    /// `q^m` with branches `(q^{1/2})^m`, `(q^{1/4})^m`, `(q^{1/8})^m`.
    pub fn power(&self, m: i64) -> RootOfUnity {
        let n = self.order as i128;
        let r = (self.k as i128 * m as i128).rem_euclid(n);
        let (order, k) = if r == 0 {
            (1i128, 0i128)
        } else {
            let g = gcd_i128(r, n);
            (n / g, r / g)
        };
        let half = self.half.pow(m);
        let half_branch = if half == Phase::new(k, order) {
            Sign::Plus
        } else {
            debug_assert_eq!(half, Phase::new(k, order).mul(Phase::MINUS_ONE));
            Sign::Minus
        };
        let rho = match half_branch {
            Sign::Plus => Phase::new(k, 2 * order),
            Sign::Minus => Phase::new(k, 2 * order).mul(Phase::I),
        };
        let quarter = self.quarter.pow(m);
        let quarter_branch = if quarter == rho {
            Sign::Plus
        } else {
            debug_assert_eq!(quarter, rho.mul(Phase::MINUS_ONE));
            Sign::Minus
        };
        RootOfUnity {
            order: order as u64,
            k: k as i64,
            half_branch,
            quarter_branch,
            q: self.q.pow(m),
            half,
            quarter,
            eighth: self.eighth.pow(m),
        }
    }

    /// Quantum number `[num/den]_q = (q^{num/2den} - q^{-num/2den}) / (q^{1/2} - q^{-1/2})`
    /// for `den ∈ {1, 2, 4}`.
    pub fn qint(&self, num: i64, den: i64) -> Result<f64> {
        let base = match den {
            1 => self.half,
            2 => self.quarter,
            4 => self.eighth,
            other => return Err(Error::UnsupportedDenominator(other)),
        };
        if self.is_degenerate() {
            return Err(Error::DegenerateRoot);
        }
        let z = base.pow(num).value();
        let w = self.half.value();
        let r = (z - z.conj()) / (w - w.conj());
        if r.im.abs() > QINT_IMAG_TOL {
            return Err(Error::NonRealResult(r.im));
        }
        Ok(r.re)
    }

    /// `[x]_q` for `x = twice / 2`, the form used by spectrum labels.
    pub fn qint_half(&self, twice: i64) -> Result<f64> {
        if twice % 2 == 0 {
            self.qint(twice / 2, 1)
        } else {
            self.qint(twice, 2)
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q = exp(2πi·{}/{}), half {}, quarter {}",
            self.k, self.order, self.half_branch, self.quarter_branch
        )
    }
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn trivial_root() {
        let r = RootOfUnity::new(1, 1, Sign::Plus, Sign::Plus).unwrap();
        assert!(close(r.q(), Complex64::new(1.0, 0.0)));
        assert!(r.is_degenerate());
        assert!(matches!(r.qint(1, 1), Err(Error::DegenerateRoot)));
    }

    #[test]
    fn order_four() {
        let r = RootOfUnity::new(4, 1, Sign::Plus, Sign::Plus).unwrap();
        assert!(close(r.q(), Complex64::new(0.0, 1.0)));
        assert!(close(r.q_half(), Complex64::from_polar(1.0, PI / 4.0)));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            RootOfUnity::new(4, 2, Sign::Plus, Sign::Plus),
            Err(Error::NotCoprime { n: 4, k: 2 })
        ));
        assert!(matches!(
            RootOfUnity::new(0, 1, Sign::Plus, Sign::Plus),
            Err(Error::NonPositiveOrder(0))
        ));
        let r = RootOfUnity::with_default_branches(5, 1).unwrap();
        assert!(matches!(r.qint(1, 3), Err(Error::UnsupportedDenominator(3))));
    }

    #[test]
    fn branches_square_correctly() {
        for n in 1..12 {
            for k in -13..13 {
                for h in [Sign::Plus, Sign::Minus] {
                    for t in [Sign::Plus, Sign::Minus] {
                        let Ok(r) = RootOfUnity::new(n, k, h, t) else {
                            continue;
                        };
                        assert!(close(r.q_half() * r.q_half(), r.q()));
                        assert!(close(r.q_quarter() * r.q_quarter(), r.q_half()));
                        assert!(close(r.q().powi(n as i32), Complex64::new(1.0, 0.0)));
                        for m in 1..n {
                            assert!(!close(r.q().powi(m as i32), Complex64::new(1.0, 0.0)));
                        }
                        assert!(close(
                            Complex64::from_polar(1.0, PI * r.effective_k() as f64 / n as f64),
                            r.q_half()
                        ));
                    }
                }
            }
        }
    }

    #[test]
    fn default_branch_odd_order_has_unit_half_power() {
        for n in [3, 5, 7, 9, 11] {
            for k in 1..n {
                let Ok(r) = RootOfUnity::with_default_branches(n, k) else {
                    continue;
                };
                assert!(close(r.q_half().powi(n as i32), Complex64::new(1.0, 0.0)));
            }
        }
    }

    #[test]
    fn small_quantum_integers() {
        let r = RootOfUnity::new(4, 1, Sign::Plus, Sign::Plus).unwrap();
        assert_abs_diff_eq!(r.qint(0, 1).unwrap(), 0.0);
        assert_abs_diff_eq!(r.qint(1, 1).unwrap(), 1.0, epsilon = 1e-15);
        // sin(2π/4)/sin(π/4)
        assert_abs_diff_eq!(r.qint(2, 1).unwrap(), 2f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn power_keeps_branches() {
        let q = RootOfUnity::new(8, 1, Sign::Plus, Sign::Plus).unwrap();
        let big_q = q.power(4);
        assert_eq!(big_q.order(), 2);
        assert!(close(big_q.q(), q.q().powi(4)));
        assert!(close(big_q.q_half(), q.q().powi(2)));
        assert!(close(big_q.q_quarter(), q.q()));
        for m in -9..9 {
            for h in [Sign::Plus, Sign::Minus] {
                let r = RootOfUnity::new(12, 5, h, Sign::Minus).unwrap().power(m);
                let base = RootOfUnity::new(12, 5, h, Sign::Minus).unwrap();
                assert!(close(r.q_half(), base.q_half().powi(m as i32)));
                assert!(close(r.q_quarter(), base.q_quarter().powi(m as i32)));
                // Rebuilding from the derived data gives the same branches.
                let rebuilt = RootOfUnity::new(
                    r.order() as i64,
                    r.k(),
                    r.half_branch(),
                    r.quarter_branch(),
                )
                .unwrap();
                assert!(close(rebuilt.q_half(), r.q_half()));
                assert!(close(rebuilt.q_quarter(), r.q_quarter()));
            }
        }
    }

    #[test]
    fn rational_arguments_follow_sine_form() {
        // q^{1/4} = e^{iπK/2N}: [x/2]_q = sin(πxK/2N)/sin(πK/N).
        let (n, k) = (9, 2);
        let r = RootOfUnity::new(n, k, Sign::Plus, Sign::Plus).unwrap();
        for x in -20..20 {
            let expect = (PI * x as f64 * k as f64 / (2.0 * n as f64)).sin()
                / (PI * k as f64 / n as f64).sin();
            assert_abs_diff_eq!(r.qint(x, 2).unwrap(), expect, epsilon = 1e-12);
            let expect4 = (PI * x as f64 * k as f64 / (4.0 * n as f64)).sin()
                / (PI * k as f64 / n as f64).sin();
            assert_abs_diff_eq!(r.qint(x, 4).unwrap(), expect4, epsilon = 1e-12);
        }
    }
}
