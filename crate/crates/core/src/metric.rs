//! Integral metrics `A = [[a, b], [c, d]]`, their Hermite normal form and the
//! induced spin structure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer matrix `A = [[a, b], [c, d]]` with `ad - bc != 0`.
///
/// On the fuzzy torus it selects the generators `X = E^{(a,b)}` and `Y = E^{(c,d)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMetric {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntegerMetric {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c == 0 {
            return Err(Error::DegenerateMetric { a, b, c, d });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    /// The lower-triangular form `[[a, 0], [c, d]]`.
    pub fn from_hnf(a: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a, 0, c, d)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// `σ_c = (a + c mod 2, b + d mod 2)`.
    pub fn canonical_spin_structure(&self) -> (u8, u8) {
        (
            (self.a + self.c).rem_euclid(2) as u8,
            (self.b + self.d).rem_euclid(2) as u8,
        )
    }

    /// Representative of `{A B : B ∈ GL(2, Z)}` of the form `[[a, 0], [c, d]]`
    /// with `a > 0` and `0 <= c < d`.
    pub fn hermite_normal_form(&self) -> Self {
        let (g, x, y) = extended_gcd(self.a, self.b);
        let (g, x, y) = if g < 0 { (-g, -x, -y) } else { (g, x, y) };
        // B = [[x, -b/g], [y, a/g]] has det 1 and sends the first row to (g, 0).
        let c = self.c * x + self.d * y;
        let mut d = (self.d * self.a - self.c * self.b) / g;
        if d < 0 {
            d = -d;
        }
        Self {
            a: g,
            b: 0,
            c: c.rem_euclid(d),
            d,
        }
    }

    pub fn is_hnf(&self) -> bool {
        self.b == 0 && self.a > 0 && 0 <= self.c && self.c < self.d
    }

    /// All Hermite normal forms with entries in `0..=max_entry`.
    pub fn hnf_family(max_entry: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for a in 1..=max_entry {
            for d in 1..=max_entry {
                for c in 0..d.min(max_entry + 1) {
                    out.push(Self { a, b: 0, c, d });
                }
            }
        }
        out
    }
}

impl Default for IntegerMetric {
    fn default() -> Self {
        Self::identity()
    }
}

impl fmt::Display for IntegerMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Parses `a,b,c,d` or the Hermite triple `a,c,d`.
impl FromStr for IntegerMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Config(format!("metric entry {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match parts.as_slice() {
            &[a, b, c, d] => Self::new(a, b, c, d),
            &[a, c, d] => Self::from_hnf(a, c, d),
            _ => Err(Error::Config(format!(
                "metric needs 4 values a,b,c,d or 3 values a,c,d, got {s:?}"
            ))),
        }
    }
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b)` up to sign.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}
