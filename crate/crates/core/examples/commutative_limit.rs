//! Low-lying Dirac eigenvalues approaching the flat-torus values as `N` grows.

use fuzzy_torus::dirac::spectrum::{dirac_squared_eigenvalue, HalfInt};
use fuzzy_torus::oracle::commutative_dirac_spectrum;
use fuzzy_torus::{IntegerMetric, RootOfUnity, Sign};

fn main() -> fuzzy_torus::Result<()> {
    let metric = IntegerMetric::new(2, 1, 0, 1)?;
    let sigma = metric.canonical_spin_structure();
    let labels: Vec<(i64, i64)> = commutative_dirac_spectrum(&metric, sigma, 2)
        .into_iter()
        .filter(|r| r.sign > 0)
        .map(|r| (r.k.doubled(), r.l.doubled()))
        .filter(|(k, l)| k.abs() <= 3 && l.abs() <= 3)
        .take(5)
        .collect();

    print!("{:>6}", "N");
    for (k, l) in &labels {
        print!(" {:>14}", format!("({},{})", HalfInt(*k), HalfInt(*l)));
    }
    println!();
    for n in [8, 16, 32, 64, 128, 256] {
        let root = RootOfUnity::new(n, 1, Sign::Plus, Sign::Plus)?;
        print!("{n:>6}");
        for &(k, l) in &labels {
            print!(" {:>14.8}", dirac_squared_eigenvalue(&metric, &root, k, l)?.sqrt());
        }
        println!();
    }
    print!("{:>6}", "flat");
    let det = metric.det() as f64;
    for &(k, l) in &labels {
        let (k, l) = (k as f64 / 2.0, l as f64 / 2.0);
        let p = metric.d as f64 * k - metric.c as f64 * l;
        let r = metric.a as f64 * l - metric.b as f64 * k;
        print!(" {:>14.8}", (p * p + r * r).sqrt() / det.abs());
    }
    println!();
    Ok(())
}
