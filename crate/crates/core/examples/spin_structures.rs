//! All four spin structures from the four-fold covering `U = C², V = S²`
//! at `N = 4N'`: sector dimensions, kernels and the closed-form check.
//!
//! cargo run --example spin_structures -- 3 1 1 0 1

use fuzzy_torus::spincover::{analyze_cover, build_cover};
use fuzzy_torus::{IntegerMetric, RootOfUnity};

fn main() -> fuzzy_torus::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n_prime, metric) = match args[..] {
        [np, a, b, c, d] => (np, IntegerMetric::new(a, b, c, d)?),
        _ => (2, IntegerMetric::identity()),
    };
    let root = RootOfUnity::with_default_branches(4 * n_prime, 1)?;
    let cover = build_cover(n_prime as u64, &root)?;
    let analysis = analyze_cover(&cover, &metric)?;

    println!("N' = {n_prime}, N = {}, metric {metric}", cover.order());
    println!("{:>4} {:>6} {:>6} {:>8} {:>10}", "χ", "σ", "dim", "kernel", "gap");
    for s in &analysis.sectors {
        let l = s.label;
        println!(
            "{:>4} {:>6} {:>6} {:>8} {:>10.2e}",
            format!("{}{}", l.character.0, l.character.1),
            format!("{}{}", l.sigma.0, l.sigma.1),
            s.dim,
            s.kernel_dim,
            s.conjecture.max_abs_gap
        );
    }
    println!(
        "sectors partition the full spectrum: {} (gap {:.2e})",
        analysis.partition.passed(),
        analysis.partition.max_abs_gap
    );
    Ok(())
}
