//! Quantum integers `[x]_q` at a root of unity, on both square-root branches.
//!
//! cargo run --example quantum_integers -- 7 2

use fuzzy_torus::{RootOfUnity, Sign};

fn main() -> fuzzy_torus::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let n = args.first().copied().unwrap_or(7);
    let k = args.get(1).copied().unwrap_or(1);

    let q = RootOfUnity::with_default_branches(n, k)?;
    println!("q = e^(2πi·{k}/{n}), half branch {:?}, effective K' = {}", q.half_branch(), q.effective_k());
    println!("q^1/2 = {:.6}, q^1/4 = {:.6}", q.q_half(), q.q_quarter());

    println!("{:>6} {:>14} {:>14}", "x", "[x]_q", "[x/2]_q");
    for x in -3..=n {
        println!("{x:>6} {:>14.8} {:>14.8}", q.qint(x, 1)?, q.qint_half(x)?);
    }

    // The other half branch flips the sign of [x]_q for even x.
    let other = match q.half_branch() {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    };
    let alt = RootOfUnity::new(n, k, other, Sign::Plus)?;
    println!("[2]_q on the other branch: {:.8}", alt.qint(2, 1)?);
    Ok(())
}
