//! Eigenpairs of an oriented potential straight from the Walcher reduction.
//!
//! cargo run --example eigenpairs -- 1.3 -1.0 0.4

use octupolar::eigen_solver::{count_bound, solve_oriented, walcher_coefficients};
use octupolar::potential::{eval_potential, from_rho_chi_k, OrientedParams};

fn main() -> octupolar::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (rho, chi, k) = match args[..] {
        [r, c, k] => (r, c, k),
        _ => (1.3, -1.0, 0.4),
    };
    let p = OrientedParams::new(rho, chi, k)?;
    let w = walcher_coefficients(&p);
    println!("W coefficients S0..S6: {:?}", w);

    let sol = solve_oriented(&p)?;
    let t = from_rho_chi_k(&p)?;
    for pair in &sol.pairs {
        let check = eval_potential(&t, &pair.x) - pair.lambda;
        println!("{:>10.6}  {:?}  {:?}  (Φ − λ = {:.1e})", pair.lambda, pair.x, pair.branch, check);
    }
    println!(
        "{} critical points, {} distinct eigenvalues, generic bound {}",
        sol.critical_point_total(),
        sol.distinct_eigenvalues(),
        count_bound(3, 3)?
    );
    Ok(())
}
