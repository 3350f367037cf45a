//! The closed-form solver against brute-force multi-start Newton.
//!
//! cargo run --release --example oracle

use octupolar::critical_points::{full_topology, hausdorff_angle, oracle_critical_points};
use octupolar::potential::{from_rho_chi_k, OrientedParams};

fn main() -> octupolar::Result<()> {
    for (rho, chi, k) in [(0.7, -1.2, 0.3), (1.6, -0.8, 1.1), (1.9, -1.45, 0.05)] {
        let p = OrientedParams::new(rho, chi, k)?;
        let solved: Vec<_> = full_topology(&p)?.points.iter().map(|c| c.x).collect();
        let oracle = oracle_critical_points(&from_rho_chi_k(&p)?, 100_000)?;
        let found: Vec<_> = oracle.points.iter().map(|c| c.x).collect();
        println!(
            "({rho}, {chi}, {k}): solver {} oracle {} hausdorff {:.1e}",
            solved.len(),
            found.len(),
            hausdorff_angle(&solved, &found)
        );
    }
    Ok(())
}
