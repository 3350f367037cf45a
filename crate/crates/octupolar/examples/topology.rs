//! Critical-point types and Poincaré–Hopf on the singular fixtures.
//!
//! cargo run --example topology

use octupolar::critical_points::full_topology;
use octupolar::potential::OrientedParams;
use std::f64::consts::FRAC_PI_2;

fn main() -> octupolar::Result<()> {
    let cases = [(1.0, 0.0), (2.0, 0.0), (2.0, 0.5), (2.0, 1.0), (0.5, 0.2), (1.5, 1.0)];
    for (rho, k) in cases {
        let topo = full_topology(&OrientedParams::new(rho, -FRAC_PI_2, k)?)?;
        let c = &topo.counts;
        println!(
            "ρ={rho:<4} K={k:<4} total {:>2}  max {} min {} saddle {} degenerate {} monkey {}  Σι = {}",
            topo.total(),
            c.maxima,
            c.minima,
            c.saddles,
            c.degenerate_saddles,
            c.monkey_saddles,
            topo.index_sum
        );
    }
    Ok(())
}
