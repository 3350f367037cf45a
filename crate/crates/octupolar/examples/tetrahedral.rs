//! The tetrahedral potential ρ = 0, K = 1/√2: four maxima with λ = 1
//! at the vertices of a regular tetrahedron.
//!
//! cargo run --example tetrahedral

use octupolar::critical_points::{full_topology, Kind};
use octupolar::linalg;
use octupolar::potential::OrientedParams;

fn main() -> octupolar::Result<()> {
    let p = OrientedParams::new(0.0, -std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_1_SQRT_2)?;
    let topo = full_topology(&p)?;
    println!("{} critical points, index sum {}", topo.total(), topo.index_sum);

    let maxima: Vec<_> = topo.points.iter().filter(|c| c.kind == Kind::Maximum).collect();
    for m in &maxima {
        println!("max  λ = {:.12}  x = {:?}", m.lambda, m.x);
    }
    for (a, ma) in maxima.iter().enumerate() {
        for mb in &maxima[a + 1..] {
            let cos = linalg::dot(&ma.x, &mb.x);
            println!("cos angle {:.12}", cos);
        }
    }
    Ok(())
}
