//! Potential values on a sphere grid written as CSV, ready for plotting.
//!
//! cargo run --example plot_grid -- grid.csv

use octupolar::cli::fmt17;
use octupolar::potential::{from_rho_chi_k, sample_grid, GridMode, OrientedParams, SphereGrid};
use std::io::Write;

fn main() -> octupolar::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "grid.csv".into());
    let t = from_rho_chi_k(&OrientedParams::new(0.5, -std::f64::consts::FRAC_PI_3, 0.0)?)?;
    let rows = sample_grid(&t, &SphereGrid::new(181, 91)?, GridMode::Sphere);

    let mut out = std::io::BufWriter::new(std::fs::File::create(&path)?);
    writeln!(out, "theta,phi,x1,x2,x3,phi_value")?;
    for r in &rows {
        let vals = [r.theta, r.phi, r.x1, r.x2, r.x3, r.phi_value].map(fmt17);
        writeln!(out, "{}", vals.join(","))?;
    }
    println!("wrote {} rows to {path}", rows.len());
    Ok(())
}
