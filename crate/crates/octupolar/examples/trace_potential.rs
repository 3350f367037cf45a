//! Trace-type potentials Φt = A2 x2 x1² + A3 x3 x2² as μ = A3/A2 varies:
//! p4 and p5 run along an ellipse and merge with p3 or p2 at |μ| = √2.
//!
//! cargo run --example trace_potential

use octupolar::trace_extension::{trace_critical_points, TraceParams};

fn main() -> octupolar::Result<()> {
    for mu in [-2.0, -2f64.sqrt(), -1.0, -0.5, 0.0, 0.5, 1.0, 2f64.sqrt(), 2.0] {
        let rep = trace_critical_points(&TraceParams::from_mu(1.0, mu)?)?;
        let row: Vec<String> = rep
            .points
            .iter()
            .map(|p| format!("{:?}:{:?}({:+})", p.label, p.kind, p.index))
            .collect();
        println!("μ={mu:+.4}  {}", row.join("  "));
        if !rep.continuum.is_empty() {
            println!("          continuum: {:?}", rep.continuum);
        }
    }
    Ok(())
}
