//! Adding a trace part to a traceless tensor without moving the four
//! tetrahedral critical points.
//!
//! cargo run --example tetra_constraints

use octupolar::potential::Cubic;
use octupolar::trace_extension::{tetra_constraints, tetra_vertices, TetraMode};

fn main() {
    let modes = [
        TetraMode::Oriented { eps: 1e-3, d_alpha2: 0.4, d_alpha3: -0.2, d_beta3: 0.1 },
        TetraMode::FourStars { alpha2: 0.9, alpha3: 0.7, beta1: 0.2, beta3: -0.3 },
        TetraMode::Nonperturbative { alpha2: 1.0, alpha3: 0.5 },
    ];
    for mode in modes {
        let c = tetra_constraints(&mode);
        let cubic = Cubic::new(&c.params.to_sym());
        let residuals: Vec<String> = tetra_vertices().iter().map(|v| format!("{:.1e}", cubic.residual(v))).collect();
        println!("{mode:?}");
        println!("  A = {:?}, vertex residuals {}", c.params.a, residuals.join(" "));
        if let Some(h) = c.hessian {
            println!("  Hessian p1 {:?}  p2–p4 {:?}  all maxima {}", h.p1, h.p2_p4, h.all_maxima);
        }
    }
}
