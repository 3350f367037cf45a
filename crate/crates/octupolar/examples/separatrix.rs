//! Separatrix height K★(ρ) at fixed χ, the cusp where its two vaults meet,
//! and the near-cusp expansion.
//!
//! cargo run --release --example separatrix

use octupolar::separatrix::{cusp_chi, find_cusp, k_near_cusp, separatrix_k};
use std::f64::consts::FRAC_PI_3;

fn main() -> octupolar::Result<()> {
    let chi = -FRAC_PI_3;
    for i in 1..=10 {
        let rho = 0.2 * i as f64;
        let ks = separatrix_k(rho, chi)?;
        println!("ρ={rho:.1}  K★={:.10}  s★={:+.6}  {:?}", ks.k, ks.s_star, ks.branch);
    }

    let (rho_c, k_c) = find_cusp(chi)?;
    println!("cusp at ρ={rho_c:.8} K={k_c:.8}; ρc from χ: {:.8}", -1.0 / chi.sin());
    println!("cusp χ for ρ=ρc: {:?}", cusp_chi(rho_c));

    for d in [1e-2, 1e-3, -1e-3, -1e-2] {
        let rho = rho_c + d;
        println!("Δρ={d:+e}  exact {:.8}  expansion {:.8}", separatrix_k(rho, chi)?.k, k_near_cusp(rho, chi));
    }
    Ok(())
}
