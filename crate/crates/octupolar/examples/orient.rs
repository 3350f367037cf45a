//! Orienting an arbitrary octupolar tensor: rotate a global maximum to the
//! north pole and read off (ρ, χ, K).
//!
//! cargo run --example orient

use octupolar::linalg;
use octupolar::potential::{from_rho_chi_k, orient, OrientedParams};

fn main() -> octupolar::Result<()> {
    let p = OrientedParams::new(1.1, -1.1, 0.6)?;
    let r = linalg::mat_mul(&linalg::rot_z(0.4), &[[1.0, 0.0, 0.0], [0.0, 0.6, -0.8], [0.0, 0.8, 0.6]]);
    let t = from_rho_chi_k(&p)?.rotated(&r).scaled(2.5);

    let o = orient(&t)?;
    println!("oriented ρ={:.12} χ={:.12} K={:.12}", o.params.rho, o.params.chi, o.params.bigk);
    println!("scale {:.12}, mirrored {}", o.scale, o.mirrored);
    let back = o.undo();
    println!("undo error {:.1e}", back.to_tensor().max_abs_diff(&t.to_tensor()));
    Ok(())
}
