//! Octupolar tensors from Maxwell multipoles, and some dimension counts.
//!
//! cargo run --example multipoles

use octupolar::potential::orient;
use octupolar::tensor_core::{from_multipoles, tetrahedral_tensor, young_dimensions, YoungDiagram};

fn main() -> octupolar::Result<()> {
    let s = 1.0 / 3f64.sqrt();
    let t = from_multipoles(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[s, s, s], 1.0)?;
    println!("irr(a1 ⊗ a2 ⊗ a3) = {t:?}");
    let o = orient(&t)?;
    println!("oriented: ρ={:.6} χ={:.6} K={:.6}", o.params.rho, o.params.chi, o.params.bigk);

    let tet = orient(&tetrahedral_tensor(1.0))?;
    println!("tetrahedral tensor: ρ={:.2e} K={:.12}", tet.params.rho, tet.params.bigk);

    for rows in [vec![3], vec![2, 1], vec![1, 1, 1]] {
        let (sym, dim) = young_dimensions(&YoungDiagram::new(rows.clone())?, 3)?;
        println!("diagram {rows:?}: S3 irrep dim {sym}, tensor subspace dim {dim}");
    }
    Ok(())
}
