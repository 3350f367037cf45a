//! C-eigenpairs of a piezo-type tensor and recovery of an orthogonally
//! decomposable tensor by repeated rank-one deflation.
//!
//! cargo run --release --example ceigen

use octupolar::eigen_solver::{c_eigenpairs, incremental_rank_one};
use octupolar::linalg;
use octupolar::tensor_core::Tensor3;

fn main() -> octupolar::Result<()> {
    let r = linalg::mat_mul(&linalg::rot_z(0.3), &[[1.0, 0.0, 0.0], [0.0, 0.8, -0.6], [0.0, 0.6, 0.8]]);
    let q = linalg::mat_mul(&linalg::rot_z(-1.1), &[[0.6, 0.0, 0.8], [0.0, 1.0, 0.0], [-0.8, 0.0, 0.6]]);
    let weights = [5.0, 2.0, 0.8];
    let mut t = Tensor3::zeros();
    for (i, w) in weights.iter().enumerate() {
        let x = [r[0][i], r[1][i], r[2][i]];
        let y = [q[0][i], q[1][i], q[2][i]];
        t = &t + &(&Tensor3::outer(&x, &y, &y) * *w);
    }

    let pairs = c_eigenpairs(&t, 400)?;
    println!("{} C-eigenpair classes", pairs.len());
    for p in pairs.iter().take(5) {
        println!("  λ={:.10} x={:?} y={:?}", p.lambda, p.x, p.y);
    }

    for term in incremental_rank_one(&t, 3, 1e-12)? {
        println!("term λ={:.12} remaining norm {:.2e}", term.lambda, term.residual_norm);
    }
    Ok(())
}
