//! Symmetry-type and harmonic decompositions of a generic tensor.
//!
//! cargo run --example decompose

use octupolar::tensor_core::{harmonic_decompose, symmetry_decompose, Tensor3};

fn main() {
    // something with no symmetry at all
    let t = Tensor3::from_fn(|i, j, k| ((i * 9 + j * 3 + k) as f64 * 0.37).sin());

    let s = symmetry_decompose(&t);
    println!("symmetric part norm      {:.6}", s.a1.norm());
    println!("mixed parts norms        {:.6} {:.6}", s.a21.norm(), s.a22.norm());
    println!("antisymmetric part norm  {:.6}", s.a3.norm());
    println!("reconstruction error     {:.2e}", s.reconstruct().max_abs_diff(&t));

    let h = harmonic_decompose(&t);
    println!("pseudoscalar             {:.6}", h.a_scalar);
    println!("vectors                  {:?} {:?} {:?}", h.v1, h.v2, h.v3);
    println!("harmonic part            {:?}", h.d3);
    println!("reconstruction error     {:.2e}", h.reconstruct().max_abs_diff(&t));

    // a piezoelectric tensor is symmetric in its last two slots: no antisymmetric part
    let piezo = Tensor3::from_fn(|i, j, k| t.get(i, j, k) + t.get(i, k, j));
    println!("piezo a3 norm            {:.2e}", symmetry_decompose(&piezo).a3.norm());
}
