#![allow(dead_code)]

use octupolar::linalg::{self, Mat3, Vec3};
use octupolar::potential::OrientedParams;
use octupolar::tensor_core::Tensor3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tensor(r: &mut impl Rng) -> Tensor3 {
    let mut c = [0.0; 27];
    for v in c.iter_mut() {
        *v = r.gen_range(-1.0..1.0);
    }
    Tensor3::new(c).unwrap()
}

pub fn random_unit(r: &mut impl Rng) -> Vec3 {
    loop {
        let v = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let n = linalg::norm(&v);
        if n > 0.1 && n <= 1.0 {
            return linalg::scale(&v, 1.0 / n);
        }
    }
}

/// Uniform in the sector 0 ≤ ρ ≤ 2, −π/2 ≤ χ ≤ −π/6, 0 ≤ K ≤ k_max.
pub fn random_params(r: &mut impl Rng, k_max: f64) -> OrientedParams {
    OrientedParams::new(r.gen_range(0.0..2.0), r.gen_range(-FRAC_PI_2..-FRAC_PI_6), r.gen_range(0.0..k_max)).unwrap()
}

/// Random proper rotation from a unit quaternion.
pub fn random_rotation(r: &mut impl Rng) -> Mat3 {
    let q: [f64; 4] = loop {
        let q = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            break q.map(|v| v / n);
        }
    };
    let [w, x, y, z] = q;
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - z * w), 2.0 * (x * z + y * w)],
        [2.0 * (x * y + z * w), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - x * w)],
        [2.0 * (x * z - y * w), 2.0 * (y * z + x * w), 1.0 - 2.0 * (x * x + y * y)],
    ]
}
