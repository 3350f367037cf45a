//! Walcher's single-variable reduction.
//!
//! Critical points with x2 ≠ 0 are written x ∝ (s, 1, t). Eliminating the
//! Lagrange multiplier leaves two equations:
//!
//!   a2(s) t² + a1(s) t + a0(s) = 0,   t D(s) = N(s),
//!
//! and substituting t = N/D into the first gives W(s) = 2(a2 N² + a1 N D + a0 D²),
//! a sextic whose coefficients are the S_i below.

use serde::{Deserialize, Serialize};

use super::roots;
use crate::potential::OrientedParams;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalcherPoly {
    /// S_0 … S_6, ascending powers of s.
    pub s_coeffs: [f64; 7],
    /// Roots of D, where t = N/D is undefined: [s_+, s_−], or [0] when cos χ = 0.
    pub spurious_roots: Vec<f64>,
}

impl WalcherPoly {
    pub fn eval(&self, s: f64) -> f64 {
        roots::eval(&self.s_coeffs, s)
    }

    pub fn max_abs(&self) -> f64 {
        self.s_coeffs.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// The pieces of the reduced system, as ascending coefficient lists in s.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    pub a2: Vec<f64>,
    pub a1: Vec<f64>,
    pub a0: Vec<f64>,
    pub n: Vec<f64>,
    pub d: Vec<f64>,
}

pub fn reduced_system(p: &OrientedParams) -> ReducedSystem {
    let (rc, rs, k) = (p.rho_cos(), p.rho_sin(), p.bigk);
    ReducedSystem {
        a2: vec![rs + 2.0, -rc],
        a1: vec![-k, 0.0, k],
        a0: vec![-0.5 * (rs + 1.0), rc, 0.5 * (rs - 1.0)],
        n: vec![0.0, -3.0 * k, 0.0, k],
        d: vec![-rc, -2.0 * rs, rc],
    }
}

impl ReducedSystem {
    /// Coefficients of the quadratic in t at fixed s.
    pub fn t_quadratic(&self, s: f64) -> [f64; 3] {
        [roots::eval(&self.a0, s), roots::eval(&self.a1, s), roots::eval(&self.a2, s)]
    }

    /// 2(a2 N² + a1 N D + a0 D²); the s⁷ terms cancel.
    pub fn composed(&self) -> Vec<f64> {
        let nn = roots::mul(&self.n, &self.n);
        let nd = roots::mul(&self.n, &self.d);
        let dd = roots::mul(&self.d, &self.d);
        let w = roots::add(
            &roots::add(&roots::mul(&self.a2, &nn), &roots::mul(&self.a1, &nd)),
            &roots::mul(&self.a0, &dd),
        );
        w.iter().map(|v| 2.0 * v).collect()
    }
}

/// S_0 … S_6 in closed form, with C = cos χ and S = sin χ.
pub fn walcher_coefficients(p: &OrientedParams) -> WalcherPoly {
    let (r, k) = (p.rho, p.bigk);
    let (sn, c) = p.chi.sin_cos();
    let (r2, k2, c2) = (r * r, k * k, c * c);
    let rs = r * sn;
    let s_coeffs = [
        -r2 * c2 * (1.0 + rs),
        -6.0 * k2 * r * c + 2.0 * r2 * c * (3.0 * r * c2 - 2.0 * sn - 2.0 * r),
        6.0 * k2 * (rs + 6.0) + 5.0 * r2 * c2 * (3.0 * rs + 1.0) - 4.0 * r2 * (1.0 + rs),
        4.0 * r * c * (r2 * (4.0 - 5.0 * c2) - k2),
        4.0 * k2 * (rs - 6.0) + 5.0 * r2 * c2 * (1.0 - 3.0 * rs) + 4.0 * r2 * (rs - 1.0),
        2.0 * r * c * (k2 + r * (3.0 * r * c2 + 2.0 * sn - 2.0 * r)),
        2.0 * k2 * (2.0 - rs) + r2 * c2 * (rs - 1.0),
    ];
    WalcherPoly { s_coeffs, spurious_roots: spurious_roots(p) }
}

/// Roots of D(s) = ρ(C s² − 2S s − C): s_± = (S ± 1)/C, or s = 0 when C = 0.
pub fn spurious_roots(p: &OrientedParams) -> Vec<f64> {
    let (sn, c) = p.chi.sin_cos();
    if p.rho <= 0.0 {
        return Vec::new();
    }
    if c.abs() <= 1e-12 {
        return vec![0.0];
    }
    vec![(sn + 1.0) / c, (sn - 1.0) / c]
}

/// κ(ρ, χ): the K at which S_6 vanishes and the background pair appears.
pub fn kappa(rho: f64, chi: f64) -> f64 {
    let (sn, c) = chi.sin_cos();
    let rs = rho * sn;
    let num = 1.0 - rs;
    let den = 2.0 * (2.0 - rs);
    if num <= 0.0 || den <= 0.0 {
        return 0.0;
    }
    (rho * c).abs() * (num / den).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn p(rho: f64, chi: f64, k: f64) -> OrientedParams {
        OrientedParams::new(rho, chi, k).unwrap()
    }

    #[test]
    fn closed_form_matches_composition() {
        for &(r, c, k) in &[(1.3, -1.0, 0.4), (0.2, -0.6, 2.5), (1.9, -1.4, 0.05)] {
            let q = p(r, c, k);
            let w = walcher_coefficients(&q);
            let comp = reduced_system(&q).composed();
            assert!(comp[7].abs() < 1e-12);
            for i in 0..7 {
                assert!((w.s_coeffs[i] - comp[i]).abs() < 1e-12, "S{i}");
            }
        }
    }

    #[test]
    fn s0_vanishes_at_minus_half_pi() {
        let w = walcher_coefficients(&p(1.2, -FRAC_PI_2, 0.3));
        assert!(w.s_coeffs[0].abs() < 1e-15);
    }

    #[test]
    fn s6_vanishes_at_kappa() {
        let (r, c) = (1.4, -0.9);
        let w = walcher_coefficients(&p(r, c, kappa(r, c)));
        assert!(w.s_coeffs[6].abs() < 1e-14);
    }

    #[test]
    fn s_plus_is_a_root_at_rho_two() {
        let q = p(2.0, -1.1, 0.8);
        let w = walcher_coefficients(&q);
        let s_plus = (q.chi.sin() + 1.0) / q.chi.cos();
        assert!(w.eval(s_plus).abs() < 1e-12);
        let s_minus = (q.chi.sin() - 1.0) / q.chi.cos();
        assert!(w.eval(s_minus).abs() > 1e-3);
        let q = p(1.5, -FRAC_PI_3, 0.8);
        let s_plus = (q.chi.sin() + 1.0) / q.chi.cos();
        assert!(walcher_coefficients(&q).eval(s_plus).abs() > 1e-3);
    }
}
