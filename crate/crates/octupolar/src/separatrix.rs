//! Boundaries in (ρ, χ, K) where the number of critical points changes.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::critical_points::full_topology;
use crate::eigen_solver::{kappa, real_roots_with, RootOptions};
use crate::error::{Error, Result};
use crate::potential::OrientedParams;

/// χ = −π/2 separatrix.
pub fn g(rho: f64) -> f64 {
    if rho <= 1.0 {
        (2.0 * rho * rho * (1.0 - rho) / (3.0 * (6.0 - rho))).max(0.0).sqrt()
    } else {
        (2.0 * (2.0 - rho) * (rho - 1.0)).max(0.0).sqrt()
    }
}

/// χ = −π/6 separatrix.
pub fn f(rho: f64) -> f64 {
    (2.0 * rho * rho * (1.0 + rho) / (3.0 * (6.0 + rho))).sqrt()
}

/// K along the line of cusps, defined for ρ > 1.
pub fn h(rho: f64) -> Option<f64> {
    if rho > 1.0 {
        Some(((rho * rho - 1.0) / 3.0).sqrt())
    } else {
        None
    }
}

/// χ of the cusp for a given ρ > 1.
pub fn cusp_chi(rho: f64) -> Option<f64> {
    if rho > 1.0 {
        Some(-(1.0 / rho).asin())
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryEval {
    pub g: f64,
    pub f: f64,
    pub kappa: f64,
    pub h: Option<f64>,
    /// Where the biquadratic root σ1 changes sign on χ = −π/2, for ρ ≤ 1.
    pub k1: Option<f64>,
}

pub fn boundary_functions(rho: f64, chi: f64) -> Result<BoundaryEval> {
    if !(0.0..=2.0).contains(&rho) || !chi.is_finite() {
        return Err(Error::validation(format!("rho = {rho} outside [0, 2]")));
    }
    Ok(BoundaryEval {
        g: g(rho),
        f: f(rho),
        kappa: kappa(rho, chi),
        h: h(rho),
        k1: if rho <= 1.0 { Some(g(rho)) } else { None },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparatrixBranch {
    /// s★ < 0, the vault with ρ below the cusp.
    Left,
    Cusp,
    /// s★ > 0.
    Right,
    /// χ = −π/2, given by g.
    ChiMinusHalfPi,
    /// χ = −π/6, given by f.
    ChiMinusSixthPi,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KStar {
    pub k: f64,
    pub s_star: f64,
    pub branch: SeparatrixBranch,
}

/// W = K² P(s) + Q(s); returns (P, Q) in ascending powers of s.
pub fn walcher_split(rho: f64, chi: f64) -> ([f64; 7], [f64; 7]) {
    let (sn, c) = chi.sin_cos();
    let (rc, rs) = (rho * c, rho * sn);
    let p = [0.0, -6.0 * rc, 6.0 * (rs + 6.0), -4.0 * rc, 4.0 * (rs - 6.0), 2.0 * rc, 2.0 * (2.0 - rs)];
    let params = OrientedParams { rho, chi, bigk: 0.0 };
    let q = crate::eigen_solver::walcher_coefficients(&params).s_coeffs;
    (p, q)
}

fn eval(c: &[f64], s: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * s + a)
}

fn deriv(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect()
}

/// P Q′ − P′ Q, degree ≤ 10.
pub fn det_polynomial(rho: f64, chi: f64) -> Vec<f64> {
    let (p, q) = walcher_split(rho, chi);
    let (dp, dq) = (deriv(&p), deriv(&q));
    let mut out = vec![0.0; 12];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in dq.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    for (i, a) in dp.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] -= a * b;
        }
    }
    out.truncate(11);
    out
}

/// Divides out (s − r) by forward recursion; only used with |r| < 1.
/// Ascending coefficients, the remainder is dropped.
fn deflate(c: &[f64], r: f64) -> Vec<f64> {
    let n = c.len().saturating_sub(1);
    let mut b = vec![0.0; n];
    let mut acc = 0.0;
    for k in (1..=n).rev() {
        acc = c[k] + r * acc;
        b[k - 1] = acc;
    }
    b
}

/// Candidate double-root locations: real roots of det A, also found in the
/// rescaled variable u = s/|cos χ| so that roots crowding s = 0 near
/// χ = −π/2 stay resolved.
fn det_roots(rho: f64, chi: f64) -> Result<Vec<f64>> {
    let det = det_polynomial(rho, chi);
    let opts = RootOptions { trailing_tol: 1e-15, ..RootOptions::default() };
    let mut out: Vec<f64> = real_roots_with(&det, &opts)?.into_iter().map(|(s, _)| s).collect();
    let c = chi.cos().abs();
    if c < 0.25 {
        let scaled: Vec<f64> = det.iter().enumerate().map(|(i, a)| a * c.powi(i as i32)).collect();
        out.extend(real_roots_with(&scaled, &opts)?.into_iter().map(|(u, _)| u * c));
    }
    Ok(out)
}

/// Double roots of W within 1e−3 of s₊ = tan((χ + π/2)/2), where D vanishes.
///
/// Q = (s − s₊)² Q₁ for every (ρ, χ), so det A has a spurious root at s₊
/// with K² = 0. As ρ → 2 the genuine double root closes in on it and the
/// two merge in det A. With e = s − s₊ the conditions reduce to
/// 2 P Q₁ + e (P Q₁′ − P′ Q₁) = 0 and K² = −e² Q₁ / P, which stay well
/// conditioned as e → 0.
fn near_s_plus(chi: f64, p: &[f64], q: &[f64]) -> Result<Vec<(f64, f64)>> {
    let sp = (0.5 * (chi + FRAC_PI_2)).tan();
    let q1 = deflate(&deflate(q, sp), sp);
    let (dp, dq1) = (deriv(p), deriv(&q1));
    // R(e) with s = s₊ + e, built in powers of s then shifted
    let mut r = vec![0.0; p.len() + q1.len()];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q1.iter().enumerate() {
            r[i + j] += 2.0 * a * b;
        }
    }
    let mut cross = vec![0.0; p.len() + q1.len()];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in dq1.iter().enumerate() {
            cross[i + j] += a * b;
        }
    }
    for (i, a) in dp.iter().enumerate() {
        for (j, b) in q1.iter().enumerate() {
            cross[i + j] -= a * b;
        }
    }
    // e · cross = (s − s₊) · cross
    for (i, cv) in cross.iter().enumerate() {
        if i + 1 < r.len() {
            r[i + 1] += cv;
        }
        r[i] -= sp * cv;
    }
    let opts = RootOptions { trailing_tol: 1e-15, ..RootOptions::default() };
    let mut out = Vec::new();
    for (s, _) in real_roots_with(&r, &opts)? {
        let e = s - sp;
        if e.abs() > 1e-3 {
            continue;
        }
        let k2 = -e * e * eval(&q1, s) / eval(p, s);
        if k2.is_finite() && k2 > 0.0 {
            out.push((s, k2));
        }
    }
    Ok(out)
}

fn abs_eval(c: &[f64], s: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * s.abs() + a.abs())
}

/// Newton on K²P + Q = 0, K²P′ + Q′ = 0 in (s, K²).
fn refine(p: &[f64], q: &[f64], s0: f64, k2_0: f64) -> Option<(f64, f64)> {
    let (dp, dq) = (deriv(p), deriv(q));
    let (ddp, ddq) = (deriv(&dp), deriv(&dq));
    let (mut s, mut k2) = (s0, k2_0);
    for _ in 0..50 {
        let f1 = k2 * eval(p, s) + eval(q, s);
        let f2 = k2 * eval(&dp, s) + eval(&dq, s);
        let (j11, j12) = (k2 * eval(&dp, s) + eval(&dq, s), eval(p, s));
        let (j21, j22) = (k2 * eval(&ddp, s) + eval(&ddq, s), eval(&dp, s));
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let ds = (f1 * j22 - f2 * j12) / det;
        let dk = (j11 * f2 - j21 * f1) / det;
        s -= ds;
        k2 -= dk;
        if ds.abs() <= 1e-15 * (1.0 + s.abs()) && dk.abs() <= 1e-15 * (1.0 + k2.abs()) {
            break;
        }
    }
    is_double_root(p, q, s, k2, 1e-10, s).then_some((s, k2))
}

/// Residuals of both equations relative to the term sizes at `scale_at`.
fn is_double_root(p: &[f64], q: &[f64], s: f64, k2: f64, tol: f64, scale_at: f64) -> bool {
    let (dp, dq) = (deriv(p), deriv(q));
    let r1 = (k2 * eval(p, s) + eval(q, s)).abs();
    let r2 = (k2 * eval(&dp, s) + eval(&dq, s)).abs();
    let k2a = k2.abs();
    s.is_finite()
        && k2.is_finite()
        && r1 <= tol * (k2a * abs_eval(p, scale_at) + abs_eval(q, scale_at)).max(1e-300)
        && r2 <= tol * (k2a * abs_eval(&dp, scale_at) + abs_eval(&dq, scale_at)).max(1e-300)
}

/// K★(ρ, χ): the K at which W acquires a double root, with its location s★.
pub fn k_star(rho: f64, chi: f64) -> Result<KStar> {
    if !(rho > 0.0 && rho <= 2.0) {
        return Err(Error::validation(format!("k_star needs 0 < rho <= 2, got {rho}")));
    }
    if !(chi > -FRAC_PI_2 && chi < -FRAC_PI_6) {
        return Err(Error::validation(format!("k_star needs -pi/2 < chi < -pi/6, got {chi}")));
    }
    if rho == 2.0 {
        // K★ ~ √(2 − ρ) on the right vault: every K > 0 already gives 12 points
        return Ok(KStar { k: 0.0, s_star: (0.5 * (chi + FRAC_PI_2)).tan(), branch: SeparatrixBranch::Right });
    }
    let (p, q) = walcher_split(rho, chi);
    let (dp, dq) = (deriv(&p), deriv(&q));
    let mut best: Option<(f64, f64)> = None;
    for s in det_roots(rho, chi)? {
        // start from the better-conditioned of −Q/P and −Q′/P′
        let (pv, dpv) = (eval(&p, s), eval(&dp, s));
        let k2_0 = if pv.abs() * (1.0 + s.abs()) >= dpv.abs() { -eval(&q, s) / pv } else { -eval(&dq, s) / dpv };
        if !k2_0.is_finite() {
            continue;
        }
        // at a triple root (the cusp) Newton is singular; the det root itself
        // is then as good as it gets
        let triple = |s: f64, k2: f64| {
            let at = s.abs().max(1.0);
            is_double_root(&p, &q, s, k2, 1e-7, at) && is_double_root(&dp, &dq, s, k2, 1e-7, at)
        };
        let refined = refine(&p, &q, s, k2_0).or_else(|| triple(s, k2_0).then_some((s, k2_0)));
        let Some((s, k2)) = refined else { continue };
        if !(k2 > 0.0) {
            continue;
        }
        let k = k2.sqrt();
        if best.is_none_or(|(bk, _)| k > bk) {
            best = Some((k, s));
        }
    }
    for (s, k2) in near_s_plus(chi, &p, &q)? {
        let k = k2.sqrt();
        if best.is_none_or(|(bk, _)| k > bk) {
            best = Some((k, s));
        }
    }
    let (k, s_star) = best.ok_or_else(|| Error::numerical(format!("no admissible double root at rho={rho}, chi={chi}")))?;
    let branch = if s_star.abs() <= 1e-9 {
        SeparatrixBranch::Cusp
    } else if s_star < 0.0 {
        SeparatrixBranch::Left
    } else {
        SeparatrixBranch::Right
    };
    Ok(KStar { k, s_star, branch })
}

/// K on the separatrix for any χ in the closed sector: g and f on the
/// boundary planes, K★ inside.
pub fn separatrix_k(rho: f64, chi: f64) -> Result<KStar> {
    if (chi + FRAC_PI_2).abs() <= 1e-12 {
        return Ok(KStar { k: g(rho), s_star: 0.0, branch: SeparatrixBranch::ChiMinusHalfPi });
    }
    if (chi + FRAC_PI_6).abs() <= 1e-12 {
        return Ok(KStar { k: f(rho), s_star: 0.0, branch: SeparatrixBranch::ChiMinusSixthPi });
    }
    k_star(rho, chi)
}

/// Leading terms of K★ near the cusp ρ_c = −1/sin χ. The |Δρ|^{2/3}
/// coefficient comes from the discriminant of the local cubic
/// S_0 + S_1 s + S_3 s³, with S_0 ∝ Δρ and S_1 linear in K − K_c.
pub fn k_near_cusp(rho: f64, chi: f64) -> f64 {
    let (sn, c) = chi.sin_cos();
    let d = rho + 1.0 / sn;
    let coef = 3f64.powf(1.0 / 6.0) / 2f64.powf(4.0 / 3.0) * ((3.0 - 4.0 * c * c) * sn.abs() / c).cbrt();
    -c / (3f64.sqrt() * sn) + coef * d.abs().powf(2.0 / 3.0)
}

/// Locates the cusp for fixed χ by bisection on the sign of s★.
pub fn find_cusp(chi: f64) -> Result<(f64, f64)> {
    let rho_c = -1.0 / chi.sin();
    if !(rho_c > 1.0 && rho_c <= 2.0) {
        return Err(Error::validation(format!("no cusp inside the sector for chi = {chi}")));
    }
    let sign = |rho: f64| -> Result<f64> { Ok(k_star(rho, chi)?.s_star.signum()) };
    let (mut lo, mut hi) = ((rho_c - 0.2).max(1e-3), (rho_c + 0.2).min(2.0));
    let (slo, shi) = (sign(lo)?, sign(hi)?);
    if slo == shi {
        return Err(Error::numerical("s_star does not change sign around the expected cusp"));
    }
    // K★ − K_c ~ |Δρ|^{2/3}, so width 1e-9 pins K to ~1e-6; going closer
    // makes the root triple and the refinement singular
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if sign(mid)? == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let rho = 0.5 * (lo + hi);
    // K★ is continuous across the cusp; average the two sides
    let k = 0.5 * (k_star(lo, chi)?.k + k_star(hi, chi)?.k);
    Ok((rho, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionSample {
    pub rho: f64,
    pub chi: f64,
    #[serde(rename = "K")]
    pub bigk: f64,
    /// Number of critical points; absent for a continuum.
    pub count: Option<usize>,
}

/// Midpoint grid over ρ ∈ (0, 2) and K ∈ (0, k_max), row-major in ρ.
pub fn region_scan(chi: f64, rho_steps: usize, k_max: f64, k_steps: usize) -> Result<Vec<RegionSample>> {
    if rho_steps < 2 || k_steps < 2 {
        return Err(Error::validation("scan needs at least 2 steps in each direction"));
    }
    if !(k_max > 0.0 && k_max.is_finite()) {
        return Err(Error::validation("k_max must be positive"));
    }
    OrientedParams::new(1.0, chi, 0.0)?;
    let cells: Vec<(f64, f64)> = (0..rho_steps)
        .flat_map(|i| {
            (0..k_steps).map(move |j| {
                (2.0 * (i as f64 + 0.5) / rho_steps as f64, k_max * (j as f64 + 0.5) / k_steps as f64)
            })
        })
        .collect();
    cells
        .par_iter()
        .map(|&(rho, k)| sample(rho, chi, k))
        .collect()
}

fn sample(rho: f64, chi: f64, k: f64) -> Result<RegionSample> {
    let r = full_topology(&OrientedParams::new(rho, chi, k)?)?;
    Ok(RegionSample { rho, chi, bigk: k, count: if r.continuum { None } else { Some(r.total()) } })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatrixSample {
    pub rho: f64,
    pub chi: f64,
    pub k_star: f64,
    pub s_star: f64,
    pub branch: SeparatrixBranch,
    /// Critical points exactly on the separatrix.
    pub count: Option<usize>,
}

/// The separatrix at midpoints ρ_i ∈ (0, 2), with the count evaluated on it.
pub fn separatrix_scan(chi: f64, rho_steps: usize) -> Result<Vec<SeparatrixSample>> {
    if rho_steps < 2 {
        return Err(Error::validation("scan needs at least 2 steps"));
    }
    OrientedParams::new(1.0, chi, 0.0)?;
    (0..rho_steps)
        .into_par_iter()
        .map(|i| {
            let rho = 2.0 * (i as f64 + 0.5) / rho_steps as f64;
            let ks = separatrix_k(rho, chi)?;
            let s = sample(rho, chi, ks.k)?;
            Ok(SeparatrixSample { rho, chi, k_star: ks.k, s_star: ks.s_star, branch: ks.branch, count: s.count })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    #[test]
    fn boundary_values() {
        assert_eq!(g(1.0), 0.0);
        assert_eq!(g(2.0), 0.0);
        assert_eq!(g(0.0), 0.0);
        assert!((g(1.5) - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(f(0.0), 0.0);
        assert!((h(2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(h(1.0).is_none());
        assert!(kappa(1.3, -FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn det_has_degree_ten() {
        let d = det_polynomial(1.2, -1.0);
        assert_eq!(d.len(), 11);
    }

    #[test]
    fn cusp_at_minus_pi_over_three() {
        let (rho, k) = find_cusp(-FRAC_PI_3).unwrap();
        assert!((rho - 2.0 / 3f64.sqrt()).abs() < 1e-4, "{rho}");
        assert!((k - 1.0 / 3.0).abs() < 1e-4, "{k}");
    }

    #[test]
    fn near_cusp_remainder_is_linear() {
        for chi in [-1.0, -FRAC_PI_3, -1.3] {
            let rc = -1.0 / f64::sin(chi);
            for d in [1e-3, -1e-3] {
                let k = k_star(rc + d, chi).unwrap().k;
                assert!((k - k_near_cusp(rc + d, chi)).abs() < 3.0 * d.abs(), "chi {chi} d {d}");
            }
        }
    }

    #[test]
    fn tends_to_g_at_minus_half_pi() {
        for rho in [0.4, 0.8, 1.3, 1.8] {
            let k = k_star(rho, -FRAC_PI_2 + 1e-8).unwrap().k;
            assert!((k - g(rho)).abs() < 1e-4, "rho {rho}");
        }
    }

    #[test]
    fn approaches_zero_at_rho_two() {
        // K★ ≈ c √(2 − ρ); the spurious double root at s_+ must not take over
        for chi in [-1.4, -1.0, -0.6] {
            let a = k_star(2.0 - 1e-4, chi).unwrap().k;
            let b = k_star(2.0 - 1e-6, chi).unwrap().k;
            assert!(a > 1e-3 && (a / b - 10.0).abs() < 0.5, "chi {chi}: {a} {b}");
        }
        assert_eq!(k_star(2.0, -1.0).unwrap().k, 0.0);
    }

    #[test]
    fn exactly_at_the_cusp() {
        for chi in [-1.4, -2.0 * std::f64::consts::PI / 5.0, -1.0] {
            let rc = -1.0 / chi.sin();
            let ks = k_star(rc, chi).unwrap();
            assert_eq!(ks.branch, SeparatrixBranch::Cusp);
            assert!((ks.k - h(rc).unwrap()).abs() < 1e-12, "chi {chi}");
        }
    }

    #[test]
    fn branch_flips_across_cusp() {
        let rc = 2.0 / 3f64.sqrt();
        assert_eq!(k_star(rc - 0.01, -FRAC_PI_3).unwrap().branch, SeparatrixBranch::Left);
        assert_eq!(k_star(rc + 0.01, -FRAC_PI_3).unwrap().branch, SeparatrixBranch::Right);
    }
}
