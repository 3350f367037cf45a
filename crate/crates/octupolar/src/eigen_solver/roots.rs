//! Real roots of a univariate polynomial via companion-matrix eigenvalues.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

/// Coefficients are in ascending order: `c[i]` multiplies `s^i`.
pub fn eval(c: &[f64], s: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * s + a)
}

fn eval_c(c: &[f64], z: Complex<f64>) -> Complex<f64> {
    c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a)
}

pub fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect()
}

/// Σ |c_i| |s|^i, the natural scale for judging |p(s)|.
fn magnitude(c: &[f64], s: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * s.abs() + a.abs())
}

/// Product of two ascending coefficient lists.
pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

/// Tolerances for trimming negligible end coefficients.
#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// Leading coefficients at or below this fraction of the largest are dropped.
    pub leading_tol: f64,
    /// Trailing coefficients at or below this fraction become exact zero roots.
    pub trailing_tol: f64,
    /// Cluster radius relative to max(1, |z|).
    pub cluster_radius: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { leading_tol: 1e-13, trailing_tol: 1e-12, cluster_radius: 1e-6 }
    }
}

/// All real roots with multiplicities, sorted ascending. Complex pairs are
/// discarded; near-coincident eigenvalues are merged into one multiple root.
pub fn real_roots(coeffs: &[f64]) -> Result<Vec<(f64, usize)>> {
    real_roots_with(coeffs, &RootOptions::default())
}

pub fn real_roots_with(coeffs: &[f64], opts: &RootOptions) -> Result<Vec<(f64, usize)>> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::validation("polynomial coefficients must be finite"));
    }
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Err(Error::validation("identically zero polynomial"));
    }
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().abs() <= opts.leading_tol * scale {
        c.pop();
    }
    let mut zero_mult = 0;
    while c.len() > 1 && c[0].abs() <= opts.trailing_tol * scale {
        c.remove(0);
        zero_mult += 1;
    }
    let mut out: Vec<(f64, usize)> = Vec::new();
    if zero_mult > 0 {
        out.push((0.0, zero_mult));
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok(out);
    }
    let z = companion_roots(&c);
    for (mean, mult) in cluster(&c, z, opts.cluster_radius) {
        if mean.im.abs() > 1e-8 * (1.0 + mean.re.abs()) {
            continue;
        }
        out.push((polish_real(&c, mean.re, mult), mult));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // a polished root may land on the exact zero root
    let mut merged: Vec<(f64, usize)> = Vec::new();
    for (r, m) in out {
        if let Some(last) = merged.last_mut() {
            if (r - last.0).abs() <= opts.cluster_radius * (1.0f64).max(r.abs()) {
                last.1 += m;
                continue;
            }
        }
        merged.push((r, m));
    }
    Ok(merged)
}

fn companion_roots(c: &[f64]) -> Vec<Complex<f64>> {
    let deg = c.len() - 1;
    let lead = c[deg];
    if deg == 1 {
        return vec![Complex::new(-c[0] / lead, 0.0)];
    }
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -c[i] / lead;
    }
    // a 2×2 Schur block with a repeated real eigenvalue can come back with
    // a NaN imaginary part
    let mut z: Vec<Complex<f64>> = m
        .complex_eigenvalues()
        .iter()
        .map(|z| Complex::new(z.re, if z.im.is_nan() { 0.0 } else { z.im }))
        .collect();
    // a few Newton steps on the original polynomial sharpen simple roots
    let dc = derivative(c);
    for r in z.iter_mut() {
        for _ in 0..3 {
            let p = eval_c(c, *r);
            let dp = eval_c(&dc, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            let cand = *r - step;
            if eval_c(c, cand).norm() < p.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }
    z
}

/// Single-linkage clustering; returns cluster means and sizes. Clusters that
/// sit within a wider radius are also merged when the polynomial is
/// numerically flat enough at their mean to host the combined multiplicity.
fn cluster(c: &[f64], z: Vec<Complex<f64>>, radius: f64) -> Vec<(Complex<f64>, usize)> {
    let n = z.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while l[i] != i {
            l[i] = l[l[i]];
            i = l[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let r = radius * 1f64.max(z[i].norm()).max(z[j].norm());
            if (z[i] - z[j]).norm() <= r {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a] = b;
            }
        }
    }
    let mut groups: Vec<(Complex<f64>, usize)> = Vec::new();
    let mut roots_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut label, i);
        roots_of[r].push(i);
    }
    for members in roots_of.into_iter().filter(|m| !m.is_empty()) {
        let sum: Complex<f64> = members.iter().map(|&i| z[i]).sum();
        groups.push((sum / members.len() as f64, members.len()));
    }
    // wider merge for higher multiplicities, which split by eps^(1/m)
    let mut merged = true;
    while merged {
        merged = false;
        'outer: for i in 0..groups.len() {
            for j in (i + 1)..groups.len() {
                let (zi, mi) = groups[i];
                let (zj, mj) = groups[j];
                let r = 1e-4 * 1f64.max(zi.norm()).max(zj.norm());
                if (zi - zj).norm() > r {
                    continue;
                }
                let m = mi + mj;
                let mean = (zi * mi as f64 + zj * mj as f64) / m as f64;
                if is_multiple_root(c, mean, m) {
                    groups[i] = (mean, m);
                    groups.remove(j);
                    merged = true;
                    break 'outer;
                }
            }
        }
    }
    groups
}

fn is_multiple_root(c: &[f64], z: Complex<f64>, m: usize) -> bool {
    let mut d = c.to_vec();
    for _ in 0..m.saturating_sub(1) {
        let v = eval_c(&d, z).norm();
        let mag = magnitude(&d, z.norm()).max(1e-300);
        if !(v <= 1e-7 * mag) {
            return false;
        }
        d = derivative(&d);
    }
    true
}

/// Newton on the (m−1)th derivative, accepted only if it does not increase
/// the polynomial's magnitude at the root.
fn polish_real(c: &[f64], x0: f64, mult: usize) -> f64 {
    let mut d = c.to_vec();
    for _ in 0..mult.saturating_sub(1) {
        d = derivative(&d);
    }
    let dd = derivative(&d);
    let mut x = x0;
    for _ in 0..20 {
        let f = eval(&d, x);
        let fp = eval(&dd, x);
        if fp == 0.0 || f == 0.0 {
            break;
        }
        let nx = x - f / fp;
        if !nx.is_finite() || eval(&d, nx).abs() >= f.abs() {
            break;
        }
        x = nx;
    }
    if eval(c, x).abs() <= eval(c, x0).abs() || mult > 1 {
        x
    } else {
        x0
    }
}
