//! The cubic potential Φ(x) = A_ijk x_i x_j x_k, parameter conversions and
//! orientation into the reduced (ρ, χ, K) sector.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use nalgebra::{Matrix4, Vector4};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen_solver::real_roots;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};
use crate::tensor_core::{idx, OctupolarTensor, SymTensor3, Tensor3};

/// Anything that carries 27 cubic-form coefficients.
pub trait CubicForm {
    fn tensor3(&self) -> Tensor3;
}

impl CubicForm for Tensor3 {
    fn tensor3(&self) -> Tensor3 {
        self.clone()
    }
}

impl CubicForm for OctupolarTensor {
    fn tensor3(&self) -> Tensor3 {
        self.to_tensor()
    }
}

impl CubicForm for SymTensor3 {
    fn tensor3(&self) -> Tensor3 {
        self.to_tensor()
    }
}

/// A_ijk x_i x_j x_k.
pub fn eval_potential<T: CubicForm + ?Sized>(t: &T, x: &Vec3) -> f64 {
    let a = t.tensor3();
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                s += a.get(i, j, k) * x[i] * x[j] * x[k];
            }
        }
    }
    s
}

/// ∇Φ; for a symmetric tensor this is 3 A x².
pub fn gradient<T: CubicForm + ?Sized>(t: &T, x: &Vec3) -> Vec3 {
    let a = t.tensor3();
    let mut g = [0.0; 3];
    for (m, gm) in g.iter_mut().enumerate() {
        for j in 0..3 {
            for k in 0..3 {
                *gm += (a.get(m, j, k) + a.get(j, m, k) + a.get(j, k, m)) * x[j] * x[k];
            }
        }
    }
    g
}

/// Symmetrized cubic form with cached components, used by the solvers.
#[derive(Clone, Debug)]
pub struct Cubic {
    s: [f64; 27],
}

/// Result of a Newton polish on the sphere.
#[derive(Clone, Copy, Debug)]
pub struct Polished {
    pub x: Vec3,
    pub lambda: f64,
    pub residual: f64,
}

impl Cubic {
    pub fn new<T: CubicForm + ?Sized>(t: &T) -> Self {
        Cubic { s: t.tensor3().symmetrized().components }
    }

    pub fn tensor(&self) -> Tensor3 {
        Tensor3 { components: self.s, frame_label: None }
    }

    /// Largest absolute coefficient; used to make tolerances relative.
    pub fn scale(&self) -> f64 {
        self.s.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn value(&self, x: &Vec3) -> f64 {
        let q = self.ax2(x);
        linalg::dot(&q, x)
    }

    /// (A x²)_i = A_ijk x_j x_k.
    pub fn ax2(&self, x: &Vec3) -> Vec3 {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            let mut v = 0.0;
            for j in 0..3 {
                for k in 0..3 {
                    v += self.s[idx(i, j, k)] * x[j] * x[k];
                }
            }
            *o = v;
        }
        out
    }

    /// (A x)_ij = A_ijk x_k.
    pub fn ax(&self, x: &Vec3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.s[idx(i, j, k)] * x[k]).sum();
            }
        }
        out
    }

    pub fn gradient(&self, x: &Vec3) -> Vec3 {
        linalg::scale(&self.ax2(x), 3.0)
    }

    /// Surface gradient at a unit vector.
    pub fn surface_gradient(&self, x: &Vec3) -> Vec3 {
        let g = self.gradient(x);
        linalg::sub(&g, &linalg::scale(x, linalg::dot(&g, x)))
    }

    /// ‖A x² − λ x‖∞ with λ = Φ(x), for unit x.
    pub fn residual(&self, x: &Vec3) -> f64 {
        let q = self.ax2(x);
        let lam = linalg::dot(&q, x);
        linalg::max_abs(&linalg::sub(&q, &linalg::scale(x, lam)))
    }

    /// Damped Newton on the bordered system A x² = λ x, |x| = 1.
    /// A step is taken in full when it lowers the residual, otherwise it is halved.
    pub fn polish(&self, x0: &Vec3, max_iter: usize) -> Polished {
        let mut x = linalg::normalize(x0);
        let mut lam = self.value(&x);
        let eval = |x: &Vec3, lam: f64| -> (Vector4<f64>, f64) {
            let q = self.ax2(x);
            let f = Vector4::new(q[0] - lam * x[0], q[1] - lam * x[1], q[2] - lam * x[2], 0.5 * (1.0 - linalg::dot(x, x)));
            let n = f.amax();
            (f, n)
        };
        let (mut f, mut fnorm) = eval(&x, lam);
        for _ in 0..max_iter {
            if fnorm < 1e-15 * self.scale().max(1.0) {
                break;
            }
            let m = self.ax(&x);
            let mut jac = Matrix4::zeros();
            for i in 0..3 {
                for j in 0..3 {
                    jac[(i, j)] = 2.0 * m[i][j] - if i == j { lam } else { 0.0 };
                }
                jac[(i, 3)] = -x[i];
                jac[(3, i)] = -x[i];
            }
            let svd = jac.svd(true, true);
            let step = match svd.solve(&(-f), 1e-14) {
                Ok(s) => s,
                Err(_) => break,
            };
            let mut t = 1.0;
            let mut improved = false;
            for _ in 0..30 {
                let xn = [x[0] + t * step[0], x[1] + t * step[1], x[2] + t * step[2]];
                let ln = lam + t * step[3];
                let (fnew, nnew) = eval(&xn, ln);
                if nnew < fnorm {
                    x = xn;
                    lam = ln;
                    f = fnew;
                    fnorm = nnew;
                    improved = true;
                    break;
                }
                t *= 0.5;
            }
            if !improved {
                break;
            }
        }
        let x = linalg::normalize(&x);
        let lambda = self.value(&x);
        Polished { x, lambda, residual: self.residual(&x) }
    }

    /// Eigenvalues (ascending) of P(6 A x − 3λ I)P restricted to the tangent plane at x.
    pub fn tangential_hessian(&self, x: &Vec3) -> [f64; 2] {
        let lam = self.value(x);
        let ax = self.ax(x);
        let u = linalg::orthogonal_completion(x);
        let w = linalg::cross(x, &u);
        let h = |a: &Vec3, b: &Vec3| -> f64 {
            6.0 * linalg::dot(&linalg::mat_vec(&ax, a), b) - 3.0 * lam * linalg::dot(a, b)
        };
        let (huu, huw, hww) = (h(&u, &u), h(&u, &w), h(&w, &w));
        let mean = 0.5 * (huu + hww);
        let rad = (0.25 * (huu - hww).powi(2) + huw * huw).sqrt();
        [mean - rad, mean + rad]
    }

    /// Projected gradient flow (ascent when `sign` > 0, descent otherwise).
    pub fn flow(&self, x0: &Vec3, sign: f64, steps: usize) -> Vec3 {
        let h = 0.2 / self.scale().max(1e-300);
        let mut x = linalg::normalize(x0);
        for _ in 0..steps {
            let g = self.surface_gradient(&x);
            if linalg::max_abs(&g) < 1e-10 * self.scale() {
                break;
            }
            x = linalg::normalize(&linalg::add(&x, &linalg::scale(&g, sign * h)));
        }
        x
    }
}

/// Point (ρ, χ, K) of the reduced parameter space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrientedParams {
    pub rho: f64,
    pub chi: f64,
    #[serde(rename = "K")]
    pub bigk: f64,
}

const RHO_SLACK: f64 = 1e-12;

impl OrientedParams {
    /// Validates 0 ≤ ρ ≤ 2 and finiteness; χ may be any angle in [−π, π].
    pub fn new(rho: f64, chi: f64, bigk: f64) -> Result<Self> {
        let p = OrientedParams { rho, chi, bigk };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho.is_finite() && self.chi.is_finite() && self.bigk.is_finite()) {
            return Err(Error::validation("parameters must be finite"));
        }
        if self.rho < -RHO_SLACK || self.rho > 2.0 + RHO_SLACK {
            return Err(Error::validation(format!("rho = {} outside [0, 2]", self.rho)));
        }
        if self.chi < -PI - 1e-12 || self.chi > PI + 1e-12 {
            return Err(Error::validation(format!("chi = {} outside [-pi, pi]", self.chi)));
        }
        Ok(())
    }

    /// True inside the sector 0 ≤ ρ ≤ 2, −π/2 ≤ χ ≤ −π/6, K ≥ 0.
    pub fn is_canonical(&self) -> bool {
        self.validate().is_ok()
            && self.bigk >= 0.0
            && self.chi >= -FRAC_PI_2 - 1e-12
            && self.chi <= -FRAC_PI_6 + 1e-12
    }

    pub fn rho_cos(&self) -> f64 {
        self.rho * self.chi.cos()
    }

    pub fn rho_sin(&self) -> f64 {
        self.rho * self.chi.sin()
    }
}

/// Oriented tensor: α0 = (ρ/2)cos χ, α2 = K, α3 = 1, β3 = (ρ sin χ − 1)/2.
pub fn from_rho_chi_k(p: &OrientedParams) -> Result<OctupolarTensor> {
    p.validate()?;
    Ok(oriented_tensor(p))
}

pub(crate) fn oriented_tensor(p: &OrientedParams) -> OctupolarTensor {
    OctupolarTensor {
        alpha0: 0.5 * p.rho_cos(),
        alpha: [0.0, p.bigk, 1.0],
        beta: [0.0, 0.0, 0.5 * (p.rho_sin() - 1.0)],
    }
}

/// Frame in which a tensor takes its oriented form.
///
/// `rotation` is orthogonal; it is improper (`mirrored`) when the mirror
/// χ ↦ −χ − π/3 was needed to reach the canonical sector.
/// The input satisfies Φ(x) = scale · Φ_params(rotation · x).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Orientation {
    pub rotation: Mat3,
    pub scale: f64,
    pub params: OrientedParams,
    pub mirrored: bool,
    pub continuum: bool,
}

impl Orientation {
    /// The tensor this orientation was computed from.
    pub fn undo(&self) -> OctupolarTensor {
        oriented_tensor(&self.params).rotated(&linalg::transpose(&self.rotation)).scaled(self.scale)
    }
}

/// Mirror reflection of the change of variables with ϑ = π/3.
pub fn mirror_matrix() -> Mat3 {
    let (s, c) = FRAC_PI_3.sin_cos();
    [[c, -s, 0.0], [-s, -c, 0.0], [0.0, 0.0, 1.0]]
}

/// Unit vectors where Φ attains its global maximum (all ties within 1e−9 relative).
pub fn global_maxima(cubic: &Cubic) -> Vec<(Vec3, f64)> {
    let seeds = linalg::fibonacci_sphere(600);
    let mut found: Vec<(Vec3, f64)> = Vec::new();
    for s in seeds {
        let y = cubic.flow(&s, 1.0, 400);
        let p = cubic.polish(&y, 50);
        if p.residual > 1e-9 * cubic.scale().max(1e-300) {
            continue;
        }
        if found.iter().any(|(x, _)| linalg::angle(x, &p.x) < 1e-6) {
            continue;
        }
        found.push((p.x, p.lambda));
    }
    let best = found.iter().map(|(_, v)| *v).fold(f64::MIN, f64::max);
    let tol = 1e-9 * best.abs().max(1e-300);
    let mut out: Vec<(Vec3, f64)> = found.into_iter().filter(|(_, v)| *v >= best - tol).collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    out
}

/// Rotation angles ψ about x3 with Φ(cos ψ, sin ψ, 0) = 0.
fn equatorial_zeros(b: &OctupolarTensor) -> Vec<f64> {
    let s = b.to_sym();
    // Φ(c, s, 0) = α1 c³ + 3γ2 c² s + 3β1 c s² + α2 s³
    let coeffs = [s.alpha[0], 3.0 * s.gamma[1], 3.0 * s.beta[0], s.alpha[1]];
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale < 1e-13 {
        return vec![0.0];
    }
    let mut out = Vec::new();
    if s.alpha[1].abs() <= 1e-13 * scale {
        out.push(FRAC_PI_2);
    }
    // in u = tan ψ: α1 + 3γ2 u + 3β1 u² + α2 u³
    if let Ok(roots) = real_roots(&coeffs) {
        for (u, _) in roots {
            out.push(u.atan());
        }
    }
    let mut all = Vec::new();
    for psi in out {
        all.push(psi);
        all.push(psi + PI);
    }
    all
}

fn wrap_angle(a: f64) -> f64 {
    let mut a = a;
    while a > PI {
        a -= 2.0 * PI;
    }
    while a <= -PI {
        a += 2.0 * PI;
    }
    a
}

/// Moves (ρ, χ, K) into the sector, returning the new params and the map G
/// with Φ_new(y) = Φ_old(G y).
pub fn canonicalize(p: &OrientedParams) -> (OrientedParams, Mat3, bool) {
    let mut q = *p;
    let mut g = linalg::identity();
    let mut mirrored = false;
    if q.bigk < 0.0 {
        q.bigk = -q.bigk;
        g = linalg::mat_mul(&g, &linalg::rot_z(PI));
    }
    if q.rho <= 1e-12 {
        q.chi = -FRAC_PI_2;
        return (q, g, mirrored);
    }
    let step = 2.0 * PI / 3.0;
    q.chi = wrap_angle(q.chi);
    // shift into [−5π/6, −π/6]
    while q.chi > -FRAC_PI_6 + 1e-12 {
        q.chi -= step;
        g = linalg::mat_mul(&g, &linalg::rot_z(step));
    }
    while q.chi < -5.0 * FRAC_PI_6 - 1e-12 {
        q.chi += step;
        g = linalg::mat_mul(&g, &linalg::rot_z(-step));
    }
    if q.chi < -FRAC_PI_2 - 1e-12 {
        q.chi = -q.chi - FRAC_PI_3;
        g = linalg::mat_mul(&g, &mirror_matrix());
        mirrored = !mirrored;
        q.chi -= step;
        g = linalg::mat_mul(&g, &linalg::rot_z(step));
    }
    q.chi = q.chi.clamp(-FRAC_PI_2, -FRAC_PI_6);
    (q, g, mirrored)
}

fn lex_key(p: &OrientedParams) -> [i64; 3] {
    let r = |v: f64| (v * 1e8).round() as i64;
    [r(p.rho), r(p.chi), r(p.bigk)]
}

/// Rotates a global maximum to the north pole, zeroes Φ(1,0,0), scales
/// Φ(north) to 1 and canonicalizes the resulting (ρ, χ, K).
pub fn orient(t: &OctupolarTensor) -> Result<Orientation> {
    let cubic = Cubic::new(t);
    if cubic.scale() < 1e-14 {
        return Err(Error::validation("cannot orient the zero tensor"));
    }
    let maxima = global_maxima(&cubic);
    if maxima.is_empty() {
        return Err(Error::numerical("no maximum found on the sphere"));
    }
    let mut best: Option<Orientation> = None;
    for (m, value) in maxima {
        let u = linalg::orthogonal_completion(&m);
        let w = linalg::cross(&m, &u);
        let r0: Mat3 = [u, w, m];
        let b = t.rotated(&r0).scaled(1.0 / value);
        for psi in equatorial_zeros(&b) {
            let rz = linalg::rot_z(-psi);
            let c = b.rotated(&rz);
            let s = c.to_sym();
            let off = [s.alpha[0], s.beta[0], s.beta[1], s.alpha[2] - 1.0];
            if off.iter().any(|v| v.abs() > 1e-8) {
                continue;
            }
            let raw = OrientedParams {
                rho: (4.0 * s.alpha0 * s.alpha0 + (2.0 * s.beta[2] + 1.0).powi(2)).sqrt(),
                chi: (2.0 * s.beta[2] + 1.0).atan2(2.0 * s.alpha0),
                bigk: s.alpha[1],
            };
            let (params, g, mirrored) = canonicalize(&raw);
            // Φ(x) = value Φ_raw(R x) = value Φ_params(Gᵀ R x)
            let rotation = linalg::mat_mul(&linalg::transpose(&g), &linalg::mat_mul(&rz, &r0));
            let params = OrientedParams { rho: params.rho.min(2.0), ..params };
            let cand = Orientation {
                rotation,
                scale: value,
                params,
                mirrored,
                continuum: params.rho < 1e-9 && params.bigk < 1e-9,
            };
            let better = match &best {
                None => true,
                Some(b) => lex_key(&cand.params) < lex_key(&b.params),
            };
            if better {
                best = Some(cand);
            }
        }
    }
    best.ok_or_else(|| Error::numerical("orientation failed to zero the equatorial coefficients"))
}

/// Sampling grid in the spherical-coordinate convention
/// x = (cos θ cos φ, sin θ cos φ, sin φ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereGrid {
    pub theta_steps: usize,
    pub phi_steps: usize,
}

impl SphereGrid {
    pub fn new(theta_steps: usize, phi_steps: usize) -> Result<Self> {
        if theta_steps < 2 || phi_steps < 2 {
            return Err(Error::validation("grid needs at least 2 steps in each direction"));
        }
        Ok(SphereGrid { theta_steps, phi_steps })
    }
}

/// How grid points are laid out on the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridMode {
    /// Full sphere in (θ, φ).
    Sphere,
    /// x3 = +√(1 − x1² − x2²) over a square grid of the unit disk.
    North,
    /// x3 = −√(1 − x1² − x2²).
    South,
    /// x2 = +√(1 − x1² − x3²) over (x1, x3), as in the contour figures.
    Contour,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub theta: f64,
    pub phi: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub phi_value: f64,
}

fn row_for(cubic: &Cubic, x: Vec3) -> GridRow {
    let phi = x[2].clamp(-1.0, 1.0).asin();
    let mut theta = x[1].atan2(x[0]);
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    GridRow { theta, phi, x1: x[0], x2: x[1], x3: x[2], phi_value: cubic.value(&x) }
}

/// Potential values over a grid. In the chart modes the square grid
/// `theta_steps × phi_steps` spans [−1, 1]² and points outside the unit disk are skipped.
pub fn sample_grid<T: CubicForm + ?Sized>(t: &T, grid: &SphereGrid, mode: GridMode) -> Vec<GridRow> {
    let cubic = Cubic::new(t);
    let (nt, np) = (grid.theta_steps, grid.phi_steps);
    (0..np)
        .into_par_iter()
        .flat_map_iter(|j| {
            let cubic = &cubic;
            (0..nt).filter_map(move |i| {
                let a = i as f64 / (nt - 1) as f64;
                let b = j as f64 / (np - 1) as f64;
                let x = match mode {
                    GridMode::Sphere => {
                        let theta = 2.0 * PI * a;
                        let phi = -FRAC_PI_2 + PI * b;
                        [theta.cos() * phi.cos(), theta.sin() * phi.cos(), phi.sin()]
                    }
                    _ => {
                        let (u, v) = (2.0 * a - 1.0, 2.0 * b - 1.0);
                        let r2 = u * u + v * v;
                        if r2 > 1.0 + 1e-14 {
                            return None;
                        }
                        let h = (1.0 - r2).max(0.0).sqrt();
                        match mode {
                            GridMode::North => [u, v, h],
                            GridMode::South => [u, v, -h],
                            _ => [u, h, v],
                        }
                    }
                };
                let mut row = row_for(cubic, x);
                if mode == GridMode::Sphere {
                    row.theta = 2.0 * PI * a;
                    row.phi = -FRAC_PI_2 + PI * b;
                }
                Some(row)
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rho: f64, chi: f64, k: f64) -> OrientedParams {
        OrientedParams::new(rho, chi, k).unwrap()
    }

    #[test]
    fn oriented_normalization() {
        let t = from_rho_chi_k(&p(1.3, -1.0, 0.4)).unwrap();
        assert!((eval_potential(&t, &[0.0, 0.0, 1.0]) - 1.0).abs() < 1e-15);
        assert!(eval_potential(&t, &[1.0, 0.0, 0.0]).abs() < 1e-15);
    }

    #[test]
    fn oriented_matches_closed_form() {
        let (r, c, k) = (1.3, -1.0, 0.4);
        let t = from_rho_chi_k(&p(r, c, k)).unwrap();
        let x = [0.3, -0.5, 0.81];
        let (x1, x2, x3) = (x[0], x[1], x[2]);
        let closed = 3.0 * r * c.cos() * x1 * x2 * x3
            + k * (x2 * x2 - 3.0 * x1 * x1) * x2
            + (x3 * x3 - 3.0 * x2 * x2) * x3
            + 1.5 * (r * c.sin() - 1.0) * (x1 * x1 - x2 * x2) * x3;
        assert!((eval_potential(&t, &x) - closed).abs() < 1e-14);
    }

    #[test]
    fn parameter_examples() {
        let t = from_rho_chi_k(&p(0.0, 0.3, 0.5)).unwrap();
        assert_eq!(t.alpha, [0.0, 0.5, 1.0]);
        assert_eq!(t.beta[2], -0.5);
        let t = from_rho_chi_k(&p(2.0, -FRAC_PI_2, 0.0)).unwrap();
        assert!((t.beta[2] + 1.5).abs() < 1e-15 && t.alpha0.abs() < 1e-15);
        assert!(OrientedParams::new(2.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn gradient_at_pole() {
        let t = from_rho_chi_k(&p(0.0, 0.0, 0.5)).unwrap();
        let g = gradient(&t, &[0.0, 0.0, 1.0]);
        assert!(g[0].abs() < 1e-15 && g[1].abs() < 1e-15 && (g[2] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn tetrahedral_tensor_value() {
        let t = crate::tensor_core::tetrahedral_tensor(-9.0 / 8.0);
        let s = 1.0 / 3f64.sqrt();
        assert!((eval_potential(&t, &[s, s, s]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn orient_recovers_tetrahedral_params() {
        let t = OctupolarTensor { alpha0: 0.0, alpha: [0.0, 1.0 / 2f64.sqrt(), 1.0], beta: [0.0, 0.0, -0.5] };
        let o = orient(&t).unwrap();
        assert!(o.params.rho < 1e-8, "{:?}", o.params);
        assert!((o.params.bigk - 1.0 / 2f64.sqrt()).abs() < 1e-8);
        assert!(o.undo().to_tensor().max_abs_diff(&t.to_tensor()) < 1e-9);
    }

    #[test]
    fn orient_rotation_covariance() {
        let t = from_rho_chi_k(&p(0.5, -FRAC_PI_3 + 2.0 * FRAC_PI_3, 0.0)).unwrap();
        let o = orient(&t).unwrap();
        assert!((o.params.rho - 0.5).abs() < 1e-8);
        assert!((o.params.chi + FRAC_PI_3).abs() < 1e-8, "{:?}", o.params);
        assert!(o.params.bigk.abs() < 1e-8);
        assert!(o.undo().to_tensor().max_abs_diff(&t.to_tensor()) < 1e-9);
    }

    #[test]
    fn grid_rows_and_pole() {
        let t = from_rho_chi_k(&p(0.5, -FRAC_PI_3, 0.0)).unwrap();
        let rows = sample_grid(&t, &SphereGrid::new(2, 2).unwrap(), GridMode::Sphere);
        assert_eq!(rows.len(), 4);
        let rows = sample_grid(&t, &SphereGrid::new(181, 91).unwrap(), GridMode::Sphere);
        assert_eq!(rows.len(), 16471);
        let pole = rows.last().unwrap();
        assert!((pole.phi_value - 1.0).abs() < 1e-12);
    }
}
