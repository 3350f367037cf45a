//! Nematic director gradients: splay/twist/bend/octupolar-splay
//! decomposition, Oseen–Frank energy and the associated octupolar tensor.

use nalgebra::{Matrix3, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::critical_points::{oracle_critical_points, CriticalPoint, Kind};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};
use crate::tensor_core::{detrace_symmetric, OctupolarTensor, SymTensor3, Tensor3};

const GRADIENT_TOL: f64 = 1e-10;
const Q_ZERO: f64 = 1e-13;

/// g_ij = ∂n_i/∂x_j together with the director n.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectorGradient {
    pub g: Mat3,
    pub n: Vec3,
}

/// JSON layout: gradient row-major, then n.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradientFile {
    pub gradient: Vec<f64>,
    pub n: Vec3,
}

impl DirectorGradient {
    pub fn new(g: Mat3, n: Vec3) -> Result<Self> {
        if !g.iter().flatten().chain(n.iter()).all(|v| v.is_finite()) {
            return Err(Error::validation("gradient and director must be finite"));
        }
        if (linalg::norm(&n) - 1.0).abs() > GRADIENT_TOL {
            return Err(Error::validation("director must be a unit vector"));
        }
        let scale = g.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
        let gtn = linalg::mat_t_vec(&g, &n);
        if linalg::max_abs(&gtn) > GRADIENT_TOL * scale {
            return Err(Error::validation(format!(
                "gradient violates gᵀn = 0 (max deviation {:.3e})",
                linalg::max_abs(&gtn)
            )));
        }
        Ok(DirectorGradient { g, n })
    }

    pub fn zero(n: Vec3) -> Result<Self> {
        Self::new([[0.0; 3]; 3], n)
    }
}

impl TryFrom<GradientFile> for DirectorGradient {
    type Error = Error;

    fn try_from(f: GradientFile) -> Result<Self> {
        if f.gradient.len() != 9 {
            return Err(Error::validation(format!("gradient needs 9 numbers, got {}", f.gradient.len())));
        }
        let mut g = [[0.0; 3]; 3];
        for (i, row) in g.iter_mut().enumerate() {
            row.copy_from_slice(&f.gradient[3 * i..3 * i + 3]);
        }
        DirectorGradient::new(g, f.n)
    }
}

impl From<DirectorGradient> for GradientFile {
    fn from(d: DirectorGradient) -> Self {
        GradientFile { gradient: d.g.iter().flatten().copied().collect(), n: d.n }
    }
}

/// Distortion frame (n1, n2, n) with n = n1 × n2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub n1: Vec3,
    pub n2: Vec3,
    pub n: Vec3,
}

impl Frame {
    /// Cartesian frame with n = e3.
    pub fn standard() -> Self {
        Frame { n1: [1.0, 0.0, 0.0], n2: [0.0, 1.0, 0.0], n: [0.0, 0.0, 1.0] }
    }

    /// Completes n with the smallest-index Cartesian axis not too close to it.
    pub fn completing(n: &Vec3) -> Self {
        let i = (0..3).find(|&i| n[i].abs() <= std::f64::consts::FRAC_1_SQRT_2).unwrap_or(0);
        let mut e = [0.0; 3];
        e[i] = 1.0;
        let n1 = linalg::normalize(&linalg::sub(&e, &linalg::scale(n, n[i])));
        Frame { n1, n2: linalg::cross(n, &n1), n: *n }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let v = [self.n1, self.n2, self.n];
        for a in 0..3 {
            for b in 0..3 {
                let want = if a == b { 1.0 } else { 0.0 };
                if (linalg::dot(&v[a], &v[b]) - want).abs() > tol {
                    return Err(Error::validation("frame is not orthonormal"));
                }
            }
        }
        if linalg::max_abs(&linalg::sub(&linalg::cross(&self.n1, &self.n2), &self.n)) > tol {
            return Err(Error::validation("frame is not right-handed"));
        }
        Ok(())
    }

    /// Components of a lab vector in this frame.
    pub fn coords(&self, x: &Vec3) -> Vec3 {
        [linalg::dot(x, &self.n1), linalg::dot(x, &self.n2), linalg::dot(x, &self.n)]
    }

    /// Lab vector with the given frame components.
    pub fn lab(&self, c: &Vec3) -> Vec3 {
        let mut out = [0.0; 3];
        for (basis, ci) in [self.n1, self.n2, self.n].iter().zip(c) {
            out = linalg::add(&out, &linalg::scale(basis, *ci));
        }
        out
    }
}

/// (S, T, b1, b2, q) and the frame they refer to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistortionCharacteristics {
    #[serde(rename = "S")]
    pub splay: f64,
    #[serde(rename = "T")]
    pub twist: f64,
    pub b1: f64,
    pub b2: f64,
    pub q: f64,
    pub frame: Frame,
    /// q = 0: the frame is the deterministic completion, not read off D.
    #[serde(default)]
    pub frame_arbitrary: bool,
}

impl DistortionCharacteristics {
    /// Characteristics in the Cartesian frame (n = e3).
    pub fn new(splay: f64, twist: f64, b1: f64, b2: f64, q: f64) -> Result<Self> {
        if q < 0.0 {
            return Err(Error::validation("octupolar splay q must be non-negative"));
        }
        Ok(DistortionCharacteristics { splay, twist, b1, b2, q, frame: Frame::standard(), frame_arbitrary: q == 0.0 })
    }

    pub fn in_frame(mut self, frame: Frame) -> Result<Self> {
        frame.validate(1e-12)?;
        self.frame = frame;
        Ok(self)
    }

    pub fn bend(&self) -> f64 {
        self.b1.hypot(self.b2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrankConstants {
    pub k11: f64,
    pub k22: f64,
    pub k33: f64,
    pub k24: f64,
}

impl FrankConstants {
    pub fn ericksen_ok(&self) -> bool {
        self.k11 >= self.k24 && self.k22 >= self.k24 && self.k24 >= 0.0 && self.k33 >= 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrankEnergy {
    pub w_classic: f64,
    pub w_selinger: f64,
    pub ericksen_ok: bool,
}

fn skew_of(n: &Vec3) -> Mat3 {
    // W v = n × v
    [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]]
}

fn curl(g: &Mat3) -> Vec3 {
    // (curl n)_i = ε_ijk ∂_j n_k = ε_ijk g_kj
    [g[2][1] - g[1][2], g[0][2] - g[2][0], g[1][0] - g[0][1]]
}

fn trace_of_square(g: &Mat3) -> f64 {
    linalg::trace(&linalg::mat_mul(g, g))
}

pub fn decompose_gradient(dg: &DirectorGradient) -> Result<DistortionCharacteristics> {
    let DirectorGradient { g, n } = *dg;
    let splay = linalg::trace(&g);
    let twist = linalg::dot(&n, &curl(&g));
    let b = linalg::neg(&linalg::mat_vec(&g, &n));

    let p = linalg::mat_add(&linalg::identity(), &linalg::mat_scale(&linalg::outer(&n, &n), -1.0));
    let mut d = linalg::mat_add(&g, &linalg::outer(&b, &n));
    d = linalg::mat_add(&d, &linalg::mat_scale(&skew_of(&n), -0.5 * twist));
    d = linalg::mat_add(&d, &linalg::mat_scale(&p, -0.5 * splay));
    let d = linalg::mat_mul(&linalg::mat_mul(&p, &symmetric_part(&d)), &p);

    let scale = g.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
    let eig = SymmetricEigen::new(Matrix3::from_fn(|i, j| d[i][j]));
    let top = (0..3).fold(0, |best, i| if eig.eigenvalues[i] > eig.eigenvalues[best] { i } else { best });

    let (frame, q, arbitrary) = if eig.eigenvalues[top] <= Q_ZERO * scale {
        (Frame::completing(&n), 0.0, true)
    } else {
        let v = eig.eigenvectors.column(top);
        let mut n1 = [v[0], v[1], v[2]];
        n1 = linalg::normalize(&linalg::sub(&n1, &linalg::scale(&n, linalg::dot(&n1, &n))));
        let lead = (0..3).fold(0, |best, i| if n1[i].abs() > n1[best].abs() + 1e-12 { i } else { best });
        if n1[lead] < 0.0 {
            n1 = linalg::neg(&n1);
        }
        let q = linalg::dot(&n1, &linalg::mat_vec(&d, &n1));
        (Frame { n1, n2: linalg::cross(&n, &n1), n }, q, false)
    };

    Ok(DistortionCharacteristics {
        splay,
        twist,
        b1: linalg::dot(&b, &frame.n1),
        b2: linalg::dot(&b, &frame.n2),
        q,
        frame,
        frame_arbitrary: arbitrary,
    })
}

fn symmetric_part(m: &Mat3) -> Mat3 {
    let mut s = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            s[i][j] = 0.5 * (m[i][j] + m[j][i]);
        }
    }
    s
}

pub fn reconstruct_gradient(dc: &DistortionCharacteristics) -> Result<DirectorGradient> {
    dc.frame.validate(1e-10)?;
    if dc.q < 0.0 {
        return Err(Error::validation("octupolar splay q must be non-negative"));
    }
    let Frame { n1, n2, n } = dc.frame;
    let terms = [
        (0.5 * dc.splay + dc.q, linalg::outer(&n1, &n1)),
        (0.5 * dc.splay - dc.q, linalg::outer(&n2, &n2)),
        (-dc.b1, linalg::outer(&n1, &n)),
        (-dc.b2, linalg::outer(&n2, &n)),
        (0.5 * dc.twist, linalg::outer(&n2, &n1)),
        (-0.5 * dc.twist, linalg::outer(&n1, &n2)),
    ];
    let g = terms.iter().fold([[0.0; 3]; 3], |acc, (c, m)| linalg::mat_add(&acc, &linalg::mat_scale(m, *c)));
    Ok(DirectorGradient { g, n })
}

pub fn oseen_frank(dc: &DistortionCharacteristics, k: &FrankConstants) -> Result<FrankEnergy> {
    let dg = reconstruct_gradient(dc)?;
    let g = dg.g;
    let div = linalg::trace(&g);
    let c = curl(&g);
    let twist = linalg::dot(&dg.n, &c);
    let bend = linalg::norm(&linalg::cross(&dg.n, &c));
    let w_classic = 0.5 * k.k11 * div * div
        + 0.5 * k.k22 * twist * twist
        + 0.5 * k.k33 * bend * bend
        + k.k24 * (trace_of_square(&g) - div * div);

    let b2 = dc.b1 * dc.b1 + dc.b2 * dc.b2;
    let w_selinger = 0.5 * (k.k11 - k.k24) * dc.splay * dc.splay
        + 0.5 * (k.k22 - k.k24) * dc.twist * dc.twist
        + 0.5 * k.k33 * b2
        + k.k24 * 2.0 * dc.q * dc.q;
    Ok(FrankEnergy { w_classic, w_selinger, ericksen_ok: k.ericksen_ok() })
}

/// Φ at frame coordinates x = (x1, x2, x3), homogeneous of degree 3.
pub fn lc_octupolar_potential(dc: &DistortionCharacteristics, x: &Vec3) -> f64 {
    let [x1, x2, x3] = *x;
    let r2 = x1 * x1 + x2 * x2 + x3 * x3;
    (0.5 * dc.splay + dc.q) * x1 * x1 * x3 + (0.5 * dc.splay - dc.q) * x2 * x2 * x3
        - dc.b1 * x1 * x3 * x3
        - dc.b2 * x2 * x3 * x3
        + 0.2 * r2 * (dc.b1 * x1 + dc.b2 * x2 - dc.splay * x3)
}

/// irr(∇n ⊗ n) in lab coordinates.
pub fn octupolar_tensor(dg: &DirectorGradient) -> OctupolarTensor {
    let t = Tensor3::from_fn(|i, j, k| dg.g[i][j] * dg.n[k]);
    detrace_symmetric(&SymTensor3::from_tensor(&t)).0
}

/// The same tensor expressed in the distortion frame.
pub fn frame_tensor(dc: &DistortionCharacteristics) -> OctupolarTensor {
    let local = DistortionCharacteristics { frame: Frame::standard(), ..*dc };
    let dg = reconstruct_gradient(&local).expect("standard frame is valid");
    octupolar_tensor(&dg)
}

/// Local maxima of Φ in frame coordinates, found by the multi-start oracle.
/// Errors when Φ vanishes or has a continuum of critical points (pure splay).
pub fn potential_maxima(dc: &DistortionCharacteristics, samples: usize) -> Result<Vec<CriticalPoint>> {
    let t = frame_tensor(dc);
    let res = oracle_critical_points(&t, samples)?;
    if res.continuum {
        return Err(Error::numerical("potential has a continuum of critical points"));
    }
    Ok(res.points.into_iter().filter(|p| p.kind == Kind::Maximum).collect())
}
