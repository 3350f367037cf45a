//! Third-rank tensors in three dimensions: storage, symmetry-type and
//! harmonic decompositions, dimension counting and special constructors.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};

/// Name of the flat component layout used in files.
pub const LAYOUT: &str = "i9j3k";

/// Flat index of `A_ijk` (0-based).
#[inline]
pub fn idx(i: usize, j: usize, k: usize) -> usize {
    i * 9 + j * 3 + k
}

/// Ricci alternator ε_ijk.
#[inline]
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    if i == j || j == k || i == k {
        0.0
    } else if (i + 1) % 3 == j && (j + 1) % 3 == k {
        1.0
    } else {
        -1.0
    }
}

/// Kronecker δ_ij.
#[inline]
pub fn kron(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// The symbol t_ijk: 3 when all indices agree, 1 when exactly two do, 0 otherwise.
pub fn t_symbol(i: usize, j: usize, k: usize) -> f64 {
    if i == j && j == k {
        3.0
    } else if i == j || j == k || i == k {
        1.0
    } else {
        0.0
    }
}

const PERMS: [([usize; 3], f64); 6] = [
    ([0, 1, 2], 1.0),
    ([1, 2, 0], 1.0),
    ([2, 0, 1], 1.0),
    ([1, 0, 2], -1.0),
    ([2, 1, 0], -1.0),
    ([0, 2, 1], -1.0),
];

/// Raw third-rank tensor with 27 Cartesian components.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TensorFile", into = "TensorFile")]
pub struct Tensor3 {
    pub components: [f64; 27],
    pub frame_label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct TensorFile {
    components: Vec<f64>,
    #[serde(default = "default_layout")]
    layout: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame_label: Option<String>,
}

fn default_layout() -> String {
    LAYOUT.to_string()
}

impl TryFrom<TensorFile> for Tensor3 {
    type Error = Error;

    fn try_from(f: TensorFile) -> Result<Self> {
        if f.layout != LAYOUT {
            return Err(Error::validation(format!("unsupported layout {:?}", f.layout)));
        }
        let components: [f64; 27] = f
            .components
            .try_into()
            .map_err(|v: Vec<f64>| Error::validation(format!("expected 27 components, got {}", v.len())))?;
        let mut t = Tensor3::new(components)?;
        t.frame_label = f.frame_label;
        Ok(t)
    }
}

impl From<Tensor3> for TensorFile {
    fn from(t: Tensor3) -> Self {
        TensorFile {
            components: t.components.to_vec(),
            layout: LAYOUT.to_string(),
            frame_label: t.frame_label,
        }
    }
}

impl Tensor3 {
    /// Rejects non-finite components.
    pub fn new(components: [f64; 27]) -> Result<Self> {
        if components.iter().any(|c| !c.is_finite()) {
            return Err(Error::validation("tensor components must be finite"));
        }
        Ok(Tensor3 { components, frame_label: None })
    }

    pub fn zeros() -> Self {
        Tensor3 { components: [0.0; 27], frame_label: None }
    }

    pub fn from_fn(f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut c = [0.0; 27];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    c[idx(i, j, k)] = f(i, j, k);
                }
            }
        }
        Tensor3 { components: c, frame_label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.frame_label = Some(label.into());
        self
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.components[idx(i, j, k)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.components[idx(i, j, k)] = v;
    }

    /// a ⊗ b ⊗ c.
    pub fn outer(a: &Vec3, b: &Vec3, c: &Vec3) -> Self {
        Self::from_fn(|i, j, k| a[i] * b[j] * c[k])
    }

    /// B_ijk = A_{p(ijk)}, where `p` lists which slot of A each of (i, j, k) fills.
    /// For example `[1, 0, 2]` yields B_ijk = A_jik.
    pub fn permuted(&self, p: [usize; 3]) -> Self {
        Self::from_fn(|i, j, k| {
            let ix = [i, j, k];
            let mut src = [0usize; 3];
            for s in 0..3 {
                src[p[s]] = ix[s];
            }
            self.get(src[0], src[1], src[2])
        })
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, other: &Tensor3) -> f64 {
        (self - other).max_abs()
    }

    /// Full contraction A_ijk B_ijk.
    pub fn inner(&self, other: &Tensor3) -> f64 {
        self.components.iter().zip(other.components.iter()).map(|(a, b)| a * b).sum()
    }

    /// Fully symmetric part A_(ijk).
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(|i, j, k| {
            let ix = [i, j, k];
            PERMS.iter().map(|(p, _)| self.get(ix[p[0]], ix[p[1]], ix[p[2]])).sum::<f64>() / 6.0
        })
    }

    /// Fully antisymmetric part.
    pub fn antisymmetrized(&self) -> Self {
        Self::from_fn(|i, j, k| {
            let ix = [i, j, k];
            PERMS.iter().map(|(p, s)| s * self.get(ix[p[0]], ix[p[1]], ix[p[2]])).sum::<f64>() / 6.0
        })
    }

    pub fn is_fully_symmetric(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.symmetrized()) <= tol
    }

    /// A_ijk = A_ikj, the piezoelectric symmetry.
    pub fn is_last_two_symmetric(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.permuted([0, 2, 1])) <= tol
    }

    /// The three partial-trace vectors v1_i = A_ijj, v2_i = A_jij, v3_i = A_jji.
    pub fn trace_vectors(&self) -> [Vec3; 3] {
        let mut v = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                v[0][i] += self.get(i, j, j);
                v[1][i] += self.get(j, i, j);
                v[2][i] += self.get(j, j, i);
            }
        }
        v
    }

    /// A'_ijk = R_ia R_jb R_kc A_abc.
    pub fn rotated(&self, r: &Mat3) -> Self {
        Self::from_fn(|i, j, k| {
            let mut s = 0.0;
            for a in 0..3 {
                for b in 0..3 {
                    let rab = r[i][a] * r[j][b];
                    if rab == 0.0 {
                        continue;
                    }
                    for c in 0..3 {
                        s += rab * r[k][c] * self.get(a, b, c);
                    }
                }
            }
            s
        })
    }

    /// Vector A_ijk y_j y_k.
    pub fn contract_last_two(&self, y: &Vec3) -> Vec3 {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..3 {
                for k in 0..3 {
                    *o += self.get(i, j, k) * y[j] * y[k];
                }
            }
        }
        out
    }

    /// Matrix M_jk = A_ijk x_i.
    pub fn contract_first(&self, x: &Vec3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[j][k] += self.get(i, j, k) * x[i];
                }
            }
        }
        out
    }
}

impl Add for &Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: &Tensor3) -> Tensor3 {
        let mut c = self.components;
        for (a, b) in c.iter_mut().zip(rhs.components.iter()) {
            *a += b;
        }
        Tensor3 { components: c, frame_label: self.frame_label.clone() }
    }
}

impl Sub for &Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        let mut c = self.components;
        for (a, b) in c.iter_mut().zip(rhs.components.iter()) {
            *a -= b;
        }
        Tensor3 { components: c, frame_label: self.frame_label.clone() }
    }
}

impl Mul<f64> for &Tensor3 {
    type Output = Tensor3;
    fn mul(self, s: f64) -> Tensor3 {
        let mut c = self.components;
        for a in c.iter_mut() {
            *a *= s;
        }
        Tensor3 { components: c, frame_label: self.frame_label.clone() }
    }
}

impl Neg for &Tensor3 {
    type Output = Tensor3;
    fn neg(self) -> Tensor3 {
        self * -1.0
    }
}

/// Fully symmetric tensor in the ten-parameter form.
///
/// α0 = A123, αi = Aiii, β1 = A122, β2 = A233, β3 = A311,
/// γ1 = A133, γ2 = A112, γ3 = A223.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymTensor3 {
    pub alpha0: f64,
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
    pub gamma: [f64; 3],
}

impl SymTensor3 {
    pub fn to_tensor(&self) -> Tensor3 {
        let mut t = Tensor3::zeros();
        let mut put = |i: usize, j: usize, k: usize, v: f64| {
            let ix = [i, j, k];
            for (p, _) in PERMS.iter() {
                t.set(ix[p[0]], ix[p[1]], ix[p[2]], v);
            }
        };
        put(0, 1, 2, self.alpha0);
        for i in 0..3 {
            let n = (i + 1) % 3;
            let prev = (i + 2) % 3;
            put(i, i, i, self.alpha[i]);
            // β_i multiplies x_i x_{i+1}^2, γ_i multiplies x_i x_{i-1}^2
            put(i, n, n, self.beta[i]);
            put(i, prev, prev, self.gamma[i]);
        }
        t
    }

    /// Reads the ten parameters off the fully symmetric part of `t`.
    pub fn from_tensor(t: &Tensor3) -> Self {
        let s = t.symmetrized();
        let mut out = SymTensor3 { alpha0: s.get(0, 1, 2), alpha: [0.0; 3], beta: [0.0; 3], gamma: [0.0; 3] };
        for i in 0..3 {
            let n = (i + 1) % 3;
            let prev = (i + 2) % 3;
            out.alpha[i] = s.get(i, i, i);
            out.beta[i] = s.get(i, n, n);
            out.gamma[i] = s.get(i, prev, prev);
        }
        out
    }

    /// Trace-type coefficients A_i = 3(α_i + β_i + γ_i).
    pub fn trace_coefficients(&self) -> Vec3 {
        [0, 1, 2].map(|i| 3.0 * (self.alpha[i] + self.beta[i] + self.gamma[i]))
    }
}

/// Fully symmetric traceless third-rank tensor (seven parameters).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OctupolarTensor {
    pub alpha0: f64,
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
}

impl OctupolarTensor {
    pub fn zero() -> Self {
        OctupolarTensor { alpha0: 0.0, alpha: [0.0; 3], beta: [0.0; 3] }
    }

    pub fn to_sym(&self) -> SymTensor3 {
        SymTensor3 {
            alpha0: self.alpha0,
            alpha: self.alpha,
            beta: self.beta,
            gamma: [0, 1, 2].map(|i| -(self.alpha[i] + self.beta[i])),
        }
    }

    pub fn to_tensor(&self) -> Tensor3 {
        self.to_sym().to_tensor()
    }

    /// Accepts only tensors that are fully symmetric and traceless to `tol`
    /// relative to their largest component.
    pub fn from_tensor(t: &Tensor3, tol: f64) -> Result<Self> {
        let scale = t.max_abs().max(1.0);
        if !t.is_fully_symmetric(tol * scale) {
            return Err(Error::validation("tensor is not fully symmetric"));
        }
        let v = t.trace_vectors()[0];
        if linalg::max_abs(&v) > tol * scale {
            return Err(Error::validation("tensor is not traceless"));
        }
        let s = SymTensor3::from_tensor(t);
        Ok(OctupolarTensor { alpha0: s.alpha0, alpha: s.alpha, beta: s.beta })
    }

    pub fn scaled(&self, s: f64) -> Self {
        OctupolarTensor { alpha0: self.alpha0 * s, alpha: self.alpha.map(|a| a * s), beta: self.beta.map(|b| b * s) }
    }

    /// Tensor of the potential x ↦ Φ(Rᵀx).
    pub fn rotated(&self, r: &Mat3) -> Self {
        let t = self.to_tensor().rotated(r);
        let s = SymTensor3::from_tensor(&t);
        OctupolarTensor { alpha0: s.alpha0, alpha: s.alpha, beta: s.beta }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.to_tensor().max_abs() <= tol
    }
}

/// Split into fully symmetric, two mixed-symmetry and fully antisymmetric parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryDecomposition {
    pub a1: Tensor3,
    pub a21: Tensor3,
    pub a22: Tensor3,
    pub a3: Tensor3,
}

impl SymmetryDecomposition {
    pub fn reconstruct(&self) -> Tensor3 {
        &(&(&self.a1 + &self.a21) + &self.a22) + &self.a3
    }
}

pub fn symmetry_decompose(t: &Tensor3) -> SymmetryDecomposition {
    let a21 = Tensor3::from_fn(|i, j, k| (t.get(i, j, k) + t.get(j, i, k) - t.get(k, j, i) - t.get(k, i, j)) / 3.0);
    let a22 = Tensor3::from_fn(|i, j, k| (t.get(i, j, k) - t.get(j, i, k) + t.get(k, j, i) - t.get(j, k, i)) / 3.0);
    SymmetryDecomposition { a1: t.symmetrized(), a21, a22, a3: t.antisymmetrized() }
}

/// Orthogonal irreducible decomposition of a generic third-rank tensor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicDecomposition {
    pub a_scalar: f64,
    pub v1: Vec3,
    pub v2: Vec3,
    pub v3: Vec3,
    pub d1: Mat3,
    pub d2: Mat3,
    pub d3: OctupolarTensor,
    pub mean_vector: Vec3,
}

fn vector_part(v: &Vec3, slot: usize) -> Tensor3 {
    let mut w = [-1.0; 3];
    w[slot] = 4.0;
    Tensor3::from_fn(|i, j, k| {
        (w[0] * v[i] * kron(j, k) + w[1] * kron(i, k) * v[j] + w[2] * kron(i, j) * v[k]) / 10.0
    })
}

/// (1/3)(a ε_ijl D_lk + b D_il ε_ljk)
fn deviator_part(d: &Mat3, a: f64, b: f64) -> Tensor3 {
    Tensor3::from_fn(|i, j, k| {
        let mut s = 0.0;
        for l in 0..3 {
            s += a * levi_civita(i, j, l) * d[l][k] + b * d[i][l] * levi_civita(l, j, k);
        }
        s / 3.0
    })
}

impl HarmonicDecomposition {
    /// The seven third-rank pieces, in the order
    /// D3, D2_1, D2_2, D1_1, D1_2, D1_3, D0.
    pub fn parts(&self) -> [Tensor3; 7] {
        [
            self.d3.to_tensor(),
            deviator_part(&self.d1, 2.0, 1.0),
            // the mirrored weights are needed for the second deviator
            deviator_part(&self.d2, 1.0, 2.0),
            vector_part(&self.v1, 0),
            vector_part(&self.v2, 1),
            vector_part(&self.v3, 2),
            Tensor3::from_fn(|i, j, k| self.a_scalar * levi_civita(i, j, k) / 6.0),
        ]
    }

    pub fn reconstruct(&self) -> Tensor3 {
        self.parts().iter().fold(Tensor3::zeros(), |acc, p| &acc + p)
    }
}

pub fn harmonic_decompose(t: &Tensor3) -> HarmonicDecomposition {
    let mut a_scalar = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                a_scalar += levi_civita(i, j, k) * t.get(i, j, k);
            }
        }
    }
    let [v1, v2, v3] = t.trace_vectors();
    let mut d1 = [[0.0; 3]; 3];
    let mut d2 = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (mut s1, mut s2) = (0.0, 0.0);
            for m in 0..3 {
                for l in 0..3 {
                    s1 += levi_civita(i, m, l) * t.get(m, l, j) + levi_civita(j, m, l) * t.get(m, l, i);
                    s2 += t.get(i, m, l) * levi_civita(m, l, j) + t.get(j, m, l) * levi_civita(m, l, i);
                }
            }
            d1[i][j] = 0.5 * s1 - a_scalar * kron(i, j) / 3.0;
            d2[i][j] = 0.5 * s2 - a_scalar * kron(i, j) / 3.0;
        }
    }
    let mean_vector = [0, 1, 2].map(|i| (v1[i] + v2[i] + v3[i]) / 3.0);
    let (d3, _) = detrace_symmetric(&SymTensor3::from_tensor(t));
    HarmonicDecomposition { a_scalar, v1, v2, v3, d1, d2, d3, mean_vector }
}

/// (1/5)(v_i δ_jk + v_j δ_ik + v_k δ_ij), the isotropic trace carrier.
pub fn trace_tensor(v: &Vec3) -> Tensor3 {
    Tensor3::from_fn(|i, j, k| (v[i] * kron(j, k) + v[j] * kron(i, k) + v[k] * kron(i, j)) / 5.0)
}

/// irr(A) and v_i = A_ijj, so that A = irr(A) + (1/5)(v_i δ_jk + v_j δ_ik + v_k δ_ij).
pub fn detrace_symmetric(s: &SymTensor3) -> (OctupolarTensor, Vec3) {
    let t = s.to_tensor();
    let v = t.trace_vectors()[0];
    let irr = &t - &trace_tensor(&v);
    let p = SymTensor3::from_tensor(&irr);
    (OctupolarTensor { alpha0: p.alpha0, alpha: p.alpha, beta: p.beta }, v)
}

/// Young diagram given by its row lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YoungDiagram {
    pub row_lengths: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(row_lengths: Vec<usize>) -> Result<Self> {
        if row_lengths.is_empty() || row_lengths.contains(&0) {
            return Err(Error::validation("Young diagram needs at least one non-empty row"));
        }
        if row_lengths.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::validation("Young diagram rows must be non-increasing"));
        }
        Ok(YoungDiagram { row_lengths })
    }

    pub fn boxes(&self) -> usize {
        self.row_lengths.iter().sum()
    }

    fn column_length(&self, col: usize) -> usize {
        self.row_lengths.iter().filter(|&&r| r > col).count()
    }
}

/// Dimension of the symmetric-group representation (hook length formula) and
/// of the corresponding tensor subspace in dimension `n`.
pub fn young_dimensions(diagram: &YoungDiagram, n: usize) -> Result<(u128, u128)> {
    if diagram.row_lengths.is_empty() {
        return Err(Error::validation("empty Young diagram"));
    }
    if n == 0 {
        return Err(Error::validation("space dimension must be positive"));
    }
    let r = diagram.boxes();
    let mut hooks: u128 = 1;
    let mut contents_num: u128 = 1;
    for (row, &len) in diagram.row_lengths.iter().enumerate() {
        for col in 0..len {
            let arm = len - col - 1;
            let leg = diagram.column_length(col) - row - 1;
            hooks *= (arm + leg + 1) as u128;
            let c = n as i64 + col as i64 - row as i64;
            if c <= 0 {
                contents_num = 0;
            } else {
                contents_num *= c as u128;
            }
        }
    }
    let fact: u128 = (1..=r as u128).product();
    Ok((fact / hooks, contents_num / hooks))
}

fn check_unit(a: &Vec3, name: &str) -> Result<()> {
    if (linalg::norm(a) - 1.0).abs() > 1e-10 {
        return Err(Error::validation(format!("{name} must be a unit vector")));
    }
    Ok(())
}

/// Octupolar tensor scale·irr(a1 ⊗ a2 ⊗ a3) built from Maxwell multipoles.
pub fn from_multipoles(a1: &Vec3, a2: &Vec3, a3: &Vec3, scale: f64) -> Result<OctupolarTensor> {
    check_unit(a1, "a1")?;
    check_unit(a2, "a2")?;
    check_unit(a3, "a3")?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::validation("multipole scale must be positive"));
    }
    let t = &Tensor3::outer(a1, a2, a3) * scale;
    Ok(detrace_symmetric(&SymTensor3::from_tensor(&t)).0)
}

/// The four unit vectors pointing to the vertices of a regular tetrahedron.
pub fn tetrahedral_vectors() -> [Vec3; 4] {
    let s = 1.0 / 3f64.sqrt();
    [[-s, -s, -s], [s, -s, s], [-s, s, s], [s, s, -s]]
}

/// scale · Σ n_α ⊗ n_α ⊗ n_α over the tetrahedral vectors.
pub fn tetrahedral_tensor(scale: f64) -> OctupolarTensor {
    let t = tetrahedral_vectors()
        .iter()
        .fold(Tensor3::zeros(), |acc, n| &acc + &Tensor3::outer(n, n, n));
    let s = SymTensor3::from_tensor(&(&t * scale));
    OctupolarTensor { alpha0: s.alpha0, alpha: s.alpha, beta: s.beta }
}
