//! Potentials of trace-type tensors, Φt = A1 x1 x3² + A2 x2 x1² + A3 x3 x2²,
//! and tetrahedral constraints on traceless + trace superpositions.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::critical_points::{classify_point, Kind};
use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::potential::{eval_potential, Cubic};
use crate::tensor_core::{SymTensor3, Tensor3};

const ROOT_TWO_THIRDS: f64 = 0.816_496_580_927_726;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceParams {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl TraceParams {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        if ![a1, a2, a3].iter().all(|v| v.is_finite()) {
            return Err(Error::validation("trace coefficients must be finite"));
        }
        Ok(TraceParams { a1, a2, a3 })
    }

    /// A2 = a2, A3 = μ a2.
    pub fn from_mu(a2: f64, mu: f64) -> Result<Self> {
        Self::new(0.0, a2, mu * a2)
    }

    pub fn mu(&self) -> Option<f64> {
        if self.a2 != 0.0 {
            Some(self.a3 / self.a2)
        } else {
            None
        }
    }

    pub fn to_sym(&self) -> SymTensor3 {
        // Φt = Σ A_i x_i x_{i-1}², i.e. γ_i = A_i / 3
        SymTensor3 { alpha0: 0.0, alpha: [0.0; 3], beta: [0.0; 3], gamma: [self.a1 / 3.0, self.a2 / 3.0, self.a3 / 3.0] }
    }

    pub fn to_tensor(&self) -> Tensor3 {
        self.to_sym().to_tensor()
    }

    pub fn value(&self, x: &Vec3) -> f64 {
        self.a1 * x[0] * x[2] * x[2] + self.a2 * x[1] * x[0] * x[0] + self.a3 * x[2] * x[1] * x[1]
    }

    /// Northern-hemisphere restriction Φt⁺(x1, x2).
    pub fn chart_value(&self, x1: f64, x2: f64) -> f64 {
        self.value(&lift(x1, x2))
    }
}

fn lift(x1: f64, x2: f64) -> Vec3 {
    [x1, x2, (1.0 - x1 * x1 - x2 * x2).max(0.0).sqrt()]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    P1,
    P2,
    P3,
    P4,
    P5,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceCriticalPoint {
    pub label: Label,
    pub x1: f64,
    pub x2: f64,
    pub value: f64,
    pub kind: Kind,
    pub index: i32,
    /// Eigenvalues of the Riemannian Hessian on the sphere.
    pub hessian_eigs: [f64; 2],
    /// 2 when p4 and p5 have merged into this point (|μ| = √2).
    pub multiplicity_hint: u32,
}

impl TraceCriticalPoint {
    pub fn position(&self) -> Vec3 {
        lift(self.x1, self.x2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContinuumFeature {
    /// x1 = 0 is critical throughout (μ = 0).
    MeridianX1Zero,
    /// x2 = 0 is critical throughout (A2 = 0).
    MeridianX2Zero,
    /// Degenerate saddles at (±1, 0, 0) on the equator (A2 = 0).
    EquatorialDegenerateSaddles,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub params: TraceParams,
    pub mu: Option<f64>,
    /// Northern chart only; the Southern points are the antipodes with opposite values.
    pub points: Vec<TraceCriticalPoint>,
    pub continuum: Vec<ContinuumFeature>,
}

fn check(p: &TraceParams) -> Result<()> {
    if p.a1 != 0.0 {
        return Err(Error::validation(format!("the pole is critical only for A1 = 0, got A1 = {}", p.a1)));
    }
    if p.a2 == 0.0 && p.a3 == 0.0 {
        return Err(Error::validation("trace potential vanishes identically"));
    }
    Ok(())
}

fn at_bifurcation(mu: f64) -> bool {
    (mu.abs() - SQRT_2).abs() <= 1e-12 * SQRT_2
}

/// ξ(μ) = arcsin(sgn μ √(2/(4−μ²))), defined for 0 < |μ| ≤ √2.
pub fn xi_of_mu(mu: f64) -> Option<f64> {
    if mu == 0.0 || mu.abs() > SQRT_2 * (1.0 + 1e-12) {
        return None;
    }
    let s = (2.0 / (4.0 - mu * mu)).sqrt().min(1.0);
    Some(mu.signum() * s.asin())
}

/// μ(ξ) = √2 √(2 sin²ξ − 1) / sin ξ.
pub fn mu_of_xi(xi: f64) -> f64 {
    let s = xi.sin();
    SQRT_2 * (2.0 * s * s - 1.0).max(0.0).sqrt() / s
}

/// Chart positions of p4 and p5.
pub fn p4_p5(mu: f64) -> Option<[(f64, f64); 2]> {
    let xi = xi_of_mu(mu)?;
    let (x1, x2) = (2.0 / 3f64.sqrt() * xi.cos(), ROOT_TWO_THIRDS * xi.sin());
    Some([(-x1, x2), (x1, x2)])
}

/// Trace and determinant of the chart Hessian at p4/p5 (A2 = 1), from ξ.
/// The constant term of the trace polynomial is 6; with 12 the trace misses
/// the chart Hessian, e.g. −52.7 against −16.7 at μ = 1.
pub fn p45_trace_det(xi: f64) -> (f64, f64) {
    let c2 = xi.cos().powi(2);
    let tr = 2.0 * 6f64.sqrt() * (4.0 * c2 * c2 - 11.0 * c2 + 6.0) / (3.0 * xi.sin() * (2.0 * c2 - 1.0));
    let det = 16.0 * c2 / (1.0 - 2.0 * c2);
    (tr, det)
}

/// Label, chart position and multiplicity hint.
type Location = (Label, f64, f64, u32);

fn locations(p: &TraceParams) -> (Vec<Location>, Vec<ContinuumFeature>) {
    let r = ROOT_TWO_THIRDS;
    match p.mu() {
        None => (
            vec![(Label::P2, 0.0, -r, 1), (Label::P3, 0.0, r, 1)],
            vec![ContinuumFeature::MeridianX2Zero, ContinuumFeature::EquatorialDegenerateSaddles],
        ),
        Some(mu) if mu == 0.0 => {
            // p4, p5 sit on the equator at the ξ = π/4 end of the ellipse
            let (x1, x2) = (r, 1.0 / 3f64.sqrt());
            (vec![(Label::P1, 0.0, 0.0, 1), (Label::P4, -x1, x2, 1), (Label::P5, x1, x2, 1)], vec![ContinuumFeature::MeridianX1Zero])
        }
        Some(mu) => {
            let merged = at_bifurcation(mu);
            let hint = |neg: bool| if merged && (mu < 0.0) == neg { 2 } else { 1 };
            let mut v = vec![(Label::P1, 0.0, 0.0, 1), (Label::P2, 0.0, -r, hint(true)), (Label::P3, 0.0, r, hint(false))];
            if !merged {
                if let Some([a, b]) = p4_p5(mu) {
                    v.push((Label::P4, a.0, a.1, 1));
                    v.push((Label::P5, b.0, b.1, 1));
                }
            }
            (v, Vec::new())
        }
    }
}

/// p1–p5 in the Northern chart, classified.
pub fn trace_critical_points(p: &TraceParams) -> Result<TraceReport> {
    check(p)?;
    let cubic = Cubic::new(&p.to_sym());
    let (locs, continuum) = locations(p);
    let mut points = Vec::with_capacity(locs.len());
    for (label, x1, x2, hint) in locs {
        let x = lift(x1, x2);
        let on_continuum = match label {
            Label::P1 => true,
            Label::P2 | Label::P3 => continuum.contains(&ContinuumFeature::MeridianX1Zero),
            _ => false,
        };
        let (kind, index, hessian_eigs) = if on_continuum {
            let h = cubic.tangential_hessian(&x);
            (Kind::DegenerateSaddle, 0, h)
        } else {
            let c = classify_point(&cubic, &x)?;
            (c.kind, c.index, c.hessian_eigs)
        };
        points.push(TraceCriticalPoint { label, x1, x2, value: p.value(&x), kind, index, hessian_eigs, multiplicity_hint: hint });
    }
    if continuum.is_empty() {
        // Poincaré–Hopf: the Northern indices add to 1
        let rest: i32 = points.iter().filter(|c| c.label != Label::P1).map(|c| c.index).sum();
        if let Some(p1) = points.iter_mut().find(|c| c.label == Label::P1) {
            p1.index = 1 - rest;
        }
    }
    Ok(TraceReport { params: *p, mu: p.mu(), points, continuum })
}

/// Closed-form critical values; absent labels are not critical.
pub fn trace_critical_values(p: &TraceParams) -> Result<Vec<(Label, f64)>> {
    check(p)?;
    let v23 = |a3: f64| 2.0 * a3 / (3.0 * 3f64.sqrt());
    let out = match p.mu() {
        None => vec![(Label::P2, v23(p.a3)), (Label::P3, v23(p.a3))],
        Some(mu) => {
            let mut v = vec![(Label::P1, 0.0), (Label::P2, p.a2 * v23(mu)), (Label::P3, p.a2 * v23(mu))];
            if mu == 0.0 || (mu.abs() <= SQRT_2 && !at_bifurcation(mu)) {
                let v45 = p.a2 * if mu == 0.0 { 1.0 } else { mu.signum() } * 4.0 / (3.0 * 3f64.sqrt() * (4.0 - mu * mu).sqrt());
                v.push((Label::P4, v45));
                v.push((Label::P5, v45));
            }
            v
        }
    };
    Ok(out)
}

/// Kind and index per label.
pub fn trace_classify(p: &TraceParams) -> Result<Vec<(Label, Kind, i32)>> {
    Ok(trace_critical_points(p)?.points.into_iter().map(|c| (c.label, c.kind, c.index)).collect())
}

/// Full coefficient set α0, α_i, β_i and trace coefficients A_i.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymFullPotentialParams {
    pub alpha0: f64,
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
    #[serde(rename = "A")]
    pub a: [f64; 3],
}

impl SymFullPotentialParams {
    pub fn to_sym(&self) -> SymTensor3 {
        SymTensor3 {
            alpha0: self.alpha0,
            alpha: self.alpha,
            beta: self.beta,
            gamma: [0, 1, 2].map(|i| self.a[i] / 3.0 - (self.alpha[i] + self.beta[i])),
        }
    }

    pub fn from_sym(s: &SymTensor3) -> Self {
        SymFullPotentialParams { alpha0: s.alpha0, alpha: s.alpha, beta: s.beta, a: s.trace_coefficients() }
    }

    pub fn value(&self, x: &Vec3) -> f64 {
        eval_potential(&self.to_sym(), x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum TetraMode {
    /// First order in ε about Φ_T, all four free perturbations.
    Perturbative { eps: f64, d_alpha1: f64, d_alpha2: f64, d_alpha3: f64, d_beta3: f64 },
    /// First order, keeping α1 = β1 = β2 = 0.
    Oriented { eps: f64, d_alpha2: f64, d_alpha3: f64, d_beta3: f64 },
    /// Exact criticality at the four vertices.
    FourStars { alpha2: f64, alpha3: f64, beta1: f64, beta3: f64 },
    /// Exact criticality with p2–p4 on one level set.
    Nonperturbative { alpha2: f64, alpha3: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetraHessian {
    pub p1: [f64; 2],
    pub p2_p4: [f64; 2],
    pub value_p1: f64,
    pub value_p2_p4: f64,
    /// All Hessian eigenvalues negative: α2 > 0 and α3 > −α2/√2.
    pub all_maxima: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetraConstrained {
    pub params: SymFullPotentialParams,
    pub hessian: Option<TetraHessian>,
}

/// Vertices p1–p4 of the oriented tetrahedron.
pub fn tetra_vertices() -> [Vec3; 4] {
    let r = ROOT_TWO_THIRDS;
    [[0.0, 0.0, 1.0], [0.0, 2.0 * SQRT_2 / 3.0, -1.0 / 3.0], [-r, -SQRT_2 / 3.0, -1.0 / 3.0], [r, -SQRT_2 / 3.0, -1.0 / 3.0]]
}

pub fn tetra_constraints(mode: &TetraMode) -> TetraConstrained {
    let s2 = SQRT_2;
    match *mode {
        TetraMode::Perturbative { eps, d_alpha1, d_alpha2, d_alpha3, d_beta3 } => {
            let params = SymFullPotentialParams {
                alpha0: eps * s2 / 3.0 * d_alpha1,
                alpha: [eps * d_alpha1, 1.0 / s2 + eps * d_alpha2, 1.0 + eps * d_alpha3],
                beta: [eps * d_alpha1 / 3.0, 0.0, -0.5 + eps * d_beta3],
                a: [
                    eps * 4.0 * d_alpha1,
                    eps * (2.0 * d_alpha2 + d_alpha3 / s2 + 3.0 * s2 * d_beta3),
                    eps * (-s2 * d_alpha2 + 2.5 * d_alpha3 + 3.0 * d_beta3),
                ],
            };
            TetraConstrained { params, hessian: None }
        }
        TetraMode::Oriented { eps, d_alpha2, d_alpha3, d_beta3 } => {
            tetra_constraints(&TetraMode::Perturbative { eps, d_alpha1: 0.0, d_alpha2, d_alpha3, d_beta3 })
        }
        TetraMode::FourStars { alpha2, alpha3, beta1, beta3 } => {
            let params = SymFullPotentialParams {
                alpha0: s2 * beta1,
                alpha: [3.0 * beta1, alpha2, alpha3],
                beta: [beta1, 0.0, beta3],
                a: [
                    12.0 * beta1,
                    2.0 * alpha2 + alpha3 / s2 + 3.0 * s2 * beta3,
                    // 3β3, as in the first-order relations; 3√2β3 leaves the vertices non-critical
                    -s2 * alpha2 + 2.5 * alpha3 + 3.0 * beta3,
                ],
            };
            TetraConstrained { params, hessian: None }
        }
        TetraMode::Nonperturbative { alpha2, alpha3 } => {
            let beta3 = -(2.0 * s2 * alpha2 + alpha3) / 6.0;
            let mut c = tetra_constraints(&TetraMode::FourStars { alpha2, alpha3, beta1: 0.0, beta3 });
            let l1 = -2.0 * (s2 * alpha2 + 2.0 * alpha3);
            c.hessian = Some(TetraHessian {
                p1: [l1, l1],
                p2_p4: [-6.0 * s2 * alpha2, -2.0 / 3.0 * (5.0 * s2 * alpha2 + 4.0 * alpha3)],
                value_p1: alpha3,
                value_p2_p4: (8.0 * s2 * alpha2 + alpha3) / 9.0,
                all_maxima: alpha2 > 0.0 && alpha3 > -alpha2 / s2,
            });
            c
        }
    }
}

/// δβ3 that puts p2–p4 on one level at first order in ε.
pub fn level_degenerate_d_beta3(d_alpha2: f64, d_alpha3: f64) -> f64 {
    -(2.0 * SQRT_2 * d_alpha2 + d_alpha3) / 6.0
}

/// The level-degenerate family in closed form.
pub fn psi_three_plus_one(alpha2: f64, alpha3: f64, x: &Vec3) -> f64 {
    let [x1, x2, x3] = *x;
    0.5 * alpha3 * x3 * (2.0 * x3 * x3 - x1 * x1 - x2 * x2)
        - alpha2 * ((3.0 * x2 + SQRT_2 * x3) * x1 * x1 + x2 * x2 * (SQRT_2 * x3 - x2))
}

/// The subgroup of T_d fixing the North pole.
pub fn pole_stabilizer() -> [Mat3; 6] {
    let h = 3f64.sqrt() / 2.0;
    [
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        [[-0.5, h, 0.0], [-h, -0.5, 0.0], [0.0, 0.0, 1.0]],
        [[-0.5, -h, 0.0], [h, -0.5, 0.0], [0.0, 0.0, 1.0]],
        [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        [[0.5, -h, 0.0], [-h, -0.5, 0.0], [0.0, 0.0, 1.0]],
        [[0.5, h, 0.0], [h, -0.5, 0.0], [0.0, 0.0, 1.0]],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    fn index_of(r: &TraceReport, l: Label) -> Option<i32> {
        r.points.iter().find(|c| c.label == l).map(|c| c.index)
    }

    #[test]
    fn table_two() {
        // (μ, p2, p3, p4/p5)
        let rows = [(-2.0, 1, 1, None), (-1.0, -1, 1, Some(1)), (-0.5, -1, 1, Some(1)), (0.5, 1, -1, Some(1)), (1.0, 1, -1, Some(1)), (2.0, 1, 1, None)];
        for (mu, i2, i3, i45) in rows {
            let r = trace_critical_points(&TraceParams::from_mu(1.0, mu).unwrap()).unwrap();
            assert_eq!(index_of(&r, Label::P2), Some(i2), "mu {mu}");
            assert_eq!(index_of(&r, Label::P3), Some(i3), "mu {mu}");
            assert_eq!(index_of(&r, Label::P4), i45, "mu {mu}");
            assert_eq!(index_of(&r, Label::P5), i45, "mu {mu}");
            assert_eq!(index_of(&r, Label::P1), Some(-1));
        }
    }

    #[test]
    fn p2_is_a_maximum_for_positive_mu() {
        let r = trace_critical_points(&TraceParams::from_mu(1.0, 1.0).unwrap()).unwrap();
        let kind = |l| r.points.iter().find(|c| c.label == l).unwrap().kind;
        assert_eq!(kind(Label::P2), Kind::Maximum);
        assert_eq!(kind(Label::P3), Kind::Saddle);
        assert_eq!(kind(Label::P4), Kind::Maximum);
    }

    #[test]
    fn values_match_closed_form() {
        for mu in [-1.3, -0.4, 0.7, 1.0, 1.9] {
            let p = TraceParams::from_mu(0.8, mu).unwrap();
            let r = trace_critical_points(&p).unwrap();
            for (l, v) in trace_critical_values(&p).unwrap() {
                let c = r.points.iter().find(|c| c.label == l).unwrap();
                assert!((c.value - v).abs() < 1e-12, "{l:?} mu {mu}");
            }
        }
    }

    #[test]
    fn ellipse() {
        for mu in [-1.4, -0.3, 0.2, 1.1] {
            for (x1, x2) in p4_p5(mu).unwrap() {
                assert!((0.75 * x1 * x1 + 1.5 * x2 * x2 - 1.0).abs() < 1e-14);
                assert_eq!(x2.signum(), mu.signum());
            }
            assert!((mu_of_xi(xi_of_mu(mu).unwrap()) - mu).abs() < 1e-12);
        }
    }

    #[test]
    fn pole_stabilizer_leaves_psi_invariant() {
        let g = pole_stabilizer();
        for x in linalg::fibonacci_sphere(50) {
            let v = psi_three_plus_one(0.7, -0.2, &x);
            for m in &g {
                assert!((psi_three_plus_one(0.7, -0.2, &linalg::mat_vec(m, &x)) - v).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn nonperturbative_vertices_are_critical() {
        for (a2, a3) in [(1.0, 0.0), (0.3, 0.9), (1.0, SQRT_2)] {
            let c = tetra_constraints(&TetraMode::Nonperturbative { alpha2: a2, alpha3: a3 });
            let cubic = Cubic::new(&c.params.to_sym());
            for v in tetra_vertices() {
                assert!(cubic.residual(&v) < 1e-13);
                assert!((c.params.value(&v) - psi_three_plus_one(a2, a3, &v)).abs() < 1e-13);
            }
        }
    }

    fn chart_hessian(p: &TraceParams, x1: f64, x2: f64) -> (f64, f64) {
        let h = 1e-4;
        let f = |a: f64, b: f64| p.chart_value(a, b);
        let hxx = (f(x1 + h, x2) - 2.0 * f(x1, x2) + f(x1 - h, x2)) / (h * h);
        let hyy = (f(x1, x2 + h) - 2.0 * f(x1, x2) + f(x1, x2 - h)) / (h * h);
        let hxy = (f(x1 + h, x2 + h) - f(x1 + h, x2 - h) - f(x1 - h, x2 + h) + f(x1 - h, x2 - h)) / (4.0 * h * h);
        (hxx + hyy, hxx * hyy - hxy * hxy)
    }

    #[test]
    fn p45_trace_and_determinant() {
        for mu in [-1.2, -0.7, 0.6, 1.0, 1.3] {
            let p = TraceParams::from_mu(1.0, mu).unwrap();
            let [(x1, x2), _] = p4_p5(mu).unwrap();
            let (tr, det) = chart_hessian(&p, x1, x2);
            let (ftr, fdet) = p45_trace_det(xi_of_mu(mu).unwrap());
            assert!((tr - ftr).abs() < 1e-3 * ftr.abs().max(1.0), "mu {mu}: {tr} vs {ftr}");
            assert!((det - fdet).abs() < 1e-3 * fdet.abs().max(1.0), "mu {mu}: {det} vs {fdet}");
        }
    }

    #[test]
    fn tetra_hessian_closed_forms() {
        for (a2, a3) in [(1.0, 0.0), (0.3, 0.9), (0.5, -0.3)] {
            let c = tetra_constraints(&TetraMode::Nonperturbative { alpha2: a2, alpha3: a3 });
            let h = c.hessian.unwrap();
            let cubic = Cubic::new(&c.params.to_sym());
            let v = tetra_vertices();
            let sorted = |mut e: [f64; 2]| {
                e.sort_by(|a, b| a.partial_cmp(b).unwrap());
                e
            };
            let got = sorted(cubic.tangential_hessian(&v[0]));
            assert!((got[0] - h.p1[0]).abs() < 1e-12 && (got[1] - h.p1[1]).abs() < 1e-12);
            let want = sorted(h.p2_p4);
            for x in &v[1..] {
                let got = sorted(cubic.tangential_hessian(x));
                assert!((got[0] - want[0]).abs() < 1e-12 && (got[1] - want[1]).abs() < 1e-12);
                assert!((cubic.value(x) - h.value_p2_p4).abs() < 1e-13);
            }
            assert!((cubic.value(&v[0]) - h.value_p1).abs() < 1e-13);
        }
    }

    #[test]
    fn first_order_level_degeneracy() {
        let (da2, da3, eps) = (-0.3, 0.5, 1e-3);
        let db3 = level_degenerate_d_beta3(da2, da3);
        let c = tetra_constraints(&TetraMode::Oriented { eps, d_alpha2: da2, d_alpha3: da3, d_beta3: db3 });
        let cubic = Cubic::new(&c.params.to_sym());
        let v = tetra_vertices();
        let want = 1.0 + eps * (8.0 * SQRT_2 * da2 + da3) / 9.0;
        for x in &v[1..] {
            assert!((cubic.value(x) - want).abs() < 10.0 * eps * eps);
        }
        assert!((cubic.value(&v[0]) - (1.0 + eps * da3)).abs() < 1e-14);
    }
}
