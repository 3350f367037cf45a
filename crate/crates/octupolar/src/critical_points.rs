//! Classification of critical points of Φ on the unit sphere, Poincaré–Hopf
//! bookkeeping and an independent multi-start oracle.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen_solver::{solve_oriented, EigenSolution, Eigenpair};
use crate::error::{Error, Result};
use crate::linalg::{self, Vec3};
use crate::potential::{oriented_tensor, CubicForm, Cubic, OrientedParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Maximum,
    Minimum,
    Saddle,
    DegenerateSaddle,
    MonkeySaddle,
}

impl Kind {
    pub fn is_saddle(self) -> bool {
        matches!(self, Kind::Saddle | Kind::DegenerateSaddle | Kind::MonkeySaddle)
    }

    fn flipped(self) -> Kind {
        match self {
            Kind::Maximum => Kind::Minimum,
            Kind::Minimum => Kind::Maximum,
            k => k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub x: Vec3,
    pub lambda: f64,
    pub kind: Kind,
    pub index: i32,
    pub hessian_eigs: [f64; 2],
}

impl CriticalPoint {
    /// The antipodal point: λ and the Hessian change sign, the index does not.
    pub fn antipode(&self) -> CriticalPoint {
        CriticalPoint {
            x: linalg::neg(&self.x),
            lambda: -self.lambda,
            kind: self.kind.flipped(),
            index: self.index,
            hessian_eigs: [-self.hessian_eigs[1], -self.hessian_eigs[0]],
        }
    }
}

/// Relative size below which a tangential Hessian eigenvalue counts as zero.
pub const DEGENERACY_TOL: f64 = 1e-7;
const WINDING_RADIUS: f64 = 1e-3;
const WINDING_SAMPLES: usize = 720;

fn tangent_basis(x: &Vec3) -> (Vec3, Vec3) {
    let u = linalg::orthogonal_completion(x);
    let w = linalg::cross(x, &u);
    (u, w)
}

/// Eigenvalues (ascending) of P(6 A x − 3λ I)P on the tangent plane.
pub fn tangential_hessian(cubic: &Cubic, x: &Vec3) -> [f64; 2] {
    cubic.tangential_hessian(x)
}

/// Winding number of the surface gradient around a small circle centred at x.
pub fn winding_index(cubic: &Cubic, x: &Vec3, radius: f64, samples: usize) -> i32 {
    let (u, w) = tangent_basis(x);
    let (sr, cr) = radius.sin_cos();
    let mut total = 0.0;
    let mut prev: Option<f64> = None;
    for i in 0..=samples {
        let th = 2.0 * std::f64::consts::PI * (i % samples) as f64 / samples as f64;
        let d = linalg::add(&linalg::scale(&u, th.cos()), &linalg::scale(&w, th.sin()));
        let p = linalg::add(&linalg::scale(x, cr), &linalg::scale(&d, sr));
        let g = cubic.surface_gradient(&p);
        let ang = linalg::dot(&g, &w).atan2(linalg::dot(&g, &u));
        if let Some(a) = prev {
            {
                let mut da = ang - a;
                while da > std::f64::consts::PI {
                    da -= 2.0 * std::f64::consts::PI;
                }
                while da < -std::f64::consts::PI {
                    da += 2.0 * std::f64::consts::PI;
                }
                total += da;
            }
        }
        prev = Some(ang);
    }
    (total / (2.0 * std::f64::consts::PI)).round() as i32
}

/// Classifies the critical point at unit vector x.
pub fn classify_point(cubic: &Cubic, x: &Vec3) -> Result<CriticalPoint> {
    let x = linalg::normalize(x);
    let tol = 1e-9 * cubic.scale().max(1.0);
    let res = cubic.residual(&x);
    if res > tol {
        return Err(Error::validation(format!("not a critical point: residual {res:e}")));
    }
    let lambda = cubic.value(&x);
    let eigs = tangential_hessian(cubic, &x);
    let big = eigs[0].abs().max(eigs[1].abs()).max(cubic.scale());
    let zero = |e: f64| e.abs() <= DEGENERACY_TOL * big;
    let (kind, index) = if !zero(eigs[0]) && !zero(eigs[1]) {
        if eigs[1] < 0.0 {
            (Kind::Maximum, 1)
        } else if eigs[0] > 0.0 {
            (Kind::Minimum, 1)
        } else {
            (Kind::Saddle, -1)
        }
    } else {
        let index = winding_index(cubic, &x, WINDING_RADIUS, WINDING_SAMPLES);
        let kind = if index == 1 {
            extremum_kind(cubic, &x, lambda)
        } else if index == -2 && zero(eigs[0]) && zero(eigs[1]) {
            Kind::MonkeySaddle
        } else {
            Kind::DegenerateSaddle
        };
        (kind, index)
    };
    Ok(CriticalPoint { x, lambda, kind, index, hessian_eigs: eigs })
}

/// A degenerate point of index +1: compare Φ on a small circle against λ.
fn extremum_kind(cubic: &Cubic, x: &Vec3, lambda: f64) -> Kind {
    let (u, w) = tangent_basis(x);
    let (sr, cr) = WINDING_RADIUS.sin_cos();
    let (mut above, mut below) = (0, 0);
    for i in 0..72 {
        let th = 2.0 * std::f64::consts::PI * i as f64 / 72.0;
        let d = linalg::add(&linalg::scale(&u, th.cos()), &linalg::scale(&w, th.sin()));
        let p = linalg::add(&linalg::scale(x, cr), &linalg::scale(&d, sr));
        if cubic.value(&p) > lambda {
            above += 1;
        } else {
            below += 1;
        }
    }
    if above == 0 {
        Kind::Maximum
    } else if below == 0 {
        Kind::Minimum
    } else {
        Kind::DegenerateSaddle
    }
}

pub fn classify<T: CubicForm + ?Sized>(t: &T, pair: &Eigenpair) -> Result<CriticalPoint> {
    classify_point(&Cubic::new(t), &pair.x)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindCounts {
    pub maxima: usize,
    pub minima: usize,
    pub saddles: usize,
    pub degenerate_saddles: usize,
    pub monkey_saddles: usize,
}

impl KindCounts {
    pub fn of(points: &[CriticalPoint]) -> KindCounts {
        let mut c = KindCounts::default();
        for p in points {
            match p.kind {
                Kind::Maximum => c.maxima += 1,
                Kind::Minimum => c.minima += 1,
                Kind::Saddle => c.saddles += 1,
                Kind::DegenerateSaddle => c.degenerate_saddles += 1,
                Kind::MonkeySaddle => c.monkey_saddles += 1,
            }
        }
        c
    }

    pub fn all_saddles(&self) -> usize {
        self.saddles + self.degenerate_saddles + self.monkey_saddles
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub params: OrientedParams,
    pub points: Vec<CriticalPoint>,
    pub index_sum: i32,
    pub counts: KindCounts,
    pub continuum: bool,
}

impl TopologyReport {
    pub fn total(&self) -> usize {
        self.points.len()
    }

    /// Points with index 0.
    pub fn index_zero(&self) -> usize {
        self.points.iter().filter(|p| p.index == 0).count()
    }

    pub fn with_index(&self, i: i32) -> usize {
        self.points.iter().filter(|p| p.index == i).count()
    }
}

/// Classifies every stored eigenpair and its antipode.
pub fn topology_of(sol: &EigenSolution) -> Result<TopologyReport> {
    let cubic = Cubic::new(&oriented_tensor(&sol.params));
    let mut points = Vec::with_capacity(2 * sol.pairs.len());
    for pair in &sol.pairs {
        let cp = classify_point(&cubic, &pair.x)?;
        points.push(cp.clone());
        points.push(cp.antipode());
    }
    let index_sum = points.iter().map(|p| p.index).sum();
    let counts = KindCounts::of(&points);
    Ok(TopologyReport { params: sol.params, points, index_sum, counts, continuum: sol.continuum })
}

pub fn full_topology(p: &OrientedParams) -> Result<TopologyReport> {
    topology_of(&solve_oriented(p)?)
}

/// Oracle output: all critical points found, with a flag when more distinct
/// points turned up than any isolated configuration allows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub points: Vec<CriticalPoint>,
    pub continuum: bool,
}

/// Critical points from Fibonacci seeds: Newton from every seed, plus
/// gradient ascent and descent from the first few thousand.
pub fn oracle_critical_points<T: CubicForm + ?Sized>(t: &T, samples: usize) -> Result<OracleResult> {
    if samples < 1000 {
        return Err(Error::validation("oracle needs at least 1000 samples"));
    }
    let cubic = Cubic::new(t);
    if cubic.scale() == 0.0 {
        return Err(Error::validation("zero tensor has no isolated critical points"));
    }
    let seeds = linalg::fibonacci_sphere(samples);
    let tol = 1e-9 * cubic.scale().max(1.0);
    let flow_count = samples.min(2000);
    let found: Vec<Vec<Vec3>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let mut local = Vec::new();
            let mut starts = vec![*s];
            if i < flow_count {
                starts.push(cubic.flow(s, 1.0, 400));
                starts.push(cubic.flow(s, -1.0, 400));
            }
            for st in starts {
                let p = cubic.polish(&st, 50);
                if p.residual <= tol {
                    local.push(p.x);
                }
            }
            local
        })
        .collect();
    let mut pts: Vec<Vec3> = Vec::new();
    for x in found.into_iter().flatten() {
        for y in [x, linalg::neg(&x)] {
            if !pts.iter().any(|p| linalg::angle(p, &y) < 1e-6) {
                pts.push(y);
            }
        }
    }
    let continuum = pts.len() > 14;
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let points = pts.iter().map(|x| classify_point(&cubic, x)).collect::<Result<Vec<_>>>()?;
    Ok(OracleResult { points, continuum })
}

/// Largest angular distance from a point of one set to the nearest point of the other.
pub fn hausdorff_angle(a: &[Vec3], b: &[Vec3]) -> f64 {
    let one_way = |a: &[Vec3], b: &[Vec3]| {
        a.iter()
            .map(|x| b.iter().map(|y| linalg::angle(x, y)).fold(f64::INFINITY, f64::min))
            .fold(0.0f64, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3};

    fn topo(rho: f64, chi: f64, k: f64) -> TopologyReport {
        full_topology(&OrientedParams::new(rho, chi, k).unwrap()).unwrap()
    }

    #[test]
    fn north_pole_is_maximum() {
        let p = OrientedParams::new(0.5, -FRAC_PI_3, 0.0).unwrap();
        let cubic = Cubic::new(&oriented_tensor(&p));
        let cp = classify_point(&cubic, &[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(cp.kind, Kind::Maximum);
        assert_eq!(cp.index, 1);
    }

    #[test]
    fn tetrahedral_counts() {
        let r = topo(0.0, -FRAC_PI_2, FRAC_1_SQRT_2);
        assert_eq!(r.total(), 14);
        assert_eq!((r.counts.maxima, r.counts.minima, r.counts.saddles), (4, 4, 6));
        assert_eq!(r.index_sum, 2);
    }

    #[test]
    fn disk_monkey_saddles() {
        let r = topo(1.0, -FRAC_PI_2, 0.0);
        assert_eq!(r.total(), 8);
        assert_eq!((r.counts.maxima, r.counts.minima), (3, 3));
        assert_eq!(r.with_index(-2), 2);
        assert_eq!(r.index_sum, 2);
    }

    #[test]
    fn non_critical_rejected() {
        let p = OrientedParams::new(0.5, -FRAC_PI_3, 0.2).unwrap();
        let cubic = Cubic::new(&oriented_tensor(&p));
        assert!(classify_point(&cubic, &[1.0, 1.0, 1.0]).is_err());
    }
}
