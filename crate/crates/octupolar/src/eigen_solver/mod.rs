//! Real generalized eigenpairs A x² = λ x of oriented octupolar tensors,
//! plus C-eigenpairs of tensors symmetric in their last two indices.

mod ceigen;
mod roots;
mod walcher;

pub use ceigen::{best_rank_one, c_eigenpairs, curie_potential, incremental_rank_one, CEigenTriple, RankOneTerm};
pub use roots::{real_roots, real_roots_with, RootOptions};
pub use walcher::{kappa, reduced_system, spurious_roots, walcher_coefficients, ReducedSystem, WalcherPoly};

use serde::{Deserialize, Serialize};

use crate::critical_points::DEGENERACY_TOL;
use crate::error::{Error, Result};
use crate::linalg::{self, Vec3};
use crate::potential::{oriented_tensor, Cubic, OrientedParams};

/// Where an eigenpair came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Pole,
    /// On the great circle x2 = 0, away from the poles.
    Background,
    /// A root of W with t = N/D.
    Walcher,
    /// ρ = 0: s ∈ {0, ±√3}, t from a quadratic.
    Axis,
    /// K = 0 with t left free by the reduced system.
    Disk,
    /// χ = −π/2: s = 0, t from a quadratic.
    ChiMinusHalfPi,
    /// χ = −π/6: s = −√3 makes both N and D vanish.
    ChiMinusSixthPi,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenpair {
    pub lambda: f64,
    pub x: Vec3,
    pub branch: Branch,
    pub multiplicity_hint: usize,
}

/// All stored eigenpairs; the conjugates (−λ, −x) are implied.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenSolution {
    pub params: OrientedParams,
    pub pairs: Vec<Eigenpair>,
    pub continuum: bool,
}

impl EigenSolution {
    pub fn critical_point_total(&self) -> usize {
        2 * self.pairs.len()
    }

    /// Number of distinct values among ±λ over all stored pairs.
    pub fn distinct_eigenvalues(&self) -> usize {
        let mut vals: Vec<f64> = self.pairs.iter().flat_map(|p| [p.lambda, -p.lambda]).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
        vals.len()
    }

    pub fn report(&self) -> EigenReport {
        EigenReport {
            params: self.params,
            pairs: self.pairs.clone(),
            critical_point_total: self.critical_point_total(),
            distinct_eigenvalues: self.distinct_eigenvalues(),
            continuum: self.continuum,
        }
    }
}

/// JSON shape of an eigen report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    pub params: OrientedParams,
    pub pairs: Vec<Eigenpair>,
    pub critical_point_total: usize,
    pub distinct_eigenvalues: usize,
    pub continuum: bool,
}

struct Candidate {
    x: Vec3,
    branch: Branch,
    mult: usize,
    /// Optional candidates are dropped when they fail to polish.
    required: bool,
}

fn from_st(s: f64, t: f64) -> Vec3 {
    linalg::normalize(&[s, 1.0, t])
}

fn special_branch(p: &OrientedParams) -> Branch {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};
    if p.rho <= 1e-12 {
        Branch::Axis
    } else if p.bigk.abs() <= 1e-12 {
        Branch::Disk
    } else if (p.chi + FRAC_PI_2).abs() <= 1e-9 || p.chi.cos().abs() <= 1e-12 {
        Branch::ChiMinusHalfPi
    } else if (p.chi + FRAC_PI_6).abs() <= 1e-9 {
        Branch::ChiMinusSixthPi
    } else {
        Branch::Walcher
    }
}

/// All real eigenpairs of the oriented tensor with parameters `p`.
///
/// The poles are always present. Points on x2 = 0 come from the background
/// analysis; all others are x ∝ (s, 1, t) with s a root of W, or an s where
/// N and D both vanish and t solves the quadratic directly.
pub fn solve_oriented(p: &OrientedParams) -> Result<EigenSolution> {
    p.validate()?;
    let cubic = Cubic::new(&oriented_tensor(p));
    let (rc, rs, k) = (p.rho_cos(), p.rho_sin(), p.bigk);
    let mut cands = vec![Candidate { x: [0.0, 0.0, 1.0], branch: Branch::Pole, mult: 1, required: true }];
    let mut continuum = false;

    if p.rho <= 1e-12 && k.abs() <= 1e-12 {
        return Ok(EigenSolution { params: *p, pairs: finish(&cubic, cands)?, continuum: true });
    }

    let w = walcher_coefficients(p);
    let wmax = w.max_abs();

    // background, x2 = 0
    if rs < 1.0 {
        let r = ((1.0 - rs) / (2.0 * (2.0 - rs))).sqrt();
        if rc.abs() > 1e-12 {
            if w.s_coeffs[6].abs() <= 1e-10 * wmax {
                let ratio = k / rc;
                cands.push(Candidate { x: linalg::normalize(&[1.0, 0.0, ratio]), branch: Branch::Background, mult: 1, required: true });
            }
        } else if k.abs() <= 1e-12 {
            for sign in [1.0, -1.0] {
                cands.push(Candidate { x: linalg::normalize(&[1.0, 0.0, sign * r]), branch: Branch::Background, mult: 1, required: true });
            }
        }
    }

    let sys = reduced_system(p);
    let d_zero = rc.abs() <= 1e-12 && rs.abs() <= 1e-12;
    let d_roots: Vec<f64> = if d_zero {
        vec![-3f64.sqrt(), 0.0, 3f64.sqrt()]
    } else {
        real_roots(&sys.d)?.into_iter().map(|(s, _)| s).collect()
    };

    // s values where t is free in the second equation
    let special = special_branch(p);
    for &s in &d_roots {
        let n = roots::eval(&sys.n, s);
        let exact = n.abs() <= 1e-9 * (1.0 + k.abs()) * (1.0 + s * s).powf(1.5);
        let q = sys.t_quadratic(s);
        let qmax = q.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if qmax <= 1e-12 {
            if exact {
                continuum = true;
            }
            continue;
        }
        for (t, m) in real_roots(&q)? {
            cands.push(Candidate { x: from_st(s, t), branch: special, mult: m, required: exact });
        }
    }

    let w_identically_zero = wmax <= 1e-11 * (1.0 + p.rho.powi(3) + k * k);
    if w_identically_zero {
        continuum = true;
    } else if !d_zero {
        let mut coeffs = w.s_coeffs.to_vec();
        if coeffs[6].abs() <= 1e-10 * wmax {
            coeffs[6] = 0.0;
        }
        let d_scale = rc.abs() + rs.abs();
        let opts = RootOptions { trailing_tol: 1e-15, ..RootOptions::default() };
        for (s, m) in real_roots_with(&coeffs, &opts)? {
            let dv = roots::eval(&sys.d, s);
            let on_d_root = dv.abs() <= 1e-8 * d_scale * (1.0 + s * s);
            // Close to a root of D the ratio N/D is ill-conditioned, and two
            // points with nearly equal s may share one root cluster. The
            // quadratic in t supplies extra candidates; polishing decides.
            let mut options: Vec<Vec3> = Vec::new();
            if let Ok(ts) = real_roots(&sys.t_quadratic(s)) {
                options.extend(ts.into_iter().map(|(t, _)| from_st(s, t)));
            }
            if on_d_root {
                // either handled above or spurious (ρ = 2)
                for x in options {
                    cands.push(Candidate { x, branch: special, mult: m, required: false });
                }
                continue;
            }
            options.insert(0, from_st(s, roots::eval(&sys.n, s) / dv));
            let well_posed = m == 1 && dv.abs() > 1e-6 * d_scale * (1.0 + s * s);
            let best = options
                .iter()
                .enumerate()
                .min_by(|a, b| cubic.residual(a.1).partial_cmp(&cubic.residual(b.1)).unwrap())
                .map(|(i, _)| i)
                .unwrap_or(0);
            for (i, x) in options.into_iter().enumerate() {
                cands.push(Candidate { x, branch: Branch::Walcher, mult: m, required: well_posed && i == best });
            }
        }
    }

    if w_identically_zero {
        cands.retain(|c| is_isolated(&sys, p, &c.x));
    }
    let pairs = finish(&cubic, cands)?;
    Ok(EigenSolution { params: *p, pairs, continuum })
}

/// With W ≡ 0 every (s, 1, N(s)/D(s)) is critical; a candidate is isolated
/// when it is not on or at the end of that curve.
fn is_isolated(sys: &ReducedSystem, p: &OrientedParams, x: &Vec3) -> bool {
    let curve = |s: f64| -> Vec3 {
        let d = roots::eval(&sys.d, s);
        linalg::normalize(&[s * d, d, roots::eval(&sys.n, s)])
    };
    let near = |y: &Vec3| linalg::angle(x, y).min(linalg::angle(x, &linalg::neg(y))) < 1e-4;
    if x[1].abs() <= 1e-9 {
        if x[0].abs() <= 1e-9 {
            return true;
        }
        let rc = p.rho_cos();
        if rc.abs() <= 1e-12 {
            return true;
        }
        return !near(&linalg::normalize(&[1.0, 0.0, p.bigk / rc]));
    }
    let s0 = x[0] / x[1];
    let h = 1e-6 * (1.0 + s0.abs());
    !(near(&curve(s0 - h)) || near(&curve(s0 + h)))
}

/// Polish, pick the canonical antipodal representative, evaluate λ and dedupe.
fn finish(cubic: &Cubic, mut cands: Vec<Candidate>) -> Result<Vec<Eigenpair>> {
    let mut out: Vec<Eigenpair> = Vec::new();
    let mut errs: Vec<(f64, f64)> = Vec::new();
    let tol = 1e-9 * cubic.scale().max(1.0);
    // stable: required candidates first, so branch tags come from them
    cands.sort_by_key(|c| !c.required);
    for c in cands {
        let raw = linalg::normalize(&c.x);
        let raw_res = cubic.residual(&raw);
        let mut x = raw;
        if raw_res > 1e-14 {
            let pol = cubic.polish(&raw, 50);
            let close = !c.required || linalg::angle(&pol.x, &raw) < 1e-3;
            if pol.residual < raw_res && close {
                x = pol.x;
            }
        }
        if cubic.residual(&x) > tol {
            if !c.required {
                continue;
            }
            return Err(Error::numerical(format!(
                "eigenpair candidate {:?} has residual {:e}",
                x,
                cubic.residual(&x)
            )));
        }
        x = linalg::scale(&x, linalg::canonical_sign(&x));
        let err = position_error(cubic, &x);
        let rad = degenerate_radius(cubic, &x);
        if let Some((e, _)) = out
            .iter_mut()
            .zip(errs.iter())
            .find(|(e, r)| {
                // the sign convention is unstable near x3 = 0, so compare with both
                let a = linalg::angle(&e.x, &x).min(linalg::angle(&e.x, &linalg::neg(&x)));
                (a < 1e-6 && a <= (1e3 * (r.0 + err)).max(1e-11)) || a < r.1.max(rad)
            })
        {
            e.multiplicity_hint = e.multiplicity_hint.max(c.mult);
            continue;
        }
        out.push(Eigenpair { lambda: cubic.value(&x), x, branch: c.branch, multiplicity_hint: c.mult });
        errs.push((err, rad));
    }
    Ok(out)
}

/// Newton-style bound on how far x may sit from the exact critical point:
/// residual over the smallest tangential Hessian eigenvalue.
fn position_error(cubic: &Cubic, x: &Vec3) -> f64 {
    let h = cubic.tangential_hessian(x);
    let sigma = h[0].abs().min(h[1].abs());
    let r = cubic.residual(x);
    if sigma <= 0.0 {
        f64::INFINITY
    } else {
        r / sigma
    }
}

/// At a degenerate point the error grows like the cube root of the
/// residual (triple roots); zero elsewhere.
fn degenerate_radius(cubic: &Cubic, x: &Vec3) -> f64 {
    let h = cubic.tangential_hessian(x);
    let scale = cubic.scale().max(1e-300);
    let big = h[0].abs().max(h[1].abs()).max(scale);
    if h[0].abs().min(h[1].abs()) > DEGENERACY_TOL * big {
        return 0.0;
    }
    (10.0 * (cubic.residual(x) / scale).cbrt()).clamp(1e-6, 1e-4)
}

/// ((r−1)^n − 1)/(r − 2): number of eigenvalue classes of a generic
/// tensor of order r in dimension n.
pub fn count_bound(r: u32, n: u32) -> Result<u64> {
    if r <= 2 {
        return Err(Error::validation("count_bound needs r > 2"));
    }
    if n < 1 {
        return Err(Error::validation("count_bound needs n ≥ 1"));
    }
    let base = (r - 1) as u64;
    let pow = base.checked_pow(n).ok_or_else(|| Error::validation("count_bound overflow"))?;
    Ok((pow - 1) / (r - 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3};

    fn solve(rho: f64, chi: f64, k: f64) -> EigenSolution {
        solve_oriented(&OrientedParams::new(rho, chi, k).unwrap()).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(count_bound(3, 3).unwrap(), 7);
        assert_eq!(count_bound(3, 2).unwrap(), 3);
        assert_eq!(count_bound(4, 3).unwrap(), 13);
        assert!(count_bound(2, 3).is_err());
    }

    #[test]
    fn axis_half() {
        let s = solve(0.0, 0.0, 0.5);
        assert_eq!(s.critical_point_total(), 14);
        assert!(!s.continuum);
    }

    #[test]
    fn tetrahedral_maxima() {
        let s = solve(0.0, -FRAC_PI_2, FRAC_1_SQRT_2);
        let maxima: Vec<Vec3> = s
            .pairs
            .iter()
            .filter_map(|e| {
                if (e.lambda - 1.0).abs() < 1e-9 {
                    Some(e.x)
                } else if (e.lambda + 1.0).abs() < 1e-9 {
                    Some(linalg::neg(&e.x))
                } else {
                    None
                }
            })
            .collect();
        assert_eq!(maxima.len(), 4);
        for i in 0..4 {
            for j in (i + 1)..4 {
                assert!((linalg::dot(&maxima[i], &maxima[j]) + 1.0 / 3.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn disk_at_rho_one() {
        let s = solve(1.0, -FRAC_PI_2, 0.0);
        assert_eq!(s.critical_point_total(), 8);
        let bg: Vec<&Eigenpair> = s.pairs.iter().filter(|e| e.branch == Branch::Background).collect();
        assert_eq!(bg.len(), 2);
        for e in bg {
            assert!((e.x[0].abs() - 3f64.sqrt() / 2.0).abs() < 1e-12);
            assert!((e.x[2].abs() - 0.5).abs() < 1e-12);
            assert!((e.lambda.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn centre_is_continuum() {
        let s = solve(0.0, -FRAC_PI_3, 0.0);
        assert!(s.continuum);
        assert_eq!(s.pairs.len(), 1);
    }

    #[test]
    fn rotated_copy_is_continuum() {
        let s = solve(2.0, -std::f64::consts::FRAC_PI_6, 1.0);
        assert!(s.continuum);
        assert!(s.pairs.iter().any(|e| e.branch == Branch::Pole));
    }

    #[test]
    fn large_k_has_seven_pairs() {
        for &(r, c) in &[(0.5, -1.2), (1.5, -0.7), (1.0, -1.0)] {
            assert_eq!(solve(r, c, 12.0).pairs.len(), 7, "{r} {c}");
        }
    }

    #[test]
    fn rho_two_loses_one_root() {
        let s = solve(2.0, -1.0, 3.0);
        assert_eq!(s.critical_point_total(), 12);
    }
}
