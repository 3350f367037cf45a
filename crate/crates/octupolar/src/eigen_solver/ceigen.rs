//! C-eigenpairs A y y = λ x, x·A y = λ y of tensors with A_ijk = A_ikj,
//! and the incremental rank-one approximation built on them.

use nalgebra::{DMatrix, DVector, Matrix3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Vec3};
use crate::tensor_core::Tensor3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CEigenTriple {
    pub lambda: f64,
    pub x: Vec3,
    pub y: Vec3,
}

/// Φ_C(x, y) = A_ijk x_i y_j y_k.
pub fn curie_potential(t: &Tensor3, x: &Vec3, y: &Vec3) -> f64 {
    linalg::dot(x, &t.contract_last_two(y))
}

fn check(t: &Tensor3) -> Result<()> {
    let tol = 1e-10 * t.max_abs().max(1.0);
    if !t.is_last_two_symmetric(tol) {
        return Err(Error::validation("tensor is not symmetric in its last two indices"));
    }
    Ok(())
}

fn top_eigenvector(m: &linalg::Mat3) -> Vec3 {
    let mat = Matrix3::from_fn(|i, j| 0.5 * (m[i][j] + m[j][i]));
    let eig = mat.symmetric_eigen();
    let mut best = 0;
    for i in 1..3 {
        if eig.eigenvalues[i] > eig.eigenvalues[best] {
            best = i;
        }
    }
    let v = eig.eigenvectors.column(best);
    [v[0], v[1], v[2]]
}

/// max of the two equation residuals, ∞-norm.
pub(crate) fn residual(t: &Tensor3, x: &Vec3, y: &Vec3, lambda: f64) -> f64 {
    let r1 = linalg::sub(&t.contract_last_two(y), &linalg::scale(x, lambda));
    let m = t.contract_first(x);
    let r2 = linalg::sub(&linalg::mat_vec(&m, y), &linalg::scale(y, lambda));
    linalg::max_abs(&r1).max(linalg::max_abs(&r2))
}

/// Alternating maximization of Φ_C from a starting y.
fn alternate(t: &Tensor3, y0: &Vec3) -> (Vec3, Vec3) {
    let mut y = *y0;
    let mut x = [0.0, 0.0, 1.0];
    let mut last = f64::NEG_INFINITY;
    for _ in 0..2000 {
        let v = t.contract_last_two(&y);
        if linalg::norm(&v) > 1e-300 {
            x = linalg::normalize(&v);
        }
        y = top_eigenvector(&t.contract_first(&x));
        let val = curie_potential(t, &x, &y);
        if (val - last).abs() <= 1e-15 * val.abs().max(1e-300) {
            break;
        }
        last = val;
    }
    (x, y)
}

/// Gauss–Newton on the 8 equations in (x, y, λ).
fn newton(t: &Tensor3, x0: &Vec3, y0: &Vec3) -> (Vec3, Vec3, f64) {
    let mut x = linalg::normalize(x0);
    let mut y = linalg::normalize(y0);
    let mut lam = curie_potential(t, &x, &y);
    let eval = |x: &Vec3, y: &Vec3, lam: f64| -> DVector<f64> {
        let r1 = linalg::sub(&t.contract_last_two(y), &linalg::scale(x, lam));
        let m = t.contract_first(x);
        let r2 = linalg::sub(&linalg::mat_vec(&m, y), &linalg::scale(y, lam));
        DVector::from_vec(vec![
            r1[0],
            r1[1],
            r1[2],
            r2[0],
            r2[1],
            r2[2],
            0.5 * (1.0 - linalg::dot(x, x)),
            0.5 * (1.0 - linalg::dot(y, y)),
        ])
    };
    let mut f = eval(&x, &y, lam);
    for _ in 0..50 {
        let fnorm = f.amax();
        if fnorm < 1e-15 * t.max_abs().max(1.0) {
            break;
        }
        let m = t.contract_first(&x);
        // n_im = A_ijm y_j
        let mut n = [[0.0; 3]; 3];
        for (i, row) in n.iter_mut().enumerate() {
            for (mm, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|j| t.get(i, j, mm) * y[j]).sum();
            }
        }
        let mut jac = DMatrix::<f64>::zeros(8, 7);
        for i in 0..3 {
            jac[(i, i)] = -lam;
            for c in 0..3 {
                jac[(i, 3 + c)] = 2.0 * n[i][c];
                jac[(3 + i, c)] = n[c][i];
                jac[(3 + i, 3 + c)] = m[i][c] - if i == c { lam } else { 0.0 };
            }
            jac[(i, 6)] = -x[i];
            jac[(3 + i, 6)] = -y[i];
            jac[(6, i)] = -x[i];
            jac[(7, 3 + i)] = -y[i];
        }
        let step = match jac.svd(true, true).solve(&(-&f), 1e-14) {
            Ok(s) => s,
            Err(_) => break,
        };
        let mut tstep = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let xn = [x[0] + tstep * step[0], x[1] + tstep * step[1], x[2] + tstep * step[2]];
            let yn = [y[0] + tstep * step[3], y[1] + tstep * step[4], y[2] + tstep * step[5]];
            let ln = lam + tstep * step[6];
            let fnew = eval(&xn, &yn, ln);
            if fnew.amax() < fnorm {
                x = xn;
                y = yn;
                lam = ln;
                f = fnew;
                improved = true;
                break;
            }
            tstep *= 0.5;
        }
        if !improved {
            break;
        }
    }
    let x = linalg::normalize(&x);
    let y = linalg::normalize(&y);
    (x, y, curie_potential(t, &x, &y))
}

/// Representative of the sign family {(λ,x,±y), (−λ,−x,±y)}: λ ≥ 0, y canonical.
fn canonical(x: Vec3, y: Vec3, lambda: f64) -> CEigenTriple {
    let y = linalg::scale(&y, linalg::canonical_sign(&y));
    let (mut x, mut lambda) = (x, lambda);
    if lambda < 0.0 || (lambda.abs() < 1e-14 && linalg::canonical_sign(&x) < 0.0) {
        x = linalg::neg(&x);
        lambda = -lambda;
    }
    CEigenTriple { lambda, x, y }
}

/// Multi-start search for C-eigenpair classes, sorted by λ descending then x.
pub fn c_eigenpairs(t: &Tensor3, starts: usize) -> Result<Vec<CEigenTriple>> {
    check(t)?;
    if starts == 0 {
        return Err(Error::validation("starts must be at least 1"));
    }
    let scale = t.max_abs();
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let seeds = linalg::fibonacci_sphere(starts);
    let tol = 1e-10 * scale.max(1.0);
    let found: Vec<Vec<CEigenTriple>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, y0)| {
            let mut local = Vec::new();
            let (x, y) = alternate(t, y0);
            let (x, y, l) = newton(t, &x, &y);
            if residual(t, &x, &y, l) <= tol {
                local.push(canonical(x, y, l));
            }
            // a raw Newton start also reaches saddle-type pairs
            let x0 = seeds[(7 * i + 3) % seeds.len()];
            let (x, y, l) = newton(t, &x0, y0);
            if residual(t, &x, &y, l) <= tol {
                local.push(canonical(x, y, l));
            }
            local
        })
        .collect();
    let mut out: Vec<CEigenTriple> = Vec::new();
    for c in found.into_iter().flatten() {
        let dup = out.iter().any(|o| {
            (o.lambda - c.lambda).abs() <= 1e-8 * scale
                && linalg::angle(&o.x, &c.x) < 1e-6
                && linalg::angle(&o.y, &c.y) < 1e-6
        });
        if !dup {
            out.push(c);
        }
    }
    out.sort_by(|a, b| {
        b.lambda
            .partial_cmp(&a.lambda)
            .unwrap()
            .then(a.x.partial_cmp(&b.x).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(out)
}

/// Largest C-eigenvalue with its vectors: the best rank-one term λ x⊗y⊗y.
pub fn best_rank_one(t: &Tensor3) -> Result<CEigenTriple> {
    let all = c_eigenpairs(t, 64)?;
    Ok(all.into_iter().next().unwrap_or(CEigenTriple { lambda: 0.0, x: [1.0, 0.0, 0.0], y: [1.0, 0.0, 0.0] }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankOneTerm {
    pub lambda: f64,
    pub x: Vec3,
    pub y: Vec3,
    /// Frobenius norm of what remains after subtracting this and all earlier terms.
    pub residual_norm: f64,
}

/// Repeated deflation by the best rank-one term. Stops after `max_terms`
/// or once the remaining norm falls below `rel_tol` times the input norm.
pub fn incremental_rank_one(t: &Tensor3, max_terms: usize, rel_tol: f64) -> Result<Vec<RankOneTerm>> {
    check(t)?;
    let total = t.norm();
    let mut rest = t.clone();
    let mut out = Vec::new();
    for _ in 0..max_terms {
        if rest.norm() <= rel_tol * total.max(1e-300) {
            break;
        }
        let b = best_rank_one(&rest)?;
        if b.lambda <= 0.0 {
            break;
        }
        let term = &Tensor3::outer(&b.x, &b.y, &b.y) * b.lambda;
        rest = &rest - &term;
        // keep the residual exactly symmetric in the last two slots
        rest = &(&rest + &rest.permuted([0, 2, 1])) * 0.5;
        out.push(RankOneTerm { lambda: b.lambda, x: b.x, y: b.y, residual_norm: rest.norm() });
    }
    Ok(out)
}
