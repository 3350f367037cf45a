mod common;

use common::*;
use octupolar::critical_points::full_topology;
use octupolar::eigen_solver::walcher_coefficients;
use octupolar::potential::OrientedParams;
use octupolar::separatrix::{cusp_chi, find_cusp, h, k_star, region_scan, separatrix_k, separatrix_scan, SeparatrixBranch};
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

fn topo(rho: f64, chi: f64, k: f64) -> octupolar::critical_points::TopologyReport {
    full_topology(&OrientedParams::new(rho, chi, k).unwrap()).unwrap()
}

#[test]
fn on_the_vaults_two_degenerate_saddles() {
    let mut r = rng(31);
    let mut done = 0;
    while done < 10 {
        let rho = r.gen_range(0.1..1.95);
        let chi = r.gen_range(-FRAC_PI_2 + 0.05..-FRAC_PI_6 - 0.05);
        // stay away from the groin
        if (rho + 1.0 / chi.sin()).abs() < 0.05 {
            continue;
        }
        let ks = k_star(rho, chi).unwrap();
        let t = topo(rho, chi, ks.k);
        assert_eq!(t.total(), 12, "ρ={rho} χ={chi} K★={}", ks.k);
        assert_eq!(t.index_zero(), 2);
        done += 1;
    }
}

#[test]
fn on_the_groin_ten_points_none_degenerate() {
    for rho in [1.1, 1.3, 1.6, 1.9] {
        let chi = cusp_chi(rho).unwrap();
        let k = h(rho).unwrap();
        let t = topo(rho, chi, k);
        assert_eq!(t.total(), 10, "ρ={rho}");
        assert_eq!(t.index_zero(), 0);
        assert_eq!(t.index_sum, 2);

        let s = walcher_coefficients(&OrientedParams::new(rho, chi, k).unwrap()).s_coeffs;
        let scale = s.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in [0, 1, 2, 6] {
            assert!(s[i].abs() <= 1e-10 * scale, "S{i} = {}", s[i]);
        }
    }
}

#[test]
fn cusp_location_matches_the_groin() {
    for chi in [-1.2, -1.0, -0.8] {
        let (rho, k) = find_cusp(chi).unwrap();
        let rho_c = -1.0 / f64::sin(chi);
        assert!((rho - rho_c).abs() < 1e-4);
        assert!((k - h(rho_c).unwrap()).abs() < 1e-4);
    }
}

#[test]
fn k_star_is_continuous_across_the_cusp() {
    let chi = -1.1;
    let rho_c = -1.0 / f64::sin(chi);
    let left = k_star(rho_c - 1e-7, chi).unwrap();
    let right = k_star(rho_c + 1e-7, chi).unwrap();
    assert!((left.k - right.k).abs() < 1e-3);
    assert_eq!(left.branch, SeparatrixBranch::Left);
    assert_eq!(right.branch, SeparatrixBranch::Right);
}

#[test]
fn boundary_planes_use_g_and_f() {
    let a = separatrix_k(1.5, -FRAC_PI_2).unwrap();
    assert!((a.k - 0.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(a.branch, SeparatrixBranch::ChiMinusHalfPi);
    let b = separatrix_k(1.0, -FRAC_PI_6).unwrap();
    assert!((b.k - (2.0f64 * 2.0 / (3.0 * 7.0)).sqrt()).abs() < 1e-12);
}

#[test]
fn rho_two_loses_two_points() {
    for chi in [-1.4, -1.0, -0.7] {
        for k in [1.5, 3.0] {
            assert_eq!(topo(2.0, chi, k).total(), 12, "χ={chi} K={k}");
            assert_eq!(topo(1.999, chi, k).total(), 14, "χ={chi} K={k}");
        }
    }
}

#[test]
fn scans_are_deterministic_and_row_major() {
    let a = region_scan(-1.0, 8, 2.0, 5).unwrap();
    let b = region_scan(-1.0, 8, 2.0, 5).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 40);
    assert_eq!(a[0].rho, 0.125);
    assert!((a[0].bigk - 0.2).abs() < 1e-15);
    assert_eq!(a[1].rho, 0.125);
    assert!((a[1].bigk - 0.6).abs() < 1e-15);
    let s = separatrix_scan(-1.0, 6).unwrap();
    assert!(s.iter().all(|x| x.count == Some(12) || x.count.is_none()));
}
