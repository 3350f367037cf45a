mod common;

use common::*;
use octupolar::linalg;
use octupolar::potential::{eval_potential, from_rho_chi_k, gradient, mirror_matrix, OrientedParams};
use octupolar::tensor_core::{harmonic_decompose, symmetry_decompose, OctupolarTensor, Tensor3};
use proptest::prelude::*;

fn tensor_strategy() -> impl Strategy<Value = Tensor3> {
    prop::array::uniform27(-10.0f64..10.0).prop_map(|c| Tensor3::new(c).unwrap())
}

fn unit_strategy() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0)
        .prop_filter("non-degenerate", |v| linalg::norm(v) > 0.1)
        .prop_map(|v| linalg::normalize(&v))
}

proptest! {
    #[test]
    fn symmetry_parts_sum_back(t in tensor_strategy()) {
        let s = symmetry_decompose(&t);
        prop_assert!(s.reconstruct().max_abs_diff(&t) <= 1e-12 * t.max_abs().max(1.0));
    }

    #[test]
    fn harmonic_parts_sum_back(t in tensor_strategy()) {
        let h = harmonic_decompose(&t);
        prop_assert!(h.reconstruct().max_abs_diff(&t) <= 1e-12 * t.max_abs().max(1.0));
    }

    #[test]
    fn potential_sees_only_symmetric_part(t in tensor_strategy(), x in unit_strategy()) {
        let a1 = symmetry_decompose(&t).a1;
        prop_assert!((eval_potential(&t, &x) - eval_potential(&a1, &x)).abs() <= 1e-12 * t.max_abs());
    }

    #[test]
    fn homogeneity_and_euler(t in tensor_strategy(), x in prop::array::uniform3(-2.0f64..2.0), c in -3.0f64..3.0) {
        let phi = eval_potential(&t, &x);
        let cx = linalg::scale(&x, c);
        prop_assert!((eval_potential(&t, &cx) - c.powi(3) * phi).abs() <= 1e-12 * (1.0 + phi.abs() * 27.0) * t.max_abs());
        let euler = linalg::dot(&x, &gradient(&t, &x));
        prop_assert!((euler - 3.0 * phi).abs() <= 1e-11 * (1.0 + phi.abs()) * t.max_abs());
    }

    #[test]
    fn piezo_inputs_have_no_antisymmetric_part(t in tensor_strategy()) {
        let piezo = Tensor3::from_fn(|i, j, k| t.get(i, j, k) + t.get(i, k, j));
        let s = symmetry_decompose(&piezo);
        prop_assert!(s.a3.max_abs() <= 1e-12 * piezo.max_abs());
        let mixed = &s.a21 + &s.a22;
        prop_assert!(mixed.is_last_two_symmetric(1e-12 * piezo.max_abs()));
    }

    #[test]
    fn couple_stress_inputs_have_no_symmetric_part(t in tensor_strategy()) {
        let cs = Tensor3::from_fn(|i, j, k| t.get(i, j, k) - t.get(j, i, k));
        let s = symmetry_decompose(&cs);
        prop_assert!(s.a1.max_abs() <= 1e-12 * cs.max_abs());
        let rest = &(&s.a21 + &s.a22) + &s.a3;
        prop_assert!(rest.max_abs_diff(&cs) <= 1e-12 * cs.max_abs());
    }
}

#[test]
fn rotation_moves_the_potential() {
    let mut r = rng(7);
    for _ in 0..100 {
        let t = random_tensor(&mut r);
        let rot = random_rotation(&mut r);
        let x = random_unit(&mut r);
        let moved = t.rotated(&rot);
        let rx = linalg::mat_vec(&rot, &x);
        assert!((eval_potential(&moved, &rx) - eval_potential(&t, &x)).abs() < 1e-12);
    }
}

#[test]
fn mirror_maps_chi_to_its_partner() {
    let m = mirror_matrix();
    assert!((linalg::det(&m) + 1.0).abs() < 1e-14);
    let mut r = rng(11);
    for _ in 0..50 {
        let p = random_params(&mut r, 3.0);
        let q = OrientedParams::new(p.rho, -p.chi - std::f64::consts::FRAC_PI_3, p.bigk).unwrap();
        let a = from_rho_chi_k(&p).unwrap().rotated(&m);
        let b = from_rho_chi_k(&q).unwrap();
        assert!(a.to_tensor().max_abs_diff(&b.to_tensor()) < 1e-12, "{p:?}");
    }
}

#[test]
fn tensor_json_round_trip_keeps_label() {
    let t = random_tensor(&mut rng(3)).with_label("lab");
    let s = serde_json::to_string(&t).unwrap();
    assert!(s.contains("\"layout\":\"i9j3k\""));
    let back: Tensor3 = serde_json::from_str(&s).unwrap();
    assert_eq!(back, t);

    let bad = r#"{"components":[1,2,3],"layout":"i9j3k"}"#;
    assert!(serde_json::from_str::<Tensor3>(bad).is_err());
}

#[test]
fn octupolar_construction_checks_traces() {
    let t = random_tensor(&mut rng(5));
    assert!(OctupolarTensor::from_tensor(&t, 1e-10).is_err());
    let sym = t.symmetrized();
    assert!(OctupolarTensor::from_tensor(&sym, 1e-10).is_err());
    let h = harmonic_decompose(&t).d3;
    let back = OctupolarTensor::from_tensor(&h.to_tensor(), 1e-10).unwrap();
    assert!(back.to_tensor().max_abs_diff(&h.to_tensor()) < 1e-15);
}
