mod common;

use common::*;
use octupolar::lc_distortion::*;
use octupolar::linalg::{self, Vec3};
use octupolar::potential::eval_potential;
use proptest::prelude::*;
use rand::Rng;

fn random_characteristics(r: &mut impl Rng) -> DistortionCharacteristics {
    let n = random_unit(r);
    let mut frame = Frame::completing(&n);
    let turn = r.gen_range(0.0..std::f64::consts::TAU);
    let (s, c) = turn.sin_cos();
    let n1 = linalg::add(&linalg::scale(&frame.n1, c), &linalg::scale(&frame.n2, s));
    frame = Frame { n1, n2: linalg::cross(&n, &n1), n };
    DistortionCharacteristics::new(
        r.gen_range(-2.0..2.0),
        r.gen_range(-2.0..2.0),
        r.gen_range(-2.0..2.0),
        r.gen_range(-2.0..2.0),
        r.gen_range(0.01..2.0),
    )
    .unwrap()
    .in_frame(frame)
    .unwrap()
}

proptest! {
    #[test]
    fn round_trip(seed in any::<u64>()) {
        let dc = random_characteristics(&mut rng(seed));
        let dg = reconstruct_gradient(&dc).unwrap();
        let back = decompose_gradient(&DirectorGradient::new(dg.g, dg.n).unwrap()).unwrap();
        let again = reconstruct_gradient(&back).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((again.g[i][j] - dg.g[i][j]).abs() <= 1e-12);
            }
        }
        prop_assert!((back.splay - dc.splay).abs() <= 1e-12);
        prop_assert!((back.twist - dc.twist).abs() <= 1e-12);
        prop_assert!((back.q - dc.q).abs() <= 1e-12);
        prop_assert!((back.bend() - dc.bend()).abs() <= 1e-12);
        prop_assert!(linalg::max_abs(&linalg::sub(&linalg::cross(&back.frame.n1, &back.frame.n2), &back.frame.n)) < 1e-12);
    }

    #[test]
    fn twist_blind(seed in any::<u64>(), delta in -5.0f64..5.0) {
        let mut r = rng(seed);
        let dc = random_characteristics(&mut r);
        let twisted = DistortionCharacteristics { twist: dc.twist + delta, ..dc };
        let x = random_unit(&mut r);
        prop_assert_eq!(lc_octupolar_potential(&dc, &x), lc_octupolar_potential(&twisted, &x));
        let a = octupolar_tensor(&reconstruct_gradient(&dc).unwrap());
        let b = octupolar_tensor(&reconstruct_gradient(&twisted).unwrap());
        prop_assert!(a.to_tensor().max_abs_diff(&b.to_tensor()) < 1e-14);
    }

    #[test]
    fn q_formula_holds(seed in any::<u64>()) {
        let dc = random_characteristics(&mut rng(seed));
        let g = reconstruct_gradient(&dc).unwrap().g;
        let tr_g2 = linalg::trace(&linalg::mat_mul(&g, &g));
        prop_assert!((2.0 * dc.q * dc.q - (tr_g2 + 0.5 * dc.twist * dc.twist - 0.5 * dc.splay * dc.splay)).abs() < 1e-12);
    }
}

#[test]
fn energy_forms_agree() {
    let mut r = rng(51);
    for _ in 0..1000 {
        let dc = random_characteristics(&mut r);
        let k = FrankConstants {
            k11: r.gen_range(0.0..3.0),
            k22: r.gen_range(0.0..3.0),
            k33: r.gen_range(0.0..3.0),
            k24: r.gen_range(-1.0..3.0),
        };
        let w = oseen_frank(&dc, &k).unwrap();
        assert!((w.w_classic - w.w_selinger).abs() <= 1e-12 * w.w_selinger.abs().max(1.0));
    }
}

#[test]
fn potential_is_the_detraced_lab_tensor() {
    let mut r = rng(52);
    for _ in 0..20 {
        let dc = random_characteristics(&mut r);
        let dg = reconstruct_gradient(&dc).unwrap();
        let t = octupolar_tensor(&dg);
        for _ in 0..100 {
            let x = random_unit(&mut r);
            let local = dc.frame.coords(&x);
            assert!((eval_potential(&t, &x) - lc_octupolar_potential(&dc, &local)).abs() < 1e-12);
        }
    }
}

#[test]
fn nematic_symmetry() {
    let mut r = rng(53);
    for _ in 0..50 {
        let dg = reconstruct_gradient(&random_characteristics(&mut r)).unwrap();
        let flipped = DirectorGradient::new(dg.g.map(|row| row.map(|v| -v)), linalg::neg(&dg.n)).unwrap();
        let a = octupolar_tensor(&dg).to_tensor();
        let b = octupolar_tensor(&flipped).to_tensor();
        assert!(a.max_abs_diff(&b) < 1e-15);
    }
}

#[test]
fn flipping_both_frame_vectors_keeps_the_gradient() {
    let dc = random_characteristics(&mut rng(54));
    let f = dc.frame;
    let flipped = DistortionCharacteristics {
        b1: -dc.b1,
        b2: -dc.b2,
        frame: Frame { n1: linalg::neg(&f.n1), n2: linalg::neg(&f.n2), n: f.n },
        ..dc
    };
    let a = reconstruct_gradient(&dc).unwrap().g;
    let b = reconstruct_gradient(&flipped).unwrap().g;
    for i in 0..3 {
        for j in 0..3 {
            assert!((a[i][j] - b[i][j]).abs() < 1e-15);
        }
    }
}

#[test]
fn uniaxial_frame_is_deterministic() {
    let n: Vec3 = linalg::normalize(&[0.2, -0.9, 0.4]);
    let p = linalg::mat_add(&linalg::identity(), &linalg::mat_scale(&linalg::outer(&n, &n), -1.0));
    let dc = decompose_gradient(&DirectorGradient::new(linalg::mat_scale(&p, 0.5), n).unwrap()).unwrap();
    assert!(dc.frame_arbitrary && dc.q == 0.0);
    // e1 projected orthogonal to n
    let want = linalg::normalize(&linalg::sub(&[1.0, 0.0, 0.0], &linalg::scale(&n, n[0])));
    assert!(linalg::angle(&dc.frame.n1, &want) < 1e-15);
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(DirectorGradient::new([[0.0; 3]; 3], [0.0, 0.0, 2.0]).is_err());
    let g = [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.3, 0.0, 0.0]];
    assert!(DirectorGradient::new(g, [0.0, 0.0, 1.0]).is_err());
    let f = GradientFile { gradient: vec![0.0; 8], n: [0.0, 0.0, 1.0] };
    assert!(DirectorGradient::try_from(f).is_err());
    let dc = DistortionCharacteristics::new(0.0, 0.0, 0.0, 0.0, 1.0).unwrap();
    let skewed = Frame { n1: [1.0, 0.0, 0.0], n2: [0.0, 0.0, 1.0], n: [0.0, 1.0, 0.0] };
    assert!(dc.in_frame(skewed).is_err());
}
