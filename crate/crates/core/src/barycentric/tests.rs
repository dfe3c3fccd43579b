use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::kernels::svd_full;
use crate::matrix::c64;
use crate::sample::{logspace_imaginary, rmse};
use crate::testutil::{random_cmat, random_points};

fn close(a: &CMat, b: &CMat, tol: f64) -> bool {
    a.dist_fro_sqr(b).sqrt() <= tol * (1.0 + b.norm_fro())
}

#[test]
fn scalar_constant_and_support() {
    let r = ScalarBarycentric::new(vec![c64(1.0, 1.0)], vec![c64(0.3, 0.0)], vec![c64(7.0, -1.0)])
        .unwrap();
    for z in random_points(5, 1) {
        assert!((r.eval(z).unwrap() - c64(7.0, -1.0)).norm() < 1e-14);
    }
    let r = ScalarBarycentric::new(
        vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 2.0)],
        vec![c64(1.0, 0.0), c64(-2.0, 1.0), c64(0.5, 0.0)],
        vec![c64(3.0, 0.0), c64(4.0, 0.0), c64(5.0, 0.0)],
    )
    .unwrap();
    assert_eq!(r.eval(c64(1.0, 0.0)).unwrap(), c64(4.0, 0.0));
    assert_eq!(r.eval(c64(0.0, 2.0)).unwrap(), c64(5.0, 0.0));
}

#[test]
fn scalar_polynomial_weights_reproduce_square() {
    // w_k = 1/Π_{j≠k}(z_k − z_j) on {0,1,2}: {1/2, −1, 1/2}
    let r = ScalarBarycentric::new(
        vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(2.0, 0.0)],
        vec![c64(0.5, 0.0), c64(-1.0, 0.0), c64(0.5, 0.0)],
        vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(4.0, 0.0)],
    )
    .unwrap();
    assert!((r.eval(c64(4.0, 0.0)).unwrap() - c64(16.0, 0.0)).norm() < 1e-13);
    let z = c64(-0.7, 1.3);
    assert!((r.eval(z).unwrap() - z * z).norm() < 1e-13);
}

#[test]
fn scalar_rejects_bad_input() {
    assert!(ScalarBarycentric::new(vec![c64(1.0, 0.0); 2], vec![c64(1.0, 0.0); 2], vec![c64(1.0, 0.0); 2]).is_err());
    assert!(ScalarBarycentric::new(vec![c64(1.0, 0.0)], vec![c64(0.0, 0.0)], vec![c64(1.0, 0.0)]).is_err());
}

#[test]
fn scalar_zero_denominator_reports_z() {
    // weights 1 and −1 cancel at the midpoint
    let r = ScalarBarycentric::new(
        vec![c64(-1.0, 0.0), c64(1.0, 0.0)],
        vec![c64(1.0, 0.0), c64(1.0, 0.0)],
        vec![c64(1.0, 0.0), c64(2.0, 0.0)],
    )
    .unwrap();
    let err = r.eval(c64(0.0, 0.0)).unwrap_err();
    assert!(matches!(err, Error::Evaluation { z, .. } if z == c64(0.0, 0.0)));
}

fn random_bary_a(d1: usize, seed: u64) -> BlockBaryA {
    let support = random_points(d1, seed);
    let weights = random_points(d1, seed + 1);
    let values = (0..d1).map(|k| random_cmat(2, 3, seed + 10 + k as u64)).collect();
    BlockBaryA::new(support, weights, values).unwrap()
}

#[test]
fn bary_a_constant_support_and_entrywise() {
    let a = random_bary_a(1, 3);
    for z in random_points(4, 9) {
        assert!(close(&a.eval(z).unwrap(), &a.values[0], 1e-14));
    }
    let a = random_bary_a(3, 5);
    for k in 0..3 {
        assert_eq!(a.eval(a.support[k]).unwrap(), a.values[k]);
    }
    for z in random_points(6, 77) {
        let r = a.eval(z).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                let s = ScalarBarycentric::new(
                    a.support.clone(),
                    a.weights.clone(),
                    a.values.iter().map(|v| v[(i, j)]).collect(),
                )
                .unwrap();
                assert!((s.eval(z).unwrap() - r[(i, j)]).norm() <= 1e-13 * (1.0 + r[(i, j)].norm()));
            }
        }
    }
}

#[test]
fn bary_b_constant_and_support() {
    let w0 = random_cmat(2, 2, 4);
    let f0 = random_cmat(2, 2, 5);
    let b = BlockBaryB::new(vec![c64(0.5, 0.5)], vec![w0], vec![f0.clone()]).unwrap();
    for z in random_points(5, 6) {
        assert!(close(&b.eval(z).unwrap(), &f0, 1e-12));
    }
    let support = random_points(3, 8);
    let weights: Vec<CMat> = (0..3).map(|k| random_cmat(2, 2, 20 + k)).collect();
    let values: Vec<CMat> = (0..3).map(|k| random_cmat(2, 2, 30 + k)).collect();
    let b = BlockBaryB::new(support.clone(), weights, values.clone()).unwrap();
    for k in 0..3 {
        assert_eq!(b.eval(support[k]).unwrap(), values[k]);
    }
}

proptest! {
    #[test]
    fn bary_b_with_scalar_weights_matches_bary_a(seed in 0u64..1_000_000) {
        let a = random_bary_a(4, seed);
        let weights = a.weights.iter().map(|w| CMat::identity(2).scale(*w)).collect();
        let b = BlockBaryB::new(a.support.clone(), weights, a.values.clone()).unwrap();
        for z in random_points(20, seed ^ 0xabc) {
            let ra = a.eval(z).unwrap();
            let rb = b.eval(z).unwrap();
            prop_assert!(ra.dist_fro_sqr(&rb).sqrt() <= 1e-12 * ra.norm_fro().max(1.0));
        }
    }

    #[test]
    fn bary_c_from_bary_b_matches(seed in 0u64..1_000_000) {
        let support = random_points(3, seed);
        let weights: Vec<CMat> = (0..3).map(|k| random_cmat(2, 2, seed + 40 + k)).collect();
        let values: Vec<CMat> = (0..3).map(|k| random_cmat(2, 2, seed + 50 + k)).collect();
        let b = BlockBaryB::new(support.clone(), weights.clone(), values.clone()).unwrap();
        let numer = weights.iter().zip(&values).map(|(w, f)| w.matmul(f)).collect();
        let c = BlockBaryC::new(support, numer, weights).unwrap();
        prop_assert_eq!(&b.to_bary_c(), &c);
        for z in random_points(10, seed ^ 0x55) {
            let rb = b.eval(z).unwrap();
            let rc = c.eval(z).unwrap();
            prop_assert!(rb.dist_fro_sqr(&rc).sqrt() <= 1e-12 * rb.norm_fro().max(1.0));
        }
    }
}

#[test]
fn bary_c_common_factor_and_support() {
    let g = random_cmat(2, 3, 1);
    let support = random_points(3, 2);
    let denom: Vec<CMat> = (0..3).map(|k| random_cmat(2, 2, 3 + k)).collect();
    let numer = denom.iter().map(|d| d.matmul(&g)).collect();
    let c = BlockBaryC::new(support.clone(), numer, denom).unwrap();
    for z in random_points(6, 11).into_iter().chain(support.iter().copied()) {
        assert!(close(&c.eval(z).unwrap(), &g, 1e-10));
    }

    let numer: Vec<CMat> = (0..2).map(|k| random_cmat(2, 2, 60 + k)).collect();
    let c = BlockBaryC::new(
        vec![c64(1.0, 0.0), c64(2.0, 0.0)],
        numer.clone(),
        vec![CMat::identity(2), CMat::identity(2)],
    )
    .unwrap();
    assert!(close(&c.eval(c64(2.0, 0.0)).unwrap(), &numer[1], 1e-15));
}

#[test]
fn bary_c_singular_denominator_is_an_error() {
    let c = BlockBaryC::new(
        vec![c64(1.0, 0.0)],
        vec![CMat::identity(2)],
        vec![CMat::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]])],
    )
    .unwrap();
    assert!(matches!(c.eval(c64(1.0, 0.0)), Err(Error::Evaluation { .. })));
    assert!(matches!(c.eval(c64(3.0, 0.0)), Err(Error::Evaluation { .. })));
}

fn grid_samples(f: impl Fn(C64) -> CMat, ell: usize) -> SampleSet {
    SampleSet::from_fn(logspace_imaginary(1.0, 100.0, ell).unwrap(), f).unwrap()
}

#[test]
fn weights_b_constant_function() {
    let g = random_cmat(2, 2, 7);
    let s = grid_samples(|_| g.clone(), 20);
    let support: Vec<(C64, CMat)> = vec![(c64(1.0, 0.0), g.clone()), (c64(-2.0, 0.5), g.clone())];
    let w = solve_weights_bary_b(&s, &support).unwrap();
    let l = block_loewner(&s, &support).unwrap();
    assert_eq!(l.norm_fro(), 0.0);
    let total: f64 = w.iter().map(CMat::norm_fro_sqr).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn weights_b_scalar_matches_aaa_weight_solve() {
    let f = |z: C64| CMat::scalar((z - 1.0) / (z * z + z + 2.0));
    let s = grid_samples(f, 30);
    let zs = [c64(0.0, 0.5), c64(0.0, 3.3), c64(0.0, 40.0)];
    let support: Vec<(C64, CMat)> = zs.iter().map(|&z| (z, f(z))).collect();
    let w = solve_weights_bary_b(&s, &support).unwrap();
    // scalar AAA: Loewner matrix with rows over samples, columns over support
    let a = CMat::from_fn(s.len(), 3, |i, k| {
        (s.values()[i][(0, 0)] - support[k].1[(0, 0)]) / (s.points()[i] - zs[k])
    });
    let v = svd_full(&a).unwrap().v;
    let oracle: Vec<C64> = (0..3).map(|k| v[(k, 2)]).collect();
    let phase = w[0][(0, 0)] / oracle[0];
    assert!((phase.norm() - 1.0).abs() < 1e-10);
    for k in 0..3 {
        assert!((w[k][(0, 0)] - phase * oracle[k]).norm() < 1e-10);
    }
}

#[test]
fn weights_b_reject_collision() {
    let s = grid_samples(|z| CMat::scalar(z), 10);
    let z0 = s.points()[3];
    assert!(matches!(
        solve_weights_bary_b(&s, &[(z0, CMat::scalar(z0))]),
        Err(Error::Parameter(_))
    ));
    assert!(matches!(solve_weights_bary_c(&s, &[z0]), Err(Error::Parameter(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn weights_b_unit_norm(seed in any::<u64>(), d1 in 1usize..6) {
        let s = SampleSet::new(
            random_points(25, seed),
            (0..25).map(|k| random_cmat(2, 3, seed ^ (k as u64 + 1))).collect(),
        ).unwrap();
        let support: Vec<(C64, CMat)> = random_points(d1, seed.wrapping_add(7))
            .into_iter()
            .enumerate()
            .map(|(k, z)| (z * 3.0, random_cmat(2, 3, seed ^ (1000 + k as u64))))
            .collect();
        let w = solve_weights_bary_b(&s, &support).unwrap();
        let total: f64 = w.iter().map(CMat::norm_fro_sqr).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }
}

#[test]
fn weights_c_constant_function() {
    let g = random_cmat(2, 2, 9);
    let s = grid_samples(|_| g.clone(), 20);
    let c = solve_weights_bary_c(&s, &[c64(0.3, 0.1), c64(-1.0, 2.0)]).unwrap();
    assert!((c.norm() - 1.0).abs() < 1e-12);
    for (z, f) in s.points().iter().zip(s.values()) {
        assert!(close(&c.eval(*z).unwrap(), f, 1e-8));
    }

    let c = solve_weights_bary_c(&s, &[c64(0.3, 0.1)]).unwrap();
    let at = c.eval(c64(0.3, 0.1)).unwrap();
    assert!(close(&at, &g, 1e-8));
}

#[test]
fn weights_c_rectangular_constant() {
    let g = random_cmat(2, 3, 19);
    let s = grid_samples(|_| g.clone(), 12);
    let c = solve_weights_bary_c(&s, &[c64(0.3, 0.1), c64(-1.0, 2.0)]).unwrap();
    assert_eq!(c.shape(), (2, 3));
    for (z, f) in s.points().iter().zip(s.values()) {
        assert!(close(&c.eval(*z).unwrap(), f, 1e-8));
    }
}

#[test]
fn weights_c_recovers_degree_one_two() {
    let f = |z: C64| CMat::scalar((z - 1.0) / (z * z + z + 2.0));
    let s = grid_samples(f, 40);
    let c = solve_weights_bary_c(&s, &[c64(-0.5, 0.0), c64(0.5, 1.0), c64(2.0, -1.0)]).unwrap();
    assert!(rmse(&s, &c).unwrap() <= 1e-8);
}
