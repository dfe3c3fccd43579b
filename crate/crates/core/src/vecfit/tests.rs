use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::matrix::c64;
use crate::sample::logspace_imaginary;
use crate::testutil::{match_sets, noisy_scalar, random_cmat, random_points, toy1};

fn one() -> C64 {
    c64(1.0, 0.0)
}

#[test]
fn eval_without_poles_is_constant() {
    let g = random_cmat(2, 3, 1);
    let r = PoleResidue::new(g.clone(), vec![], vec![]).unwrap();
    for z in random_points(4, 2) {
        assert_eq!(r.eval(z).unwrap(), g);
    }
}

#[test]
fn eval_single_pole() {
    let r = PoleResidue::new(CMat::zeros(1, 1), vec![-one()], vec![CMat::scalar(c64(2.0, 0.0))]).unwrap();
    assert_eq!(r.eval(c64(0.0, 0.0)).unwrap()[(0, 0)], c64(2.0, 0.0));
    assert!(r.eval(-one()).is_err());
}

#[test]
fn eval_matches_entrywise_partial_fractions() {
    let poles = random_points(3, 5);
    let res: Vec<CMat> = (0..3).map(|k| random_cmat(2, 2, 10 + k)).collect();
    let d = random_cmat(2, 2, 20);
    let r = PoleResidue::new(d.clone(), poles.clone(), res.clone()).unwrap();
    for z in random_points(10, 6) {
        let v = r.eval(z).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = d[(i, j)];
                for k in 0..3 {
                    s += res[k][(i, j)] / (z - poles[k]);
                }
                assert!((v[(i, j)] - s).norm() <= 1e-12 * (1.0 + s.norm()));
            }
        }
    }
}

#[test]
fn duplicate_poles_rejected() {
    let z = CMat::zeros(1, 1);
    assert!(PoleResidue::new(z.clone(), vec![one(), one()], vec![z.clone(), z]).is_err());
}

#[test]
fn recovers_shifted_simple_pole() {
    let pts = logspace_imaginary(0.1, 10.0, 40).unwrap();
    let vals: Vec<C64> = pts.iter().map(|z| 3.0 + 1.0 / (z + 2.0)).collect();
    let fit = vf_scalar(&pts, &vals, 1, &VfOptions::iterations(5)).unwrap();
    let m = &fit.model;
    assert!((m.poles[0] + 2.0).norm() < 1e-8, "{:?}", m.poles);
    assert!((m.d[(0, 0)] - 3.0).norm() < 1e-8);
    assert!((m.residues[0][(0, 0)] - 1.0).norm() < 1e-8);
}

#[test]
fn representable_data_is_a_fixed_point() {
    let poles = vec![c64(-0.1, 2.0), c64(-0.1, -2.0), c64(-1.5, 0.0)];
    let r = PoleResidue::new(
        CMat::scalar(c64(0.5, 0.0)),
        poles.clone(),
        vec![CMat::scalar(one()), CMat::scalar(c64(0.0, 2.0)), CMat::scalar(c64(-1.0, 0.5))],
    )
    .unwrap();
    let pts = logspace_imaginary(0.1, 10.0, 50).unwrap();
    let s = SampleSet::from_fn(pts, |z| r.eval(z).unwrap()).unwrap();
    let opts = VfOptions {
        iterations: 1,
        initial_poles: Some(poles.clone()),
        enforce_stability: false,
    };
    let fit = vf_matrix(&s, 3, &opts).unwrap();
    assert!(match_sets(&fit.model.poles, &poles) < 1e-10);
}

#[test]
fn noisy_data_stagnates_at_noise_level() {
    let tau = 1e-2;
    let (_, noisy) = noisy_scalar(7);
    let fit = vf_matrix(&noisy, 5, &VfOptions::iterations(5)).unwrap();
    let e = rmse(&noisy, &fit.model).unwrap();
    assert!((0.5 * tau..=3.0 * tau).contains(&e), "rmse {e:e}");
}

#[test]
fn diagonal_data_decouples() {
    let pts = logspace_imaginary(0.1, 10.0, 80).unwrap();
    let f = |z: C64| (z - 1.0) / (z * z + z + 2.0) + 0.5 / (z + 3.0);
    let vals: Vec<C64> = pts.iter().map(|z| f(*z)).collect();
    let s = SampleSet::from_fn(pts.clone(), |z| CMat::diag(&[f(z), f(z)])).unwrap();
    let a = vf_scalar(&pts, &vals, 3, &VfOptions::default()).unwrap();
    let b = vf_matrix(&s, 3, &VfOptions::default()).unwrap();
    assert!(match_sets(&a.model.poles, &b.model.poles) < 1e-8);
}

#[test]
fn toy_recovered_at_degree_six() {
    let s = SampleSet::from_fn(logspace_imaginary(1.0, 100.0, 100).unwrap(), toy1).unwrap();
    let fit = vf_matrix(&s, 6, &VfOptions::iterations(5)).unwrap();
    let e = rmse(&s, &fit.model).unwrap();
    assert!(e <= 1e-6, "rmse {e:e}");
}

#[test]
fn constant_degree_zero() {
    let g = random_cmat(2, 2, 3);
    let s = SampleSet::from_fn(logspace_imaginary(1.0, 10.0, 16).unwrap(), |_| g.clone()).unwrap();
    let fit = vf_matrix(&s, 0, &VfOptions::default()).unwrap();
    assert!(fit.model.poles.is_empty());
    assert!(fit.model.d.dist_fro_sqr(&g).sqrt() <= 1e-15 * g.norm_fro());
}

#[test]
fn stability_enforced() {
    // a right half-plane pole in the data
    let pts = logspace_imaginary(0.1, 10.0, 60).unwrap();
    let vals: Vec<C64> = pts.iter().map(|z| 1.0 / (z - 0.5) + 1.0 / (z + 2.0)).collect();
    let opts = VfOptions {
        enforce_stability: true,
        ..VfOptions::default()
    };
    let fit = vf_scalar(&pts, &vals, 2, &opts).unwrap();
    assert!(fit.model.poles.iter().all(|p| p.re <= 0.0));
    let free = vf_scalar(&pts, &vals, 2, &VfOptions::default()).unwrap();
    assert!(free.model.poles.iter().any(|p| (p - 0.5).norm() < 1e-6));
}

#[test]
fn rejects_bad_parameters() {
    let pts = logspace_imaginary(0.1, 10.0, 4).unwrap();
    let vals = vec![one(); 4];
    assert!(vf_scalar(&pts, &vals, 2, &VfOptions::default()).is_err());
    assert!(vf_scalar(&pts, &vals, 1, &VfOptions::iterations(0)).is_err());
}

#[test]
fn initial_poles_cover_band() {
    let pts = logspace_imaginary(1.0, 100.0, 10).unwrap();
    let p = initial_poles(&pts, 5);
    assert_eq!(p.len(), 5);
    assert!((p[0] - c64(-0.01, 1.0)).norm() < 1e-12);
    assert!((p[3] - c64(-1.0, -100.0)).norm() < 1e-9);
    assert!((p[4] + 10.0).norm() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn relocation_fixed_point(seed in any::<u32>(), d in 1usize..5) {
        let poles: Vec<C64> = random_points(d, seed as u64)
            .into_iter()
            .map(|p| c64(-(p.re.abs() + 0.2), 3.0 * p.im))
            .collect();
        let res = (0..d).map(|k| random_cmat(2, 2, seed as u64 + 10 + k as u64)).collect();
        let r = PoleResidue::new(random_cmat(2, 2, seed as u64 + 5), poles.clone(), res).unwrap();
        let s = SampleSet::from_fn(logspace_imaginary(0.1, 10.0, 40).unwrap(), |z| r.eval(z).unwrap()).unwrap();
        let opts = VfOptions { iterations: 1, initial_poles: Some(poles.clone()), enforce_stability: false };
        let fit = vf_matrix(&s, d, &opts).unwrap();
        let scale = poles.iter().map(|p| p.norm()).fold(1.0, f64::max);
        prop_assert!(match_sets(&fit.model.poles, &poles) <= 1e-8 * scale);
    }
}

#[test]
fn nonsymmetric_toy_recovered_at_degree_eight() {
    let s = SampleSet::from_fn(logspace_imaginary(1.0, 100.0, 100).unwrap(), crate::testutil::toy2).unwrap();
    let fit = vf_matrix(&s, 8, &VfOptions::iterations(10)).unwrap();
    let e = rmse(&s, &fit.model).unwrap();
    assert!(e <= 1e-6, "rmse {e:e}");
}
