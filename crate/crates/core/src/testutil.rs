use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::matrix::{CMat, C64};

pub fn random_cmat(rows: usize, cols: usize, seed: u64) -> CMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CMat::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        C64::new(re, im)
    })
}

pub fn random_points(n: usize, seed: u64) -> Vec<C64> {
    random_cmat(n, 1, seed).col(0).to_vec()
}

/// Largest distance under greedy nearest matching; infinite on length mismatch.
pub fn match_sets(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut rest = b.to_vec();
    let mut worst: f64 = 0.0;
    for x in a {
        let (idx, d) = rest
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .fold((0, f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc });
        worst = worst.max(d);
        rest.swap_remove(idx);
    }
    worst
}

/// 2×2 symmetric rational test function with McMillan degree 8.
pub fn toy1(z: C64) -> CMat {
    let one = C64::new(1.0, 0.0);
    let off = (3.0 - z) / (z * z + z - 5.0);
    CMat::from_rows(&[
        &[2.0 * one / (z + 1.0), off],
        &[off, (2.0 + z * z) / (z * z * z + 3.0 * z * z - 1.0)],
    ])
}

/// Nonsymmetric variant: the (1,2) denominator becomes `z² + z + 5`.
pub fn toy2(z: C64) -> CMat {
    let mut f = toy1(z);
    f[(0, 1)] = (3.0 - z) / (z * z + z + 5.0);
    f
}

/// `(z − 1)/(z² + z + 2)` on 500 points of `[0.1, 10]i`, clean and with
/// noise of level `1e-2`.
pub fn noisy_scalar(seed: u64) -> (crate::sample::SampleSet, crate::sample::SampleSet) {
    use crate::sample::{add_noise, logspace_imaginary, NoiseSpec, SampleSet};
    let pts = logspace_imaginary(0.1, 10.0, 500).unwrap();
    let clean = SampleSet::from_fn(pts, |z| CMat::scalar((z - 1.0) / (z * z + z + 2.0))).unwrap();
    let noisy = add_noise(&clean, NoiseSpec::new(1e-2, seed).unwrap());
    (clean, noisy)
}
