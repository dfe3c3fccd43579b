//! Test problems with analytic samples.

use blockrat::sample::{add_noise, logspace_imaginary, NoiseSpec};
use blockrat::{c64, CMat, Result, SampleSet, C64};

/// Samples to fit, and the clean samples when noise was added.
#[derive(Debug, Clone)]
pub struct Problem {
    pub name: String,
    pub samples: SampleSet,
    pub truth: Option<SampleSet>,
}

impl Problem {
    pub fn new(name: impl Into<String>, samples: SampleSet) -> Self {
        Self {
            name: name.into(),
            samples,
            truth: None,
        }
    }

    /// Replaces the samples by noisy ones and keeps the clean set as truth.
    pub fn with_noise(mut self, spec: NoiseSpec) -> Self {
        let clean = self.truth.take().unwrap_or_else(|| self.samples.clone());
        self.samples = add_noise(&clean, spec);
        self.truth = Some(clean);
        self
    }

    /// The clean samples if known, else the fitted ones.
    pub fn reference(&self) -> &SampleSet {
        self.truth.as_ref().unwrap_or(&self.samples)
    }
}

pub const PROBLEM_NAMES: [&str; 4] = ["toy1", "toy2", "buckling", "scalar-noise"];

pub fn toy1(z: C64) -> CMat {
    let off = (3.0 - z) / (z * z + z - 5.0);
    CMat::from_rows(&[
        &[2.0 / (z + 1.0), off],
        &[off, (2.0 + z * z) / (z * z * z + 3.0 * z * z - 1.0)],
    ])
}

/// [`toy1`] with the (1,2) denominator replaced by `z² + z + 5`.
pub fn toy2(z: C64) -> CMat {
    let mut f = toy1(z);
    f[(0, 1)] = (3.0 - z) / (z * z + z + 5.0);
    f
}

/// Odd power series `Σ_{k≥1} c_k w^{2k+1}/(2k+1)!`.
fn odd_series(w: C64, coef: impl Fn(u32) -> f64) -> C64 {
    let w2 = w * w;
    let mut term = w; // w^{2k+1}/(2k+1)! for k = 0
    let mut sum = c64(0.0, 0.0);
    for k in 1..40u32 {
        term = term * w2 / ((2 * k) as f64 * (2 * k + 1) as f64);
        let t = term * coef(k);
        sum += t;
        if t.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// `sin w − w cos w`.
fn g1(w: C64) -> C64 {
    if w.norm() < 0.5 {
        odd_series(w, |k| if k % 2 == 1 { 2.0 * k as f64 } else { -2.0 * k as f64 })
    } else {
        w.sin() - w * w.cos()
    }
}

/// `w − sin w`.
fn g2(w: C64) -> C64 {
    if w.norm() < 0.5 {
        odd_series(w, |k| if k % 2 == 1 { 1.0 } else { -1.0 })
    } else {
        w - w.sin()
    }
}

/// Buckling problem. The entries are evaluated as
/// `z·g(2z)·cos z / (sin 2z · (sin z − z cos z))` so that the removable
/// singularity at the origin costs no accuracy.
pub fn buckling(z: C64) -> CMat {
    let base = z * z.cos() / ((2.0 * z).sin() * g1(z));
    let diag = base * g1(2.0 * z);
    let off = base * g2(2.0 * z);
    CMat::from_rows(&[&[diag + 10.0, off], &[off, diag + 4.0]])
}

pub fn scalar_noise_fn(z: C64) -> C64 {
    (z - 1.0) / (z * z + z + 2.0)
}

pub fn problem_toy1(ell: usize) -> Result<Problem> {
    let pts = logspace_imaginary(1.0, 100.0, ell)?;
    Ok(Problem::new("toy1", SampleSet::from_fn(pts, toy1)?))
}

pub fn problem_toy2(ell: usize) -> Result<Problem> {
    let pts = logspace_imaginary(1.0, 100.0, ell)?;
    Ok(Problem::new("toy2", SampleSet::from_fn(pts, toy2)?))
}

pub fn problem_buckling(ell: usize) -> Result<Problem> {
    let pts = logspace_imaginary(1e-2, 10.0, ell)?;
    Ok(Problem::new("buckling", SampleSet::from_fn(pts, buckling)?))
}

pub fn problem_scalar_noise(ell: usize, tau: f64, seed: u64) -> Result<Problem> {
    let pts = logspace_imaginary(0.1, 10.0, ell)?;
    let clean = SampleSet::from_fn(pts, |z| CMat::scalar(scalar_noise_fn(z)))?;
    Ok(Problem::new("scalar-noise", clean).with_noise(NoiseSpec::new(tau, seed)?))
}

/// Default noise level and seed of the scalar noise study.
pub const SCALAR_NOISE_TAU: f64 = 1e-2;
pub const SCALAR_NOISE_SEED: u64 = 2020;

/// Looks a problem up by name with its default size.
pub fn problem_by_name(name: &str) -> Option<Result<Problem>> {
    Some(match name {
        "toy1" => problem_toy1(100),
        "toy2" => problem_toy2(100),
        "buckling" => problem_buckling(500),
        "scalar-noise" => problem_scalar_noise(500, SCALAR_NOISE_TAU, SCALAR_NOISE_SEED),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_buckling_11(z: C64) -> C64 {
        z * (1.0 - 2.0 * z * (2.0 * z).cos() / (2.0 * z).sin()) / (z.tan() - z) + 10.0
    }

    fn naive_buckling_12(z: C64) -> C64 {
        z * (2.0 * z - (2.0 * z).sin()) / ((2.0 * z).sin() * (z.tan() - z))
    }

    #[test]
    fn toy1_values_at_origin() {
        let f = toy1(c64(0.0, 0.0));
        assert_eq!(f[(0, 0)], c64(2.0, 0.0));
        assert_eq!(f[(1, 1)], c64(-2.0, 0.0));
        assert_eq!(f[(0, 1)], c64(-0.6, 0.0));
    }

    #[test]
    fn toy1_symmetric_toy2_not() {
        let p = problem_toy1(100).unwrap();
        for f in p.samples.values() {
            assert_eq!(f[(0, 1)], f[(1, 0)]);
        }
        let p = problem_toy2(100).unwrap();
        for (z, f) in p.samples.points().iter().zip(p.samples.values()) {
            assert_eq!(f[(0, 1)], (3.0 - z) / (z * z + z + 5.0));
            assert_eq!(f[(1, 0)], (3.0 - z) / (z * z + z - 5.0));
            assert!(f[(0, 1)] != f[(1, 0)]);
        }
        let f = toy2(c64(0.0, 0.0));
        assert_eq!(f[(0, 1)], c64(0.6, 0.0));
    }

    #[test]
    fn buckling_symmetric_with_constant_diagonal_gap() {
        let p = problem_buckling(500).unwrap();
        assert_eq!(p.samples.len(), 500);
        for f in p.samples.values() {
            assert_eq!(f[(0, 1)], f[(1, 0)]);
            assert!((f[(0, 0)] - f[(1, 1)] - 6.0).norm() <= 1e-12 * f[(0, 0)].norm().max(1.0));
        }
    }

    #[test]
    fn buckling_matches_direct_formula() {
        for z in [c64(0.0, 0.01), c64(0.0, 0.3), c64(0.0, 1.0), c64(0.0, 4.0), c64(0.0, 10.0)] {
            let f = buckling(z);
            let a = naive_buckling_11(z);
            let b = naive_buckling_12(z);
            assert!((f[(0, 0)] - a).norm() <= 1e-7 * a.norm(), "{z}: {} vs {a}", f[(0, 0)]);
            assert!((f[(0, 1)] - b).norm() <= 1e-7 * b.norm(), "{z}: {} vs {b}", f[(0, 1)]);
        }
    }

    #[test]
    fn buckling_small_z_limit() {
        // z(1 − 2z cot 2z)/(tan z − z) = 4 + O(z²); off-diagonal → 2
        let f = buckling(c64(0.0, 0.01));
        assert!((f[(0, 0)] - 10.0 - 4.0).norm() < 0.05);
        assert!((f[(0, 1)] - 2.0).norm() < 0.05);
        let f = buckling(c64(0.0, 1e-6));
        assert!((f[(0, 0)] - 14.0).norm() < 1e-9);
    }

    #[test]
    fn scalar_noise_problem() {
        let p = problem_scalar_noise(500, 1e-2, 3).unwrap();
        let truth = p.truth.as_ref().unwrap();
        assert_eq!(p.samples.len(), 500);
        assert_eq!(truth.points(), p.samples.points());
        let z = truth.points()[0];
        assert_eq!(truth.values()[0][(0, 0)], scalar_noise_fn(z));
        assert_eq!(scalar_noise_fn(c64(1.0, 0.0)), c64(0.0, 0.0));
        assert_eq!(scalar_noise_fn(c64(0.0, 0.0)), c64(-0.5, 0.0));
        let diff = (p.samples.values()[7][(0, 0)] - truth.values()[7][(0, 0)]).norm();
        assert!(diff > 0.0 && diff < 0.1);
    }

    #[test]
    fn names_resolve() {
        for name in PROBLEM_NAMES {
            assert_eq!(problem_by_name(name).unwrap().unwrap().name, name);
        }
        assert!(problem_by_name("nope").is_none());
    }
}
