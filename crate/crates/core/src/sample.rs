//! Sample sets, sampling grids, noise injection and the RMSE metric.

use alloc::format;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{param, Error, Result};
use crate::matrix::{CMat, C64};

/// The discrete set `Λ` together with matrix samples `F(λ_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    points: Vec<C64>,
    values: Vec<CMat>,
    rows: usize,
    cols: usize,
}

impl SampleSet {
    /// Validates and wraps the samples.
    pub fn new(points: Vec<C64>, values: Vec<CMat>) -> Result<Self> {
        if points.is_empty() {
            return Err(param("a sample set needs at least one point"));
        }
        if points.len() != values.len() {
            return Err(param(format!(
                "{} points but {} sample matrices",
                points.len(),
                values.len()
            )));
        }
        let (rows, cols) = values[0].shape();
        if rows == 0 || cols == 0 {
            return Err(param("sample matrices must be nonempty"));
        }
        if let Some(i) = values.iter().position(|v| v.shape() != (rows, cols)) {
            return Err(param(format!(
                "sample {i} has shape {:?}, expected ({rows}, {cols})",
                values[i].shape()
            )));
        }
        if let Some((i, j)) = first_duplicate(&points) {
            return Err(param(format!(
                "sample points {i} and {j} coincide ({})",
                points[i]
            )));
        }
        Ok(Self {
            points,
            values,
            rows,
            cols,
        })
    }

    /// Scalar samples as a 1×1 set.
    pub fn scalar(points: Vec<C64>, values: &[C64]) -> Result<Self> {
        Self::new(points, values.iter().map(|&v| CMat::scalar(v)).collect())
    }

    /// Samples an evaluator at the given points.
    pub fn from_fn(points: Vec<C64>, mut f: impl FnMut(C64) -> CMat) -> Result<Self> {
        let values = points.iter().map(|&z| f(z)).collect();
        Self::new(points, values)
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn values(&self) -> &[CMat] {
        &self.values
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Samples of entry `(i, j)` as a vector over the points.
    pub fn entry(&self, i: usize, j: usize) -> Vec<C64> {
        self.values.iter().map(|v| v[(i, j)]).collect()
    }

    /// `ℓ⁻¹ Σ F(λ_i)`.
    pub fn mean(&self) -> CMat {
        let mut acc = CMat::zeros(self.rows, self.cols);
        for v in &self.values {
            acc.axpy(C64::new(1.0, 0.0), v);
        }
        acc.scale(C64::new(1.0 / self.len() as f64, 0.0))
    }

    /// Largest Frobenius norm among the samples.
    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(CMat::norm_fro).fold(0.0, f64::max)
    }

    /// Subset by index, preserving order.
    pub fn select(&self, idx: &[usize]) -> Result<Self> {
        Self::new(
            idx.iter().map(|&i| self.points[i]).collect(),
            idx.iter().map(|&i| self.values[i].clone()).collect(),
        )
    }
}

fn first_duplicate(points: &[C64]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a]
            .re
            .total_cmp(&points[b].re)
            .then(points[a].im.total_cmp(&points[b].im))
    });
    order.windows(2).find_map(|w| {
        (points[w[0]] == points[w[1]]).then(|| (w[0].min(w[1]), w[0].max(w[1])))
    })
}

/// Gaussian noise with standard deviation `std` per real and imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub std: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(std: f64, seed: u64) -> Result<Self> {
        if !(std >= 0.0) || !std.is_finite() {
            return Err(param(format!("noise level must be finite and >= 0, got {std}")));
        }
        Ok(Self { std, seed })
    }
}

/// Anything that can be evaluated to an `m × n` matrix at a point.
pub trait Evaluator {
    fn shape(&self) -> (usize, usize);
    fn eval(&self, z: C64) -> Result<CMat>;
}

impl<E: Evaluator + ?Sized> Evaluator for &E {
    fn shape(&self) -> (usize, usize) {
        (**self).shape()
    }

    fn eval(&self, z: C64) -> Result<CMat> {
        (**self).eval(z)
    }
}

/// Adapts a closure to [`Evaluator`].
pub struct FnEvaluator<F> {
    shape: (usize, usize),
    f: F,
}

impl<F: Fn(C64) -> CMat> FnEvaluator<F> {
    pub fn new(rows: usize, cols: usize, f: F) -> Self {
        Self {
            shape: (rows, cols),
            f,
        }
    }
}

impl<F: Fn(C64) -> CMat> Evaluator for FnEvaluator<F> {
    fn shape(&self) -> (usize, usize) {
        self.shape
    }

    fn eval(&self, z: C64) -> Result<CMat> {
        Ok((self.f)(z))
    }
}

/// Complex Gaussian vector of unit 2-norm from `ChaCha8Rng::seed_from_u64(seed)`.
pub fn random_unit_vector(len: usize, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<C64> = (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            C64::new(re, im)
        })
        .collect();
    let n = crate::matrix::norm2(&v);
    v.into_iter().map(|x| x / n).collect()
}

/// `ℓ` points `i·10^t`, `t` equally spaced in `[log10 a, log10 b]`.
pub fn logspace_imaginary(a: f64, b: f64, ell: usize) -> Result<Vec<C64>> {
    if !(a > 0.0 && b > a && b.is_finite()) {
        return Err(param(format!("need 0 < a < b, got a = {a}, b = {b}")));
    }
    if ell < 2 {
        return Err(param(format!("need at least 2 points, got {ell}")));
    }
    let (la, lb) = (a.log10(), b.log10());
    let step = (lb - la) / (ell - 1) as f64;
    Ok((0..ell)
        .map(|k| {
            let y = match k {
                0 => a,
                k if k == ell - 1 => b,
                _ => 10f64.powf(la + step * k as f64),
            };
            C64::new(0.0, y)
        })
        .collect())
}

/// `( ℓ⁻¹ Σ ‖F(λ_i) − R(λ_i)‖_F² )^{1/2}`.
pub fn rmse<E: Evaluator + ?Sized>(samples: &SampleSet, model: &E) -> Result<f64> {
    if model.shape() != samples.shape() {
        return Err(Error::Contract(format!(
            "model shape {:?} differs from sample shape {:?}",
            model.shape(),
            samples.shape()
        )));
    }
    let mut acc = 0.0;
    for (z, f) in samples.points().iter().zip(samples.values()) {
        let r = model.eval(*z)?;
        if r.shape() != samples.shape() {
            return Err(Error::Contract(format!(
                "model returned shape {:?} at {z}",
                r.shape()
            )));
        }
        acc += f.dist_fro_sqr(&r);
    }
    Ok((acc / samples.len() as f64).sqrt())
}

/// Perturbs every real and imaginary part independently by `N(0, τ²)`.
///
/// Draws come from `ChaCha8Rng::seed_from_u64(seed)` in sample order,
/// column-major within each matrix, real part before imaginary part.
pub fn add_noise(samples: &SampleSet, spec: NoiseSpec) -> SampleSet {
    if spec.std == 0.0 {
        return samples.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = samples.clone();
    for v in &mut out.values {
        for x in v.as_mut_slice() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *x += C64::new(spec.std * re, spec.std * im);
        }
    }
    out
}
