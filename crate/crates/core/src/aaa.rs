//! Greedy AAA drivers: scalar AAA, set-valued AAA and surrogate AAA.

use alloc::format;
use alloc::vec::Vec;

use crate::barycentric::{BlockBaryA, ScalarBarycentric};
use crate::error::{param, Result};
use crate::fit::Fit;
use crate::kernels::trailing_right_singular_vector;
use crate::matrix::{CMat, C64};
use crate::sample::{random_unit_vector, Evaluator, SampleSet};

/// Stopping rules shared by the AAA family and block-AAA.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AaaOptions {
    /// Stop once the greedy error is at most this.
    pub tol: f64,
    /// Largest order `d` (so at most `d + 1` support points).
    pub max_order: usize,
    /// Compare `tol` against the error divided by `max_i ‖F(λ_i)‖_F`.
    pub relative: bool,
}

impl Default for AaaOptions {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_order: 100,
            relative: true,
        }
    }
}

impl AaaOptions {
    /// Runs to exactly `order` unless the samples are matched first.
    pub fn order(order: usize) -> Self {
        Self {
            tol: 0.0,
            max_order: order,
            relative: false,
        }
    }

    pub(crate) fn threshold(&self, samples: &SampleSet) -> f64 {
        if self.relative {
            self.tol * samples.max_norm()
        } else {
            self.tol
        }
    }
}

/// Index of the largest error (lowest index on ties) over `candidates`.
pub(crate) fn greedy_pick(errors: &[Option<f64>]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, e) in errors.iter().enumerate() {
        if let Some(e) = *e {
            if best.map_or(true, |(_, b)| e > b) {
                best = Some((i, e));
            }
        }
    }
    best
}

/// Scalar AAA. Weights have unit 2-norm.
pub fn aaa_scalar(points: &[C64], values: &[C64], opts: AaaOptions) -> Result<Fit<ScalarBarycentric>> {
    if points.is_empty() {
        return Err(param("AAA needs at least one sample"));
    }
    let samples = SampleSet::scalar(points.to_vec(), values)?;
    let fit = set_valued_aaa(&samples, opts)?;
    Ok(fit.map(|m| {
        let values = m.values.iter().map(|v| v[(0, 0)]).collect();
        ScalarBarycentric {
            support: m.support,
            weights: m.weights,
            values,
        }
    }))
}

/// Set-valued AAA: common support points and scalar weights for all entries.
pub fn set_valued_aaa(samples: &SampleSet, opts: AaaOptions) -> Result<Fit<BlockBaryA>> {
    let (m, n) = samples.shape();
    let entries = m * n;
    let ell = samples.len();
    let threshold = opts.threshold(samples);
    let mean = samples.mean();

    let mut remaining: Vec<usize> = (0..ell).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut model: Option<BlockBaryA> = None;
    let mut trace = Vec::new();
    let mut warnings = Vec::new();

    loop {
        let errors: Vec<Option<f64>> = remaining
            .iter()
            .map(|&i| {
                let f = &samples.values()[i];
                match &model {
                    None => Some(f.dist_fro_sqr(&mean).sqrt()),
                    Some(r) => match r.eval(samples.points()[i]) {
                        Ok(v) => Some(f.dist_fro_sqr(&v).sqrt()),
                        Err(e) => {
                            warnings.push(format!("skipped in greedy scan: {e}"));
                            None
                        }
                    },
                }
            })
            .collect();
        let Some((pos, err)) = greedy_pick(&errors) else {
            break;
        };
        trace.push(err);
        if err <= threshold && model.is_some() {
            break;
        }
        let j = chosen.len();
        chosen.push(remaining.remove(pos));

        let weights = if j == 0 && (remaining.is_empty() || err <= threshold) {
            alloc::vec![C64::new(1.0, 0.0)]
        } else {
            if remaining.len() * entries < j + 1 {
                chosen.pop();
                warnings.push(format!(
                    "stopped at order {}: too few remaining samples for the weight problem",
                    j.saturating_sub(1)
                ));
                break;
            }
            let a = stacked_loewner(samples, &chosen, &remaining);
            trailing_right_singular_vector(&a)?
        };
        let r = BlockBaryA::new(
            chosen.iter().map(|&i| samples.points()[i]).collect(),
            weights,
            chosen.iter().map(|&i| samples.values()[i].clone()).collect(),
        )?;
        let done = err <= threshold || j >= opts.max_order || remaining.is_empty();
        model = Some(r);
        if done {
            break;
        }
    }
    let model = model.ok_or_else(|| param("AAA produced no model"))?;
    Ok(Fit {
        model,
        trace,
        warnings,
    })
}

/// Rows `(entry, sample)`, columns over the support points.
fn stacked_loewner(samples: &SampleSet, chosen: &[usize], remaining: &[usize]) -> CMat {
    let (m, n) = samples.shape();
    let rows = remaining.len();
    let pts = samples.points();
    let vals = samples.values();
    CMat::from_fn(m * n * rows, chosen.len(), |r, k| {
        let (e, ii) = (r / rows, r % rows);
        let (a, b) = (e % m, e / m);
        let i = remaining[ii];
        let s = chosen[k];
        (vals[i][(a, b)] - vals[s][(a, b)]) / (pts[i] - pts[s])
    })
}

/// Surrogate AAA on `f(z) = aᵀ F(z) b`, reusing its support and weights.
pub fn surrogate_aaa(samples: &SampleSet, a: &[C64], b: &[C64], opts: AaaOptions) -> Result<Fit<BlockBaryA>> {
    let (m, n) = samples.shape();
    if a.len() != m || b.len() != n {
        return Err(param(format!(
            "direction lengths ({}, {}) do not match sample shape ({m}, {n})",
            a.len(),
            b.len()
        )));
    }
    let zero = C64::new(0.0, 0.0);
    if a.iter().all(|x| *x == zero) || b.iter().all(|x| *x == zero) {
        return Err(param("surrogate directions must be nonzero"));
    }
    let f: Vec<C64> = samples
        .values()
        .iter()
        .map(|v| {
            let vb = v.mul_vec(b);
            a.iter().zip(&vb).map(|(x, y)| x * y).sum()
        })
        .collect();
    let scalar = aaa_scalar(samples.points(), &f, opts)?;
    let values = scalar
        .model
        .support
        .iter()
        .map(|z| {
            let i = samples.points().iter().position(|p| p == z).unwrap_or(0);
            samples.values()[i].clone()
        })
        .collect();
    let model = BlockBaryA::new(scalar.model.support, scalar.model.weights, values)?;
    Ok(Fit {
        model,
        trace: scalar.trace,
        warnings: scalar.warnings,
    })
}

/// Surrogate AAA with unit-norm random directions drawn from `seed`.
pub fn surrogate_aaa_seeded(samples: &SampleSet, seed: u64, opts: AaaOptions) -> Result<Fit<BlockBaryA>> {
    let a = random_unit_vector(samples.rows(), seed);
    let b = random_unit_vector(samples.cols(), seed.wrapping_add(0x9e37_79b9_7f4a_7c15));
    surrogate_aaa(samples, &a, &b, opts)
}
