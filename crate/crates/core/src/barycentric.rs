//! Scalar and matrix-valued barycentric forms.
//!
//! * [`ScalarBarycentric`]: `r(z) = Σ w_k f_k/(z−z_k) / Σ w_k/(z−z_k)`.
//! * [`BlockBaryA`]: the same with matrix values `F_k`.
//! * [`BlockBaryB`]: matrix weights, `R(z) = (Σ W_k/(z−z_k))⁻¹ Σ W_k F_k/(z−z_k)`.
//! * [`BlockBaryC`]: `R(z) = (Σ D_k/(z−z_k))⁻¹ Σ C_k/(z−z_k)`, non-interpolatory.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{eval_err, param, Error, Result};
use crate::kernels::{trailing_left_singular_block, trailing_left_singular_vectors, Lu};
use crate::matrix::{CMat, C64};
use crate::sample::{Evaluator, SampleSet};

/// Condition number above which a denominator solve is refused.
pub const COND_MAX: f64 = 1e14;

/// Tolerance for recognising a support point: `10 ε max|z_k|`.
pub fn support_tolerance(support: &[C64]) -> f64 {
    10.0 * f64::EPSILON * support.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Index of the support point nearest to `z` if within `tol`.
fn support_hit(support: &[C64], z: C64, tol: f64) -> Option<usize> {
    let (k, d) = support
        .iter()
        .enumerate()
        .map(|(k, s)| (k, (z - s).norm()))
        .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    (d <= tol).then_some(k)
}

fn check_support(support: &[C64]) -> Result<()> {
    if support.is_empty() {
        return Err(param("a barycentric form needs at least one support point"));
    }
    for i in 0..support.len() {
        for j in i + 1..support.len() {
            if support[i] == support[j] {
                return Err(param(format!("support points {i} and {j} coincide")));
            }
        }
    }
    Ok(())
}

fn check_disjoint(samples: &SampleSet, support: &[C64]) -> Result<()> {
    for (k, z) in support.iter().enumerate() {
        if let Some(i) = samples.points().iter().position(|p| p == z) {
            return Err(param(format!(
                "support point {k} coincides with sample point {i} ({z})"
            )));
        }
    }
    Ok(())
}

/// Solves `D X = N`, refusing ill-conditioned `D`.
pub(crate) fn guarded_solve(d: &CMat, n: &CMat, z: C64) -> Result<CMat> {
    let lu = Lu::new(d);
    let cond = lu.cond_one();
    if !(cond <= COND_MAX) {
        return Err(eval_err(
            z,
            format!("denominator matrix is singular (condition {cond:e})"),
        ));
    }
    lu.solve(n)
        .ok_or_else(|| eval_err(z, "denominator matrix is singular"))
}

/// Scalar barycentric interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarBarycentric {
    pub support: Vec<C64>,
    pub weights: Vec<C64>,
    pub values: Vec<C64>,
}

impl ScalarBarycentric {
    pub fn new(support: Vec<C64>, weights: Vec<C64>, values: Vec<C64>) -> Result<Self> {
        check_support(&support)?;
        if weights.len() != support.len() || values.len() != support.len() {
            return Err(param("support, weights and values must have equal lengths"));
        }
        if weights.iter().all(|w| *w == C64::new(0.0, 0.0)) {
            return Err(param("at least one barycentric weight must be nonzero"));
        }
        Ok(Self {
            support,
            weights,
            values,
        })
    }

    /// Order `d` (number of support points minus one).
    pub fn order(&self) -> usize {
        self.support.len() - 1
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        if self.support.len() == 1 {
            return Ok(self.values[0]);
        }
        if let Some(k) = support_hit(&self.support, z, support_tolerance(&self.support)) {
            return Ok(self.values[k]);
        }
        let mut num = C64::new(0.0, 0.0);
        let mut den = C64::new(0.0, 0.0);
        for ((s, w), f) in self.support.iter().zip(&self.weights).zip(&self.values) {
            let c = w / (z - s);
            num += c * f;
            den += c;
        }
        if den == C64::new(0.0, 0.0) || !den.is_finite() {
            return Err(eval_err(z, "barycentric denominator vanishes"));
        }
        Ok(num / den)
    }
}

impl Evaluator for ScalarBarycentric {
    fn shape(&self) -> (usize, usize) {
        (1, 1)
    }

    fn eval(&self, z: C64) -> Result<CMat> {
        ScalarBarycentric::eval(self, z).map(CMat::scalar)
    }
}

/// Matrix values, common scalar weights.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockBaryA {
    pub support: Vec<C64>,
    pub weights: Vec<C64>,
    pub values: Vec<CMat>,
}

impl BlockBaryA {
    pub fn new(support: Vec<C64>, weights: Vec<C64>, values: Vec<CMat>) -> Result<Self> {
        check_support(&support)?;
        if weights.len() != support.len() || values.len() != support.len() {
            return Err(param("support, weights and values must have equal lengths"));
        }
        if weights.iter().all(|w| *w == C64::new(0.0, 0.0)) {
            return Err(param("at least one barycentric weight must be nonzero"));
        }
        let shape = values[0].shape();
        if values.iter().any(|v| v.shape() != shape) {
            return Err(param("all support values must have the same shape"));
        }
        Ok(Self {
            support,
            weights,
            values,
        })
    }

    pub fn order(&self) -> usize {
        self.support.len() - 1
    }

    /// The equivalent bary-C form with `C_k = w_k F_k`, `D_k = w_k I`.
    pub fn to_bary_c(&self) -> BlockBaryC {
        let m = self.values[0].rows();
        BlockBaryC {
            support: self.support.clone(),
            numer: self
                .weights
                .iter()
                .zip(&self.values)
                .map(|(w, f)| f.scale(*w))
                .collect(),
            denom: self
                .weights
                .iter()
                .map(|w| CMat::identity(m).scale(*w))
                .collect(),
        }
    }
}

impl Evaluator for BlockBaryA {
    fn shape(&self) -> (usize, usize) {
        self.values[0].shape()
    }

    fn eval(&self, z: C64) -> Result<CMat> {
        if self.support.len() == 1 {
            return Ok(self.values[0].clone());
        }
        if let Some(k) = support_hit(&self.support, z, support_tolerance(&self.support)) {
            return Ok(self.values[k].clone());
        }
        let (m, n) = self.shape();
        let mut num = CMat::zeros(m, n);
        let mut den = C64::new(0.0, 0.0);
        for ((s, w), f) in self.support.iter().zip(&self.weights).zip(&self.values) {
            let c = w / (z - s);
            num.axpy(c, f);
            den += c;
        }
        if den == C64::new(0.0, 0.0) || !den.is_finite() {
            return Err(eval_err(z, "barycentric denominator vanishes"));
        }
        Ok(num.scale(C64::new(1.0, 0.0) / den))
    }
}

/// Matrix weights `W_k` (m×m), values `F_k` (m×n).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockBaryB {
    support: Vec<C64>,
    weights: Vec<CMat>,
    values: Vec<CMat>,
    weighted: Vec<CMat>,
}

impl BlockBaryB {
    pub fn new(support: Vec<C64>, weights: Vec<CMat>, values: Vec<CMat>) -> Result<Self> {
        check_support(&support)?;
        if weights.len() != support.len() || values.len() != support.len() {
            return Err(param("support, weights and values must have equal lengths"));
        }
        let (m, n) = values[0].shape();
        if values.iter().any(|v| v.shape() != (m, n)) {
            return Err(param("all support values must have the same shape"));
        }
        if weights.iter().any(|w| w.shape() != (m, m)) {
            return Err(param(format!("weight matrices must be {m}x{m}")));
        }
        let weighted = weights.iter().zip(&values).map(|(w, f)| w.matmul(f)).collect();
        Ok(Self {
            support,
            weights,
            values,
            weighted,
        })
    }

    pub fn order(&self) -> usize {
        self.support.len() - 1
    }

    pub fn support(&self) -> &[C64] {
        &self.support
    }

    pub fn weights(&self) -> &[CMat] {
        &self.weights
    }

    pub fn values(&self) -> &[CMat] {
        &self.values
    }

    /// `Σ ‖W_k‖_F²`.
    pub fn weight_norm_sqr(&self) -> f64 {
        self.weights.iter().map(CMat::norm_fro_sqr).sum()
    }

    /// The equivalent bary-C form with `C_k = W_k F_k`, `D_k = W_k`.
    pub fn to_bary_c(&self) -> BlockBaryC {
        BlockBaryC {
            support: self.support.clone(),
            numer: self.weighted.clone(),
            denom: self.weights.clone(),
        }
    }
}

impl Evaluator for BlockBaryB {
    fn shape(&self) -> (usize, usize) {
        self.values[0].shape()
    }

    fn eval(&self, z: C64) -> Result<CMat> {
        if let Some(k) = support_hit(&self.support, z, support_tolerance(&self.support)) {
            return Ok(self.values[k].clone());
        }
        let (m, n) = self.shape();
        let mut num = CMat::zeros(m, n);
        let mut den = CMat::zeros(m, m);
        for ((s, w), wf) in self.support.iter().zip(&self.weights).zip(&self.weighted) {
            let c = C64::new(1.0, 0.0) / (z - s);
            num.axpy(c, wf);
            den.axpy(c, w);
        }
        guarded_solve(&den, &num, z)
    }
}

/// Numerators `C_k` (m×n) and denominators `D_k` (m×m).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockBaryC {
    pub support: Vec<C64>,
    pub numer: Vec<CMat>,
    pub denom: Vec<CMat>,
}

impl BlockBaryC {
    pub fn new(support: Vec<C64>, numer: Vec<CMat>, denom: Vec<CMat>) -> Result<Self> {
        check_support(&support)?;
        if numer.len() != support.len() || denom.len() != support.len() {
            return Err(param("support, numerators and denominators must have equal lengths"));
        }
        let (m, n) = numer[0].shape();
        if numer.iter().any(|c| c.shape() != (m, n)) {
            return Err(param("all numerator matrices must have the same shape"));
        }
        if denom.iter().any(|d| d.shape() != (m, m)) {
            return Err(param(format!("denominator matrices must be {m}x{m}")));
        }
        Ok(Self {
            support,
            numer,
            denom,
        })
    }

    pub fn order(&self) -> usize {
        self.support.len() - 1
    }

    /// Joint Frobenius norm of all `C_k` and `D_k`.
    pub fn norm(&self) -> f64 {
        self.numer
            .iter()
            .chain(&self.denom)
            .map(CMat::norm_fro_sqr)
            .sum::<f64>()
            .sqrt()
    }
}

impl Evaluator for BlockBaryC {
    fn shape(&self) -> (usize, usize) {
        self.numer[0].shape()
    }

    fn eval(&self, z: C64) -> Result<CMat> {
        if let Some(k) = support_hit(&self.support, z, support_tolerance(&self.support)) {
            return guarded_solve(&self.denom[k], &self.numer[k], z);
        }
        let (m, n) = self.shape();
        let mut num = CMat::zeros(m, n);
        let mut den = CMat::zeros(m, m);
        for ((s, c), d) in self.support.iter().zip(&self.numer).zip(&self.denom) {
            let t = C64::new(1.0, 0.0) / (z - s);
            num.axpy(t, c);
            den.axpy(t, d);
        }
        guarded_solve(&den, &num, z)
    }
}

/// Block Loewner matrix with block `(k, i) = (F(λ_i) − F_k)/(λ_i − z_k)`,
/// of size `m(d+1) × ℓn`.
pub fn block_loewner(samples: &SampleSet, support: &[(C64, CMat)]) -> Result<CMat> {
    let (m, n) = samples.shape();
    let zs: Vec<C64> = support.iter().map(|s| s.0).collect();
    check_support(&zs)?;
    check_disjoint(samples, &zs)?;
    if let Some(k) = support.iter().position(|s| s.1.shape() != (m, n)) {
        return Err(param(format!("support value {k} has the wrong shape")));
    }
    let ell = samples.len();
    let mut l = CMat::zeros(m * support.len(), n * ell);
    for (k, (zk, fk)) in support.iter().enumerate() {
        for (i, (li, fi)) in samples.points().iter().zip(samples.values()).enumerate() {
            let t = C64::new(1.0, 0.0) / (li - zk);
            for b in 0..n {
                for a in 0..m {
                    l[(k * m + a, i * n + b)] = (fi[(a, b)] - fk[(a, b)]) * t;
                }
            }
        }
    }
    Ok(l)
}

/// Weight matrices minimizing the linearized bary-B residual `‖𝕎𝕃‖_F`
/// subject to `Σ ‖W_k‖_F² = 1`.
pub fn solve_weights_bary_b(samples: &SampleSet, support: &[(C64, CMat)]) -> Result<Vec<CMat>> {
    let m = samples.rows();
    let l = block_loewner(samples, support)?;
    let w = trailing_left_singular_block(&l, m)?;
    Ok((0..support.len()).map(|k| w.columns(k * m, m)).collect())
}

/// Least-squares bary-C fit on the given support points.
///
/// The stacked matrix has `n(d+1)` rows of `−I/(λ_i − z_k)` blocks (`n×n`)
/// followed by `m(d+1)` rows of `F(λ_i)/(λ_i − z_k)` blocks; its `m`
/// trailing left singular vectors give `[C_0..C_d, D_0..D_d]`.
pub fn solve_weights_bary_c(samples: &SampleSet, support: &[C64]) -> Result<BlockBaryC> {
    check_support(support)?;
    check_disjoint(samples, support)?;
    let (m, n) = samples.shape();
    let d1 = support.len();
    let ell = samples.len();
    let top = n * d1;
    let mut s = CMat::zeros(top + m * d1, n * ell);
    for (k, zk) in support.iter().enumerate() {
        for (i, (li, fi)) in samples.points().iter().zip(samples.values()).enumerate() {
            let t = C64::new(1.0, 0.0) / (li - zk);
            for b in 0..n {
                s[(k * n + b, i * n + b)] = -t;
                for a in 0..m {
                    s[(top + k * m + a, i * n + b)] = fi[(a, b)] * t;
                }
            }
        }
    }
    if s.rows() < m {
        return Err(Error::Contract("stacked bary-C matrix has too few rows".into()));
    }
    let w = trailing_left_singular_vectors(&s, m)?;
    let numer = (0..d1).map(|k| w.columns(k * n, n)).collect();
    let denom = (0..d1).map(|k| w.columns(top + k * m, m)).collect();
    BlockBaryC::new(support.to_vec(), numer, denom)
}

#[cfg(test)]
mod tests;
