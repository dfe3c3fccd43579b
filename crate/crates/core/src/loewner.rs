//! Loewner framework: left/right data partition, (shifted) Loewner matrices,
//! truncated-SVD projection and the resulting descriptor realization.

use alloc::format;
use alloc::vec::Vec;

use crate::barycentric::guarded_solve;
use crate::error::{param, Result};
use crate::fit::Fit;
use crate::kernels::{gen_eig_finite, svd};
use crate::matrix::{CMat, C64};
use crate::sample::{Evaluator, SampleSet};

/// Relative singular value threshold below which the requested order is
/// reported as exceeding the numerical rank.
pub const EPS_RANK: f64 = 1e-12;

/// `R(z) = Cr (Ar − z Er)⁻¹ Br`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoewnerModel {
    pub er: CMat,
    pub ar: CMat,
    pub br: CMat,
    pub cr: CMat,
}

impl LoewnerModel {
    pub fn order(&self) -> usize {
        self.er.rows()
    }
}

impl Evaluator for LoewnerModel {
    fn shape(&self) -> (usize, usize) {
        (self.cr.rows(), self.br.cols())
    }

    fn eval(&self, z: C64) -> Result<CMat> {
        let mut pencil = self.ar.clone();
        pencil.axpy(-z, &self.er);
        Ok(self.cr.matmul(&guarded_solve(&pencil, &self.br, z)?))
    }
}

/// Left and right halves of a sample set.
#[derive(Debug, Clone)]
pub struct Partition {
    pub left: SampleSet,
    pub right: SampleSet,
    pub warning: Option<alloc::string::String>,
}

/// Interleaved split by ascending `|λ|`: first, third, ... point to the left,
/// second, fourth, ... to the right. With odd `ℓ` the last sample is dropped.
pub fn partition(samples: &SampleSet) -> Result<Partition> {
    let ell = samples.len();
    if ell < 2 {
        return Err(param(format!("a partition needs at least 2 samples, got {ell}")));
    }
    let used = ell - ell % 2;
    let warning = (used < ell).then(|| format!("odd sample count {ell}: last sample dropped"));
    let mut idx: Vec<usize> = (0..used).collect();
    let pts = samples.points();
    idx.sort_by(|&a, &b| pts[a].norm().total_cmp(&pts[b].norm()).then(a.cmp(&b)));
    let left: Vec<usize> = idx.iter().step_by(2).copied().collect();
    let right: Vec<usize> = idx.iter().skip(1).step_by(2).copied().collect();
    Ok(Partition {
        left: samples.select(&left)?,
        right: samples.select(&right)?,
        warning,
    })
}

/// Scalar Loewner model of order `d`.
pub fn loewner_scalar(points: &[C64], values: &[C64], d: usize) -> Result<Fit<LoewnerModel>> {
    let samples = SampleSet::scalar(points.to_vec(), values)?;
    loewner_block(&samples, d, None)
}

/// Left directions `ℓ_i ∈ C^m` and right directions `r_j ∈ C^n`, one per
/// point of the respective half.
#[derive(Debug, Clone, PartialEq)]
pub struct Directions {
    pub left: Vec<Vec<C64>>,
    pub right: Vec<Vec<C64>>,
}

impl Directions {
    /// Standard basis vectors, cycling.
    pub fn unit_cycle(count: usize, m: usize, n: usize) -> Self {
        let e = |len: usize, k: usize| {
            let mut v = alloc::vec![C64::new(0.0, 0.0); len];
            v[k % len] = C64::new(1.0, 0.0);
            v
        };
        Self {
            left: (0..count).map(|i| e(m, i)).collect(),
            right: (0..count).map(|j| e(n, j)).collect(),
        }
    }
}

/// Tangential block Loewner model of order `d`. The trace holds the singular
/// values of the Loewner matrix divided by the largest.
pub fn loewner_block(samples: &SampleSet, d: usize, directions: Option<&Directions>) -> Result<Fit<LoewnerModel>> {
    let part = partition(samples)?;
    let k = part.left.len();
    if d == 0 || d > k {
        return Err(param(format!("order {d} outside 1..={k}")));
    }
    let (m, n) = samples.shape();
    let default;
    let dir = match directions {
        Some(dir) => dir,
        None => {
            default = Directions::unit_cycle(k, m, n);
            &default
        }
    };
    if dir.left.len() != k || dir.right.len() != k {
        return Err(param(format!("need {k} left and right directions")));
    }
    if dir.left.iter().any(|l| l.len() != m) || dir.right.iter().any(|r| r.len() != n) {
        return Err(param(format!("directions must have lengths {m} (left) and {n} (right)")));
    }
    let x = part.left.points();
    let y = part.right.points();

    // ℓ_i^* F(x_i): rows of V; F(y_j) r_j: columns of W
    let v = CMat::from_fn(k, n, |i, c| {
        let f = &part.left.values()[i];
        (0..m).map(|a| dir.left[i][a].conj() * f[(a, c)]).sum()
    });
    let w = CMat::from_fn(m, k, |a, j| {
        let f = &part.right.values()[j];
        (0..n).map(|c| f[(a, c)] * dir.right[j][c]).sum()
    });
    let mut l = CMat::zeros(k, k);
    let mut ls = CMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            // ℓ_i^* F(x_i) r_j and ℓ_i^* F(y_j) r_j
            let vr: C64 = (0..n).map(|c| v[(i, c)] * dir.right[j][c]).sum();
            let lw: C64 = (0..m).map(|a| dir.left[i][a].conj() * w[(a, j)]).sum();
            let den = x[i] - y[j];
            l[(i, j)] = (vr - lw) / den;
            ls[(i, j)] = (x[i] * vr - y[j] * lw) / den;
        }
    }

    let f = svd(&l)?;
    let smax = f.s.first().copied().unwrap_or(0.0);
    let mut warnings = Vec::new();
    warnings.extend(part.warning);
    if f.s[d - 1] <= EPS_RANK * smax {
        warnings.push(format!("order {d} exceeds the numerical rank of the Loewner matrix"));
    }
    let xs = f.u.columns(0, d);
    let zs = f.v.columns(0, d);
    let model = LoewnerModel {
        er: xs.adjoint_mul(&l.matmul(&zs)),
        ar: xs.adjoint_mul(&ls.matmul(&zs)),
        br: xs.adjoint_mul(&v),
        cr: w.matmul(&zs),
    };
    let trace = f
        .s
        .iter()
        .map(|s| if smax > 0.0 { s / smax } else { 0.0 })
        .collect();
    Ok(Fit {
        model,
        trace,
        warnings,
    })
}

/// Finite generalized eigenvalues of `(Ar, Er)`.
pub fn model_poles(model: &LoewnerModel) -> Result<Vec<C64>> {
    gen_eig_finite(&model.ar, &model.er)
}
