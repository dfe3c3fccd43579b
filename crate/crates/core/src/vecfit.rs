//! Vector fitting: pole relocation by linearized least squares, for scalar
//! data and for matrix data with a common set of poles.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::barycentric::support_tolerance;
use crate::error::{eval_err, param, Result};
use crate::fit::Fit;
use crate::kernels::{eigvals, lstsq_rank, Qr};
use crate::matrix::{CMat, C64};
use crate::sample::{rmse, Evaluator, SampleSet};

/// `R(z) = D + Σ C_k/(z − ξ_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleResidue {
    pub d: CMat,
    pub poles: Vec<C64>,
    pub residues: Vec<CMat>,
}

impl PoleResidue {
    pub fn new(d: CMat, poles: Vec<C64>, residues: Vec<CMat>) -> Result<Self> {
        if poles.len() != residues.len() {
            return Err(param(format!(
                "{} poles but {} residues",
                poles.len(),
                residues.len()
            )));
        }
        if residues.iter().any(|c| c.shape() != d.shape()) {
            return Err(param("residues must have the shape of the constant term"));
        }
        for (i, p) in poles.iter().enumerate() {
            if let Some(j) = poles[..i].iter().position(|q| q == p) {
                return Err(param(format!("poles {j} and {i} coincide")));
            }
        }
        Ok(Self { d, poles, residues })
    }

    pub fn degree(&self) -> usize {
        self.poles.len()
    }
}

impl Evaluator for PoleResidue {
    fn shape(&self) -> (usize, usize) {
        self.d.shape()
    }

    fn eval(&self, z: C64) -> Result<CMat> {
        let tol = support_tolerance(&self.poles);
        let mut out = self.d.clone();
        for (p, c) in self.poles.iter().zip(&self.residues) {
            if (z - p).norm() <= tol {
                return Err(eval_err(z, "evaluation at a pole"));
            }
            out.axpy(C64::new(1.0, 0.0) / (z - p), c);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VfOptions {
    pub iterations: usize,
    /// Starting poles; `None` picks them from the sampled band.
    pub initial_poles: Option<Vec<C64>>,
    /// Reflect poles with positive real part into the left half-plane.
    pub enforce_stability: bool,
}

impl Default for VfOptions {
    fn default() -> Self {
        Self {
            iterations: 5,
            initial_poles: None,
            enforce_stability: false,
        }
    }
}

impl VfOptions {
    pub fn iterations(iterations: usize) -> Self {
        Self {
            iterations,
            ..Self::default()
        }
    }
}

/// Pairs `−β/100 ± βi`, `β` log-spaced between the smallest and largest
/// sample modulus; an odd degree adds `−β` at the geometric midpoint.
pub fn initial_poles(points: &[C64], d: usize) -> Vec<C64> {
    let hi = points.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0e-300);
    let mut lo = points.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if !(lo > 0.0) {
        lo = hi * 1e-3;
    }
    let pairs = d / 2;
    let mut out = Vec::with_capacity(d);
    let (la, lb) = (lo.log10(), hi.log10());
    for k in 0..pairs {
        let t = if pairs == 1 { 0.5 } else { k as f64 / (pairs - 1) as f64 };
        let beta = 10f64.powf(la + t * (lb - la));
        out.push(C64::new(-beta / 100.0, beta));
        out.push(C64::new(-beta / 100.0, -beta));
    }
    if d % 2 == 1 {
        out.push(C64::new(-(lo * hi).sqrt(), 0.0));
    }
    out
}

/// Scalar vector fitting of degree `d`.
pub fn vf_scalar(points: &[C64], values: &[C64], d: usize, opts: &VfOptions) -> Result<Fit<PoleResidue>> {
    let samples = SampleSet::scalar(points.to_vec(), values)?;
    vf_matrix(&samples, d, opts)
}

/// Vector fitting of all `mn` entries with one common denominator.
pub fn vf_matrix(samples: &SampleSet, d: usize, opts: &VfOptions) -> Result<Fit<PoleResidue>> {
    if opts.iterations == 0 {
        return Err(param("vector fitting needs at least one iteration"));
    }
    let ell = samples.len();
    if ell < 2 * d + 1 {
        return Err(param(format!("{ell} samples are too few for degree {d} (need {})", 2 * d + 1)));
    }
    let mut poles = match &opts.initial_poles {
        Some(p) if p.len() != d => {
            return Err(param(format!("{} initial poles for degree {d}", p.len())));
        }
        Some(p) => p.clone(),
        None => initial_poles(samples.points(), d),
    };
    let mut warnings = Vec::new();
    let mut trace = Vec::new();
    if d > 0 {
        for it in 0..opts.iterations {
            poles = relocate(samples, &poles, &mut warnings)?;
            if opts.enforce_stability {
                for p in &mut poles {
                    if p.re > 0.0 {
                        *p = -p.conj();
                    }
                }
            }
            separate(&mut poles);
            let (model, _) = fit_residues(samples, &poles)?;
            match rmse(samples, &model) {
                Ok(e) => trace.push(e),
                Err(e) => warnings.push(format!("iteration {it}: {e}")),
            }
        }
    }
    let (model, rank) = fit_residues(samples, &poles)?;
    if rank < d + 1 {
        warnings.push(format!("residue least squares is rank deficient ({rank} < {})", d + 1));
    }
    if d == 0 {
        trace.push(rmse(samples, &model)?);
    }
    Ok(Fit {
        model,
        trace,
        warnings,
    })
}

fn cauchy(points: &[C64], poles: &[C64], with_const: bool) -> CMat {
    let d = poles.len();
    CMat::from_fn(points.len(), d + with_const as usize, |i, k| {
        if k < d {
            C64::new(1.0, 0.0) / (points[i] - poles[k])
        } else {
            C64::new(1.0, 0.0)
        }
    })
}

/// One relocation step: the common denominator `1 + Σ d_k/(z − ξ_k)` from
/// the stacked per-entry QR reductions, then its zeros.
fn relocate(samples: &SampleSet, poles: &[C64], warnings: &mut Vec<String>) -> Result<Vec<C64>> {
    let d = poles.len();
    let ell = samples.len();
    let phi = cauchy(samples.points(), poles, true);
    let (m, n) = samples.shape();
    let mut blocks = Vec::with_capacity(m * n);
    let mut rhs = Vec::with_capacity(m * n);
    for j in 0..n {
        for i in 0..m {
            let f = samples.entry(i, j);
            let a = CMat::from_fn(ell, 2 * d + 2, |r, c| match c {
                c if c <= d => phi[(r, c)],
                c if c <= 2 * d => -f[r] * phi[(r, c - d - 1)],
                _ => f[r],
            });
            let r = Qr::new(&a).into_r();
            let rows = r.rows();
            let lower = d + 1;
            if rows > lower {
                blocks.push(r.submatrix(lower, lower, rows - lower, d));
                rhs.push(r.submatrix(lower, 2 * d + 1, rows - lower, 1));
            }
        }
    }
    let a = CMat::vstack(&blocks);
    let b = CMat::vstack(&rhs);
    let sol = lstsq_rank(&a, &b)?;
    if sol.rank < d {
        warnings.push(format!("relocation least squares is rank deficient ({} < {d})", sol.rank));
    }
    let h = CMat::from_fn(d, d, |r, c| {
        let diag = if r == c { poles[r] } else { C64::new(0.0, 0.0) };
        diag - sol.x[(c, 0)]
    });
    eigvals(&h)
}

/// Nudges exactly repeated poles apart by `1e-8(1 + |ξ|)`.
pub(crate) fn separate(poles: &mut [C64]) {
    for i in 1..poles.len() {
        while poles[..i].contains(&poles[i]) {
            let p = poles[i];
            poles[i] = p + 1e-8 * (1.0 + p.norm());
        }
    }
}

/// Least-squares constant and residues for fixed poles, with the rank of the
/// basis matrix.
pub(crate) fn fit_residues(samples: &SampleSet, poles: &[C64]) -> Result<(PoleResidue, usize)> {
    let d = poles.len();
    let (m, n) = samples.shape();
    let tol = support_tolerance(poles);
    for z in samples.points() {
        if poles.iter().any(|p| (z - p).norm() <= tol) {
            return Err(eval_err(*z, "a pole coincides with a sample point"));
        }
    }
    let phi = cauchy(samples.points(), poles, true);
    let rhs = CMat::from_fn(samples.len(), m * n, |r, e| samples.values()[r][(e % m, e / m)]);
    let sol = lstsq_rank(&phi, &rhs)?;
    let coef = |k: usize| CMat::from_fn(m, n, |i, j| sol.x[(k, i + j * m)]);
    let model = PoleResidue::new(coef(d), poles.to_vec(), (0..d).map(coef).collect())?;
    Ok((model, sol.rank))
}

#[cfg(test)]
mod tests;
