//! RKFIT-style pole relocation on the diagonal embedding `A = diag(λ)`,
//! `b = 1`, with explicit pole storage and a partial-fraction final fit.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{param, Error, Result};
use crate::fit::Fit;
use crate::kernels::{extend_orthonormal, gen_eig, right_singular};
use crate::matrix::{dotc, norm2, CMat, C64};
use crate::sample::{rmse, SampleSet};
use crate::vecfit::{fit_residues, separate, PoleResidue};

#[derive(Debug, Clone, PartialEq)]
pub struct RkfitOptions {
    pub degree: usize,
    pub iterations: usize,
    /// Finite starting poles; the remaining `degree − len` are infinite.
    pub initial_poles: Vec<C64>,
}

impl RkfitOptions {
    /// Polynomial start: all poles at infinity.
    pub fn new(degree: usize, iterations: usize) -> Self {
        Self {
            degree,
            iterations,
            initial_poles: Vec::new(),
        }
    }
}

/// Orthonormal basis of `{p/q : deg p ≤ d}` on the sample points, built by
/// rational Arnoldi, so that `diag(λ) V K = V H`.
#[derive(Debug, Clone)]
pub struct RationalBasis {
    pub points: Vec<C64>,
    /// Finite poles; `degree − poles.len()` further poles sit at infinity.
    pub poles: Vec<C64>,
    pub degree: usize,
    /// `ℓ × (d+1)` with orthonormal columns.
    pub v: CMat,
    pub h: CMat,
    pub k: CMat,
}

pub fn build_basis(points: &[C64], poles: &[C64], degree: usize) -> Result<RationalBasis> {
    let ell = points.len();
    if poles.len() > degree {
        return Err(param(format!("{} poles for degree {degree}", poles.len())));
    }
    if ell <= degree {
        return Err(param(format!("{ell} points cannot carry a basis of dimension {}", degree + 1)));
    }
    for (i, z) in points.iter().enumerate() {
        if let Some(j) = poles.iter().position(|p| p == z) {
            return Err(param(format!("pole {j} coincides with sample point {i}")));
        }
    }
    let zero = C64::new(0.0, 0.0);
    let mut v = CMat::zeros(ell, degree + 1);
    let mut h = CMat::zeros(degree + 1, degree);
    let mut k = CMat::zeros(degree + 1, degree);
    let s = 1.0 / (ell as f64).sqrt();
    v.col_mut(0).iter_mut().for_each(|x| *x = C64::new(s, 0.0));
    for j in 0..degree {
        let pole = poles.get(j).copied();
        let mut w: Vec<C64> = v
            .col(j)
            .iter()
            .zip(points)
            .map(|(x, z)| match pole {
                Some(p) => x / (z - p),
                None => x * z,
            })
            .collect();
        let mut coef = alloc::vec![zero; degree + 1];
        for _ in 0..2 {
            for i in 0..=j {
                let c = dotc(v.col(i), &w);
                coef[i] += c;
                for (wi, vi) in w.iter_mut().zip(v.col(i)) {
                    *wi -= vi * c;
                }
            }
        }
        let nw = norm2(&w);
        if nw == 0.0 {
            return Err(Error::Numerical(format!("rational Arnoldi broke down at step {j}")));
        }
        coef[j + 1] = C64::new(nw, 0.0);
        for (dst, x) in v.col_mut(j + 1).iter_mut().zip(&w) {
            *dst = x / nw;
        }
        // pole p: A V c = v_j + p V c; infinite: A v_j = V c
        for i in 0..=degree {
            match pole {
                Some(p) => {
                    k[(i, j)] = coef[i];
                    h[(i, j)] = p * coef[i] + if i == j { C64::new(1.0, 0.0) } else { zero };
                }
                None => {
                    k[(i, j)] = if i == j { C64::new(1.0, 0.0) } else { zero };
                    h[(i, j)] = coef[i];
                }
            }
        }
    }
    Ok(RationalBasis {
        points: points.to_vec(),
        poles: poles.to_vec(),
        degree,
        v,
        h,
        k,
    })
}

impl RationalBasis {
    /// `‖V*V − I‖_F`.
    pub fn orthogonality_error(&self) -> f64 {
        self.v
            .adjoint_mul(&self.v)
            .dist_fro_sqr(&CMat::identity(self.degree + 1))
            .sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relocation {
    /// New finite poles; infinite roots are dropped.
    pub poles: Vec<C64>,
    /// Unit coefficient vector `c` with `v̂ = V c`.
    pub coefficients: Vec<C64>,
    /// The trailing singular value was not simple (misfit-free data).
    pub degenerate: bool,
}

/// New poles: the roots of `v̂ = V c`, where `c` minimizes
/// `Σ_k ‖(I − VV*) diag(f_k) V c‖`.
pub fn relocate_poles(basis: &RationalBasis, functions: &[Vec<C64>]) -> Result<Relocation> {
    let ell = basis.points.len();
    let d = basis.degree;
    if functions.is_empty() || functions.iter().any(|f| f.len() != ell) {
        return Err(param(format!("sample functions must each have {ell} values")));
    }
    let v = &basis.v;
    let mut blocks = Vec::with_capacity(functions.len());
    let mut scale = 0.0;
    for f in functions {
        let fv = CMat::from_fn(ell, d + 1, |i, j| f[i] * v[(i, j)]);
        scale += fv.norm_fro_sqr();
        let proj = v.matmul(&v.adjoint_mul(&fv));
        blocks.push(&fv - &proj);
    }
    let (s, right) = right_singular(&CMat::vstack(&blocks))?;
    let c: Vec<C64> = right.col(d).to_vec();
    let tiny = 1e-12 * scale.sqrt().max(f64::MIN_POSITIVE);
    let sig = |i: usize| s.get(i).copied().unwrap_or(0.0);
    let degenerate = d >= 1 && sig(d) <= tiny && sig(d - 1) <= tiny;

    if d == 0 {
        return Ok(Relocation {
            poles: Vec::new(),
            coefficients: c,
            degenerate,
        });
    }
    let q = extend_orthonormal(&CMat::col_vector(&c), d + 1);
    let qp = q.columns(1, d);
    let a = qp.adjoint_mul(&basis.h);
    let b = qp.adjoint_mul(&basis.k);
    let roots = gen_eig(&a, &b)?;
    let poles: Vec<C64> = roots.iter().filter_map(|r| r.value()).collect();
    if poles.iter().any(|p| !p.is_finite()) {
        return Err(Error::Relocation("roots of the relocated numerator are not finite".into()));
    }
    Ok(Relocation {
        poles,
        coefficients: c,
        degenerate,
    })
}

/// Iterative relocation over all `mn` entries, then a least-squares fit of
/// each entry in the basis `{1} ∪ {1/(z − ξ_k)}`. The trace holds the RMSE
/// after every iteration.
pub fn rkfit_fit(samples: &SampleSet, opts: &RkfitOptions) -> Result<Fit<PoleResidue>> {
    let d = opts.degree;
    if opts.iterations == 0 {
        return Err(param("RKFIT needs at least one iteration"));
    }
    if samples.len() < 2 * d + 2 {
        return Err(param(format!(
            "{} samples are too few for degree {d} (need {})",
            samples.len(),
            2 * d + 2
        )));
    }
    let (m, n) = samples.shape();
    let entries: Vec<Vec<C64>> = (0..n)
        .flat_map(|j| (0..m).map(move |i| (i, j)))
        .map(|(i, j)| samples.entry(i, j))
        .collect();
    let mut poles = opts.initial_poles.clone();
    let mut trace = Vec::new();
    let mut warnings = Vec::new();
    if d > 0 {
        for it in 0..opts.iterations {
            let basis = build_basis(samples.points(), &poles, d)?;
            let r = relocate_poles(&basis, &entries)?;
            if r.degenerate {
                warnings.push(format!("iteration {it}: relocation problem is degenerate"));
            }
            poles = r.poles;
            separate(&mut poles);
            if poles.len() < d {
                warnings.push(format!("iteration {it}: {} poles at infinity", d - poles.len()));
            }
            let (model, _) = fit_residues(samples, &poles)?;
            trace.push(rmse(samples, &model)?);
        }
    }
    let (model, _) = fit_residues(samples, &poles)?;
    if d == 0 {
        trace.push(rmse(samples, &model)?);
    }
    Ok(Fit {
        model,
        trace,
        warnings,
    })
}
