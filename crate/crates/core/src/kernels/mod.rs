//! Dense complex linear algebra used by every fitter: SVD, least squares,
//! generalized eigenvalues and polynomial roots.

mod eig;
mod lu;
mod qr;
mod svd;

use alloc::format;
use alloc::vec::Vec;

use crate::error::{param, Error, Result};
use crate::matrix::{CMat, C64};

pub use eig::eigvals;
pub use lu::Lu;
pub use qr::Qr;
pub use svd::{extend_orthonormal, right_singular, svd, svd_full, Svd};

/// Relative threshold below which a generalized eigenvalue is infinite.
pub const EPS_FINITE: f64 = 1e-12;
/// Relative threshold for trimming trailing polynomial coefficients.
pub const EPS_TRIM: f64 = 1e-13;

/// Rows of `W` are the conjugated left singular vectors of `m` belonging to
/// its `block` smallest singular values, scaled by `1/sqrt(block)` so that
/// `‖W‖_F = 1`. Among all matrices with orthonormal (scaled) rows this
/// choice minimizes `‖W m‖_F`.
pub fn trailing_left_singular_block(m: &CMat, block: usize) -> Result<CMat> {
    let rows = m.rows();
    if block == 0 || rows % block != 0 {
        return Err(param(format!(
            "block height {block} does not divide the row count {rows}"
        )));
    }
    trailing_left_singular_vectors(m, block)
}

/// Like [`trailing_left_singular_block`] without the divisibility
/// requirement: `count` conjugated trailing left singular vectors as rows,
/// scaled by `1/sqrt(count)`.
pub fn trailing_left_singular_vectors(m: &CMat, count: usize) -> Result<CMat> {
    let rows = m.rows();
    if count == 0 || count > rows {
        return Err(param(format!(
            "cannot take {count} trailing left singular vectors of a matrix with {rows} rows"
        )));
    }
    let (_, u) = right_singular(&m.adjoint())?;
    let scale = 1.0 / (count as f64).sqrt();
    Ok(CMat::from_fn(count, rows, |i, j| {
        u[(j, rows - count + i)].conj() * scale
    }))
}

/// Unit-norm trailing right singular vector of `m`.
pub fn trailing_right_singular_vector(m: &CMat) -> Result<Vec<C64>> {
    let (_, v) = right_singular(m)?;
    let c = v.cols();
    Ok(v.col(c - 1).to_vec())
}

/// Outcome of a least-squares solve.
#[derive(Debug, Clone)]
pub struct LstsqSolution {
    pub x: CMat,
    /// Numerical rank used for the pseudo-inverse.
    pub rank: usize,
}

/// Minimum-norm least-squares solution of `A X ≈ B`.
pub fn lstsq(a: &CMat, b: &CMat) -> Result<CMat> {
    lstsq_rank(a, b).map(|s| s.x)
}

/// Like [`lstsq`], also reporting the numerical rank of `A`.
pub fn lstsq_rank(a: &CMat, b: &CMat) -> Result<LstsqSolution> {
    if a.rows() != b.rows() {
        return Err(Error::Contract(format!(
            "lstsq row mismatch: A has {} rows, B has {}",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.cols();
    if n == 0 || a.rows() == 0 {
        return Ok(LstsqSolution {
            x: CMat::zeros(n, b.cols()),
            rank: 0,
        });
    }
    let f = svd(a)?;
    let smax = f.s.first().copied().unwrap_or(0.0);
    let cutoff = smax * f64::EPSILON * (a.rows().max(n) as f64);
    let rank = f.s.iter().take_while(|&&s| s > cutoff && s > 0.0).count();
    // X = V_r diag(1/s) U_r^* B
    let ur = f.u.columns(0, rank);
    let mut t = ur.adjoint_mul(b);
    for i in 0..rank {
        let inv = 1.0 / f.s[i];
        for j in 0..t.cols() {
            t[(i, j)] *= inv;
        }
    }
    let x = f.v.columns(0, rank).matmul(&t);
    Ok(LstsqSolution { x, rank })
}

/// A generalized eigenvalue `alpha / beta` of a pencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenEigenvalue {
    pub alpha: C64,
    pub beta: C64,
}

impl GenEigenvalue {
    fn finite(lambda: C64) -> Self {
        if lambda.norm() <= 1.0 {
            Self {
                alpha: lambda,
                beta: C64::new(1.0, 0.0),
            }
        } else {
            Self {
                alpha: C64::new(1.0, 0.0),
                beta: C64::new(1.0, 0.0) / lambda,
            }
        }
    }

    fn infinite() -> Self {
        Self {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.0, 0.0),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.beta == C64::new(0.0, 0.0)
    }

    /// The eigenvalue, or `None` when infinite.
    pub fn value(&self) -> Option<C64> {
        (!self.is_infinite()).then(|| self.alpha / self.beta)
    }
}

/// Generalized eigenvalues of the pencil `A - λ B`.
///
/// Both matrices are first scaled to unit Frobenius norm. Infinite
/// eigenvalues are split off by repeatedly deflating the numerical null
/// space of `B` (singular values `≤ EPS_FINITE`); this also removes higher
/// order Jordan chains at infinity exactly. The remaining regular part is
/// solved through the shift-and-invert operator `(A - σB)^{-1} B`.
pub fn gen_eig(a: &CMat, b: &CMat) -> Result<Vec<GenEigenvalue>> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::Contract(format!(
            "pencil needs equal square matrices, got {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let na = a.norm_fro();
    let nb = b.norm_fro();
    if nb == 0.0 {
        if na == 0.0 {
            return Err(Error::Numerical("singular pencil: A = B = 0".into()));
        }
        return Ok(alloc::vec![GenEigenvalue::infinite(); n]);
    }
    if na == 0.0 {
        // det(-λB) = 0 only at λ = 0 when B is regular
        let s = svd(b)?;
        let k = s.s.iter().filter(|&&x| x <= EPS_FINITE * nb).count();
        if k > 0 {
            return Err(Error::Numerical("singular pencil: A = 0 and B singular".into()));
        }
        return Ok(alloc::vec![GenEigenvalue::finite(C64::new(0.0, 0.0)); n]);
    }
    let mut aa = a.scale(C64::new(1.0 / na, 0.0));
    let mut bb = b.scale(C64::new(1.0 / nb, 0.0));
    let mut out = Vec::with_capacity(n);

    loop {
        let size = aa.rows();
        if size == 0 {
            break;
        }
        let f = svd_full(&bb)?;
        let k = f.s.iter().filter(|&&x| x <= EPS_FINITE).count() + (size - f.s.len());
        if k == 0 {
            break;
        }
        let v1 = f.v.columns(0, size - k);
        let v2 = f.v.columns(size - k, k);
        let av2 = aa.matmul(&v2);
        let sv = svd(&av2)?;
        if sv.s.last().copied().unwrap_or(0.0) <= EPS_FINITE * 1e-2 {
            return Err(Error::Numerical(
                "singular pencil: A vanishes on the null space of B".into(),
            ));
        }
        let q = extend_orthonormal(&sv.u, size);
        let q2 = q.columns(k, size - k);
        aa = q2.adjoint_mul(&aa.matmul(&v1));
        bb = q2.adjoint_mul(&bb.matmul(&v1));
        out.extend(core::iter::repeat_n(GenEigenvalue::infinite(), k));
    }

    let size = aa.rows();
    if size > 0 {
        let (shift, lu) = pick_shift(&aa, &bb)?;
        let t = lu
            .solve(&bb)
            .ok_or_else(|| Error::Numerical("shifted pencil is singular".into()))?;
        let tn = t.norm_fro();
        let ratio = na / nb;
        for mu in eigvals(&t)? {
            if mu.norm() <= EPS_FINITE * tn {
                out.push(GenEigenvalue::infinite());
            } else {
                let lambda = (shift + C64::new(1.0, 0.0) / mu) * ratio;
                out.push(GenEigenvalue::finite(lambda));
            }
        }
    }
    Ok(out)
}

/// Finite generalized eigenvalues only.
pub fn gen_eig_finite(a: &CMat, b: &CMat) -> Result<Vec<C64>> {
    Ok(gen_eig(a, b)?.iter().filter_map(|e| e.value()).collect())
}

fn pick_shift(a: &CMat, b: &CMat) -> Result<(C64, Lu)> {
    const CANDIDATES: [(f64, f64); 6] = [
        (0.618_033_988_7, 0.7),
        (1.324_717_957, 2.1),
        (0.377_964_473, -1.3),
        (2.903_476_213, -2.6),
        (0.123_456_789, 1.9),
        (7.389_056_099, 0.3),
    ];
    let mut best: Option<(f64, C64, Lu)> = None;
    for &(r, phi) in &CANDIDATES {
        let s = C64::from_polar(r, phi);
        let mut m = a.clone();
        m.axpy(-s, b);
        let lu = Lu::new(&m);
        let cond = lu.cond_one();
        if cond < 1e3 {
            return Ok((s, lu));
        }
        if best.as_ref().map_or(true, |(c, _, _)| cond < *c) {
            best = Some((cond, s, lu));
        }
    }
    match best {
        Some((c, s, lu)) if c < 1e15 => Ok((s, lu)),
        _ => Err(Error::Numerical(
            "no regular shift found; the pencil appears singular".into(),
        )),
    }
}

/// Roots of `Σ coeffs[k] z^k` as eigenvalues of the companion matrix.
pub fn companion_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let cmax = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if cmax == 0.0 {
        return Err(param("zero polynomial has no well-defined roots"));
    }
    let mut deg = coeffs.len() - 1;
    while coeffs[deg].norm() <= EPS_TRIM * cmax {
        deg -= 1;
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    let comp = CMat::from_fn(deg, deg, |i, j| {
        if i == 0 {
            -coeffs[deg - 1 - j] / lead
        } else if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    eigvals(&comp)
}
