//! One-sided Jacobi SVD with QR preconditioning.

use alloc::format;
use alloc::vec::Vec;


use super::qr::Qr;
use crate::error::{Error, Result};
use crate::matrix::{dotc, norm2, CMat, C64};

const MAX_SWEEPS: usize = 80;

/// Singular value decomposition `M = U diag(s) V^*`.
///
/// Singular values are sorted in descending order. `u` and `v` are either
/// thin (`min(r, c)` columns) or full square, depending on the constructor.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMat,
    pub s: Vec<f64>,
    pub v: CMat,
}

impl Svd {
    /// `U diag(s) V^*` using the leading `s.len()` columns.
    pub fn reconstruct(&self) -> CMat {
        let k = self.s.len();
        let mut us = self.u.columns(0, k);
        for (j, &s) in self.s.iter().enumerate() {
            us.col_mut(j).iter_mut().for_each(|x| *x *= s);
        }
        us.matmul(&self.v.columns(0, k).adjoint())
    }
}

/// Orthogonalizes the columns of the square-or-tall `g` in place, accumulating
/// the right rotations into `v` (which must start as the identity or any
/// unitary matrix).
fn jacobi_sweeps(g: &mut CMat, v: &mut CMat) -> Result<()> {
    let q = g.cols();
    let tol = f64::EPSILON * (g.rows().max(1) as f64).sqrt();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..q {
            for j in i + 1..q {
                let (gi, gj) = g.two_cols_mut(i, j);
                let alpha: f64 = gi.iter().map(|x| x.norm_sqr()).sum();
                let beta: f64 = gj.iter().map(|x| x.norm_sqr()).sum();
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dotc(gi, gj);
                let ga = gamma.norm();
                if ga <= tol * (alpha.sqrt() * beta.sqrt()) {
                    continue;
                }
                rotated = true;
                let phase = gamma / ga;
                let zeta = (beta - alpha) / (2.0 * ga);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let ph = phase.conj();
                for (a, b) in gi.iter_mut().zip(gj.iter_mut()) {
                    let bj = *b * ph;
                    let ai = *a;
                    *a = ai * c - bj * s;
                    *b = ai * s + bj * c;
                }
                let (vi, vj) = v.two_cols_mut(i, j);
                for (a, b) in vi.iter_mut().zip(vj.iter_mut()) {
                    let bj = *b * ph;
                    let ai = *a;
                    *a = ai * c - bj * s;
                    *b = ai * s + bj * c;
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::Numerical(format!(
        "Jacobi SVD did not converge in {MAX_SWEEPS} sweeps ({}x{} matrix)",
        g.rows(),
        q
    )))
}

/// Right singular data of a tall (or square) matrix: singular values in
/// descending order, the full `c × c` right factor, and the orthogonalized
/// working columns (left vectors scaled by the singular values).
fn tall_right(a: &CMat) -> Result<(Vec<f64>, CMat, CMat)> {
    let (r, c) = a.shape();
    debug_assert!(r >= c);
    let mut g = if r > c { Qr::new(a).into_r() } else { a.clone() };
    let mut v = CMat::identity(c);
    jacobi_sweeps(&mut g, &mut v)?;
    let norms: Vec<f64> = (0..c).map(|j| norm2(g.col(j))).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap_or(core::cmp::Ordering::Equal));
    let s = order.iter().map(|&j| norms[j]).collect();
    let v_sorted = CMat::from_fn(c, c, |i, j| v[(i, order[j])]);
    let g_sorted = CMat::from_fn(g.rows(), c, |i, j| g[(i, order[j])]);
    Ok((s, v_sorted, g_sorted))
}

/// Singular values (descending) and the full right factor `V` (`c × c`).
///
/// Columns of `V` beyond `min(r, c)` span the null space of `a`.
pub fn right_singular(a: &CMat) -> Result<(Vec<f64>, CMat)> {
    check_finite(a)?;
    let (r, c) = a.shape();
    if r >= c {
        let (s, v, _) = tall_right(a)?;
        Ok((s, v))
    } else {
        let mut padded = CMat::zeros(c, c);
        padded.set_block(0, 0, a);
        let (mut s, v, _) = tall_right(&padded)?;
        s.truncate(r);
        Ok((s, v))
    }
}

/// Thin SVD.
pub fn svd(a: &CMat) -> Result<Svd> {
    check_finite(a)?;
    let (r, c) = a.shape();
    if r < c {
        let t = svd(&a.adjoint())?;
        return Ok(Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        });
    }
    if c == 0 {
        return Ok(Svd {
            u: CMat::zeros(r, 0),
            s: Vec::new(),
            v: CMat::zeros(0, 0),
        });
    }
    let qr = (r > c).then(|| Qr::new(a));
    let base = match &qr {
        Some(qr) => qr.r().clone(),
        None => a.clone(),
    };
    let mut g = base;
    let mut v = CMat::identity(c);
    jacobi_sweeps(&mut g, &mut v)?;
    let norms: Vec<f64> = (0..c).map(|j| norm2(g.col(j))).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap_or(core::cmp::Ordering::Equal));
    let s: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let smax = s.first().copied().unwrap_or(0.0);
    let mut ug = CMat::zeros(c, c);
    let mut valid = alloc::vec![false; c];
    for (k, &j) in order.iter().enumerate() {
        let sj = norms[j];
        if sj > smax * f64::EPSILON * 1e-3 && sj > f64::MIN_POSITIVE {
            for i in 0..c {
                ug[(i, k)] = g[(i, j)] / sj;
            }
            valid[k] = true;
        }
    }
    complete_columns(&mut ug, &valid);
    let v_sorted = CMat::from_fn(c, c, |i, k| v[(i, order[k])]);
    let u = match qr {
        Some(qr) => {
            let mut u = CMat::zeros(r, c);
            u.set_block(0, 0, &ug);
            qr.apply_q(&mut u);
            u
        }
        None => ug,
    };
    Ok(Svd { u, s, v: v_sorted })
}

/// Full SVD with square `U` (`r × r`) and `V` (`c × c`).
pub fn svd_full(a: &CMat) -> Result<Svd> {
    let (r, c) = a.shape();
    let thin = svd(a)?;
    Ok(Svd {
        u: extend_orthonormal(&thin.u, r),
        s: thin.s,
        v: extend_orthonormal(&thin.v, c),
    })
}

/// Extends orthonormal columns to a square unitary matrix.
pub fn extend_orthonormal(q: &CMat, n: usize) -> CMat {
    let mut out = CMat::zeros(n, n);
    out.set_block(0, 0, q);
    let mut valid = alloc::vec![false; n];
    valid[..q.cols()].iter_mut().for_each(|v| *v = true);
    complete_columns(&mut out, &valid);
    out
}

/// Replaces the columns flagged invalid by unit vectors orthogonal to all
/// valid ones (two rounds of Gram-Schmidt, best canonical candidate first).
fn complete_columns(q: &mut CMat, valid: &[bool]) {
    let n = q.rows();
    let mut basis: Vec<usize> = (0..q.cols()).filter(|&j| valid[j]).collect();
    for j in 0..q.cols() {
        if valid[j] {
            continue;
        }
        let mut best: Option<Vec<C64>> = None;
        let mut best_norm = -1.0;
        for e in 0..n {
            let mut x = alloc::vec![C64::new(0.0, 0.0); n];
            x[e] = C64::new(1.0, 0.0);
            for _ in 0..2 {
                for &b in &basis {
                    let h = dotc(q.col(b), &x);
                    for (xi, &bi) in x.iter_mut().zip(q.col(b)) {
                        *xi -= bi * h;
                    }
                }
            }
            let nx = norm2(&x);
            if nx > best_norm {
                best_norm = nx;
                best = Some(x);
            }
            if nx > 0.7 {
                break;
            }
        }
        if let Some(x) = best {
            if best_norm > 0.0 {
                for (t, xi) in q.col_mut(j).iter_mut().zip(x) {
                    *t = xi / best_norm;
                }
            }
        }
        basis.push(j);
    }
}

fn check_finite(a: &CMat) -> Result<()> {
    if a.is_finite() {
        Ok(())
    } else {
        Err(Error::Numerical(format!(
            "SVD input contains non-finite entries ({}x{})",
            a.rows(),
            a.cols()
        )))
    }
}
