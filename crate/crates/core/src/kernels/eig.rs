//! Eigenvalues of dense complex matrices: balancing, Hessenberg reduction and
//! the single-shift complex QR iteration.

use alloc::format;
use alloc::vec::Vec;


use crate::error::{Error, Result};
use crate::matrix::{dotc, norm2, CMat, C64};

const MAX_ITERS_PER_EIG: usize = 60;

/// Parlett-Reinsch diagonal balancing with powers of two.
fn balance(a: &mut CMat) {
    let n = a.rows();
    let radix = 2.0_f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].l1_norm();
                    r += a[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let rr = r;
            while cc < rr / radix {
                cc *= radix * radix;
                f *= radix;
            }
            while cc > rr * radix {
                cc /= radix * radix;
                f /= radix;
            }
            let c_new = c * f;
            let r_new = r / f;
            if (c_new + r_new) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Reduces `a` to upper Hessenberg form by Householder similarity transforms.
fn hessenberg(a: &mut CMat) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let x: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let nx = norm2(&x);
        if nx == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * nx;
        let mut v = x;
        v[0] -= alpha;
        let nv = norm2(&v);
        v.iter_mut().for_each(|t| *t /= nv);
        // left: rows k+1.., all columns
        for j in 0..n {
            let col = &mut a.col_mut(j)[k + 1..];
            let s = dotc(&v, col) * 2.0;
            for (t, &vi) in col.iter_mut().zip(&v) {
                *t -= vi * s;
            }
        }
        // right: all rows, columns k+1..
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for (jj, &vi) in v.iter().enumerate() {
                s += a[(i, k + 1 + jj)] * vi;
            }
            s *= 2.0;
            for (jj, &vi) in v.iter().enumerate() {
                a[(i, k + 1 + jj)] -= s * vi.conj();
            }
        }
        for i in k + 2..n {
            a[(i, k)] = C64::new(0.0, 0.0);
        }
    }
}

/// Givens rotation `[[c, s], [-conj(s), c]]` annihilating `y` against `x`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

/// Eigenvalues of an upper Hessenberg matrix (destroyed on output).
fn hessenberg_qr(h: &mut CMat) -> Result<Vec<C64>> {
    let n = h.rows();
    let mut eigs = alloc::vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eigs);
    }
    let hnorm = h.norm_fro().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iters = 0usize;
    let mut rots: Vec<(f64, C64)> = Vec::with_capacity(n);
    loop {
        // locate the active unreduced block [lo, hi]
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].l1_norm();
            let mut scale = h[(lo - 1, lo - 1)].l1_norm() + h[(lo, lo)].l1_norm();
            if scale == 0.0 {
                scale = hnorm;
            }
            if sub <= eps * scale || sub <= f64::MIN_POSITIVE * 1e3 {
                h[(lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigs[hi] = h[(hi, hi)];
            iters = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        iters += 1;
        if iters > MAX_ITERS_PER_EIG {
            return Err(Error::Numerical(format!(
                "Hessenberg QR did not converge (order {n}, active block {lo}..={hi})"
            )));
        }
        let shift = if iters % 11 == 0 {
            // exceptional shift
            h[(hi, hi)] + C64::new(h[(hi, hi - 1)].re.abs() + 0.75 * h[(hi, hi - 1)].l1_norm(), 0.0)
        } else {
            wilkinson(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        rots.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = a * c + s * b;
                h[(k + 1, j)] = -s.conj() * a + b * c;
            }
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            let top = (k + 2).min(hi);
            for i in lo..=top {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * c + b * s.conj();
                h[(i, k + 1)] = -a * s + b * c;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(eigs)
}

/// Eigenvalue of the 2x2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let tr_half = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (tr_half * tr_half - det).sqrt();
    let l1 = tr_half + disc;
    let l2 = tr_half - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of a square matrix.
pub fn eigvals(a: &CMat) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::Contract(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_finite() {
        return Err(Error::Numerical("eigenvalue input contains non-finite entries".into()));
    }
    let mut h = a.clone();
    balance(&mut h);
    hessenberg(&mut h);
    hessenberg_qr(&mut h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c64;

    fn close_sets(mut a: Vec<C64>, mut b: Vec<C64>, tol: f64) -> bool {
        if a.len() != b.len() {
            return false;
        }
        while let Some(x) = a.pop() {
            let (idx, d) = b
                .iter()
                .enumerate()
                .map(|(i, y)| (i, (x - y).norm()))
                .fold((0, f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc });
            if d > tol {
                return false;
            }
            b.swap_remove(idx);
        }
        true
    }

    #[test]
    fn triangular_eigs() {
        let a = CMat::from_rows(&[
            &[c64(1.0, 0.0), c64(5.0, 1.0), c64(2.0, 0.0)],
            &[c64(0.0, 0.0), c64(2.0, 1.0), c64(7.0, 0.0)],
            &[c64(0.0, 0.0), c64(0.0, 0.0), c64(-3.0, 0.0)],
        ]);
        let e = eigvals(&a).unwrap();
        assert!(close_sets(e, alloc::vec![c64(1.0, 0.0), c64(2.0, 1.0), c64(-3.0, 0.0)], 1e-12));
    }

    #[test]
    fn similarity_transform_preserves_spectrum() {
        let d = [c64(1.0, 2.0), c64(-0.5, 0.0), c64(3.0, -1.0), c64(0.0, 0.25), c64(2.0, 2.0)];
        let n = d.len();
        let p = CMat::from_fn(n, n, |i, j| c64(((i + 2 * j) as f64).sin() + if i == j { 3.0 } else { 0.0 }, ((i * j) as f64).cos() * 0.3));
        let pinv = super::super::lu::Lu::new(&p).inverse().unwrap();
        let a = p.matmul(&CMat::diag(&d)).matmul(&pinv);
        let e = eigvals(&a).unwrap();
        assert!(close_sets(e, d.to_vec(), 1e-10));
    }

    #[test]
    fn rotation_matrix() {
        let a = CMat::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let e = eigvals(&a).unwrap();
        assert!(close_sets(e, alloc::vec![c64(0.0, 1.0), c64(0.0, -1.0)], 1e-14));
    }
}
