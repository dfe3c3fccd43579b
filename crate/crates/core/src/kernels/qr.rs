//! Householder QR.

use alloc::vec::Vec;


use crate::matrix::{dotc, norm2, CMat, C64};

/// Householder reflector `I - 2 v v^*` acting on rows `start..`.
struct Reflector {
    start: usize,
    v: Vec<C64>,
}

impl Reflector {
    fn apply(&self, y: &mut [C64]) {
        let tail = &mut y[self.start..];
        let s = dotc(&self.v, tail) * 2.0;
        for (t, &vi) in tail.iter_mut().zip(&self.v) {
            *t -= vi * s;
        }
    }
}

/// Compact QR factorization of an `r × c` matrix.
pub struct Qr {
    r: CMat,
    reflectors: Vec<Reflector>,
    rows: usize,
}

impl Qr {
    pub fn new(a: &CMat) -> Self {
        let (rows, cols) = a.shape();
        let mut w = a.clone();
        let k = rows.min(cols);
        let mut reflectors = Vec::with_capacity(k);
        for j in 0..k {
            let x = &w.col(j)[j..];
            let nx = norm2(x);
            if nx == 0.0 {
                reflectors.push(Reflector {
                    start: j,
                    v: alloc::vec![C64::new(0.0, 0.0); rows - j],
                });
                continue;
            }
            let x0 = x[0];
            let phase = if x0.norm() == 0.0 {
                C64::new(1.0, 0.0)
            } else {
                x0 / x0.norm()
            };
            let alpha = -phase * nx;
            let mut v: Vec<C64> = x.to_vec();
            v[0] -= alpha;
            let nv = norm2(&v);
            v.iter_mut().for_each(|t| *t /= nv);
            let h = Reflector { start: j, v };
            for c in j..cols {
                h.apply(w.col_mut(c));
            }
            // enforce exact zeros below the diagonal
            let col = w.col_mut(j);
            col[j] = alpha;
            col[j + 1..].iter_mut().for_each(|t| *t = C64::new(0.0, 0.0));
            reflectors.push(h);
        }
        let r = CMat::from_fn(k, cols, |i, j| if i <= j { w[(i, j)] } else { C64::new(0.0, 0.0) });
        Self {
            r,
            reflectors,
            rows,
        }
    }

    /// Upper trapezoidal factor, `min(r, c) × c`.
    pub fn r(&self) -> &CMat {
        &self.r
    }

    pub fn into_r(self) -> CMat {
        self.r
    }

    /// Applies `Q^*` to the columns of `b` in place.
    pub fn apply_qt(&self, b: &mut CMat) {
        assert_eq!(b.rows(), self.rows);
        for c in 0..b.cols() {
            let col = b.col_mut(c);
            for h in &self.reflectors {
                h.apply(col);
            }
        }
    }

    /// Applies `Q` to the columns of `b` in place.
    pub fn apply_q(&self, b: &mut CMat) {
        assert_eq!(b.rows(), self.rows);
        for c in 0..b.cols() {
            let col = b.col_mut(c);
            for h in self.reflectors.iter().rev() {
                h.apply(col);
            }
        }
    }

    /// First `ncols` columns of the unitary factor.
    pub fn q_columns(&self, ncols: usize) -> CMat {
        let mut q = CMat::from_fn(self.rows, ncols, |i, j| {
            if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        self.apply_q(&mut q);
        q
    }

    /// Thin unitary factor, `r × min(r, c)`.
    pub fn q_thin(&self) -> CMat {
        self.q_columns(self.r.rows())
    }

    /// Full square unitary factor.
    pub fn q_full(&self) -> CMat {
        self.q_columns(self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c64;

    fn sample(r: usize, c: usize) -> CMat {
        CMat::from_fn(r, c, |i, j| {
            let t = (i * 7 + j * 13) as f64;
            c64((t * 0.37).sin(), (t * 0.91).cos())
        })
    }

    #[test]
    fn reconstructs_and_is_orthonormal() {
        for &(r, c) in &[(6, 3), (3, 6), (5, 5)] {
            let a = sample(r, c);
            let qr = Qr::new(&a);
            let q = qr.q_thin();
            let back = q.matmul(qr.r());
            assert!(back.dist_fro_sqr(&a).sqrt() < 1e-13 * a.norm_fro());
            let qtq = q.adjoint_mul(&q);
            assert!(qtq.dist_fro_sqr(&CMat::identity(q.cols())).sqrt() < 1e-13);
            let qf = qr.q_full();
            assert!(qf.adjoint_mul(&qf).dist_fro_sqr(&CMat::identity(r)).sqrt() < 1e-13);
        }
    }
}
