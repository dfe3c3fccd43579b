//! LU factorization with partial pivoting.

use alloc::vec::Vec;

use crate::matrix::{CMat, C64};

pub struct Lu {
    lu: CMat,
    perm: Vec<usize>,
    anorm_one: f64,
    singular: bool,
}

impl Lu {
    pub fn new(a: &CMat) -> Self {
        assert!(a.is_square(), "LU requires a square matrix");
        let n = a.rows();
        let anorm_one = a.norm_one();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut singular = false;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let l = lu[(i, k)] / piv;
                lu[(i, k)] = l;
            }
            for j in k + 1..n {
                let ukj = lu[(k, j)];
                if ukj == C64::new(0.0, 0.0) {
                    continue;
                }
                for i in k + 1..n {
                    let l = lu[(i, k)];
                    lu[(i, j)] -= l * ukj;
                }
            }
        }
        Self {
            lu,
            perm,
            anorm_one,
            singular,
        }
    }

    /// True when an exactly zero pivot was met.
    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Solves `A X = B`. Returns `None` for an exactly singular factor.
    pub fn solve(&self, b: &CMat) -> Option<CMat> {
        if self.singular {
            return None;
        }
        let n = self.lu.rows();
        assert_eq!(b.rows(), n);
        let mut x = CMat::from_fn(n, b.cols(), |i, j| b[(self.perm[i], j)]);
        for c in 0..b.cols() {
            let col = x.col_mut(c);
            for k in 0..n {
                let xk = col[k];
                for i in k + 1..n {
                    col[i] -= self.lu[(i, k)] * xk;
                }
            }
            for k in (0..n).rev() {
                col[k] /= self.lu[(k, k)];
                let xk = col[k];
                for i in 0..k {
                    col[i] -= self.lu[(i, k)] * xk;
                }
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<CMat> {
        self.solve(&CMat::identity(self.lu.rows()))
    }

    /// 1-norm condition number computed from the explicit inverse.
    ///
    /// Matrices handled here are small (support-block sized), so the exact
    /// inverse is affordable.
    pub fn cond_one(&self) -> f64 {
        match self.inverse() {
            Some(inv) if inv.is_finite() => self.anorm_one * inv.norm_one(),
            _ => f64::INFINITY,
        }
    }

    pub fn det(&self) -> C64 {
        if self.singular {
            return C64::new(0.0, 0.0);
        }
        let n = self.lu.rows();
        let mut d = C64::new(1.0, 0.0);
        for k in 0..n {
            d *= self.lu[(k, k)];
        }
        // sign of the permutation
        let mut seen = alloc::vec![false; n];
        let mut sign = 1.0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        d * sign
    }
}
