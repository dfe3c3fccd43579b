//! Barycentric polynomial weights and the `L0 − z L1` pencil that linearizes
//! a matrix polynomial given in barycentric form.
//!
//! For nodes `z_0..z_d` and blocks `C_k` the pencil linearizes
//! `N(z) = ℓ(z) Σ C_k/(z − z_k)` with `ℓ(z) = Π(z − z_j)`, i.e. the numerator
//! of a bary-C model. With `C_k = w_k P_k` this is (up to sign) the
//! polynomial that interpolates `P_k` at `z_k`.

use alloc::format;
use alloc::vec::Vec;

use crate::barycentric::{BlockBaryB, BlockBaryC};
use crate::error::{param, Result};
use crate::kernels::gen_eig_finite;
use crate::matrix::{CMat, C64};

/// `w_k = 1/Π_{j≠k}(z_j − z_k)`.
pub fn bary_poly_weights(nodes: &[C64]) -> Result<Vec<C64>> {
    let mut w = Vec::with_capacity(nodes.len());
    for (k, zk) in nodes.iter().enumerate() {
        let mut p = C64::new(1.0, 0.0);
        for (j, zj) in nodes.iter().enumerate() {
            if j != k {
                let diff = zj - zk;
                if diff == C64::new(0.0, 0.0) {
                    return Err(param(format!("nodes {k} and {j} coincide")));
                }
                p *= diff;
            }
        }
        w.push(C64::new(1.0, 0.0) / p);
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pencil {
    pub l0: CMat,
    pub l1: CMat,
    pub nodes: Vec<C64>,
    pub weights: Vec<C64>,
}

impl Pencil {
    /// Block size `s`.
    pub fn block_size(&self) -> usize {
        self.l0.rows() / (self.nodes.len() - 1)
    }

    /// Finite generalized eigenvalues of `(L0, L1)`.
    ///
    /// The pencil is equilibrated by diagonal row and column scaling first;
    /// weight ratios can span many orders of magnitude.
    pub fn finite_eigenvalues(&self) -> Result<Vec<C64>> {
        let (a, b) = equilibrate(&self.l0, &self.l1);
        gen_eig_finite(&a, &b)
    }
}

/// `D1 (A, B) D2` with power-of-two diagonals that bring the row and column
/// norms of `[A B]` close to one.
fn equilibrate(a: &CMat, b: &CMat) -> (CMat, CMat) {
    let n = a.rows();
    let mut a = a.clone();
    let mut b = b.clone();
    let pow2 = |x: f64| x.log2().round().exp2();
    for _ in 0..10 {
        let mut changed = false;
        for i in 0..n {
            let r: f64 = (0..n).map(|j| a[(i, j)].norm_sqr() + b[(i, j)].norm_sqr()).sum();
            if r > 0.0 {
                let f = pow2(1.0 / r.sqrt());
                if f != 1.0 {
                    changed = true;
                    for j in 0..n {
                        a[(i, j)] *= f;
                        b[(i, j)] *= f;
                    }
                }
            }
        }
        for j in 0..n {
            let c: f64 = (0..n).map(|i| a[(i, j)].norm_sqr() + b[(i, j)].norm_sqr()).sum();
            if c > 0.0 {
                let f = pow2(1.0 / c.sqrt());
                if f != 1.0 {
                    changed = true;
                    for i in 0..n {
                        a[(i, j)] *= f;
                        b[(i, j)] *= f;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (a, b)
}

/// Pencil for the blocks `C_0..C_d`, with weights from [`bary_poly_weights`].
pub fn build_pencil(c: &[CMat], nodes: &[C64]) -> Result<Pencil> {
    let w = bary_poly_weights(nodes)?;
    build_pencil_with_weights(c, nodes, &w)
}

/// Like [`build_pencil`] with caller-supplied weights. Any nonzero multiple
/// of the barycentric weights gives the same finite spectrum.
pub fn build_pencil_with_weights(c: &[CMat], nodes: &[C64], weights: &[C64]) -> Result<Pencil> {
    if nodes.len() < 2 {
        return Err(param("a pencil needs at least two nodes (order d ≥ 1)"));
    }
    if c.len() != nodes.len() || weights.len() != nodes.len() {
        return Err(param(format!(
            "{} blocks and {} weights for {} nodes",
            c.len(),
            weights.len(),
            nodes.len()
        )));
    }
    let s = c[0].rows();
    if c.iter().any(|ck| ck.shape() != (s, s)) {
        return Err(param("pencil blocks must be square and of equal size"));
    }
    if weights.iter().any(|w| *w == C64::new(0.0, 0.0)) {
        return Err(param("barycentric weights must be nonzero"));
    }
    let d = nodes.len() - 1;
    let z = nodes;
    let p: Vec<CMat> = c.iter().zip(weights).map(|(ck, wk)| ck.scale(1.0 / wk)).collect();
    let theta: Vec<C64> = (0..=d)
        .map(|j| if j == 0 { C64::new(0.0, 0.0) } else { weights[j - 1] / weights[j] })
        .collect();

    let mut l0 = CMat::zeros(d * s, d * s);
    let mut l1 = CMat::zeros(d * s, d * s);
    for j in 0..d - 1 {
        l0.set_block(0, j * s, &p[j].scale(z[j + 1]));
        l1.set_block(0, j * s, &p[j]);
    }
    let inv = C64::new(1.0, 0.0) / theta[d];
    let mut last0 = p[d - 1].scale(z[d]);
    last0.axpy(z[d - 1] * inv, &p[d]);
    let mut last1 = p[d - 1].clone();
    last1.axpy(inv, &p[d]);
    l0.set_block(0, (d - 1) * s, &last0);
    l1.set_block(0, (d - 1) * s, &last1);

    let id = CMat::identity(s);
    for j in 1..d {
        l0.set_block(j * s, (j - 1) * s, &id.scale(z[j - 1]));
        l0.set_block(j * s, j * s, &id.scale(-z[j + 1] * theta[j]));
        l1.set_block(j * s, (j - 1) * s, &id);
        l1.set_block(j * s, j * s, &id.scale(-theta[j]));
    }
    Ok(Pencil {
        l0,
        l1,
        nodes: nodes.to_vec(),
        weights: weights.to_vec(),
    })
}

/// `ℓ(z) Σ C_k/(z − z_k)` evaluated in product form.
pub fn eval_numerator(c: &[CMat], nodes: &[C64], z: C64) -> CMat {
    let mut out = CMat::zeros(c[0].rows(), c[0].cols());
    for (k, ck) in c.iter().enumerate() {
        let mut p = C64::new(1.0, 0.0);
        for (j, zj) in nodes.iter().enumerate() {
            if j != k {
                p *= z - zj;
            }
        }
        out.axpy(p, ck);
    }
    out
}

/// Finite nonlinear eigenvalues of the numerator of a square bary-C model.
///
/// Poles of the model that coincide with an eigenvalue are not filtered.
pub fn nonlinear_eigs_bary_c(r: &BlockBaryC) -> Result<Vec<C64>> {
    let (m, n) = r.numer[0].shape();
    if m != n {
        return Err(param(format!("nonlinear eigenvalues need square data, got {m}x{n}")));
    }
    build_pencil(&r.numer, &r.support)?.finite_eigenvalues()
}

/// Candidate poles of a bary-B model: the nonlinear eigenvalues of its
/// denominator `Σ W_k/(z − z_k)`. At most `d·m` of them.
pub fn poles_bary_b(r: &BlockBaryB) -> Result<Vec<C64>> {
    if r.order() == 0 {
        return Ok(Vec::new());
    }
    build_pencil(r.weights(), r.support())?.finite_eigenvalues()
}
