//! Block-AAA: greedy interpolation with matrix-valued barycentric weights.

use alloc::format;
use alloc::vec::Vec;

use crate::aaa::{greedy_pick, AaaOptions};
use crate::barycentric::{solve_weights_bary_b, BlockBaryB};
use crate::error::{param, Result};
use crate::fit::Fit;
use crate::kernels::svd;
use crate::matrix::{CMat, C64};
use crate::sample::{Evaluator, SampleSet};

/// Runs block-AAA. The trace holds the greedy error `‖F(z_j) − R_{j−1}(z_j)‖_F`
/// of every iteration, including the one that triggered the stop.
pub fn block_aaa(samples: &SampleSet, opts: AaaOptions) -> Result<Fit<BlockBaryB>> {
    let (m, n) = samples.shape();
    let threshold = opts.threshold(samples);
    let mean = samples.mean();
    let pts = samples.points();
    let vals = samples.values();

    let mut remaining: Vec<usize> = (0..samples.len()).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut model: Option<BlockBaryB> = None;
    let mut trace = Vec::new();
    let mut warnings = Vec::new();

    loop {
        let errors: Vec<Option<f64>> = remaining
            .iter()
            .map(|&i| match &model {
                None => Some(vals[i].dist_fro_sqr(&mean).sqrt()),
                Some(r) => match r.eval(pts[i]) {
                    Ok(v) => Some(vals[i].dist_fro_sqr(&v).sqrt()),
                    Err(e) => {
                        warnings.push(format!("skipped in greedy scan: {e}"));
                        None
                    }
                },
            })
            .collect();
        let Some((pos, err)) = greedy_pick(&errors) else {
            break;
        };
        trace.push(err);
        if err <= threshold && model.is_some() {
            break;
        }
        let j = chosen.len();
        chosen.push(remaining.remove(pos));

        let weights = if remaining.is_empty() && j == 0 {
            let s = C64::new(1.0 / (m as f64).sqrt(), 0.0);
            alloc::vec![CMat::identity(m).scale(s)]
        } else {
            if remaining.len() * n < m * (j + 1) {
                chosen.pop();
                warnings.push(format!(
                    "stopped at order {}: too few remaining samples for the weight problem",
                    j.saturating_sub(1)
                ));
                break;
            }
            let rest = samples.select(&remaining)?;
            let support: Vec<(C64, CMat)> =
                chosen.iter().map(|&i| (pts[i], vals[i].clone())).collect();
            solve_weights_bary_b(&rest, &support)?
        };
        let r = BlockBaryB::new(
            chosen.iter().map(|&i| pts[i]).collect(),
            weights,
            chosen.iter().map(|&i| vals[i].clone()).collect(),
        )?;
        let done = err <= threshold || j >= opts.max_order || remaining.is_empty();
        model = Some(r);
        if done {
            break;
        }
    }
    let model = model.ok_or_else(|| param("block-AAA produced no model"))?;
    for k in singular_weights(&model)? {
        warnings.push(format!(
            "weight matrix {k} is numerically singular; the model need not interpolate at support point {k}"
        ));
    }
    Ok(Fit {
        model,
        trace,
        warnings,
    })
}

/// Reciprocal condition number below which a weight matrix counts as singular.
pub const WEIGHT_RCOND: f64 = 1e-8;

/// Indices of weight matrices with `σ_min/σ_max ≤ WEIGHT_RCOND`.
pub fn singular_weights(model: &BlockBaryB) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (k, w) in model.weights().iter().enumerate() {
        let s = svd(w)?.s;
        let (hi, lo) = (s[0], s[s.len() - 1]);
        if !(lo > WEIGHT_RCOND * hi) {
            out.push(k);
        }
    }
    Ok(out)
}
