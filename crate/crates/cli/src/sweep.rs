//! Method sweeps over orders with RMSE, timing and CSV output.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use blockrat::aaa::{aaa_scalar, set_valued_aaa, surrogate_aaa_seeded, AaaOptions};
use blockrat::block_aaa::block_aaa;
use blockrat::loewner::loewner_block;
use blockrat::rkfit::{rkfit_fit, RkfitOptions};
use blockrat::sample::rmse;
use blockrat::vecfit::{vf_matrix, VfOptions};
use blockrat::{Evaluator, SampleSet};

use crate::problems::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    AaaScalar,
    SetValuedAaa,
    SurrogateAaa,
    BlockAaa,
    Vf,
    Rkfit,
    Loewner,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::AaaScalar,
        Method::SetValuedAaa,
        Method::SurrogateAaa,
        Method::BlockAaa,
        Method::Vf,
        Method::Rkfit,
        Method::Loewner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::AaaScalar => "aaa-scalar",
            Method::SetValuedAaa => "set-valued-aaa",
            Method::SurrogateAaa => "surrogate-aaa",
            Method::BlockAaa => "block-aaa",
            Method::Vf => "vf",
            Method::Rkfit => "rkfit",
            Method::Loewner => "loewner",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
                format!("unknown method `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    /// Relative AAA tolerance; `None` runs every AAA variant to the order.
    pub tol: Option<f64>,
    /// VF and RKFIT iterations.
    pub iterations: usize,
    /// Timing repetitions per cell.
    pub repeats: usize,
    /// Measure the error against the clean truth when the problem has one.
    pub against_truth: bool,
    /// Seed of the surrogate AAA directions.
    pub seed: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            tol: None,
            iterations: 5,
            repeats: 20,
            against_truth: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub problem: String,
    pub method: Method,
    pub order: usize,
    /// `NaN` when the cell failed.
    pub rmse: f64,
    /// Mean wall time of one fit.
    pub time_ms: f64,
    /// `ok`, or the error message.
    pub status: String,
    pub trace: Vec<f64>,
    pub warnings: Vec<String>,
}

impl RunRecord {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

struct Fitted {
    model: Box<dyn Evaluator>,
    trace: Vec<f64>,
    warnings: Vec<String>,
}

fn boxed<M: Evaluator + 'static>(fit: blockrat::Fit<M>) -> Fitted {
    Fitted {
        model: Box::new(fit.model),
        trace: fit.trace,
        warnings: fit.warnings,
    }
}

fn aaa_options(order: usize, opts: &SweepOptions) -> AaaOptions {
    match opts.tol {
        Some(tol) => AaaOptions {
            tol,
            max_order: order,
            relative: true,
        },
        None => AaaOptions::order(order),
    }
}

fn fit_once(samples: &SampleSet, method: Method, order: usize, opts: &SweepOptions) -> Result<Fitted, String> {
    let e = |err: blockrat::Error| err.to_string();
    Ok(match method {
        Method::AaaScalar => {
            if samples.shape() != (1, 1) {
                return Err(format!("aaa-scalar needs 1x1 data, got {:?}", samples.shape()));
            }
            let vals: Vec<_> = samples.values().iter().map(|v| v[(0, 0)]).collect();
            boxed(aaa_scalar(samples.points(), &vals, aaa_options(order, opts)).map_err(e)?)
        }
        Method::SetValuedAaa => boxed(set_valued_aaa(samples, aaa_options(order, opts)).map_err(e)?),
        Method::SurrogateAaa => boxed(surrogate_aaa_seeded(samples, opts.seed, aaa_options(order, opts)).map_err(e)?),
        Method::BlockAaa => boxed(block_aaa(samples, aaa_options(order, opts)).map_err(e)?),
        Method::Vf => boxed(vf_matrix(samples, order, &VfOptions::iterations(opts.iterations)).map_err(e)?),
        Method::Rkfit => boxed(rkfit_fit(samples, &RkfitOptions::new(order, opts.iterations)).map_err(e)?),
        Method::Loewner => boxed(loewner_block(samples, order, None).map_err(e)?),
    })
}

/// Fits one cell: `repeats` timed fits, RMSE of the last one.
pub fn run_cell(problem: &Problem, method: Method, order: usize, opts: &SweepOptions) -> RunRecord {
    let repeats = opts.repeats.max(1);
    let mut record = RunRecord {
        problem: problem.name.clone(),
        method,
        order,
        rmse: f64::NAN,
        time_ms: f64::NAN,
        status: String::from("ok"),
        trace: Vec::new(),
        warnings: Vec::new(),
    };
    let start = Instant::now();
    let mut last = None;
    for _ in 0..repeats {
        match fit_once(&problem.samples, method, order, opts) {
            Ok(f) => last = Some(f),
            Err(msg) => {
                record.status = msg;
                return record;
            }
        }
    }
    record.time_ms = start.elapsed().as_secs_f64() * 1e3 / repeats as f64;
    let fitted = last.expect("at least one repetition");
    let reference = if opts.against_truth {
        problem.reference()
    } else {
        &problem.samples
    };
    match rmse(reference, fitted.model.as_ref()) {
        Ok(r) => record.rmse = r,
        Err(err) => record.status = err.to_string(),
    }
    record.trace = fitted.trace;
    record.warnings = fitted.warnings;
    record
}

/// All `(method, order)` cells, methods outermost.
pub fn run_sweep(
    problem: &Problem,
    methods: &[Method],
    orders: std::ops::RangeInclusive<usize>,
    opts: &SweepOptions,
) -> Vec<RunRecord> {
    methods
        .iter()
        .flat_map(|&m| orders.clone().map(move |d| (m, d)))
        .map(|(m, d)| run_cell(problem, m, d, opts))
        .collect()
}

pub const CSV_HEADER: [&str; 6] = ["problem", "method", "order", "rmse", "time_ms", "status"];

pub fn write_csv<W: Write>(out: W, records: &[RunRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.problem.clone(),
            r.method.to_string(),
            r.order.to_string(),
            format!("{:e}", r.rmse),
            r.time_ms.to_string(),
            r.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One row per trace entry: `problem,method,order,iteration,value`.
pub fn write_trace_csv<W: Write>(out: W, records: &[RunRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["problem", "method", "order", "iteration", "value"])?;
    for r in records {
        for (i, v) in r.trace.iter().enumerate() {
            w.write_record([
                r.problem.clone(),
                r.method.to_string(),
                r.order.to_string(),
                i.to_string(),
                format!("{v:e}"),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{problem_scalar_noise, problem_toy1};

    fn quick() -> SweepOptions {
        SweepOptions {
            repeats: 1,
            ..SweepOptions::default()
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("aaa".parse::<Method>().is_err());
    }

    #[test]
    fn toy1_block_aaa_orders() {
        let p = problem_toy1(100).unwrap();
        let recs = run_sweep(&p, &[Method::BlockAaa], 0..=6, &quick());
        assert_eq!(recs.len(), 7);
        assert!(recs.iter().all(|r| r.is_ok() && r.rmse >= 0.0));
        assert!(recs[5].rmse <= 1e-10, "{:e}", recs[5].rmse);
    }

    #[test]
    fn toy1_common_denominator_methods_at_six() {
        let p = problem_toy1(100).unwrap();
        let recs = run_sweep(&p, &[Method::SetValuedAaa, Method::Rkfit, Method::Vf], 6..=6, &quick());
        for r in &recs {
            assert!(r.is_ok(), "{}: {}", r.method, r.status);
            assert!(r.rmse <= 1e-8, "{}: {:e}", r.method, r.rmse);
        }
    }

    #[test]
    fn incompatible_cell_recorded_and_sweep_continues() {
        let p = problem_toy1(100).unwrap();
        let recs = run_sweep(&p, &[Method::AaaScalar, Method::BlockAaa], 1..=1, &quick());
        assert!(!recs[0].is_ok());
        assert!(recs[0].rmse.is_nan());
        assert!(recs[1].is_ok());
    }

    #[test]
    fn empty_method_list_gives_header_only() {
        let p = problem_toy1(10).unwrap();
        let recs = run_sweep(&p, &[], 0..=3, &quick());
        assert!(recs.is_empty());
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "problem,method,order,rmse,time_ms,status\n");
    }

    #[test]
    fn reruns_are_bit_identical() {
        let p = problem_scalar_noise(200, 1e-2, 5).unwrap();
        let methods = [Method::AaaScalar, Method::SurrogateAaa, Method::Rkfit, Method::Vf, Method::Loewner];
        let a = run_sweep(&p, &methods, 1..=3, &quick());
        let b = run_sweep(&p, &methods, 1..=3, &quick());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.rmse.to_bits(), y.rmse.to_bits());
            assert_eq!(x.trace, y.trace);
        }
    }

    #[test]
    fn against_truth_uses_clean_samples() {
        let p = problem_scalar_noise(200, 1e-2, 5).unwrap();
        let noisy = run_cell(&p, Method::Rkfit, 3, &quick());
        let truth = run_cell(&p, Method::Rkfit, 3, &SweepOptions { against_truth: true, ..quick() });
        assert!(truth.rmse < noisy.rmse);
    }

    #[test]
    fn csv_rows_and_trace() {
        let p = problem_toy1(100).unwrap();
        let recs = run_sweep(&p, &[Method::BlockAaa], 2..=3, &quick());
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("toy1,block-aaa,2,"));
        assert!(lines[1].ends_with(",ok"));
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &recs).unwrap();
        let rows = String::from_utf8(buf).unwrap().lines().count();
        assert_eq!(rows, 1 + recs.iter().map(|r| r.trace.len()).sum::<usize>());
    }
}
