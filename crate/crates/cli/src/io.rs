//! Plain-text sample files.
//!
//! ```text
//! m n ell
//! z_re z_im            (one block per sample)
//! re im re im ...      (m lines of n entries)
//! ```
//!
//! Floats are written in shortest round-trip form, so a save/load cycle is
//! bit-exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use blockrat::{CMat, SampleSet, C64};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid sample set: {0}")]
    Invalid(#[from] blockrat::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> LoadError {
    LoadError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn format_samples(samples: &SampleSet) -> String {
    let (m, n) = samples.shape();
    let mut out = format!("{m} {n} {}\n", samples.len());
    for (z, f) in samples.points().iter().zip(samples.values()) {
        let _ = writeln!(out, "{} {}", z.re, z.im);
        for i in 0..m {
            let row: Vec<String> = (0..n).map(|j| format!("{} {}", f[(i, j)].re, f[(i, j)].im)).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

pub fn parse_samples(text: &str) -> Result<SampleSet, LoadError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| lines.next().ok_or_else(|| parse_err(0, format!("unexpected end of file, expected {what}")));

    let (hl, header) = next("header `m n ell`")?;
    let dims = parse_numbers::<usize>(hl, header)?;
    let [m, n, ell] = dims[..] else {
        return Err(parse_err(hl, format!("header needs 3 integers, found {}", dims.len())));
    };
    if m == 0 || n == 0 {
        return Err(parse_err(hl, "matrix dimensions must be positive"));
    }
    let mut points = Vec::with_capacity(ell);
    let mut values = Vec::with_capacity(ell);
    for k in 0..ell {
        let (zl, zline) = next(&format!("point of sample {k}"))?;
        let z = parse_numbers::<f64>(zl, zline)?;
        let [re, im] = z[..] else {
            return Err(parse_err(zl, format!("point line needs 2 numbers, found {}", z.len())));
        };
        points.push(C64::new(re, im));
        let mut f = CMat::zeros(m, n);
        for i in 0..m {
            let (rl, row) = next(&format!("row {i} of sample {k}"))?;
            let x = parse_numbers::<f64>(rl, row)?;
            if x.len() != 2 * n {
                return Err(parse_err(rl, format!("row needs {} numbers, found {}", 2 * n, x.len())));
            }
            for j in 0..n {
                f[(i, j)] = C64::new(x[2 * j], x[2 * j + 1]);
            }
        }
        values.push(f);
    }
    if let Some((l, _)) = lines.next() {
        return Err(parse_err(l, "trailing content after the last sample"));
    }
    Ok(SampleSet::new(points, values)?)
}

fn parse_numbers<T: std::str::FromStr>(line: usize, text: &str) -> Result<Vec<T>, LoadError> {
    text.split_whitespace()
        .map(|t| t.parse::<T>().map_err(|_| parse_err(line, format!("cannot parse `{t}`"))))
        .collect()
}

pub fn load_samples(path: impl AsRef<Path>) -> Result<SampleSet, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_samples(&text)
}

pub fn save_samples(path: impl AsRef<Path>, samples: &SampleSet) -> std::io::Result<()> {
    fs::write(path, format_samples(samples))
}
