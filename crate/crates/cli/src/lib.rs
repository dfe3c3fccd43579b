//! Problem registry, sample files and method sweeps on top of `blockrat`.

pub mod io;
pub mod problems;
pub mod sweep;
