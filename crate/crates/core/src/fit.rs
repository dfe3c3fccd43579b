//! Fit results shared by the drivers.

use alloc::string::String;
use alloc::vec::Vec;

/// A fitted model with its per-iteration trace and non-fatal diagnostics.
#[derive(Debug, Clone)]
pub struct Fit<M> {
    pub model: M,
    /// Greedy errors (AAA family) or RMSE per iteration (VF, RKFIT).
    pub trace: Vec<f64>,
    pub warnings: Vec<String>,
}

impl<M> Fit<M> {
    pub fn map<N>(self, f: impl FnOnce(M) -> N) -> Fit<N> {
        Fit {
            model: f(self.model),
            trace: self.trace,
            warnings: self.warnings,
        }
    }
}
