use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// One scanned trinomial `x^n + a x^m + b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: u32,
    pub m: u32,
    pub a: i64,
    pub b: i64,
    pub reducible: bool,
    /// Degrees of the irreducible factors, with multiplicity, ascending.
    pub factor_degrees: Vec<usize>,
    /// `threshold`, `schinzel-none`, `factorizer` or `witness`; empty on error.
    pub certificate: String,
    pub measure: Option<f64>,
    pub house: Option<f64>,
    /// Wall time in milliseconds; zero unless timings were requested.
    pub elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub type Key = (u32, u32, i64, i64);

impl ScanRecord {
    pub fn key(&self) -> Key {
        (self.n, self.m, self.a, self.b)
    }

    pub fn errored(&self) -> bool {
        self.error.is_some()
    }
}

/// Canonical scan order: `(n, m, |a|, sign a, b)`.
pub fn canonical_cmp(x: &Key, y: &Key) -> Ordering {
    (x.0, x.1, x.2.unsigned_abs(), x.2.signum(), x.3).cmp(&(y.0, y.1, y.2.unsigned_abs(), y.2.signum(), y.3))
}

/// One row of a convergence study toward the `n -> infinity` limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: u32,
    pub m: u32,
    pub measure: f64,
    pub limit: f64,
    pub gap: f64,
}
