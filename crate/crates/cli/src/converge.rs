use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_integer::Integer;
use serde::Serialize;
use trinotool_core::mahler::{limit_measure, measure_from_roots, MeasureError};
use trinotool_core::poly::{PolyError, RootConfig, TrinomialSpec};
use trinotool_core::quad::QuadConfig;

use crate::record::ConvergenceRow;

/// How the middle exponent follows `n` down a convergence table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MRule {
    Fixed(u32),
    NMinusOne,
    /// The coprime `m` nearest `n/2`, the smaller on ties.
    Half,
}

impl MRule {
    pub fn pick(self, n: u32) -> Option<u32> {
        match self {
            MRule::Fixed(m) => Some(m),
            MRule::NMinusOne => n.checked_sub(1),
            MRule::Half => {
                let mid = n / 2;
                (0..n)
                    .flat_map(|d| [mid.checked_sub(d), mid.checked_add(d)])
                    .flatten()
                    .find(|&m| m > 0 && m < n && m.gcd(&n) == 1)
            }
        }
    }
}

impl FromStr for MRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "n-1" => Ok(MRule::NMinusOne),
            "half" => Ok(MRule::Half),
            _ => s
                .strip_prefix("fixed:")
                .unwrap_or(s)
                .parse()
                .map(MRule::Fixed)
                .map_err(|_| format!("unknown m rule '{s}' (expected an integer, fixed:K, n-1 or half)")),
        }
    }
}

impl fmt::Display for MRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MRule::Fixed(m) => write!(f, "fixed:{m}"),
            MRule::NMinusOne => f.write_str("n-1"),
            MRule::Half => f.write_str("half"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConvergeError {
    #[error("rule {rule} gives no valid m for n = {n}")]
    NoExponent { n: u32, rule: MRule },
    #[error("n = {n}, m = {m} are not coprime")]
    NotCoprime { n: u32, m: u32 },
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// `M(z^n + a z^m + b)` against its limit, rows sorted by `n`.
pub fn convergence_table(
    a: Complex<f64>,
    b: Complex<f64>,
    ns: &[u32],
    rule: MRule,
    quad: &QuadConfig<f64>,
) -> Result<Vec<ConvergenceRow>, ConvergeError> {
    let limit = limit_measure(a, b, quad)?.value;
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::with_capacity(ns.len());
    for n in ns {
        let m = rule
            .pick(n)
            .filter(|&m| m > 0 && m < n)
            .ok_or(ConvergeError::NoExponent { n, rule })?;
        if m.gcd(&n) != 1 {
            return Err(ConvergeError::NotCoprime { n, m });
        }
        let spec = TrinomialSpec::new(n, m, a, b).map_err(MeasureError::from)?;
        let measure = measure_from_roots(&spec, &RootConfig::default())?.value;
        rows.push(ConvergenceRow {
            n,
            m,
            measure,
            limit,
            gap: (measure - limit).abs(),
        });
    }
    Ok(rows)
}

impl From<PolyError> for ConvergeError {
    fn from(e: PolyError) -> Self {
        ConvergeError::Measure(e.into())
    }
}
