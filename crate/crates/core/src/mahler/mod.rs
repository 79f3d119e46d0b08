//! Mahler measure of trinomials by three independent routes (root product,
//! Jensen quadrature, the exact series for a dominant middle term), the
//! `n -> infinity` limits, and the per-index contour integrals behind the series.

mod limit;
mod measure;
mod series;

use std::fmt;

use thiserror::Error;

pub use limit::{limit_case, limit_measure, LimitCase};
pub use measure::{
    house, house_of_int_poly, measure_from_roots, measure_jensen, measure_of_int_poly, unit_circle_zeros,
};
pub use series::{residue_term, series_measure, SeriesConfig, SeriesMeasure, SeriesSummand, SeriesTerm};

use crate::poly::PolyError;
use crate::quad::QuadError;
use crate::scalar::Real;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MeasureError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("series needs gcd(m, n) = 1 (got {gcd})")]
    CoprimalityViolated { gcd: u32 },
    #[error("series needs |a| - |b| >= 1 (got {gap})")]
    DominanceViolated { gap: f64 },
    #[error("series terms stopped decaying near k = {k} (term ratio {ratio})")]
    DivergenceDetected { k: usize, ratio: f64 },
    #[error("a and b must be nonzero")]
    ZeroCoefficient,
    #[error("series index k must be at least 1")]
    ZeroIndex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Roots,
    Jensen,
    Series,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Roots => "roots",
            Method::Jensen => "jensen",
            Method::Series => "series",
            Method::ClosedForm => "closed-form",
        })
    }
}

/// A Mahler measure `M` together with `log M`, its provenance and an error bound on `M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureResult<F> {
    pub value: F,
    pub log_value: F,
    pub method: Method,
    pub error_bound: F,
}

impl<F: Real> MeasureResult<F> {
    /// Builds from `log M` and an absolute error bound on `log M`.
    pub fn from_log(log_value: F, log_error: F, method: Method) -> Self {
        let value = log_value.exp();
        Self {
            value,
            log_value,
            method,
            error_bound: value * log_error.exp_m1().abs(),
        }
    }

    pub fn exact(value: F, method: Method) -> Self {
        Self {
            value,
            log_value: value.ln(),
            method,
            error_bound: F::zero(),
        }
    }
}
