use std::fmt;

use num_complex::Complex;

use super::{MeasureError, MeasureResult, Method};
use crate::quad::{integrate_interval, QuadConfig};
use crate::scalar::Real;

/// Behaviour of `M(z^n + a z^m + b)` as `n -> infinity`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LimitCase<F> {
    /// `|a| - |b| >= 1`: the limit is `|a|`.
    DominantA,
    /// `|b| - |a| >= 1`: `M = |b|` for every `n`.
    DominantB,
    /// `|a| + |b| <= 1`: `M = 1`.
    SubUnit,
    /// `||a| - |b|| < 1 < |a| + |b|`; `gamma` is the half-width of the arc where `|a e^{it} + b| > 1`.
    Oscillatory { gamma: F },
}

impl<F> LimitCase<F> {
    pub fn name(&self) -> &'static str {
        match self {
            LimitCase::DominantA => "dominant-a",
            LimitCase::DominantB => "dominant-b",
            LimitCase::SubUnit => "sub-unit",
            LimitCase::Oscillatory { .. } => "oscillatory",
        }
    }
}

impl<F: Copy> LimitCase<F> {
    pub fn gamma(&self) -> Option<F> {
        match self {
            LimitCase::Oscillatory { gamma } => Some(*gamma),
            _ => None,
        }
    }
}

impl<F> fmt::Display for LimitCase<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn limit_case<F: Real>(a: Complex<F>, b: Complex<F>) -> Result<LimitCase<F>, MeasureError> {
    let (ra, rb) = moduli(a, b)?;
    let one = F::one();
    Ok(if ra - rb >= one {
        LimitCase::DominantA
    } else if rb - ra >= one {
        LimitCase::DominantB
    } else if ra + rb <= one {
        LimitCase::SubUnit
    } else {
        let c = (one - ra * ra - rb * rb) / (F::lit(2.0) * ra * rb);
        LimitCase::Oscillatory {
            gamma: c.max(-one).min(one).acos(),
        }
    })
}

/// `lim_{n -> infinity} M(z^n + a z^m + b)`.
pub fn limit_measure<F: Real>(
    a: Complex<F>,
    b: Complex<F>,
    cfg: &QuadConfig<F>,
) -> Result<MeasureResult<F>, MeasureError> {
    let (ra, rb) = moduli(a, b)?;
    match limit_case(a, b)? {
        LimitCase::DominantA => Ok(MeasureResult::exact(ra, Method::ClosedForm)),
        LimitCase::DominantB => Ok(MeasureResult::exact(rb, Method::ClosedForm)),
        LimitCase::SubUnit => Ok(MeasureResult::exact(F::one(), Method::ClosedForm)),
        LimitCase::Oscillatory { gamma } => {
            let two_ab = F::lit(2.0) * ra * rb;
            let sq = ra * ra + rb * rb;
            let tiny = F::min_positive_value();
            let two_pi = F::TAU();
            let scaled = QuadConfig {
                abs_tol: cfg.abs_tol * two_pi,
                ..*cfg
            };
            // The integrand vanishes to first order at t = gamma, never below it.
            let q = integrate_interval(|t: F| (sq + two_ab * t.cos()).max(tiny).ln(), F::zero(), gamma, &scaled)?;
            Ok(MeasureResult::from_log(
                q.value / two_pi,
                q.error / two_pi,
                Method::Jensen,
            ))
        }
    }
}

fn moduli<F: Real>(a: Complex<F>, b: Complex<F>) -> Result<(F, F), MeasureError> {
    let (ra, rb) = (a.norm(), b.norm());
    if ra == F::zero() || rb == F::zero() {
        return Err(MeasureError::ZeroCoefficient);
    }
    Ok((ra, rb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn cases() {
        assert_eq!(limit_case(c(3.0), c(1.0)).unwrap(), LimitCase::DominantA);
        assert_eq!(limit_case(c(1.0), c(-3.0)).unwrap(), LimitCase::DominantB);
        assert_eq!(limit_case(c(0.4), c(0.5)).unwrap(), LimitCase::SubUnit);
        let g = limit_case(c(1.0), c(1.0)).unwrap().gamma().unwrap();
        assert!((g - 2.0 * std::f64::consts::FRAC_PI_3).abs() < 1e-12);
        assert_eq!(limit_case(c(0.0), c(1.0)), Err(MeasureError::ZeroCoefficient));
    }

    #[test]
    fn values() {
        let cfg = QuadConfig::default();
        assert_eq!(limit_measure(c(3.0), c(1.0), &cfg).unwrap().value, 3.0);
        assert_eq!(limit_measure(c(0.4), c(0.5), &cfg).unwrap().value, 1.0);
        assert_eq!(limit_measure(c(1.0), Complex::new(0.0, 4.0), &cfg).unwrap().value, 4.0);
        let v = limit_measure(c(1.0), c(1.0), &cfg).unwrap();
        assert!((v.value - 1.381_356).abs() < 1e-6, "{}", v.value);
    }
}
