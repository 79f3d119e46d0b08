//! House lower bounds for the `R`, `S`, `T` families, extremality checks
//! against `2^{1/n}`, and the known general lower bounds for comparison.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::poly::{all_roots, classify_real_roots, Family, FamilyForm, LabeledRoot, PolyError, RootConfig, RootLabel};
use crate::scalar::Real;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum BoundsError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("no nontrivial house bound is known for S with m and n both odd (n = {n}, m = {m})")]
    NoBoundAvailable { n: u32, m: u32 },
}

/// Slack on house-versus-bound comparisons, on top of the root residuals.
pub const CERTIFICATION_SLACK: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HouseBoundReport<F> {
    pub family: FamilyForm<F>,
    /// `1 + log(a - 1)/(n - m)` for `R`, `S`; `1 + log(a)/(n - m)` for `T`.
    pub bound: F,
    /// Solves `(1 + t0)^{n-m} = a - 1` (`R`, `S`) or `= a` (`T`).
    pub t0: F,
    pub house: F,
    /// `r1`, `s3` or `t1`: the real root the bound is proved for.
    pub real_root: LabeledRoot<F>,
    /// `house >= bound - slack`.
    pub satisfied: bool,
}

pub fn house_lower_bound<F: Real>(f: &FamilyForm<F>, cfg: &RootConfig<F>) -> Result<HouseBoundReport<F>, BoundsError> {
    let g = f.gcd();
    if g != 1 {
        return Err(PolyError::CoprimalityViolated { gcd: g }.into());
    }
    if f.a < F::lit(2.0) {
        return Err(PolyError::CoefficientTooSmall(f.a.to_f64().unwrap_or(f64::NAN)).into());
    }
    if f.family == Family::S && f.m % 2 == 1 {
        return Err(BoundsError::NoBoundAvailable { n: f.n, m: f.m });
    }
    let (log_arg, label) = match f.family {
        Family::R => (f.a - F::one(), RootLabel::R1),
        Family::S => (f.a - F::one(), RootLabel::S3),
        Family::T => (f.a, RootLabel::T1),
    };
    let gap = F::from_usize_lossy((f.n - f.m) as usize);
    let bound = F::one() + log_arg.ln() / gap;
    let t0 = (log_arg.ln() / gap).exp_m1();

    let roots = all_roots(&f.to_spec(), cfg)?;
    let house = roots.max_modulus();
    let classified = classify_real_roots(f)?;
    let real_root = *classified
        .roots
        .iter()
        .find(|r| r.label == label)
        .ok_or(PolyError::ClassificationMismatch {
            expected: classified.roots.len() + 1,
            found: classified.roots.len(),
        })?;
    let slack = F::lit(CERTIFICATION_SLACK) + roots.residual_bound;
    Ok(HouseBoundReport {
        family: *f,
        bound,
        t0,
        house,
        real_root,
        satisfied: house >= bound - slack,
    })
}

/// General lower bounds on the house of a non-cyclotomic algebraic integer of degree `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparisonBounds<F> {
    pub n: u32,
    /// `2^{1/(4n)}`.
    pub dimitrov: F,
    /// `exp(log(n + 0.5)/n^2)`.
    pub matveev: F,
    /// `exp(3 log(n/3)/n^2)` for `n <= 12`, `exp(3 log(n/2)/n^2)` from 13 on; absent below 4.
    pub rhin_wu: Option<F>,
    /// `1 + (log log n / log n)^3 / (2n)`.
    pub loglog_cube: F,
    /// `1 + (log n)(1 - log log n / log n)/n`; proved only for the inverse of the
    /// root of `z^n + z - 1` in `(0, 1)`, reported when it exceeds 1.
    pub verger_gaugry: Option<F>,
    /// `theta0^{3/(2n)}`, the conjectured extremal value.
    pub smyth_boyd_house: F,
    /// `2^{1/n}`, attained by `z^n - 2`.
    pub trivial_mn: F,
}

/// Real root of `z^3 - z - 1`, by Cardano's formula.
pub fn theta0<F: Real>() -> F {
    let s = F::lit(69.0).sqrt();
    let d = F::lit(18.0);
    ((F::lit(9.0) + s) / d).cbrt() + ((F::lit(9.0) - s) / d).cbrt()
}

pub fn comparison_bounds<F: Real>(n: u32) -> Result<ComparisonBounds<F>, BoundsError> {
    if n < 3 {
        return Err(PolyError::DegreeTooSmall.into());
    }
    let nf = F::lit(n as f64);
    let n2 = nf * nf;
    let ln_n = nf.ln();
    let lln = ln_n.ln();
    let rhin_wu = match n {
        0..=3 => None,
        4..=12 => Some((F::lit(3.0) * (nf / F::lit(3.0)).ln() / n2).exp()),
        _ => Some((F::lit(3.0) * (nf / F::lit(2.0)).ln() / n2).exp()),
    };
    let vg = F::one() + ln_n * (F::one() - lln / ln_n) / nf;
    Ok(ComparisonBounds {
        n,
        dimitrov: F::lit(2.0).powf(F::one() / (F::lit(4.0) * nf)),
        matveev: ((nf + F::lit(0.5)).ln() / n2).exp(),
        rhin_wu,
        loglog_cube: F::one() + (lln / ln_n).powi(3) / (F::lit(2.0) * nf),
        verger_gaugry: (vg > F::one()).then_some(vg),
        smyth_boyd_house: theta0::<F>().powf(F::lit(1.5) / nf),
        trivial_mn: F::lit(2.0).powf(F::one() / nf),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extremality {
    /// The house exceeds `2^{1/n}`, so no root of this polynomial has the smallest possible house.
    NotExtremal,
    Undetermined,
}

impl fmt::Display for Extremality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extremality::NotExtremal => "not-extremal",
            Extremality::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremalityVerdict<F> {
    pub family: FamilyForm<F>,
    pub house: F,
    /// `2^{1/n}`.
    pub threshold: F,
    pub slack: F,
    pub verdict: Extremality,
    /// `T(2^{1/n}) = 1 - a 2^{m/n}`, for the `T` family only. Negative means `t1 > 2^{1/n}`.
    pub sign_certificate: Option<F>,
}

pub fn check_extremality<F: Real>(
    f: &FamilyForm<F>,
    cfg: &RootConfig<F>,
) -> Result<ExtremalityVerdict<F>, BoundsError> {
    let g = f.n.gcd(&f.m);
    if g != 1 {
        return Err(PolyError::CoprimalityViolated { gcd: g }.into());
    }
    if f.a < F::lit(2.0) {
        return Err(PolyError::CoefficientTooSmall(f.a.to_f64().unwrap_or(f64::NAN)).into());
    }
    let nf = F::lit(f.n as f64);
    let threshold = F::lit(2.0).powf(F::one() / nf);
    let roots = all_roots(&f.to_spec(), cfg)?;
    let house = roots.max_modulus();
    let slack = F::lit(CERTIFICATION_SLACK) + roots.residual_bound;
    let sign_certificate = (f.family == Family::T).then(|| F::one() - f.a * F::lit(2.0).powf(F::lit(f.m as f64) / nf));
    Ok(ExtremalityVerdict {
        family: *f,
        house,
        threshold,
        slack,
        verdict: if house > threshold + slack {
            Extremality::NotExtremal
        } else {
            Extremality::Undetermined
        },
        sign_certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(family: Family, n: u32, m: u32, a: f64) -> FamilyForm<f64> {
        FamilyForm::new(family, n, m, a).unwrap()
    }

    #[test]
    fn r_bound_example() {
        let r = house_lower_bound(&form(Family::R, 4, 1, 3.0), &RootConfig::default()).unwrap();
        assert!((r.bound - (1.0 + 2f64.ln() / 3.0)).abs() < 1e-15);
        assert!((r.real_root.value - 1.307_486_1).abs() < 1e-7);
        assert!(r.satisfied && r.house >= r.real_root.value - 1e-12);
    }

    #[test]
    fn t_bound_example() {
        let r = house_lower_bound(&form(Family::T, 3, 1, 2.0), &RootConfig::default()).unwrap();
        assert!((r.bound - (1.0 + 2f64.ln() / 2.0)).abs() < 1e-15);
        assert!((r.house - 1.618_033_988_749_895).abs() < 1e-12);
        assert!(((1.0 + r.t0).powi(2) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn boundary_a_two() {
        let r = house_lower_bound(&form(Family::R, 6, 1, 2.0), &RootConfig::default()).unwrap();
        assert_eq!(r.bound, 1.0);
        assert_eq!(r.real_root.value, 1.0);
    }

    #[test]
    fn s_with_odd_m_has_no_bound() {
        assert_eq!(
            house_lower_bound(&form(Family::S, 5, 3, 4.0), &RootConfig::default()),
            Err(BoundsError::NoBoundAvailable { n: 5, m: 3 })
        );
    }

    #[test]
    fn comparison_constants() {
        let c = comparison_bounds::<f64>(10).unwrap();
        assert!((c.dimitrov - 2f64.powf(1.0 / 40.0)).abs() < 1e-15);
        assert!((c.smyth_boyd_house - 1.324_717_957_244_746f64.powf(0.15)).abs() < 1e-15);
        let (c12, c13) = (
            comparison_bounds::<f64>(12).unwrap(),
            comparison_bounds::<f64>(13).unwrap(),
        );
        assert!((c12.rhin_wu.unwrap() - (3.0 * 4f64.ln() / 144.0).exp()).abs() < 1e-15);
        assert!((c13.rhin_wu.unwrap() - (3.0 * 6.5f64.ln() / 169.0).exp()).abs() < 1e-15);
        assert!(comparison_bounds::<f64>(3).unwrap().rhin_wu.is_none());
        assert!((theta0::<f64>() - 1.324_717_957_244_746).abs() < 1e-15);
    }

    #[test]
    fn extremality() {
        let v = check_extremality(&form(Family::T, 3, 1, 2.0), &RootConfig::default()).unwrap();
        assert_eq!(v.verdict, Extremality::NotExtremal);
        assert!(v.sign_certificate.unwrap() < 0.0);
        let v = check_extremality(&form(Family::R, 4, 1, 3.0), &RootConfig::default()).unwrap();
        assert_eq!(v.verdict, Extremality::NotExtremal);
        assert!(v.sign_certificate.is_none());
    }
}
