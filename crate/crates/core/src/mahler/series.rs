use num_complex::Complex;
use num_integer::Integer;

use super::{MeasureError, MeasureResult, Method};
use crate::poly::powu;
use crate::quad::{integrate, QuadConfig};
use crate::scalar::Real;
use crate::special::ln_binomial;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesConfig<F> {
    /// Stop once a term's magnitude falls below this.
    pub tol: F,
    pub k_max: usize,
    /// Consecutive non-decaying term ratios tolerated before giving up.
    pub window: usize,
}

impl<F: Real> Default for SeriesConfig<F> {
    fn default() -> Self {
        Self {
            tol: F::tol(1e-12, 4.0),
            k_max: 10_000,
            window: 10,
        }
    }
}

/// One summand of `log|a| - log M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSummand<F> {
    pub k: usize,
    pub value: F,
    pub magnitude: F,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMeasure<F> {
    pub result: MeasureResult<F>,
    pub terms: Vec<SeriesSummand<F>>,
    /// False when `k_max` was reached before a term dropped below `tol`.
    pub converged: bool,
}

/// `log M = log|a| - sum_k (1/(km)) (-1)^{kn} C(kn-1, km-1) Re(b^{-km} (b/a)^{kn})`
/// for `|a| - |b| >= 1` and `gcd(m, n) = 1`.
pub fn series_measure<F: Real>(
    n: u32,
    m: u32,
    a: Complex<F>,
    b: Complex<F>,
    cfg: &SeriesConfig<F>,
) -> Result<SeriesMeasure<F>, MeasureError> {
    check_dominant(n, m, a, b)?;
    let (ra, rb) = (a.norm(), b.norm());
    let (ln_a, ln_b) = (ra.ln(), rb.ln());
    let (nf, mf) = (F::lit(n as f64), F::lit(m as f64));
    let (ua, ub) = (a / ra, b / rb);
    // Unit phase of b^{-m} (b/a)^n, advanced once per k; exact for real inputs.
    let step = powu(ub.conj(), m) * powu(ub * ua.conj(), n);
    let sign_step = if n % 2 == 1 { -F::one() } else { F::one() };

    let mut phase = Complex::new(F::one(), F::zero());
    let mut sign = F::one();
    let mut sum = F::zero();
    let mut comp = F::zero();
    let mut terms = Vec::new();
    let mut prev_mag: Option<F> = None;
    let mut ratio = F::zero();
    let mut stalled = 0usize;
    let mut converged = false;

    for k in 1..=cfg.k_max {
        phase = phase * step;
        phase = phase / phase.norm();
        sign = sign * sign_step;
        let kf = F::from_usize_lossy(k);
        let (kn, km) = (k as u64 * n as u64, k as u64 * m as u64);
        let ln_mag = ln_binomial::<F>(kn - 1, km - 1) - kf * mf * ln_b + kf * nf * (ln_b - ln_a);
        let magnitude = ln_mag.exp() / (kf * mf);
        let value = sign * magnitude * phase.re;
        // Kahan summation: the tail can be long at the dominance boundary.
        let y = value - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        terms.push(SeriesSummand { k, value, magnitude });

        if let Some(pm) = prev_mag {
            ratio = magnitude / pm;
            if ratio >= F::one() - F::lit(1e-6) {
                stalled += 1;
                if stalled >= cfg.window {
                    return Err(MeasureError::DivergenceDetected {
                        k,
                        ratio: ratio.to_f64().unwrap_or(f64::NAN),
                    });
                }
            } else {
                stalled = 0;
            }
        }
        prev_mag = Some(magnitude);
        if magnitude < cfg.tol {
            converged = true;
            break;
        }
    }

    let last = terms.last().map_or(F::zero(), |t| t.magnitude);
    // Fitting last ~ c k^{-p} with p = (1 - ratio) K bounds the tail by last K / (p - 1);
    // for geometric decay this is slightly above last r / (1 - r).
    let big_k = F::from_usize_lossy(terms.len());
    let p = (F::one() - ratio) * big_k;
    let tail = if terms.len() < 2 {
        last
    } else if p > F::one() {
        last * big_k / (p - F::one())
    } else {
        F::infinity()
    };
    let log_value = ln_a - sum;
    let log_error = tail + F::epsilon() * F::from_usize_lossy(terms.len() + 4) * (ln_a.abs() + sum.abs());
    Ok(SeriesMeasure {
        result: MeasureResult::from_log(log_value, log_error, Method::Series),
        terms,
        converged,
    })
}

/// The k-th contour integral `I_k = int_0^{2pi} e^{inkt} (-a e^{imt} - b)^{-k} dt` and
/// the summand `-(1/2pi)(1/k) Re I_k` it contributes to `log M - log|a|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesTerm<F> {
    pub k: usize,
    pub closed_form: F,
    /// `I_k` from the residue formula.
    pub contour: Complex<F>,
    /// `I_k` by direct quadrature, when requested.
    pub i_k: Option<Complex<F>>,
    pub quadrature_error: Option<F>,
}

pub fn residue_term<F: Real>(
    k: usize,
    n: u32,
    m: u32,
    a: Complex<F>,
    b: Complex<F>,
    quad: Option<&QuadConfig<F>>,
) -> Result<SeriesTerm<F>, MeasureError> {
    check_dominant(n, m, a, b)?;
    if k == 0 {
        return Err(MeasureError::ZeroIndex);
    }
    let two_pi = F::TAU();
    let contour = if !k.is_multiple_of(m as usize) {
        Complex::new(F::zero(), F::zero())
    } else {
        // Only the coefficient of w^{k-1} in (1 + ...)^{-k} survives: j = k/m.
        let j = (k / m as usize) as u64;
        let (jn, jnm) = (j * n as u64, j * (n - m) as u64);
        let ln_mag = ln_binomial::<F>(jn - 1, k as u64 - 1) + F::lit(jnm as f64) * b.norm().ln()
            - F::lit(jn as f64) * a.norm().ln();
        let unit = powu(b / b.norm(), jnm as u32) * powu((a / a.norm()).conj(), jn as u32);
        let sign = if jn % 2 == 1 { -F::one() } else { F::one() };
        unit * (two_pi * sign * ln_mag.exp())
    };
    let closed_form = -contour.re / (two_pi * F::from_usize_lossy(k));

    let (i_k, quadrature_error) = match quad {
        None => (None, None),
        Some(cfg) => {
            let (nk, mk) = (F::lit(n as f64 * k as f64), F::lit(m as f64));
            let kk = k as u32;
            let f = |t: F| {
                let w = -(a * Complex::from_polar(F::one(), mk * t) + b);
                Complex::from_polar(F::one(), nk * t) * powu(w.inv(), kk)
            };
            let panels = (2 * n as usize * k).max(8);
            let breaks: Vec<F> = (0..=panels)
                .map(|j| two_pi * F::from_usize_lossy(j) / F::from_usize_lossy(panels))
                .collect();
            let q = integrate(f, &breaks, cfg)?;
            (Some(q.value), Some(q.error))
        }
    };
    Ok(SeriesTerm {
        k,
        closed_form,
        contour,
        i_k,
        quadrature_error,
    })
}

fn check_dominant<F: Real>(n: u32, m: u32, a: Complex<F>, b: Complex<F>) -> Result<(), MeasureError> {
    if m == 0 || m >= n {
        return Err(crate::poly::PolyError::ExponentOrder { n, m }.into());
    }
    let g = n.gcd(&m);
    if g != 1 {
        return Err(MeasureError::CoprimalityViolated { gcd: g });
    }
    if a.norm() == F::zero() || b.norm() == F::zero() {
        return Err(MeasureError::ZeroCoefficient);
    }
    let gap = a.norm() - b.norm();
    if gap < F::one() {
        return Err(MeasureError::DominanceViolated {
            gap: gap.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}
