use num_complex::Complex;
use num_traits::Zero;

use super::{Evaluator, PolyError};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootConfig<F> {
    pub max_iterations: usize,
    /// A root set whose `residual_bound` exceeds this is flagged uncertified.
    pub certification_tol: F,
}

impl<F: Real> Default for RootConfig<F> {
    fn default() -> Self {
        Self {
            max_iterations: 1000,
            certification_tol: F::tol(1e-9, 1e4),
        }
    }
}

/// All complex roots of a polynomial with a per-set error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet<F> {
    pub roots: Vec<Complex<F>>,
    /// `max |p(r)| / |p'(r)|` over the roots: the Newton step each root would still take.
    pub residual_bound: F,
    /// Per-root version of `residual_bound`, same order as `roots`.
    pub residuals: Vec<F>,
    pub certified: bool,
    pub iterations: usize,
}

impl<F: Real> RootSet<F> {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Largest root modulus.
    pub fn max_modulus(&self) -> F {
        self.roots.iter().map(|r| r.norm()).fold(F::zero(), F::max)
    }
}

/// Aberth–Ehrlich simultaneous iteration followed by one Newton pass.
///
/// Roots are frozen individually once `|p(z)|` drops to the rounding level of
/// the evaluation or the correction becomes negligible. Deterministic for a
/// fixed polynomial and configuration.
pub fn all_roots<F: Real, E: Evaluator<F>>(p: &E, cfg: &RootConfig<F>) -> Result<RootSet<F>, PolyError> {
    if p.degree() == 0 {
        return Err(PolyError::DegreeTooSmall);
    }
    if let Some((k, deflated)) = p.strip_zero_roots() {
        let mut set = if deflated.degree() > 0 {
            all_roots(&deflated, cfg)?
        } else {
            RootSet {
                roots: Vec::new(),
                residual_bound: F::zero(),
                residuals: Vec::new(),
                certified: true,
                iterations: 0,
            }
        };
        set.roots.extend(std::iter::repeat_n(Complex::zero(), k));
        set.residuals.extend(std::iter::repeat_n(F::zero(), k));
        return Ok(set);
    }

    let degree = p.degree();
    let mut z = p.initial_points();
    debug_assert_eq!(z.len(), degree);
    let eps = F::epsilon();
    let rounding = eps * F::lit(4.0) * F::from_usize_lossy(degree + 1);
    let mut frozen = vec![false; degree];
    let mut iterations = 0;

    while iterations < cfg.max_iterations && frozen.iter().any(|f| !f) {
        iterations += 1;
        for i in 0..degree {
            if frozen[i] {
                continue;
            }
            let zi = z[i];
            let (pv, dpv) = p.eval_with_derivative(zi);
            if pv.norm() <= rounding * p.magnitude_bound(zi.norm()) {
                frozen[i] = true;
                continue;
            }
            let newton = if dpv.is_zero() {
                // Stationary point: take a small step off it.
                Complex::new(zi.norm().max(F::one()) * F::lit(1e-3), F::lit(1e-3))
            } else {
                pv / dpv
            };
            let repulsion = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex::zero(), |acc, (_, &zj)| acc + (zi - zj).inv());
            let denom = Complex::new(F::one(), F::zero()) - newton * repulsion;
            let step = if denom.is_zero() { newton } else { newton / denom };
            let next = zi - step;
            if !(next.re.is_finite() && next.im.is_finite()) {
                continue;
            }
            z[i] = next;
            if step.norm() <= eps * F::lit(2.0) * next.norm() {
                frozen[i] = true;
            }
        }
    }

    // One Newton polish, kept only where it does not increase |p|.
    for zi in z.iter_mut() {
        let (pv, dpv) = p.eval_with_derivative(*zi);
        if dpv.is_zero() {
            continue;
        }
        let cand = *zi - pv / dpv;
        let (pc, _) = p.eval_with_derivative(cand);
        if pc.norm() <= pv.norm() {
            *zi = cand;
        }
    }

    let residuals: Vec<F> = z
        .iter()
        .map(|&zi| {
            let (pv, dpv) = p.eval_with_derivative(zi);
            if pv.is_zero() {
                F::zero()
            } else if dpv.is_zero() {
                F::infinity()
            } else {
                (pv / dpv).norm()
            }
        })
        .collect();
    let residual_bound = residuals.iter().copied().fold(F::zero(), F::max);
    let certified = residual_bound <= cfg.certification_tol;

    if frozen.iter().any(|f| !f) && !certified {
        return Err(PolyError::ConvergenceFailure {
            iterations,
            residual: residual_bound.to_f64().unwrap_or(f64::INFINITY),
            best: z
                .iter()
                .map(|c| (c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN)))
                .collect(),
        });
    }

    Ok(RootSet {
        roots: z,
        residual_bound,
        residuals,
        certified,
        iterations,
    })
}
