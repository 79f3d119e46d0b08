//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Panels are refined largest-error-first. Known singular points (for the
//! Jensen integrand, zeros on the unit circle) are passed as breakpoints so
//! they only ever sit at panel ends, where Kronrod nodes never evaluate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;
use thiserror::Error;

use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Values the integrator can accumulate: real scalars and complex numbers.
pub trait QuadValue<F>: Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<F, Output = Self> {
    fn magnitude(&self) -> F;
}

impl<F: Real> QuadValue<F> for F {
    fn magnitude(&self) -> F {
        self.abs()
    }
}

impl<F: Real> QuadValue<F> for Complex<F> {
    fn magnitude(&self) -> F {
        self.norm()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig<F> {
    pub abs_tol: F,
    pub rel_tol: F,
    /// Integrand evaluations allowed before giving up.
    pub max_evals: usize,
    /// Equal panels each breakpoint interval is cut into before refinement.
    pub initial_panels: usize,
}

impl<F: Real> Default for QuadConfig<F> {
    fn default() -> Self {
        Self {
            abs_tol: F::tol(1e-10, 100.0),
            rel_tol: F::zero(),
            max_evals: 1_000_000,
            initial_panels: 1,
        }
    }
}

impl<F: Real> QuadConfig<F> {
    pub fn with_abs_tol(mut self, tol: F) -> Self {
        self.abs_tol = tol;
        self
    }

    pub fn with_initial_panels(mut self, panels: usize) -> Self {
        self.initial_panels = panels.max(1);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature<F, V> {
    pub value: V,
    pub error: F,
    pub evaluations: usize,
    pub panels: usize,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuadError {
    #[error("quadrature budget of {evaluations} evaluations exhausted (error estimate {error:e})")]
    BudgetExceeded { evaluations: usize, error: f64 },
    #[error("integration interval must be finite and nonempty")]
    BadInterval,
}

struct Panel<F, V> {
    lo: F,
    hi: F,
    value: V,
    error: F,
}

impl<F: Real, V> PartialEq for Panel<F, V> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<F: Real, V> Eq for Panel<F, V> {}
impl<F: Real, V> PartialOrd for Panel<F, V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<F: Real, V> Ord for Panel<F, V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            // Lower left endpoint first among equal errors, for a fixed order.
            .then_with(|| other.lo.partial_cmp(&self.lo).unwrap_or(Ordering::Equal))
    }
}

fn kronrod<F: Real, V: QuadValue<F>>(f: &impl Fn(F) -> V, lo: F, hi: F) -> (V, F) {
    let half = (hi - lo) * F::lit(0.5);
    let centre = lo + half;
    let fc = f(centre);
    let mut k = fc * F::lit(WGK[7]);
    let mut g = fc * F::lit(WG[3]);
    for i in 0..7 {
        let dx = half * F::lit(XGK[i]);
        let pair = f(centre - dx) + f(centre + dx);
        k = k + pair * F::lit(WGK[i]);
        if i % 2 == 1 {
            g = g + pair * F::lit(WG[i / 2]);
        }
    }
    let k = k * half;
    let g = g * half;
    (k, (k - g).magnitude())
}

/// Integrates `f` over `[breaks[0], breaks.last()]`, splitting at every
/// interior breakpoint. `breaks` must be sorted and contain at least two points.
pub fn integrate<F: Real, V: QuadValue<F>>(
    f: impl Fn(F) -> V,
    breaks: &[F],
    cfg: &QuadConfig<F>,
) -> Result<Quadrature<F, V>, QuadError> {
    if breaks.len() < 2 || breaks.iter().any(|x| !x.is_finite()) {
        return Err(QuadError::BadInterval);
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    let per = cfg.initial_panels.max(1);
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // Finite by the check above; skips empty and reversed intervals.
        if hi <= lo {
            continue;
        }
        let width = (hi - lo) / F::from_usize_lossy(per);
        for j in 0..per {
            let a = lo + width * F::from_usize_lossy(j);
            let b = if j + 1 == per { hi } else { a + width };
            let (value, error) = kronrod(&f, a, b);
            evaluations += 15;
            heap.push(Panel {
                lo: a,
                hi: b,
                value,
                error,
            });
        }
    }
    if heap.is_empty() {
        return Err(QuadError::BadInterval);
    }

    // Panels too narrow to split further are parked here with their error.
    let mut settled: Vec<Panel<F, V>> = Vec::new();
    loop {
        let total_err = heap
            .iter()
            .chain(settled.iter())
            .fold(F::zero(), |acc, p| acc + p.error);
        let total = sum_in_order(heap.iter().chain(settled.iter()));
        let target = cfg.abs_tol.max(cfg.rel_tol * total.magnitude());
        if total_err <= target || heap.is_empty() {
            let panels = heap.len() + settled.len();
            if total_err > target && settled.iter().any(|p| p.error > F::zero()) {
                return Err(QuadError::BudgetExceeded {
                    evaluations,
                    error: total_err.to_f64().unwrap_or(f64::INFINITY),
                });
            }
            return Ok(Quadrature {
                value: total,
                error: total_err,
                evaluations,
                panels,
            });
        }
        if evaluations + 30 > cfg.max_evals {
            return Err(QuadError::BudgetExceeded {
                evaluations,
                error: total_err.to_f64().unwrap_or(f64::INFINITY),
            });
        }
        let worst = heap.pop().expect("nonempty");
        let mid = worst.lo + (worst.hi - worst.lo) * F::lit(0.5);
        if !(mid > worst.lo && mid < worst.hi)
            || worst.hi - worst.lo <= F::epsilon() * F::lit(64.0) * worst.lo.abs().max(worst.hi.abs())
        {
            settled.push(worst);
            continue;
        }
        for (a, b) in [(worst.lo, mid), (mid, worst.hi)] {
            let (value, error) = kronrod(&f, a, b);
            heap.push(Panel {
                lo: a,
                hi: b,
                value,
                error,
            });
        }
        evaluations += 30;
    }
}

/// Sum of panel values ordered by left endpoint, so the result does not
/// depend on heap layout.
fn sum_in_order<'a, F: Real, V: QuadValue<F> + 'a>(panels: impl Iterator<Item = &'a Panel<F, V>>) -> V {
    let mut v: Vec<&Panel<F, V>> = panels.collect();
    v.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(Ordering::Equal));
    v.into_iter().fold(V::zero(), |acc, p| acc + p.value)
}

/// Convenience wrapper for a single interval.
pub fn integrate_interval<F: Real, V: QuadValue<F>>(
    f: impl Fn(F) -> V,
    lo: F,
    hi: F,
    cfg: &QuadConfig<F>,
) -> Result<Quadrature<F, V>, QuadError> {
    integrate(f, &[lo, hi], cfg)
}
