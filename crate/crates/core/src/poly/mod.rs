//! Trinomial and dense polynomial representations, evaluation, complex root
//! finding and real-root classification for the `R`, `S`, `T` families.

mod family;
mod intpoly;
mod real_roots;
mod roots;
mod trinomial;

use num_complex::Complex;
use num_traits::Zero;
use thiserror::Error;

pub use family::{normalize, Family, FamilyForm, Normalized};
pub use intpoly::IntPolynomial;
pub use real_roots::{classify_real_roots, ClassifiedRealRoots, LabeledRoot, RootLabel};
pub use roots::{all_roots, RootConfig, RootSet};
pub use trinomial::{powu, TrinomialSpec};

use crate::scalar::Real;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PolyError {
    #[error("exponents must satisfy 0 < m < n (got n = {n}, m = {m})")]
    ExponentOrder { n: u32, m: u32 },
    #[error("coefficients a and b must be nonzero")]
    ZeroCoefficient,
    #[error("coefficients must be finite")]
    NonFiniteCoefficient,
    #[error("degree overflow")]
    ExponentOverflow,
    #[error("coefficient is not an integer")]
    NonIntegerCoefficient,
    #[error("polynomial must have degree at least 1")]
    DegreeTooSmall,
    #[error("({n}, {m}, {a}, {b}) is not of the form R, S or T")]
    NotRepresentable { n: u32, m: u32, a: i64, b: i64 },
    #[error("constant term must be +1 or -1 (got {0})")]
    ConstantNotUnit(i64),
    #[error("gcd(m, n) = {gcd} but coprime exponents are required")]
    CoprimalityViolated { gcd: u32 },
    #[error("{family} requires {requirement}")]
    ParityViolated { family: Family, requirement: &'static str },
    #[error("real-root classification needs a >= 2 (got {0})")]
    CoefficientTooSmall(f64),
    #[error("root iteration did not converge after {iterations} iterations (residual {residual:e})")]
    ConvergenceFailure {
        iterations: usize,
        residual: f64,
        best: Vec<(f64, f64)>,
    },
    #[error("expected {expected} real roots but bisection located {found}")]
    ClassificationMismatch { expected: usize, found: usize },
}

/// Anything the simultaneous root iteration can run on.
pub trait Evaluator<F: Real> {
    fn degree(&self) -> usize;

    fn leading(&self) -> Complex<F>;

    /// `(p(z), p'(z))`.
    fn eval_with_derivative(&self, z: Complex<F>) -> (Complex<F>, Complex<F>);

    /// `sum |c_k| r^k`: the scale a computed `|p(z)|` is judged against.
    fn magnitude_bound(&self, r: F) -> F;

    fn initial_points(&self) -> Vec<Complex<F>>;

    /// Multiplicity of the root at zero together with the deflated polynomial.
    fn strip_zero_roots(&self) -> Option<(usize, ComplexPoly<F>)> {
        None
    }
}

/// Dense polynomial with complex coefficients in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly<F> {
    coeffs: Vec<Complex<F>>,
}

impl<F: Real> ComplexPoly<F> {
    pub fn new(mut coeffs: Vec<Complex<F>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex<F>] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex<F>) -> Complex<F> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    /// Expands `lead * prod (z - r)`.
    pub fn from_roots(lead: Complex<F>, roots: &[Complex<F>]) -> Self {
        let mut c = vec![lead];
        for &r in roots {
            let mut next = vec![Complex::zero(); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] = next[k + 1] + ck;
                next[k] = next[k] - ck * r;
            }
            c = next;
        }
        Self::new(c)
    }
}

impl<F: Real> Evaluator<F> for ComplexPoly<F> {
    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn leading(&self) -> Complex<F> {
        self.coeffs.last().copied().unwrap_or_else(Complex::zero)
    }

    fn eval_with_derivative(&self, z: Complex<F>) -> (Complex<F>, Complex<F>) {
        let mut p = Complex::zero();
        let mut dp = Complex::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    fn magnitude_bound(&self, r: F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * r + c.norm())
    }

    /// Points on the circles given by the upper convex hull of
    /// `(k, log|c_k|)`, one circle per hull edge.
    fn initial_points(&self) -> Vec<Complex<F>> {
        let pts: Vec<(usize, F)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.norm().ln()))
            .collect();
        let mut hull: Vec<(usize, F)> = Vec::new();
        for &p in &pts {
            while hull.len() >= 2 {
                let (k1, y1) = hull[hull.len() - 2];
                let (k2, y2) = hull[hull.len() - 1];
                // Drop the middle point unless it lies strictly above the chord.
                let cross = (y2 - y1) * F::from_usize_lossy(p.0 - k1) - (p.1 - y1) * F::from_usize_lossy(k2 - k1);
                if cross <= F::zero() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let degree = self.degree();
        let mut out = Vec::with_capacity(degree);
        for (edge, w) in hull.windows(2).enumerate() {
            let (i, yi) = w[0];
            let (j, yj) = w[1];
            let count = j - i;
            let r = ((yi - yj) / F::from_usize_lossy(count)).exp();
            let phase = F::TAU() * F::from_usize_lossy(edge) / F::from_usize_lossy(degree.max(1));
            trinomial::push_circle(&mut out, count, r, phase + F::lit(0.4), F::lit(0.01));
        }
        out
    }

    fn strip_zero_roots(&self) -> Option<(usize, ComplexPoly<F>)> {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k > 0).then(|| (k, ComplexPoly::new(self.coeffs[k..].to_vec())))
    }
}
