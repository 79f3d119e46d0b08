use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::Zero;

use super::{ComplexPoly, Evaluator, IntPolynomial, PolyError};
use crate::scalar::Real;

/// The trinomial `z^n + a z^m + b` with `0 < m < n` and `a, b` nonzero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrinomialSpec<F> {
    n: u32,
    m: u32,
    a: Complex<F>,
    b: Complex<F>,
}

impl<F: Real> TrinomialSpec<F> {
    pub fn new(n: u32, m: u32, a: Complex<F>, b: Complex<F>) -> Result<Self, PolyError> {
        if m == 0 || m >= n {
            return Err(PolyError::ExponentOrder { n, m });
        }
        if a.is_zero() || b.is_zero() {
            return Err(PolyError::ZeroCoefficient);
        }
        if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
            return Err(PolyError::NonFiniteCoefficient);
        }
        Ok(Self { n, m, a, b })
    }

    /// Real-coefficient convenience constructor.
    pub fn real(n: u32, m: u32, a: F, b: F) -> Result<Self, PolyError> {
        Self::new(n, m, Complex::new(a, F::zero()), Complex::new(b, F::zero()))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> Complex<F> {
        self.a
    }

    pub fn b(&self) -> Complex<F> {
        self.b
    }

    pub fn gcd(&self) -> u32 {
        self.n.gcd(&self.m)
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd() == 1
    }

    /// `z^n + a z^m + b`.
    pub fn eval(&self, z: Complex<F>) -> Complex<F> {
        let zm = powu(z, self.m);
        let zn = zm * powu(z, self.n - self.m);
        compensated_sum3(zn, self.a * zm, self.b)
    }

    /// The trinomial with `z` replaced by `z^k`.
    pub fn inflate(&self, k: u32) -> Result<Self, PolyError> {
        let n = self.n.checked_mul(k).ok_or(PolyError::ExponentOverflow)?;
        Self::new(n, self.m * k, self.a, self.b)
    }

    /// Integer coefficients as `(a, b)`, if both are exact integers.
    pub fn integer_coefficients(&self) -> Option<(BigInt, BigInt)> {
        Some((integral(self.a)?, integral(self.b)?))
    }

    pub fn to_dense(&self) -> Result<IntPolynomial, PolyError> {
        let (a, b) = self.integer_coefficients().ok_or(PolyError::NonIntegerCoefficient)?;
        let mut coeffs = vec![BigInt::zero(); self.n as usize + 1];
        coeffs[0] = b;
        coeffs[self.m as usize] = a;
        coeffs[self.n as usize] = BigInt::from(1);
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn to_complex_poly(&self) -> ComplexPoly<F> {
        let mut coeffs = vec![Complex::zero(); self.n as usize + 1];
        coeffs[0] = self.b;
        coeffs[self.m as usize] = self.a;
        coeffs[self.n as usize] = Complex::new(F::one(), F::zero());
        ComplexPoly::new(coeffs)
    }
}

fn integral<F: Real>(c: Complex<F>) -> Option<BigInt> {
    if c.im != F::zero() || c.re.fract() != F::zero() {
        return None;
    }
    float_to_bigint(c.re.to_f64()?)
}

fn float_to_bigint(v: f64) -> Option<BigInt> {
    if !v.is_finite() {
        return None;
    }
    let bits = v.abs().to_bits();
    let exponent = ((bits >> 52) & 0x7ff) as i64 - 1075;
    let mantissa = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
    let mut out = BigInt::from(mantissa);
    if exponent >= 0 {
        out <<= exponent as usize;
    } else {
        out >>= (-exponent) as usize;
    }
    Some(if v < 0.0 { -out } else { out })
}

/// Exponentiation by squaring.
pub fn powu<F: Real>(z: Complex<F>, mut k: u32) -> Complex<F> {
    let mut base = z;
    let mut acc = Complex::new(F::one(), F::zero());
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base;
        }
        k >>= 1;
        if k > 0 {
            base = base * base;
        }
    }
    acc
}

#[inline]
fn two_sum<F: Real>(x: F, y: F) -> (F, F) {
    let s = x + y;
    let bp = s - x;
    let err = (x - (s - bp)) + (y - bp);
    (s, err)
}

/// `x + y + w` with the rounding error of the two additions folded back in.
fn compensated_sum3<F: Real>(x: Complex<F>, y: Complex<F>, w: Complex<F>) -> Complex<F> {
    let part = |x: F, y: F, w: F| {
        let (s1, e1) = two_sum(x, y);
        let (s2, e2) = two_sum(s1, w);
        s2 + (e1 + e2)
    };
    Complex::new(part(x.re, y.re, w.re), part(x.im, y.im, w.im))
}

impl<F: Real> Evaluator<F> for TrinomialSpec<F> {
    fn degree(&self) -> usize {
        self.n as usize
    }

    fn leading(&self) -> Complex<F> {
        Complex::new(F::one(), F::zero())
    }

    fn eval_with_derivative(&self, z: Complex<F>) -> (Complex<F>, Complex<F>) {
        let zm1 = powu(z, self.m - 1);
        let zm = zm1 * z;
        let zn1 = zm1 * powu(z, self.n - self.m);
        let zn = zn1 * z;
        let p = compensated_sum3(zn, self.a * zm, self.b);
        let nf = F::from_u32(self.n).unwrap();
        let mf = F::from_u32(self.m).unwrap();
        let dp = zn1 * nf + self.a * zm1 * mf;
        (p, dp)
    }

    fn magnitude_bound(&self, r: F) -> F {
        r.powi(self.n as i32) + self.a.norm() * r.powi(self.m as i32) + self.b.norm()
    }

    /// Two Newton-polygon circles when the middle term dominates, otherwise a
    /// single circle at the geometric mean modulus `|b|^(1/n)`.
    fn initial_points(&self) -> Vec<Complex<F>> {
        let (n, m) = (self.n as usize, self.m as usize);
        let abs_a = self.a.norm();
        let abs_b = self.b.norm();
        let mut pts = Vec::with_capacity(n);
        if abs_a > abs_b + F::one() {
            // a z^m + b = 0 and z^(n-m) + a = 0 give the two clusters.
            let inner = (abs_b / abs_a).powf(F::one() / F::from_usize_lossy(m));
            let outer = abs_a.powf(F::one() / F::from_usize_lossy(n - m));
            let inner_phase = (-self.b / self.a).arg();
            let outer_phase = (-self.a).arg();
            push_circle(&mut pts, m, inner, inner_phase, F::lit(0.011));
            push_circle(&mut pts, n - m, outer, outer_phase, F::lit(0.017));
        } else {
            let r = abs_b.powf(F::one() / F::from_usize_lossy(n));
            push_circle(&mut pts, n, r, F::lit(0.4), F::zero());
        }
        pts
    }
}

/// `count` points on the circle of radius `r`, at the `count`-th roots of
/// `e^{i phase}`, nudged by `jitter` so no start sits on a symmetry axis.
pub(crate) fn push_circle<F: Real>(pts: &mut Vec<Complex<F>>, count: usize, r: F, phase: F, jitter: F) {
    let two_pi = F::TAU();
    let cnt = F::from_usize_lossy(count);
    for j in 0..count {
        let jf = F::from_usize_lossy(j);
        let theta = (phase + two_pi * jf) / cnt + jitter * (F::one() + jf / cnt) + F::lit(0.003);
        let rr = r * (F::one() + jitter * F::lit(0.5));
        pts.push(Complex::from_polar(rr, theta));
    }
}
