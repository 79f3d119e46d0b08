use std::fmt;

use super::{Family, FamilyForm, PolyError};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootLabel {
    R1,
    R2,
    S1,
    S2,
    S3,
    T1,
    T2,
    T3,
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootLabel::R1 => "r1",
            RootLabel::R2 => "r2",
            RootLabel::S1 => "s1",
            RootLabel::S2 => "s2",
            RootLabel::S3 => "s3",
            RootLabel::T1 => "t1",
            RootLabel::T2 => "t2",
            RootLabel::T3 => "t3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabeledRoot<F> {
    pub label: RootLabel,
    pub value: F,
    /// Found symbolically (`±1` when `a = 2`) rather than by bisection.
    pub exact: bool,
}

/// The real roots of a family polynomial, labeled by where they sit.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifiedRealRoots<F> {
    pub family: Family,
    pub roots: Vec<LabeledRoot<F>>,
}

impl<F: Real> ClassifiedRealRoots<F> {
    pub fn get(&self, label: RootLabel) -> Option<F> {
        self.roots.iter().find(|r| r.label == label).map(|r| r.value)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

const BISECTION_MAX_ITER: usize = 200;

/// Locates every real root of `R`, `S` or `T` by sign-change bisection on
/// the intervals fixed by the family's sign structure.
///
/// Expected counts: `R` has two real roots (`r1 >= 1`, `r2` in `(0, 1)`);
/// `S` has `s1` in `(0, 1)` and, for even `m`, `s2` in `(-1, 0)` and
/// `s3 <= -1`; `T` has `t1 > 1`, plus `t2` in `(-1, 0)` for even `n`, or
/// `t2` in `[-1, 0)` and `t3 <= -1` when `n`, `m` are both odd.
///
/// At `a = 2` the root at `±1` is detected exactly and the remaining root is
/// found on the deflated polynomial. When `m > n/2` that remaining root lies
/// beyond `±1`, so the boundary root takes the inner label (`r2 = 1`,
/// `s2 = -1`, `t2 = -1`); every other label keeps its open interval.
pub fn classify_real_roots<F: Real>(f: &FamilyForm<F>) -> Result<ClassifiedRealRoots<F>, PolyError> {
    if f.a.is_nan() || f.a < F::lit(2.0) {
        return Err(PolyError::CoefficientTooSmall(f.a.to_f64().unwrap_or(f64::NAN)));
    }
    let g = f.gcd();
    if g != 1 {
        return Err(PolyError::CoprimalityViolated { gcd: g });
    }
    if !f.family.parity_ok(f.n, f.m) {
        return Err(PolyError::ParityViolated {
            family: f.family,
            requirement: f.family.parity_requirement(),
        });
    }

    let dense = dense_real(f);
    let p = |x: F| horner(&dense, x);
    let one = F::one();
    let zero = F::zero();
    let bound = one + f.a;
    let boundary = f.a == F::lit(2.0);
    let (n_odd, m_odd) = (f.n % 2 == 1, f.m % 2 == 1);

    let mut out = Vec::new();
    let mut located = 0usize;
    let expected = match (f.family, n_odd, m_odd) {
        (Family::R, _, _) => 2,
        (Family::S, _, true) => 1,
        (Family::S, _, false) => 3,
        (Family::T, false, _) => 2,
        (Family::T, true, false) => 1,
        (Family::T, true, true) => 3,
    };
    let mut push = |label, value: Option<F>, exact| {
        if let Some(value) = value {
            located += 1;
            out.push(LabeledRoot { label, value, exact });
        }
    };

    match f.family {
        Family::R => {
            if boundary && f.eval_integer(1) == Some(0) {
                let other = deflated_root(f, &dense, one, &[(zero, one), (one, bound)])?;
                push(RootLabel::R1, Some(other.max(one)), other <= one);
                push(RootLabel::R2, Some(other.min(one)), other >= one);
            } else {
                push(RootLabel::R1, bisect(p, one, bound), false);
                push(RootLabel::R2, bisect(p, zero, one), false);
            }
        }
        Family::S => {
            push(RootLabel::S1, bisect(p, zero, one), false);
            if !m_odd {
                if boundary && f.eval_integer(-1) == Some(0) {
                    let other = deflated_root(f, &dense, -one, &[(-one, zero), (-bound, -one)])?;
                    push(RootLabel::S2, Some(other.max(-one)), other <= -one);
                    push(RootLabel::S3, Some(other.min(-one)), other >= -one);
                } else {
                    push(RootLabel::S2, bisect(p, -one, zero), false);
                    push(RootLabel::S3, bisect(p, -bound, -one), false);
                }
            }
        }
        Family::T => {
            push(RootLabel::T1, bisect(p, one, bound), false);
            if !n_odd {
                push(RootLabel::T2, bisect(p, -one, zero), false);
            } else if m_odd {
                if boundary && f.eval_integer(-1) == Some(0) {
                    let other = deflated_root(f, &dense, -one, &[(-one, zero), (-bound, -one)])?;
                    push(RootLabel::T2, Some(other.max(-one)), other <= -one);
                    push(RootLabel::T3, Some(other.min(-one)), other >= -one);
                } else {
                    push(RootLabel::T2, bisect(p, -one, zero), false);
                    push(RootLabel::T3, bisect(p, -bound, -one), false);
                }
            }
        }
    }

    if located != expected {
        return Err(PolyError::ClassificationMismatch {
            expected,
            found: located,
        });
    }
    Ok(ClassifiedRealRoots {
        family: f.family,
        roots: out,
    })
}

fn dense_real<F: Real>(f: &FamilyForm<F>) -> Vec<F> {
    let (sa, sb) = f.family.signs();
    let mut c = vec![F::zero(); f.n as usize + 1];
    c[0] = F::from_i64(sb).unwrap();
    c[f.m as usize] = f.a * F::from_i64(sa).unwrap();
    c[f.n as usize] = F::one();
    c
}

fn horner<F: Real>(c: &[F], x: F) -> F {
    c.iter().rev().fold(F::zero(), |acc, &ck| acc * x + ck)
}

/// Root of `p(x) / (x - x0)` in exactly one of `intervals`. When the quotient
/// also vanishes at `x0` the root is double and `x0` is returned.
fn deflated_root<F: Real>(f: &FamilyForm<F>, dense: &[F], x0: F, intervals: &[(F, F)]) -> Result<F, PolyError> {
    // Synthetic division; coefficients stay small integers, so this is exact.
    let n = dense.len() - 1;
    let mut q = vec![F::zero(); n];
    let mut carry = F::zero();
    for k in (1..=n).rev() {
        carry = dense[k] + carry * x0;
        q[k - 1] = carry;
    }
    if horner(&q, x0) == F::zero() {
        return Ok(x0);
    }
    let hits: Vec<F> = intervals
        .iter()
        .filter_map(|&(lo, hi)| bisect(|x| horner(&q, x), lo, hi))
        .collect();
    match hits.as_slice() {
        [r] => Ok(*r),
        _ => Err(PolyError::ClassificationMismatch {
            expected: if f.family == Family::S || f.family == Family::T {
                3
            } else {
                2
            },
            found: 1 + hits.len(),
        }),
    }
}

/// Bisection on an open bracket; `None` if the endpoint signs agree.
fn bisect<F: Real>(g: impl Fn(F) -> F, mut lo: F, mut hi: F) -> Option<F> {
    let mut glo = g(lo);
    let ghi = g(hi);
    if glo == F::zero() || ghi == F::zero() || glo.signum() == ghi.signum() {
        return None;
    }
    let tol = F::tol(1e-12, 4.0);
    let two = F::lit(2.0);
    for _ in 0..BISECTION_MAX_ITER {
        let mid = lo + (hi - lo) / two;
        if hi - lo <= tol.max(F::epsilon() * mid.abs()) || mid == lo || mid == hi {
            break;
        }
        let gm = g(mid);
        if gm == F::zero() {
            return Some(mid);
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    Some(lo + (hi - lo) / two)
}
