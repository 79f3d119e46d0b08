//! Irreducibility over the rationals: the `|a| >= n^2/3` threshold, Schinzel's
//! necessary conditions for reducibility, and a complete factorizer for `Z[x]`
//! (squarefree split, factoring mod a prime, Hensel lifting, recombination).

mod hensel;
mod modp;
mod schinzel;
mod zassenhaus;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use schinzel::{schinzel_b_ratio, schinzel_conditions, SchinzelReport};

use crate::poly::IntPolynomial;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("polynomial must have degree at least {0}")]
    DegreeTooSmall(usize),
    #[error("need 0 < m < n (got n = {n}, m = {m})")]
    ExponentOrder { n: u32, m: u32 },
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("coefficients must have gcd 1")]
    GcdNotOne,
    #[error("need gcd(m, n) = 1 (got {gcd})")]
    CoprimalityViolated { gcd: u32 },
    #[error("polynomial must be primitive")]
    NotPrimitive,
    #[error("internal verification failed: {0}")]
    InternalVerificationFailure(String),
}

/// `content * prod factor^multiplicity`, factors primitive with positive leading
/// coefficient, irreducible over the rationals, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationResult {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl FactorizationResult {
    pub fn expand(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::constant(self.content.clone()), |acc, (f, e)| {
                &acc * &f.pow(*e)
            })
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.content.abs().is_one() && self.factor_count() == 1
    }
}

impl fmt::Display for FactorizationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.content.is_one() || self.factors.is_empty() {
            parts.push(self.content.to_string());
        }
        for (p, e) in &self.factors {
            let base = if p.weight() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            };
            parts.push(if *e > 1 { format!("{base}^{e}") } else { base });
        }
        f.write_str(&parts.join(" * "))
    }
}

pub fn factorize(p: &IntPolynomial) -> Result<FactorizationResult, FactorError> {
    if p.degree().is_none_or(|d| d == 0) {
        return Err(FactorError::DegreeTooSmall(1));
    }
    let mut content = p.content();
    if p.leading().is_negative() {
        content = -content;
    }
    let mut prim = p.div_scalar(&content);
    let mut factors = Vec::new();
    let zeros = prim.trailing_zeros();
    if zeros > 0 {
        factors.push((IntPolynomial::monomial(1), zeros as u32));
        prim = IntPolynomial::new(prim.coeffs()[zeros..].to_vec());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (part, mult) in squarefree_decomposition(&prim)? {
        for f in zassenhaus::factor_squarefree(&part, &mut rng) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
    let result = FactorizationResult { content, factors };
    if result.expand() != *p {
        return Err(FactorError::InternalVerificationFailure(format!(
            "factors of {p} do not re-expand"
        )));
    }
    Ok(result)
}

/// Yun's algorithm over `Z` for a primitive `f` with positive leading coefficient:
/// pairwise coprime squarefree parts `a_i` with `f = prod a_i^i`.
pub fn squarefree_decomposition(f: &IntPolynomial) -> Result<Vec<(IntPolynomial, u32)>, FactorError> {
    let fail = || FactorError::InternalVerificationFailure("inexact division in squarefree split".into());
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let df = f.derivative();
    let g = f.gcd_primitive(&df);
    let mut b = f.div_exact(&g).ok_or_else(fail)?;
    let c = df.div_exact(&g).ok_or_else(fail)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd_primitive(&d);
        b = b.div_exact(&a).ok_or_else(fail)?;
        let c = d.div_exact(&a).ok_or_else(fail)?;
        if a.deg() > 0 {
            out.push((a, i));
        }
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// `x^n + a x^m +- 1` with `3|a| >= n^2`.
    Threshold,
    /// None of Schinzel's necessary conditions for reducibility holds.
    SchinzelNone,
    Factorizer,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::Threshold => "threshold",
            Certificate::SchinzelNone => "schinzel-none",
            Certificate::Factorizer => "factorizer",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    Irreducible(Certificate),
    /// `witness * cofactor` equals the input.
    Reducible {
        witness: IntPolynomial,
        cofactor: IntPolynomial,
    },
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Irreducible(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdVerdict {
    Irreducible,
    Inconclusive,
}

/// `x^n + a x^m +- 1` is irreducible when `|a| >= n^2 / 3`; otherwise nothing is claimed.
pub fn threshold_irreducible(n: u32, m: u32, a: &BigInt) -> Result<ThresholdVerdict, FactorError> {
    if n < 3 {
        return Err(FactorError::DegreeTooSmall(3));
    }
    if m == 0 || m >= n {
        return Err(FactorError::ExponentOrder { n, m });
    }
    let g = n.gcd(&m);
    if g != 1 {
        return Err(FactorError::CoprimalityViolated { gcd: g });
    }
    if a.is_zero() {
        return Err(FactorError::ZeroCoefficient);
    }
    Ok(if a.abs() * 3 >= BigInt::from(n) * n {
        ThresholdVerdict::Irreducible
    } else {
        ThresholdVerdict::Inconclusive
    })
}

/// Cheapest available certificate: threshold, then Schinzel, then the factorizer.
pub fn is_irreducible(p: &IntPolynomial) -> Result<IrreducibilityVerdict, FactorError> {
    if p.degree().is_none_or(|d| d == 0) {
        return Err(FactorError::DegreeTooSmall(1));
    }
    if !p.content().is_one() {
        return Err(FactorError::NotPrimitive);
    }
    if let Some((n, m, a, b, c)) = as_trinomial(p) {
        if a.is_one()
            && c.abs().is_one()
            && n.gcd(&m) == 1
            && n >= 3
            && threshold_irreducible(n, m, &b)? == ThresholdVerdict::Irreducible
        {
            return Ok(IrreducibilityVerdict::Irreducible(Certificate::Threshold));
        }
        if schinzel_conditions(&a, &b, &c, n, m)?.proves_irreducible() {
            return Ok(IrreducibilityVerdict::Irreducible(Certificate::SchinzelNone));
        }
    }
    let fac = factorize(p)?;
    if fac.is_irreducible() {
        return Ok(IrreducibilityVerdict::Irreducible(Certificate::Factorizer));
    }
    let witness = fac.factors[0].0.clone();
    let cofactor = p
        .div_exact(&witness)
        .ok_or_else(|| FactorError::InternalVerificationFailure("witness does not divide".into()))?;
    Ok(IrreducibilityVerdict::Reducible { witness, cofactor })
}

/// `(n, m, A, B, C)` when `p = A x^n + B x^m + C` with all three nonzero.
fn as_trinomial(p: &IntPolynomial) -> Option<(u32, u32, BigInt, BigInt, BigInt)> {
    let support: Vec<usize> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, _)| k)
        .collect();
    match support[..] {
        [0, m, n] => Some((n as u32, m as u32, p.coeff(n), p.coeff(m), p.coeff(0))),
        _ => None,
    }
}
