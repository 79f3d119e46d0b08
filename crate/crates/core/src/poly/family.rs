use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::{PolyError, TrinomialSpec};
use crate::scalar::Real;

/// The three sign patterns every `z^n + a z^m ± 1` reduces to under `z -> -z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `z^n - a z^m + 1`, `m` odd, `n` even.
    R,
    /// `z^n + a z^m - 1`, `n` odd.
    S,
    /// `z^n - a z^m - 1`.
    T,
}

impl Family {
    /// Signs `(middle, constant)` of the family polynomial.
    pub fn signs(self) -> (i64, i64) {
        match self {
            Family::R => (-1, 1),
            Family::S => (1, -1),
            Family::T => (-1, -1),
        }
    }

    pub fn parity_ok(self, n: u32, m: u32) -> bool {
        match self {
            Family::R => m % 2 == 1 && n.is_multiple_of(2),
            Family::S => n % 2 == 1,
            Family::T => true,
        }
    }

    pub fn parity_requirement(self) -> &'static str {
        match self {
            Family::R => "m odd and n even",
            Family::S => "n odd",
            Family::T => "no parity condition",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::R => "R",
            Family::S => "S",
            Family::T => "T",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" | "r" => Ok(Family::R),
            "S" | "s" => Ok(Family::S),
            "T" | "t" => Ok(Family::T),
            _ => Err(format!("unknown family '{s}' (expected R, S or T)")),
        }
    }
}

/// `R_{n,m,a}`, `S_{n,m,a}` or `T_{n,m,a}` with `a > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyForm<F> {
    pub family: Family,
    pub n: u32,
    pub m: u32,
    pub a: F,
}

impl<F: Real> FamilyForm<F> {
    pub fn new(family: Family, n: u32, m: u32, a: F) -> Result<Self, PolyError> {
        if m == 0 || m >= n {
            return Err(PolyError::ExponentOrder { n, m });
        }
        if !a.is_finite() || a <= F::zero() {
            return Err(PolyError::ZeroCoefficient);
        }
        if !family.parity_ok(n, m) {
            return Err(PolyError::ParityViolated {
                family,
                requirement: family.parity_requirement(),
            });
        }
        Ok(Self { family, n, m, a })
    }

    pub fn gcd(&self) -> u32 {
        self.n.gcd(&self.m)
    }

    pub fn to_spec(&self) -> TrinomialSpec<F> {
        let (sa, sb) = self.family.signs();
        TrinomialSpec::real(
            self.n,
            self.m,
            self.a * F::from_i64(sa).unwrap(),
            F::from_i64(sb).unwrap(),
        )
        .expect("family form is a valid trinomial")
    }

    /// Exact evaluation at an integer point when `a` is integral.
    pub(crate) fn eval_integer(&self, z: i64) -> Option<i128> {
        if self.a.fract() != F::zero() {
            return None;
        }
        let a = self.a.to_i64()? as i128;
        let (sa, sb) = self.family.signs();
        let z = z as i128;
        Some(z.pow(self.n) + sa as i128 * a * z.pow(self.m) + sb as i128)
    }
}

impl<F: Real> fmt::Display for FamilyForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{},{},{}}}", self.family, self.n, self.m, self.a)
    }
}

/// Result of [`normalize`]: the family form and whether `z -> -z` was applied.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Normalized<F> {
    pub form: FamilyForm<F>,
    pub flipped: bool,
}

/// Maps `z^n + a z^m + b` (`b = ±1`) to the unique family form with the same
/// roots up to the reported sign flip.
///
/// Under `z -> -z` the monic trinomial becomes `z^n + (-1)^(n+m) a z^m + (-1)^n b`.
pub fn normalize<F: Real>(n: u32, m: u32, a: i64, b: i64) -> Result<Normalized<F>, PolyError> {
    if m == 0 || m >= n {
        return Err(PolyError::ExponentOrder { n, m });
    }
    if a == 0 {
        return Err(PolyError::ZeroCoefficient);
    }
    if b != 1 && b != -1 {
        return Err(PolyError::ConstantNotUnit(b));
    }
    let flip_sign = |k: u32| if k.is_multiple_of(2) { 1 } else { -1 };
    let candidates = [(a, b, false), (a * flip_sign(n + m), b * flip_sign(n), true)];
    for (ca, cb, flipped) in candidates {
        for family in [Family::R, Family::S, Family::T] {
            let (sa, sb) = family.signs();
            if ca.signum() == sa && cb == sb && family.parity_ok(n, m) {
                let form = FamilyForm::new(family, n, m, F::from_i64(ca.abs()).unwrap())?;
                return Ok(Normalized { form, flipped });
            }
        }
    }
    Err(PolyError::NotRepresentable { n, m, a, b })
}
