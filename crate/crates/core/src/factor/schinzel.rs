use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::FactorError;

/// Which of the four necessary conditions for reducibility of `A x^n + B x^m + C` hold.
///
/// If none holds the trinomial is irreducible. Condition (c) is evaluated for
/// `q` prime or `q = 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchinzelReport {
    pub m1: u32,
    pub n1: u32,
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_c: bool,
    pub cond_d: bool,
}

impl SchinzelReport {
    pub fn any(&self) -> bool {
        self.cond_a || self.cond_b || self.cond_c || self.cond_d
    }

    /// True when the report alone proves irreducibility.
    pub fn proves_irreducible(&self) -> bool {
        !self.any()
    }
}

pub fn schinzel_conditions(a: &BigInt, b: &BigInt, c: &BigInt, n: u32, m: u32) -> Result<SchinzelReport, FactorError> {
    if m == 0 || m >= n {
        return Err(FactorError::ExponentOrder { n, m });
    }
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(FactorError::ZeroCoefficient);
    }
    if !a.gcd(b).gcd(c).is_one() {
        return Err(FactorError::GcdNotOne);
    }
    let g = n.gcd(&m);
    let (m1, n1) = (m / g, n / g);
    let (aa, ab, ac) = (a.abs(), b.abs(), c.abs());

    let cond_a = ab <= aa.pow(m1) * ac.pow(n1 - m1) + 1;

    let cond_b = {
        let k = 2.0 * m1 as f64 * (n1 - m1) as f64;
        let ln_bound =
            k.ln() - k.ln().ln() + (m as f64 / n as f64) * ln_big(&aa) + ((n - m) as f64 / n as f64) * ln_big(&ac);
        let size_ok = ln_big(&ab) <= ln_bound + 1e-9;
        let unit_ok = aa.is_one() || ac.is_one();
        let big = aa.clone().max(ac.clone());
        size_ok && unit_ok && prime_factors(n1).into_iter().any(|p| exact_root(&big, p))
    };

    let ac_sign = (a * c).signum();
    let cond_c = divisors(g).into_iter().filter(|&q| q == 4 || is_prime(q)).any(|q| {
        exact_root(&aa, q)
            && exact_root(&ac, q)
            && match q {
                2 => (if n1 % 2 == 0 { ac_sign.clone() } else { -ac_sign.clone() }).is_positive(),
                4 => ac_sign.is_positive() && n1 % 2 == 0,
                _ => true,
            }
    });

    let four = BigInt::from(4);
    let cond_d = g.is_multiple_of(4)
        && ac_sign.is_positive()
        && n1 % 2 == 1
        && ((exact_root(&aa, 4) && exact_root(&(&four * &ac), 4))
            || (exact_root(&(&four * &aa), 4) && exact_root(&ac, 4)));

    Ok(SchinzelReport {
        m1,
        n1,
        cond_a,
        cond_b,
        cond_c,
        cond_d,
    })
}

/// Largest value of `2 m (n - m) / log(2 m (n - m)) / n^2` over `0 < m < n`, `gcd(m, n) = 1`.
///
/// Condition (b) for `x^n + a x^m +- 1` forces `|a|` below this multiple of `n^2`.
pub fn schinzel_b_ratio(n: u32) -> f64 {
    (1..n)
        .filter(|&m| m.gcd(&n) == 1)
        .map(|m| {
            let k = 2.0 * m as f64 * (n - m) as f64;
            k / k.ln() / (n as f64 * n as f64)
        })
        .fold(0.0, f64::max)
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return num_traits::ToPrimitive::to_f64(x).map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    num_traits::ToPrimitive::to_f64(&top).map_or(f64::INFINITY, f64::ln) + shift as f64 * std::f64::consts::LN_2
}

fn exact_root(x: &BigInt, k: u32) -> bool {
    let r = x.nth_root(k);
    r.pow(k) == *x
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(a: i64, b: i64, c: i64, n: u32, m: u32) -> SchinzelReport {
        schinzel_conditions(&a.into(), &b.into(), &c.into(), n, m).unwrap()
    }

    #[test]
    fn perron_like_case_all_false() {
        let r = run(1, 5, 1, 3, 1);
        assert_eq!((r.m1, r.n1), (1, 3));
        assert!(r.proves_irreducible());
    }

    #[test]
    fn equality_in_a() {
        assert!(run(1, 2, -1, 5, 2).cond_a);
    }

    #[test]
    fn common_exponent_gcd() {
        let r = run(1, 67, 1, 33, 11);
        assert_eq!((r.m1, r.n1), (1, 3));
        assert!(r.cond_c);
        assert!(!r.cond_a);
    }

    #[test]
    fn condition_d_pattern() {
        let r = run(4, 1, 1, 12, 4);
        assert_eq!((r.m1, r.n1), (1, 3));
        assert!(r.cond_d);
        assert!(!run(4, 1, -1, 12, 4).cond_d);
    }

    #[test]
    fn quadratic_sign_rule() {
        // x^4 + b x^2 - 1 with q = 2: n1 = 2 even, so ac > 0 is needed.
        assert!(!run(1, 7, -1, 4, 2).cond_c);
        assert!(run(1, 7, 1, 4, 2).cond_c);
    }

    #[test]
    fn errors() {
        assert_eq!(
            schinzel_conditions(&2.into(), &4.into(), &6.into(), 3, 1),
            Err(FactorError::GcdNotOne)
        );
        assert_eq!(
            schinzel_conditions(&1.into(), &0.into(), &1.into(), 3, 1),
            Err(FactorError::ZeroCoefficient)
        );
    }

    #[test]
    fn ratio_peak_at_three() {
        assert!((schinzel_b_ratio(3) - 4.0 / 4f64.ln() / 9.0).abs() < 1e-15);
        assert!((3..200).all(|n| schinzel_b_ratio(n) < 0.321));
    }
}
