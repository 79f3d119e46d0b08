#![allow(dead_code)]

use num_integer::Integer;
use proptest::prelude::*;
use trinotool_core::poly::{Family, FamilyForm, IntPolynomial};

/// Exponents `0 < m < n <= n_max` with `gcd(m, n) = 1` and the family's parity rule.
/// With `s_even_m`, `S` is restricted to even `m`.
pub fn exponents(family: Family, n_max: u32, s_even_m: bool) -> impl Strategy<Value = (u32, u32)> {
    let ns: Vec<u32> = (2..=n_max)
        .filter(|&n| match family {
            Family::R => n % 2 == 0,
            Family::S => n % 2 == 1 && n >= 3,
            Family::T => true,
        })
        .collect();
    proptest::sample::select(ns).prop_flat_map(move |n| {
        let ms: Vec<u32> = (1..n)
            .filter(|&m| m.gcd(&n) == 1 && family.parity_ok(n, m) && !(s_even_m && family == Family::S && m % 2 == 1))
            .collect();
        proptest::sample::select(ms).prop_map(move |m| (n, m))
    })
}

pub fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::R), Just(Family::S), Just(Family::T)]
}

/// Real `a` in `[lo, hi]`, with integers drawn half the time.
pub fn coefficient(lo: u32, hi: u32) -> impl Strategy<Value = f64> {
    prop_oneof![(lo..=hi).prop_map(f64::from), (lo as f64)..=(hi as f64)]
}

pub fn form(family: Family, n_max: u32, lo: u32, hi: u32, s_even_m: bool) -> impl Strategy<Value = FamilyForm<f64>> {
    (exponents(family, n_max, s_even_m), coefficient(lo, hi))
        .prop_map(move |((n, m), a)| FamilyForm::new(family, n, m, a).unwrap())
}

pub fn trinomial(n: u32, m: u32, a: i64, b: i64) -> IntPolynomial {
    let mut c = vec![0i64; n as usize + 1];
    c[n as usize] = 1;
    c[m as usize] += a;
    c[0] += b;
    IntPolynomial::from_i64s(&c)
}

pub fn coprime_pairs(n_max: u32) -> Vec<(u32, u32)> {
    (2..=n_max)
        .flat_map(|n| (1..n).filter(move |m| m.gcd(&n) == 1).map(move |m| (n, m)))
        .collect()
}
