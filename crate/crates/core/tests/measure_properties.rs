mod common;

use num_complex::Complex;
use num_integer::Integer;
use proptest::prelude::*;
use trinotool_core::mahler::{
    measure_from_roots, measure_jensen, measure_of_int_poly, residue_term, series_measure, MeasureError, SeriesConfig,
};
use trinotool_core::poly::{IntPolynomial, RootConfig, TrinomialSpec};
use trinotool_core::quad::QuadConfig;

const THETA0: f64 = 1.324_717_957_244_746;

fn roots_measure(n: u32, m: u32, a: Complex<f64>, b: Complex<f64>) -> f64 {
    measure_from_roots(&TrinomialSpec::new(n, m, a, b).unwrap(), &RootConfig::default())
        .unwrap()
        .value
}

fn c(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

fn coprime(n_max: u32) -> impl Strategy<Value = (u32, u32)> {
    proptest::sample::select(common::coprime_pairs(n_max))
}

fn small_poly() -> impl Strategy<Value = IntPolynomial> {
    (1usize..=6)
        .prop_flat_map(|d| {
            (
                proptest::collection::vec(-5i64..=5, d),
                prop_oneof![-3i64..=-1, 1i64..=3],
            )
        })
        .prop_map(|(mut v, lead)| {
            v.push(lead);
            IntPolynomial::from_i64s(&v)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_methods_agree((n, m) in coprime(20), a in prop_oneof![-8i64..=-1, 1i64..=8], b in prop_oneof![Just(-1i64), Just(1i64)]) {
        let t = TrinomialSpec::real(n, m, a as f64, b as f64).unwrap();
        let r = measure_from_roots(&t, &RootConfig::default()).unwrap();
        let j = measure_jensen(&t, &QuadConfig::default()).unwrap();
        prop_assert!((r.value - j.value).abs() <= 1e-6, "jensen {} vs roots {}", j.value, r.value);
        prop_assert!((r.value - r.log_value.exp()).abs() <= 1e-12 * r.value);
        prop_assert!(r.value >= 1.0 - 1e-12);
        if a.abs() >= 2 {
            let s = series_measure(n, m, c(a as f64), c(b as f64), &SeriesConfig::default()).unwrap();
            let diff = (r.value - s.result.value).abs();
            if s.converged {
                prop_assert!(diff <= 1e-6, "series {} vs roots {}", s.result.value, r.value);
            }
            // Unconverged only at the unit-ratio boundary z^2 +- 2z +- 1; the bound must still cover the gap.
            prop_assert!(diff <= s.result.error_bound + 1e-12, "error bound {} does not cover {}", s.result.error_bound, diff);
        }
    }

    #[test]
    fn multiplicative(p in small_poly(), q in small_poly()) {
        let cfg = RootConfig::default();
        let mp = measure_of_int_poly::<f64>(&p, &cfg).unwrap().value;
        let mq = measure_of_int_poly::<f64>(&q, &cfg).unwrap().value;
        let mpq = measure_of_int_poly::<f64>(&(&p * &q), &cfg).unwrap().value;
        prop_assert!((mpq - mp * mq).abs() <= 1e-8 * mpq.max(1.0), "{} vs {}", mpq, mp * mq);
    }

    #[test]
    fn smyth_bound_for_nonreciprocal_trinomials((n, m) in coprime(20), a in prop_oneof![-10i64..=-1, 1i64..=10], b in prop_oneof![Just(-1i64), Just(1i64)]) {
        let p = common::trinomial(n, m, a, b);
        prop_assume!(!p.is_reciprocal() && !p.reflect().is_reciprocal());
        let v = measure_of_int_poly::<f64>(&p, &RootConfig::default()).unwrap().value;
        prop_assert!(v >= THETA0 - 1e-9, "{}: {}", p, v);
    }

    #[test]
    fn inflation_invariant((n, m) in coprime(12), k in 2u32..=3, a in -6.0f64..6.0, b in prop_oneof![-3.0f64..-0.2, 0.2f64..3.0]) {
        prop_assume!(a.abs() > 0.1);
        let t = TrinomialSpec::real(n, m, a, b).unwrap();
        let cfg = RootConfig::default();
        let base = measure_from_roots(&t, &cfg).unwrap().value;
        let inflated = measure_from_roots(&t.inflate(k).unwrap(), &cfg).unwrap().value;
        prop_assert!((base - inflated).abs() <= 1e-8 * base.max(1.0), "{} vs {}", base, inflated);
    }

    #[test]
    fn dominant_constant_is_exact_for_every_n((n, m) in coprime(30), a in prop_oneof![-5.0f64..-0.1, 0.1f64..5.0], gap in 1.0f64..6.0, neg in any::<bool>()) {
        let b = (a.abs() + gap) * if neg { -1.0 } else { 1.0 };
        let v = roots_measure(n, m, c(a), c(b));
        prop_assert!((v - b.abs()).abs() <= 1e-9 * b.abs().max(1.0), "{} vs {}", v, b.abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn residue_matches_contour_quadrature(
        (n, m) in coprime(8),
        rb in 0.5f64..2.0,
        gap in 1.0f64..4.0,
        pa in 0.0f64..std::f64::consts::TAU,
        pb in 0.0f64..std::f64::consts::TAU,
    ) {
        let a = Complex::from_polar(rb + gap, pa);
        let b = Complex::from_polar(rb, pb);
        let q = QuadConfig::default();
        for k in 1..=8 {
            let t = residue_term(k, n, m, a, b, Some(&q)).unwrap();
            let i_k = t.i_k.unwrap();
            prop_assert!((i_k - t.contour).norm() <= 1e-8, "k={}: {} vs {}", k, i_k, t.contour);
            if k % m as usize != 0 {
                prop_assert_eq!(t.contour, Complex::new(0.0, 0.0));
            }
        }
    }
}

#[test]
fn series_refuses_outside_domain() {
    let cfg = SeriesConfig::default();
    assert!(matches!(
        series_measure(3, 1, c(-1.0), c(-1.0), &cfg),
        Err(MeasureError::DominanceViolated { .. })
    ));
    assert_eq!(
        series_measure(6, 4, c(5.0), c(1.0), &cfg).unwrap_err(),
        MeasureError::CoprimalityViolated { gcd: 2 }
    );
}

#[test]
fn gap_to_limit_shrinks() {
    let gaps: Vec<f64> = [10u32, 20, 40, 80]
        .iter()
        .map(|&n| (roots_measure(n, 1, c(3.0), c(1.0)) - 3.0).abs())
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}

#[test]
fn single_precision_measure() {
    let t = TrinomialSpec::<f32>::real(3, 1, -1.0, -1.0).unwrap();
    let r = measure_from_roots(&t, &RootConfig::default()).unwrap();
    assert!((r.value - THETA0 as f32).abs() < 1e-5);
    let j = measure_jensen(&t, &QuadConfig::default()).unwrap();
    assert!((j.value - THETA0 as f32).abs() < 1e-4);
}

#[test]
fn series_matches_roots_on_grid() {
    for (n, m) in common::coprime_pairs(9) {
        for a in [-5.0, -4.0, -3.0, 3.0, 4.0, 5.0] {
            for b in [-1.0, 1.0] {
                let s = series_measure(n, m, c(a), c(b), &SeriesConfig::default()).unwrap();
                let r = roots_measure(n, m, c(a), c(b));
                assert!((s.result.value - r).abs() <= 1e-8, "({n},{m},{a},{b})");
            }
        }
    }
}

#[test]
fn coprime_helper() {
    assert!(common::coprime_pairs(6).iter().all(|(n, m)| n.gcd(m) == 1));
}
