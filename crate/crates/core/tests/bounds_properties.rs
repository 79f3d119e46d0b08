mod common;

use proptest::prelude::*;
use trinotool_core::bounds::{check_extremality, comparison_bounds, house_lower_bound, theta0, Extremality};
use trinotool_core::poly::{Family, RootConfig};

use common::form;

fn identity_holds(t0: f64, n: u32, m: u32, rhs: f64) -> bool {
    let lhs = (1.0 + t0).powi(n as i32);
    let rhs = rhs * (1.0 + t0).powi(m as i32);
    (lhs - rhs).abs() <= 1e-10 * lhs.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn r_family_bound(f in form(Family::R, 40, 2, 20, false)) {
        let r = house_lower_bound(&f, &RootConfig::default()).unwrap();
        prop_assert!(r.real_root.value >= r.bound - 1e-10, "{}: r1 = {} < {}", f, r.real_root.value, r.bound);
        prop_assert!(r.satisfied && r.house >= r.real_root.value.abs() - 1e-12);
        prop_assert!(r.t0 >= (f.a - 1.0).ln() / (f.n - f.m) as f64 - 1e-15);
        prop_assert!(identity_holds(r.t0, f.n, f.m, f.a - 1.0));
    }

    #[test]
    fn s_family_bound(f in form(Family::S, 40, 2, 20, true)) {
        let r = house_lower_bound(&f, &RootConfig::default()).unwrap();
        prop_assert!(r.real_root.value.abs() >= r.bound - 1e-10, "{}: |s3| = {} < {}", f, r.real_root.value, r.bound);
        prop_assert!(r.satisfied && r.house >= r.real_root.value.abs() - 1e-12);
        prop_assert!(identity_holds(r.t0, f.n, f.m, f.a - 1.0));
    }

    #[test]
    fn t_family_bound(f in form(Family::T, 40, 2, 20, false)) {
        let r = house_lower_bound(&f, &RootConfig::default()).unwrap();
        prop_assert!(r.real_root.value > r.bound - 1e-12, "{}: t1 = {} <= {}", f, r.real_root.value, r.bound);
        prop_assert!(r.satisfied && r.house >= r.real_root.value.abs() - 1e-12);
        prop_assert!(identity_holds(r.t0, f.n, f.m, f.a));
    }

    #[test]
    fn large_a_is_never_extremal(f in common::family().prop_flat_map(|fam| form(fam, 40, 3, 20, false))) {
        let v = check_extremality(&f, &RootConfig::default()).unwrap();
        prop_assert_eq!(v.verdict, Extremality::NotExtremal);
    }

    #[test]
    fn t_sign_certificate(f in form(Family::T, 40, 2, 20, false)) {
        let v = check_extremality(&f, &RootConfig::default()).unwrap();
        prop_assert!(v.sign_certificate.unwrap() < 0.0);
    }
}

#[test]
fn comparison_constants_exceed_one() {
    for n in 3..200 {
        let c = comparison_bounds::<f64>(n).unwrap();
        for v in [c.dimitrov, c.matveev, c.loglog_cube, c.smyth_boyd_house, c.trivial_mn] {
            assert!(v > 1.0, "n = {n}");
        }
        assert_eq!(c.rhin_wu.is_some(), n >= 4);
        assert!(c.rhin_wu.is_none_or(|v| v > 1.0));
        assert!(c.smyth_boyd_house < c.trivial_mn);
    }
    assert!(comparison_bounds::<f64>(2).is_err());
    assert!((theta0::<f32>() - 1.324_718).abs() < 1e-6);
}
