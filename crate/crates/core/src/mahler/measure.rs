use num_complex::Complex;

use super::{MeasureError, MeasureResult, Method};
use num_traits::ToPrimitive;

use crate::factor::squarefree_decomposition;
use crate::poly::{all_roots, Evaluator, IntPolynomial, PolyError, RootConfig, TrinomialSpec};
use crate::quad::{integrate, QuadConfig};
use crate::scalar::Real;

/// `|lead| * prod max(1, |root|)` from the computed roots.
///
/// The error bound charges each root's residual to `log M` whenever the root
/// could lie outside the unit circle.
pub fn measure_from_roots<F: Real, E: Evaluator<F>>(
    p: &E,
    cfg: &RootConfig<F>,
) -> Result<MeasureResult<F>, MeasureError> {
    let set = all_roots(p, cfg)?;
    let mut log_value = p.leading().norm().ln();
    let mut log_error = F::zero();
    for (root, &res) in set.roots.iter().zip(&set.residuals) {
        let r = root.norm();
        if r > F::one() {
            log_value = log_value + r.ln();
        }
        if r + res > F::one() {
            log_error = log_error + res;
        }
    }
    Ok(MeasureResult::from_log(log_value, log_error, Method::Roots))
}

/// Like [`measure_from_roots`], after an exact squarefree split so that every
/// root handed to the iteration is simple.
pub fn measure_of_int_poly<F: Real>(p: &IntPolynomial, cfg: &RootConfig<F>) -> Result<MeasureResult<F>, MeasureError> {
    if p.degree().is_none_or(|d| d == 0) {
        return Err(PolyError::DegreeTooSmall.into());
    }
    let content = p.content();
    let prim = p.primitive_part();
    let prim = IntPolynomial::new(prim.coeffs()[prim.trailing_zeros()..].to_vec());
    let mut log_value = F::from_f64(content.to_f64().unwrap_or(f64::INFINITY).ln()).unwrap_or(F::infinity());
    let mut log_error = F::zero();
    let parts = squarefree_decomposition(&prim).map_err(|_| PolyError::NonIntegerCoefficient)?;
    for (part, e) in parts {
        let r = measure_from_roots(&part.to_complex::<F>(), cfg)?;
        let e = F::from_u32(e).unwrap_or(F::infinity());
        log_value = log_value + e * r.log_value;
        let part_err = if r.value > F::zero() {
            (r.error_bound / r.value).ln_1p()
        } else {
            F::zero()
        };
        log_error = log_error + e * part_err;
    }
    Ok(MeasureResult::from_log(log_value, log_error, Method::Roots))
}

/// Largest root modulus.
pub fn house<F: Real, E: Evaluator<F>>(p: &E, cfg: &RootConfig<F>) -> Result<F, MeasureError> {
    Ok(all_roots(p, cfg)?.max_modulus())
}

/// Largest root modulus, computed on the squarefree parts.
pub fn house_of_int_poly<F: Real>(p: &IntPolynomial, cfg: &RootConfig<F>) -> Result<F, MeasureError> {
    if p.degree().is_none_or(|d| d == 0) {
        return Err(PolyError::DegreeTooSmall.into());
    }
    let prim = p.primitive_part();
    let zeros = prim.trailing_zeros();
    let prim = IntPolynomial::new(prim.coeffs()[zeros..].to_vec());
    let parts = squarefree_decomposition(&prim).map_err(|_| PolyError::NonIntegerCoefficient)?;
    let mut best = F::zero();
    for (part, _) in parts {
        best = best.max(house(&part.to_complex::<F>(), cfg)?);
    }
    Ok(best)
}

/// `log M = (1/2pi) int_0^{2pi} log|e^{int} + a e^{imt} + b| dt`, integrated adaptively.
///
/// Zeros of the trinomial on the unit circle are located first (without the
/// root finder) and become panel endpoints.
pub fn measure_jensen<F: Real>(spec: &TrinomialSpec<F>, cfg: &QuadConfig<F>) -> Result<MeasureResult<F>, MeasureError> {
    let two_pi = F::TAU();
    let n = spec.n() as usize;
    let grid = 2 * n + 2;
    let mut breaks: Vec<F> = (0..=grid)
        .map(|j| two_pi * F::from_usize_lossy(j) / F::from_usize_lossy(grid))
        .collect();
    breaks.extend(unit_circle_zeros(spec));
    breaks.sort_by(|x, y| x.partial_cmp(y).unwrap());
    breaks.dedup_by(|x, y| (*x - *y).abs() <= F::epsilon() * F::lit(16.0));

    let tiny = F::min_positive_value();
    let integrand = |t: F| spec.eval(Complex::from_polar(F::one(), t)).norm().max(tiny).ln();
    let scaled = QuadConfig {
        abs_tol: cfg.abs_tol * two_pi,
        ..*cfg
    };
    let q = integrate(integrand, &breaks, &scaled)?;
    Ok(MeasureResult::from_log(
        q.value / two_pi,
        q.error / two_pi,
        Method::Jensen,
    ))
}

/// Angles in `[0, 2pi)` where `|P(e^{it})|` has a local minimum at the
/// rounding level of the evaluation, i.e. zeros on the unit circle.
pub fn unit_circle_zeros<F: Real>(spec: &TrinomialSpec<F>) -> Vec<F> {
    let two_pi = F::TAU();
    let samples = (16 * spec.n() as usize).max(256);
    let step = two_pi / F::from_usize_lossy(samples);
    let g = |t: F| spec.eval(Complex::from_polar(F::one(), t)).norm();
    let vals: Vec<F> = (0..samples).map(|j| g(step * F::from_usize_lossy(j))).collect();
    let scale = F::one() + spec.a().norm() + spec.b().norm();
    let threshold = scale * F::tol(1e-9, 1e3);
    let mut out = Vec::new();
    for j in 0..samples {
        let prev = vals[(j + samples - 1) % samples];
        let next = vals[(j + 1) % samples];
        if !(vals[j] <= prev && vals[j] < next) {
            continue;
        }
        let centre = step * F::from_usize_lossy(j);
        let (t, v) = golden_min(&g, centre - step, centre + step);
        if v <= threshold {
            out.push(t - (t / two_pi).floor() * two_pi);
        }
    }
    out
}

fn golden_min<F: Real>(g: &impl Fn(F) -> F, mut lo: F, mut hi: F) -> (F, F) {
    let ratio = F::lit(0.618_033_988_749_894_8);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut g1 = g(x1);
    let mut g2 = g(x2);
    for _ in 0..200 {
        if hi - lo <= F::epsilon() * F::lit(4.0) * hi.abs().max(F::one()) {
            break;
        }
        if g1 <= g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - ratio * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + ratio * (hi - lo);
            g2 = g(x2);
        }
    }
    if g1 <= g2 {
        (x1, g1)
    } else {
        (x2, g2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA0: f64 = 1.324_717_957_244_746;

    fn spec(n: u32, m: u32, a: f64, b: f64) -> TrinomialSpec<f64> {
        TrinomialSpec::real(n, m, a, b).unwrap()
    }

    #[test]
    fn plastic_number_by_roots_and_jensen() {
        let t = spec(3, 1, -1.0, -1.0);
        let r = measure_from_roots(&t, &RootConfig::default()).unwrap();
        let j = measure_jensen(&t, &QuadConfig::default()).unwrap();
        assert!((r.value - THETA0).abs() < 1e-12);
        assert!((j.value - r.value).abs() < 1e-8);
        assert!((r.value - r.log_value.exp()).abs() < 1e-15);
    }

    #[test]
    fn dominant_constant_is_exact() {
        let r = measure_from_roots(&spec(4, 1, 1.0, -3.0), &RootConfig::default()).unwrap();
        assert!((r.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn cyclotomic_measure_one_with_zeros_on_circle() {
        let t = spec(2, 1, 1.0, 1.0);
        assert_eq!(unit_circle_zeros(&t).len(), 2);
        let r = measure_from_roots(&t, &RootConfig::default()).unwrap();
        let j = measure_jensen(&t, &QuadConfig::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!((j.value - 1.0).abs() < 1e-8, "{}", j.value);
    }

    #[test]
    fn jensen_matches_roots_off_the_grid() {
        let t = spec(5, 2, 3.0, 1.0);
        let r = measure_from_roots(&t, &RootConfig::default()).unwrap();
        let j = measure_jensen(&t, &QuadConfig::default()).unwrap();
        assert!((j.value - r.value).abs() < 1e-8);
    }

    #[test]
    fn house_examples() {
        assert!((house(&spec(3, 1, -1.0, -1.0), &RootConfig::default()).unwrap() - THETA0).abs() < 1e-12);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((house(&spec(3, 1, -2.0, -1.0), &RootConfig::default()).unwrap() - phi).abs() < 1e-12);
        for n in 2..12 {
            let p = IntPolynomial::from_i64s(&{
                let mut c = vec![0i64; n + 1];
                c[0] = -2;
                c[n] = 1;
                c
            });
            let h: f64 = house_of_int_poly(&p, &RootConfig::default()).unwrap();
            assert!((h - 2f64.powf(1.0 / n as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn lehmer_measure() {
        let p = IntPolynomial::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let m: MeasureResult<f64> = measure_of_int_poly(&p, &RootConfig::default()).unwrap();
        assert!((m.value - 1.176_280_818_259_917).abs() < 1e-10);
    }

    #[test]
    fn leading_coefficient_counts() {
        let p = IntPolynomial::from_i64s(&[1, 0, 3]); // 3x^2 + 1: roots inside the circle
        let m: MeasureResult<f64> = measure_of_int_poly(&p, &RootConfig::default()).unwrap();
        assert!((m.value - 3.0).abs() < 1e-12);
    }
}
