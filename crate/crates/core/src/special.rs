use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma<F: Real>(x: F) -> F {
    if x < F::lit(0.5) {
        // Reflection.
        let pi = F::PI();
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(F::one() - x);
    }
    let x = x - F::one();
    let mut acc = F::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + F::lit(c) / (x + F::from_usize_lossy(i));
    }
    let t = x + F::lit(LANCZOS_G + 0.5);
    F::lit(0.5) * F::TAU().ln() + (x + F::lit(0.5)) * t.ln() - t + acc.ln()
}

/// `ln C(n, k)`; a running product when `min(k, n-k)` is small, otherwise log-gamma.
pub fn ln_binomial<F: Real>(n: u64, k: u64) -> F {
    assert!(k <= n, "ln_binomial: k > n");
    let k = k.min(n - k);
    if k <= 64 {
        let mut acc = F::zero();
        for i in 1..=k {
            acc = acc + (F::from_u64(n - k + i).unwrap() / F::from_u64(i).unwrap()).ln();
        }
        return acc;
    }
    let nf = F::from_u64(n).unwrap();
    let kf = F::from_u64(k).unwrap();
    ln_gamma(nf + F::one()) - ln_gamma(kf + F::one()) - ln_gamma(nf - kf + F::one())
}
