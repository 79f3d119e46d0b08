//! Multifactor Hensel lifting over a balanced factor tree, one quadratic step
//! at a time. Polynomials mod `M` are ascending `BigInt` vectors in `[0, M)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::modp::{Field, Fp};

pub(crate) type Zm = Vec<BigInt>;

pub(crate) fn reduce(a: &[BigInt], m: &BigInt) -> Zm {
    let mut v: Zm = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Zm = (0..n)
        .map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Zm = (0..n)
        .map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zm {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

/// Division by a monic `b` modulo `m`.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Zm, Zm) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), reduce(a, m));
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (i, y) in b.iter().enumerate() {
            r[k + i] = (&r[k + i] - &c * y).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(db);
    (reduce(&q, m), reduce(&r, m))
}

fn lift_fp(a: &[u64]) -> Zm {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Given `f = g h`, `s g + t h = 1` mod `m` with `h` monic, returns the same
/// relations mod `m^2`.
fn quadratic_step(f: &[BigInt], g: &Zm, h: &Zm, s: &Zm, t: &Zm, m: &BigInt) -> (Zm, Zm, Zm, Zm) {
    let m2 = m * m;
    let e = sub(&reduce(f, &m2), &mul(g, h, &m2), &m2);
    let (q, r) = divrem_monic(&mul(s, &e, &m2), h, &m2);
    let g2 = add(g, &add(&mul(t, &e, &m2), &mul(&q, g, &m2), &m2), &m2);
    let h2 = add(h, &r, &m2);
    let b = sub(&add(&mul(s, &g2, &m2), &mul(t, &h2, &m2), &m2), &[BigInt::one()], &m2);
    let (c, d) = divrem_monic(&mul(s, &b, &m2), &h2, &m2);
    let s2 = sub(s, &d, &m2);
    let t2 = sub(&sub(t, &mul(t, &b, &m2), &m2), &mul(&c, &g2, &m2), &m2);
    (g2, h2, s2, t2)
}

/// Lifts the monic factorization `f = lc(f) * prod factors (mod p)` to `mod p^(2^j)`,
/// the first such modulus exceeding `bound`. Returns the monic lifts and the modulus.
pub(crate) fn lift(f: &[BigInt], factors: &[Fp], field: Field, bound: &BigInt) -> (Vec<Zm>, BigInt) {
    let mut modulus = BigInt::from(field.p);
    let mut steps = 0;
    while &modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let mut out = Vec::with_capacity(factors.len());
    node(&reduce(f, &modulus), factors, field, steps, &modulus, &mut out);
    (out, modulus)
}

fn node(f: &Zm, leaves: &[Fp], field: Field, steps: u32, modulus: &BigInt, out: &mut Vec<Zm>) {
    if leaves.len() == 1 {
        let lc = f.last().expect("nonzero node");
        let inv = lc.extended_gcd(modulus).x.mod_floor(modulus);
        out.push(reduce(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), modulus));
        return;
    }
    let (left, right) = leaves.split_at(leaves.len() / 2);
    let p = BigInt::from(field.p);
    let lc_p = (f.last().expect("nonzero node") % &p).to_u64().expect("reduced mod p");
    let mut g0: Fp = vec![lc_p];
    for l in left {
        g0 = field.mul_poly(&g0, l);
    }
    let mut h0: Fp = vec![1];
    for r in right {
        h0 = field.mul_poly(&h0, r);
    }
    let (one, s0, t0) = field.ext_gcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0));
    let mut m = p;
    for _ in 0..steps {
        (g, h, s, t) = quadratic_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    node(&g, left, field, steps, modulus, out);
    node(&h, right, field, steps, modulus, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_quadratic_split() {
        // x^2 - 2 = (x - 3)(x + 3) mod 7; lifts to 7-adic square roots of 2.
        let f: Vec<BigInt> = [-2, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let field = Field::new(7);
        let (lifted, m) = lift(&f, &[vec![4, 1], vec![3, 1]], field, &BigInt::from(10_000_000));
        assert!(m > BigInt::from(10_000_000));
        let prod = mul(&lifted[0], &lifted[1], &m);
        assert_eq!(prod, reduce(&f, &m));
    }

    #[test]
    fn lifts_with_leading_coefficient() {
        // 6x^3 + 11x^2 + 6x + 1 = (2x + 1)(3x + 1)(x + 1).
        let f: Vec<BigInt> = [1, 6, 11, 6].iter().map(|&c| BigInt::from(c)).collect();
        let field = Field::new(5);
        let fs: Vec<Fp> = [vec![1u64, 2], vec![1, 3], vec![1, 1]]
            .iter()
            .map(|v| field.monic(v))
            .collect();
        let (lifted, m) = lift(&f, &fs, field, &BigInt::from(1_000_000_000_000i64));
        let mut prod = vec![BigInt::from(6)];
        for l in &lifted {
            prod = mul(&prod, l, &m);
        }
        assert_eq!(prod, reduce(&f, &m));
    }
}
