use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::hensel::{self, Zm};
use super::modp::{Field, Fp};
use crate::poly::IntPolynomial;

/// Good primes tried before lifting; the one with the fewest modular factors wins.
const PRIME_CANDIDATES: usize = 5;

/// Irreducible factors of a primitive, squarefree `f` with positive leading
/// coefficient and `f(0) != 0`.
pub(crate) fn factor_squarefree<R: Rng>(f: &IntPolynomial, rng: &mut R) -> Vec<IntPolynomial> {
    if f.deg() <= 1 {
        return vec![f.clone()];
    }
    let Some((field, modular)) = choose_prime(f, rng) else {
        unreachable!("a squarefree polynomial has good reduction at all but finitely many primes")
    };
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let lc = f.leading().abs();
    let mignotte = (BigInt::one() << f.deg()) * f.l2_norm_ceil() * &lc;
    let (lifted, modulus) = hensel::lift(f.coeffs(), &modular, field, &(&mignotte * 2));
    recombine(f.clone(), lifted, &modulus)
}

fn choose_prime<R: Rng>(f: &IntPolynomial, rng: &mut R) -> Option<(Field, Vec<Fp>)> {
    let mut best: Option<(Field, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in primes_from(5).take(2000) {
        let pb = BigInt::from(p);
        if (f.leading() % &pb).is_zero() {
            continue;
        }
        let field = Field::new(p);
        let fp = to_fp(f, &pb);
        if field.gcd(&fp, &field.derivative(&fp)).len() != 1 {
            continue;
        }
        let factors = field.factor_squarefree(&field.monic(&fp), rng);
        if factors.len() == 1 {
            return Some((field, factors));
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((field, factors));
        }
        tried += 1;
        if tried == PRIME_CANDIDATES {
            break;
        }
    }
    best
}

fn to_fp(f: &IntPolynomial, p: &BigInt) -> Fp {
    let mut v: Fp = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(p).to_u64().expect("reduced"))
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&k| k > 1 && (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPolynomial {
    let half = m >> 1;
    IntPolynomial::new(a.iter().map(|c| if c > &half { c - m } else { c.clone() }).collect())
}

/// Subset-sum recombination of lifted modular factors into true factors.
fn recombine(mut f: IntPolynomial, mut lifted: Vec<Zm>, m: &BigInt) -> Vec<IntPolynomial> {
    let half = m >> 1;
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc = f.leading();
        let tc_bound = &lc * &f.coeff(0);
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            // Cheap test on constant terms before forming the full product.
            let mut tc = lc.mod_floor(m);
            for &i in &idx {
                tc = (tc * &lifted[i][0]).mod_floor(m);
            }
            if tc > half {
                tc -= m;
            }
            if !tc.is_zero() && (&tc_bound % &tc).is_zero() {
                let mut g: Zm = vec![lc.mod_floor(m)];
                for &i in &idx {
                    g = hensel::mul(&g, &lifted[i], m);
                }
                let candidate = symmetric(&g, m).primitive_part();
                if let Some(q) = f.div_exact(&candidate) {
                    found.push(candidate);
                    f = q;
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    found.push(f);
    found
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate_all() {
        let mut idx = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut idx, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
        assert_eq!(idx, vec![3, 4]);
    }

    #[test]
    fn primes() {
        assert_eq!(primes_from(5).take(5).collect::<Vec<_>>(), vec![5, 7, 11, 13, 17]);
    }
}
