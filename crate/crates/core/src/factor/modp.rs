//! Dense polynomials over `F_p` for a word-sized odd prime `p`, ascending
//! coefficients in `[0, p)`, always trimmed.

use num_bigint::BigUint;
use rand::Rng;

pub(crate) type Fp = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Self { p }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn trim(&self, mut a: Fp) -> Fp {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    #[cfg(test)]
    pub fn add(&self, a: &[u64], b: &[u64]) -> Fp {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|k| (a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)) % self.p)
            .collect();
        self.trim(v)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Fp {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|k| (a.get(k).copied().unwrap_or(0) + self.p - b.get(k).copied().unwrap_or(0)) % self.p)
            .collect();
        self.trim(v)
    }

    pub fn mul_poly(&self, a: &[u64], b: &[u64]) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn scale(&self, a: &[u64], k: u64) -> Fp {
        self.trim(a.iter().map(|&x| self.mul(x, k)).collect())
    }

    pub fn monic(&self, a: &[u64]) -> Fp {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (Fp, Fp) {
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (i, &y) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + self.p - self.mul(c, y)) % self.p;
            }
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Fp {
        self.divrem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Fp {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Fp, Fp, Fp) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul_poly(&q, &s1));
            let t = self.sub(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let k = self.inv(*r0.last().expect("gcd of nonzero inputs"));
        (self.scale(&r0, k), self.scale(&s0, k), self.scale(&t0, k))
    }

    pub fn derivative(&self, a: &[u64]) -> Fp {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| self.mul(c, k as u64 % self.p))
                .collect(),
        )
    }

    pub fn powmod(&self, base: &[u64], e: &BigUint, modulus: &[u64]) -> Fp {
        let mut acc = vec![1u64];
        let base = self.rem(base, modulus);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul_poly(&acc, &acc), modulus);
            if e.bit(i) {
                acc = self.rem(&self.mul_poly(&acc, &base), modulus);
            }
        }
        self.rem(&acc, modulus)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g_d, d)` where `g_d` is the product of all irreducible factors of degree `d`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(Fp, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x = vec![0u64, 1];
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 1 && 2 * (d + 1) < f.len() {
            d += 1;
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        if f.len() > 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a monic squarefree product of degree-`d` irreducibles.
    pub fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<Fp> {
        let deg = f.len() - 1;
        if deg == d {
            return vec![f.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Fp = self.trim((0..deg).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let mut g = self.gcd(&a, f);
            if g.len() == 1 {
                let b = self.sub(&self.powmod(&a, &e, f), &[1]);
                g = self.gcd(&b, f);
            }
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// All monic irreducible factors of a monic squarefree `f`, sorted.
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<Fp> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
        out
    }
}
