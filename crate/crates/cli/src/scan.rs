//! Reducibility scan of `x^n + a x^m + b` over a parameter box.

use std::collections::BTreeMap;
use std::sync::mpsc;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use trinotool_core::factor::{factorize, is_irreducible, IrreducibilityVerdict};
use trinotool_core::mahler::{house_of_int_poly, measure_of_int_poly};
use trinotool_core::poly::{IntPolynomial, RootConfig};

use crate::cache::Cache;
use crate::record::{canonical_cmp, Key, ScanRecord};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub a_values: Vec<i64>,
    pub signs: Vec<i64>,
    pub coprime_only: bool,
    /// Record wall time per item; off by default so output is reproducible.
    pub timings: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("scan needs n_max >= 3 and n_min <= n_max (got n_min = {n_min}, n_max = {n_max})")]
    BadRange { n_min: u32, n_max: u32 },
    #[error("a = 0 is not a trinomial")]
    ZeroA,
    #[error("constant term must be +1 or -1 (got {0})")]
    BadSign(i64),
    #[error("cache: {0}")]
    Cache(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl ScanConfig {
    pub fn items(&self) -> Vec<Key> {
        let mut out = Vec::new();
        for n in self.n_min.max(2)..=self.n_max {
            for m in 1..n {
                if self.coprime_only && m.gcd(&n) != 1 {
                    continue;
                }
                for &a in &self.a_values {
                    for &b in &self.signs {
                        out.push((n, m, a, b));
                    }
                }
            }
        }
        out.sort_by(canonical_cmp);
        out.dedup();
        out
    }

    fn validate(&self) -> Result<(), ScanError> {
        if self.n_max < 3 || self.n_min > self.n_max {
            return Err(ScanError::BadRange {
                n_min: self.n_min,
                n_max: self.n_max,
            });
        }
        if self.a_values.contains(&0) {
            return Err(ScanError::ZeroA);
        }
        if let Some(&s) = self.signs.iter().find(|s| s.abs() != 1) {
            return Err(ScanError::BadSign(s));
        }
        Ok(())
    }
}

/// Every record of the scan, reducible or not, in canonical order.
///
/// Items already present in `cache` are reused; new ones are appended to it as
/// they finish. Output does not depend on `threads`.
pub fn scan_conjecture(
    cfg: &ScanConfig,
    threads: usize,
    mut cache: Option<&mut Cache>,
) -> Result<Vec<ScanRecord>, ScanError> {
    cfg.validate()?;
    let mut done: BTreeMap<Key, ScanRecord> = BTreeMap::new();
    let items = cfg.items();
    let mut todo = items.clone();
    if let Some(c) = cache.as_deref() {
        todo.retain(|k| match c.records().get(k) {
            Some(rec) => {
                done.insert(*k, rec.clone());
                false
            }
            None => true,
        });
    }

    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build()?;
    let timings = cfg.timings;
    let (tx, rx) = mpsc::channel::<ScanRecord>();
    let mut write_error = None;
    std::thread::scope(|s| {
        s.spawn(move || {
            pool.install(|| {
                todo.par_iter().for_each_with(tx, |tx, &key| {
                    let _ = tx.send(scan_one(key, timings));
                })
            })
        });
        // Single writer: the cache only ever sees appends from this thread.
        for rec in rx {
            if let Some(c) = cache.as_deref_mut() {
                if write_error.is_none() {
                    if let Err(e) = c.append(&rec) {
                        write_error = Some(e);
                    }
                }
            }
            done.insert(rec.key(), rec);
        }
    });
    if let Some(e) = write_error {
        return Err(e.into());
    }
    let mut out: Vec<ScanRecord> = items.iter().filter_map(|k| done.remove(k)).collect();
    out.sort_by(|x, y| canonical_cmp(&x.key(), &y.key()));
    Ok(out)
}

pub fn trinomial(n: u32, m: u32, a: i64, b: i64) -> IntPolynomial {
    let mut c = vec![0i64; n as usize + 1];
    c[n as usize] = 1;
    c[m as usize] += a;
    c[0] += b;
    IntPolynomial::from_i64s(&c)
}

pub fn scan_one((n, m, a, b): Key, timings: bool) -> ScanRecord {
    let start = Instant::now();
    let p = trinomial(n, m, a, b);
    let mut rec = ScanRecord {
        n,
        m,
        a,
        b,
        reducible: false,
        factor_degrees: vec![n as usize],
        certificate: String::new(),
        measure: None,
        house: None,
        elapsed_ms: 0.0,
        error: None,
    };
    match is_irreducible(&p) {
        Ok(IrreducibilityVerdict::Irreducible(cert)) => rec.certificate = cert.to_string(),
        Ok(IrreducibilityVerdict::Reducible { .. }) => {
            rec.reducible = true;
            rec.certificate = "witness".into();
            match factorize(&p) {
                Ok(f) => {
                    let mut degs: Vec<usize> = f
                        .factors
                        .iter()
                        .flat_map(|(g, e)| std::iter::repeat_n(g.deg(), *e as usize))
                        .collect();
                    degs.sort_unstable();
                    rec.factor_degrees = degs;
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    let cfg = RootConfig::default();
    match (measure_of_int_poly::<f64>(&p, &cfg), house_of_int_poly::<f64>(&p, &cfg)) {
        (Ok(mr), Ok(h)) => {
            rec.measure = Some(mr.value);
            rec.house = Some(h);
        }
        (Err(e), _) | (_, Err(e)) => rec.error = rec.error.take().or(Some(e.to_string())),
    }
    if timings {
        rec.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    }
    rec
}
