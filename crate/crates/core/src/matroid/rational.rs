//! Integer matrices over the rationals, reduced modulo a random small prime.

use std::sync::Arc;

use rand::Rng;

use super::LinearMatroid;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graph::RationalDoc;

/// Largest prime pool the sieve will build.
pub const PRIME_POOL_LIMIT: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrixMatroid {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
    /// Entries are declared to be at most `cols^(bound_c * k)` in magnitude.
    pub bound_c: f64,
}

impl RationalMatrixMatroid {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>, bound_c: f64) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "rational: {} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if !(bound_c.is_finite() && bound_c > 0.0) {
            return Err(Error::invalid("rational.bound_c: must be positive"));
        }
        Ok(RationalMatrixMatroid {
            rows,
            cols,
            entries,
            bound_c,
        })
    }

    pub fn from_doc(doc: &RationalDoc, n: usize) -> Result<Self> {
        if doc.entries.len() != doc.rows || doc.entries.iter().any(|r| r.len() != n) {
            return Err(Error::invalid(format!(
                "rational.entries: expected {} rows of {n} columns",
                doc.rows
            )));
        }
        Self::new(doc.rows, n, doc.entries.concat(), doc.bound_c)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    /// Checks `|a| <= cols^(bound_c * k)` for every entry.
    pub fn check_bound(&self, k: usize) -> Result<()> {
        let n = self.cols.max(2) as f64;
        let limit = self.bound_c * k as f64 * n.ln();
        for (i, &a) in self.entries.iter().enumerate() {
            let mag = a.unsigned_abs() as f64;
            if mag > 1.0 && mag.ln() > limit + 1e-9 {
                return Err(Error::invalid(format!(
                    "rational.entries: |{a}| at {},{} exceeds n^(c*k) = {}^{}",
                    i / self.cols,
                    i % self.cols,
                    self.cols,
                    self.bound_c * k as f64
                )));
            }
        }
        Ok(())
    }

    /// Exact rank of the columns in `xs` over the rationals.
    pub fn rank(&self, xs: &[usize]) -> usize {
        let mut vs: Vec<Vec<i128>> = xs
            .iter()
            .map(|&j| (0..self.rows).map(|i| i128::from(self.entry(i, j))).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.rows {
            let Some(piv) = (rank..vs.len()).find(|&i| vs[i][col] != 0) else {
                continue;
            };
            vs.swap(rank, piv);
            for i in rank + 1..vs.len() {
                let (a, b) = (vs[rank][col], vs[i][col]);
                if b == 0 {
                    continue;
                }
                for j in 0..self.rows {
                    vs[i][j] = vs[i][j] * a - vs[rank][j] * b;
                }
                let g = vs[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    vs[i].iter_mut().for_each(|x| *x /= g);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_independent(&self, xs: &[usize]) -> bool {
        let mut sorted = xs.to_vec();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1]) && self.rank(xs) == xs.len()
    }

    /// The matrix reduced modulo the prime `q`.
    pub fn modulo(&self, q: u64) -> Result<LinearMatroid> {
        let spec = Arc::new(FieldSpec::prime(q)?);
        let entries = self
            .entries
            .iter()
            .map(|&a| i128::from(a).rem_euclid(i128::from(q)) as u64)
            .collect();
        LinearMatroid::new(spec, self.rows, self.cols, entries)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `ceil(2 log2(k! n^(c k^2)))`, at least one.
pub fn prime_pool_size(n: usize, k: usize, c: f64) -> u64 {
    let log_fact: f64 = (2..=k).map(|i| (i as f64).log2()).sum();
    let bits = log_fact + c * (k * k) as f64 * (n.max(2) as f64).log2();
    ((2.0 * bits).ceil() as u64).max(1)
}

/// The first `count` primes, by a sieve of Eratosthenes.
pub fn first_primes(count: u64) -> Result<Vec<u64>> {
    if count > PRIME_POOL_LIMIT {
        return Err(Error::PrimePool {
            needed: count,
            limit: PRIME_POOL_LIMIT,
        });
    }
    let c = count.max(6) as f64;
    let limit = (c * (c.ln() + c.ln().ln())).ceil() as usize + 1;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::with_capacity(count as usize);
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        if out.len() as u64 == count {
            break;
        }
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    Ok(out)
}

/// Reduces `m` modulo a prime drawn uniformly from the first
/// `prime_pool_size(n, k, c)` primes.
pub fn rational_to_prime_field<R: Rng + ?Sized>(
    m: &RationalMatrixMatroid,
    k: usize,
    rng: &mut R,
) -> Result<LinearMatroid> {
    m.check_bound(k)?;
    let pool = first_primes(prime_pool_size(m.cols, k, m.bound_c))?;
    let q = pool[rng.gen_range(0..pool.len())];
    m.modulo(q)
}
