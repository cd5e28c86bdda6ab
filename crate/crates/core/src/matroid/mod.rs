//! Linear matroids over finite fields and the reduction of ranked linkages
//! to colored ones.

mod framework;
mod rational;
mod transversal;

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{extend_field, FieldSpec};
use crate::graph::LinearMatroidDoc;

pub use framework::{framework_pipeline, framework_solve, FrameworkConfig, MatroidSource};
pub use rational::{first_primes, prime_pool_size, rational_to_prime_field, RationalMatrixMatroid, PRIME_POOL_LIMIT};
pub use transversal::{transversal_to_linear, TransversalInstance};

/// An `r x n` matrix; column `j` represents vertex `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatroid {
    pub spec: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    /// Row-major packed field elements.
    entries: Vec<u64>,
}

impl LinearMatroid {
    pub fn new(spec: Arc<FieldSpec>, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "matroid: {} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(i) = entries.iter().position(|&a| a >= spec.order()) {
            return Err(Error::invalid(format!(
                "matroid: entry {i} = {} is not an element of {spec}",
                entries[i]
            )));
        }
        Ok(LinearMatroid {
            spec,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(spec: Arc<FieldSpec>, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("matroid: ragged rows"));
        }
        Self::new(spec, rows.len(), cols, rows.concat())
    }

    pub fn from_doc(doc: &LinearMatroidDoc, n: usize) -> Result<Self> {
        let spec = Arc::new(FieldSpec::new(doc.field.p, doc.field.degree)?);
        if doc.entries.len() != doc.rows {
            return Err(Error::invalid(format!(
                "matroid.entries: {} rows, declared {}",
                doc.entries.len(),
                doc.rows
            )));
        }
        if let Some(i) = doc.entries.iter().position(|r| r.len() != n) {
            return Err(Error::invalid(format!(
                "matroid.entries[{i}]: {} columns, graph has {n} vertices",
                doc.entries[i].len()
            )));
        }
        Self::from_rows(spec, &doc.entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.entry(i, j)).collect()
    }

    /// Rank of the columns in `xs`, by Gaussian elimination.
    pub fn rank(&self, xs: &[usize]) -> usize {
        let columns: Vec<Vec<u64>> = xs.iter().map(|&j| self.column(j)).collect();
        rank_of(&self.spec, columns)
    }

    pub fn is_independent(&self, xs: &[usize]) -> bool {
        let mut sorted = xs.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        xs.len() <= self.rows && self.rank(xs) == xs.len()
    }

    /// The same matroid with a column of zeros appended for each of `extra`
    /// new elements.
    pub fn with_zero_columns(&self, extra: usize) -> Self {
        let cols = self.cols + extra;
        let mut entries = vec![0u64; self.rows * cols];
        for i in 0..self.rows {
            entries[i * cols..i * cols + self.cols]
                .copy_from_slice(&self.entries[i * self.cols..(i + 1) * self.cols]);
        }
        LinearMatroid {
            spec: self.spec.clone(),
            rows: self.rows,
            cols,
            entries,
        }
    }
}

/// Rank of a list of vectors (all of one length) over `f`.
pub(crate) fn rank_of(f: &FieldSpec, mut vs: Vec<Vec<u64>>) -> usize {
    let len = vs.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..len {
        let Some(piv) = (rank..vs.len()).find(|&i| vs[i][col] != 0) else {
            continue;
        };
        vs.swap(rank, piv);
        let inv = f.inv(vs[rank][col]).expect("pivot is nonzero");
        for i in rank + 1..vs.len() {
            let c = vs[i][col];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, inv);
            for j in col..len {
                let sub = f.mul(factor, vs[rank][j]);
                vs[i][j] = f.sub(vs[i][j], sub);
            }
        }
        rank += 1;
        if rank == vs.len() {
            break;
        }
    }
    rank
}

/// `R * A` for a uniformly random `k x r` matrix `R` over the least
/// extension of the field with order at least `2k`. Dependent sets stay
/// dependent; an independent `k`-set stays independent with probability at
/// least `1/2`.
pub fn lossy_truncate<R: Rng + ?Sized>(m: &LinearMatroid, k: usize, rng: &mut R) -> Result<LinearMatroid> {
    let ext = extend_field(&m.spec, 2 * k as u64)?;
    let f = Arc::new(ext.field.clone());
    let a: Vec<u64> = m.entries.iter().map(|&x| ext.embed(x)).collect();
    let r: Vec<u64> = (0..k * m.rows).map(|_| f.sample(rng)).collect();
    let mut b = vec![0u64; k * m.cols];
    for i in 0..k {
        for t in 0..m.rows {
            let c = r[i * m.rows + t];
            if c == 0 {
                continue;
            }
            for j in 0..m.cols {
                let x = a[t * m.cols + j];
                if x != 0 {
                    b[i * m.cols + j] = f.add(b[i * m.cols + j], f.mul(c, x));
                }
            }
        }
    }
    LinearMatroid::new(f, k, m.cols, b)
}
