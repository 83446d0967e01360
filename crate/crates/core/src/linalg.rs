//! Exact linear algebra over Q: an incremental sparse row echelon form and a
//! dense fraction-free (Bareiss) rank used as an independent check.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Rational;

/// Sparse vector: strictly increasing column indices, no zero entries.
pub type SparseVec = Vec<(usize, Rational)>;

/// Returns `a - c·b`.
fn axpy(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ai = a.get(i).map(|x| x.0);
        let bj = b.get(j).map(|x| x.0);
        match (ai, bj) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - c * &b[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(c * &b[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Row echelon form built one vector at a time. Every stored row has leading
/// coefficient 1 and a distinct leading column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` until its leading column is not a pivot (or it vanishes).
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((lead, c)) = v.first().cloned() {
            match self.rows.get(&lead) {
                Some(row) => v = axpy(&v, &c, row),
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((lead, c)) = v.first().cloned() else {
            return false;
        };
        let inv = Rational::one() / c;
        let row = v.into_iter().map(|(j, x)| (j, x * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a list of sparse vectors.
pub fn sparse_rank(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Rank by dense fraction-free Gaussian elimination on integer rows.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Clears denominators of a sparse rational vector into a dense integer row.
pub fn to_dense_integer(v: &SparseVec, ncols: usize) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for (_, x) in v {
        lcm = num_integer::Integer::lcm(&lcm, x.denom());
    }
    let mut row = vec![BigInt::zero(); ncols];
    for (j, x) in v {
        row[*j] = (x * Rational::from_integer(lcm.clone())).to_integer();
    }
    row
}
