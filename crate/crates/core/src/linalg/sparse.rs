//! Sparse triplet matrices with exact entries.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::dense::Matrix;
use super::field::{Field, F2, F3, F5, F7, Q};
use super::scalar::{Domain, Scalar};
use crate::error::{KlrError, Result};

/// Sparse matrix; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), F>,
}

/// Entries that know when they are zero.
pub trait Entry: Clone {
    fn is_zero_entry(&self) -> bool;
}

impl<F: Field> Entry for F {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

impl Entry for Scalar {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

impl<F: Entry> SparseMatrix<F> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_triplets(rows: usize, cols: usize, t: impl IntoIterator<Item = (usize, usize, F)>) -> Result<Self> {
        let mut m = Self::new(rows, cols);
        for (r, c, v) in t {
            if r >= rows || c >= cols {
                return Err(KlrError::Invalid(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            if m.entries.contains_key(&(r, c)) {
                return Err(KlrError::Invalid(format!("duplicate entry ({r},{c})")));
            }
            if !v.is_zero_entry() {
                m.entries.insert((r, c), v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }
}

impl<F: Field> SparseMatrix<F> {
    /// Adds `v` to entry (r, c), dropping it if the result is zero.
    pub fn add_to(&mut self, r: usize, c: usize, v: F) {
        let cur = self.entries.remove(&(r, c)).unwrap_or_else(F::zero);
        let s = cur + v;
        if !s.is_zero() {
            self.entries.insert((r, c), s);
        }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            m.set(r, c, v.clone());
        }
        m
    }

    pub fn from_dense(m: &Matrix<F>) -> Self {
        let mut s = Self::new(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m.get(r, c).is_zero() {
                    s.entries.insert((r, c), m.get(r, c).clone());
                }
            }
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.to_dense().rank()
    }

    /// Basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        self.to_dense().kernel()
    }
}

/// Kernel of a dynamically tagged matrix. Integer matrices are rejected: use the
/// Smith normal form there.
pub fn kernel_basis_scalar(m: &SparseMatrix<Scalar>, domain: Domain) -> Result<Vec<Vec<Scalar>>> {
    fn go<F: Field>(m: &SparseMatrix<Scalar>) -> Result<Vec<Vec<Scalar>>> {
        let conv = m
            .triplets()
            .map(|(r, c, v)| {
                F::from_scalar(v)
                    .map(|x| (r, c, x))
                    .ok_or_else(|| KlrError::Domain(format!("entry {v} not in {}", F::tag())))
            })
            .collect::<Result<Vec<_>>>()?;
        let k = SparseMatrix::<F>::from_triplets(m.rows(), m.cols(), conv)?.kernel_basis();
        Ok(k.into_iter().map(|v| v.iter().map(|x| x.to_scalar()).collect()).collect())
    }
    match domain {
        Domain::Integer => Err(KlrError::Domain("kernel_basis needs a field; use smith_normal_form over Z".into())),
        Domain::Rational => go::<Q>(m),
        Domain::Modular(2) => go::<F2>(m),
        Domain::Modular(3) => go::<F3>(m),
        Domain::Modular(5) => go::<F5>(m),
        Domain::Modular(7) => go::<F7>(m),
        Domain::Modular(p) => Err(KlrError::Domain(format!("prime {p} not compiled in (supported: 2, 3, 5, 7)"))),
    }
}

/// JSON form: `{"rows":..,"cols":..,"entries":[[r,c,"p/q"],...]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SparseJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn to_json(&self) -> SparseJson {
        SparseJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.triplets().map(|(r, c, v)| (r, c, v.to_scalar().to_string())).collect(),
        }
    }

    pub fn from_json(j: &SparseJson) -> Result<Self> {
        let domain = match F::characteristic() {
            0 => Domain::Rational,
            p => Domain::Modular(p),
        };
        let t = j
            .entries
            .iter()
            .map(|(r, c, s)| {
                let sc = Scalar::parse(s, domain)?;
                let v = F::from_scalar(&sc).ok_or_else(|| KlrError::Domain(s.clone()))?;
                Ok((*r, *c, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_triplets(j.rows, j.cols, t)
    }
}

impl SparseMatrix<Scalar> {
    /// Dense integer rows, for the normal-form routines.
    pub fn integer_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        let mut out = vec![vec![BigInt::from(0); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = match v {
                Scalar::Integer(z) => z.clone(),
                Scalar::Rational(q) if q.is_integer() => q.to_integer(),
                other => return Err(KlrError::Domain(format!("{other} is not an integer"))),
            };
        }
        Ok(out)
    }
}
