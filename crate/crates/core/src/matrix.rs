//! Labeled square matrices, row-stochastic certification and exact-order powers.
//!
//! Row `i` of a [`StructureMatrix`] holds the expansion of `e_i^2`: entry
//! `(i, j)` is the coefficient of `e_j` and, for a chain, the one-step
//! transition probability from state `i` to state `j`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Default tolerance for row-stochastic checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Name of a generator / state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c == ',' || c.is_whitespace()) {
            return Err(Error::InvalidLabel(name));
        }
        Ok(Label(name))
    }

    /// `e1`..`en`.
    pub fn defaults(n: usize) -> Vec<Label> {
        (1..=n).map(|i| Label(format!("e{i}"))).collect()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn check_labels(labels: &[Label], n: usize) -> Result<()> {
    if labels.len() != n {
        return Err(Error::LabelCount {
            expected: n,
            found: labels.len(),
        });
    }
    let mut seen = HashSet::with_capacity(n);
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.to_string()));
        }
    }
    Ok(())
}

/// A labeled `n x n` real matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureMatrix {
    dim: usize,
    entries: Vec<f64>,
    labels: Vec<Label>,
}

impl StructureMatrix {
    /// Builds a matrix from rows, defaulting labels to `e1`..`en`.
    pub fn new<R: AsRef<[f64]>>(rows: &[R], labels: Option<Vec<Label>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NonSquare {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
            entries.extend_from_slice(row);
        }
        let labels = match labels {
            Some(l) => {
                check_labels(&l, n)?;
                l
            }
            None => Label::defaults(n),
        };
        Ok(StructureMatrix {
            dim: n,
            entries,
            labels,
        })
    }

    /// Builds a matrix with string labels.
    pub fn with_labels<R: AsRef<[f64]>>(rows: &[R], labels: &[&str]) -> Result<Self> {
        let labels = labels
            .iter()
            .map(|s| Label::new(*s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows, Some(labels))
    }

    pub fn identity(labels: Vec<Label>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        check_labels(&labels, n)?;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Ok(StructureMatrix {
            dim: n,
            entries,
            labels,
        })
    }

    pub fn zeros(labels: Vec<Label>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        check_labels(&labels, n)?;
        Ok(StructureMatrix {
            dim: n,
            entries: vec![0.0; n * n],
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    /// Position of the label named `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_str() == name)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, x: f64) {
        self.entries[i * self.dim + j] = x;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim,
            })
        }
    }

    /// True iff every entry lies in `[-tol, 1 + tol]` and every row sums to
    /// `1` within `tol`.
    pub fn is_row_stochastic(&self, tol: f64) -> bool {
        self.first_non_stochastic_row(tol).is_none()
    }

    /// First row violating the stochastic constraints, with its sum.
    pub fn first_non_stochastic_row(&self, tol: f64) -> Option<(usize, f64)> {
        self.rows().enumerate().find_map(|(i, row)| {
            let sum: f64 = row.iter().sum();
            let entries_ok = row.iter().all(|&x| x >= -tol && x <= 1.0 + tol);
            if entries_ok && (sum - 1.0).abs() <= tol {
                None
            } else {
                Some((i, sum))
            }
        })
    }

    /// Matrix product `self * rhs`; labels are taken from `self`.
    pub fn mul(&self, rhs: &StructureMatrix) -> StructureMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let rk = rhs.row(k);
                let oi = &mut out[i * n..(i + 1) * n];
                for (o, &b) in oi.iter_mut().zip(rk) {
                    *o += a * b;
                }
            }
        }
        StructureMatrix {
            dim: n,
            entries: out,
            labels: self.labels.clone(),
        }
    }

    /// `self^exponent` by left-to-right binary exponentiation.
    ///
    /// The bit order is fixed (most significant first), so repeated calls
    /// produce bit-identical results on one platform.
    pub fn power(&self, exponent: u32) -> PowerResult {
        let mut acc = StructureMatrix::identity(self.labels.clone())
            .expect("labels already validated");
        if exponent > 0 {
            let bits = u32::BITS - exponent.leading_zeros();
            for b in (0..bits).rev() {
                acc = acc.mul(&acc);
                if exponent >> b & 1 == 1 {
                    acc = acc.mul(self);
                }
            }
        }
        PowerResult {
            exponent,
            matrix: acc,
        }
    }

    /// Restriction to the rows and columns in `indices` (kept in the given order).
    pub fn restrict(&self, indices: &[usize]) -> Result<StructureMatrix> {
        for &i in indices {
            self.check_index(i)?;
        }
        let rows: Vec<Vec<f64>> = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        StructureMatrix::new(&rows, Some(labels))
    }

    /// Simultaneous row/column permutation: new index `k` is old index `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<StructureMatrix> {
        if perm.len() != self.dim {
            return Err(Error::LabelCount {
                expected: self.dim,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.dim];
        for &p in perm {
            self.check_index(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::DuplicateLabel(self.labels[p].to_string()));
            }
        }
        self.restrict(perm)
    }
}

/// Result of [`StructureMatrix::power`].
#[derive(Debug, Clone, PartialEq)]
pub struct PowerResult {
    pub exponent: u32,
    pub matrix: StructureMatrix,
}

/// Convenience wrapper matching [`StructureMatrix::power`].
pub fn matrix_power(m: &StructureMatrix, exponent: u32) -> PowerResult {
    m.power(exponent)
}

/// A structure matrix certified row-stochastic.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain {
    matrix: StructureMatrix,
    tol: f64,
}

impl MarkovChain {
    pub fn new(matrix: StructureMatrix, tol: f64) -> Result<Self> {
        if let Some((row, sum)) = matrix.first_non_stochastic_row(tol) {
            return Err(Error::NotMarkov { row, sum });
        }
        Ok(MarkovChain { matrix, tol })
    }

    pub fn with_default_tol(matrix: StructureMatrix) -> Result<Self> {
        Self::new(matrix, DEFAULT_TOL)
    }

    pub fn matrix(&self) -> &StructureMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> StructureMatrix {
        self.matrix
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Transition probability with entries in `[-tol, 0)` read as zero.
    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j).max(0.0)
    }

    pub fn power(&self, exponent: u32) -> PowerResult {
        self.matrix.power(exponent)
    }
}
