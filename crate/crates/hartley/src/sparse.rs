//! Sparse matrices in validated coordinate form.
//!
//! Every matrix stores only its nonzero entries, sorted row-major with
//! ascending columns. That ordering is part of the contract: applying a
//! matrix accumulates each output row left to right, so results are
//! bit-for-bit reproducible across runs and across (de)serialization.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::error::HartleyError;
use crate::scalar::Real;
use crate::Result;

/// A rows x cols sparse matrix holding finite, nonzero coefficients.
///
/// The JSON form is `{"rows": r, "cols": c, "entries": [[row, col, value], ...]}`;
/// deserialization runs the same validation as [`SparseMatrix::new`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "RawSparseMatrix<T>",
    into = "RawSparseMatrix<T>",
    bound = "T: Real"
)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, T)>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Real")]
struct RawSparseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, T)>,
}

impl<T: Real> From<SparseMatrix<T>> for RawSparseMatrix<T> {
    fn from(m: SparseMatrix<T>) -> Self {
        RawSparseMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries,
        }
    }
}

impl<T: Real> TryFrom<RawSparseMatrix<T>> for SparseMatrix<T> {
    type Error = HartleyError;
    fn try_from(raw: RawSparseMatrix<T>) -> Result<Self> {
        SparseMatrix::new(raw.rows, raw.cols, raw.entries)
    }
}

impl<T: Real> SparseMatrix<T> {
    /// Builds a matrix from coordinate entries.
    ///
    /// Rejects zero dimensions, out-of-range indices, duplicate positions,
    /// explicit zeros, and non-finite values. An empty entry list is the
    /// all-zero matrix and is allowed.
    pub fn new(rows: usize, cols: usize, mut entries: Vec<(usize, usize, T)>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(HartleyError::ShapeMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        for &(r, c, v) in &entries {
            if r >= rows || c >= cols {
                return Err(HartleyError::InvalidEntry {
                    row: r,
                    col: c,
                    reason: format!("position outside a {rows}x{cols} matrix"),
                });
            }
            if !v.is_finite() {
                return Err(HartleyError::InvalidEntry {
                    row: r,
                    col: c,
                    reason: "value is not finite".into(),
                });
            }
            if v == T::zero() {
                return Err(HartleyError::InvalidEntry {
                    row: r,
                    col: c,
                    reason: "explicit zero entries are not stored".into(),
                });
            }
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(HartleyError::InvalidEntry {
                    row: pair[0].0,
                    col: pair[0].1,
                    reason: "duplicate position".into(),
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// The n x n identity.
    pub fn identity(n: usize) -> Self {
        Self::new(n, n, (0..n).map(|i| (i, i, T::one())).collect())
            .expect("identity entries are always valid")
    }

    /// Permutation matrix: output row `i` copies input position `sources[i]`.
    ///
    /// `sources` must be a permutation of `0..n`.
    pub fn permutation(sources: &[usize]) -> Result<Self> {
        let n = sources.len();
        let mut seen = vec![false; n];
        for &s in sources {
            if s >= n || seen[s] {
                return Err(HartleyError::ShapeMismatch(format!(
                    "source list is not a permutation of 0..{n}"
                )));
            }
            seen[s] = true;
        }
        Self::new(
            n,
            n,
            sources.iter().enumerate().map(|(i, &s)| (i, s, T::one())).collect(),
        )
    }

    /// Stacks matrices along the diagonal. Panics on an empty block list.
    pub fn block_diag(blocks: &[Self]) -> Self {
        assert!(!blocks.is_empty(), "block_diag needs at least one block");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut entries = Vec::new();
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            entries.extend(b.entries.iter().map(|&(r, c, v)| (r0 + r, c0 + c, v)));
            r0 += b.rows;
            c0 += b.cols;
        }
        Self::new(rows, cols, entries).expect("shifted entries of valid blocks stay valid")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entries sorted row-major, ascending columns within a row.
    pub fn entries(&self) -> &[(usize, usize, T)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Per-row entry lists `(col, value)`, ascending by column.
    pub fn row_lists(&self) -> Vec<Vec<(usize, T)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    /// Matrix-vector product. Each output row accumulates its terms in
    /// ascending column order.
    pub fn apply(&self, input: &[T]) -> Result<Vec<T>> {
        if input.len() != self.cols {
            return Err(HartleyError::DimensionMismatch {
                expected: self.cols,
                got: input.len(),
            });
        }
        let mut out = vec![T::zero(); self.rows];
        for &(r, c, v) in &self.entries {
            out[r] += v * input[c];
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for &(r, c, v) in &self.entries {
            d.set(r, c, v);
        }
        d
    }

    /// Numeric product `self * rhs`. Coefficients that cancel to exactly
    /// zero are dropped, so the result stores only true nonzeros; use
    /// [`Support`] when the structural pattern of the product matters.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(HartleyError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let rhs_rows = rhs.row_lists();
        let mut acc: std::collections::BTreeMap<(usize, usize), T> =
            std::collections::BTreeMap::new();
        for &(r, k, v) in &self.entries {
            for &(c, w) in &rhs_rows[k] {
                *acc.entry((r, c)).or_insert_with(T::zero) += v * w;
            }
        }
        let entries = acc
            .into_iter()
            .filter(|&(_, v)| v != T::zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Self::new(self.rows, rhs.cols, entries)
    }
}

/// The structural support of a sparse matrix: which positions hold a
/// coefficient, ignoring its value. Unlike numeric products, support
/// products keep positions whose coefficients cancel.
#[derive(Debug, Clone, PartialEq)]
pub struct Support {
    rows: usize,
    cols: usize,
    row_sets: Vec<BTreeSet<usize>>,
}

impl Support {
    pub fn of<T: Real>(m: &SparseMatrix<T>) -> Self {
        let mut row_sets = vec![BTreeSet::new(); m.rows];
        for &(r, c, _) in &m.entries {
            row_sets[r].insert(c);
        }
        Self {
            rows: m.rows,
            cols: m.cols,
            row_sets,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column set of one row.
    pub fn row(&self, r: usize) -> &BTreeSet<usize> {
        &self.row_sets[r]
    }

    /// Boolean product: position (r, c) is set when any inner index links
    /// row r of `self` to column c of `rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(HartleyError::ShapeMismatch(format!(
                "cannot multiply {}x{} support by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let row_sets = self
            .row_sets
            .iter()
            .map(|ks| {
                let mut set = BTreeSet::new();
                for &k in ks {
                    set.extend(rhs.row_sets[k].iter().copied());
                }
                set
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            row_sets,
        })
    }
}
