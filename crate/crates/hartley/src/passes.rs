//! Mechanical derivation passes that pull sparse structure out of a dense
//! transform matrix.
//!
//! Each pass splits its input `M` into a structured pair: a *reduced*
//! matrix that still carries the interesting constants, and a sparse
//! companion that captures the structure just removed. Chaining passes —
//! peel the stray integer parts, combine columns that agree up to sign,
//! then split the surviving constants onto a diagonal — turns a small
//! transform matrix into the chain-plus-layer form consumed by
//! [`crate::factor::LayeredFactorization`].
//!
//! The passes are deliberately mechanical; choosing which pass to run,
//! and in which order, is the caller's job.

use crate::dense::DenseMatrix;
use crate::error::HartleyError;
use crate::scalar::Real;
use crate::sparse::SparseMatrix;
use crate::Result;

/// Entrywise tolerance used by the structural matching in every pass.
const MATCH_TOL: f64 = 1e-12;

/// Looser tolerance for grouping entry magnitudes into classes when
/// choosing how much integer weight to peel.
const CLASS_TOL: f64 = 1e-9;

/// Splits an even-length matrix whose right half repeats the left half
/// with alternating row signs (`m[k][i + n/2] = (-1)^k * m[k][i]`) into
/// `reduced * a1`, where `a1` is the exact block butterfly
/// `[[I, I], [I, -I]]`.
///
/// In `reduced`, even rows read only the first n/2 combined values (the
/// pairwise sums) and odd rows only the last n/2 (the differences); the
/// surviving coefficients are copied from the left half of the input.
/// Rejects odd sizes, and any matrix violating the sign pattern by more
/// than 1e-12 — which signals the input is not a transform matrix of
/// this family.
pub fn pass_hadamard_split<T: Real>(
    m: &DenseMatrix<T>,
) -> Result<(DenseMatrix<T>, SparseMatrix<T>)> {
    let n = m.rows();
    if m.cols() != n {
        return Err(HartleyError::ShapeMismatch(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if n % 2 != 0 {
        return Err(HartleyError::OddLength { n });
    }
    let half = n / 2;
    let tol = T::from_f64_lit(MATCH_TOL);
    for k in 0..n {
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        for i in 0..half {
            if (m.get(k, i + half) - sign * m.get(k, i)).abs() > tol {
                return Err(HartleyError::SignProperty {
                    row: k,
                    col: i + half,
                });
            }
        }
    }
    let mut reduced = DenseMatrix::zeros(n, n);
    for k in 0..n {
        for i in 0..half {
            if k % 2 == 0 {
                reduced.set(k, i, m.get(k, i));
            } else {
                reduced.set(k, half + i, m.get(k, i));
            }
        }
    }
    let mut entries = Vec::with_capacity(2 * n);
    for i in 0..half {
        entries.push((i, i, T::one()));
        entries.push((i, half + i, T::one()));
        entries.push((half + i, i, T::one()));
        entries.push((half + i, half + i, -T::one()));
    }
    let a1 = SparseMatrix::new(n, n, entries).expect("butterfly entries are valid");
    Ok((reduced, a1))
}

fn is_near_integer(x: f64) -> bool {
    (x - x.round()).abs() <= MATCH_TOL
}

/// Peels signed integer parts off the oversized entries of a matrix so
/// that what remains shares magnitudes with the entries that were already
/// in `[-1, 1]`.
///
/// Every non-integer entry `m` with `|m| > 1` becomes `m = m' + s`: `s` is
/// an integer of the same sign collected into the sparse layer `L`, and
/// the remainder `m'` is chosen so `|m'|` lands in the magnitude class of
/// an existing small entry (falling back to the full integer part when no
/// class matches). Entries already in `[-1, 1]`, and exact integers, pass
/// through untouched. The return pair satisfies `balanced + L = M`.
pub fn pass_integer_peel<T: Real>(m: &DenseMatrix<T>) -> (DenseMatrix<T>, SparseMatrix<T>) {
    // Magnitude classes come from the entries that will not be peeled.
    let mut classes: Vec<f64> = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c).abs().to_f64().unwrap_or(f64::INFINITY);
            if x > 0.0 && x <= 1.0 + MATCH_TOL && !classes.iter().any(|&k| (k - x).abs() <= CLASS_TOL)
            {
                classes.push(x);
            }
        }
    }
    let mut balanced = m.clone();
    let mut layer = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            let x = v.abs().to_f64().unwrap_or(0.0);
            if x <= 1.0 + MATCH_TOL || is_near_integer(x) {
                continue;
            }
            let whole = x.floor() as i64;
            let peel = (1..=whole)
                .find(|&t| {
                    let remainder = x - t as f64;
                    classes.iter().any(|&k| (k - remainder).abs() <= CLASS_TOL)
                })
                .unwrap_or(whole);
            let s = if v > T::zero() {
                T::from_f64_lit(peel as f64)
            } else {
                -T::from_f64_lit(peel as f64)
            };
            balanced.set(r, c, v - s);
            layer.push((r, c, s));
        }
    }
    let layer = SparseMatrix::new(m.rows(), m.cols(), layer)
        .expect("peeled integer parts are finite and nonzero");
    (balanced, layer)
}

/// Finds column pairs whose entries agree in absolute value on every row
/// and rewrites the matrix over their sums and differences.
///
/// Returns `(reduced, a)` with `reduced * a = m` within 1e-12, where `a`
/// is a butterfly producing `(x_i + x_j, x_i - x_j)` in place of each
/// combined pair `(i, j)` and passing other columns through. In `reduced`,
/// a row keeps at most one coefficient per pair: on the sum column when
/// the row's two entries share a sign, on the difference column otherwise.
/// Pairing is greedy over ascending column indices; errors when no pair of
/// columns agrees.
pub fn pass_column_combine<T: Real>(
    m: &DenseMatrix<T>,
) -> Result<(DenseMatrix<T>, SparseMatrix<T>)> {
    let (rows, cols) = (m.rows(), m.cols());
    let tol = T::from_f64_lit(MATCH_TOL);
    let mut used = vec![false; cols];
    let mut pairs = Vec::new();
    for i in 0..cols {
        if used[i] {
            continue;
        }
        for j in i + 1..cols {
            if used[j] {
                continue;
            }
            let agrees =
                (0..rows).all(|r| (m.get(r, i).abs() - m.get(r, j).abs()).abs() <= tol);
            if agrees {
                used[i] = true;
                used[j] = true;
                pairs.push((i, j));
                break;
            }
        }
    }
    if pairs.is_empty() {
        return Err(HartleyError::NoCombinablePair);
    }
    let mut entries: Vec<(usize, usize, T)> = used
        .iter()
        .enumerate()
        .filter(|&(_, &u)| !u)
        .map(|(c, _)| (c, c, T::one()))
        .collect();
    for &(i, j) in &pairs {
        entries.push((i, i, T::one()));
        entries.push((i, j, T::one()));
        entries.push((j, i, T::one()));
        entries.push((j, j, -T::one()));
    }
    let a = SparseMatrix::new(cols, cols, entries).expect("butterfly entries are valid");
    let mut reduced = m.clone();
    for &(i, j) in &pairs {
        for r in 0..rows {
            let alpha = m.get(r, i);
            let beta = m.get(r, j);
            if (beta - alpha).abs() <= tol {
                // Same sign (or both zero): the row reads the sum.
                reduced.set(r, i, alpha);
                reduced.set(r, j, T::zero());
            } else {
                // Opposite sign: the row reads the difference.
                reduced.set(r, i, T::zero());
                reduced.set(r, j, alpha);
            }
        }
    }
    Ok((reduced, a))
}

/// Factors `m = c * b` where `b` is diagonal and `c` carries only signs.
///
/// Each column of `m` must hold entries of one shared magnitude (within
/// 1e-12); that magnitude becomes the column's diagonal coefficient in
/// `b` (snapped to 1 when it is within tolerance of 1), and `c` keeps a
/// `+1`/`-1` at each nonzero position. Columns with no entries get a 1 on
/// the diagonal. Entries smaller than 1e-12 in magnitude are treated as
/// structural zeros.
pub fn pass_diagonal_split<T: Real>(
    m: &DenseMatrix<T>,
) -> Result<(SparseMatrix<T>, SparseMatrix<T>)> {
    let tol = T::from_f64_lit(MATCH_TOL);
    let mut c_entries = Vec::new();
    let mut b_entries = Vec::new();
    for col in 0..m.cols() {
        let mut magnitude: Option<T> = None;
        for row in 0..m.rows() {
            let v = m.get(row, col);
            if v.abs() <= tol {
                continue;
            }
            match magnitude {
                None => magnitude = Some(v.abs()),
                Some(mag) => {
                    if (v.abs() - mag).abs() > tol {
                        return Err(HartleyError::MixedMagnitudes { col });
                    }
                }
            }
            let sign = if v > T::zero() { T::one() } else { -T::one() };
            c_entries.push((row, col, sign));
        }
        let mut mag = magnitude.unwrap_or_else(T::one);
        if (mag - T::one()).abs() <= tol {
            mag = T::one();
        }
        b_entries.push((col, col, mag));
    }
    let c = SparseMatrix::new(m.rows(), m.cols(), c_entries)?;
    let b = SparseMatrix::new(m.cols(), m.cols(), b_entries)?;
    Ok((c, b))
}
