//! Built-in minimal-multiplication kernels for the supported blocklengths,
//! plus the registry and the user-facing transform entry points.
//!
//! Every kernel follows the same anatomy: butterfly matrices (`+1`/`-1`
//! entries) gather the input into sum/difference groups, a diagonal matrix
//! concentrates the transform's irrational constants — this is where all
//! the multiplications live — sign-mixing matrices fan the scaled values
//! back out, and a sparse integer layer re-adds the parts peeled off to
//! make the constants line up. Longer kernels embed shorter ones block by
//! block: the 12-point kernel contains the 6-point core, and the 24-point
//! kernel contains the 12-point core.
//!
//! Constants are computed in `f64` from their radical closed forms and
//! narrowed to the scalar type, so `f32` kernels are correctly rounded.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::dht::{dht_to_dft, ComplexSpectrum, Signal, Spectrum};
use crate::error::HartleyError;
use crate::factor::{LayeredFactorization, OpCount, Stage};
use crate::scalar::Real;
use crate::slp::StraightLineProgram;
use crate::sparse::SparseMatrix;
use crate::Result;

/// Blocklengths with a built-in kernel.
pub const SUPPORTED_LENGTHS: [usize; 5] = [3, 5, 6, 12, 24];

/// Transform direction for batch runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Inverse => "inverse",
        })
    }
}

fn sm<T: Real>(rows: usize, cols: usize, entries: &[(usize, usize, f64)]) -> SparseMatrix<T> {
    SparseMatrix::new(
        rows,
        cols,
        entries
            .iter()
            .map(|&(r, c, v)| (r, c, T::from_f64_lit(v)))
            .collect(),
    )
    .expect("built-in kernel entries are valid")
}

fn diag<T: Real>(values: &[f64]) -> SparseMatrix<T> {
    let entries: Vec<(usize, usize, f64)> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| (i, i, v))
        .collect();
    sm(values.len(), values.len(), &entries)
}

/// The block butterfly [[I, I], [I, -I]] on `n` (even) values: pairwise
/// sums in the top half, differences in the bottom half.
fn split_butterfly<T: Real>(n: usize) -> SparseMatrix<T> {
    let half = n / 2;
    let mut entries = Vec::with_capacity(2 * n);
    for i in 0..half {
        entries.push((i, i, 1.0));
        entries.push((i, half + i, 1.0));
        entries.push((half + i, i, 1.0));
        entries.push((half + i, half + i, -1.0));
    }
    sm(n, n, &entries)
}

/// Riffle permutation: output 2m reads position m, output 2m+1 reads
/// position n/2 + m. Used to interleave separately computed even- and
/// odd-index outputs back into natural order.
fn interleave<T: Real>(n: usize) -> SparseMatrix<T> {
    let half = n / 2;
    let mut sources = vec![0usize; n];
    for m in 0..half {
        sources[2 * m] = m;
        sources[2 * m + 1] = half + m;
    }
    SparseMatrix::permutation(&sources).expect("riffle sources form a permutation")
}

fn sqrt3_half_less() -> f64 {
    (3.0f64.sqrt() - 1.0) / 2.0
}

// ---------------------------------------------------------------- N = 3

/// The 3-point factorization: one stage `C * B * A + L` with the single
/// constant (sqrt(3) - 1) / 2 on the diagonal of `B`. One multiplication,
/// seven additions.
fn three_point<T: Real>() -> LayeredFactorization<T> {
    let a3 = sqrt3_half_less();
    // A pairs the two non-DC inputs; B scales their difference; C mixes the
    // scaled values back across the three outputs; L restores the integer
    // parts peeled off the two oversized entries.
    let a = sm(3, 3, &[(0, 0, 1.0), (1, 1, 1.0), (1, 2, 1.0), (2, 1, 1.0), (2, 2, -1.0)]);
    let b = diag(&[1.0, 1.0, a3]);
    let c = sm(
        3,
        3,
        &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 2, 1.0), (2, 0, 1.0), (2, 2, -1.0)],
    );
    let l = sm(3, 3, &[(1, 2, -1.0), (2, 1, -1.0)]);
    LayeredFactorization::new(3, vec![Stage::with_layer(vec![c, b, a], l)])
        .expect("the 3-point factorization is well formed")
}

// ---------------------------------------------------------------- N = 5

/// The 5-point factorization: a single nine-factor chain. The middle of
/// the chain passes through width 6 so that the two-constant rotation of
/// the odd outputs can be done with three multiplications and three
/// additions; together with sqrt(5)/4 and -1/4 that makes five constants,
/// of which four are irrational and one is the rational -1/4.
fn five_point<T: Real>() -> LayeredFactorization<T> {
    let s5 = 5.0f64.sqrt();
    // 2*sin(2*pi/5) and 2*sin(4*pi/5).
    let f = (10.0 + 2.0 * s5).sqrt() / 2.0;
    let e = (10.0 - 2.0 * s5).sqrt() / 2.0;

    // a1 pairs inputs (1,4) and (2,3) into sums and differences.
    let a1 = sm(
        5,
        5,
        &[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (1, 4, 1.0),
            (2, 2, 1.0),
            (2, 3, 1.0),
            (3, 2, 1.0),
            (3, 3, -1.0),
            (4, 1, 1.0),
            (4, 4, -1.0),
        ],
    );
    // f4/f3/f2 expand the two-angle rotation of the difference pair into
    // three scalings between widening (5 -> 6) and narrowing (6 -> 5)
    // addition steps; f1 butterflies the sum pair.
    let f4 = sm(
        6,
        5,
        &[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (2, 2, 1.0),
            (3, 3, 1.0),
            (3, 4, 1.0),
            (4, 4, 1.0),
            (5, 3, 1.0),
        ],
    );
    let f3 = diag(&[1.0, 1.0, 1.0, e / 2.0, (f - e) / 2.0, (f + e) / 2.0]);
    let f2 = sm(
        5,
        6,
        &[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (2, 2, 1.0),
            (3, 3, 1.0),
            (3, 4, 1.0),
            (4, 3, 1.0),
            (4, 5, -1.0),
        ],
    );
    let f1 = sm(
        5,
        5,
        &[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (1, 2, 1.0),
            (2, 1, 1.0),
            (2, 2, -1.0),
            (3, 3, 1.0),
            (4, 4, 1.0),
        ],
    );
    // b carries the remaining two constants; the width-6 slot 1 duplicates
    // the sum-of-sums so the -1/4 correction and the DC path can both read
    // it.
    let b = sm(
        6,
        5,
        &[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (2, 1, -0.25),
            (3, 2, s5 / 4.0),
            (4, 3, 1.0),
            (5, 4, 1.0),
        ],
    );
    // c1/c2/c3 rebuild the five outputs from the scaled pieces.
    let c1 = sm(
        5,
        6,
        &[
            (0, 0, 1.0),
            (0, 1, 1.0),
            (1, 0, 1.0),
            (1, 2, 1.0),
            (2, 3, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
        ],
    );
    let c2 = sm(
        5,
        5,
        &[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (1, 2, 1.0),
            (2, 1, 1.0),
            (2, 2, -1.0),
            (3, 3, 1.0),
            (4, 4, 1.0),
        ],
    );
    let c3 = sm(
        5,
        5,
        &[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (1, 3, 1.0),
            (2, 2, 1.0),
            (2, 4, 1.0),
            (3, 2, 1.0),
            (3, 4, -1.0),
            (4, 1, 1.0),
            (4, 3, -1.0),
        ],
    );
    LayeredFactorization::new(
        5,
        vec![Stage::chain(vec![c3, c2, c1, b, f1, f2, f3, f4, a1])],
    )
    .expect("the 5-point factorization is well formed")
}

// ---------------------------------------------------------------- N = 6

/// The core of the 6-point kernel after the outer even/odd butterfly:
/// returns `(c, b, a2, layer)` with the two (sqrt(3)-1)/2 constants on
/// the diagonal of `b`. Shared with the 12-point kernel, where it handles
/// the even-index outputs.
fn six_point_core<T: Real>() -> (
    SparseMatrix<T>,
    SparseMatrix<T>,
    SparseMatrix<T>,
    SparseMatrix<T>,
) {
    let a3 = sqrt3_half_less();
    let a2 = sm(
        6,
        6,
        &[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (1, 2, 1.0),
            (2, 1, 1.0),
            (2, 2, -1.0),
            (3, 3, 1.0),
            (4, 4, 1.0),
            (4, 5, 1.0),
            (5, 4, 1.0),
            (5, 5, -1.0),
        ],
    );
    let b = diag(&[1.0, 1.0, a3, 1.0, a3, 1.0]);
    let c = sm(
        6,
        6,
        &[
            (0, 0, 1.0),
            (0, 1, 1.0),
            (1, 3, 1.0),
            (1, 4, 1.0),
            (2, 0, 1.0),
            (2, 2, 1.0),
            (3, 3, 1.0),
            (3, 5, -1.0),
            (4, 0, 1.0),
            (4, 2, -1.0),
            (5, 3, 1.0),
            (5, 4, -1.0),
        ],
    );
    let layer = sm(6, 6, &[(1, 4, 1.0), (2, 2, -1.0), (4, 1, -1.0), (5, 5, -1.0)]);
    (c, b, a2, layer)
}

/// The 6-point factorization: outer butterfly, then the shared core as
/// `C * B * A2 + L`. Two multiplications, twenty additions.
fn six_point<T: Real>() -> LayeredFactorization<T> {
    let (c, b, a2, layer) = six_point_core();
    LayeredFactorization::new(
        6,
        vec![
            Stage::chain(vec![split_butterfly(6)]),
            Stage::with_layer(vec![c, b, a2], layer),
        ],
    )
    .expect("the 6-point factorization is well formed")
}

// ---------------------------------------------------------------- N = 12

/// Pairing step for the odd half of the 12-point transform: combines the
/// four difference values that share constants, leaving two to pass
/// through as a butterfly.
fn twelve_odd_pair<T: Real>() -> SparseMatrix<T> {
    sm(
        6,
        6,
        &[
            (0, 0, 1.0),
            (0, 3, 1.0),
            (1, 1, 1.0),
            (1, 2, 1.0),
            (2, 1, 1.0),
            (2, 2, -1.0),
            (3, 0, 1.0),
            (3, 3, -1.0),
            (4, 4, 1.0),
            (4, 5, 1.0),
            (5, 4, 1.0),
            (5, 5, -1.0),
        ],
    )
}

/// The joint 12-wide core: block-diagonal `(c, b, a, layer)` pieces whose
/// top block is the 6-point core (even-index outputs) and whose bottom
/// block handles the odd-index outputs with two more (sqrt(3)-1)/2
/// constants. Shared with the 24-point kernel.
fn twelve_point_core<T: Real>() -> (
    SparseMatrix<T>,
    SparseMatrix<T>,
    SparseMatrix<T>,
    SparseMatrix<T>,
) {
    let a3 = sqrt3_half_less();
    let (c6, b6, a26, l6) = six_point_core();
    let a_odd = sm(
        6,
        6,
        &[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (1, 5, 1.0),
            (2, 2, 1.0),
            (2, 4, 1.0),
            (3, 3, 1.0),
            (4, 2, 1.0),
            (4, 4, -1.0),
            (5, 1, 1.0),
            (5, 5, -1.0),
        ],
    );
    let b_odd = diag(&[1.0, a3, 1.0, 1.0, a3, 1.0]);
    let c_odd = sm(
        6,
        6,
        &[
            (0, 0, 1.0),
            (0, 1, 1.0),
            (1, 2, 1.0),
            (1, 3, 1.0),
            (2, 0, 1.0),
            (2, 1, -1.0),
            (3, 3, 1.0),
            (3, 4, -1.0),
            (4, 0, 1.0),
            (4, 5, -1.0),
            (5, 3, 1.0),
            (5, 4, 1.0),
        ],
    );
    let l_odd = sm(6, 6, &[(0, 1, 1.0), (2, 5, -1.0), (3, 2, -1.0), (5, 4, -1.0)]);
    (
        SparseMatrix::block_diag(&[c6, c_odd]),
        SparseMatrix::block_diag(&[b6, b_odd]),
        SparseMatrix::block_diag(&[a26, a_odd]),
        SparseMatrix::block_diag(&[l6, l_odd]),
    )
}

/// The 12-point factorization: outer butterfly; a second butterfly on the
/// even half beside the odd-half pairing; the joint core; and a riffle
/// that interleaves even- and odd-index outputs. Four multiplications,
/// fifty-two additions.
fn twelve_point<T: Real>() -> LayeredFactorization<T> {
    let (cc, bb, aa, ll) = twelve_point_core();
    LayeredFactorization::new(
        12,
        vec![
            Stage::chain(vec![split_butterfly(12)]),
            Stage::chain(vec![SparseMatrix::block_diag(&[
                split_butterfly(6),
                twelve_odd_pair(),
            ])]),
            Stage::with_layer(vec![cc, bb, aa], ll),
            Stage::chain(vec![interleave(12)]),
        ],
    )
    .expect("the 12-point factorization is well formed")
}

// ---------------------------------------------------------------- N = 24

/// The 24-point factorization. The even half reduces to the full
/// 12-point structure. The odd half is regrouped into two 3-point blocks
/// (constant (sqrt(3)-1)/2 each) and two rotation blocks with constants
/// sqrt(6)/2, sqrt(2)/2 and sqrt(2); each rotation block widens 3 -> 4
/// so its sqrt(2)-scaled value can be doubled by addition instead of a
/// fourth multiplication. Twelve multiplications, 122 additions.
fn twenty_four_point<T: Real>() -> LayeredFactorization<T> {
    let a3 = sqrt3_half_less();
    let s2 = 2.0f64.sqrt();
    let s6h = 6.0f64.sqrt() / 2.0;
    let s2h = s2 / 2.0;

    // Pairing step for the odd half: groups the twelve difference values
    // by the constants they share.
    let comb = sm(
        12,
        12,
        &[
            (0, 0, 1.0),
            (0, 6, 1.0),
            (1, 2, 1.0),
            (1, 4, 1.0),
            (2, 8, 1.0),
            (2, 10, -1.0),
            (3, 0, 1.0),
            (3, 6, -1.0),
            (4, 2, 1.0),
            (4, 4, -1.0),
            (5, 8, 1.0),
            (5, 10, 1.0),
            (6, 1, 1.0),
            (6, 5, 1.0),
            (7, 7, 1.0),
            (7, 11, -1.0),
            (8, 3, 1.0),
            (9, 1, 1.0),
            (9, 5, -1.0),
            (10, 7, 1.0),
            (10, 11, 1.0),
            (11, 9, 1.0),
        ],
    );

    // Two 3-point blocks on the odd half.
    let small_pair = &[(0, 0, 1.0), (1, 1, 1.0), (1, 2, 1.0), (2, 1, 1.0), (2, 2, -1.0)];
    let a_e = sm(3, 3, small_pair);
    let a_ep = sm(3, 3, small_pair);
    let b_e = diag(&[1.0, a3, 1.0]);
    let b_ep = diag(&[1.0, 1.0, a3]);
    let c_e = sm(
        3,
        3,
        &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0), (2, 0, 1.0), (2, 2, -1.0)],
    );
    let c_ep = sm(
        3,
        3,
        &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 2, -1.0), (2, 0, 1.0), (2, 2, 1.0)],
    );
    let l_e = sm(3, 3, &[(0, 1, 1.0), (1, 2, -1.0)]);
    let l_ep = sm(3, 3, &[(1, 1, -1.0), (2, 2, -1.0)]);

    // Two rotation blocks. The widening step repeats the slot that will
    // be scaled by sqrt(2) so the narrowing step can double it with an
    // addition.
    let a_f1 = sm(
        4,
        3,
        &[(0, 0, 1.0), (1, 1, 1.0), (1, 2, 1.0), (2, 2, 1.0), (3, 1, -1.0), (3, 2, 1.0)],
    );
    let a_f2 = sm(3, 4, &[(0, 0, 1.0), (1, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]);
    let b_f = diag(&[s6h, s2h, s2]);
    let c_f = sm(
        3,
        3,
        &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0), (2, 2, 1.0)],
    );
    let a_f1p = sm(
        4,
        3,
        &[(0, 0, 1.0), (0, 2, -1.0), (1, 1, 1.0), (2, 0, 1.0), (2, 2, 1.0), (3, 2, 1.0)],
    );
    let a_f2p = sm(3, 4, &[(0, 0, 1.0), (0, 3, -1.0), (1, 1, 1.0), (2, 2, 1.0)]);
    let b_fp = diag(&[s2h, s6h, s2]);
    let c_fp = sm(
        3,
        3,
        &[(0, 2, 1.0), (1, 0, 1.0), (1, 1, 1.0), (2, 0, -1.0), (2, 1, 1.0)],
    );

    let (cc, bb, aa, ll) = twelve_point_core();
    let widen = SparseMatrix::block_diag(&[
        SparseMatrix::identity(12),
        SparseMatrix::identity(3),
        SparseMatrix::identity(3),
        a_f1,
        a_f1p,
    ]);
    let aa24 = SparseMatrix::block_diag(&[aa, a_e, a_ep, a_f2, a_f2p]);
    let bb24 = SparseMatrix::block_diag(&[bb, b_e, b_ep, b_f, b_fp]);
    let cc24 = SparseMatrix::block_diag(&[cc, c_e, c_ep, c_f, c_fp]);
    let zero6 = SparseMatrix::new(6, 6, vec![]).expect("the zero block is a valid matrix");
    let ll24 = SparseMatrix::block_diag(&[ll, l_e, l_ep, zero6]);

    // Unscrambling for the odd-index outputs, mirroring the evenness
    // structure used on the way in.
    let out_split = sm(
        12,
        12,
        &[
            (0, 0, 1.0),
            (0, 6, 1.0),
            (1, 3, 1.0),
            (1, 9, 1.0),
            (2, 1, 1.0),
            (2, 7, 1.0),
            (3, 4, 1.0),
            (3, 10, 1.0),
            (4, 2, 1.0),
            (4, 8, 1.0),
            (5, 5, 1.0),
            (5, 11, 1.0),
            (6, 0, 1.0),
            (6, 6, -1.0),
            (7, 3, 1.0),
            (7, 9, -1.0),
            (8, 1, 1.0),
            (8, 7, -1.0),
            (9, 4, 1.0),
            (9, 10, -1.0),
            (10, 2, 1.0),
            (10, 8, -1.0),
            (11, 5, 1.0),
            (11, 11, -1.0),
        ],
    );

    LayeredFactorization::new(
        24,
        vec![
            Stage::chain(vec![split_butterfly(24)]),
            Stage::chain(vec![SparseMatrix::block_diag(&[split_butterfly(12), comb])]),
            Stage::chain(vec![SparseMatrix::block_diag(&[
                split_butterfly(6),
                twelve_odd_pair(),
                SparseMatrix::identity(12),
            ])]),
            Stage::with_layer(vec![cc24, bb24, aa24, widen], ll24),
            Stage::chain(vec![SparseMatrix::block_diag(&[interleave(12), out_split])]),
            Stage::chain(vec![interleave(24)]),
        ],
    )
    .expect("the 24-point factorization is well formed")
}

// ------------------------------------------------------------- dispatch

/// A blocklength's factorization compiled to a straight-line program,
/// with its operation count.
#[derive(Debug, Clone)]
pub struct FastKernel<T> {
    n: usize,
    factorization: LayeredFactorization<T>,
    program: StraightLineProgram<T>,
    opcount: OpCount,
}

impl<T: Real> FastKernel<T> {
    fn from_factorization(factorization: LayeredFactorization<T>) -> Self {
        let program = StraightLineProgram::emit(&factorization);
        let opcount = factorization.count_ops();
        Self {
            n: factorization.n(),
            factorization,
            program,
            opcount,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factorization(&self) -> &LayeredFactorization<T> {
        &self.factorization
    }

    pub fn program(&self) -> &StraightLineProgram<T> {
        &self.program
    }

    pub fn op_count(&self) -> OpCount {
        self.opcount
    }

    /// Runs the compiled program on a raw slice.
    pub fn apply(&self, input: &[T]) -> Result<Vec<T>> {
        self.program.run(input)
    }

    /// Forward transform of a signal.
    pub fn transform(&self, signal: &Signal<T>) -> Result<Spectrum<T>> {
        Spectrum::new(self.apply(signal.as_slice())?)
    }
}

/// Builds the 3-point kernel (1 multiplication, 7 additions).
pub fn build_kernel_3<T: Real>() -> FastKernel<T> {
    FastKernel::from_factorization(three_point())
}

/// Builds the 5-point kernel (4 irrational + 1 rational multiplication,
/// 17 additions).
pub fn build_kernel_5<T: Real>() -> FastKernel<T> {
    FastKernel::from_factorization(five_point())
}

/// Builds the 6-point kernel (2 multiplications, 20 additions).
pub fn build_kernel_6<T: Real>() -> FastKernel<T> {
    FastKernel::from_factorization(six_point())
}

/// Builds the 12-point kernel (4 multiplications, 52 additions).
pub fn build_kernel_12<T: Real>() -> FastKernel<T> {
    FastKernel::from_factorization(twelve_point())
}

/// Builds the 24-point kernel (12 multiplications, 122 additions).
pub fn build_kernel_24<T: Real>() -> FastKernel<T> {
    FastKernel::from_factorization(twenty_four_point())
}

/// All built-in kernels, keyed by blocklength.
#[derive(Debug, Clone)]
pub struct KernelRegistry<T> {
    kernels: BTreeMap<usize, FastKernel<T>>,
}

impl<T: Real> KernelRegistry<T> {
    /// Builds and compiles every supported kernel.
    pub fn new() -> Self {
        let mut kernels = BTreeMap::new();
        kernels.insert(3, build_kernel_3());
        kernels.insert(5, build_kernel_5());
        kernels.insert(6, build_kernel_6());
        kernels.insert(12, build_kernel_12());
        kernels.insert(24, build_kernel_24());
        Self { kernels }
    }

    /// The kernel for blocklength `n`, or [`HartleyError::UnsupportedLength`].
    pub fn get(&self, n: usize) -> Result<&FastKernel<T>> {
        self.kernels
            .get(&n)
            .ok_or(HartleyError::UnsupportedLength { n })
    }

    /// Kernels in ascending blocklength order.
    pub fn iter(&self) -> impl Iterator<Item = &FastKernel<T>> {
        self.kernels.values()
    }
}

impl<T: Real> Default for KernelRegistry<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// The shared, lazily built `f64` registry behind [`fast_dht`] and
/// friends. Construction cost is paid once per process.
pub fn registry() -> &'static KernelRegistry<f64> {
    static REGISTRY: OnceLock<KernelRegistry<f64>> = OnceLock::new();
    REGISTRY.get_or_init(KernelRegistry::new)
}

/// Forward transform through the registered kernel for the signal's
/// length. Unsupported lengths fail loudly rather than falling back to
/// the naive summation — the naive path is a separate, explicit choice.
pub fn fast_dht(signal: &Signal<f64>) -> Result<Spectrum<f64>> {
    registry().get(signal.len())?.transform(signal)
}

/// Inverse transform: the forward kernel scaled by 1/N.
pub fn fast_idht(spectrum: &Spectrum<f64>) -> Result<Signal<f64>> {
    let kernel = registry().get(spectrum.len())?;
    let scale = 1.0 / spectrum.len() as f64;
    let out = kernel.apply(spectrum.as_slice())?;
    Signal::new(out.into_iter().map(|x| x * scale).collect())
}

/// Fourier spectrum of a real signal, computed through the fast Hartley
/// kernel and the spectrum bridge.
pub fn fast_dft(signal: &Signal<f64>) -> Result<ComplexSpectrum<f64>> {
    Ok(dht_to_dft(&fast_dht(signal)?))
}

/// Transforms a batch of equal-length signals, preserving order. The
/// output container is [`Spectrum`] in both directions; for
/// [`Direction::Inverse`] the entries are time-domain values. An empty
/// batch maps to an empty batch.
pub fn batch_transform(
    signals: &[Signal<f64>],
    direction: Direction,
) -> Result<Vec<Spectrum<f64>>> {
    let Some(first) = signals.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    for s in signals {
        if s.len() != n {
            return Err(HartleyError::MixedLengths {
                first: n,
                other: s.len(),
            });
        }
    }
    registry().get(n)?;
    signals
        .iter()
        .map(|s| match direction {
            Direction::Forward => fast_dht(s),
            Direction::Inverse => fast_idht(&Spectrum::from(s.clone())).map(Spectrum::from),
        })
        .collect()
}
