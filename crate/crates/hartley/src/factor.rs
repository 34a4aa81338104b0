//! Layered factorizations of transform matrices, with evaluation,
//! operation counting, and verification against the naive oracle.
//!
//! A factorization represents an N x N matrix as a product of *stages*,
//! applied to the signal in listed order. Each stage is
//!
//! ```text
//! stage(x) = F_1 * (F_2 * (... * (F_m * x))) + L * x
//! ```
//!
//! where `F_1 ... F_m` is a chain of sparse factors (the last listed factor
//! touches the input first) and `L` is an optional additive *layer* that
//! reads the stage input directly and is merged into the chain output. The
//! layer lets a handful of entries bypass the chain, which keeps the chain
//! factors regular without spending multiplications on the stragglers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::dht::{naive_dht, hartley_matrix, Signal};
use crate::error::HartleyError;
use crate::scalar::Real;
use crate::sparse::{SparseMatrix, Support};
use crate::Result;

/// One stage of a layered factorization: a chain of sparse factors plus an
/// optional additive layer on the stage input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Stage<T> {
    pub chain: Vec<SparseMatrix<T>>,
    #[serde(default = "none_layer")]
    pub layer: Option<SparseMatrix<T>>,
}

fn none_layer<T>() -> Option<SparseMatrix<T>> {
    None
}

impl<T: Real> Stage<T> {
    /// A stage with no layer.
    pub fn chain(chain: Vec<SparseMatrix<T>>) -> Self {
        Self { chain, layer: None }
    }

    /// A stage whose chain output is merged with `layer * input`.
    pub fn with_layer(chain: Vec<SparseMatrix<T>>, layer: SparseMatrix<T>) -> Self {
        Self {
            chain,
            layer: Some(layer),
        }
    }

    /// Input width: the column count of the factor applied first.
    pub fn input_dim(&self) -> usize {
        self.chain.last().map_or(0, SparseMatrix::cols)
    }

    /// Output width: the row count of the factor applied last.
    pub fn output_dim(&self) -> usize {
        self.chain.first().map_or(0, SparseMatrix::rows)
    }

    /// Structural support of the chain product (cancellations kept).
    fn chain_support(&self) -> Support {
        let mut support = Support::of(&self.chain[0]);
        for f in &self.chain[1..] {
            support = support
                .matmul(&Support::of(f))
                .expect("stage shapes are validated at construction");
        }
        support
    }

    fn apply(&self, input: &[T]) -> Result<Vec<T>> {
        let mut current = input.to_vec();
        for f in self.chain.iter().rev() {
            current = f.apply(&current)?;
        }
        if let Some(layer) = &self.layer {
            let extra = layer.apply(input)?;
            for (out, e) in current.iter_mut().zip(extra) {
                *out += e;
            }
        }
        Ok(current)
    }

    fn to_dense(&self) -> DenseMatrix<T> {
        let mut dense = self.chain[0].to_dense();
        for f in &self.chain[1..] {
            dense = dense.matmul(&f.to_dense());
        }
        if let Some(layer) = &self.layer {
            for &(r, c, v) in layer.entries() {
                dense.set(r, c, dense.get(r, c) + v);
            }
        }
        dense
    }
}

/// Operation totals for one pass through a factorization.
///
/// Conventions:
/// * a stored coefficient costs a multiplication unless it is exactly
///   `+1` or `-1` (sign flips are free);
/// * a row holding `k >= 1` coefficients costs `k - 1` additions;
/// * when a stage's chain and layer both feed the same output row, merging
///   them costs one extra addition for that row.
///
/// `rational_multiplications` breaks out the multiplications whose constant
/// is a small rational (denominator at most 16, e.g. `-1/4`); fixed-point
/// implementations often realize those with shifts and adds instead of a
/// general multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCount {
    pub multiplications: usize,
    pub additions: usize,
    pub rational_multiplications: usize,
}

impl OpCount {
    pub const ZERO: OpCount = OpCount {
        multiplications: 0,
        additions: 0,
        rational_multiplications: 0,
    };

    /// Multiplications by constants that are not small rationals.
    pub fn irrational_multiplications(&self) -> usize {
        self.multiplications - self.rational_multiplications
    }
}

/// Whether a coefficient costs a multiplication: anything but an exact
/// `+1` or `-1` does.
pub(crate) fn is_counted_multiplication<T: Real>(v: T) -> bool {
    v != T::one() && v != -T::one()
}

/// Whether a constant is a rational with denominator at most 16, to within
/// an absolute slack of 1e-9 on the scaled value.
pub(crate) fn is_small_rational<T: Real>(v: T) -> bool {
    let x = match v.to_f64() {
        Some(x) => x,
        None => return false,
    };
    (1..=16u32).any(|d| {
        let scaled = x * f64::from(d);
        (scaled - scaled.round()).abs() <= 1e-9
    })
}

fn count_matrix<T: Real>(m: &SparseMatrix<T>, count: &mut OpCount) {
    for list in m.row_lists() {
        if !list.is_empty() {
            count.additions += list.len() - 1;
        }
        for &(_, v) in &list {
            if is_counted_multiplication(v) {
                count.multiplications += 1;
                if is_small_rational(v) {
                    count.rational_multiplications += 1;
                }
            }
        }
    }
}

/// Outcome of checking a factorization against the naive-summation oracle
/// and against the dense transform matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub trials: usize,
    pub tolerance: f64,
    /// Largest |fast - naive| over all trial signals and output slots.
    pub oracle_error: f64,
    /// Largest entrywise gap between the rebuilt dense matrix and the
    /// transform matrix.
    pub dense_error: f64,
    pub passed: bool,
}

/// A transform matrix expressed as a product of layered stages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "RawFactorization<T>",
    into = "RawFactorization<T>",
    bound = "T: Real"
)]
pub struct LayeredFactorization<T> {
    n: usize,
    stages: Vec<Stage<T>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Real")]
struct RawFactorization<T> {
    n: usize,
    stages: Vec<Stage<T>>,
}

impl<T: Real> From<LayeredFactorization<T>> for RawFactorization<T> {
    fn from(f: LayeredFactorization<T>) -> Self {
        RawFactorization {
            n: f.n,
            stages: f.stages,
        }
    }
}

impl<T: Real> TryFrom<RawFactorization<T>> for LayeredFactorization<T> {
    type Error = HartleyError;
    fn try_from(raw: RawFactorization<T>) -> Result<Self> {
        LayeredFactorization::new(raw.n, raw.stages)
    }
}

impl<T: Real> LayeredFactorization<T> {
    /// Validates stage shapes and builds the factorization.
    ///
    /// Requirements: at least one stage, every stage a nonempty chain of
    /// chainable factors, stage widths lining up (first stage reads N
    /// values, last stage writes N), layers matching their stage's
    /// output x input shape, and no chain factor with an all-zero row
    /// (such a row would silently discard data).
    pub fn new(n: usize, stages: Vec<Stage<T>>) -> Result<Self> {
        if n == 0 {
            return Err(HartleyError::ShapeMismatch(
                "transform length must be positive".into(),
            ));
        }
        if stages.is_empty() {
            return Err(HartleyError::ShapeMismatch(
                "a factorization needs at least one stage".into(),
            ));
        }
        let mut width = n;
        for (si, stage) in stages.iter().enumerate() {
            if stage.chain.is_empty() {
                return Err(HartleyError::ShapeMismatch(format!(
                    "stage {si} has an empty chain"
                )));
            }
            if stage.input_dim() != width {
                return Err(HartleyError::ShapeMismatch(format!(
                    "stage {si} reads {} values but receives {width}",
                    stage.input_dim()
                )));
            }
            for (fi, f) in stage.chain.iter().enumerate().rev() {
                if fi < stage.chain.len() - 1 && f.cols() != stage.chain[fi + 1].rows() {
                    return Err(HartleyError::ShapeMismatch(format!(
                        "stage {si}: factor {fi} has {} columns but factor {} has {} rows",
                        f.cols(),
                        fi + 1,
                        stage.chain[fi + 1].rows()
                    )));
                }
                for (row, list) in f.row_lists().iter().enumerate() {
                    if list.is_empty() {
                        return Err(HartleyError::EmptyRow {
                            stage: si,
                            factor: fi,
                            row,
                        });
                    }
                }
            }
            if let Some(layer) = &stage.layer {
                if layer.rows() != stage.output_dim() || layer.cols() != stage.input_dim() {
                    return Err(HartleyError::ShapeMismatch(format!(
                        "stage {si}: layer is {}x{} but the stage maps {} values to {}",
                        layer.rows(),
                        layer.cols(),
                        stage.input_dim(),
                        stage.output_dim()
                    )));
                }
            }
            width = stage.output_dim();
        }
        if width != n {
            return Err(HartleyError::ShapeMismatch(format!(
                "stages end at width {width}, expected {n}"
            )));
        }
        Ok(Self { n, stages })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stages(&self) -> &[Stage<T>] {
        &self.stages
    }

    /// Applies the factorization to a length-N input.
    pub fn evaluate(&self, input: &[T]) -> Result<Vec<T>> {
        if input.len() != self.n {
            return Err(HartleyError::DimensionMismatch {
                expected: self.n,
                got: input.len(),
            });
        }
        let mut current = input.to_vec();
        for stage in &self.stages {
            current = stage.apply(&current)?;
        }
        Ok(current)
    }

    /// Multiplies the stages back out into a dense N x N matrix.
    pub fn reconstruct_dense(&self) -> DenseMatrix<T> {
        let mut dense = self.stages[0].to_dense();
        for stage in &self.stages[1..] {
            dense = stage.to_dense().matmul(&dense);
        }
        dense
    }

    /// Tallies operations for one application under the documented
    /// conventions (see [`OpCount`]).
    pub fn count_ops(&self) -> OpCount {
        let mut count = OpCount::ZERO;
        for stage in &self.stages {
            for f in &stage.chain {
                count_matrix(f, &mut count);
            }
            if let Some(layer) = &stage.layer {
                count_matrix(layer, &mut count);
                let chain_support = stage.chain_support();
                for r in 0..layer.rows() {
                    let layer_row_nonzero =
                        layer.entries().iter().any(|&(er, _, _)| er == r);
                    if layer_row_nonzero && !chain_support.row(r).is_empty() {
                        count.additions += 1;
                    }
                }
            }
        }
        count
    }

    /// Checks the factorization against the naive-summation transform on
    /// `trials` seeded random signals in [-1, 1], and its rebuilt dense
    /// matrix against the transform matrix entrywise.
    pub fn verify(&self, trials: usize, tolerance: f64, seed: u64) -> VerificationReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut oracle_error = 0.0f64;
        for _ in 0..trials {
            let values: Vec<T> = (0..self.n)
                .map(|_| T::from_f64_lit(rng.gen_range(-1.0..=1.0)))
                .collect();
            let fast = self
                .evaluate(&values)
                .expect("input length matches by construction");
            let signal = Signal::new(values).expect("random values are finite");
            let exact = naive_dht(&signal);
            for (a, b) in fast.iter().zip(exact.iter()) {
                let gap = (*a - *b).abs().to_f64().unwrap_or(f64::INFINITY);
                oracle_error = oracle_error.max(gap);
            }
        }
        let dense_error = self
            .reconstruct_dense()
            .max_abs_diff(&hartley_matrix(self.n))
            .to_f64()
            .unwrap_or(f64::INFINITY);
        VerificationReport {
            n: self.n,
            trials,
            tolerance,
            oracle_error,
            dense_error,
            passed: oracle_error <= tolerance && dense_error <= tolerance,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(rows: usize, cols: usize, e: &[(usize, usize, f64)]) -> SparseMatrix<f64> {
        SparseMatrix::new(rows, cols, e.to_vec()).unwrap()
    }

    fn two_point() -> LayeredFactorization<f64> {
        let butterfly = sm(2, 2, &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0)]);
        LayeredFactorization::new(2, vec![Stage::chain(vec![butterfly])]).unwrap()
    }

    #[test]
    fn two_point_butterfly_is_the_length_two_transform() {
        let f = two_point();
        assert_eq!(f.evaluate(&[5.0, 3.0]).unwrap(), vec![8.0, 2.0]);
        let report = f.verify(50, 1e-12, 7);
        assert!(report.passed, "oracle {:?}", report);
        assert_eq!(
            f.count_ops(),
            OpCount {
                multiplications: 0,
                additions: 2,
                rational_multiplications: 0
            }
        );
    }

    #[test]
    fn layer_merge_costs_one_add_per_shared_row() {
        // Identity chain plus a layer hitting row 0 only: evaluating gives
        // [a + b, b] for one merge addition and nothing else.
        let chain = SparseMatrix::identity(2);
        let layer = sm(2, 2, &[(0, 1, 1.0)]);
        let f =
            LayeredFactorization::new(2, vec![Stage::with_layer(vec![chain], layer)]).unwrap();
        assert_eq!(f.evaluate(&[4.0, 9.0]).unwrap(), vec![13.0, 9.0]);
        assert_eq!(
            f.count_ops(),
            OpCount {
                multiplications: 0,
                additions: 1,
                rational_multiplications: 0
            }
        );
    }

    #[test]
    fn chain_factor_with_dead_row_is_rejected() {
        let bad = sm(2, 2, &[(0, 0, 1.0)]);
        let err = LayeredFactorization::new(2, vec![Stage::chain(vec![bad])]).unwrap_err();
        assert!(matches!(
            err,
            HartleyError::EmptyRow {
                stage: 0,
                factor: 0,
                row: 1
            }
        ));
    }

    #[test]
    fn mismatched_stage_widths_are_rejected() {
        let a = sm(3, 2, &[(0, 0, 1.0), (1, 1, 1.0), (2, 0, 1.0)]);
        let b = sm(2, 2, &[(0, 0, 1.0), (1, 1, 1.0)]);
        // Stage 1 expects 2 values but stage 0 produces 3.
        let err =
            LayeredFactorization::new(2, vec![Stage::chain(vec![a]), Stage::chain(vec![b])])
                .unwrap_err();
        assert!(matches!(err, HartleyError::ShapeMismatch(_)));
    }

    #[test]
    fn rational_constants_are_broken_out() {
        let d = sm(2, 2, &[(0, 0, -0.25), (1, 1, 0.36602540378443865)]);
        let f = LayeredFactorization::new(2, vec![Stage::chain(vec![d])]).unwrap();
        let count = f.count_ops();
        assert_eq!(count.multiplications, 2);
        assert_eq!(count.rational_multiplications, 1);
        assert_eq!(count.irrational_multiplications(), 1);
        assert_eq!(count.additions, 0);
    }

    #[test]
    fn dense_reconstruction_multiplies_stages_in_order() {
        let scale = sm(2, 2, &[(0, 0, 2.0), (1, 1, 3.0)]);
        let swap = SparseMatrix::permutation(&[1, 0]).unwrap();
        // Scale first, then swap: M = P * D.
        let f = LayeredFactorization::new(
            2,
            vec![Stage::chain(vec![scale]), Stage::chain(vec![swap])],
        )
        .unwrap();
        let dense = f.reconstruct_dense();
        assert_eq!(
            (dense.get(0, 0), dense.get(0, 1), dense.get(1, 0), dense.get(1, 1)),
            (0.0, 3.0, 2.0, 0.0)
        );
        assert_eq!(f.evaluate(&[1.0, 1.0]).unwrap(), vec![3.0, 2.0]);
    }

    #[test]
    fn verify_reports_failure_for_a_wrong_factorization() {
        let not_quite = sm(2, 2, &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 1.0)]);
        let f = LayeredFactorization::new(2, vec![Stage::chain(vec![not_quite])]).unwrap();
        let report = f.verify(20, 1e-12, 3);
        assert!(!report.passed);
        assert!(report.dense_error >= 2.0 - 1e-12);
    }

    #[test]
    fn json_round_trip_preserves_counts_and_behavior() {
        let f = two_point();
        let text = serde_json::to_string(&f).unwrap();
        let back: LayeredFactorization<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.count_ops(), f.count_ops());
        assert_eq!(
            back.evaluate(&[1.5, -0.5]).unwrap(),
            f.evaluate(&[1.5, -0.5]).unwrap()
        );
    }

    #[test]
    fn deserialization_rejects_inconsistent_shapes() {
        let bad = r#"{"n":2,"stages":[{"chain":[{"rows":3,"cols":3,"entries":[[0,0,1.0],[1,1,1.0],[2,2,1.0]]}],"layer":null}]}"#;
        assert!(serde_json::from_str::<LayeredFactorization<f64>>(bad).is_err());
    }
}
