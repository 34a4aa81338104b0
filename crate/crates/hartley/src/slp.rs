//! Straight-line programs compiled from layered factorizations.
//!
//! The emitter walks a factorization stage by stage (each chain applied
//! right to left, rows accumulated in ascending column order) and produces
//! a flat list of register operations. Cost accounting matches
//! [`LayeredFactorization::count_ops`] instruction for instruction:
//! a coefficient of `+1` becomes a register alias, `-1` becomes a free
//! negation, and anything else becomes one `MulConst`.

use std::fmt;

use crate::error::HartleyError;
use crate::factor::{
    is_counted_multiplication, is_small_rational, LayeredFactorization, OpCount, Stage,
};
use crate::scalar::Real;
use crate::sparse::SparseMatrix;
use crate::Result;

/// One register operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Op<T> {
    /// `r[dst] = x[input]`
    Load { dst: usize, input: usize },
    /// `r[dst] = r[a] + r[b]`
    Add { dst: usize, a: usize, b: usize },
    /// `r[dst] = r[a] - r[b]`
    Sub { dst: usize, a: usize, b: usize },
    /// `r[dst] = constant * r[src]`
    MulConst { dst: usize, src: usize, constant: T },
    /// `r[dst] = -r[src]`
    Neg { dst: usize, src: usize },
}

impl<T: Real> fmt::Display for Op<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Load { dst, input } => write!(f, "r{dst} = x{input}"),
            Op::Add { dst, a, b } => write!(f, "r{dst} = r{a} + r{b}"),
            Op::Sub { dst, a, b } => write!(f, "r{dst} = r{a} - r{b}"),
            Op::MulConst { dst, src, constant } => write!(f, "r{dst} = {constant} * r{src}"),
            Op::Neg { dst, src } => write!(f, "r{dst} = -r{src}"),
        }
    }
}

/// A branch-free program computing one application of a factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct StraightLineProgram<T> {
    n_inputs: usize,
    ops: Vec<Op<T>>,
    outputs: Vec<usize>,
    n_registers: usize,
}

/// Accumulator state while folding one row: the running value, possibly
/// held with its sign flipped so the flip can ride along for free.
#[derive(Clone, Copy)]
enum Acc {
    Pos(usize),
    Negated(usize),
}

struct Emitter<T> {
    ops: Vec<Op<T>>,
    next_reg: usize,
}

impl<T: Real> Emitter<T> {
    fn fresh(&mut self) -> usize {
        let r = self.next_reg;
        self.next_reg += 1;
        r
    }

    /// Turns one row term `v * r[src]` into an accumulator seed.
    fn term(&mut self, src: usize, v: T) -> Acc {
        if v == T::one() {
            Acc::Pos(src)
        } else if v == -T::one() {
            Acc::Negated(src)
        } else {
            let dst = self.fresh();
            self.ops.push(Op::MulConst {
                dst,
                src,
                constant: v,
            });
            Acc::Pos(dst)
        }
    }

    fn combine(&mut self, acc: Acc, rhs: Acc) -> Acc {
        let dst = self.fresh();
        match (acc, rhs) {
            (Acc::Pos(a), Acc::Pos(b)) => {
                self.ops.push(Op::Add { dst, a, b });
                Acc::Pos(dst)
            }
            (Acc::Pos(a), Acc::Negated(b)) => {
                self.ops.push(Op::Sub { dst, a, b });
                Acc::Pos(dst)
            }
            (Acc::Negated(a), Acc::Pos(b)) => {
                self.ops.push(Op::Sub { dst, a: b, b: a });
                Acc::Pos(dst)
            }
            (Acc::Negated(a), Acc::Negated(b)) => {
                self.ops.push(Op::Add { dst, a, b });
                Acc::Negated(dst)
            }
        }
    }

    fn settle(&mut self, acc: Acc) -> usize {
        match acc {
            Acc::Pos(r) => r,
            Acc::Negated(src) => {
                let dst = self.fresh();
                self.ops.push(Op::Neg { dst, src });
                dst
            }
        }
    }

    /// Emits one matrix application. Rows without entries yield `None`
    /// (they only occur in layers, whose empty rows contribute nothing).
    fn matrix(&mut self, m: &SparseMatrix<T>, inputs: &[usize]) -> Vec<Option<usize>> {
        m.row_lists()
            .iter()
            .map(|list| {
                let (&(c0, v0), rest) = list.split_first()?;
                let mut acc = self.term(inputs[c0], v0);
                for &(c, v) in rest {
                    let rhs = self.term(inputs[c], v);
                    acc = self.combine(acc, rhs);
                }
                Some(self.settle(acc))
            })
            .collect()
    }

    fn stage(&mut self, stage: &Stage<T>, inputs: &[usize]) -> Vec<usize> {
        let mut regs = inputs.to_vec();
        for f in stage.chain.iter().rev() {
            regs = self
                .matrix(f, &regs)
                .into_iter()
                .map(|r| r.expect("chain factors have no empty rows"))
                .collect();
        }
        if let Some(layer) = &stage.layer {
            for (r, extra) in self.matrix(layer, inputs).into_iter().enumerate() {
                if let Some(b) = extra {
                    let dst = self.fresh();
                    self.ops.push(Op::Add { dst, a: regs[r], b });
                    regs[r] = dst;
                }
            }
        }
        regs
    }
}

impl<T: Real> StraightLineProgram<T> {
    /// Compiles a factorization into a register program.
    pub fn emit(factorization: &LayeredFactorization<T>) -> Self {
        let n = factorization.n();
        let mut e = Emitter {
            ops: Vec::new(),
            next_reg: 0,
        };
        let mut regs: Vec<usize> = (0..n)
            .map(|input| {
                let dst = e.fresh();
                e.ops.push(Op::Load { dst, input });
                dst
            })
            .collect();
        for stage in factorization.stages() {
            regs = e.stage(stage, &regs);
        }
        Self {
            n_inputs: n,
            ops: e.ops,
            outputs: regs,
            n_registers: e.next_reg,
        }
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn ops(&self) -> &[Op<T>] {
        &self.ops
    }

    /// Registers holding the outputs, in output order.
    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn register_count(&self) -> usize {
        self.n_registers
    }

    /// Instruction tallies under the same conventions as
    /// [`LayeredFactorization::count_ops`]: `Add`/`Sub` are additions,
    /// `MulConst` is a multiplication, `Load` and `Neg` are free.
    pub fn counts(&self) -> OpCount {
        let mut count = OpCount::ZERO;
        for op in &self.ops {
            match op {
                Op::Add { .. } | Op::Sub { .. } => count.additions += 1,
                Op::MulConst { constant, .. } => {
                    debug_assert!(is_counted_multiplication(*constant));
                    count.multiplications += 1;
                    if is_small_rational(*constant) {
                        count.rational_multiplications += 1;
                    }
                }
                Op::Load { .. } | Op::Neg { .. } => {}
            }
        }
        count
    }

    /// Interprets the program.
    pub fn run(&self, input: &[T]) -> Result<Vec<T>> {
        if input.len() != self.n_inputs {
            return Err(HartleyError::DimensionMismatch {
                expected: self.n_inputs,
                got: input.len(),
            });
        }
        let mut regs = vec![T::zero(); self.n_registers];
        for op in &self.ops {
            match *op {
                Op::Load { dst, input: i } => regs[dst] = input[i],
                Op::Add { dst, a, b } => regs[dst] = regs[a] + regs[b],
                Op::Sub { dst, a, b } => regs[dst] = regs[a] - regs[b],
                Op::MulConst { dst, src, constant } => regs[dst] = constant * regs[src],
                Op::Neg { dst, src } => regs[dst] = -regs[src],
            }
        }
        Ok(self.outputs.iter().map(|&r| regs[r]).collect())
    }

    /// Human-readable listing, one instruction per line, ending with the
    /// output assignments.
    pub fn listing(&self) -> String {
        let mut text = String::new();
        for op in &self.ops {
            text.push_str(&op.to_string());
            text.push('\n');
        }
        for (i, r) in self.outputs.iter().enumerate() {
            text.push_str(&format!("out{i} = r{r}\n"));
        }
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(rows: usize, cols: usize, e: &[(usize, usize, f64)]) -> SparseMatrix<f64> {
        SparseMatrix::new(rows, cols, e.to_vec()).unwrap()
    }

    fn single_stage(m: SparseMatrix<f64>) -> LayeredFactorization<f64> {
        let n = m.cols();
        LayeredFactorization::new(n, vec![Stage::chain(vec![m])]).unwrap()
    }

    #[test]
    fn butterfly_compiles_to_one_add_and_one_sub() {
        let f = single_stage(sm(
            2,
            2,
            &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0)],
        ));
        let p = StraightLineProgram::emit(&f);
        assert_eq!(p.counts(), f.count_ops());
        assert_eq!(p.counts().additions, 2);
        assert_eq!(p.run(&[5.0, 3.0]).unwrap(), vec![8.0, 2.0]);
    }

    #[test]
    fn identity_rows_alias_without_instructions() {
        let f = single_stage(SparseMatrix::identity(3));
        let p = StraightLineProgram::emit(&f);
        // Only the three loads.
        assert_eq!(p.ops().len(), 3);
        assert_eq!(p.counts(), OpCount::ZERO);
        assert_eq!(p.run(&[7.0, -2.0, 0.5]).unwrap(), vec![7.0, -2.0, 0.5]);
    }

    #[test]
    fn negation_is_free() {
        let f = single_stage(sm(1, 1, &[(0, 0, -1.0)]));
        let p = StraightLineProgram::emit(&f);
        assert_eq!(p.counts(), OpCount::ZERO);
        assert!(p.ops().iter().any(|op| matches!(op, Op::Neg { .. })));
        assert_eq!(p.run(&[4.0]).unwrap(), vec![-4.0]);
    }

    #[test]
    fn leading_negative_term_becomes_a_swapped_subtraction() {
        let f = single_stage(sm(2, 2, &[(0, 0, -1.0), (0, 1, 1.0), (1, 1, 1.0)]));
        let p = StraightLineProgram::emit(&f);
        assert_eq!(p.counts().additions, 1);
        assert!(!p.ops().iter().any(|op| matches!(op, Op::Neg { .. })));
        assert_eq!(p.run(&[3.0, 10.0]).unwrap(), vec![7.0, 10.0]);
    }

    #[test]
    fn all_negative_row_adds_then_negates() {
        let f = single_stage(sm(2, 2, &[(0, 0, -1.0), (0, 1, -1.0), (1, 0, 1.0)]));
        let p = StraightLineProgram::emit(&f);
        assert_eq!(p.counts().additions, 1);
        assert_eq!(p.counts().multiplications, 0);
        assert_eq!(p.run(&[2.0, 3.0]).unwrap(), vec![-5.0, 2.0]);
    }

    #[test]
    fn constants_become_mulconst_and_match_matrix_counts() {
        let chain = sm(2, 2, &[(0, 0, -0.25), (1, 0, 1.0), (1, 1, 1.0)]);
        let layer = sm(2, 2, &[(0, 1, 1.0)]);
        let f = LayeredFactorization::new(2, vec![Stage::with_layer(vec![chain], layer)])
            .unwrap();
        let p = StraightLineProgram::emit(&f);
        assert_eq!(p.counts(), f.count_ops());
        assert_eq!(p.counts().multiplications, 1);
        assert_eq!(p.counts().rational_multiplications, 1);
        // -0.25 * 4 + 8 = 7; 4 + 8 = 12.
        assert_eq!(p.run(&[4.0, 8.0]).unwrap(), vec![7.0, 12.0]);
    }

    #[test]
    fn listing_mentions_every_output() {
        let f = single_stage(SparseMatrix::identity(2));
        let text = StraightLineProgram::emit(&f).listing();
        assert!(text.contains("out0"));
        assert!(text.contains("out1"));
    }

    #[test]
    fn run_checks_input_length() {
        let f = single_stage(SparseMatrix::identity(2));
        let p = StraightLineProgram::emit(&f);
        assert!(matches!(
            p.run(&[1.0]),
            Err(HartleyError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }
}
