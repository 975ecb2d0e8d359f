//! Simultaneous kernels of Hadamard powers.
//!
//! For every matrix, `ker A^{o0} ∩ ker A^{o1} ∩ ...` stabilizes after `N`
//! powers. For 3-PMP matrices it equals the blockwise sum-zero space of the
//! partition into identical rows and columns; without that hypothesis it can
//! be strictly larger.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{kernel_basis, stacked_kernel, subspace_equal, KernelBasis, Matrix};
use crate::pmp::is_k_pmp;
use crate::scalar::{Field, Rational, StarField};
use crate::strata::{identical_index_partition, Partition};
use crate::HermitianMatrix;

/// `J_pi`, the direct sum of all-ones blocks along `pi` (in place, without
/// permuting indices).
pub fn block_ones_matrix<F: Field>(pi: &Partition, ctx: F::Ctx) -> Matrix<F> {
    let labels = pi.labels();
    let (zero, one) = (F::zero(&ctx), F::one(&ctx));
    Matrix::from_fn(pi.n(), pi.n(), ctx, |i, j| if labels[i] == labels[j] { one.clone() } else { zero.clone() })
}

/// Basis `e_min(I) - e_i` of `ker J_pi`, over every block `I` and every
/// non-minimal `i` in it.
pub fn ker_block_ones<F: Field>(pi: &Partition, ctx: F::Ctx) -> KernelBasis<F> {
    let n = pi.n();
    let (zero, one) = (F::zero(&ctx), F::one(&ctx));
    let vectors = pi
        .blocks()
        .iter()
        .flat_map(|b| {
            let (head, rest) = (b[0], &b[1..]);
            let (zero, one) = (zero.clone(), one.clone());
            rest.iter().map(move |&i| {
                let mut v = vec![zero.clone(); n];
                v[head] = one.clone();
                v[i] = -one.clone();
                v
            })
        })
        .collect();
    KernelBasis::new(n, vectors, ctx).expect("lengths match")
}

/// `⋂_{n < count} ker M^{on}`.
pub fn hadamard_power_kernel<F: Field>(m: &Matrix<F>, count: usize) -> KernelBasis<F> {
    if count == 0 {
        return KernelBasis::new(m.cols(), (0..m.cols()).map(|i| unit(m, i)).collect(), m.ctx().clone())
            .expect("lengths match");
    }
    let powers: Vec<Matrix<F>> = (0..count as u32).map(|n| m.hadamard_power(n)).collect();
    stacked_kernel(&powers).expect("equal column counts")
}

fn unit<F: Field>(m: &Matrix<F>, i: usize) -> Vec<F> {
    let mut v = vec![m.zero(); m.cols()];
    v[i] = m.one();
    v
}

/// The simultaneous kernel, truncated at `n < N` powers.
pub fn simultaneous_kernel<F: Field>(a: &Matrix<F>) -> KernelBasis<F> {
    hadamard_power_kernel(a, a.cols())
}

/// Simultaneous kernel of the block-diagonal truncations
/// `⊕_j A^{on}[I'_j, I'_j]`, for a partition `pi'` that the identical-index
/// partition of `A` refines.
pub fn simultaneous_kernel_blockdiag<F: Field>(a: &Matrix<F>, coarse: &Partition) -> Result<KernelBasis<F>> {
    if coarse.n() != a.rows() {
        return Err(Error::Shape(format!("partition of {} indices for a {}x{} matrix", coarse.n(), a.rows(), a.cols())));
    }
    if !identical_index_partition(a).is_refinement(coarse)? {
        return Err(Error::RefinementHypothesisFailed);
    }
    let labels = coarse.labels();
    let n = a.rows();
    let zero = a.zero();
    let powers: Vec<Matrix<F>> = (0..n as u32)
        .map(|k| {
            let p = a.hadamard_power(k);
            Matrix::from_fn(n, n, a.ctx().clone(), |i, j| {
                if labels[i] == labels[j] {
                    p.get(i, j).clone()
                } else {
                    zero.clone()
                }
            })
        })
        .collect();
    stacked_kernel(&powers)
}

/// `ker (sum_j c_j A^{oj})` for positive coefficients `c_0, .., c_{N-1}`.
pub fn positive_combination_kernel<F: StarField>(a: &Matrix<F>, c: &[Rational]) -> Result<KernelBasis<F>> {
    let n = a.cols();
    if c.len() != n {
        return Err(Error::InvalidCoefficients(format!("{} coefficients for N = {n}", c.len())));
    }
    if let Some(bad) = c.iter().position(|x| !x.is_positive()) {
        return Err(Error::InvalidCoefficients(format!("c_{bad} = {} is not positive", c[bad])));
    }
    let ctx = a.ctx().clone();
    let mut sum = Matrix::zeros(a.rows(), n, ctx.clone());
    for (j, cj) in c.iter().enumerate() {
        sum = sum.add(&a.hadamard_power(j as u32).scale(&F::from_rational(cj, &ctx)))?;
    }
    Ok(kernel_basis(&sum))
}

/// Simultaneous kernel of the Hadamard powers of a rectangular matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct RectangularKernel<F: Field> {
    /// Columns grouped by identical column vectors: the coarsest partition
    /// on which every row is constant blockwise.
    pub column_partition: Partition,
    /// Blockwise sum-zero space of `column_partition`.
    pub block_kernel: KernelBasis<F>,
    /// The simultaneous kernel, as the intersection over rows `u` of the
    /// sum-zero spaces of the value classes of `u`.
    pub kernel: KernelBasis<F>,
    /// Whether the two spaces coincide.
    pub block_kernel_exact: bool,
}

/// Row-by-row reduction: for a single row `u` the powers `u^{on}` are a
/// Vandermonde system on the distinct values of `u`, so `v` lies in every
/// kernel iff `v` sums to zero over each class of equal entries. The
/// simultaneous kernel of `M` is the intersection of these row spaces.
///
/// The blockwise space of the common column partition is always contained
/// in it, and equals it for a single row, but can be smaller once rows
/// induce different partitions.
pub fn rectangular_simultaneous_kernel<F: Field>(m: &Matrix<F>) -> RectangularKernel<F> {
    let ctx = m.ctx().clone();
    let cols: Vec<Vec<F>> = (0..m.cols()).map(|j| m.column(j)).collect();
    let column_partition = Partition::from_labels(&InField::wrap(&cols, &ctx));
    let block_kernel = ker_block_ones(&column_partition, ctx.clone());

    let (zero, one) = (F::zero(&ctx), F::one(&ctx));
    let mut indicators = Vec::new();
    for i in 0..m.rows() {
        let classes = Partition::from_labels(&InField::wrap_scalars(m.row(i), &ctx));
        for class in classes.blocks() {
            let mut row = vec![zero.clone(); m.cols()];
            for &j in class {
                row[j] = one.clone();
            }
            indicators.push(row);
        }
    }
    let kernel = if indicators.is_empty() {
        hadamard_power_kernel(m, 0)
    } else {
        kernel_basis(&Matrix::from_rows(indicators, ctx).expect("rectangular"))
    };
    let block_kernel_exact = subspace_equal(&block_kernel, &kernel).expect("same ambient");
    RectangularKernel { column_partition, block_kernel, kernel, block_kernel_exact }
}

/// Field equality as `PartialEq`, for grouping by value.
struct InField<'a, T: ?Sized, C> {
    value: &'a T,
    ctx: &'a C,
}

impl<'a, F: Field> InField<'a, [F], F::Ctx> {
    fn wrap(cols: &'a [Vec<F>], ctx: &'a F::Ctx) -> Vec<Self> {
        cols.iter().map(|c| InField { value: c.as_slice(), ctx }).collect()
    }
}

impl<'a, F: Field> InField<'a, F, F::Ctx> {
    fn wrap_scalars(row: &'a [F], ctx: &'a F::Ctx) -> Vec<Self> {
        row.iter().map(|value| InField { value, ctx }).collect()
    }
}

impl<F: Field> PartialEq for InField<'_, [F], F::Ctx> {
    fn eq(&self, other: &Self) -> bool {
        self.value.len() == other.value.len() && self.value.iter().zip(other.value).all(|(a, b)| a.eq_in(b, self.ctx))
    }
}

impl<F: Field> PartialEq for InField<'_, F, F::Ctx> {
    fn eq(&self, other: &Self) -> bool {
        self.value.eq_in(other.value, self.ctx)
    }
}

/// Outcome of the distinct-diagonal test.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct DistinctDiagonal<F: Field> {
    /// `a_ii != a_ij` for all `i < j`.
    pub hypothesis: bool,
    pub kernel: KernelBasis<F>,
}

/// If `a_ii != a_ij` whenever `i < j`, the truncated simultaneous kernel is
/// zero over any field: row `i` has `a_ii` as a value of its own, which
/// forces `v_i = 0` once `v_1 .. v_{i-1}` vanish.
///
/// Returns `VerificationFailed` if the hypothesis holds and the kernel is
/// nonzero anyway.
pub fn distinct_diagonal_check<F: Field>(a: &Matrix<F>) -> Result<DistinctDiagonal<F>> {
    if !a.is_square() {
        return Err(Error::Shape(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    let n = a.rows();
    let hypothesis = (0..n).all(|i| (i + 1..n).all(|j| !a.get(i, i).eq_in(a.get(i, j), a.ctx())));
    let kernel = simultaneous_kernel(a);
    if hypothesis && !kernel.is_zero_space() {
        return Err(Error::VerificationFailed(format!(
            "distinct diagonal entries but a kernel of dimension {}",
            kernel.dim()
        )));
    }
    Ok(DistinctDiagonal { hypothesis, kernel })
}

/// The four descriptions of the simultaneous kernel and their pairwise
/// comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct T3pmpReport<F: Field> {
    pub three_pmp: bool,
    /// Identical-row-and-column partition `pi`.
    pub partition: Partition,
    /// `pi` with its first two blocks merged (or `pi` itself if it has one
    /// block), used for the block-diagonal space.
    pub coarsening: Partition,
    /// `n < N` powers.
    pub truncated: KernelBasis<F>,
    /// `n < 2N` powers, standing in for all `n`.
    pub extended: KernelBasis<F>,
    pub block_diagonal: KernelBasis<F>,
    pub block_ones: KernelBasis<F>,
    pub equal: [[bool; 4]; 4],
}

impl<F: Field> T3pmpReport<F> {
    pub fn spaces(&self) -> [&KernelBasis<F>; 4] {
        [&self.truncated, &self.extended, &self.block_diagonal, &self.block_ones]
    }

    pub fn all_equal(&self) -> bool {
        self.equal.iter().flatten().all(|&b| b)
    }
}

/// Computes all four kernel descriptions; none of them assumes 3-PMP.
pub fn verify_t3pmp<F: StarField>(a: &HermitianMatrix<F>) -> T3pmpReport<F> {
    let n = a.n();
    let three_pmp = is_k_pmp(a, n.min(3)).expect("order in range").holds;
    let partition = identical_index_partition(a.as_matrix());
    let coarsening = if partition.len() >= 2 { partition.merge_blocks(0, 1) } else { partition.clone() };
    let truncated = simultaneous_kernel(a.as_matrix());
    let extended = hadamard_power_kernel(a.as_matrix(), 2 * n);
    let block_diagonal = simultaneous_kernel_blockdiag(a.as_matrix(), &coarsening).expect("pi refines its coarsening");
    let block_ones = ker_block_ones(&partition, a.ctx().clone());
    let spaces = [&truncated, &extended, &block_diagonal, &block_ones];
    let mut equal = [[false; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            equal[i][j] = subspace_equal(spaces[i], spaces[j]).expect("same ambient");
        }
    }
    T3pmpReport { three_pmp, partition, coarsening, truncated, extended, block_diagonal, block_ones, equal }
}
