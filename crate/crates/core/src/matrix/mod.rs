//! Dense matrices over the scalar tower.

pub mod elim;
pub mod inertia;
pub mod subspace;

use std::fmt;
use std::ops::{Deref, Index};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::scalar::{Field, StarField};

pub use elim::{determinant, inverse, kernel_basis, rank, rref, stacked_kernel, Echelon};
pub use inertia::{characteristic_polynomial, signature, Signature};
pub use subspace::{subspace_equal, KernelBasis};

/// A dense row-major matrix over a single field; also serves as the
/// general rectangular matrix type.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    ctx: F::Ctx,
}

/// Alias used where no structure beyond "rectangular" is assumed.
pub type RectMatrix<F> = Matrix<F>;

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>, ctx: F::Ctx) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data, ctx })
    }

    pub fn from_rows(rows: Vec<Vec<F>>, ctx: F::Ctx) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect(), ctx)
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: F::Ctx, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data, ctx }
    }

    pub fn zeros(rows: usize, cols: usize, ctx: F::Ctx) -> Self {
        let z = F::zero(&ctx);
        Matrix { rows, cols, data: vec![z; rows * cols], ctx }
    }

    /// The all-ones matrix.
    pub fn ones(rows: usize, cols: usize, ctx: F::Ctx) -> Self {
        let o = F::one(&ctx);
        Matrix { rows, cols, data: vec![o; rows * cols], ctx }
    }

    pub fn identity(n: usize, ctx: F::Ctx) -> Self {
        let (z, o) = (F::zero(&ctx), F::one(&ctx));
        Matrix::from_fn(n, n, ctx, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn zero(&self) -> F {
        F::zero(&self.ctx)
    }

    pub fn one(&self) -> F {
        F::one(&self.ctx)
    }

    pub fn map<G: Field>(&self, ctx: G::Ctx, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), ctx }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, self.ctx.clone(), |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, self.ctx.clone(), |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, self.ctx.clone(), |i, j| {
            let mut acc = self.zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero(&self.ctx) {
                    acc = acc + a.clone() * rhs.get(k, j).clone();
                }
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Result<Self> {
        self.zip(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Result<Self> {
        self.zip(rhs, |a, b| a.clone() - b.clone())
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard_product(&self, rhs: &Matrix<F>) -> Result<Self> {
        self.zip(rhs, |a, b| a.clone() * b.clone())
    }

    fn zip(&self, rhs: &Matrix<F>, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} and {}x{} differ in shape",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() })
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(self.ctx.clone(), |a| a.clone() * c.clone())
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect()
    }

    /// Entrywise `n`-th power; `n = 0` yields the all-ones matrix.
    pub fn hadamard_power(&self, n: u32) -> Self {
        if n == 0 {
            return Matrix::ones(self.rows, self.cols, self.ctx.clone());
        }
        self.map(self.ctx.clone(), |a| a.pow(n, &self.ctx))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), self.ctx.clone(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &all)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[Matrix<F>]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Shape("nothing to stack".into()))?;
        let cols = first.cols;
        if let Some(bad) = parts.iter().find(|m| m.cols != cols) {
            return Err(Error::Shape(format!("column counts {cols} and {} differ", bad.cols)));
        }
        let data = parts.iter().flat_map(|m| m.data.iter().cloned()).collect();
        let rows = parts.iter().map(|m| m.rows).sum();
        Ok(Matrix { rows, cols, data, ctx: first.ctx.clone() })
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(parts: &[Matrix<F>], ctx: F::Ctx) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols, ctx);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(r0 + i, c0 + j, m.get(i, j).clone());
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Equality in the field, entry by entry.
    pub fn eq_in(&self, other: &Matrix<F>) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.eq_in(b, &self.ctx))
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|a| a.is_zero(&self.ctx))
    }

    /// Largest entry modulus as a float; used for float tolerance scaling.
    pub fn max_pivot_score(&self) -> f64 {
        self.data.iter().map(|a| a.pivot_score(&self.ctx)).fold(0.0, f64::max)
    }
}

/// Serialized as a list of rows.
impl<F: Field> Serialize for Matrix<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<F: Field> Serialize for HermitianMatrix<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        self.get(i, j)
    }
}

impl<F: Field + fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", padded.join("  "))?;
        }
        Ok(())
    }
}

/// A square matrix equal to its conjugate transpose.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix<F: Field>(Matrix<F>);

impl<F: Field> HermitianMatrix<F> {
    /// Validates Hermitian symmetry. Exact input must be bit-exactly
    /// symmetric; float input within tolerance is accepted and symmetrized.
    pub fn new(m: Matrix<F>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!("{}x{} is not square", m.rows, m.cols)));
        }
        if m.rows == 0 {
            return Err(Error::Shape("empty matrix".into()));
        }
        let n = m.rows;
        for i in 0..n {
            for j in i..n {
                if !m.get(i, j).eq_in(&m.get(j, i).conj(), &m.ctx) {
                    return Err(Error::Symmetry { row: i, col: j });
                }
            }
        }
        if F::EXACT {
            return Ok(HermitianMatrix(m));
        }
        let half = F::one(&m.ctx) / F::from_i64(2, &m.ctx);
        let sym = Matrix::from_fn(n, n, m.ctx.clone(), |i, j| {
            (m.get(i, j).clone() + m.get(j, i).conj()) * half.clone()
        });
        Ok(HermitianMatrix(sym))
    }

    pub fn from_rows(rows: Vec<Vec<F>>, ctx: F::Ctx) -> Result<Self> {
        HermitianMatrix::new(Matrix::from_rows(rows, ctx)?)
    }

    pub fn identity(n: usize, ctx: F::Ctx) -> Self {
        HermitianMatrix(Matrix::identity(n, ctx))
    }

    pub fn ones(n: usize, ctx: F::Ctx) -> Self {
        HermitianMatrix(Matrix::ones(n, n, ctx))
    }

    pub fn zeros(n: usize, ctx: F::Ctx) -> Self {
        HermitianMatrix(Matrix::zeros(n, n, ctx))
    }

    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &Matrix<F> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.0
    }

    /// Entrywise power; stays Hermitian because `conj(a^n) = conj(a)^n`.
    pub fn hadamard_power(&self, n: u32) -> Self {
        HermitianMatrix(self.0.hadamard_power(n))
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        HermitianMatrix(self.0.submatrix(idx, idx))
    }

    pub fn direct_sum(parts: &[HermitianMatrix<F>], ctx: F::Ctx) -> Self {
        let mats: Vec<Matrix<F>> = parts.iter().map(|h| h.0.clone()).collect();
        HermitianMatrix(Matrix::direct_sum(&mats, ctx))
    }

    /// `A[idx, idx]` for an arbitrary index map, which may repeat indices.
    /// Duplicating an index keeps every principal minor either a minor of
    /// the original or zero.
    pub fn inflate(&self, idx: &[usize]) -> Self {
        self.principal_submatrix(idx)
    }

    pub fn map<G: Field>(&self, ctx: G::Ctx, f: impl Fn(&F) -> G) -> Result<HermitianMatrix<G>> {
        HermitianMatrix::new(self.0.map(ctx, f))
    }
}

impl<F: StarField> HermitianMatrix<F> {
    /// Determinant of the principal submatrix on `idx` (a real value).
    pub fn principal_minor(&self, idx: &IndexSet) -> Result<F> {
        principal_minor(self, idx)
    }
}

impl<F: Field> Deref for HermitianMatrix<F> {
    type Target = Matrix<F>;
    fn deref(&self) -> &Matrix<F> {
        &self.0
    }
}

impl<F: Field + fmt::Display> fmt::Display for HermitianMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Determinant of `A[I, I]` by fraction-free elimination; sizes one to
/// three use closed forms.
pub fn principal_minor<F: StarField>(a: &HermitianMatrix<F>, idx: &IndexSet) -> Result<F> {
    if idx.is_empty() {
        return Err(Error::InvalidIndexSet("empty index set".into()));
    }
    if let Some(bad) = idx.iter().find(|&i| i >= a.n()) {
        return Err(Error::InvalidIndexSet(format!("index {} exceeds dimension {}", bad + 1, a.n())));
    }
    let s = idx.as_slice();
    let g = |i: usize, j: usize| a.get(s[i], s[j]).clone();
    Ok(match s.len() {
        1 => g(0, 0),
        2 => g(0, 0) * g(1, 1) - g(0, 1).modulus_squared(),
        3 => {
            let cyc = g(0, 1) * g(1, 2) * g(2, 0);
            g(0, 0) * g(1, 1) * g(2, 2) + cyc.clone() + cyc.conj()
                - g(0, 0) * g(1, 2).modulus_squared()
                - g(1, 1) * g(0, 2).modulus_squared()
                - g(2, 2) * g(0, 1).modulus_squared()
        }
        _ => determinant(&a.submatrix(s, s)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ComplexFloat, GaussianRational as Q, Rational, Tolerance};

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn herm(rows: &[&[&str]]) -> HermitianMatrix<Q> {
        HermitianMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect(), ()).unwrap()
    }

    #[test]
    fn hadamard_power_zero_is_all_ones() {
        let a = herm(&[&["0", "i", "2"], &["-i", "3", "0"], &["2", "0", "-1"]]);
        assert_eq!(a.hadamard_power(0), HermitianMatrix::ones(3, ()));
    }

    #[test]
    fn hadamard_square_of_small_example() {
        let a = herm(&[&["2", "-2i"], &["2i", "2"]]);
        assert_eq!(a.hadamard_power(2), herm(&[&["4", "-4"], &["-4", "4"]]));
    }

    #[test]
    fn hadamard_powers_compose() {
        let a = herm(&[&["1/2", "1+i"], &["1-i", "-3"]]);
        for m in 0..4 {
            for n in 0..4 {
                let lhs = a.hadamard_power(m + n);
                let rhs = a.hadamard_power(m).hadamard_product(&a.hadamard_power(n)).unwrap();
                assert_eq!(lhs.as_matrix(), &rhs);
            }
        }
    }

    #[test]
    fn exact_asymmetry_is_rejected() {
        let m = Matrix::from_rows(vec![vec![q("1"), q("i")], vec![q("i"), q("1")]], ()).unwrap();
        assert_eq!(HermitianMatrix::new(m), Err(Error::Symmetry { row: 0, col: 1 }));
        let m = Matrix::from_rows(vec![vec![q("i")]], ()).unwrap();
        assert!(HermitianMatrix::new(m).is_err());
    }

    #[test]
    fn float_input_is_symmetrized() {
        let t = Tolerance::new(1e-6);
        let m = Matrix::from_rows(
            vec![
                vec![ComplexFloat::new(1.0, 1e-8), ComplexFloat::new(2.0, 1.0)],
                vec![ComplexFloat::new(2.0 + 1e-8, -1.0), ComplexFloat::new(0.5, 0.0)],
            ],
            t,
        )
        .unwrap();
        let h = HermitianMatrix::new(m).unwrap();
        assert_eq!(h.get(0, 0).im, 0.0);
        assert_eq!(*h.get(0, 1), h.get(1, 0).conj());
    }

    #[test]
    fn principal_minor_examples() {
        // |a| = |b| = 1 gives determinant -1.
        let c = herm(&[&["1", "i", "0"], &["-i", "1", "3/5+4/5i"], &["0", "3/5-4/5i", "1"]]);
        assert_eq!(c.principal_minor(&IndexSet::full(3)).unwrap(), q("-1"));
        assert_eq!(c.principal_minor(&IndexSet::new(vec![1])).unwrap(), q("1"));
        let w = herm(&[&["1", "1", "-1"], &["1", "1", "1"], &["-1", "1", "1"]]);
        assert_eq!(w.principal_minor(&IndexSet::full(3)).unwrap(), q("-4"));
        assert!(matches!(w.principal_minor(&IndexSet::default()), Err(Error::InvalidIndexSet(_))));
    }

    #[test]
    fn closed_forms_agree_with_elimination() {
        let a = herm(&[
            &["2", "1-i", "1/2", "3i"],
            &["1+i", "-1", "2", "0"],
            &["1/2", "2", "5", "-i"],
            &["-3i", "0", "i", "4/3"],
        ]);
        for k in 1..=3 {
            for s in crate::index_set::Combinations::new(4, k) {
                let set = IndexSet::new(s.clone());
                assert_eq!(a.principal_minor(&set).unwrap(), determinant(&a.submatrix(&s, &s)));
            }
        }
    }

    #[test]
    fn rational_matrices_work_too() {
        let a = HermitianMatrix::from_rows(
            vec![vec![Rational::integer(2), Rational::integer(1)], vec![Rational::integer(1), Rational::integer(2)]],
            (),
        )
        .unwrap();
        assert_eq!(a.principal_minor(&IndexSet::full(2)).unwrap(), Rational::integer(3));
    }
}
