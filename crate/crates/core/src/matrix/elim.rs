//! Gaussian elimination: determinants, echelon forms, rank and kernels.

use super::{KernelBasis, Matrix};
use crate::error::Result;
use crate::scalar::Field;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

fn best_pivot<F: Field>(m: &Matrix<F>, col: usize, from: usize) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for r in from..m.rows() {
        let score = m.get(r, col).pivot_score(m.ctx());
        if score > 0.0 && best.is_none_or(|(_, s)| score > s) {
            best = Some((r, score));
            if F::EXACT {
                break;
            }
        }
    }
    best.map(|(r, _)| r)
}

fn swap_rows<F: Field>(m: &mut Matrix<F>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m.get(a, j).clone();
        let y = m.get(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

/// Determinant by Bareiss fraction-free elimination.
///
/// Every intermediate entry is a minor of the input, which keeps exact
/// rational growth polynomial. Panics on non-square input.
pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return m.one();
    }
    let ctx = m.ctx().clone();
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = F::one(&ctx);
    for k in 0..n - 1 {
        let Some(p) = best_pivot(&a, k, k) else {
            return F::zero(&ctx);
        };
        if p != k {
            swap_rows(&mut a, p, k);
            negate = !negate;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let lead = a.get(i, k).clone();
            for j in k + 1..n {
                let v = (a.get(i, j).clone() * pivot.clone() - lead.clone() * a.get(k, j).clone()) / prev.clone();
                a.set(i, j, v);
            }
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Gauss-Jordan reduction to reduced row echelon form.
pub fn rref<F: Field>(m: &Matrix<F>) -> Echelon<F> {
    let ctx = m.ctx().clone();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = best_pivot(&a, col, row) else {
            continue;
        };
        swap_rows(&mut a, p, row);
        let inv = a.get(row, col).inv(&ctx).expect("pivot is nonzero");
        for j in col..a.cols() {
            let v = a.get(row, j).clone() * inv.clone();
            a.set(row, j, v);
        }
        a.set(row, col, F::one(&ctx));
        for r in 0..a.rows() {
            if r == row || a.get(r, col).is_zero(&ctx) {
                continue;
            }
            let factor = a.get(r, col).clone();
            for j in col..a.cols() {
                let v = a.get(r, j).clone() - factor.clone() * a.get(row, j).clone();
                a.set(r, j, v);
            }
            // Exact zero, even for floats.
            a.set(r, col, F::zero(&ctx));
        }
        pivots.push(col);
        row += 1;
    }
    Echelon { reduced: a, pivots }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).pivots.len()
}

/// Canonical kernel basis: one vector per free column `f` with a one in
/// position `f`, zeros in the other free positions and the negated reduced
/// entries in pivot positions. The result depends only on the kernel.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> KernelBasis<F> {
    let ctx = m.ctx().clone();
    let n = m.cols();
    let Echelon { reduced, pivots } = rref(m);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![F::zero(&ctx); n];
            v[f] = F::one(&ctx);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(r, f).clone();
            }
            v
        })
        .collect();
    KernelBasis::from_independent(n, vectors, ctx)
}

/// Intersection of kernels, computed as the kernel of the stacked matrix.
pub fn stacked_kernel<F: Field>(parts: &[Matrix<F>]) -> Result<KernelBasis<F>> {
    Ok(kernel_basis(&Matrix::vstack(parts)?))
}

/// Inverse by Gauss-Jordan; `None` when singular or non-square.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let ctx = m.ctx().clone();
    let id = Matrix::<F>::identity(n, ctx.clone());
    let aug = Matrix::from_fn(n, 2 * n, ctx.clone(), |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else {
            id.get(i, j - n).clone()
        }
    });
    let Echelon { reduced, pivots } = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, ctx, |i, j| reduced.get(i, n + j).clone()))
}
