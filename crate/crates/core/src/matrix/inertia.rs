//! Inertia of Hermitian matrices.
//!
//! Over exact domains the eigenvalues are not representable, so the counts
//! are read off the characteristic polynomial. Its roots are all real, and
//! for a real-rooted polynomial Descartes' rule of signs is exact: after
//! stripping the factor `x^n0` the number of sign changes in the coefficient
//! sequence is the number of positive roots.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::HermitianMatrix;
use crate::scalar::StarField;

/// Eigenvalue sign counts `(n+, n0, n-)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Signature {
    pub fn new(n_plus: usize, n_zero: usize, n_minus: usize) -> Self {
        Signature { n_plus, n_zero, n_minus }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    pub fn is_psd(&self) -> bool {
        self.n_minus == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_zero, self.n_minus)
    }
}

/// Coefficients of `det(xI - A)`, constant term first, by the
/// Faddeev-LeVerrier recurrence. Needs characteristic zero.
pub fn characteristic_polynomial<F: StarField>(a: &HermitianMatrix<F>) -> Vec<F> {
    let n = a.n();
    let ctx = a.ctx().clone();
    let mut coeffs = vec![F::zero(&ctx); n + 1];
    coeffs[n] = F::one(&ctx);
    let mut m = super::Matrix::zeros(n, n, ctx.clone());
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.mul(&m).expect("square");
        for i in 0..n {
            let v = next.get(i, i).clone() + coeffs[n - k + 1].clone();
            next.set(i, i, v);
        }
        let am = a.mul(&next).expect("square");
        let trace = (0..n).fold(F::zero(&ctx), |acc, i| acc + am.get(i, i).clone());
        coeffs[n - k] = -trace / F::from_i64(k as i64, &ctx);
        m = next;
    }
    coeffs
}

/// Inertia from the characteristic polynomial; the default for exact fields.
pub fn charpoly_inertia<F: StarField>(a: &HermitianMatrix<F>) -> Signature {
    let n = a.n();
    let ctx = a.ctx();
    let coeffs = characteristic_polynomial(a);
    let n_zero = coeffs.iter().take_while(|c| c.real_sign(ctx) == Ordering::Equal).count().min(n);
    let mut changes = 0;
    let mut last = Ordering::Equal;
    for c in &coeffs[n_zero..] {
        let s = c.real_sign(ctx);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    Signature { n_plus: changes, n_zero, n_minus: n - n_zero - changes }
}

/// Inertia `(n+, n0, n-)` of a Hermitian matrix.
pub fn signature<F: StarField>(a: &HermitianMatrix<F>) -> Signature {
    F::inertia(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{kernel_basis, Matrix};
    use crate::scalar::{ComplexFloat, GaussianRational as Q, Rational, Tolerance};

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    /// Independent oracle: diagonalize by Hermitian congruence and count
    /// the signs of the diagonal (Sylvester's law of inertia).
    fn congruence_inertia(a: &HermitianMatrix<Q>) -> Signature {
        let mut m = a.as_matrix().clone();
        let mut diag = Vec::new();
        while m.rows() > 0 {
            let n = m.rows();
            let zero = Q::default();
            if let Some(p) = (0..n).find(|&i| *m.get(i, i) != zero) {
                let d = m.get(p, p).clone();
                diag.push(d.re.clone());
                // Schur complement on the remaining indices.
                let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
                m = Matrix::from_fn(n - 1, n - 1, (), |i, j| {
                    let (r, c) = (rest[i], rest[j]);
                    m.get(r, c).clone() - m.get(r, p).clone() * m.get(p, c).clone() / d.clone()
                });
                continue;
            }
            let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| *m.get(i, j) != zero)
            else {
                diag.extend(std::iter::repeat_n(Rational::zero(), n));
                break;
            };
            // Zero diagonal: row_i += t row_j with t = a_ij gives
            // a new diagonal entry 2 |a_ij|^2 > 0.
            let t = m.get(i, j).clone();
            let mut e = Matrix::<Q>::identity(n, ());
            e.set(i, j, t);
            m = e.mul(&m).unwrap().mul(&e.conj_transpose()).unwrap();
        }
        let pos = diag.iter().filter(|d| d.is_positive()).count();
        let neg = diag.iter().filter(|d| d.is_negative()).count();
        Signature::new(pos, diag.len() - pos - neg, neg)
    }

    fn herm(rows: &[&[&str]]) -> HermitianMatrix<Q> {
        HermitianMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect(), ()).unwrap()
    }

    #[test]
    fn shifted_all_ones() {
        // 3/2 I - J_3 has eigenvalues 3/2, 3/2, -3/2.
        let n = 3;
        let a = HermitianMatrix::new(Matrix::from_fn(n, n, (), |i, j| {
            if i == j {
                q("1/2")
            } else {
                q("-1")
            }
        }))
        .unwrap();
        assert_eq!(signature(&a), Signature::new(2, 0, 1));
    }

    #[test]
    fn identity_plus_zero_block() {
        let a = herm(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]]);
        assert_eq!(signature(&a), Signature::new(2, 1, 0));
    }

    #[test]
    fn all_ones_has_rank_one() {
        for n in 1..7 {
            assert_eq!(signature(&HermitianMatrix::<Q>::ones(n, ())), Signature::new(1, n - 1, 0));
        }
    }

    #[test]
    fn characteristic_polynomial_of_small_matrix() {
        let a = herm(&[&["2", "i"], &["-i", "2"]]);
        // x^2 - 4x + 3
        assert_eq!(characteristic_polynomial(&a), vec![q("3"), q("-4"), q("1")]);
    }

    #[test]
    fn matches_congruence_oracle_and_nullity() {
        let cases = [
            herm(&[&["0", "1"], &["1", "0"]]),
            herm(&[&["0", "i", "0"], &["-i", "0", "2"], &["0", "2", "0"]]),
            herm(&[&["1", "1", "-1"], &["1", "1", "1"], &["-1", "1", "1"]]),
            herm(&[&["2", "2", "1", "-2i"], &["2", "2", "1", "-2i"], &["1", "1", "1", "-i"], &["2i", "2i", "i", "2"]]),
            herm(&[&["1", "2", "0"], &["2", "8", "0"], &["0", "0", "1"]]),
            herm(&[&["-1/2", "1+i", "3"], &["1-i", "0", "-2i"], &["3", "2i", "5/7"]]),
        ];
        for a in &cases {
            let sig = signature(a);
            assert_eq!(sig, congruence_inertia(a), "{a:?}");
            assert_eq!(sig.n_zero, kernel_basis(a.as_matrix()).dim());
        }
    }

    #[test]
    fn float_eigensolver_agrees() {
        let a = herm(&[&["-1/2", "1+i", "3"], &["1-i", "0", "-2i"], &["3", "2i", "5/7"]]);
        let f = a.map(Tolerance::default(), |g| ComplexFloat::from(g)).unwrap();
        assert_eq!(signature(&f), signature(&a));
    }
}
