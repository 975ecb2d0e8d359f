//! Principal minor positivity (k-PMP) and the principal submatrix rank
//! property (k-PSRP).
//!
//! Minors are visited by size, then lexicographically within a size, so
//! witnesses are deterministic. Over floats a minor within tolerance of zero
//! counts as non-negative.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_set::{Combinations, IndexSet};
use crate::matrix::{principal_minor, rank, signature, HermitianMatrix, Signature};
use crate::scalar::StarField;

/// Outcome of a k-PMP or k-PSRP test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub k: usize,
    pub holds: bool,
    /// First violating index set, if any.
    pub witness: Option<IndexSet>,
}

fn check_order(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidOrder { k, n });
    }
    Ok(())
}

/// First index set of size `size` with a negative principal minor.
fn negative_minor<F: StarField>(a: &HermitianMatrix<F>, size: usize) -> Option<IndexSet> {
    Combinations::new(a.n(), size).map(IndexSet::new).find(|s| {
        let m = principal_minor(a, s).expect("valid index set");
        m.real_sign(a.ctx()) == Ordering::Less
    })
}

/// Whether every principal minor of size at most `k` is non-negative.
pub fn is_k_pmp<F: StarField>(a: &HermitianMatrix<F>, k: usize) -> Result<Verdict> {
    check_order(k, a.n())?;
    let witness = (1..=k).find_map(|size| negative_minor(a, size));
    Ok(Verdict { k, holds: witness.is_none(), witness })
}

/// The largest `k` for which `a` is k-PMP, with the first negative minor
/// when `k < N`.
pub fn pmp_order_with_witness<F: StarField>(a: &HermitianMatrix<F>) -> (usize, Option<IndexSet>) {
    for size in 1..=a.n() {
        if let Some(w) = negative_minor(a, size) {
            return (size - 1, Some(w));
        }
    }
    (a.n(), None)
}

/// The largest `k` in `0..=N` for which `a` is k-PMP; `N` means PSD.
pub fn pmp_order<F: StarField>(a: &HermitianMatrix<F>) -> usize {
    pmp_order_with_witness(a).0
}

/// Whether for every `k`-subset `S` the rows `S` and the columns `S` have
/// the same rank as `M[S, S]`.
///
/// The column space of `M[S, S]` always lies inside that of `M[S, :]`, so
/// equal ranks mean equal spaces.
pub fn is_k_psrp<F: StarField>(m: &HermitianMatrix<F>, k: usize) -> Result<Verdict> {
    let n = m.n();
    check_order(k, n)?;
    let all: Vec<usize> = (0..n).collect();
    let witness = Combinations::new(n, k)
        .find(|s| {
            let r = rank(&m.submatrix(s, s));
            rank(&m.submatrix(s, &all)) != r || rank(&m.submatrix(&all, s)) != r
        })
        .map(IndexSet::new);
    Ok(Verdict { k, holds: witness.is_none(), witness })
}

/// Inertia of a non-PSD matrix against its PMP order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PmpSignatureReport {
    pub k: usize,
    pub signature: Signature,
    /// `n+ >= k` and `n- >= 1`; always true for a correct implementation.
    pub consistent: bool,
}

/// A matrix that is k-PMP but not (k+1)-PMP has at least `k` positive and
/// at least one negative eigenvalue.
pub fn check_pmp_signature<F: StarField>(a: &HermitianMatrix<F>) -> Result<PmpSignatureReport> {
    let k = pmp_order(a);
    if k == a.n() {
        return Err(Error::NotApplicable("matrix is positive semidefinite".into()));
    }
    let sig = signature(a);
    Ok(PmpSignatureReport { k, signature: sig, consistent: sig.n_plus >= k && sig.n_minus >= 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::{GaussianRational as Q, Rational};

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn herm(rows: &[&[&str]]) -> HermitianMatrix<Q> {
        HermitianMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect(), ()).unwrap()
    }

    fn shifted_ones(n: usize, lambda: Rational) -> HermitianMatrix<Rational> {
        HermitianMatrix::new(Matrix::from_fn(n, n, (), |i, j| {
            if i == j {
                lambda.clone() - Rational::one()
            } else {
                -Rational::one()
            }
        }))
        .unwrap()
    }

    #[test]
    fn two_pmp_but_not_three_pmp() {
        let a = herm(&[&["1", "1", "-1"], &["1", "1", "1"], &["-1", "1", "1"]]);
        assert!(is_k_pmp(&a, 2).unwrap().holds);
        let v = is_k_pmp(&a, 3).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(IndexSet::full(3)));
        assert_eq!(pmp_order(&a), 2);
    }

    #[test]
    fn shifted_ones_order_tracks_lambda() {
        // lambda in [k-1, k) gives order k-1.
        for n in 2..6usize {
            for k in 1..=n {
                for lambda in [Rational::integer(k as i64 - 1), Rational::new(2 * k as i64 - 1, 2)] {
                    let a = shifted_ones(n, lambda.clone());
                    assert_eq!(pmp_order(&a), k - 1, "n={n} lambda={lambda}");
                }
            }
            assert_eq!(pmp_order(&shifted_ones(n, Rational::integer(n as i64))), n);
        }
    }

    #[test]
    fn identity_and_negative_identity() {
        assert!(is_k_pmp(&HermitianMatrix::<Q>::identity(4, ()), 4).unwrap().holds);
        let neg = HermitianMatrix::new(Matrix::<Q>::identity(3, ()).scale(&q("-1"))).unwrap();
        assert_eq!(pmp_order(&neg), 0);
        assert_eq!(is_k_pmp(&neg, 1).unwrap().witness, Some(IndexSet::new(vec![0])));
    }

    #[test]
    fn order_out_of_range() {
        let a = HermitianMatrix::<Q>::identity(3, ());
        assert_eq!(is_k_pmp(&a, 0), Err(Error::InvalidOrder { k: 0, n: 3 }));
        assert_eq!(is_k_pmp(&a, 4), Err(Error::InvalidOrder { k: 4, n: 3 }));
        assert!(is_k_psrp(&a, 4).is_err());
    }

    #[test]
    fn psd_matrices_satisfy_psrp() {
        let a = herm(&[&["2", "1+i", "0"], &["1-i", "1", "0"], &["0", "0", "0"]]);
        for k in 1..=3 {
            assert!(is_k_psrp(&a, k).unwrap().holds);
        }
        // A zero diagonal entry with a nonzero row breaks 1-PSRP.
        let b = herm(&[&["0", "1"], &["1", "0"]]);
        let v = is_k_psrp(&b, 1).unwrap();
        assert_eq!(v.witness, Some(IndexSet::new(vec![0])));
    }

    #[test]
    fn signature_consequence() {
        let a = shifted_ones(3, Rational::new(3, 2));
        let r = check_pmp_signature(&a).unwrap();
        assert_eq!(r.k, 1);
        assert_eq!(r.signature, Signature::new(2, 0, 1));
        assert!(r.consistent);
        assert!(matches!(check_pmp_signature(&HermitianMatrix::<Q>::identity(2, ())), Err(Error::NotApplicable(_))));
    }
}
