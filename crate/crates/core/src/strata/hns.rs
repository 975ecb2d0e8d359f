use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::Partition;
use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::pmp::is_k_pmp;
use crate::scalar::{Field, StarField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HnsBlock {
    pub size: usize,
    /// All-ones block if true, zero block otherwise.
    pub ones: bool,
}

/// A unitary monomial matrix `QD` with `(QD)^* A (QD)` block diagonal with
/// all-ones or all-zero blocks.
///
/// `permutation[k]` is the original index placed at position `k`, so
/// `Q e_k = e_{permutation[k]}`; `phases[k]` is the `k`-th entry of `D`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct HnsDecomposition<F: Field> {
    #[serde(serialize_with = "one_based")]
    pub permutation: Vec<usize>,
    pub phases: Vec<F>,
    pub blocks: Vec<HnsBlock>,
    pub canonical: Matrix<F>,
}

fn one_based<S: serde::Serializer>(p: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|i| i + 1))
}

impl<F: StarField> HnsDecomposition<F> {
    /// The unitary monomial matrix `QD`.
    pub fn monomial(&self) -> Matrix<F> {
        let n = self.permutation.len();
        let ctx = self.canonical.ctx().clone();
        let mut m = Matrix::zeros(n, n, ctx);
        for (k, &p) in self.permutation.iter().enumerate() {
            m.set(p, k, self.phases[k].clone());
        }
        m
    }

    /// The block-diagonal ones/zeros matrix described by `blocks`.
    pub fn expected_canonical(&self) -> Matrix<F> {
        let ctx = self.canonical.ctx().clone();
        let parts: Vec<Matrix<F>> = self
            .blocks
            .iter()
            .map(|b| {
                if b.ones {
                    Matrix::ones(b.size, b.size, ctx.clone())
                } else {
                    Matrix::zeros(b.size, b.size, ctx.clone())
                }
            })
            .collect();
        Matrix::direct_sum(&parts, ctx)
    }
}

/// Decomposes a 3-PMP matrix whose entries have modulus 0 or 1.
///
/// Blocks are the connected components of the nonzero pattern, ordered by
/// least index. Inside a component with root `r` every entry satisfies
/// `a_xy = conj(a_rx) a_ry`, so the phases `d = conj(a_r.)` turn the block
/// into all ones. Success certifies the input as positive semidefinite.
pub fn hns_decompose<F: StarField>(a: &HermitianMatrix<F>) -> Result<HnsDecomposition<F>> {
    let n = a.n();
    let ctx = a.ctx().clone();
    let one = F::one(&ctx);
    for i in 0..n {
        for j in 0..n {
            let m = a.get(i, j).modulus_squared();
            if !m.is_zero(&ctx) && !m.eq_in(&one, &ctx) {
                return Err(Error::EntriesNotUnimodular { row: i, col: j });
            }
        }
    }
    if let Some(witness) = is_k_pmp(a, n.min(3))?.witness {
        return Err(Error::NotThreePmp { witness });
    }

    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if !a.get(i, j).is_zero(&ctx) {
                uf.union(i, j);
            }
        }
    }
    let components = Partition::from_labels(&uf.into_labeling());

    let mut permutation = Vec::with_capacity(n);
    let mut phases = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(components.len());
    for comp in components.blocks() {
        let root = comp[0];
        let ones = !a.get(root, root).is_zero(&ctx);
        for &x in comp {
            permutation.push(x);
            phases.push(if ones { a.get(root, x).conj() } else { one.clone() });
        }
        blocks.push(HnsBlock { size: comp.len(), ones });
    }

    let canonical = Matrix::from_fn(n, n, ctx, |k, l| {
        phases[k].conj() * a.get(permutation[k], permutation[l]).clone() * phases[l].clone()
    });
    let dec = HnsDecomposition { permutation, phases, blocks, canonical };
    if !dec.canonical.eq_in(&dec.expected_canonical()) {
        return Err(Error::VerificationFailed("conjugated matrix is not block diagonal with ones/zero blocks".into()));
    }
    Ok(dec)
}
