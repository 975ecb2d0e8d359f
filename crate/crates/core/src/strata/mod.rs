//! Partition stratification of Hermitian matrices.
//!
//! Given a multiplicative group `G`, the indices of a matrix are grouped so
//! that every block submatrix has all of its entries in a single `G`-orbit.
//! For 3-PMP matrices and unimodular `G` the diagonal blocks of the coarsest
//! such partition are rank-one positive semidefinite, which yields a
//! factorization `A[I_i, I_j] = c_ij u_i u_j^*` and a compressed matrix `C`.

mod group;
mod hns;
mod partition;

use std::cmp::Ordering;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

pub use group::GroupSpec;
pub use hns::{hns_decompose, HnsBlock, HnsDecomposition};
pub use partition::{all_partitions, Partition};

use crate::error::{Error, Result};
use crate::matrix::{rank, signature, HermitianMatrix, Matrix};
use crate::pmp::{is_k_pmp, pmp_order};
use crate::scalar::{Field, StarField};

/// Splits each block into classes of the relation `same`, one splitter
/// index at a time.
///
/// `same(j, x, y)` tells whether `x` and `y` agree with respect to `j`.
/// Because the criterion does not depend on the current partition, one
/// sweep over all splitters already reaches the fixpoint.
fn refine(n: usize, mut same: impl FnMut(usize, usize, usize) -> Result<bool>) -> Result<Partition> {
    let mut blocks: Vec<Vec<usize>> = vec![(0..n).collect()];
    for j in 0..n {
        let mut next = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for x in block {
                let mut home = None;
                for (c, class) in classes.iter().enumerate() {
                    if same(j, class[0], x)? {
                        home = Some(c);
                        break;
                    }
                }
                match home {
                    Some(c) => classes[c].push(x),
                    None => classes.push(vec![x]),
                }
            }
            next.extend(classes);
        }
        blocks = next;
    }
    Partition::new(n, blocks)
}

/// The coarsest partition `pi` such that every block submatrix
/// `A[I_i, I_j]` has all entries in one `G`-orbit.
///
/// Two indices share a block exactly when their rows agree entrywise up to
/// the group action, and so do their columns.
pub fn pi_min<F: StarField>(a: &HermitianMatrix<F>, g: &GroupSpec) -> Result<Partition> {
    let ctx = a.ctx();
    refine(a.n(), |j, x, y| {
        Ok(g.orbit_equivalent(a.get(x, j), a.get(y, j), ctx)? && g.orbit_equivalent(a.get(j, x), a.get(j, y), ctx)?)
    })
}

/// [`pi_min`] for the trivial group over any field: indices whose rows and
/// columns coincide exactly.
pub fn identical_index_partition<F: Field>(a: &Matrix<F>) -> Partition {
    assert!(a.is_square(), "square matrix expected");
    let ctx = a.ctx();
    refine(a.rows(), |j, x, y| Ok(a.get(x, j).eq_in(a.get(y, j), ctx) && a.get(j, x).eq_in(a.get(j, y), ctx)))
        .expect("infallible")
}

/// Whether every block submatrix has its entries in a single orbit.
pub fn is_block_orbit_constant<F: StarField>(a: &HermitianMatrix<F>, pi: &Partition, g: &GroupSpec) -> Result<bool> {
    for bi in pi.blocks() {
        for bj in pi.blocks() {
            if !single_orbit(a, bi, bj, g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn single_orbit<F: StarField>(a: &HermitianMatrix<F>, rows: &[usize], cols: &[usize], g: &GroupSpec) -> Result<bool> {
    let r = a.get(rows[0], cols[0]);
    for &p in rows {
        for &q in cols {
            if !g.orbit_equivalent(a.get(p, q), r, a.ctx())? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Condition (a): `A[I, I]` is positive semidefinite of rank at most one.
fn rank_one_psd<F: StarField>(a: &HermitianMatrix<F>, block: &[usize]) -> bool {
    block.iter().all(|&p| a.get(p, p).real_sign(a.ctx()) != Ordering::Less) && rank(&a.submatrix(block, block)) <= 1
}

/// Conditions (a) and (b) for one diagonal block.
fn admissible_block<F: StarField>(a: &HermitianMatrix<F>, block: &[usize], g: &GroupSpec) -> Result<bool> {
    Ok(rank_one_psd(a, block) && single_orbit(a, block, block, g)?)
}

/// Condition (c): no two blocks can be merged while keeping (a) and (b).
pub fn is_maximal<F: StarField>(a: &HermitianMatrix<F>, pi: &Partition, g: &GroupSpec) -> Result<bool> {
    let blocks = pi.blocks();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let merged: Vec<usize> = blocks[i].iter().chain(&blocks[j]).copied().collect();
            if admissible_block(a, &merged, g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks conditions (a), (b) and (c) and names the first failure.
fn verify_stratum<F: StarField>(a: &HermitianMatrix<F>, pi: &Partition, g: &GroupSpec) -> Result<()> {
    for (b, block) in pi.blocks().iter().enumerate() {
        if !rank_one_psd(a, block) {
            return Err(Error::VerificationFailed(format!("diagonal block {} of {pi} is not rank-one PSD", b + 1)));
        }
        if !single_orbit(a, block, block, g)? {
            return Err(Error::VerificationFailed(format!("diagonal block {} of {pi} mixes {g}-orbits", b + 1)));
        }
    }
    if !is_maximal(a, pi, g)? {
        return Err(Error::VerificationFailed(format!("{pi} is not maximal")));
    }
    Ok(())
}

/// The stratification partition `pi^G(A)` of a 3-PMP matrix: diagonal
/// blocks rank-one PSD with entries in one orbit, and as large as possible.
///
/// For unimodular `G` this is [`pi_min`]. Otherwise indices are merged
/// pairwise whenever their 2x2 principal block is admissible, and the
/// result is verified; a failure there is reported, not papered over.
pub fn pi_stratum<F: StarField>(a: &HermitianMatrix<F>, g: &GroupSpec) -> Result<Partition> {
    let verdict = is_k_pmp(a, a.n().min(3))?;
    if let Some(witness) = verdict.witness {
        return Err(Error::NotThreePmp { witness });
    }
    let pi = if g.is_unimodular() {
        pi_min(a, g)?
    } else {
        let n = a.n();
        let mut uf = UnionFind::<usize>::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if admissible_block(a, &[i, j], g)? {
                    uf.union(i, j);
                }
            }
        }
        Partition::from_labels(&uf.into_labeling())
    };
    verify_stratum(a, &pi, g)?;
    Ok(pi)
}

/// Rank-one factorization data for a partition.
///
/// Block `j` carries a pivot `p_j` (its first index with nonzero diagonal),
/// a direction `v_j` normalized by `v_j[p_j] = 1`, and the scale
/// `s_j = a[p_j, p_j]`. Then `u_j = sqrt(s_j) v_j` has first nonzero entry
/// real and positive, and
///
/// `A[I_i, I_j] = coupling[i][j] * v_i v_j^*`,
///
/// with `c_ij = coupling[i][j] / sqrt(s_i s_j)`. Everything is stored
/// exactly; `c_modulus_squared` holds `|c_ij|^2`. Zero blocks have `v_j = 0`
/// and zero coupling.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct StratumReport<F: Field> {
    pub partition: Partition,
    pub group: GroupSpec,
    #[serde(serialize_with = "one_based_pivots")]
    pub pivots: Vec<Option<usize>>,
    pub directions: Vec<Vec<F>>,
    pub scales: Vec<F>,
    pub coupling: Matrix<F>,
    pub c_modulus_squared: Matrix<F>,
    /// No two blocks can be merged.
    pub maximal: bool,
    /// Off-diagonal blocks each lie in a single orbit.
    pub orbit_constant: bool,
    pub psd_input: bool,
    pub pmp_order: usize,
}

impl<F: StarField> StratumReport<F> {
    /// Rebuilds the matrix from the certificates.
    pub fn reconstruct(&self) -> Matrix<F> {
        let ctx = self.coupling.ctx().clone();
        let n = self.partition.n();
        let labels = self.partition.labels();
        let pos = positions(&self.partition);
        Matrix::from_fn(n, n, ctx, |p, q| {
            let (i, j) = (labels[p], labels[q]);
            self.coupling.get(i, j).clone() * self.directions[i][pos[p]].clone() * self.directions[j][pos[q]].conj()
        })
    }

    /// Off-diagonal `|c_ij|^2 < 1` for all pairs of nonzero blocks.
    pub fn off_diagonal_in_open_disc(&self) -> bool {
        let ctx = self.coupling.ctx();
        let one = F::one(ctx);
        let m = self.partition.len();
        (0..m).all(|i| {
            (0..m).all(|j| {
                i == j || crate::scalar::compare_real(self.c_modulus_squared.get(i, j), &one, ctx) == Ordering::Less
            })
        })
    }
}

fn one_based_pivots<S: serde::Serializer>(p: &[Option<usize>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|x| x.map(|i| i + 1)))
}

/// Position of every index inside its block.
fn positions(pi: &Partition) -> Vec<usize> {
    let mut pos = vec![0; pi.n()];
    for block in pi.blocks() {
        for (k, &i) in block.iter().enumerate() {
            pos[i] = k;
        }
    }
    pos
}

/// Rank-one certificates for a partition satisfying conditions (a) and (b).
pub fn rank_one_certificates<F: StarField>(
    a: &HermitianMatrix<F>,
    pi: &Partition,
    g: &GroupSpec,
) -> Result<StratumReport<F>> {
    if pi.n() != a.n() {
        return Err(Error::Shape(format!("partition of {} indices for a {}x{} matrix", pi.n(), a.n(), a.n())));
    }
    let ctx = a.ctx().clone();
    let zero = F::zero(&ctx);
    let m = pi.len();
    let mut pivots = Vec::with_capacity(m);
    let mut directions = Vec::with_capacity(m);
    let mut scales = Vec::with_capacity(m);
    for (b, block) in pi.blocks().iter().enumerate() {
        if !rank_one_psd(a, block) {
            return Err(Error::ConditionsViolated(format!("diagonal block {} is not rank-one PSD", b + 1)));
        }
        if !single_orbit(a, block, block, g)? {
            return Err(Error::ConditionsViolated(format!("diagonal block {} mixes {g}-orbits", b + 1)));
        }
        let pivot = block.iter().copied().find(|&p| !a.get(p, p).is_zero(&ctx));
        match pivot {
            Some(p) => {
                let s = a.get(p, p).clone();
                directions.push(block.iter().map(|&q| a.get(q, p).clone() / s.clone()).collect());
                scales.push(s);
            }
            None => {
                directions.push(vec![zero.clone(); block.len()]);
                scales.push(zero.clone());
            }
        }
        pivots.push(pivot);
    }
    let coupling = Matrix::from_fn(m, m, ctx.clone(), |i, j| match (pivots[i], pivots[j]) {
        (Some(p), Some(q)) => a.get(p, q).clone(),
        _ => zero.clone(),
    });
    let c_modulus_squared = Matrix::from_fn(m, m, ctx.clone(), |i, j| {
        if pivots[i].is_some() && pivots[j].is_some() {
            coupling.get(i, j).modulus_squared() / (scales[i].clone() * scales[j].clone())
        } else {
            zero.clone()
        }
    });
    let report = StratumReport {
        partition: pi.clone(),
        group: g.clone(),
        pivots,
        directions,
        scales,
        coupling,
        c_modulus_squared,
        maximal: is_maximal(a, pi, g)?,
        orbit_constant: is_block_orbit_constant(a, pi, g)?,
        psd_input: signature(a).is_psd(),
        pmp_order: pmp_order(a),
    };
    if !report.reconstruct().eq_in(a.as_matrix()) {
        return Err(Error::ConditionsViolated("off-diagonal blocks do not factor through the block vectors".into()));
    }
    Ok(report)
}

/// The matrix of constant block values of a block-constant matrix.
pub fn compression<F: Field>(a: &Matrix<F>, pi: &Partition) -> Result<Matrix<F>> {
    if !a.is_square() || pi.n() != a.rows() {
        return Err(Error::Shape(format!("partition of {} indices for a {}x{} matrix", pi.n(), a.rows(), a.cols())));
    }
    let blocks = pi.blocks();
    for (i, bi) in blocks.iter().enumerate() {
        for (j, bj) in blocks.iter().enumerate() {
            let v = a.get(bi[0], bj[0]);
            if bi.iter().any(|&p| bj.iter().any(|&q| !a.get(p, q).eq_in(v, a.ctx()))) {
                return Err(Error::NotBlockConstant { row_block: i, col_block: j });
            }
        }
    }
    Ok(Matrix::from_fn(blocks.len(), blocks.len(), a.ctx().clone(), |i, j| a.get(blocks[i][0], blocks[j][0]).clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn herm(rows: &[&[&str]]) -> HermitianMatrix<Q> {
        HermitianMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect(), ()).unwrap()
    }

    fn part(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::from_one_based(n, &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn example5() -> HermitianMatrix<Q> {
        herm(&[
            &["2", "2", "1", "-2i", "2"],
            &["2", "2", "1", "-2i", "2"],
            &["1", "1", "1", "-i", "1"],
            &["2i", "2i", "i", "2", "2i"],
            &["2", "2", "1", "-2i", "2"],
        ])
    }

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example_partitions() {
        let a = example5();
        assert_eq!(pi_min(&a, &g("trivial")).unwrap(), part(5, &[&[1, 2, 5], &[3], &[4]]));
        assert_eq!(pi_min(&a, &g("roots:4")).unwrap(), part(5, &[&[1, 2, 4, 5], &[3]]));
        assert_eq!(pi_min(&a, &g("circle")).unwrap(), part(5, &[&[1, 2, 4, 5], &[3]]));
        assert_eq!(pi_stratum(&a, &g("circle")).unwrap(), part(5, &[&[1, 2, 4, 5], &[3]]));
        assert_eq!(identical_index_partition(a.as_matrix()), part(5, &[&[1, 2, 5], &[3], &[4]]));
    }

    #[test]
    fn worked_example_certificates() {
        let a = example5();
        let pi = part(5, &[&[1, 2, 5], &[3], &[4]]);
        let r = rank_one_certificates(&a, &pi, &g("trivial")).unwrap();
        let expected = herm(&[&["2", "1", "-2i"], &["1", "1", "-i"], &["2i", "i", "2"]]);
        assert_eq!(&r.coupling, expected.as_matrix());
        assert_eq!(rank(&r.coupling), rank(a.as_matrix()));
        assert_eq!(rank(a.as_matrix()), 2);
        assert_eq!(r.reconstruct(), *a.as_matrix());
        assert_eq!(compression(a.as_matrix(), &pi).unwrap(), *expected.as_matrix());
        assert!(r.maximal && r.psd_input && r.orbit_constant);
        assert_eq!(r.pmp_order, 5);
    }

    #[test]
    fn zero_block_convention() {
        // u u* (+) 0 with u = (1, i).
        let a = herm(&[&["1", "-i", "0"], &["i", "1", "0"], &["0", "0", "0"]]);
        let pi = part(3, &[&[1, 2], &[3]]);
        let r = rank_one_certificates(&a, &pi, &g("circle")).unwrap();
        assert_eq!(r.directions[0], vec![q("1"), q("i")]);
        assert_eq!(r.directions[1], vec![q("0")]);
        assert_eq!(r.pivots, vec![Some(0), None]);
        assert_eq!(r.c_modulus_squared.get(0, 0), &q("1"));
        assert_eq!(r.coupling.get(0, 1), &q("0"));
        assert_eq!(r.coupling.get(1, 1), &q("0"));
    }

    #[test]
    fn all_ones_and_identity() {
        for n in 1..5 {
            let ones = HermitianMatrix::<Q>::ones(n, ());
            let pi = pi_stratum(&ones, &g("trivial")).unwrap();
            assert_eq!(pi, Partition::single_block(n));
            let r = rank_one_certificates(&ones, &pi, &g("trivial")).unwrap();
            assert_eq!(r.directions[0], vec![q("1"); n]);
            assert_eq!(r.coupling, Matrix::ones(1, 1, ()));
            assert_eq!(compression(ones.as_matrix(), &pi).unwrap(), Matrix::ones(1, 1, ()));
            for spec in ["trivial", "roots:2", "circle", "nonzero", "cyclic:2"] {
                let id = HermitianMatrix::<Q>::identity(n, ());
                assert_eq!(pi_stratum(&id, &g(spec)).unwrap(), Partition::singletons(n), "{spec}");
            }
        }
    }

    #[test]
    fn six_by_six_two_pmp() {
        let a = herm(&[
            &["2", "2", "-2", "1", "1", "-1"],
            &["2", "2", "2", "1", "1", "1"],
            &["-2", "2", "2", "-1", "1", "1"],
            &["1", "1", "-1", "2", "2", "-2"],
            &["1", "1", "1", "2", "2", "2"],
            &["-1", "1", "1", "-2", "2", "2"],
        ]);
        assert_eq!(pi_min(&a, &g("roots:2")).unwrap(), part(6, &[&[1, 2, 3], &[4, 5, 6]]));
        assert_eq!(pmp_order(&a), 2);
        assert!(matches!(pi_stratum(&a, &g("roots:2")), Err(Error::NotThreePmp { .. })));
    }

    #[test]
    fn non_unimodular_group() {
        let a = herm(&[&["1", "2", "0"], &["2", "8", "0"], &["0", "0", "1"]]);
        let gen = g("cyclic:2");
        assert_eq!(pi_min(&a, &gen).unwrap(), part(3, &[&[1, 2], &[3]]));
        // The block {1,2} has rank two, so it cannot be a stratum block.
        assert_eq!(pi_stratum(&a, &gen).unwrap(), Partition::singletons(3));
        assert!(matches!(
            rank_one_certificates(&a, &part(3, &[&[1, 2], &[3]]), &gen),
            Err(Error::ConditionsViolated(_))
        ));
    }

    #[test]
    fn compression_rejects_non_constant_blocks() {
        let a = example5();
        let err = compression(a.as_matrix(), &part(5, &[&[1, 2, 3], &[4, 5]])).unwrap_err();
        assert_eq!(err, Error::NotBlockConstant { row_block: 0, col_block: 0 });
        assert_eq!(compression(a.as_matrix(), &Partition::singletons(5)).unwrap(), *a.as_matrix());
    }
}
