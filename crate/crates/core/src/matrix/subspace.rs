//! Finite-dimensional subspaces given by bases.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{rank, rref, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A basis of a subspace of `F^ambient`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelBasis<F: Field> {
    ambient: usize,
    vectors: Vec<Vec<F>>,
    ctx: F::Ctx,
}

impl<F: Field> KernelBasis<F> {
    /// Span of `vectors`; dependent vectors are dropped, keeping the first
    /// independent subfamily.
    pub fn new(ambient: usize, vectors: Vec<Vec<F>>, ctx: F::Ctx) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::Shape(format!("vector of length {} in F^{ambient}", v.len())));
        }
        let mut kept: Vec<Vec<F>> = Vec::new();
        for v in vectors {
            kept.push(v);
            let m = Matrix::from_rows(kept.clone(), ctx.clone())?;
            if rank(&m) < kept.len() {
                kept.pop();
            }
        }
        Ok(KernelBasis { ambient, vectors: kept, ctx })
    }

    /// Trusts the caller that `vectors` is linearly independent.
    pub(crate) fn from_independent(ambient: usize, vectors: Vec<Vec<F>>, ctx: F::Ctx) -> Self {
        KernelBasis { ambient, vectors, ctx }
    }

    pub fn zero_space(ambient: usize, ctx: F::Ctx) -> Self {
        KernelBasis { ambient, vectors: Vec::new(), ctx }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero_space(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    /// Basis vectors as the rows of a matrix.
    pub fn as_rows(&self) -> Matrix<F> {
        Matrix::from_fn(self.dim(), self.ambient, self.ctx.clone(), |i, j| self.vectors[i][j].clone())
    }

    pub fn contains(&self, v: &[F]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        if v.iter().all(|x| x.is_zero(&self.ctx)) {
            return true;
        }
        let mut rows = self.vectors.clone();
        rows.push(v.to_vec());
        rank(&Matrix::from_rows(rows, self.ctx.clone()).expect("consistent lengths")) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &KernelBasis<F>) -> bool {
        self.ambient == other.ambient && self.vectors.iter().all(|v| other.contains(v))
    }

    /// The reduced row echelon basis, which is unique for the subspace.
    pub fn canonical(&self) -> Vec<Vec<F>> {
        if self.is_zero_space() {
            return Vec::new();
        }
        let e = rref(&self.as_rows());
        e.reduced.to_rows().into_iter().take(e.pivots.len()).collect()
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &KernelBasis<F>) -> Result<KernelBasis<F>> {
        let vs = self.vectors.iter().chain(&other.vectors).cloned().collect();
        KernelBasis::new(self.ambient, vs, self.ctx.clone())
    }
}

/// Whether two bases span the same subspace.
pub fn subspace_equal<F: Field>(a: &KernelBasis<F>, b: &KernelBasis<F>) -> Result<bool> {
    if a.ambient != b.ambient {
        return Err(Error::Shape(format!("ambient dimensions {} and {} differ", a.ambient, b.ambient)));
    }
    Ok(a.dim() == b.dim() && a.is_subspace_of(b))
}

impl<F: Field> Serialize for KernelBasis<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("KernelBasis", 3)?;
        st.serialize_field("ambient", &self.ambient)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.vectors)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::integer(x)).collect()
    }

    #[test]
    fn dependent_vectors_are_dropped() {
        let k = KernelBasis::new(3, vec![v(&[1, 1, 0]), v(&[2, 2, 0]), v(&[0, 0, 1])], ()).unwrap();
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&v(&[3, 3, -1])));
        assert!(!k.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn equality_ignores_the_choice_of_basis() {
        let a = KernelBasis::new(3, vec![v(&[1, -1, 0]), v(&[0, 1, -1])], ()).unwrap();
        let b = KernelBasis::new(3, vec![v(&[1, 0, -1]), v(&[1, -2, 1])], ()).unwrap();
        assert!(subspace_equal(&a, &b).unwrap());
        assert_eq!(a.canonical(), b.canonical());
        let c = KernelBasis::new(3, vec![v(&[1, 0, -1])], ()).unwrap();
        assert!(!subspace_equal(&a, &c).unwrap());
        assert!(c.is_subspace_of(&a));
        assert!(subspace_equal(&a, &KernelBasis::zero_space(4, ())).is_err());
    }

    #[test]
    fn wrong_length_is_a_shape_error() {
        assert!(KernelBasis::new(3, vec![v(&[1, 2])], ()).is_err());
    }

    #[test]
    fn json_shape() {
        let k = KernelBasis::new(2, vec![v(&[1, -1])], ()).unwrap();
        assert_eq!(serde_json::to_string(&k).unwrap(), r#"{"ambient":2,"dim":1,"basis":[["1","-1"]]}"#);
    }
}
