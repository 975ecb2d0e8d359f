//! The arithmetic tower for matrix entries.
//!
//! Every matrix algorithm in the crate is generic over [`Field`]. Algorithms
//! that need an ordering on real values or a modulus (principal minors,
//! inertia, orbits) additionally require [`StarField`], which is implemented
//! by the three complex-capable domains but not by prime fields.
//!
//! Each field carries a context value: nothing for the exact rationals, the
//! modulus for a prime field and the zero tolerance for complex floats. A
//! matrix stores one context for all of its entries.

mod dynamic;
mod float;
mod gaussian;
mod prime;
mod rational;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::de::DeserializeOwned;
use serde::Serialize;

pub use dynamic::{Domain, Scalar};
pub use float::{ComplexFloat, Tolerance};
pub use gaussian::GaussianRational;
pub use prime::{Gf, PrimeModulus};
pub use rational::Rational;

use crate::matrix::{HermitianMatrix, Signature};

/// A commutative field with an involution (`conj`), equipped with a context.
///
/// Binary operators assume both operands share a context. For prime fields a
/// modulus mismatch panics; use [`Scalar`] for checked, domain-tagged
/// arithmetic.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Serialize
    + DeserializeOwned
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + Debug + PartialEq + Send + Sync + 'static;

    /// Name used in the matrix JSON `domain` field.
    const DOMAIN: Domain;

    /// Whether equality and zero tests are exact.
    const EXACT: bool;

    fn zero(ctx: &Self::Ctx) -> Self;

    fn one(ctx: &Self::Ctx) -> Self;

    fn from_i64(v: i64, ctx: &Self::Ctx) -> Self;

    fn is_zero(&self, ctx: &Self::Ctx) -> bool;

    /// Equality in the field. Bit-exact for exact domains; tolerance based
    /// (and therefore not transitive) for floats.
    fn eq_in(&self, other: &Self, ctx: &Self::Ctx) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.clone() - other.clone()).is_zero(ctx)
        }
    }

    fn conj(&self) -> Self;

    fn inv(&self, ctx: &Self::Ctx) -> Option<Self> {
        if self.is_zero(ctx) {
            None
        } else {
            Some(Self::one(ctx) / self.clone())
        }
    }

    /// `self^n` with the convention `0^0 = 1`.
    fn pow(&self, mut n: u32, ctx: &Self::Ctx) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Preference when choosing elimination pivots; larger is better and
    /// zero means unusable. Exact domains take the first nonzero entry.
    fn pivot_score(&self, ctx: &Self::Ctx) -> f64 {
        if self.is_zero(ctx) {
            0.0
        } else {
            1.0
        }
    }
}

/// A field embedded in the complex numbers: it has a real ordering on its
/// self-conjugate elements and a squared modulus.
pub trait StarField: Field {
    /// `|z|^2`, as a real element of the same field.
    fn modulus_squared(&self) -> Self;

    /// Sign of the real part (zero within tolerance for floats).
    fn real_sign(&self, ctx: &Self::Ctx) -> Ordering;

    fn is_real(&self, ctx: &Self::Ctx) -> bool;

    fn from_rational(r: &Rational, ctx: &Self::Ctx) -> Self;

    /// Embeds a Gaussian rational; `None` if the domain cannot represent it.
    fn from_gaussian(g: &GaussianRational, ctx: &Self::Ctx) -> Option<Self>;

    /// Inertia of a Hermitian matrix over this field.
    fn inertia(m: &HermitianMatrix<Self>) -> Signature {
        crate::matrix::inertia::charpoly_inertia(m)
    }
}

/// Convenience: the sign of `a - b` on real values.
pub fn compare_real<F: StarField>(a: &F, b: &F, ctx: &F::Ctx) -> Ordering {
    (a.clone() - b.clone()).real_sign(ctx)
}
