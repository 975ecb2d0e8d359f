use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Domain, Field, GaussianRational, Rational, StarField};
use crate::matrix::{HermitianMatrix, Signature};

/// Zero-test policy for [`ComplexFloat`]: `z` is zero iff
/// `|z| <= tol * max(1, scale)`.
///
/// Equality built on this test is not transitive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub tol: f64,
    pub scale: f64,
}

impl Tolerance {
    pub const DEFAULT_TOL: f64 = 1e-9;

    pub fn new(tol: f64) -> Self {
        Tolerance { tol, scale: 1.0 }
    }

    pub fn with_scale(self, scale: f64) -> Self {
        Tolerance { scale, ..self }
    }

    pub fn threshold(&self) -> f64 {
        self.tol * self.scale.max(1.0)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::new(Self::DEFAULT_TOL)
    }
}

/// Double-precision complex number.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexFloat {
    pub re: f64,
    pub im: f64,
}

impl ComplexFloat {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexFloat { re, im }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn norm(self) -> f64 {
        self.to_complex().norm()
    }

    /// Zero test at an explicit tolerance.
    pub fn is_zero_at(self, tol: &Tolerance) -> bool {
        self.norm() <= tol.threshold()
    }
}

impl From<Complex64> for ComplexFloat {
    fn from(z: Complex64) -> Self {
        ComplexFloat::new(z.re, z.im)
    }
}

impl From<&GaussianRational> for ComplexFloat {
    fn from(g: &GaussianRational) -> Self {
        ComplexFloat::new(g.re.to_f64(), g.im.to_f64())
    }
}

macro_rules! via_complex {
    ($trait:ident, $method:ident) => {
        impl $trait for ComplexFloat {
            type Output = ComplexFloat;
            fn $method(self, rhs: ComplexFloat) -> ComplexFloat {
                self.to_complex().$method(rhs.to_complex()).into()
            }
        }
    };
}

via_complex!(Add, add);
via_complex!(Sub, sub);
via_complex!(Mul, mul);
via_complex!(Div, div);

impl Neg for ComplexFloat {
    type Output = ComplexFloat;
    fn neg(self) -> ComplexFloat {
        ComplexFloat::new(-self.re, -self.im)
    }
}

impl Field for ComplexFloat {
    type Ctx = Tolerance;
    const DOMAIN: Domain = Domain::Float;
    const EXACT: bool = false;

    fn zero(_: &Tolerance) -> Self {
        ComplexFloat::default()
    }

    fn one(_: &Tolerance) -> Self {
        ComplexFloat::new(1.0, 0.0)
    }

    fn from_i64(v: i64, _: &Tolerance) -> Self {
        ComplexFloat::new(v as f64, 0.0)
    }

    fn is_zero(&self, ctx: &Tolerance) -> bool {
        self.is_zero_at(ctx)
    }

    fn conj(&self) -> Self {
        ComplexFloat::new(self.re, -self.im)
    }

    fn pivot_score(&self, ctx: &Tolerance) -> f64 {
        if self.is_zero(ctx) {
            0.0
        } else {
            self.norm()
        }
    }
}

impl StarField for ComplexFloat {
    fn modulus_squared(&self) -> Self {
        ComplexFloat::new(self.re * self.re + self.im * self.im, 0.0)
    }

    fn real_sign(&self, ctx: &Tolerance) -> Ordering {
        if self.re.abs() <= ctx.threshold() {
            Ordering::Equal
        } else if self.re > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn is_real(&self, ctx: &Tolerance) -> bool {
        self.im.abs() <= ctx.threshold()
    }

    fn from_rational(r: &Rational, _: &Tolerance) -> Self {
        ComplexFloat::new(r.to_f64(), 0.0)
    }

    fn from_gaussian(g: &GaussianRational, _: &Tolerance) -> Option<Self> {
        Some(g.into())
    }

    /// Eigenvalue counts from a Hermitian eigensolver, thresholded at the
    /// matrix tolerance.
    fn inertia(m: &HermitianMatrix<Self>) -> Signature {
        let n = m.n();
        let tol = m.ctx().threshold();
        let dense = DMatrix::from_fn(n, n, |i, j| m.get(i, j).to_complex());
        let eigenvalues = dense.symmetric_eigenvalues();
        let mut sig = Signature { n_plus: 0, n_zero: 0, n_minus: 0 };
        for &lambda in eigenvalues.iter() {
            if lambda.abs() <= tol {
                sig.n_zero += 1;
            } else if lambda > 0.0 {
                sig.n_plus += 1;
            } else {
                sig.n_minus += 1;
            }
        }
        sig
    }
}
