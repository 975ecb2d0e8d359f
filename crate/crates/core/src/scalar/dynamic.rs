use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ComplexFloat, Field, GaussianRational, Gf, Rational};
use crate::error::{Error, Result};

/// The four arithmetic domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    Rational,
    GaussianRational,
    Gf,
    Float,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Rational => "rational",
            Domain::GaussianRational => "gaussian-rational",
            Domain::Gf => "gf",
            Domain::Float => "float",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Domain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Domain::Rational),
            "gaussian-rational" | "gaussian" => Ok(Domain::GaussianRational),
            "gf" => Ok(Domain::Gf),
            "float" => Ok(Domain::Float),
            other => Err(Error::Parse(format!("unknown domain {other:?}"))),
        }
    }
}

/// A domain-tagged scalar with checked arithmetic.
///
/// Binary operations between different domains (or between prime fields of
/// different characteristic) return [`Error::ArithmeticDomain`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Rational(Rational),
    Gaussian(GaussianRational),
    Prime(Gf),
    Float(ComplexFloat),
}

macro_rules! checked_op {
    ($name:ident, $op:tt) => {
        pub fn $name(&self, rhs: &Scalar) -> Result<Scalar> {
            use Scalar::*;
            Ok(match (self, rhs) {
                (Rational(a), Rational(b)) => Rational(a.clone() $op b.clone()),
                (Gaussian(a), Gaussian(b)) => Gaussian(a.clone() $op b.clone()),
                (Prime(a), Prime(b)) if a.modulus() == b.modulus() => Prime(*a $op *b),
                (Float(a), Float(b)) => Float(*a $op *b),
                _ => return Err(self.mismatch(rhs)),
            })
        }
    };
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Gaussian(_) => Domain::GaussianRational,
            Scalar::Prime(_) => Domain::Gf,
            Scalar::Float(_) => Domain::Float,
        }
    }

    fn mismatch(&self, rhs: &Scalar) -> Error {
        Error::ArithmeticDomain(format!("{} with {}", self.describe(), rhs.describe()))
    }

    fn describe(&self) -> String {
        match self {
            Scalar::Prime(g) => format!("GF({})", g.modulus().get()),
            other => other.domain().to_string(),
        }
    }

    checked_op!(checked_add, +);
    checked_op!(checked_sub, -);
    checked_op!(checked_mul, *);

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        let zero = match rhs {
            Scalar::Rational(b) => b.is_zero(),
            Scalar::Gaussian(b) => b.is_zero(),
            Scalar::Prime(b) => b.value() == 0,
            Scalar::Float(b) => b.re == 0.0 && b.im == 0.0,
        };
        if self.domain() == rhs.domain() && zero {
            return Err(Error::ArithmeticDomain("division by zero".into()));
        }
        use Scalar::*;
        Ok(match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a.clone() / b.clone()),
            (Gaussian(a), Gaussian(b)) => Gaussian(a.clone() / b.clone()),
            (Prime(a), Prime(b)) if a.modulus() == b.modulus() => Prime(*a / *b),
            (Float(a), Float(b)) => Float(*a / *b),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    /// Complex conjugate; real and prime-field values are fixed points.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Gaussian(g) => Scalar::Gaussian(g.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
            other => other.clone(),
        }
    }

    /// `|z|^2`: exact for rational domains, a float for floats.
    pub fn modulus_squared(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => Ok(Scalar::Rational(r * r)),
            Scalar::Gaussian(g) => Ok(Scalar::Rational(g.norm_sqr())),
            Scalar::Float(z) => Ok(Scalar::Float(ComplexFloat::new(z.re * z.re + z.im * z.im, 0.0))),
            Scalar::Prime(_) => Err(Error::UnsupportedDomain("gf")),
        }
    }
}
