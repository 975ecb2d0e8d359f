use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Domain, Field, Rational, StarField};
use crate::error::Error;

/// A complex number with rational real and imaginary parts, i.e. an element
/// of the field Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    /// Shorthand for integer parts.
    pub fn ints(re: i64, im: i64) -> Self {
        GaussianRational::new(Rational::integer(re), Rational::integer(im))
    }

    pub fn i() -> Self {
        GaussianRational::ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        GaussianRational::ints(v, 0)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, v: &Rational| {
            if *v == Rational::one() {
                write!(f, "i")
            } else if *v == -Rational::one() {
                write!(f, "-i")
            } else {
                write!(f, "{v}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => imag(f, &self.im),
            (false, false) => {
                write!(f, "{}", self.re)?;
                if self.im.is_positive() {
                    write!(f, "+")?;
                }
                imag(f, &self.im)
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Parses `a`, `bi`, `a+bi`, `a-bi` where `a`, `b` are rationals
    /// (`p/q` means `(p/q)`, so `1/2i` is `i/2`); a bare `i` or `-i` is
    /// allowed for the imaginary unit.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a Gaussian rational: {s:?}"));
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussianRational::real(s.parse()?));
        };
        // Split before the last sign that is not the leading character.
        let split = body
            .char_indices()
            .rev()
            .find(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k);
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => other.trim_start_matches('+').parse().map_err(|_| bad())?,
        };
        let re = if re.is_empty() { Rational::zero() } else { re.parse().map_err(|_| bad())? };
        Ok(GaussianRational::new(re, im))
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational::new(re, im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        if rhs.im.is_zero() {
            return GaussianRational::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        let prod = self * rhs.conj();
        GaussianRational::new(&prod.re / &n, &prod.im / &n)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Field for GaussianRational {
    type Ctx = ();
    const DOMAIN: Domain = Domain::GaussianRational;
    const EXACT: bool = true;

    fn zero(_: &()) -> Self {
        GaussianRational::default()
    }

    fn one(_: &()) -> Self {
        GaussianRational::ints(1, 0)
    }

    fn from_i64(v: i64, _: &()) -> Self {
        GaussianRational::ints(v, 0)
    }

    fn is_zero(&self, _: &()) -> bool {
        GaussianRational::is_zero(self)
    }

    fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }
}

impl StarField for GaussianRational {
    fn modulus_squared(&self) -> Self {
        GaussianRational::real(self.norm_sqr())
    }

    fn real_sign(&self, _: &()) -> Ordering {
        self.re.signum()
    }

    fn is_real(&self, _: &()) -> bool {
        self.im.is_zero()
    }

    fn from_rational(r: &Rational, _: &()) -> Self {
        GaussianRational::real(r.clone())
    }

    fn from_gaussian(g: &GaussianRational, _: &()) -> Option<Self> {
        Some(g.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_common_forms() {
        assert_eq!(g("2-2i"), GaussianRational::ints(2, -2));
        assert_eq!(g("-2i"), GaussianRational::ints(0, -2));
        assert_eq!(g("i"), GaussianRational::i());
        assert_eq!(g("-i"), GaussianRational::ints(0, -1));
        assert_eq!(g("1/2+1/2i"), GaussianRational::new(Rational::new(1, 2), Rational::new(1, 2)));
        assert_eq!(g("-3/4"), GaussianRational::real(Rational::new(-3, 4)));
        assert_eq!(g("1 + i"), GaussianRational::ints(1, 1));
        assert!("2+xi".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "2", "-i", "i", "3/2-5i", "-1/3+i", "7i"] {
            assert_eq!(g(s).to_string(), s);
            assert_eq!(g(&g(s).to_string()), g(s));
        }
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(g("2-2i").conj(), g("2+2i"));
        assert_eq!(g("1").conj(), g("1"));
        assert_eq!(g("i").conj() * g("-i").conj(), g("1"));
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(g("-2i").norm_sqr(), Rational::integer(4));
        assert_eq!(g("1/2+1/2i").norm_sqr(), Rational::new(1, 2));
        assert_eq!(g("0").norm_sqr(), Rational::zero());
    }

    #[test]
    fn json_encoding() {
        let s = serde_json::to_string(&g("1/2-3i")).unwrap();
        assert_eq!(s, r#"{"re":"1/2","im":"-3"}"#);
    }
}
