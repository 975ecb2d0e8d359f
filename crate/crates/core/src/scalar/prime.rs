use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{Domain, Field};
use crate::error::Error;

/// A verified prime modulus; the context of [`Gf`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::Parse(format!("{p} is not prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// An element of the prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf {
    value: u64,
    p: u64,
}

/// JSON shape `{"val": n, "p": p}`.
#[derive(Serialize, Deserialize)]
struct GfRepr {
    val: i64,
    p: u64,
}

impl Serialize for Gf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GfRepr { val: self.value as i64, p: self.p }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gf {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GfRepr::deserialize(d)?;
        let m = PrimeModulus::new(r.p).map_err(serde::de::Error::custom)?;
        Ok(Gf::new(r.val, m))
    }
}

impl Gf {
    /// Reduces any integer into `[0, p)`.
    pub fn new(v: i64, m: PrimeModulus) -> Self {
        let p = m.0 as i128;
        Gf { value: (v as i128).rem_euclid(p) as u64, p: m.0 }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        PrimeModulus(self.p)
    }

    fn check(self, other: Gf) {
        assert_eq!(self.p, other.p, "GF({}) and GF({}) elements mixed", self.p, other.p);
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        base %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mulmod(acc, base, p);
            }
            base = Self::mulmod(base, base, p);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        self.check(rhs);
        let s = (self.value as u128 + rhs.value as u128) % self.p as u128;
        Gf { value: s as u64, p: self.p }
    }
}

impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        self + (-rhs)
    }
}

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        let value = if self.value == 0 { 0 } else { self.p - self.value };
        Gf { value, p: self.p }
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        self.check(rhs);
        Gf { value: Self::mulmod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Div for Gf {
    type Output = Gf;
    fn div(self, rhs: Gf) -> Gf {
        self.check(rhs);
        assert!(rhs.value != 0, "division by zero in GF({})", self.p);
        let inv = Self::powmod(rhs.value, self.p - 2, self.p);
        Gf { value: Self::mulmod(self.value, inv, self.p), p: self.p }
    }
}

impl Field for Gf {
    type Ctx = PrimeModulus;
    const DOMAIN: Domain = Domain::Gf;
    const EXACT: bool = true;

    fn zero(m: &PrimeModulus) -> Self {
        Gf { value: 0, p: m.0 }
    }

    fn one(m: &PrimeModulus) -> Self {
        Gf { value: 1 % m.0, p: m.0 }
    }

    fn from_i64(v: i64, m: &PrimeModulus) -> Self {
        Gf::new(v, *m)
    }

    fn is_zero(&self, _: &PrimeModulus) -> bool {
        self.value == 0
    }

    fn conj(&self) -> Self {
        *self
    }

    fn pow(&self, n: u32, _: &PrimeModulus) -> Self {
        Gf { value: Self::powmod(self.value, n as u64, self.p), p: self.p }
    }
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = Gf::powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = Gf::mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
