use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{compare_real, Field, GaussianRational, StarField};

/// A multiplicative subgroup of the nonzero complex numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Trivial,
    /// The `k`-th roots of unity.
    RootsOfUnity(u32),
    UnitCircle,
    NonzeroComplex,
    /// `{g^n : n in Z}`.
    Cyclic(GaussianRational),
}

/// Bound on the exponent search for cyclic groups over floats, where
/// modulus comparisons never become exact.
const MAX_CYCLIC_STEPS: usize = 100_000;

impl GroupSpec {
    /// Rewrites equivalent descriptions to one form. Roots of unity inside
    /// the Gaussian rationals are `+-1, +-i`, so a unimodular generator
    /// outside that set generates an infinite group on the circle, which
    /// this crate does not decide.
    pub fn normalize(self) -> Result<GroupSpec> {
        match self {
            GroupSpec::RootsOfUnity(0) => Err(Error::UnsupportedGroup("roots:0".into())),
            GroupSpec::RootsOfUnity(1) => Ok(GroupSpec::Trivial),
            GroupSpec::Cyclic(g) => {
                if g.is_zero() {
                    return Err(Error::UnsupportedGroup("cyclic generator 0".into()));
                }
                if g.norm_sqr() != crate::scalar::Rational::one() {
                    return Ok(GroupSpec::Cyclic(g));
                }
                let one = GaussianRational::ints(1, 0);
                let order = (1..=4).find(|&k| g.pow(k, &()) == one);
                match order {
                    Some(1) => Ok(GroupSpec::Trivial),
                    Some(k) => Ok(GroupSpec::RootsOfUnity(k)),
                    None => Err(Error::UnsupportedGroup(format!(
                        "cyclic:{g} lies on the unit circle but is not a root of unity"
                    ))),
                }
            }
            other => Ok(other),
        }
    }

    /// Whether the group lies in the unit circle.
    pub fn is_unimodular(&self) -> bool {
        matches!(self, GroupSpec::Trivial | GroupSpec::RootsOfUnity(_) | GroupSpec::UnitCircle)
    }

    /// Subgroup test for normalized specs; `None` when not decided here.
    pub fn is_subgroup_of(&self, other: &GroupSpec) -> Option<bool> {
        use GroupSpec::*;
        Some(match (self, other) {
            (a, b) if a == b => true,
            (Trivial, _) => true,
            (_, NonzeroComplex) => true,
            (RootsOfUnity(a), RootsOfUnity(b)) => b % a == 0,
            (RootsOfUnity(_), UnitCircle) => true,
            (Cyclic(_), UnitCircle) | (UnitCircle | NonzeroComplex, RootsOfUnity(_) | Trivial) => false,
            (NonzeroComplex, _) | (UnitCircle, Cyclic(_)) => false,
            (RootsOfUnity(_), Trivial) => false,
            _ => return None,
        })
    }

    /// Whether `a` lies in the orbit `G b`. The orbit of zero is `{0}`.
    pub fn orbit_equivalent<F: StarField>(&self, a: &F, b: &F, ctx: &F::Ctx) -> Result<bool> {
        let (za, zb) = (a.is_zero(ctx), b.is_zero(ctx));
        if za || zb {
            return Ok(za && zb);
        }
        let one = F::one(ctx);
        Ok(match self {
            GroupSpec::Trivial => a.eq_in(b, ctx),
            GroupSpec::RootsOfUnity(k) => (a.clone() / b.clone()).pow(*k, ctx).eq_in(&one, ctx),
            GroupSpec::UnitCircle => a.modulus_squared().eq_in(&b.modulus_squared(), ctx),
            GroupSpec::NonzeroComplex => true,
            GroupSpec::Cyclic(g) => {
                let g = F::from_gaussian(g, ctx)
                    .ok_or_else(|| Error::UnsupportedGroup(format!("cyclic:{g} in the {} domain", F::DOMAIN)))?;
                cyclic_member(&(a.clone() / b.clone()), &g, ctx)?
            }
        })
    }
}

/// Whether `r` is an integer power of `g`, for `|g| != 1`.
fn cyclic_member<F: StarField>(r: &F, g: &F, ctx: &F::Ctx) -> Result<bool> {
    let one = F::one(ctx);
    let g_sq = g.modulus_squared();
    let h = match compare_real(&g_sq, &one, ctx) {
        Ordering::Greater => g.clone(),
        Ordering::Less => one.clone() / g.clone(),
        Ordering::Equal => return Err(Error::UnsupportedGroup("unimodular cyclic generator".into())),
    };
    // r = h^n with n >= 0, or r^-1 = h^n.
    let target = match compare_real(&r.modulus_squared(), &one, ctx) {
        Ordering::Equal => return Ok(r.eq_in(&one, ctx)),
        Ordering::Greater => r.clone(),
        Ordering::Less => one / r.clone(),
    };
    let t_sq = target.modulus_squared();
    let mut power = h.clone();
    for _ in 0..MAX_CYCLIC_STEPS {
        match compare_real(&power.modulus_squared(), &t_sq, ctx) {
            Ordering::Less => power = power * h.clone(),
            Ordering::Equal => return Ok(power.eq_in(&target, ctx)),
            Ordering::Greater => return Ok(false),
        }
    }
    Ok(false)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => f.write_str("trivial"),
            GroupSpec::RootsOfUnity(k) => write!(f, "roots:{k}"),
            GroupSpec::UnitCircle => f.write_str("circle"),
            GroupSpec::NonzeroComplex => f.write_str("nonzero"),
            GroupSpec::Cyclic(g) => write!(f, "cyclic:{g}"),
        }
    }
}

/// Parses `trivial | roots:<k> | circle | nonzero | cyclic:<g>` and
/// normalizes the result.
impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = match s {
            "trivial" => GroupSpec::Trivial,
            "circle" => GroupSpec::UnitCircle,
            "nonzero" => GroupSpec::NonzeroComplex,
            _ => {
                if let Some(k) = s.strip_prefix("roots:") {
                    let k = k.parse().map_err(|_| Error::Parse(format!("bad root order in {s:?}")))?;
                    GroupSpec::RootsOfUnity(k)
                } else if let Some(g) = s.strip_prefix("cyclic:") {
                    GroupSpec::Cyclic(g.parse()?)
                } else {
                    return Err(Error::Parse(format!("unknown group {s:?}")));
                }
            }
        };
        spec.normalize()
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ComplexFloat, Rational, Tolerance};

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parsing_and_normalization() {
        assert_eq!(g("roots:1"), GroupSpec::Trivial);
        assert_eq!(g("roots:4"), GroupSpec::RootsOfUnity(4));
        assert_eq!(g("cyclic:-1"), GroupSpec::RootsOfUnity(2));
        assert_eq!(g("cyclic:i"), GroupSpec::RootsOfUnity(4));
        assert_eq!(g("cyclic:1"), GroupSpec::Trivial);
        assert_eq!(g("cyclic:2"), GroupSpec::Cyclic(q("2")));
        assert!(matches!("cyclic:3/5+4/5i".parse::<GroupSpec>(), Err(Error::UnsupportedGroup(_))));
        assert!(matches!("cyclic:0".parse::<GroupSpec>(), Err(Error::UnsupportedGroup(_))));
        assert!("sphere".parse::<GroupSpec>().is_err());
        for s in ["trivial", "roots:3", "circle", "nonzero", "cyclic:1/2+i"] {
            assert_eq!(g(s).to_string(), s);
        }
    }

    #[test]
    fn orbit_examples() {
        let eq = |spec: &str, a: &str, b: &str| g(spec).orbit_equivalent(&q(a), &q(b), &()).unwrap();
        assert!(eq("roots:4", "2", "-2i"));
        assert!(!eq("roots:2", "2", "-2i"));
        assert!(eq("cyclic:2", "2", "8"));
        assert!(eq("cyclic:2", "8", "2"));
        assert!(eq("cyclic:1/2", "1/4", "4"));
        assert!(!eq("cyclic:2", "2", "6"));
        assert!(!eq("cyclic:2", "2", "-8"));
        assert!(!eq("nonzero", "0", "1"));
        assert!(eq("nonzero", "0", "0"));
        assert!(eq("circle", "3/5+4/5i", "1"));
        assert!(!eq("trivial", "1", "-1"));
        assert!(eq("cyclic:1+i", "2i", "1"));
        assert!(!eq("cyclic:1+i", "2", "1"));
    }

    #[test]
    fn orbit_relation_is_symmetric_on_samples() {
        let vals = ["0", "1", "-1", "i", "2", "-2i", "1+i", "1/2", "8", "3/5-4/5i"];
        for spec in ["trivial", "roots:2", "roots:4", "circle", "nonzero", "cyclic:2", "cyclic:1+i"] {
            for a in vals {
                for b in vals {
                    let ab = g(spec).orbit_equivalent(&q(a), &q(b), &()).unwrap();
                    let ba = g(spec).orbit_equivalent(&q(b), &q(a), &()).unwrap();
                    assert_eq!(ab, ba, "{spec} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn complex_generator_over_rationals_is_unsupported() {
        let r = g("cyclic:1+i").orbit_equivalent(&Rational::one(), &Rational::integer(2), &());
        assert!(matches!(r, Err(Error::UnsupportedGroup(_))));
        assert!(g("cyclic:2").orbit_equivalent(&Rational::one(), &Rational::integer(4), &()).unwrap());
    }

    #[test]
    fn float_orbits() {
        let t = Tolerance::default();
        let a = ComplexFloat::new(0.0, 2.0);
        let b = ComplexFloat::new(2.0 + 1e-12, 0.0);
        assert!(g("roots:4").orbit_equivalent(&a, &b, &t).unwrap());
        assert!(g("cyclic:2").orbit_equivalent(&ComplexFloat::new(8.0, 0.0), &ComplexFloat::one(&t), &t).unwrap());
    }

    #[test]
    fn subgroups() {
        assert_eq!(g("roots:2").is_subgroup_of(&g("roots:4")), Some(true));
        assert_eq!(g("roots:4").is_subgroup_of(&g("roots:2")), Some(false));
        assert_eq!(g("trivial").is_subgroup_of(&g("circle")), Some(true));
        assert_eq!(g("circle").is_subgroup_of(&g("nonzero")), Some(true));
        assert_eq!(g("cyclic:2").is_subgroup_of(&g("circle")), Some(false));
    }
}
