use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::is_prime;

/// Ground field: characteristic 0 (rationals) or a prime p (GF(p)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Gf(u64),
}

impl FieldSpec {
    /// Validates the characteristic: 0 means the rationals, otherwise the
    /// value must be prime.
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 {
            Ok(FieldSpec::Rationals)
        } else if is_prime(characteristic) {
            Ok(FieldSpec::Gf(characteristic))
        } else {
            Err(Error::invalid(format!(
                "characteristic {characteristic} is neither 0 nor a prime"
            )))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Gf(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_integer(0, *self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_integer(1, *self)
    }

    /// Parses names like `q`, `gf2`, `gf3`, or a bare characteristic.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rat" || t == "rationals" || t == "0" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t.strip_prefix("gf").unwrap_or(&t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::invalid(format!("cannot parse field {s:?}")))?;
        FieldSpec::new(p)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Gf(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element in canonical form: the residue in `[0, p)` for
/// GF(p), a gcd-reduced fraction with positive denominator for the
/// rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Mod { residue: u64, p: u64 },
}

impl Scalar {
    pub fn from_integer(value: i64, field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar {
                repr: Repr::Rat(BigRational::from_integer(BigInt::from(value))),
            },
            FieldSpec::Gf(p) => {
                let residue = value.rem_euclid(p as i64) as u64;
                Scalar {
                    repr: Repr::Mod { residue, p },
                }
            }
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { repr: Repr::Rat(r) }
    }

    pub fn field(&self) -> FieldSpec {
        match &self.repr {
            Repr::Rat(_) => FieldSpec::Rationals,
            Repr::Mod { p, .. } => FieldSpec::Gf(*p),
        }
    }

    /// Residue for GF(p) scalars; used by the packed kernels.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod { residue, .. } => Some(*residue),
            Repr::Rat(_) => None,
        }
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            Repr::Mod { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Mod { residue, .. } => *residue == 1,
        }
    }

    fn check_same(&self, other: &Scalar) -> (FieldSpec, FieldSpec) {
        let (a, b) = (self.field(), other.field());
        assert_eq!(a, b, "mixed-field scalar arithmetic");
        (a, b)
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar::from_rational(a + b),
            (Repr::Mod { residue: a, p }, Repr::Mod { residue: b, .. }) => Scalar {
                repr: Repr::Mod {
                    residue: (a + b) % p,
                    p: *p,
                },
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match &self.repr {
            Repr::Rat(a) => Scalar::from_rational(-a),
            Repr::Mod { residue, p } => Scalar {
                repr: Repr::Mod {
                    residue: (p - residue) % p,
                    p: *p,
                },
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar::from_rational(a * b),
            (Repr::Mod { residue: a, p }, Repr::Mod { residue: b, .. }) => Scalar {
                repr: Repr::Mod {
                    residue: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                },
            },
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::invalid("inverse of zero"));
        }
        match &self.repr {
            Repr::Rat(a) => Ok(Scalar::from_rational(a.recip())),
            Repr::Mod { residue, p } => Ok(Scalar {
                repr: Repr::Mod {
                    residue: mod_inv(*residue, *p),
                    p: *p,
                },
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.denom().is_negative() {
                    unreachable!("BigRational keeps positive denominators")
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Mod { residue, .. } => write!(f, "{residue}"),
        }
    }
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat, p prime
    mod_pow(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_must_be_prime_or_zero() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(7919).is_ok());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(6).is_err());
        assert!(FieldSpec::new(91).is_err()); // 7 * 13
    }

    #[test]
    fn canonical_forms() {
        let f = FieldSpec::Gf(5);
        assert_eq!(Scalar::from_integer(-1, f), Scalar::from_integer(4, f));
        let q = FieldSpec::Rationals;
        let half = Scalar::from_rational(BigRational::new(BigInt::from(2), BigInt::from(4)));
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(
            Scalar::from_rational(BigRational::new(BigInt::from(1), BigInt::from(-2))).to_string(),
            "-1/2"
        );
        assert_eq!(Scalar::from_integer(3, q).to_string(), "3");
    }

    #[test]
    fn field_axioms_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for field in [FieldSpec::Gf(2), FieldSpec::Gf(3), FieldSpec::Rationals] {
            for _ in 0..10_000 {
                let a = Scalar::from_integer(rng.gen_range(-50..50), field);
                let b = Scalar::from_integer(rng.gen_range(-50..50), field);
                let c = Scalar::from_integer(rng.gen_range(-50..50), field);
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert!(a.add(&a.neg()).is_zero());
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn parse_field_names() {
        assert_eq!(FieldSpec::parse("gf2").unwrap(), FieldSpec::Gf(2));
        assert_eq!(FieldSpec::parse("GF3").unwrap(), FieldSpec::Gf(3));
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("5").unwrap(), FieldSpec::Gf(5));
        assert!(FieldSpec::parse("gf4").is_err());
    }
}
