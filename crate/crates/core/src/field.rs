//! Coefficient fields: the rationals and prime fields `Z/p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::AlgebraError;

/// Default modulus for prime-field computations.
pub const DEFAULT_PRIME: u32 = 32003;

/// Smallest prime modulus accepted for random coordinate changes.
pub const MIN_GENERIC_PRIME: u32 = 1009;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self, AlgebraError> {
        if p < 2 || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match *self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Coeff::Modular { value: n.rem_euclid(p as i64) as u32, modulus: p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match *self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => {
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Coeff::Modular { value: r.to_u32().expect("residue fits"), modulus: p }
            }
        }
    }

    /// Maps `num/den` into the field; fails when `den` vanishes in it.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::CoefficientNotInvertible(den.to_string()));
        }
        match *self {
            FieldSpec::Rationals => Ok(Coeff::Rational(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::PrimeField(_) => {
                let d = self.from_bigint(den);
                if d.is_zero() {
                    return Err(AlgebraError::CoefficientNotInvertible(den.to_string()));
                }
                Ok(self.from_bigint(num).div(&d))
            }
        }
    }

    pub fn contains(&self, c: &Coeff) -> bool {
        match (self, c) {
            (FieldSpec::Rationals, Coeff::Rational(_)) => true,
            (FieldSpec::PrimeField(p), Coeff::Modular { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = AlgebraError;

    /// Accepts `q` (also `Q`, `rationals`) and `fp:P`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "q" | "Q" | "rationals" => Ok(FieldSpec::Rationals),
            _ => {
                let rest = t
                    .strip_prefix("fp:")
                    .or_else(|| t.strip_prefix("Fp:"))
                    .ok_or_else(|| AlgebraError::BadField(s.to_string()))?;
                let p: u32 = rest.parse().map_err(|_| AlgebraError::BadField(s.to_string()))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Values from different fields never mix; doing so is a bug
/// and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Coeff::Rational(_) => FieldSpec::Rationals,
            Coeff::Modular { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn inv(&self) -> Coeff {
        match self {
            Coeff::Rational(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Coeff::Rational(r.recip())
            }
            Coeff::Modular { value, modulus } => {
                assert!(*value != 0, "inverse of zero");
                Coeff::Modular { value: mod_pow(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        }
    }

    pub fn div(&self, other: &Coeff) -> Coeff {
        self * &other.inv()
    }

    /// Sign used when printing: true for negative rationals and for residues
    /// above `p/2`.
    pub fn is_negative_for_display(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_negative(),
            Coeff::Modular { value, modulus } => *value > modulus / 2,
        }
    }
}

fn mod_pow(b: u32, mut e: u32, m: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % m as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u64;
        }
        base = base * base % m as u64;
        e >>= 1;
    }
    acc as u32
}

macro_rules! binop {
    ($tr:ident, $method:ident, $rat:expr, $modop:expr) => {
        impl<'a> $tr<&'a Coeff> for &'a Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &'a Coeff) -> Coeff {
                match (self, rhs) {
                    (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational($rat(a, b)),
                    (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q }) => {
                        assert_eq!(p, q, "mixed prime fields");
                        Coeff::Modular { value: $modop(*a as u64, *b as u64, *p as u64) as u32, modulus: *p }
                    }
                    _ => panic!("mixed coefficient fields"),
                }
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a, b, p| (a + b) % p);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a, b, p| (a + p - b) % p);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a, b, p| (a * b) % p);

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rational(r) => Coeff::Rational(-r),
            Coeff::Modular { value, modulus } => {
                Coeff::Modular { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Modular { value, modulus } => {
                if *value > modulus / 2 {
                    write!(f, "-{}", modulus - value)
                } else {
                    write!(f, "{value}")
                }
            }
        }
    }
}
