//! Exact field scalars: arbitrary-precision rationals and prime fields GF(p).
//!
//! Every scalar carries its field descriptor. Mixing scalars from different
//! fields in an arithmetic operation is a programming error and panics; the
//! parsing layer guarantees that user input never mixes fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Identifies the coefficient field of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    /// The rational numbers.
    Rational,
    /// The prime field GF(p).
    Prime(u32),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("prime modulus {0} does not fit in 31 bits")]
    ModulusTooLarge(u32),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("fraction coefficients are not allowed over {0}")]
    FractionInPrimeField(FieldDesc),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    let p = u64::from(p);
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldDesc {
    /// Builds the GF(p) descriptor, validating that p is prime and fits in 31 bits.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldDesc::Prime(p))
    }

    pub fn is_rational(self) -> bool {
        matches!(self, FieldDesc::Rational)
    }

    pub fn modulus(self) -> Option<u32> {
        match self {
            FieldDesc::Rational => None,
            FieldDesc::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rational => write!(f, "Q"),
            FieldDesc::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element: a reduced rational or a prime-field residue.
///
/// Rationals are kept in lowest terms with a positive denominator (this is
/// `BigRational`'s canonical form); residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u32 },
}

/// Extended Euclid inverse of `a` modulo `m`, for `0 < a < m`.
fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

impl Scalar {
    pub fn zero(field: FieldDesc) -> Self {
        match field {
            FieldDesc::Rational => Scalar::Rational(BigRational::zero()),
            FieldDesc::Prime(p) => Scalar::Prime { value: 0, modulus: p },
        }
    }

    pub fn one(field: FieldDesc) -> Self {
        match field {
            FieldDesc::Rational => Scalar::Rational(BigRational::one()),
            FieldDesc::Prime(p) => Scalar::Prime { value: 1, modulus: p },
        }
    }

    pub fn from_i64(field: FieldDesc, v: i64) -> Self {
        match field {
            FieldDesc::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldDesc::Prime(p) => Scalar::Prime {
                value: v.rem_euclid(i64::from(p)) as u64,
                modulus: p,
            },
        }
    }

    /// Builds `num/den`. Over GF(p) the quotient is computed via the modular
    /// inverse of `den`.
    pub fn from_ratio(field: FieldDesc, num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::ZeroDenominator);
        }
        match field {
            FieldDesc::Rational => Ok(Scalar::Rational(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldDesc::Prime(_) => {
                let d = Scalar::from_i64(field, den);
                let inv = d.inv().ok_or(FieldError::ZeroDenominator)?;
                Ok(&Scalar::from_i64(field, num) * &inv)
            }
        }
    }

    pub fn field(&self) -> FieldDesc {
        match self {
            Scalar::Rational(_) => FieldDesc::Rational,
            Scalar::Prime { modulus, .. } => FieldDesc::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Prime { value, modulus } => {
                if *value == 0 {
                    None
                } else {
                    Some(Scalar::Prime {
                        value: mod_inv(*value, u64::from(*modulus))?,
                        modulus: *modulus,
                    })
                }
            }
        }
    }

    /// True when the rational value is negative. Residues have no sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Prime { .. } => false,
        }
    }

    /// Absolute value over the rationals; identity over GF(p).
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            prime => prime.clone(),
        }
    }
}

fn check_fields(a: &Scalar, b: &Scalar) {
    assert!(
        a.field() == b.field(),
        "field mismatch: {} vs {}",
        a.field(),
        b.field()
    );
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        check_fields(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime {
                    value: (a + b) % u64::from(*modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &-rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        check_fields(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => {
                // modulus < 2^31, so the product fits in u64
                Scalar::Prime {
                    value: (a * b) % u64::from(*modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: if *value == 0 {
                    0
                } else {
                    u64::from(*modulus) - value
                },
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // BigRational prints "3/2", and just "3" when the denominator is 1
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}
