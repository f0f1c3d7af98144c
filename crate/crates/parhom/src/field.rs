//! Exact field scalars: the rationals and prime fields GF(p).

use num::rational::BigRational;
use num::{BigInt, One, Zero};
use std::fmt;
use std::str::FromStr;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime_field(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::zero()),
            FieldSpec::PrimeField(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::one()),
            FieldSpec::PrimeField(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp(r)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (FieldSpec::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x - y),
            (FieldSpec::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp((x + p - y) % p)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (FieldSpec::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            (FieldSpec::PrimeField(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(x.recip()))
                }
            }
            (FieldSpec::PrimeField(p), Scalar::Fp(x)) => {
                if *x == 0 {
                    None
                } else {
                    Some(Scalar::Fp(fp_pow(*x, p - 2, *p)))
                }
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    /// Parses "n", "-n" or "n/d". Over GF(p) fractions are resolved mod p.
    pub fn parse(&self, s: &str) -> Result<Scalar, FieldError> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        match self {
            FieldSpec::Rationals => {
                let n = BigInt::from_str(num).map_err(|_| FieldError::Parse(s.to_string()))?;
                let d = match den {
                    Some(d) => BigInt::from_str(d).map_err(|_| FieldError::Parse(s.to_string()))?,
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return Err(FieldError::Parse(s.to_string()));
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            FieldSpec::PrimeField(p) => {
                let n = i128::from_str(num).map_err(|_| FieldError::Parse(s.to_string()))?;
                let n = n.rem_euclid(*p as i128) as u64;
                match den {
                    None => Ok(Scalar::Fp(n)),
                    Some(d) => {
                        let d = i128::from_str(d).map_err(|_| FieldError::Parse(s.to_string()))?;
                        let d = d.rem_euclid(*p as i128) as u64;
                        let inv = self
                            .inv(&Scalar::Fp(d))
                            .ok_or_else(|| FieldError::Parse(s.to_string()))?;
                        Ok(self.mul(&Scalar::Fp(n), &inv))
                    }
                }
            }
        }
    }
}

/// An element of the field named by a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_one(),
            Scalar::Fp(x) => *x == 1,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar: {0:?}")]
    Parse(String),
}

pub(crate) fn fp_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
