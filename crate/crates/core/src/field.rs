//! Exact coefficient fields.
//!
//! Every computation in this crate happens over an exact field: a prime
//! field `F_p` or the rationals. There is no floating point anywhere.
//!
//! A field is a small value object that knows how to operate on its
//! elements. Code generic over [`Field`] carries the field alongside the
//! element data (see [`crate::linalg::Matrix`]); this is what lets the
//! modulus of a prime field be chosen at run time.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::Error;

/// An exact field with element type `Self::Elem`.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero; callers pivot on nonzero
    /// entries only.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Image of an integer under the unique ring map `Z -> k`.
    fn from_int(&self, n: i64) -> Self::Elem;

    /// Short human-readable element rendering for reports.
    fn display(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// The prime field `F_p` with a run-time modulus.
///
/// Elements are canonical representatives in `0..p`. The modulus is
/// restricted to fit in 32 bits so products never overflow `u64`
/// arithmetic done in `u128`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Constructs `F_p`. Fails unless `p` is a prime below `2^31`.
    pub fn new(p: u64) -> Result<Self, Error> {
        if p >= 1 << 31 {
            return Err(Error::InvalidModulus(p, "modulus too large".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p, "modulus is not prime".into()));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        (s0.rem_euclid(self.p as i128)) as u64
    }

    fn from_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn display(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The field of rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn display(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            a.to_string()
        }
    }
}

/// A field selected at run time, as it appears in input documents.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldSpec {
    /// `F_p` for a prime `p >= 2`.
    Prime(u64),
    /// The rational numbers.
    Rationals,
}

impl FieldSpec {
    /// Parses `"F2"`, `"F<p>"` or `"Q"`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "Q" => Ok(FieldSpec::Rationals),
            _ => {
                let digits = s
                    .strip_prefix('F')
                    .ok_or_else(|| Error::InvalidFieldSpec(s.into()))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::InvalidFieldSpec(s.into()))?;
                // validate now so a bad modulus fails at parse time
                PrimeField::new(p)?;
                Ok(FieldSpec::Prime(p))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.add(&3, &4), 2);
        assert_eq!(f5.neg(&2), 3);
        assert_eq!(f5.mul(&3, &4), 2);
        assert_eq!(f5.mul(&2, &f5.inv(&2)), 1);
        assert_eq!(f5.from_int(-1), 4);
    }

    #[test]
    fn inverses_everywhere() {
        for p in [2u64, 3, 5, 7, 101] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
            }
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(91).is_err());
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let q = Rationals;
        let third = q.inv(&q.from_int(3));
        let sum = q.add(&q.add(&third, &third), &third);
        assert_eq!(sum, q.one());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("F2").unwrap(), FieldSpec::Prime(2));
        assert_eq!(FieldSpec::parse("F101").unwrap(), FieldSpec::Prime(101));
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert!(FieldSpec::parse("F4").is_err());
        assert!(FieldSpec::parse("R").is_err());
    }
}
