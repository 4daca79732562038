use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use super::json::rational_to_json;
use super::AlgebraError;

/// Largest prime modulus accepted by [`PrimeField::new`].
pub const MAX_PRIME: u32 = 1 << 16;

/// An exact field. Elements are plain values; the field object carries any
/// runtime parameters (the modulus for prime fields).
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, AlgebraError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational; fails when the denominator vanishes in the field.
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem, AlgebraError>;
    /// JSON form used by matrix and polynomial dumps.
    fn elem_to_json(&self, a: &Self::Elem) -> Value;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// GF(q) for a prime `q <= 2^16`, elements stored as canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self, AlgebraError> {
        if q > MAX_PRIME {
            return Err(AlgebraError::FieldTooLarge(q));
        }
        if !is_prime(q) {
            return Err(AlgebraError::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    /// Canonical residue of an arbitrary integer.
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    /// Iterates every element of the field in increasing residue order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1 % self.q
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.q as u64) as u32
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.q as u64 - *b as u64) % self.q as u64) as u32
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.q as u64) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.q - *a
        }
    }

    fn inv(&self, a: &u32) -> Result<u32, AlgebraError> {
        field_inverse(self.q, *a)
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v)
    }

    fn from_rational(&self, r: &BigRational) -> Result<u32, AlgebraError> {
        let q = BigInt::from(self.q);
        let residue = |x: &BigInt| -> u32 { x.mod_floor(&q).to_u32().expect("residue below q") };
        let den = residue(r.denom());
        Ok(self.mul(&residue(r.numer()), &field_inverse(self.q, den)?))
    }

    fn elem_to_json(&self, a: &u32) -> Value {
        Value::from(*a)
    }
}

/// The rationals with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, AlgebraError> {
        if a.is_zero() {
            Err(AlgebraError::NoInverse)
        } else {
            Ok(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(&self, r: &BigRational) -> Result<BigRational, AlgebraError> {
        Ok(r.clone())
    }

    fn elem_to_json(&self, a: &BigRational) -> Value {
        rational_to_json(a)
    }
}

/// Multiplicative inverse of `a` modulo the prime `q`.
///
/// ```
/// use minrank_lab::algebra::field_inverse;
/// assert_eq!(field_inverse(5, 2).unwrap(), 3);
/// assert!(field_inverse(5, 0).is_err());
/// ```
pub fn field_inverse(q: u32, a: u32) -> Result<u32, AlgebraError> {
    let a = a % q;
    if a == 0 {
        return Err(AlgebraError::NoInverse);
    }
    // extended Euclid on (a, q)
    let (mut r0, mut r1) = (q as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    if r0 != 1 {
        return Err(AlgebraError::NoInverse);
    }
    Ok(t0.rem_euclid(q as i64) as u32)
}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while d as u64 * d as u64 <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
