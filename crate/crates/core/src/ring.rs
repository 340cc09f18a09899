//! Coefficient rings: the integers, the rationals, and prime fields.
//!
//! Every matrix entry in this crate is a [`num_rational::BigRational`]; the
//! [`Ring`] value attached to a matrix decides what "canonical" means for an
//! entry and how division behaves. Over `Integers` entries are integers
//! (denominator one), over `PrimeField(p)` entries are reduced residues in
//! `0..p`, and over `Rationals` entries are reduced fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Ring {
    Integers,
    Rationals,
    /// The field with `p` elements; `p` must be prime.
    PrimeField(u64),
}

impl Ring {
    /// Checks the primality requirement of `PrimeField`.
    pub fn validate(self) -> Result<(), Error> {
        match self {
            Ring::PrimeField(p) if !is_prime(p) => Err(Error::NotPrime(p)),
            _ => Ok(()),
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// Canonical representative of `x` in this ring.
    ///
    /// Panics if `x` does not belong to the ring (a non-integer handed to
    /// `Integers` or `PrimeField`); entries can only enter a matrix through
    /// checked constructors or ring-closed arithmetic, so a violation here is
    /// a bug, not an input error.
    pub fn normalize(self, x: BigRational) -> BigRational {
        match self {
            Ring::Rationals => x,
            Ring::Integers => {
                assert!(x.is_integer(), "non-integer entry {x} in an integer matrix");
                x
            }
            Ring::PrimeField(p) => {
                assert!(x.is_integer(), "non-integer entry {x} in a prime-field matrix");
                let p = BigInt::from(p);
                let r = x.to_integer().mod_floor(&p);
                BigRational::from_integer(r)
            }
        }
    }

    pub fn contains(self, x: &BigRational) -> bool {
        match self {
            Ring::Rationals => true,
            Ring::Integers | Ring::PrimeField(_) => x.is_integer(),
        }
    }

    pub fn add(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.normalize(a + b)
    }

    pub fn sub(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.normalize(a - b)
    }

    pub fn mul(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.normalize(a * b)
    }

    pub fn neg(self, a: &BigRational) -> BigRational {
        self.normalize(-a)
    }

    pub fn is_unit(self, a: &BigRational) -> bool {
        match self {
            Ring::Integers => a.is_integer() && a.to_integer().abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    /// Multiplicative inverse, when `a` is a unit.
    pub fn inv(self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            return None;
        }
        match self {
            Ring::Integers => self.is_unit(a).then(|| a.clone()),
            Ring::Rationals => Some(a.recip()),
            Ring::PrimeField(p) => {
                let p = BigInt::from(p);
                let a = a.to_integer().mod_floor(&p);
                if a.is_zero() {
                    return None;
                }
                let ext = a.extended_gcd(&p);
                debug_assert!(ext.gcd.is_one());
                Some(BigRational::from_integer(ext.x.mod_floor(&p)))
            }
        }
    }

    /// Exact division `a / b`, defined only when the quotient lies in the ring.
    pub fn div_exact(self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            return None;
        }
        match self {
            Ring::Integers => {
                let (n, d) = (a.to_integer(), b.to_integer());
                let (q, r) = n.div_rem(&d);
                r.is_zero().then(|| BigRational::from_integer(q))
            }
            Ring::Rationals => Some(a / b),
            Ring::PrimeField(_) => Some(self.mul(a, &self.inv(b)?)),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_requires_prime() {
        assert!(Ring::PrimeField(5).validate().is_ok());
        assert!(Ring::PrimeField(6).validate().is_err());
        assert!(Ring::PrimeField(1).validate().is_err());
        assert!(Ring::PrimeField(2).validate().is_ok());
    }

    #[test]
    fn mod_p_normalization_and_inverse() {
        let f5 = Ring::PrimeField(5);
        assert_eq!(f5.normalize(int(-3)), int(2));
        assert_eq!(f5.inv(&int(2)), Some(int(3)));
        assert_eq!(f5.inv(&int(0)), None);
        assert_eq!(f5.mul(&int(4), &int(4)), int(1));
    }

    #[test]
    fn integer_units_and_exact_division() {
        let z = Ring::Integers;
        assert!(z.is_unit(&int(-1)));
        assert!(!z.is_unit(&int(2)));
        assert_eq!(z.div_exact(&int(6), &int(3)), Some(int(2)));
        assert_eq!(z.div_exact(&int(7), &int(3)), None);
    }
}
