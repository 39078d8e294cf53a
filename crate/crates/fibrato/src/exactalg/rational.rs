use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{field_is_gcd_domain, Domain, Field, Ring};

pub type Q = BigRational;

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn from_int(&self, n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Q) -> bool {
        a.is_one()
    }
    fn fmt_elem(&self, a: &Q) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

impl Domain for Rationals {
    fn div_exact(&self, a: &Q, b: &Q) -> Option<Q> {
        if b.is_zero() {
            None
        } else {
            Some(a / b)
        }
    }
    fn is_unit(&self, a: &Q) -> bool {
        !a.is_zero()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Q) -> Q {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn div(&self, a: &Q, b: &Q) -> Q {
        a / b
    }
}

field_is_gcd_domain!(Rationals);

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Reduce a rational modulo `p`; `None` when `p` divides the denominator.
pub fn reduce_mod(x: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let mut num = x.numer() % &pb;
    if num.is_negative() {
        num += &pb;
    }
    let mut den = x.denom() % &pb;
    if den.is_negative() {
        den += &pb;
    }
    let num: u64 = num.try_into().ok()?;
    let den: u64 = den.try_into().ok()?;
    if den == 0 {
        return None;
    }
    let f = super::primefield::PrimeField::new_unchecked(p);
    Some(f.mul(&num, &f.inv(&den)))
}
