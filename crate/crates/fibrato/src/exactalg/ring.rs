//! Ring descriptors.
//!
//! Elements are plain data; all arithmetic goes through a descriptor value so
//! that the same element type can live in differently parameterized rings
//! (e.g. `u64` residues modulo different primes).

use std::fmt::Debug;

pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Integral domain with exact division.
pub trait Domain: Ring {
    /// `Some(q)` with `q * b == a`, `None` when `b` does not divide `a`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn is_unit(&self, a: &Self::Elem) -> bool;
}

pub trait Field: Domain {
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

pub trait GcdDomain: Domain {
    /// Normalized gcd; `gcd(0, 0) == 0`.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Canonical associate (monic, positive, ...).
    fn normalize(&self, a: &Self::Elem) -> Self::Elem;
}

pub trait EuclideanDomain: GcdDomain {
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// Euclidean size; `None` for zero.
    fn size(&self, a: &Self::Elem) -> Option<usize>;
}

/// Field gcd: every nonzero element is a unit.
pub(crate) fn field_gcd<F: Field>(f: &F, a: &F::Elem, b: &F::Elem) -> F::Elem {
    if f.is_zero(a) && f.is_zero(b) {
        f.zero()
    } else {
        f.one()
    }
}

pub(crate) fn field_normalize<F: Field>(f: &F, a: &F::Elem) -> F::Elem {
    if f.is_zero(a) {
        f.zero()
    } else {
        f.one()
    }
}

macro_rules! field_is_gcd_domain {
    ($t:ty) => {
        impl $crate::exactalg::ring::GcdDomain for $t {
            fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
                $crate::exactalg::ring::field_gcd(self, a, b)
            }
            fn normalize(&self, a: &Self::Elem) -> Self::Elem {
                $crate::exactalg::ring::field_normalize(self, a)
            }
        }
    };
}
pub(crate) use field_is_gcd_domain;
