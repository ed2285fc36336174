//! Minimal commutative-ring interface shared by ring elements and fractions,
//! so matrices and words can be built over either.

use std::fmt::{Debug, Display};

use crate::ring::RingElem;

pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl Scalar for RingElem {
    fn zero_like(&self) -> Self {
        RingElem::zero_like(self)
    }

    fn one_like(&self) -> Self {
        RingElem::one_like(self)
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        RingElem::is_zero(self)
    }

    fn is_one(&self) -> bool {
        RingElem::is_one(self)
    }
}

/// Image of an integer under the unique ring map from `Z`.
pub fn from_bigint<E: Scalar>(one: &E, n: &num_bigint::BigInt) -> E {
    use num_traits::Signed;
    let mut acc = one.zero_like();
    let mut pow = one.clone();
    let mut m = n.abs();
    let two = num_bigint::BigInt::from(2);
    while m > num_bigint::BigInt::from(0) {
        if &m % &two == num_bigint::BigInt::from(1) {
            acc = acc.add(&pow);
        }
        m /= &two;
        if m > num_bigint::BigInt::from(0) {
            pow = pow.add(&pow);
        }
    }
    if n.is_negative() {
        acc.neg()
    } else {
        acc
    }
}
