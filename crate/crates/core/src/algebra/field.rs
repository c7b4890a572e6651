use crate::algebra::Q;
use num_traits::{One, Zero};

/// Commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + core::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_q(q: &Q) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_q(&Q::from_integer(n.into()))
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

pub trait Field: Ring {
    /// `None` exactly when `self` is zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}
