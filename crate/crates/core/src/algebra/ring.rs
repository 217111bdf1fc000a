use std::fmt::Debug;

use super::field::{Field, Scalar};

/// A commutative ring given by a context object that owns its parameters.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        let one = self.one();
        let mut acc = self.zero();
        let mut base = one;
        let mut k = v.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if v < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }
}

/// A ring in which every nonzero element is invertible.
pub trait FieldOps: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

impl Ring for Field {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Field::zero(self)
    }
    fn one(&self) -> Scalar {
        Field::one(self)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> Scalar {
        Field::from_i64(self, v)
    }
}

impl FieldOps for Field {
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        a.inv()
    }
}
