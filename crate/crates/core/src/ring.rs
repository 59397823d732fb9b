//! Minimal algebraic interfaces shared by the table fields, the extension
//! fields and the multivariate polynomial ring.
//!
//! Elements are plain values and all arithmetic goes through a context
//! object, because every concrete ring here needs runtime data (log tables,
//! a modulus, a variable count) to operate.

use std::fmt::Debug;

/// A commutative ring with identity, operated through a context.
pub trait RingOps {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical map Z -> ring.
    fn from_int(&self, c: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Rings in which exact division can be attempted (integral domains).
pub trait ExactDivOps: RingOps {
    /// `Some(a / b)` when `b` divides `a`, `None` otherwise.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

/// Fields.
pub trait FieldOps: ExactDivOps {
    /// Multiplicative inverse; callers guarantee `a != 0`.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The prime field F_3 with elements `0, 1, 2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct F3;

impl RingOps for F3 {
    type Elem = u8;

    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn from_int(&self, c: i64) -> u8 {
        c.rem_euclid(3) as u8
    }
    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }
    fn add(&self, a: &u8, b: &u8) -> u8 {
        (a + b) % 3
    }
    fn sub(&self, a: &u8, b: &u8) -> u8 {
        (a + 3 - b) % 3
    }
    fn neg(&self, a: &u8) -> u8 {
        (3 - a) % 3
    }
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        a * b % 3
    }
}

impl ExactDivOps for F3 {
    fn div_exact(&self, a: &u8, b: &u8) -> Option<u8> {
        (*b != 0).then(|| a * b % 3)
    }
}

impl FieldOps for F3 {
    fn inv(&self, a: &u8) -> u8 {
        assert!(*a != 0, "inverse of zero");
        *a
    }
}
