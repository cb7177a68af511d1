//! Minimal commutative-ring interface used by generic matrix, twisted
//! polynomial and symmetric-function code.
//!
//! Elements carry their own context (field handle, residue modulus), so a
//! zero or one can be produced from any sample element via [`Ring::ctx`].

use std::fmt::Debug;

pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Ctx: Clone + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    /// Image of an integer.
    fn int_in(ctx: &Self::Ctx, n: i64) -> Self;
    fn characteristic(ctx: &Self::Ctx) -> u32;

    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;

    fn zero_like(&self) -> Self {
        Self::zero_in(&self.ctx())
    }
    fn one_like(&self) -> Self {
        Self::one_in(&self.ctx())
    }
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
    fn pow_u(&self, e: u64) -> Self {
        let mut r = self.one_like();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.times(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.times(&b);
            }
        }
        r
    }
}

/// Rings in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inverse(&self) -> Option<Self>;
    fn divide(&self, o: &Self) -> Option<Self> {
        o.inverse().map(|i| self.times(&i))
    }
}

/// Rings carrying the Frobenius twist x ↦ x^(n) for n ≥ 0.
pub trait Twist: Ring {
    fn twist(&self, n: u32) -> Self;
}

/// Twists by any integer; rings that are not perfect reject negative ones.
pub trait SignedTwist: Twist {
    /// Whether every twist is invertible (F_f, F_q).
    const PERFECT: bool;
    fn twist_i(&self, n: i64) -> crate::Result<Self>;
}
