//! Residue fields F_f = A/fA for monic irreducible f.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::fq::Fq;
use super::irreducible::is_irreducible;
use super::poly::PolyA;
use super::ring::{Field, Ring, SignedTwist, Twist};
use crate::error::{Error, Result};

/// Shared data for one residue field.
pub struct FfCtx {
    modulus: PolyA,
    /// Column i holds θ^{iq} mod f, so x ↦ x^q is a matrix product.
    frob: Vec<PolyA>,
}

impl fmt::Debug for FfCtx {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "F_({})", self.modulus)
    }
}

impl PartialEq for FfCtx {
    fn eq(&self, o: &Self) -> bool {
        self.modulus == o.modulus
    }
}

impl FfCtx {
    /// Fails unless `f` is monic irreducible of positive degree.
    pub fn new(f: &PolyA) -> Result<Arc<FfCtx>> {
        if f.deg() < 1 || !f.is_monic() || !is_irreducible(f) {
            return Err(Error::NotIrreducible(f.to_string()));
        }
        Ok(Self::new_unchecked(f))
    }

    pub(crate) fn new_unchecked(f: &PolyA) -> Arc<FfCtx> {
        let fq = f.field();
        let d = f.deg() as usize;
        let tq = PolyA::monomial(fq, 1, fq.q() as usize).rem(f).unwrap();
        let mut frob = Vec::with_capacity(d);
        let mut cur = PolyA::one(fq);
        for _ in 0..d {
            frob.push(cur.clone());
            cur = (&cur * &tq).rem(f).unwrap();
        }
        Arc::new(FfCtx { modulus: f.clone(), frob })
    }

    pub fn modulus(&self) -> &PolyA {
        &self.modulus
    }
    pub fn degree(&self) -> u32 {
        self.modulus.deg() as u32
    }
    pub fn fq(&self) -> Fq {
        self.modulus.field()
    }
    /// Number of elements q^d.
    pub fn size(&self) -> u64 {
        (self.fq().q() as u64).pow(self.degree())
    }
}

#[derive(Clone)]
pub struct FfElem {
    ctx: Arc<FfCtx>,
    v: PolyA,
}

impl PartialEq for FfElem {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v && (Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx)
    }
}
impl Eq for FfElem {}

impl fmt::Debug for FfElem {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{} mod ({})", self.v, self.ctx.modulus)
    }
}

impl FfElem {
    pub fn new(ctx: &Arc<FfCtx>, v: &PolyA) -> Self {
        FfElem { ctx: ctx.clone(), v: v.rem(&ctx.modulus).unwrap() }
    }
    pub fn zero(ctx: &Arc<FfCtx>) -> Self {
        FfElem { ctx: ctx.clone(), v: PolyA::zero(ctx.fq()) }
    }
    pub fn one(ctx: &Arc<FfCtx>) -> Self {
        Self::new(ctx, &PolyA::one(ctx.fq()))
    }
    /// The class θ̄ of θ.
    pub fn theta(ctx: &Arc<FfCtx>) -> Self {
        Self::new(ctx, &PolyA::theta(ctx.fq()))
    }
    pub fn from_fq(ctx: &Arc<FfCtx>, a: u32) -> Self {
        Self::new(ctx, &PolyA::constant(ctx.fq(), a))
    }
    /// Element with the given F_q-coordinates in the basis 1, θ̄, …, θ̄^{d−1}.
    pub fn from_coords(ctx: &Arc<FfCtx>, c: &[u32]) -> Self {
        Self::new(ctx, &PolyA::new(ctx.fq(), c.to_vec()))
    }
    pub fn coords(&self) -> Vec<u32> {
        let d = self.ctx.degree() as usize;
        (0..d).map(|i| self.v.coeff(i)).collect()
    }
    pub fn ctx_arc(&self) -> &Arc<FfCtx> {
        &self.ctx
    }
    pub fn value(&self) -> &PolyA {
        &self.v
    }
    pub fn random<R: Rng + ?Sized>(ctx: &Arc<FfCtx>, rng: &mut R) -> Self {
        Self::new(ctx, &PolyA::random(ctx.fq(), ctx.degree() as usize, rng))
    }

    fn frob1(&self) -> FfElem {
        let fq = self.ctx.fq();
        let mut acc = PolyA::zero(fq);
        for (i, &c) in self.v.coeffs().iter().enumerate() {
            if c != 0 {
                acc = &acc + &self.ctx.frob[i].scale(c);
            }
        }
        FfElem { ctx: self.ctx.clone(), v: acc }
    }

    /// x ↦ x^{q^n} for n ≥ 0.
    pub fn frob(&self, n: u64) -> FfElem {
        let d = self.ctx.degree() as u64;
        let mut x = self.clone();
        for _ in 0..(n % d) {
            x = x.frob1();
        }
        x
    }

    /// x ↦ x^{q^n} for any integer n (F_f is perfect).
    pub fn frob_signed(&self, n: i64) -> FfElem {
        let d = self.ctx.degree() as i64;
        self.frob(n.rem_euclid(d) as u64)
    }

    /// Reduction of an element of A.
    pub fn reduce(ctx: &Arc<FfCtx>, a: &PolyA) -> Self {
        Self::new(ctx, a)
    }
}

impl Ring for FfElem {
    type Ctx = Arc<FfCtx>;
    fn ctx(&self) -> Arc<FfCtx> {
        self.ctx.clone()
    }
    fn zero_in(ctx: &Arc<FfCtx>) -> Self {
        Self::zero(ctx)
    }
    fn one_in(ctx: &Arc<FfCtx>) -> Self {
        Self::one(ctx)
    }
    fn int_in(ctx: &Arc<FfCtx>, n: i64) -> Self {
        Self::from_fq(ctx, ctx.fq().from_int(n))
    }
    fn characteristic(ctx: &Arc<FfCtx>) -> u32 {
        ctx.fq().p()
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        FfElem { ctx: self.ctx.clone(), v: &self.v + &o.v }
    }
    fn minus(&self, o: &Self) -> Self {
        FfElem { ctx: self.ctx.clone(), v: &self.v - &o.v }
    }
    fn times(&self, o: &Self) -> Self {
        FfElem { ctx: self.ctx.clone(), v: (&self.v * &o.v).rem(&self.ctx.modulus).unwrap() }
    }
    fn negate(&self) -> Self {
        FfElem { ctx: self.ctx.clone(), v: -&self.v }
    }
}

impl Field for FfElem {
    fn inverse(&self) -> Option<Self> {
        if self.v.is_zero() {
            return None;
        }
        let (g, s, _) = self.v.xgcd(&self.ctx.modulus);
        debug_assert!(g.is_one());
        Some(FfElem::new(&self.ctx, &s))
    }
}

impl Twist for FfElem {
    fn twist(&self, n: u32) -> Self {
        self.frob(n as u64)
    }
}

impl SignedTwist for FfElem {
    const PERFECT: bool = true;
    fn twist_i(&self, n: i64) -> Result<Self> {
        Ok(self.frob_signed(n))
    }
}

/// Elements of F_q viewed as a ring with trivial twist.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct FqElem {
    pub f: Fq,
    pub v: u32,
}

impl fmt::Debug for FqElem {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{}", self.v)
    }
}

impl FqElem {
    pub fn new(f: Fq, v: u32) -> Self {
        FqElem { f, v }
    }
}

impl Ring for FqElem {
    type Ctx = Fq;
    fn ctx(&self) -> Fq {
        self.f
    }
    fn zero_in(ctx: &Fq) -> Self {
        FqElem { f: *ctx, v: 0 }
    }
    fn one_in(ctx: &Fq) -> Self {
        FqElem { f: *ctx, v: 1 }
    }
    fn int_in(ctx: &Fq, n: i64) -> Self {
        FqElem { f: *ctx, v: ctx.from_int(n) }
    }
    fn characteristic(ctx: &Fq) -> u32 {
        ctx.p()
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn plus(&self, o: &Self) -> Self {
        FqElem { f: self.f, v: self.f.add(self.v, o.v) }
    }
    fn minus(&self, o: &Self) -> Self {
        FqElem { f: self.f, v: self.f.sub(self.v, o.v) }
    }
    fn times(&self, o: &Self) -> Self {
        FqElem { f: self.f, v: self.f.mul(self.v, o.v) }
    }
    fn negate(&self) -> Self {
        FqElem { f: self.f, v: self.f.neg(self.v) }
    }
}

impl Field for FqElem {
    fn inverse(&self) -> Option<Self> {
        self.f.inv(self.v).map(|v| FqElem { f: self.f, v })
    }
}

impl Twist for FqElem {
    fn twist(&self, _n: u32) -> Self {
        *self
    }
}

impl SignedTwist for FqElem {
    const PERFECT: bool = true;
    fn twist_i(&self, _n: i64) -> Result<Self> {
        Ok(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn frobenius_matches_power() {
        let f = Fq::prime(3).unwrap();
        let m = PolyA::from_ints(f, &[1, 2, 0, 1]); // θ³+2θ+1, irreducible over F_3
        let ctx = FfCtx::new(&m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x = FfElem::random(&ctx, &mut rng);
            assert_eq!(x.frob(1), x.pow_u(3));
            assert_eq!(x.frob(3), x);
            assert_eq!(x.frob_signed(-1).frob(1), x);
            if !x.is_zero() {
                assert!(x.times(&x.inverse().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        let f = Fq::prime(3).unwrap();
        assert!(FfCtx::new(&PolyA::from_ints(f, &[0, 0, 1])).is_err());
    }
}
