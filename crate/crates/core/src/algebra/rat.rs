//! Reduced fractions in K = F_q(θ) with monic denominators.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::fq::Fq;
use super::poly::{PolyA, NEG_INF};
use super::ring::{Field, Ring, SignedTwist, Twist};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatK {
    num: PolyA,
    den: PolyA,
}

impl RatK {
    /// Reduce `num/den`; fails on a zero denominator.
    pub fn new(num: PolyA, den: PolyA) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.field()));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lc = d.lc();
        if lc != 1 {
            let i = d.field().inv(lc).expect("unit");
            n = n.scale(i);
            d = d.scale(i);
        }
        Ok(RatK { num: n, den: d })
    }

    pub fn from_poly(a: PolyA) -> Self {
        let f = a.field();
        RatK { num: a, den: PolyA::one(f) }
    }
    pub fn zero(f: Fq) -> Self {
        Self::from_poly(PolyA::zero(f))
    }
    pub fn one(f: Fq) -> Self {
        Self::from_poly(PolyA::one(f))
    }
    pub fn constant(f: Fq, a: u32) -> Self {
        Self::from_poly(PolyA::constant(f, a))
    }
    pub fn theta(f: Fq) -> Self {
        Self::from_poly(PolyA::theta(f))
    }

    pub fn field(&self) -> Fq {
        self.num.field()
    }
    pub fn num(&self) -> &PolyA {
        &self.num
    }
    pub fn den(&self) -> &PolyA {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }
    /// The polynomial value when the denominator is 1.
    pub fn as_poly(&self) -> Option<&PolyA> {
        self.is_poly().then_some(&self.num)
    }
    /// deg num − deg den, with [`NEG_INF`] for zero.
    pub fn deg(&self) -> i64 {
        if self.is_zero() {
            NEG_INF
        } else {
            self.num.deg() - self.den.deg()
        }
    }

    pub fn scale(&self, a: u32) -> Self {
        RatK { num: self.num.scale(a), den: if a == 0 { PolyA::one(self.field()) } else { self.den.clone() } }
    }

    pub fn mul_poly(&self, a: &PolyA) -> Self {
        if a.is_zero() || self.is_zero() {
            return Self::zero(self.field());
        }
        let g = a.gcd(&self.den);
        if g.is_constant() {
            return RatK { num: &self.num * a, den: self.den.clone() };
        }
        let a2 = a.exact_div(&g).expect("gcd divides");
        RatK { num: &self.num * &a2, den: self.den.exact_div(&g).expect("gcd divides") }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.lc();
        let i = self.field().inv(lc).expect("unit");
        Ok(RatK { num: self.den.scale(i), den: self.num.scale(i) })
    }

    pub fn try_div(&self, o: &RatK) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u64) -> Self {
        RatK { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Integer powers; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// θ ↦ θ^{q^n}; reduced fractions stay reduced.
    pub fn twist_n(&self, n: u32) -> Self {
        RatK { num: self.num.twist_n(n), den: self.den.twist_n(n) }
    }

    pub fn twist_checked(&self, n: i64) -> Result<Self> {
        if n < 0 {
            Err(Error::NegativeTwist(n))
        } else {
            Ok(self.twist_n(n as u32))
        }
    }

    /// d/dθ by the quotient rule.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatK::new(n, self.den.square()).expect("nonzero denominator")
    }

    fn add_ref(&self, o: &RatK) -> RatK {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatK::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        let g = self.den.gcd(&o.den);
        if g.is_constant() {
            let n = &(&self.num * &o.den) + &(&o.num * &self.den);
            return RatK { num: n, den: &self.den * &o.den }.normalized_zero();
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = o.den.exact_div(&g).expect("gcd divides");
        let t = &(&self.num * &d1) + &(&o.num * &b1);
        if t.is_zero() {
            return Self::zero(self.field());
        }
        let g2 = t.gcd(&g);
        if g2.is_constant() {
            RatK { num: t, den: &b1 * &o.den }
        } else {
            let den = &b1 * &o.den.exact_div(&g2).expect("divides");
            RatK { num: t.exact_div(&g2).expect("divides"), den }
        }
    }

    fn normalized_zero(self) -> Self {
        if self.num.is_zero() {
            Self::zero(self.field())
        } else {
            self
        }
    }

    fn mul_ref(&self, o: &RatK) -> RatK {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field());
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (a, d) = if g1.is_constant() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.exact_div(&g1).unwrap(), o.den.exact_div(&g1).unwrap())
        };
        let (c, b) = if g2.is_constant() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.exact_div(&g2).unwrap(), self.den.exact_div(&g2).unwrap())
        };
        let den = &b * &d;
        let mut num = &a * &c;
        // leading coefficients of b and d are units; keep the denominator monic
        let lc = den.lc();
        if lc != 1 {
            let i = self.field().inv(lc).unwrap();
            num = num.scale(i);
            return RatK { num, den: den.scale(i) };
        }
        RatK { num, den }
    }
}

impl From<PolyA> for RatK {
    fn from(a: PolyA) -> Self {
        RatK::from_poly(a)
    }
}

impl fmt::Display for RatK {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(fm, "{}", self.num)
        } else {
            write!(fm, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatK {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{self}")
    }
}

impl<'a> Add<&'a RatK> for &'a RatK {
    type Output = RatK;
    fn add(self, o: &'a RatK) -> RatK {
        self.add_ref(o)
    }
}
impl<'a> Sub<&'a RatK> for &'a RatK {
    type Output = RatK;
    fn sub(self, o: &'a RatK) -> RatK {
        self.add_ref(&-o)
    }
}
impl<'a> Mul<&'a RatK> for &'a RatK {
    type Output = RatK;
    fn mul(self, o: &'a RatK) -> RatK {
        self.mul_ref(o)
    }
}
/// Panics on division by zero; use [`RatK::try_div`] for a checked version.
impl<'a> Div<&'a RatK> for &'a RatK {
    type Output = RatK;
    fn div(self, o: &'a RatK) -> RatK {
        self.try_div(o).expect("division by zero in K")
    }
}
impl Neg for &RatK {
    type Output = RatK;
    fn neg(self) -> RatK {
        RatK { num: -&self.num, den: self.den.clone() }
    }
}
impl Add for RatK {
    type Output = RatK;
    fn add(self, o: RatK) -> RatK {
        self.add_ref(&o)
    }
}
impl Sub for RatK {
    type Output = RatK;
    fn sub(self, o: RatK) -> RatK {
        &self - &o
    }
}
impl Mul for RatK {
    type Output = RatK;
    fn mul(self, o: RatK) -> RatK {
        self.mul_ref(&o)
    }
}
impl Div for RatK {
    type Output = RatK;
    fn div(self, o: RatK) -> RatK {
        &self / &o
    }
}
impl Neg for RatK {
    type Output = RatK;
    fn neg(self) -> RatK {
        -&self
    }
}

impl Ring for RatK {
    type Ctx = Fq;
    fn ctx(&self) -> Fq {
        self.field()
    }
    fn zero_in(ctx: &Fq) -> Self {
        Self::zero(*ctx)
    }
    fn one_in(ctx: &Fq) -> Self {
        Self::one(*ctx)
    }
    fn int_in(ctx: &Fq, n: i64) -> Self {
        Self::constant(*ctx, ctx.from_int(n))
    }
    fn characteristic(ctx: &Fq) -> u32 {
        ctx.p()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl Field for RatK {
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Twist for RatK {
    fn twist(&self, n: u32) -> Self {
        self.twist_n(n)
    }
}

impl SignedTwist for RatK {
    const PERFECT: bool = false;
    fn twist_i(&self, n: i64) -> Result<Self> {
        self.twist_checked(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_rat(f: Fq, rng: &mut ChaCha8Rng) -> RatK {
        loop {
            let d = PolyA::random(f, 4, rng);
            if !d.is_zero() {
                return RatK::new(PolyA::random(f, 5, rng), d).unwrap();
            }
        }
    }

    #[test]
    fn arithmetic_matches_cross_multiplication() {
        let f = Fq::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = rand_rat(f, &mut rng);
            let b = rand_rat(f, &mut rng);
            let s = &a + &b;
            let naive = RatK::new(&(a.num() * b.den()) + &(b.num() * a.den()), a.den() * b.den()).unwrap();
            assert_eq!(s, naive);
            let p = &a * &b;
            assert_eq!(p, RatK::new(a.num() * b.num(), a.den() * b.den()).unwrap());
            assert!(p.den().is_monic());
            assert!(p.num().gcd(p.den()).is_constant());
        }
    }

    #[test]
    fn derivative_of_inverse() {
        let f = Fq::prime(3).unwrap();
        let x = RatK::new(PolyA::one(f), PolyA::from_ints(f, &[-1, 1])).unwrap();
        // d/dθ 1/(θ−1) = −1/(θ−1)²
        let expect = -&x.pow(2);
        assert_eq!(x.derivative(), expect);
    }

    #[test]
    fn twist_is_multiplicative() {
        let f = Fq::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let a = rand_rat(f, &mut rng);
            let b = rand_rat(f, &mut rng);
            assert_eq!((&a * &b).twist_n(1), &a.twist_n(1) * &b.twist_n(1));
            assert_eq!((&a + &b).twist_n(2), &a.twist_n(2) + &b.twist_n(2));
        }
    }
}
