//! Rational functions in t over K whose denominators split into linear
//! factors t − c with c ∈ A.
//!
//! Canonical form: N(t) / (a(θ) · ∏ (t − c_j)^{e_j}) with N ∈ A[t], a monic,
//! no c_j a root of N and gcd(a, content N) = 1. This covers every B_m(t),
//! its twists and its partial derivatives, and makes equality structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fq::Fq;
use super::poly::PolyA;
use super::rat::RatK;
use super::ring::{Ring, SignedTwist, Twist};
use crate::error::{Error, Result};

/// Polynomials in t with coefficients in A, constant term first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyAT {
    f: Fq,
    c: Vec<PolyA>,
}

impl PolyAT {
    pub fn new(f: Fq, mut c: Vec<PolyA>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        PolyAT { f, c }
    }
    pub fn zero(f: Fq) -> Self {
        PolyAT { f, c: Vec::new() }
    }
    pub fn constant(a: PolyA) -> Self {
        let f = a.field();
        Self::new(f, vec![a])
    }
    /// The variable t.
    pub fn t(f: Fq) -> Self {
        PolyAT { f, c: vec![PolyA::zero(f), PolyA::one(f)] }
    }
    pub fn coeffs(&self) -> &[PolyA] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn deg_t(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn add(&self, o: &PolyAT) -> PolyAT {
        let n = self.c.len().max(o.c.len());
        let z = PolyA::zero(self.f);
        let c = (0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect();
        Self::new(self.f, c)
    }
    pub fn neg(&self) -> PolyAT {
        PolyAT { f: self.f, c: self.c.iter().map(|x| -x).collect() }
    }
    pub fn mul(&self, o: &PolyAT) -> PolyAT {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.f);
        }
        let mut c = vec![PolyA::zero(self.f); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(x * y);
            }
        }
        Self::new(self.f, c)
    }
    pub fn scale(&self, a: &PolyA) -> PolyAT {
        Self::new(self.f, self.c.iter().map(|x| x * a).collect())
    }
    /// Multiply by (t − c).
    pub fn mul_linear(&self, c: &PolyA) -> PolyAT {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![PolyA::zero(self.f); self.c.len() + 1];
        for (i, x) in self.c.iter().enumerate() {
            out[i + 1] = &out[i + 1] + x;
            out[i] = &out[i] - &(x * c);
        }
        Self::new(self.f, out)
    }
    /// Quotient by (t − c), assuming exact divisibility.
    fn div_linear(&self, c: &PolyA) -> PolyAT {
        let n = self.c.len();
        let mut out = vec![PolyA::zero(self.f); n - 1];
        let mut carry = PolyA::zero(self.f);
        for i in (1..n).rev() {
            carry = &self.c[i] + &(&carry * c);
            out[i - 1] = carry.clone();
        }
        Self::new(self.f, out)
    }
    /// Value at t = v ∈ A.
    pub fn eval(&self, v: &PolyA) -> PolyA {
        let mut acc = PolyA::zero(self.f);
        for x in self.c.iter().rev() {
            acc = &(&acc * v) + x;
        }
        acc
    }
    /// Value at t = v ∈ K.
    pub fn eval_rat(&self, v: &RatK) -> RatK {
        let mut acc = RatK::zero(self.f);
        for x in self.c.iter().rev() {
            acc = &(&acc * v) + &RatK::from_poly(x.clone());
        }
        acc
    }
    /// Monic gcd of the coefficients.
    pub fn content(&self) -> PolyA {
        let mut g = PolyA::zero(self.f);
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }
    pub fn twist(&self, n: u32) -> PolyAT {
        PolyAT { f: self.f, c: self.c.iter().map(|x| x.twist_n(n)).collect() }
    }
    pub fn d_t(&self) -> PolyAT {
        let f = self.f;
        let c = self.c.iter().enumerate().skip(1).map(|(i, x)| x.scale(f.from_int(i as i64))).collect();
        Self::new(f, c)
    }
    pub fn d_theta(&self) -> PolyAT {
        Self::new(self.f, self.c.iter().map(|x| x.derivative()).collect())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BivarRat {
    num: PolyAT,
    a: PolyA,
    lin: Vec<(PolyA, u32)>,
}

/// Partial derivative variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    T,
    Theta,
}

impl BivarRat {
    /// Build and reduce N / (a · ∏ (t − c)^e).
    pub fn from_parts(num: PolyAT, a: PolyA, lin: Vec<(PolyA, u32)>) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut merged: Vec<(PolyA, u32)> = Vec::new();
        for (c, e) in lin {
            if e == 0 {
                continue;
            }
            match merged.iter_mut().find(|(x, _)| *x == c) {
                Some(entry) => entry.1 += e,
                None => merged.push((c, e)),
            }
        }
        let lc = a.lc();
        let inv = a.field().inv(lc).expect("unit");
        let mut s = BivarRat { num: num.scale(&PolyA::constant(a.field(), inv)), a: a.scale(inv), lin: merged };
        s.reduce();
        Ok(s)
    }

    fn reduce(&mut self) {
        let f = self.a.field();
        if self.num.is_zero() {
            self.a = PolyA::one(f);
            self.lin.clear();
            return;
        }
        for (c, e) in self.lin.iter_mut() {
            while *e > 0 && self.num.eval(c).is_zero() {
                self.num = self.num.div_linear(c);
                *e -= 1;
            }
        }
        self.lin.retain(|(_, e)| *e > 0);
        self.lin.sort_by(|x, y| x.0.canonical_cmp(&y.0));
        if !self.a.is_one() {
            let g = self.a.gcd(&self.num.content());
            if !g.is_constant() {
                self.a = self.a.exact_div(&g).unwrap();
                self.num = PolyAT::new(f, self.num.c.iter().map(|x| x.exact_div(&g).unwrap()).collect());
            }
        }
    }

    pub fn zero(f: Fq) -> Self {
        BivarRat { num: PolyAT::zero(f), a: PolyA::one(f), lin: Vec::new() }
    }
    pub fn one(f: Fq) -> Self {
        Self::from_rat(&RatK::one(f))
    }
    pub fn from_poly_t(n: PolyAT) -> Self {
        let f = n.f;
        Self::from_parts(n, PolyA::one(f), Vec::new()).unwrap()
    }
    pub fn from_rat(x: &RatK) -> Self {
        let f = x.field();
        Self::from_parts(PolyAT::constant(x.num().clone()), x.den().clone(), Vec::new()).unwrap_or(Self::zero(f))
    }
    pub fn t(f: Fq) -> Self {
        Self::from_poly_t(PolyAT::t(f))
    }
    /// 1 / (t − c)^e.
    pub fn inv_linear(c: &PolyA, e: u32) -> Self {
        let f = c.field();
        Self::from_parts(PolyAT::constant(PolyA::one(f)), PolyA::one(f), vec![(c.clone(), e)]).unwrap()
    }

    pub fn field(&self) -> Fq {
        self.a.field()
    }
    pub fn numerator(&self) -> &PolyAT {
        &self.num
    }
    pub fn theta_denominator(&self) -> &PolyA {
        &self.a
    }
    pub fn linear_factors(&self) -> &[(PolyA, u32)] {
        &self.lin
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Full denominator a · ∏ (t − c)^e as a polynomial in t.
    pub fn denominator(&self) -> PolyAT {
        let mut d = PolyAT::constant(self.a.clone());
        for (c, e) in &self.lin {
            for _ in 0..*e {
                d = d.mul_linear(c);
            }
        }
        d
    }

    /// Value at t = v; fails when the denominator vanishes there.
    pub fn eval_t(&self, v: &RatK) -> Result<RatK> {
        let mut den = RatK::from_poly(self.a.clone());
        for (c, e) in &self.lin {
            let x = v - &RatK::from_poly(c.clone());
            if x.is_zero() {
                return Err(Error::DivisionByZero);
            }
            den = &den * &x.pow(*e as u64);
        }
        self.num.eval_rat(v).try_div(&den)
    }

    /// Value at t = θ.
    pub fn at_theta(&self) -> Result<RatK> {
        self.eval_t(&RatK::theta(self.field()))
    }

    /// θ ↦ θ^{q^n} on all coefficients; t is fixed.
    pub fn twist_n(&self, n: u32) -> Self {
        let mut lin: Vec<(PolyA, u32)> = self.lin.iter().map(|(c, e)| (c.twist_n(n), *e)).collect();
        lin.sort_by(|x, y| x.0.canonical_cmp(&y.0));
        BivarRat { num: self.num.twist(n), a: self.a.twist_n(n), lin }
    }

    pub fn twist_checked(&self, n: i64) -> Result<Self> {
        if n < 0 {
            Err(Error::NegativeTwist(n))
        } else {
            Ok(self.twist_n(n as u32))
        }
    }

    fn with_num(&self, num: PolyAT) -> Self {
        Self::from_parts(num, self.a.clone(), self.lin.clone()).unwrap()
    }

    /// First hyperderivative (the formal partial derivative) in t or θ.
    pub fn hyperderivative(&self, var: Var) -> Self {
        let f = self.field();
        if self.is_zero() {
            return self.clone();
        }
        let x = self.with_num(PolyAT::constant(PolyA::one(f)));
        match var {
            Var::T => {
                // ∂_t(N/D) = N'/D − (N/D) Σ e/(t − c)
                let mut s = Self::zero(f);
                for (c, e) in &self.lin {
                    s = &s + &Self::inv_linear(c, 1).scale_fq(f.from_int(*e as i64));
                }
                &x.with_num(self.num.d_t()) - &(self * &s)
            }
            Var::Theta => {
                // ∂_θ(N/D) = ∂_θN/D + (N/D)(−a'/a + Σ e c'/(t − c))
                let mut s = Self::from_rat(&-&RatK::new(self.a.derivative(), self.a.clone()).unwrap());
                for (c, e) in &self.lin {
                    let dc = c.derivative().scale(f.from_int(*e as i64));
                    if !dc.is_zero() {
                        s = &s + &(&Self::inv_linear(c, 1) * &Self::from_rat(&RatK::from_poly(dc)));
                    }
                }
                &x.with_num(self.num.d_theta()) + &(self * &s)
            }
        }
    }

    pub fn scale_fq(&self, k: u32) -> Self {
        let f = self.field();
        if k == 0 {
            return Self::zero(f);
        }
        BivarRat { num: self.num.scale(&PolyA::constant(f, k)), a: self.a.clone(), lin: self.lin.clone() }
    }

    fn add_ref(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let g = self.a.gcd(&o.a);
        let a = &self.a * &o.a.exact_div(&g).unwrap();
        let mut lin: Vec<(PolyA, u32)> = self.lin.clone();
        for (c, e) in &o.lin {
            match lin.iter_mut().find(|(x, _)| x == c) {
                Some(entry) => entry.1 = entry.1.max(*e),
                None => lin.push((c.clone(), *e)),
            }
        }
        let lift = |x: &Self| -> PolyAT {
            let mut n = x.num.scale(&a.exact_div(&x.a).unwrap());
            for (c, e) in &lin {
                let have = x.lin.iter().find(|(y, _)| y == c).map_or(0, |p| p.1);
                for _ in have..*e {
                    n = n.mul_linear(c);
                }
            }
            n
        };
        let num = lift(self).add(&lift(o));
        Self::from_parts(num, a, lin).unwrap()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field());
        }
        let mut lin = self.lin.clone();
        lin.extend(o.lin.iter().cloned());
        Self::from_parts(self.num.mul(&o.num), &self.a * &o.a, lin).unwrap()
    }

    fn neg_ref(&self) -> Self {
        BivarRat { num: self.num.neg(), a: self.a.clone(), lin: self.lin.clone() }
    }
}

impl fmt::Display for BivarRat {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| match i {
                0 => format!("({x})"),
                1 => format!("({x})*t"),
                _ => format!("({x})*t^{i}"),
            })
            .collect();
        let num = if terms.is_empty() { "0".to_string() } else { terms.join("+") };
        let mut den = vec![format!("({})", self.a)];
        for (c, e) in &self.lin {
            den.push(if *e == 1 { format!("(t-({c}))") } else { format!("(t-({c}))^{e}") });
        }
        write!(fm, "[{num}]/[{}]", den.join("*"))
    }
}

impl fmt::Debug for BivarRat {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{self}")
    }
}

impl<'a> Add<&'a BivarRat> for &'a BivarRat {
    type Output = BivarRat;
    fn add(self, o: &'a BivarRat) -> BivarRat {
        self.add_ref(o)
    }
}
impl<'a> Sub<&'a BivarRat> for &'a BivarRat {
    type Output = BivarRat;
    fn sub(self, o: &'a BivarRat) -> BivarRat {
        self.add_ref(&o.neg_ref())
    }
}
impl<'a> Mul<&'a BivarRat> for &'a BivarRat {
    type Output = BivarRat;
    fn mul(self, o: &'a BivarRat) -> BivarRat {
        self.mul_ref(o)
    }
}
impl Neg for &BivarRat {
    type Output = BivarRat;
    fn neg(self) -> BivarRat {
        self.neg_ref()
    }
}

impl Ring for BivarRat {
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
        Self::from_rat(&RatK::constant(*ctx, ctx.from_int(n)))
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
        self.add_ref(&o.neg_ref())
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn negate(&self) -> Self {
        self.neg_ref()
    }
}

impl Twist for BivarRat {
    fn twist(&self, n: u32) -> Self {
        self.twist_n(n)
    }
}

impl SignedTwist for BivarRat {
    const PERFECT: bool = false;
    fn twist_i(&self, n: i64) -> Result<Self> {
        self.twist_checked(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    #[test]
    fn derivative_of_simple_pole() {
        let f = f3();
        let th = PolyA::theta(f);
        let x = BivarRat::inv_linear(&th, 1);
        let expect = -&BivarRat::inv_linear(&th, 2);
        assert_eq!(x.hyperderivative(Var::T), expect);
    }

    #[test]
    fn theta_power_rule() {
        let f = f3();
        let th2 = PolyA::theta(f).pow(2);
        let x = BivarRat::from_poly_t(PolyAT::new(f, vec![PolyA::zero(f), th2]));
        let expect = BivarRat::from_poly_t(PolyAT::new(f, vec![PolyA::zero(f), PolyA::from_ints(f, &[0, 2])]));
        assert_eq!(x.hyperderivative(Var::Theta), expect);
        let c = BivarRat::from_rat(&RatK::from_poly(PolyA::theta(f).pow(3)));
        assert!(c.hyperderivative(Var::T).is_zero());
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let f = f3();
        let th = PolyA::theta(f);
        let x = BivarRat::inv_linear(&th, 1);
        let t_minus = BivarRat::from_poly_t(PolyAT::t(f).add(&PolyAT::constant(-&th)));
        assert_eq!(&x * &t_minus, BivarRat::one(f));
        let s = &x + &x;
        assert_eq!(s, BivarRat::inv_linear(&th, 1).scale_fq(2));
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn evaluation_and_twist() {
        let f = f3();
        let th = PolyA::theta(f);
        let c = th.twist_n(1);
        let x = BivarRat::inv_linear(&c, 1);
        let v = x.at_theta().unwrap();
        assert_eq!(v, RatK::new(PolyA::one(f), &th - &c).unwrap());
        assert_eq!(x.twist_n(1), BivarRat::inv_linear(&c.twist_n(1), 1));
    }
}
