//! Dense univariate polynomials over F_q in the variable θ (the ring A).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::fq::Fq;
use super::ring::{Ring, SignedTwist, Twist};
use crate::error::{Error, Result};

/// Degree assigned to the zero polynomial.
pub const NEG_INF: i64 = i64::MIN / 4;

/// Element of A = F_q[θ], coefficients stored constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyA {
    f: Fq,
    c: Vec<u32>,
}

impl std::hash::Hash for Fq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p().hash(state);
        self.modulus().hash(state);
    }
}

const KARATSUBA_CUTOFF: usize = 48;

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn school_prime(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // iterate over the sparser operand in the outer loop
    let (a, b) = if a.iter().filter(|&&x| x != 0).count() <= b.iter().filter(|&&x| x != 0).count() {
        (a, b)
    } else {
        (b, a)
    };
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    let mut pending = 0u32;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u64;
        for (slot, &y) in acc[i..].iter_mut().zip(b) {
            *slot += x * y as u64;
        }
        pending += 1;
        // keep accumulators far from overflow
        if pending == 1 << 20 {
            for s in acc.iter_mut() {
                *s %= p as u64;
            }
            pending = 0;
        }
    }
    acc.into_iter().map(|s| (s % p as u64) as u32).collect()
}

fn add_into(dst: &mut [u32], src: &[u32], p: u32) {
    for (d, &s) in dst.iter_mut().zip(src) {
        let t = *d + s;
        *d = if t >= p { t - p } else { t };
    }
}

fn sub_into(dst: &mut [u32], src: &[u32], p: u32) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = if *d >= s { *d - s } else { *d + p - s };
    }
}

fn kara_prime(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.len() < KARATSUBA_CUTOFF || b.len() < KARATSUBA_CUTOFF {
        return school_prime(a, b, p);
    }
    let n = a.len().max(b.len());
    let h = n / 2;
    if a.len() <= h || b.len() <= h {
        // unbalanced: split only the longer operand
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = vec![0u32; long.len() + short.len() - 1];
        let mut start = 0;
        while start < long.len() {
            let end = (start + short.len()).min(long.len());
            let part = kara_prime(&long[start..end], short, p);
            add_into(&mut out[start..start + part.len()], &part, p);
            start = end;
        }
        return out;
    }
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let z0 = kara_prime(a0, b0, p);
    let z2 = kara_prime(a1, b1, p);
    let mut sa = a0.to_vec();
    sa.resize(h.max(a1.len()), 0);
    add_into(&mut sa, a1, p);
    let mut sb = b0.to_vec();
    sb.resize(h.max(b1.len()), 0);
    add_into(&mut sb, b1, p);
    let mut z1 = kara_prime(&sa, &sb, p);
    sub_into(&mut z1[..z0.len()], &z0, p);
    sub_into(&mut z1[..z2.len()], &z2, p);
    let mut out = vec![0u32; a.len() + b.len() - 1];
    add_into(&mut out[..z0.len()], &z0, p);
    add_into(&mut out[h..h + z1.len().min(a.len() + b.len() - 1 - h)], &z1, p);
    add_into(&mut out[2 * h..2 * h + z2.len()], &z2, p);
    out
}

impl PolyA {
    pub fn new(f: Fq, mut c: Vec<u32>) -> Self {
        trim(&mut c);
        PolyA { f, c }
    }
    pub fn zero(f: Fq) -> Self {
        PolyA { f, c: Vec::new() }
    }
    pub fn one(f: Fq) -> Self {
        PolyA { f, c: vec![1] }
    }
    pub fn constant(f: Fq, a: u32) -> Self {
        Self::new(f, vec![a])
    }
    pub fn theta(f: Fq) -> Self {
        PolyA { f, c: vec![0, 1] }
    }
    /// a·θ^n
    pub fn monomial(f: Fq, a: u32, n: usize) -> Self {
        let mut c = vec![0u32; n + 1];
        c[n] = a;
        Self::new(f, c)
    }
    pub fn from_ints(f: Fq, c: &[i64]) -> Self {
        Self::new(f, c.iter().map(|&x| f.from_int(x)).collect())
    }

    pub fn field(&self) -> Fq {
        self.f
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with the zero polynomial at [`NEG_INF`].
    pub fn deg(&self) -> i64 {
        self.degree().map_or(NEG_INF, |d| d as i64)
    }
    pub fn lc(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    pub fn make_monic(&self) -> Self {
        match self.f.inv(self.lc()) {
            None => self.clone(),
            Some(i) => self.scale(i),
        }
    }

    pub fn scale(&self, a: u32) -> Self {
        if a == 0 {
            return Self::zero(self.f);
        }
        let f = self.f;
        PolyA { f, c: self.c.iter().map(|&x| f.mul(x, a)).collect() }
    }

    /// Multiply by θ^n.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0u32; n];
        c.extend_from_slice(&self.c);
        PolyA { f: self.f, c }
    }

    /// Keep only coefficients of θ^i for i < n.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.f, self.c[..n.min(self.c.len())].to_vec())
    }

    fn add_ref(&self, o: &PolyA) -> PolyA {
        let f = self.f;
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (d, &s) in c.iter_mut().zip(&short.c) {
            *d = f.add(*d, s);
        }
        Self::new(f, c)
    }

    fn sub_ref(&self, o: &PolyA) -> PolyA {
        let f = self.f;
        let n = self.c.len().max(o.c.len());
        let mut c = self.c.clone();
        c.resize(n, 0);
        for (d, &s) in c.iter_mut().zip(&o.c) {
            *d = f.sub(*d, s);
        }
        Self::new(f, c)
    }

    fn neg_ref(&self) -> PolyA {
        let f = self.f;
        PolyA { f, c: self.c.iter().map(|&x| f.neg(x)).collect() }
    }

    fn mul_ref(&self, o: &PolyA) -> PolyA {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.f);
        }
        let f = self.f;
        if self.c.len() == 1 {
            return o.scale(self.c[0]);
        }
        if o.c.len() == 1 {
            return self.scale(o.c[0]);
        }
        let c = if f.is_prime_field() {
            kara_prime(&self.c, &o.c, f.p())
        } else {
            let mut c = vec![0u32; self.c.len() + o.c.len() - 1];
            for (i, &x) in self.c.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in o.c.iter().enumerate() {
                    c[i + j] = f.add(c[i + j], f.mul(x, y));
                }
            }
            c
        };
        Self::new(f, c)
    }

    pub fn square(&self) -> Self {
        self.mul_ref(self)
    }

    pub fn pow(&self, e: u64) -> Self {
        Ring::pow_u(self, e)
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn divrem(&self, d: &PolyA) -> Result<(PolyA, PolyA)> {
        let f = self.f;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.c.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv = f.inv(d.lc()).expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        let mut qc = vec![0u32; r.len() - dd];
        let monic = d.lc() == 1;
        for i in (0..qc.len()).rev() {
            let top = r[i + dd];
            if top == 0 {
                continue;
            }
            let coef = if monic { top } else { f.mul(top, inv) };
            qc[i] = coef;
            let neg = f.neg(coef);
            if f.is_prime_field() {
                let p = f.p();
                for (slot, &dj) in r[i..i + dd + 1].iter_mut().zip(&d.c) {
                    if dj != 0 {
                        *slot = (*slot + neg * dj) % p;
                    }
                }
            } else {
                for (j, &dj) in d.c.iter().enumerate() {
                    r[i + j] = f.add(r[i + j], f.mul(neg, dj));
                }
            }
        }
        r.truncate(dd);
        Ok((Self::new(f, qc), Self::new(f, r)))
    }

    pub fn rem(&self, d: &PolyA) -> Result<PolyA> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &PolyA) -> Option<PolyA> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero when both inputs vanish).
    pub fn gcd(&self, o: &PolyA) -> PolyA {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended gcd: (g, s, t) with s·self + t·o = g, g monic.
    pub fn xgcd(&self, o: &PolyA) -> (PolyA, PolyA, PolyA) {
        let f = self.f;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match f.inv(r0.lc()) {
            Some(i) => (r0.scale(i), s0.scale(i), t0.scale(i)),
            None => (r0, s0, t0),
        }
    }

    /// self^e mod m.
    pub fn powmod(&self, e: u64, m: &PolyA) -> Result<PolyA> {
        let mut r = Self::one(self.f).rem(m)?;
        let mut b = self.rem(m)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = (&r * &b).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.square().rem(m)?;
            }
        }
        Ok(r)
    }

    /// Value at an element of F_q.
    pub fn eval_fq(&self, x: u32) -> u32 {
        let f = self.f;
        self.c.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Substitute θ ↦ g.
    pub fn compose(&self, g: &PolyA) -> PolyA {
        let mut acc = Self::zero(self.f);
        for &c in self.c.iter().rev() {
            acc = &(&acc * g) + &Self::constant(self.f, c);
        }
        acc
    }

    /// Formal derivative d/dθ.
    pub fn derivative(&self) -> PolyA {
        let f = self.f;
        let c = self.c.iter().enumerate().skip(1).map(|(i, &x)| f.mul(f.from_int(i as i64), x)).collect();
        Self::new(f, c)
    }

    /// Frobenius twist θ ↦ θ^{q^n}; coefficients in F_q are fixed.
    pub fn twist_n(&self, n: u32) -> PolyA {
        if n == 0 || self.c.len() <= 1 {
            return self.clone();
        }
        let step = (self.f.q() as usize).pow(n);
        let mut c = vec![0u32; (self.c.len() - 1) * step + 1];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * step] = x;
        }
        PolyA { f: self.f, c }
    }

    /// Twist with a signed exponent; negative twists are rejected because A is
    /// not perfect.
    pub fn twist_checked(&self, n: i64) -> Result<PolyA> {
        if n < 0 {
            Err(Error::NegativeTwist(n))
        } else {
            Ok(self.twist_n(n as u32))
        }
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.c.iter().filter(|&&x| x != 0).count()
    }

    /// Uniformly random polynomial of degree < n.
    pub fn random<R: Rng + ?Sized>(f: Fq, n: usize, rng: &mut R) -> PolyA {
        Self::new(f, (0..n).map(|_| rng.gen_range(0..f.q())).collect())
    }

    /// Random monic polynomial of degree exactly d.
    pub fn random_monic<R: Rng + ?Sized>(f: Fq, d: usize, rng: &mut R) -> PolyA {
        let mut c: Vec<u32> = (0..d).map(|_| rng.gen_range(0..f.q())).collect();
        c.push(1);
        PolyA { f, c }
    }

    /// The monic polynomial of degree d whose lower coefficients are the
    /// base-q digits of `index` (constant term least significant).
    pub fn monic_from_index(f: Fq, d: usize, index: u64) -> PolyA {
        let q = f.q() as u64;
        let mut c = Vec::with_capacity(d + 1);
        let mut i = index;
        for _ in 0..d {
            c.push((i % q) as u32);
            i /= q;
        }
        c.push(1);
        PolyA { f, c }
    }

    /// Every monic polynomial of degree d in index order.
    pub fn monics(f: Fq, d: usize) -> impl Iterator<Item = PolyA> {
        let count = (f.q() as u64).pow(d as u32);
        (0..count).map(move |i| Self::monic_from_index(f, d, i))
    }

    /// Canonical ordering: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, o: &PolyA) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }

    /// Parse text such as `"2*theta^3+theta+1"` (prime fields only; `θ`
    /// and `x` are accepted as the variable name too).
    pub fn parse(f: Fq, s: &str) -> Result<PolyA> {
        let err = || Error::Config(format!("cannot parse polynomial {s:?}"));
        if !f.is_prime_field() {
            return Err(Error::Config("polynomial text is only accepted over prime fields".into()));
        }
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.replace("theta", "θ").replace('x', "θ");
        if s.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = Self::zero(f);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1i64, b.to_string()),
                None => (1, t.trim_start_matches('+').to_string()),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coef, exp) = if let Some(pos) = body.find('θ') {
                let c = body[..pos].trim_end_matches('*');
                let coef: i64 = if c.is_empty() { 1 } else { c.parse().map_err(|_| err())? };
                let rest = &body[pos + 'θ'.len_utf8()..];
                let exp: usize = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                };
                (coef, exp)
            } else {
                (body.parse::<i64>().map_err(|_| err())?, 0)
            };
            acc = &acc + &Self::monomial(f, f.from_int(sign * coef), exp);
        }
        Ok(acc)
    }

    fn fmt_coeff(&self, x: u32) -> String {
        if self.f.is_prime_field() {
            x.to_string()
        } else {
            let d: Vec<String> = self.f.digits(x).iter().map(|d| d.to_string()).collect();
            format!("[{}]", d.join(","))
        }
    }
}

/// Coefficient list, constant term first.
impl serde::Serialize for PolyA {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use super::laurent::serde_fq::Coeff;
        s.collect_seq(self.c.iter().map(|&x| Coeff(self.f, x)))
    }
}

impl fmt::Display for PolyA {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let mut parts = Vec::new();
        for (i, &x) in self.c.iter().enumerate().rev() {
            if x == 0 {
                continue;
            }
            let coef = self.fmt_coeff(x);
            parts.push(match (i, x == 1) {
                (0, _) => coef,
                (1, true) => "theta".to_string(),
                (1, false) => format!("{coef}*theta"),
                (_, true) => format!("theta^{i}"),
                (_, false) => format!("{coef}*theta^{i}"),
            });
        }
        write!(fm, "{}", parts.join("+"))
    }
}

impl fmt::Debug for PolyA {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{self}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a> $tr<&'a PolyA> for &'a PolyA {
            type Output = PolyA;
            fn $m(self, o: &'a PolyA) -> PolyA {
                self.$imp(o)
            }
        }
        impl $tr<PolyA> for PolyA {
            type Output = PolyA;
            fn $m(self, o: PolyA) -> PolyA {
                (&self).$imp(&o)
            }
        }
    };
}
forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &PolyA {
    type Output = PolyA;
    fn neg(self) -> PolyA {
        self.neg_ref()
    }
}
impl Neg for PolyA {
    type Output = PolyA;
    fn neg(self) -> PolyA {
        self.neg_ref()
    }
}

impl Ring for PolyA {
    type Ctx = Fq;
    fn ctx(&self) -> Fq {
        self.f
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
        self.c.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn negate(&self) -> Self {
        self.neg_ref()
    }
}

impl Twist for PolyA {
    fn twist(&self, n: u32) -> Self {
        self.twist_n(n)
    }
}

impl SignedTwist for PolyA {
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

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let f = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for &(n, m) in &[(50, 50), (130, 61), (300, 7), (257, 255)] {
            let a = PolyA::random(f, n, &mut rng);
            let b = PolyA::random(f, m, &mut rng);
            let k = &a * &b;
            let s = PolyA::new(f, school_prime(a.coeffs(), b.coeffs(), 3));
            assert_eq!(k, s);
        }
    }

    #[test]
    fn divrem_reconstructs() {
        let f = Fq::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a = PolyA::random(f, 12, &mut rng);
            let d = PolyA::random(f, 5, &mut rng);
            if d.is_zero() {
                continue;
            }
            let (q, r) = a.divrem(&d).unwrap();
            assert_eq!(&(&q * &d) + &r, a);
            assert!(r.deg() < d.deg());
        }
    }

    #[test]
    fn xgcd_bezout() {
        let f = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let a = PolyA::random(f, 9, &mut rng);
            let b = PolyA::random(f, 7, &mut rng);
            let (g, s, t) = a.xgcd(&b);
            assert_eq!(&(&s * &a) + &(&t * &b), g);
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn twist_of_theta_plus_one() {
        let f = f3();
        let x = PolyA::from_ints(f, &[1, 1]);
        assert_eq!(x.twist_n(1), PolyA::from_ints(f, &[1, 0, 0, 1]));
        assert_eq!(x.twist_n(0), x);
        assert!(x.twist_checked(-1).is_err());
    }

    #[test]
    fn parse_and_print_round_trip() {
        let f = f3();
        let a = PolyA::parse(f, "2*theta^3+1").unwrap();
        assert_eq!(a, PolyA::from_ints(f, &[1, 0, 0, 2]));
        assert_eq!(a.to_string(), "2*theta^3+1");
        assert_eq!(PolyA::parse(f, "θ^2 - θ").unwrap(), PolyA::from_ints(f, &[0, -1, 1]));
        assert_eq!(PolyA::parse(f, "-1").unwrap(), PolyA::constant(f, 2));
        assert!(PolyA::parse(f, "theta^").is_err());
    }
}
