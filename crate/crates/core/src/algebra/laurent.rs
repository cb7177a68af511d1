//! Truncated Laurent series in 1/θ: elements of K_∞ = F_q((1/θ)) known to an
//! absolute precision.
//!
//! A series with precision `Some(m)` knows every coefficient of θ^j for
//! j ≥ −m; `None` marks an exact value (finitely many terms).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::fq::Fq;
use super::poly::{PolyA, NEG_INF};
use super::rat::RatK;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    f: Fq,
    low: i64,
    c: Vec<u32>,
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl Laurent {
    fn build(f: Fq, low: i64, c: Vec<u32>, prec: Option<i64>) -> Self {
        let mut s = Laurent { f, low, c, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(m) = self.prec {
            if self.low < -m {
                let cut = ((-m - self.low) as usize).min(self.c.len());
                self.c.drain(..cut);
                self.low = -m;
            }
        }
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead_zeros = self.c.iter().take_while(|&&x| x == 0).count();
        if lead_zeros > 0 {
            self.c.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.c.is_empty() {
            self.low = 0;
        }
    }

    pub fn zero(f: Fq, prec: Option<i64>) -> Self {
        Laurent { f, low: 0, c: Vec::new(), prec }
    }
    pub fn one(f: Fq) -> Self {
        Self::from_poly(&PolyA::one(f))
    }
    pub fn from_fq(f: Fq, a: u32) -> Self {
        Self::from_poly(&PolyA::constant(f, a))
    }
    /// a·θ^e exactly.
    pub fn monomial(f: Fq, a: u32, e: i64) -> Self {
        Self::build(f, e, vec![a], None)
    }
    /// An exact polynomial.
    pub fn from_poly(a: &PolyA) -> Self {
        Self::build(a.field(), 0, a.coeffs().to_vec(), None)
    }

    /// Coefficients from the top exponent downwards with a precision.
    pub fn from_top(f: Fq, top: i64, coeffs_desc: &[u32], prec: Option<i64>) -> Self {
        let n = coeffs_desc.len() as i64;
        let c: Vec<u32> = coeffs_desc.iter().rev().copied().collect();
        Self::build(f, top - n + 1, c, prec)
    }

    /// Expansion of x ∈ K in K_∞ to absolute precision m; polynomials stay
    /// exact.
    pub fn from_rat(x: &RatK, m: i64) -> Self {
        let f = x.field();
        if let Some(p) = x.as_poly() {
            return Self::from_poly(p);
        }
        if x.is_zero() {
            return Self::zero(f, None);
        }
        Self::from_quotient(x.num(), x.den(), m)
    }

    /// Expansion of num/den for a monic den, without reducing the fraction.
    pub fn from_quotient(num: &PolyA, den: &PolyA, m: i64) -> Self {
        let f = num.field();
        debug_assert!(den.is_monic());
        if num.is_zero() {
            return Self::zero(f, Some(m));
        }
        let top = num.deg() - den.deg();
        let nterms = top + m + 1;
        if nterms <= 0 {
            return Self::zero(f, Some(m));
        }
        let nterms = nterms as usize;
        // power series division in y = 1/θ of the reversed polynomials
        let rn: Vec<u32> = num.coeffs().iter().rev().copied().collect();
        let rd: Vec<u32> = den.coeffs().iter().rev().copied().collect();
        let mut rem: Vec<u32> = rn;
        rem.resize(rem.len().max(nterms), 0);
        let mut out = Vec::with_capacity(nterms);
        // den is monic so the constant term of rd is 1
        for i in 0..nterms {
            let c = rem[i];
            out.push(c);
            if c != 0 {
                let nc = f.neg(c);
                for (j, &dj) in rd.iter().enumerate().skip(1) {
                    if i + j >= nterms {
                        break;
                    }
                    if dj != 0 {
                        rem[i + j] = f.add(rem[i + j], f.mul(nc, dj));
                    }
                }
            }
        }
        Self::from_top(f, top, &out, Some(m))
    }

    pub fn field(&self) -> Fq {
        self.f
    }
    pub fn precision(&self) -> Option<i64> {
        self.prec
    }
    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }
    /// No nonzero coefficient is known.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Top exponent, or [`NEG_INF`] when zero to precision.
    pub fn deg(&self) -> i64 {
        if self.c.is_empty() {
            NEG_INF
        } else {
            self.low + self.c.len() as i64 - 1
        }
    }
    /// An upper bound for the degree of the true value.
    fn deg_bound(&self) -> Option<i64> {
        if self.c.is_empty() {
            self.prec.map(|m| -m - 1)
        } else {
            Some(self.deg())
        }
    }
    /// Leading coefficient (the sign); zero for a zero series.
    pub fn lead(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }
    /// Coefficient of θ^j, `None` when beyond the precision.
    pub fn coeff(&self, j: i64) -> Option<u32> {
        if let Some(m) = self.prec {
            if j < -m {
                return None;
            }
        }
        if j < self.low {
            return Some(0);
        }
        Some(self.c.get((j - self.low) as usize).copied().unwrap_or(0))
    }
    /// Coefficients from the top exponent downwards.
    pub fn coeffs_desc(&self) -> Vec<u32> {
        self.c.iter().rev().copied().collect()
    }

    /// Lower the precision to at most m.
    pub fn truncate(&self, m: i64) -> Self {
        Self::build(self.f, self.low, self.c.clone(), min_prec(self.prec, Some(m)))
    }

    pub fn scale(&self, a: u32) -> Self {
        let f = self.f;
        Self::build(f, self.low, self.c.iter().map(|&x| f.mul(x, a)).collect(), self.prec)
    }

    /// Multiply by θ^k exactly.
    pub fn shift(&self, k: i64) -> Self {
        Self::build(self.f, self.low + k, self.c.clone(), self.prec.map(|m| m - k))
    }

    fn add_ref(&self, o: &Laurent) -> Laurent {
        let f = self.f;
        let prec = min_prec(self.prec, o.prec);
        if self.c.is_empty() {
            return Self::build(f, o.low, o.c.clone(), prec);
        }
        if o.c.is_empty() {
            return Self::build(f, self.low, self.c.clone(), prec);
        }
        let low = self.low.min(o.low);
        let top = self.deg().max(o.deg());
        let mut c = vec![0u32; (top - low + 1) as usize];
        for (i, &x) in self.c.iter().enumerate() {
            c[(self.low - low) as usize + i] = x;
        }
        for (i, &x) in o.c.iter().enumerate() {
            let k = (o.low - low) as usize + i;
            c[k] = f.add(c[k], x);
        }
        Self::build(f, low, c, prec)
    }

    fn neg_ref(&self) -> Laurent {
        let f = self.f;
        Laurent { f, low: self.low, c: self.c.iter().map(|&x| f.neg(x)).collect(), prec: self.prec }
    }

    fn mul_ref(&self, o: &Laurent) -> Laurent {
        let f = self.f;
        let pa = match (self.prec, o.deg_bound()) {
            (Some(m), Some(d)) => Some(m - d),
            _ => None,
        };
        let pb = match (o.prec, self.deg_bound()) {
            (Some(m), Some(d)) => Some(m - d),
            _ => None,
        };
        let prec = min_prec(pa, pb);
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero(f, prec);
        }
        // drop operand terms that only reach exponents below −prec
        let cut = |x: &Laurent, other_top: i64| -> (i64, Vec<u32>) {
            match prec {
                Some(m) => {
                    let min_j = -m - other_top;
                    if x.low < min_j {
                        let k = ((min_j - x.low) as usize).min(x.c.len());
                        (x.low + k as i64, x.c[k..].to_vec())
                    } else {
                        (x.low, x.c.clone())
                    }
                }
                None => (x.low, x.c.clone()),
            }
        };
        let (la, ca) = cut(self, o.deg());
        let (lb, cb) = cut(o, self.deg());
        if ca.is_empty() || cb.is_empty() {
            return Self::zero(f, prec);
        }
        let prod = &PolyA::new(f, ca) * &PolyA::new(f, cb);
        Self::build(f, la + lb, prod.coeffs().to_vec(), prec)
    }

    /// Inverse; exact inputs are inverted to precision `target`.
    pub fn inv_to(&self, target: i64) -> Result<Laurent> {
        if self.c.is_empty() {
            return Err(Error::PrecisionLoss("inverting a series that is zero to precision".into()));
        }
        let f = self.f;
        let v = self.deg();
        let prec = match self.prec {
            Some(m) => target.min(m + 2 * v),
            None => target,
        };
        let nterms = prec - v + 1;
        // coefficients of θ^{-v-k}, 0 ≤ k < nterms
        if nterms <= 0 {
            return Ok(Self::zero(f, Some(prec)));
        }
        let n = nterms as usize;
        let a: Vec<u32> = (0..n).map(|k| self.coeff(v - k as i64).unwrap_or(0)).collect();
        let inv0 = f.inv(a[0]).expect("nonzero lead");
        let mut b = vec![0u32; n];
        b[0] = inv0;
        for k in 1..n {
            let mut s = 0u32;
            for j in 1..=k {
                if a[j] != 0 && b[k - j] != 0 {
                    s = f.add(s, f.mul(a[j], b[k - j]));
                }
            }
            b[k] = f.mul(f.neg(s), inv0);
        }
        Ok(Self::from_top(f, -v, &b, Some(prec)))
    }

    /// Quotient self/o; exact operands are divided to precision `target`.
    pub fn div_to(&self, o: &Laurent, target: i64) -> Result<Laurent> {
        let extra = self.deg_bound().unwrap_or(0).max(0);
        Ok(self * &o.inv_to(target + extra)?)
    }

    pub fn pow(&self, e: u32) -> Laurent {
        let mut r = Self::one(self.f);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// d/dθ; precision improves by one.
    pub fn derivative(&self) -> Laurent {
        let f = self.f;
        let c: Vec<u32> = self
            .c
            .iter()
            .enumerate()
            .map(|(i, &x)| f.mul(f.from_int(self.low + i as i64), x))
            .collect();
        Self::build(f, self.low - 1, c, self.prec.map(|m| m + 1))
    }

    /// Split into the part with nonnegative exponents and the rest.
    pub fn nearest_polynomial(&self) -> (PolyA, Laurent) {
        let f = self.f;
        let mut poly = Vec::new();
        let mut tail = Vec::new();
        for (i, &x) in self.c.iter().enumerate() {
            let e = self.low + i as i64;
            if e >= 0 {
                if poly.len() <= e as usize {
                    poly.resize(e as usize + 1, 0);
                }
                poly[e as usize] = x;
            } else {
                tail.push(x);
            }
        }
        let res = Self::build(f, self.low.min(0), tail, self.prec);
        (PolyA::new(f, poly), res)
    }

    /// Degree of the difference, or [`NEG_INF`] when equal to the joint
    /// precision.
    pub fn residual_degree(&self, o: &Laurent) -> i64 {
        (self - o).deg()
    }

    /// Equal on every coefficient down to θ^{−n}.
    pub fn agrees_to(&self, o: &Laurent, n: i64) -> bool {
        (-n..=self.deg().max(o.deg()).max(0)).all(|j| match (self.coeff(j), o.coeff(j)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        })
    }

    /// Multiply by the unit making the leading coefficient 1; returns the
    /// normalized series and the unit used.
    pub fn normalize_sign(&self) -> Result<(Laurent, u32)> {
        let lc = self.lead();
        let g = self.f.inv(lc).ok_or_else(|| Error::PrecisionLoss("sign of a zero series".into()))?;
        Ok((self.scale(g), g))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &x) in self.c.iter().enumerate().rev() {
            if x == 0 {
                continue;
            }
            let e = self.low + i as i64;
            let coef = if self.f.is_prime_field() { x.to_string() } else { format!("{:?}", self.f.digits(x)) };
            parts.push(match e {
                0 => coef,
                1 => format!("{coef}*theta"),
                _ => format!("{coef}*theta^{e}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        if let Some(m) = self.prec {
            parts.push(format!("O(theta^{})", -m - 1));
        }
        write!(fm, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{self}")
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Laurent", 3)?;
        let top = if self.c.is_empty() { None } else { Some(self.deg()) };
        st.serialize_field("top_exponent", &top)?;
        let coeffs: Vec<serde_fq::Coeff> = self.coeffs_desc().into_iter().map(|x| serde_fq::Coeff(self.f, x)).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.serialize_field("precision", &self.prec)?;
        st.end()
    }
}

pub(crate) mod serde_fq {
    use super::Fq;
    use serde::ser::{Serialize, Serializer};

    /// An F_q element: an integer over prime fields, a base-p digit list
    /// otherwise.
    pub struct Coeff(pub Fq, pub u32);

    impl Serialize for Coeff {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            if self.0.is_prime_field() {
                s.serialize_u32(self.1)
            } else {
                self.0.digits(self.1).serialize(s)
            }
        }
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, o: &'a Laurent) -> Laurent {
        self.add_ref(o)
    }
}
impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, o: &'a Laurent) -> Laurent {
        self.add_ref(&o.neg_ref())
    }
}
impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, o: &'a Laurent) -> Laurent {
        self.mul_ref(o)
    }
}
impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.neg_ref()
    }
}
impl Add for Laurent {
    type Output = Laurent;
    fn add(self, o: Laurent) -> Laurent {
        self.add_ref(&o)
    }
}
impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        &self - &o
    }
}
impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, o: Laurent) -> Laurent {
        self.mul_ref(&o)
    }
}
impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    #[test]
    fn geometric_expansion() {
        let f = f3();
        let x = RatK::new(PolyA::one(f), PolyA::from_ints(f, &[-1, 1])).unwrap();
        let s = Laurent::from_rat(&x, 10);
        assert_eq!(s.deg(), -1);
        for j in 1..=10 {
            assert_eq!(s.coeff(-j), Some(1));
        }
        assert_eq!(s.coeff(-11), None);
        assert_eq!(s.coeff(0), Some(0));
    }

    #[test]
    fn polynomial_is_exact() {
        let f = f3();
        let s = Laurent::from_rat(&RatK::from_poly(PolyA::from_ints(f, &[0, 0, 1])), 10);
        assert!(s.is_exact());
        assert_eq!(s.deg(), 2);
    }

    #[test]
    fn exact_division_terminates() {
        let f = f3();
        let x = RatK::new(PolyA::from_ints(f, &[1, 1]), PolyA::theta(f)).unwrap();
        let s = Laurent::from_rat(&x, 8);
        assert_eq!(s.coeffs_desc(), vec![1, 1]);
        assert_eq!(s.deg(), 0);
    }

    #[test]
    fn precision_rules() {
        let f = f3();
        let a = Laurent::from_rat(&RatK::new(PolyA::theta(f).pow(3), PolyA::from_ints(f, &[1, 1])).unwrap(), 10);
        assert_eq!(a.deg(), 2);
        let b = Laurent::from_rat(&RatK::new(PolyA::one(f), PolyA::from_ints(f, &[1, 0, 1])).unwrap(), 7);
        assert_eq!(b.deg(), -2);
        assert_eq!((&a * &b).precision(), Some(7 - 2));
        assert_eq!((&a + &b).precision(), Some(7));
        assert_eq!(a.inv_to(100).unwrap().precision(), Some(10 + 4));
        assert_eq!(a.derivative().precision(), Some(11));
    }

    #[test]
    fn inverse_of_one_minus_inverse_theta() {
        let f = f3();
        let a = &Laurent::one(f) - &Laurent::monomial(f, 1, -1);
        let i = a.inv_to(6).unwrap();
        assert_eq!(i.coeffs_desc(), vec![1; 7]);
        let t = Laurent::monomial(f, 1, 1);
        let ti = Laurent::monomial(f, 1, -1);
        assert_eq!(&t * &ti, Laurent::one(f));
    }

    #[test]
    fn nearest_polynomial_splits() {
        let f = f3();
        let x = &Laurent::monomial(f, 1, 2) + &Laurent::monomial(f, 1, -5).truncate(9);
        let (p, r) = x.nearest_polynomial();
        assert_eq!(p, PolyA::monomial(f, 1, 2));
        assert_eq!(r.deg(), -5);
        assert_eq!(&Laurent::from_poly(&p) + &r, x);
    }
}
