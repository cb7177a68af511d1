//! Finite fields F_q with q = p^m.
//!
//! Elements are raw `u32` codes. For the prime field the code is the residue
//! itself; for m > 1 the code is the base-p integer whose digits are the
//! coefficients of the element in the power basis of the defining modulus.
//! Field descriptors are interned, so an [`Fq`] is a `Copy` handle that
//! compares by identity.

use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};

/// Largest supported prime (keeps products of two residues inside `u32`).
pub const MAX_PRIME: u32 = 1 << 15;
/// Largest supported extension field order (table-driven arithmetic).
pub const MAX_EXT_ORDER: u32 = 1 << 12;

#[derive(Debug)]
pub struct FqInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    inv: Vec<u32>,
    // extension-field tables, empty when m = 1
    log: Vec<u32>,
    exp: Vec<u32>,
}

static REGISTRY: Mutex<Vec<&'static FqInner>> = Mutex::new(Vec::new());

/// Handle to an interned finite field.
#[derive(Clone, Copy)]
pub struct Fq(&'static FqInner);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

// polynomial helpers over F_p used only while building extension tables
fn fp_poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let inv_lead = pow_mod(m[dm] as u64, (p - 2) as u64, p as u64) as u32;
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = (top as u64 * inv_lead as u64 % p as u64) as u32;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (c as u64 * mi as u64 % p as u64) as u32) % p;
            }
        }
        r.pop();
    }
    r
}

fn fp_poly_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if fp_poly_rem(m, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl Fq {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Fq> {
        Self::new(p, &[])
    }

    /// F_q with q = p^m, where `modulus` lists the coefficients (constant term
    /// first) of a monic irreducible polynomial of degree m over F_p. An empty
    /// or linear modulus selects the prime field.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Fq> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::Config(format!("p = {p} is not a supported prime")));
        }
        let modulus: Vec<u32> = if modulus.len() <= 2 {
            Vec::new()
        } else {
            modulus.to_vec()
        };
        let mut reg = REGISTRY.lock().expect("field registry poisoned");
        if let Some(f) = reg.iter().find(|f| f.p == p && f.modulus == modulus) {
            return Ok(Fq(f));
        }
        let inner = if modulus.is_empty() {
            let mut inv = vec![0u32; p as usize];
            for (a, slot) in inv.iter_mut().enumerate().skip(1) {
                *slot = pow_mod(a as u64, (p - 2) as u64, p as u64) as u32;
            }
            FqInner { p, m: 1, q: p, modulus, inv, log: vec![], exp: vec![] }
        } else {
            Self::build_extension(p, modulus)?
        };
        let leaked: &'static FqInner = Box::leak(Box::new(inner));
        reg.push(leaked);
        Ok(Fq(leaked))
    }

    /// F_q for q = p^m with the first monic irreducible modulus of degree m
    /// in the order of base-p codes.
    pub fn of_order(q: u32) -> Result<Fq> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(|| Error::Config(format!("q = {q} is not a prime power")))?;
        let (mut m, mut r) = (0u32, q);
        while r % p == 0 {
            r /= p;
            m += 1;
        }
        if r != 1 {
            return Err(Error::Config(format!("q = {q} is not a prime power")));
        }
        if m == 1 {
            return Self::prime(p);
        }
        let count = (p as u64).pow(m);
        for code in 0..count {
            let mut g = Vec::with_capacity(m as usize + 1);
            let mut c = code;
            for _ in 0..m {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if fp_poly_irreducible(&g, p) {
                return Self::new(p, &g);
            }
        }
        Err(Error::Internal(format!("no irreducible of degree {m} over F_{p}")))
    }

    fn build_extension(p: u32, modulus: Vec<u32>) -> Result<FqInner> {
        if modulus.iter().any(|&c| c >= p) || *modulus.last().unwrap() != 1 {
            return Err(Error::Config("F_q modulus must be monic with digits below p".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let q = (p as u64).pow(m);
        if q > MAX_EXT_ORDER as u64 {
            return Err(Error::Config(format!("extension field of order {q} exceeds the supported size")));
        }
        if !fp_poly_irreducible(&modulus, p) {
            return Err(Error::Config("F_q modulus is not irreducible over F_p".into()));
        }
        let q = q as u32;
        let encode = |v: &[u32]| -> u32 {
            let mut code = 0u32;
            for &d in v.iter().rev() {
                code = code * p + d;
            }
            code
        };
        let decode = |mut code: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(m as usize);
            for _ in 0..m {
                v.push(code % p);
                code /= p;
            }
            v
        };
        let mulpoly = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let mut r = vec![0u32; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    r[i + j] = (r[i + j] + x * y % p) % p;
                }
            }
            let mut r = fp_poly_rem(&r, &modulus, p);
            r.resize(m as usize, 0);
            r
        };
        // find a primitive element by brute force
        let order = q - 1;
        let mut exp = Vec::new();
        for g in 2..q {
            let gv = decode(g);
            let mut table = Vec::with_capacity(order as usize);
            let mut cur = decode(1);
            let mut ok = true;
            for i in 0..order {
                let code = encode(&cur);
                if i > 0 && code == 1 {
                    ok = false;
                    break;
                }
                table.push(code);
                cur = mulpoly(&cur, &gv);
            }
            if ok && encode(&cur) == 1 {
                exp = table;
                break;
            }
        }
        if exp.is_empty() {
            return Err(Error::Internal("no primitive element found".into()));
        }
        let mut log = vec![0u32; q as usize];
        for (i, &c) in exp.iter().enumerate() {
            log[c as usize] = i as u32;
        }
        let mut inv = vec![0u32; q as usize];
        for a in 1..q {
            let l = log[a as usize];
            inv[a as usize] = exp[((order - l) % order) as usize];
        }
        Ok(FqInner { p, m, q, modulus, inv, log, exp })
    }

    pub fn p(self) -> u32 {
        self.0.p
    }
    pub fn m(self) -> u32 {
        self.0.m
    }
    pub fn q(self) -> u32 {
        self.0.q
    }
    pub fn modulus(self) -> &'static [u32] {
        &self.0.modulus
    }
    pub fn is_prime_field(self) -> bool {
        self.0.m == 1
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else {
            let (mut a, mut b) = (a, b);
            let mut r = 0u32;
            let mut place = 1u32;
            for _ in 0..self.0.m {
                r += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            r
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else {
            let mut a = a;
            let mut r = 0u32;
            let mut place = 1u32;
            for _ in 0..self.0.m {
                r += ((p - a % p) % p) * place;
                a /= p;
                place *= p;
            }
            r
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        if self.0.m == 1 {
            a * b % self.0.p
        } else if a == 0 || b == 0 {
            0
        } else {
            let order = self.0.q - 1;
            let l = (self.0.log[a as usize] + self.0.log[b as usize]) % order;
            self.0.exp[l as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.0.inv[a as usize])
        }
    }

    pub fn pow(self, a: u32, e: u64) -> u32 {
        let mut r = 1u32;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Base-p digits of an element (length m).
    pub fn digits(self, a: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut a = a;
        (0..self.0.m)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    /// Element from its base-p digits.
    pub fn from_digits(self, digits: &[u32]) -> Result<u32> {
        if digits.len() > self.0.m as usize || digits.iter().any(|&d| d >= self.0.p) {
            return Err(Error::Config(format!("invalid digit list {digits:?} for {self:?}")));
        }
        let mut code = 0u32;
        for &d in digits.iter().rev() {
            code = code * self.0.p + d;
        }
        Ok(code)
    }

    /// All elements, in code order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// Nonzero elements.
    pub fn units(self) -> impl Iterator<Item = u32> {
        1..self.0.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = Fq::prime(7).unwrap();
        for a in f.units() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn order_lookup() {
        assert_eq!(Fq::of_order(5).unwrap(), Fq::prime(5).unwrap());
        let f = Fq::of_order(9).unwrap();
        assert_eq!((f.p(), f.m(), f.q()), (3, 2, 9));
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert!(Fq::of_order(6).is_err());
    }

    #[test]
    fn interning_returns_same_handle() {
        assert_eq!(Fq::prime(5).unwrap(), Fq::prime(5).unwrap());
        assert_ne!(Fq::prime(5).unwrap(), Fq::prime(3).unwrap());
    }

    #[test]
    fn f9_is_a_field() {
        // x^2 + 1 is irreducible over F_3
        let f = Fq::new(3, &[1, 0, 1]).unwrap();
        assert_eq!(f.q(), 9);
        for a in f.units() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.add(a, f.neg(a)), 0);
            // Frobenius of order 2
            assert_eq!(f.pow(a, 9), a);
        }
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    let l = f.mul(a, f.add(b, c));
                    let r = f.add(f.mul(a, b), f.mul(a, c));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 - 1 over F_3
        assert!(Fq::new(3, &[2, 0, 1]).is_err());
        assert!(Fq::prime(9).is_err());
    }
}
