//! Irreducibility tests, enumeration of monic irreducibles and factorization.

use super::fq::Fq;
use super::poly::PolyA;

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Integer Möbius function.
pub fn moebius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducibles of degree d over F_q: (1/d) Σ_{e|d} μ(e) q^{d/e}.
pub fn count_irreducibles(q: u64, d: u32) -> u64 {
    let d64 = d as u64;
    let total: i128 = (1..=d64)
        .filter(|e| d64.is_multiple_of(*e))
        .map(|e| moebius(e) as i128 * (q as i128).pow((d64 / e) as u32))
        .sum();
    (total / d64 as i128) as u64
}

/// θ^{q^k} mod f.
fn frob_power_of_theta(f: &PolyA, k: u64) -> PolyA {
    let fq = f.field();
    let mut x = PolyA::theta(fq).rem(f).unwrap();
    for _ in 0..k {
        x = x.powmod(fq.q() as u64, f).unwrap();
    }
    x
}

/// Distinct-degree (Rabin) irreducibility test.
pub fn is_irreducible_rabin(f: &PolyA) -> bool {
    let d = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(d) => d as u64,
    };
    let theta = PolyA::theta(f.field());
    if frob_power_of_theta(f, d) != theta.rem(f).unwrap() {
        return false;
    }
    prime_divisors(d).into_iter().all(|p| {
        let x = frob_power_of_theta(f, d / p);
        (&x - &theta).gcd(f).is_constant()
    })
}

/// Exhaustive search for a monic divisor of degree 1..=deg/2.
pub fn is_irreducible_bruteforce(f: &PolyA) -> bool {
    let d = match f.degree() {
        None | Some(0) => return false,
        Some(d) => d,
    };
    let fq = f.field();
    if fq.elements().any(|x| f.eval_fq(x) == 0) {
        return d == 1;
    }
    (2..=d / 2).all(|e| PolyA::monics(fq, e).all(|g| !f.rem(&g).unwrap().is_zero()))
}

/// Irreducibility; for degree ≤ 4 both tests run and must agree.
pub fn is_irreducible(f: &PolyA) -> bool {
    let r = is_irreducible_rabin(f);
    if f.deg() <= 4 {
        let b = is_irreducible_bruteforce(f);
        assert_eq!(r, b, "irreducibility tests disagree on {f}");
    }
    r
}

/// All monic irreducibles of degree exactly d, in canonical order.
pub fn irreducibles_of_degree(fq: Fq, d: usize) -> Vec<PolyA> {
    let mut v: Vec<PolyA> = PolyA::monics(fq, d).filter(is_irreducible_rabin).collect();
    v.sort_by(|a, b| a.canonical_cmp(b));
    v
}

/// All monic irreducibles of degree ≤ d_max sorted by (degree, coefficients
/// from the top down).
pub fn enumerate_monic_irreducibles(fq: Fq, d_max: usize) -> Vec<PolyA> {
    (1..=d_max).flat_map(|d| irreducibles_of_degree(fq, d)).collect()
}

/// Factor a nonzero polynomial into its leading coefficient and monic
/// irreducible factors with multiplicities, by trial division.
pub fn factor(a: &PolyA) -> (u32, Vec<(PolyA, u32)>) {
    assert!(!a.is_zero(), "cannot factor zero");
    let fq = a.field();
    let lc = a.lc();
    let mut rest = a.make_monic();
    let mut out = Vec::new();
    let mut d = 1;
    while 2 * d <= rest.deg() as usize {
        for g in irreducibles_of_degree(fq, d) {
            let mut e = 0;
            while let Some(qt) = rest.exact_div(&g) {
                rest = qt;
                e += 1;
            }
            if e > 0 {
                out.push((g, e));
            }
        }
        d += 1;
    }
    if rest.deg() > 0 {
        match out.iter_mut().find(|(g, _)| *g == rest) {
            Some(entry) => entry.1 += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort_by(|x, y| x.0.canonical_cmp(&y.0));
    (lc, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = Fq::prime(2).unwrap();
        let l = enumerate_monic_irreducibles(f2, 1);
        assert_eq!(l, vec![PolyA::from_ints(f2, &[0, 1]), PolyA::from_ints(f2, &[1, 1])]);
        let l2 = enumerate_monic_irreducibles(f2, 2);
        assert_eq!(l2.len(), 3);
        assert_eq!(l2[2], PolyA::from_ints(f2, &[1, 1, 1]));
        let f3 = Fq::prime(3).unwrap();
        let l3 = enumerate_monic_irreducibles(f3, 2);
        assert_eq!(l3.iter().filter(|g| g.deg() == 1).count(), 3);
        assert_eq!(l3.iter().filter(|g| g.deg() == 2).count(), 3);
    }

    #[test]
    fn counts_match_necklace_formula() {
        for &p in &[2u32, 3, 5] {
            let f = Fq::prime(p).unwrap();
            for d in 1..=5usize {
                if (p as u64).pow(d as u32) > 5000 {
                    continue;
                }
                assert_eq!(irreducibles_of_degree(f, d).len() as u64, count_irreducibles(p as u64, d as u32));
            }
        }
    }

    #[test]
    fn factor_reconstructs() {
        let f = Fq::prime(3).unwrap();
        let a = PolyA::from_ints(f, &[2, 0, 1, 1, 0, 2, 1]);
        let (lc, fs) = factor(&a);
        let mut prod = PolyA::constant(f, lc);
        for (g, e) in &fs {
            assert!(is_irreducible(g));
            prod = &prod * &g.pow(*e as u64);
        }
        assert_eq!(prod, a);
    }
}
