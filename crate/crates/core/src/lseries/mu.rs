//! The arithmetic functions μ_φ, ν_φ and the multivariable 𝝁_φ.
//!
//! At a prime f the values μ_φ(f^m) are the coefficients of 1/Q_f^∨(fX) and
//! ν_φ(f^m) those of 1/Q_f(X). Both are computed by series inversion and
//! recomputed by the three-term style recursions, which must agree.
//! 𝝁_φ(f^{k_1}, …, f^{k_{r−1}}) is the Jacobi–Trudi determinant in the
//! μ_φ(f^m), rescaled by a power of f.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::irreducible::{enumerate_monic_irreducibles, factor};
use crate::algebra::poly::PolyA;
use crate::error::{Error, Result};
use crate::frobenius::FrobCharPoly;
use crate::symmetric::{jacobi_trudi, SchurIndex};
use crate::tmodule::DrinfeldModule;

/// Coefficients of 1/(1 + q_1X + ⋯ + q_nX^n) through X^{m_max}.
fn invert_monic_series(q: &[PolyA], m_max: usize) -> Vec<PolyA> {
    let fq = q[0].field();
    let mut out = vec![PolyA::one(fq)];
    for n in 1..=m_max {
        let mut acc = PolyA::zero(fq);
        for i in 1..q.len().min(n + 1) {
            acc = &acc - &(&q[i] * &out[n - i]);
        }
        out.push(acc);
    }
    out
}

fn at(v: &[PolyA], i: i64) -> Option<&PolyA> {
    if i < 0 {
        None
    } else {
        v.get(i as usize)
    }
}

/// μ_φ(f^m) for 0 ≤ m ≤ m_max by inverting Q_f^∨(fX).
pub fn mu_by_inversion(p: &FrobCharPoly, m_max: usize) -> Vec<PolyA> {
    invert_monic_series(&p.dual_forms().q_dual_fx, m_max)
}

/// μ_φ(f^m) from μ_φ(f) = (−1)^{r+1}χ_φ(f)c_1 and the recursion in
/// μ(f^{n−1}), …, μ(f^{n−r}), with μ of a negative power taken as zero.
pub fn mu_by_recursion(p: &FrobCharPoly, m_max: usize) -> Vec<PolyA> {
    let fq = p.field();
    let r = p.r;
    let f = &p.f;
    // (−1)^r χ
    let sgn_chi = p.c_f;
    let mu1 = p.c(1).scale(fq.neg(sgn_chi));
    let mut out = vec![PolyA::one(fq)];
    for n in 1..=m_max as i64 {
        let mut acc = &mu1 * &out[n as usize - 1];
        for j in 2..r {
            if let Some(prev) = at(&out, n - j as i64) {
                let t = &(&p.c(j) * &f.pow(j as u64 - 1)) * prev;
                acc = &acc - &t.scale(sgn_chi);
            }
        }
        // for r = 1 the j = 1 term is already μ(f)μ(f^{n−1})
        if r >= 2 {
            if let Some(prev) = at(&out, n - r as i64) {
                acc = &acc - &(&f.pow(r as u64 - 1) * prev).scale(sgn_chi);
            }
        }
        out.push(acc);
    }
    out
}

/// ν_φ(f^m) for 0 ≤ m ≤ m_max by inverting Q_f(X) = 1 + c_{r−1}X + ⋯ + c_0X^r.
pub fn nu_by_inversion(p: &FrobCharPoly, m_max: usize) -> Vec<PolyA> {
    invert_monic_series(&p.dual_forms().q, m_max)
}

/// ν_φ(f^m) from ν_φ(f) = −c_{r−1} and its recursion.
pub fn nu_by_recursion(p: &FrobCharPoly, m_max: usize) -> Vec<PolyA> {
    let fq = p.field();
    let r = p.r;
    let nu1 = -&p.c(r - 1);
    // (−1)^r χ̄(f) f = c_0
    let last = p.f.scale(fq.inv(p.c_f).expect("unit"));
    let mut out = vec![PolyA::one(fq)];
    for n in 1..=m_max as i64 {
        let mut acc = &nu1 * &out[n as usize - 1];
        for j in 2..r {
            if let Some(prev) = at(&out, n - j as i64) {
                acc = &acc - &(&p.c(r - j) * prev);
            }
        }
        if r >= 2 {
            if let Some(prev) = at(&out, n - r as i64) {
                acc = &acc - &(&last * prev);
            }
        }
        out.push(acc);
    }
    out
}

/// μ_φ(f^m), 0 ≤ m ≤ m_max, with the inversion and recursion compared.
pub fn mu_prime_powers(phi: &DrinfeldModule, f: &PolyA, m_max: usize) -> Result<Vec<PolyA>> {
    let p = FrobCharPoly::compute(phi, f)?;
    checked_mu(&p, m_max)
}

fn checked_mu(p: &FrobCharPoly, m_max: usize) -> Result<Vec<PolyA>> {
    let a = mu_by_inversion(p, m_max);
    if a != mu_by_recursion(p, m_max) {
        return Err(Error::Internal(format!("μ inversion and recursion disagree at f = {}", p.f)));
    }
    Ok(a)
}

/// ν_φ(f^m), 0 ≤ m ≤ m_max, with the inversion and recursion compared.
pub fn nu_prime_powers(phi: &DrinfeldModule, f: &PolyA, m_max: usize) -> Result<Vec<PolyA>> {
    let p = FrobCharPoly::compute(phi, f)?;
    let a = nu_by_inversion(&p, m_max);
    if a != nu_by_recursion(&p, m_max) {
        return Err(Error::Internal(format!("ν inversion and recursion disagree at f = {f}")));
    }
    Ok(a)
}

/// 𝝁_φ(f^{k_1}, …, f^{k_{r−1}}) from μ_φ(f^m) for m < λ_1 + r, where λ is
/// the partition of k.
///
/// Row i of det(μ(f^{λ_i−i+j})) carries f^{λ_i−i+j}; over a permutation
/// these multiply to f^{|λ|}, so the determinant is S_k(α)·f^{|λ|} and is
/// divided by f^{|λ|−|k|}.
pub fn boldmu_from_mu(mu: &[PolyA], f: &PolyA, k: &SchurIndex) -> Result<PolyA> {
    let fq = f.field();
    let lambda = k.partition();
    let det = jacobi_trudi(&fq, &lambda, mu)?;
    let excess = (k.weight() - k.total()) as u64;
    if excess == 0 {
        return Ok(det);
    }
    det.exact_div(&f.pow(excess))
        .ok_or_else(|| Error::Internal(format!("𝝁 at f = {f}, k = {:?} is not divisible by f^{excess}", k.k)))
}

/// Number of μ values needed for 𝝁 at an index with λ_1 = total.
pub fn mu_len_for(total: u32, r: usize) -> usize {
    total as usize + r
}

/// Euler data of φ at one prime: P_f, χ_φ(f) and μ_φ(f^m) for m < mu.len().
#[derive(Clone, Debug)]
pub struct PrimeData {
    pub charpoly: FrobCharPoly,
    pub mu: Vec<PolyA>,
}

impl PrimeData {
    pub fn compute(phi: &DrinfeldModule, f: &PolyA, m_max: usize) -> Result<Self> {
        let charpoly = FrobCharPoly::compute(phi, f)?;
        let mu = checked_mu(&charpoly, m_max)?;
        Ok(PrimeData { charpoly, mu })
    }

    pub fn f(&self) -> &PolyA {
        &self.charpoly.f
    }
    pub fn chi(&self) -> u32 {
        self.charpoly.chi
    }
    pub fn rank(&self) -> usize {
        self.charpoly.r
    }

    /// 𝝁_φ(f^{k_1}, …, f^{k_{r−1}}).
    pub fn boldmu(&self, k: &SchurIndex) -> Result<PolyA> {
        if k.k.len() + 1 != self.rank() {
            return Err(Error::Dimension(format!("index of length {} for rank {}", k.k.len(), self.rank())));
        }
        if k.k.iter().all(|&x| x == 0) {
            return Ok(PolyA::one(self.f().field()));
        }
        if self.mu.len() < mu_len_for(k.total(), self.rank()) {
            return Err(Error::Guard(format!("μ table at f = {} too short for {:?}", self.f(), k.k)));
        }
        boldmu_from_mu(&self.mu, self.f(), k)
    }
}

/// Per-prime μ data for every prime of degree ≤ d_max, built in parallel
/// and read-only afterwards.
#[derive(Clone, Debug)]
pub struct MuTable {
    phi: DrinfeldModule,
    primes: Vec<Arc<PrimeData>>,
    index: HashMap<PolyA, usize>,
}

impl MuTable {
    /// `m_len(d)` is the number of μ values kept at primes of degree d.
    pub fn build(phi: &DrinfeldModule, d_max: usize, m_len: impl Fn(usize) -> usize + Sync) -> Result<Self> {
        let fq = phi.field();
        let list = enumerate_monic_irreducibles(fq, d_max);
        let primes: Vec<Arc<PrimeData>> = list
            .par_iter()
            .map(|f| {
                let m = m_len(f.deg() as usize).max(1);
                PrimeData::compute(phi, f, m - 1).map(Arc::new)
            })
            .collect::<Result<_>>()?;
        let index = primes.iter().enumerate().map(|(i, p)| (p.f().clone(), i)).collect();
        Ok(MuTable { phi: phi.clone(), primes, index })
    }

    pub fn phi(&self) -> &DrinfeldModule {
        &self.phi
    }
    /// Primes in canonical order (by degree first).
    pub fn primes(&self) -> &[Arc<PrimeData>] {
        &self.primes
    }
    pub fn get(&self, f: &PolyA) -> Option<&Arc<PrimeData>> {
        self.index.get(f).map(|&i| &self.primes[i])
    }
}

/// Whether r·deg 𝝁 ≤ (r−1)deg a_1 + (r−2)deg a_2 + ⋯ + deg a_{r−1}.
pub fn boldmu_degree_bound_holds(value: &PolyA, r: usize, degs: &[i64]) -> bool {
    if value.is_zero() {
        return true;
    }
    let rhs: i64 = degs.iter().enumerate().map(|(i, &d)| (r as i64 - 1 - i as i64) * d).sum();
    r as i64 * value.deg() <= rhs
}

/// 𝝁_φ(a_1, …, a_{r−1}) for monic a_i, through factorization and
/// multiplicativity over primes.
pub fn boldmu(phi: &DrinfeldModule, a: &[PolyA]) -> Result<PolyA> {
    let r = phi.rank();
    if a.len() + 1 != r {
        return Err(Error::Dimension(format!("𝝁 of a rank-{r} module takes {} arguments", r - 1)));
    }
    let fq = phi.field();
    if a.iter().any(|x| !x.is_monic()) {
        return Err(Error::Config("𝝁 arguments must be monic".into()));
    }
    let mut exps: Vec<(PolyA, Vec<u32>)> = Vec::new();
    for (slot, x) in a.iter().enumerate() {
        if x.deg() == 0 {
            continue;
        }
        for (g, e) in factor(x).1 {
            match exps.iter_mut().find(|(h, _)| *h == g) {
                Some((_, v)) => v[slot] = e,
                None => {
                    let mut v = vec![0; r - 1];
                    v[slot] = e;
                    exps.push((g, v));
                }
            }
        }
    }
    let mut acc = PolyA::one(fq);
    for (g, k) in exps {
        let k = SchurIndex::new(k);
        let data = PrimeData::compute(phi, &g, mu_len_for(k.total(), r))?;
        acc = &acc * &data.boldmu(&k)?;
    }
    let degs: Vec<i64> = a.iter().map(PolyA::deg).collect();
    if !boldmu_degree_bound_holds(&acc, r, &degs) {
        return Err(Error::Internal(format!("𝝁 degree bound fails at {a:?}")));
    }
    Ok(acc)
}

/// Outcome of the 𝝁 product formulas at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoldmuRelations {
    pub f: String,
    pub bound: u32,
    /// Q^∨(fX) read off from 𝝁 at single-slot indices.
    pub q_dual_display: bool,
    pub general_checked: usize,
    pub general_failed: usize,
    pub products_checked: usize,
    pub products_failed: usize,
}

impl BoldmuRelations {
    pub fn ok(&self) -> bool {
        self.q_dual_display && self.general_failed == 0 && self.products_failed == 0
    }
}

fn unit(r: usize, slot: usize, k: u32) -> SchurIndex {
    let mut v = vec![0; r - 1];
    v[slot] = k;
    SchurIndex::new(v)
}

/// Checks the Pieri-type product formulas for 𝝁_φ(f^k, 1, …, 1) at f, for
/// k ≤ bound and all (k_1, …, k_{r−1}) with k_1 + ⋯ + k_{r−1} ≤ bound.
pub fn boldmu_relation_checks(phi: &DrinfeldModule, f: &PolyA, bound: u32) -> Result<BoldmuRelations> {
    let r = phi.rank();
    if r < 2 {
        return Err(Error::Config("𝝁 relations need rank ≥ 2".into()));
    }
    let fq = phi.field();
    let data = PrimeData::compute(phi, f, mu_len_for(2 * bound + 1, r))?;
    let chi = data.chi();
    let mu = |k: &SchurIndex| data.boldmu(k);

    // 1 − 𝝁(f,1,…)X + 𝝁(1,f,1,…)fX² − ⋯ + (−1)^rχ f^{r−1}X^r
    let mut display = vec![PolyA::one(fq)];
    for i in 1..r {
        let v = &mu(&unit(r, i - 1, 1))? * &f.pow(i as u64 - 1);
        display.push(if i % 2 == 1 { -&v } else { v });
    }
    display.push(f.pow(r as u64 - 1).scale(data.charpoly.c_f));
    let q_dual_display = display == data.charpoly.dual_forms().q_dual_fx;

    // general display: sum over m_0 + ⋯ + m_{r−1} = k with m_i ≤ k_i
    let mut general_checked = 0;
    let mut general_failed = 0;
    for k in 0..=bound {
        for ks in SchurIndex::up_to_weight(r, bound * (r as u32 - 1)) {
            if ks.total() > bound {
                continue;
            }
            let lhs = &mu(&unit(r, 0, k))? * &mu(&ks)?;
            let mut rhs = PolyA::zero(fq);
            for ms in compositions(k, r, &ks.k) {
                let idx: Vec<u32> = (0..r - 1).map(|i| ks.k[i] + ms[i] - ms[i + 1]).collect();
                let term = &mu(&SchurIndex::new(idx))? * &f.pow((k - ms[0]) as u64);
                rhs = &rhs + &term.scale(fq.pow(chi, ms[r - 1] as u64));
            }
            general_checked += 1;
            if lhs != rhs {
                general_failed += 1;
            }
        }
    }

    // 𝝁(f^k,1,…)·𝝁(f in slot j) for k ≥ 1
    let mut products_checked = 0;
    let mut products_failed = 0;
    for k in 1..=bound {
        for j in 0..r - 1 {
            let lhs = &mu(&unit(r, 0, k))? * &mu(&unit(r, j, 1))?;
            let mut first = unit(r, 0, k).k;
            first[j] += 1;
            let mut rhs = mu(&SchurIndex::new(first))?;
            if j + 1 < r - 1 {
                let mut second = unit(r, 0, k - 1).k;
                second[j + 1] += 1;
                rhs = &rhs + &(&mu(&SchurIndex::new(second))? * f);
            } else {
                rhs = &rhs + &(&mu(&unit(r, 0, k - 1))? * f).scale(chi);
            }
            products_checked += 1;
            if lhs != rhs {
                products_failed += 1;
            }
        }
    }
    Ok(BoldmuRelations {
        f: f.to_string(),
        bound,
        q_dual_display,
        general_checked,
        general_failed,
        products_checked,
        products_failed,
    })
}

/// Tuples (m_0, …, m_{r−1}) summing to k with m_i ≤ caps[i−1] for i ≥ 1.
fn compositions(k: u32, r: usize, caps: &[u32]) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, r: usize, caps: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == r - 1 {
            if left <= caps[pos - 1] {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let cap = if pos == 0 { left } else { caps[pos - 1].min(left) };
        for v in 0..=cap {
            cur.push(v);
            rec(pos + 1, left - v, r, caps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, r, caps, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::Fq;

    fn phi3() -> DrinfeldModule {
        let f = Fq::prime(3).unwrap();
        DrinfeldModule::rank2(PolyA::theta(f), 1).unwrap()
    }

    #[test]
    fn carlitz_mu_is_one() {
        let fq = Fq::prime(3).unwrap();
        let c = DrinfeldModule::carlitz(fq);
        for f in enumerate_monic_irreducibles(fq, 2) {
            let mu = mu_prime_powers(&c, &f, 6).unwrap();
            assert!(mu.iter().all(|m| *m == PolyA::one(fq)));
            let nu = nu_prime_powers(&c, &f, 6).unwrap();
            for (m, v) in nu.iter().enumerate() {
                assert_eq!(*v, f.pow(m as u64));
            }
        }
    }

    #[test]
    fn rank2_second_power() {
        let phi = phi3();
        let fq = phi.field();
        for f in enumerate_monic_irreducibles(fq, 2) {
            let data = PrimeData::compute(&phi, &f, 4).unwrap();
            let mu = &data.mu;
            assert_eq!(mu[2], &mu[1].square() - &f.scale(data.chi()));
            assert_eq!(mu[1], data.charpoly.c(1).scale(fq.neg(data.chi())));
            let nu = nu_prime_powers(&phi, &f, 3).unwrap();
            assert_eq!(nu[1], -&data.charpoly.c(1));
        }
    }

    #[test]
    fn boldmu_single_slot_is_mu() {
        let fq = Fq::prime(3).unwrap();
        let phi = DrinfeldModule::new(fq, vec![PolyA::theta(fq), PolyA::one(fq), PolyA::constant(fq, 2)]).unwrap();
        let f = PolyA::from_ints(fq, &[1, 1]);
        let data = PrimeData::compute(&phi, &f, 10).unwrap();
        for m in 0..6 {
            assert_eq!(data.boldmu(&SchurIndex::new(vec![m, 0])).unwrap(), data.mu[m as usize]);
        }
        assert_eq!(data.boldmu(&SchurIndex::new(vec![0, 0])).unwrap(), PolyA::one(fq));
    }

    #[test]
    fn boldmu_composite_first_slot() {
        let phi = phi3();
        let fq = phi.field();
        let a = PolyA::from_ints(fq, &[0, 1]);
        let b = PolyA::from_ints(fq, &[1, 0, 1]);
        let ab = &a.square() * &b;
        let direct = boldmu(&phi, &[ab]).unwrap();
        let mu_a = mu_prime_powers(&phi, &a, 2).unwrap();
        let mu_b = mu_prime_powers(&phi, &b, 1).unwrap();
        assert_eq!(direct, &mu_a[2] * &mu_b[1]);
    }

    #[test]
    fn relations_rank2_and_rank3() {
        let phi = phi3();
        let fq = phi.field();
        let f = PolyA::theta(fq);
        let rep = boldmu_relation_checks(&phi, &f, 4).unwrap();
        assert!(rep.ok(), "{rep:?}");
        let phi3 = DrinfeldModule::new(fq, vec![PolyA::theta(fq), PolyA::one(fq), PolyA::constant(fq, 1)]).unwrap();
        let rep = boldmu_relation_checks(&phi3, &PolyA::from_ints(fq, &[1, 0, 1]), 3).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert!(rep.general_checked > 0 && rep.products_checked == 6);
    }
}
