//! Truncated Dirichlet sums with a certified absolute precision.
//!
//! Every series here is multiplicative in the tuple (a_1, …, a_k), so the
//! tuples of weighted degree ≤ D are enumerated as products of prime-power
//! tuples, depth first over primes in increasing order. Each term is an
//! element of A divided by a power of the primes involved and is expanded
//! to absolute precision M.
//!
//! When the summand depends on a only through deg a (twisted zeta, and the
//! Goss series of a rank-1 module) the degree-n block is a multiple of the
//! power sum Σ_{deg a = n} a^{−s}. To precision M that sum only sees the top
//! M − ns coefficients of a below the leading one; if n exceeds that
//! number, every truncated value is hit q^{n−(M−ns)} times and the block
//! vanishes.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::mu::{MuTable, PrimeData};
use super::{SeriesKind, SeriesSpec};
use crate::algebra::fq::Fq;
use crate::algebra::irreducible::enumerate_monic_irreducibles;
use crate::algebra::laurent::Laurent;
use crate::algebra::poly::PolyA;
use crate::error::{Error, Result};
use crate::symmetric::SchurIndex;

/// A truncated series value with the cutoff and precision it is certified to.
#[derive(Clone, Debug, Serialize)]
pub struct DirichletValue {
    pub kind: SeriesKind,
    pub s: u32,
    pub value: Laurent,
    pub precision: i64,
    pub cutoff: u64,
    pub epsilon: String,
    pub terms: u64,
    pub method: &'static str,
}

/// Σ_{a monic, deg a = n} a^{−s} to absolute precision m.
pub fn power_sum(fq: Fq, n: usize, s: u32, m: i64) -> Laurent {
    if n == 0 {
        return Laurent::one(fq);
    }
    let rel = m - n as i64 * s as i64;
    if s == 0 || rel < 0 || n as i64 > rel {
        return Laurent::zero(fq, Some(m));
    }
    let one = PolyA::one(fq);
    let mut acc = Laurent::zero(fq, Some(m));
    for a in PolyA::monics(fq, n) {
        acc = &acc + &Laurent::from_quotient(&one, &a.pow(s as u64), m);
    }
    acc
}

/// Whether the summand only depends on the degree of a.
fn degree_only(spec: &SeriesSpec) -> bool {
    match spec.kind {
        SeriesKind::TwistedZeta => true,
        SeriesKind::GossDual => spec.rank_phi() == 1,
        _ => false,
    }
}

/// Number of slots a_1, …, a_k carried by the index of a term.
fn slot_count(spec: &SeriesSpec) -> usize {
    let r = spec.rank_phi();
    match spec.kind {
        SeriesKind::GossDual | SeriesKind::TwistedZeta => 1,
        SeriesKind::ConvUnequalRank => r,
        _ => r - 1,
    }
}

/// Per-prime terms of a series, with the μ tables they read from.
pub(crate) struct LocalTerms<'a> {
    spec: &'a SeriesSpec,
    primes: Vec<PolyA>,
    phi: Option<MuTable>,
    psi: Option<MuTable>,
    /// exponent vectors by weight cap, each with its weighted size
    vectors: Vec<Vec<(Vec<u32>, u64)>>,
}

impl<'a> LocalTerms<'a> {
    /// Data for primes of degree ≤ deg_max and prime-power tuples of
    /// weighted degree ≤ weight_cap.
    pub(crate) fn new(spec: &'a SeriesSpec, deg_max: usize, weight_cap: u64) -> Result<Self> {
        spec.validate()?;
        let fq = spec.fq;
        let extra = spec.rank_phi().max(spec.rank_psi()) + 1;
        let factor = if spec.kind == SeriesKind::SymTwiddle { 2 } else { 1 };
        let m_len = move |d: usize| factor * (weight_cap as usize / d.max(1)) + extra;
        let (phi, psi) = match spec.kind {
            SeriesKind::TwistedZeta => (None, None),
            _ => {
                let phi = MuTable::build(spec.phi.as_ref().expect("validated"), deg_max, m_len)?;
                let psi = match &spec.psi {
                    Some(psi) => Some(MuTable::build(psi, deg_max, m_len)?),
                    None => None,
                };
                (Some(phi), psi)
            }
        };
        let primes = match &phi {
            Some(t) => t.primes().iter().map(|p| p.f().clone()).collect(),
            None => enumerate_monic_irreducibles(fq, deg_max),
        };
        let k = slot_count(spec);
        let allowed = spec.slot_weights();
        let vectors = (0..=weight_cap).map(|w| exponent_vectors(k, &allowed, w)).collect();
        Ok(LocalTerms { spec, primes, phi, psi, vectors })
    }

    pub(crate) fn primes(&self) -> &[PolyA] {
        &self.primes
    }

    /// Nonzero exponent vectors e with Σ i·e_i ≤ w.
    pub(crate) fn vectors(&self, w: u64) -> &[(Vec<u32>, u64)] {
        let w = (w as usize).min(self.vectors.len() - 1);
        &self.vectors[w]
    }

    fn data(t: &Option<MuTable>, i: usize) -> &PrimeData {
        &t.as_ref().expect("table present").primes()[i]
    }

    /// Numerator and f-exponent of the denominator of the term at prime i
    /// with exponent vector e.
    pub(crate) fn term(&self, i: usize, e: &[u32]) -> Result<(PolyA, u64)> {
        let sp = self.spec;
        let fq = sp.fq;
        let s = sp.s as u64;
        let f = &self.primes[i];
        let d = f.deg() as u64;
        let total: u64 = e.iter().map(|&x| x as u64).sum();
        let wt: u64 = e.iter().enumerate().map(|(j, &x)| (j as u64 + 1) * x as u64).sum();
        Ok(match sp.kind {
            SeriesKind::TwistedZeta => (PolyA::constant(fq, fq.pow(sp.chi_base, d * total)), total * s),
            SeriesKind::GossDual => {
                let p = Self::data(&self.phi, i);
                let m = e[0] as usize;
                let v = p.mu.get(m).ok_or_else(|| Error::Guard(format!("μ table too short at {f}")))?;
                (v.clone(), total * (s + 1))
            }
            SeriesKind::ConvEqualRank => {
                let k = SchurIndex::new(e.to_vec());
                let a = Self::data(&self.phi, i).boldmu(&k)?;
                let b = Self::data(&self.psi, i).boldmu(&k)?;
                (&a * &b, 2 * total + s * wt)
            }
            SeriesKind::ConvUnequalRank => {
                let r = sp.rank_phi();
                let l = sp.rank_psi();
                let p = Self::data(&self.phi, i);
                let a = p.boldmu(&SchurIndex::new(e[..r - 1].to_vec()))?;
                let b = Self::data(&self.psi, i).boldmu(&SchurIndex::new(e.to_vec()).padded(l - 1))?;
                let chi = fq.pow(p.chi(), e[r - 1] as u64);
                ((&a * &b).scale(chi), 2 * total + s * wt)
            }
            SeriesKind::SymTwiddle => {
                let k = SchurIndex::new(e.iter().map(|&x| 2 * x).collect());
                (Self::data(&self.phi, i).boldmu(&k)?, 2 * total + s * wt)
            }
            SeriesKind::AltHat => {
                let k = SchurIndex::new(e.to_vec());
                (Self::data(&self.phi, i).boldmu(&k)?, total + s * wt)
            }
        })
    }
}

/// Nonzero e ∈ N^k supported on slots with weight in `allowed`, with
/// Σ (j+1)e_j ≤ w, paired with that weighted size.
fn exponent_vectors(k: usize, allowed: &[u32], w: u64) -> Vec<(Vec<u32>, u64)> {
    fn rec(pos: usize, k: usize, allowed: &[u32], left: u64, cur: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, u64)>, used: u64) {
        if pos == k {
            if used > 0 {
                out.push((cur.clone(), used));
            }
            return;
        }
        let step = pos as u64 + 1;
        let top = if allowed.contains(&(step as u32)) { left / step } else { 0 };
        for v in 0..=top {
            cur.push(v as u32);
            rec(pos + 1, k, allowed, left - v * step, cur, out, used + v * step);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, allowed, w, &mut Vec::new(), &mut out, 0);
    out
}

struct Walk<'a> {
    local: &'a LocalTerms<'a>,
    m: i64,
    eps: Ratio<i64>,
}

struct Acc {
    value: Laurent,
    terms: u64,
    bound_failures: u64,
}

impl Walk<'_> {
    fn add(&self, acc: &mut Acc, num: &PolyA, den: &PolyA, weighted: u64) {
        acc.terms += 1;
        let deg = num.deg() - den.deg();
        // deg ≤ −ε·weighted
        if Ratio::from_integer(deg) > -self.eps * Ratio::from_integer(weighted as i64) {
            acc.bound_failures += 1;
        }
        if deg >= -self.m {
            acc.value = &acc.value + &Laurent::from_quotient(num, den, self.m);
        }
    }

    /// All tuples whose smallest prime is primes[i].
    fn visit(&self, i: usize, budget: u64, num: &PolyA, den: &PolyA, weighted: u64, acc: &mut Acc) -> Result<()> {
        let f = &self.local.primes()[i];
        let d = f.deg() as u64;
        for (e, w) in self.local.vectors(budget / d) {
            let (ln, fexp) = self.local.term(i, e)?;
            if ln.is_zero() {
                continue;
            }
            let n2 = num * &ln;
            let d2 = den * &f.pow(fexp);
            let wd = weighted + w * d;
            self.add(acc, &n2, &d2, wd);
            let left = budget - w * d;
            for j in i + 1..self.local.primes().len() {
                if self.local.primes()[j].deg() as u64 > left {
                    break;
                }
                self.visit(j, left, &n2, &d2, wd, acc)?;
            }
        }
        Ok(())
    }
}

fn finish(spec: &SeriesSpec, value: Laurent, cutoff: u64, terms: u64, method: &'static str) -> DirichletValue {
    DirichletValue {
        kind: spec.kind,
        s: spec.s,
        value,
        precision: spec.precision,
        cutoff,
        epsilon: spec.epsilon().to_string(),
        terms,
        method,
    }
}

/// Sum over tuples by prime factorization, whatever the kind.
pub fn dirichlet_sum_tuples(spec: &SeriesSpec) -> Result<DirichletValue> {
    let cutoff = spec.cutoff_used();
    let min_w = spec.slot_weights().into_iter().min().unwrap_or(1) as u64;
    let local = LocalTerms::new(spec, (cutoff / min_w) as usize, cutoff)?;
    let fq = spec.fq;
    let m = spec.precision;
    let walk = Walk { local: &local, m, eps: spec.epsilon() };
    let one = PolyA::one(fq);
    let blocks: Vec<Result<Acc>> = (0..local.primes().len())
        .into_par_iter()
        .map(|i| {
            let mut acc = Acc { value: Laurent::zero(fq, Some(m)), terms: 0, bound_failures: 0 };
            if (local.primes()[i].deg() as u64) * min_w <= cutoff {
                walk.visit(i, cutoff, &one, &one, 0, &mut acc)?;
            }
            Ok(acc)
        })
        .collect();
    let mut value = Laurent::one(fq).truncate(m);
    let mut terms = 1;
    for b in blocks {
        let b = b?;
        if b.bound_failures > 0 {
            return Err(Error::Internal(format!("{} terms exceed the 𝝁 degree bound", b.bound_failures)));
        }
        value = &value + &b.value;
        terms += b.terms;
    }
    Ok(finish(spec, value, cutoff, terms, "tuples"))
}

/// Sum by degree blocks of power sums; only for summands depending on deg a.
pub fn dirichlet_sum_blocks(spec: &SeriesSpec) -> Result<DirichletValue> {
    spec.validate()?;
    if !degree_only(spec) {
        return Err(Error::Config(format!("{} does not depend on the degree alone", spec.kind)));
    }
    let fq = spec.fq;
    let cutoff = spec.cutoff_used();
    let (s, base) = match spec.kind {
        SeriesKind::TwistedZeta => (spec.s, spec.chi_base),
        _ => (spec.s + 1, spec.phi.as_ref().expect("validated").chi_of_degree(1)?),
    };
    let m = spec.precision;
    let blocks: Vec<(Laurent, u64)> = (0..=cutoff as usize)
        .into_par_iter()
        .map(|n| (power_sum(fq, n, s, m).scale(fq.pow(base, n as u64)), (fq.q() as u64).saturating_pow(n as u32)))
        .collect();
    let mut value = Laurent::zero(fq, Some(m));
    let mut terms = 0u64;
    for (b, count) in blocks {
        value = &value + &b;
        terms = terms.saturating_add(count);
    }
    Ok(finish(spec, value, cutoff, terms, "degree_blocks"))
}

/// The series truncated at its cutoff, to absolute precision M.
pub fn dirichlet_sum(spec: &SeriesSpec) -> Result<DirichletValue> {
    if degree_only(spec) {
        dirichlet_sum_blocks(spec)
    } else {
        dirichlet_sum_tuples(spec)
    }
}
