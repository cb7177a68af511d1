//! Elementary, complete and Schur symmetric polynomials, evaluated without
//! roots through Jacobi–Trudi, plus truncated checks of the Cauchy and
//! Littlewood identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::fq::Fq;
use crate::algebra::matrix::Mat;
use crate::algebra::poly::PolyA;
use crate::algebra::rat::RatK;
use crate::algebra::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Index k = (k_1, …, k_{n−1}) of S_k in n variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SchurIndex {
    pub k: Vec<u32>,
}

impl SchurIndex {
    pub fn new(k: Vec<u32>) -> Self {
        SchurIndex { k }
    }
    pub fn zero(n: usize) -> Self {
        SchurIndex { k: vec![0; n.saturating_sub(1)] }
    }
    /// Number of variables.
    pub fn n(&self) -> usize {
        self.k.len() + 1
    }
    /// λ_i = k_i + ⋯ + k_{n−1}, λ_n = 0.
    pub fn partition(&self) -> Vec<u32> {
        let mut lam = vec![0u32; self.n()];
        for i in (0..self.k.len()).rev() {
            lam[i] = lam[i + 1] + self.k[i];
        }
        lam
    }
    /// k_1 + 2k_2 + ⋯ + (n−1)k_{n−1} = |λ|.
    pub fn weight(&self) -> u32 {
        self.k.iter().enumerate().map(|(i, &k)| (i as u32 + 1) * k).sum()
    }
    /// k_1 + ⋯ + k_{n−1} = λ_1.
    pub fn total(&self) -> u32 {
        self.k.iter().sum()
    }
    /// Reversed index (k_{n−1}, …, k_1).
    pub fn reversed(&self) -> Self {
        SchurIndex { k: self.k.iter().rev().copied().collect() }
    }
    /// The index padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Self {
        let mut k = self.k.clone();
        k.resize(len, 0);
        SchurIndex { k }
    }

    /// All indices in n variables of weight ≤ w_max, in lexicographic order.
    pub fn up_to_weight(n: usize, w_max: u32) -> Vec<SchurIndex> {
        fn rec(pos: usize, len: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<SchurIndex>) {
            if pos == len {
                out.push(SchurIndex { k: cur.clone() });
                return;
            }
            let step = pos as u32 + 1;
            for v in 0..=left / step {
                cur.push(v);
                rec(pos + 1, len, left - v * step, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n.saturating_sub(1), w_max, &mut Vec::new(), &mut out);
        out
    }
}

/// e_0, …, e_n of the roots of a monic polynomial given ascending.
pub fn elementary_from_monic<R: Ring>(p: &[R]) -> Result<Vec<R>> {
    let n = p.len().checked_sub(1).ok_or_else(|| Error::Config("empty polynomial".into()))?;
    if !p[n].is_one() {
        return Err(Error::Config("polynomial is not monic".into()));
    }
    Ok((0..=n).map(|i| if i % 2 == 0 { p[n - i].clone() } else { p[n - i].negate() }).collect())
}

/// e_0, …, e_n of explicit values.
pub fn elementary_of_values<R: Ring>(ctx: &R::Ctx, x: &[R]) -> Vec<R> {
    let mut e = vec![R::one_in(ctx)];
    for xi in x {
        let mut next = e.clone();
        next.push(R::zero_in(ctx));
        for i in 1..next.len() {
            next[i] = next[i].plus(&e[i - 1].times(xi));
        }
        e = next;
    }
    e
}

/// h_0, …, h_{m_max} from Σh_iT^i · Σ(−1)^i e_iT^i = 1.
pub fn complete_h<R: Ring>(ctx: &R::Ctx, e: &[R], m_max: usize) -> Vec<R> {
    let mut h = vec![R::one_in(ctx)];
    for m in 1..=m_max {
        let mut acc = R::zero_in(ctx);
        for i in 1..e.len().min(m + 1) {
            let t = e[i].times(&h[m - i]);
            acc = if i % 2 == 1 { acc.plus(&t) } else { acc.minus(&t) };
        }
        h.push(acc);
    }
    h
}

/// det(h_{λ_i − i + j}) for a partition of length n.
pub fn jacobi_trudi<R: Ring>(ctx: &R::Ctx, lambda: &[u32], h: &[R]) -> Result<R> {
    let n = lambda.len();
    let need = lambda.first().map_or(0, |&l| l as usize + n);
    if h.len() < need {
        return Err(Error::Config(format!("Jacobi–Trudi needs h up to index {}", need - 1)));
    }
    if n == 0 {
        return Ok(R::one_in(ctx));
    }
    let m = Mat::from_fn(ctx, n, n, |i, j| {
        let idx = lambda[i] as i64 - i as i64 + j as i64;
        if idx < 0 {
            R::zero_in(ctx)
        } else {
            h[idx as usize].clone()
        }
    });
    Ok(m.det())
}

/// S_k through Jacobi–Trudi in the complete symmetric polynomials.
pub fn schur_jacobi_trudi<R: Ring>(ctx: &R::Ctx, idx: &SchurIndex, h: &[R]) -> Result<R> {
    jacobi_trudi(ctx, &idx.partition(), h)
}

/// s_λ(x) as a quotient of alternants; values must be distinct.
pub fn bialternant<R: Field>(ctx: &R::Ctx, lambda: &[u32], x: &[R]) -> Result<R> {
    let n = x.len();
    if lambda.len() != n {
        return Err(Error::Dimension(format!("partition of length {} for {n} variables", lambda.len())));
    }
    let num = Mat::from_fn(ctx, n, n, |i, j| x[j].pow_u((lambda[i] as usize + n - 1 - i) as u64));
    let vdm = Mat::from_fn(ctx, n, n, |i, j| x[j].pow_u((n - 1 - i) as u64));
    let v = vdm.det_gauss();
    if v.is_zero() {
        return Err(Error::Config("repeated variable values".into()));
    }
    num.det_gauss().divide(&v).ok_or(Error::DivisionByZero)
}

/// S_k(x) by the bialternant formula.
pub fn schur_bialternant_oracle<R: Field>(ctx: &R::Ctx, idx: &SchurIndex, x: &[R]) -> Result<R> {
    if x.len() != idx.n() {
        return Err(Error::Dimension(format!("{} values for {} variables", x.len(), idx.n())));
    }
    bialternant(ctx, &idx.partition(), x)
}

/// Truncated power series in T.
#[derive(Clone, Debug, PartialEq)]
struct Series<R: Ring> {
    c: Vec<R>,
}

impl<R: Ring> Series<R> {
    fn one(ctx: &R::Ctx, w: usize) -> Self {
        let mut c = vec![R::zero_in(ctx); w + 1];
        c[0] = R::one_in(ctx);
        Series { c }
    }
    fn mul(&self, o: &Self) -> Self {
        let w = self.c.len();
        let ctx = self.c[0].ctx();
        let mut c = vec![R::zero_in(&ctx); w];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(w - i) {
                c[i + j] = c[i + j].plus(&a.times(b));
            }
        }
        Series { c }
    }
    /// (1 − a T^k)^{−1}.
    fn geometric(ctx: &R::Ctx, a: &R, k: usize, w: usize) -> Self {
        let mut s = Self::one(ctx, w);
        let mut p = R::one_in(ctx);
        let mut j = k;
        while k > 0 && j <= w {
            p = p.times(a);
            s.c[j] = p.clone();
            j += k;
        }
        s
    }
    fn add_term(&mut self, deg: usize, x: &R) {
        if deg < self.c.len() {
            self.c[deg] = self.c[deg].plus(x);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Cauchy,
    CauchyRect,
    LittlewoodSym,
    LittlewoodAlt,
    /// (x_1⋯x_n)^{|k|} S_k(1/x) = S_{reversed k}(x).
    Reorder,
    /// s_λ = (x_1⋯x_n)^{λ_n} S_{λ_1−λ_2, …}.
    PartitionShift,
    /// Jacobi–Trudi agrees with the bialternant.
    JacobiTrudi,
}

impl Identity {
    pub fn all() -> [Identity; 7] {
        use Identity::*;
        [Cauchy, CauchyRect, LittlewoodSym, LittlewoodAlt, Reorder, PartitionShift, JacobiTrudi]
    }
    pub fn name(self) -> &'static str {
        match self {
            Identity::Cauchy => "cauchy",
            Identity::CauchyRect => "cauchy_rect",
            Identity::LittlewoodSym => "littlewood_sym",
            Identity::LittlewoodAlt => "littlewood_alt",
            Identity::Reorder => "reorder",
            Identity::PartitionShift => "partition_shift",
            Identity::JacobiTrudi => "jacobi_trudi",
        }
    }
}

impl std::str::FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::all().into_iter().find(|i| i.name() == s).ok_or_else(|| Error::Config(format!("unknown identity `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub identity: Identity,
    pub n: usize,
    pub w: usize,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

fn schur_values<R: Ring>(ctx: &R::Ctx, x: &[R], w_max: usize) -> impl Fn(&SchurIndex) -> R {
    let e = elementary_of_values(ctx, x);
    let h = complete_h(ctx, &e, w_max + x.len() + 1);
    let ctx = ctx.clone();
    move |k: &SchurIndex| schur_jacobi_trudi(&ctx, k, &h).expect("enough h values")
}

fn product<R: Ring>(ctx: &R::Ctx, x: &[R]) -> R {
    x.iter().fold(R::one_in(ctx), |a, b| a.times(b))
}

fn check_cauchy(fq: Fq, x: &[PolyA], y: &[PolyA], w: usize) -> bool {
    let n = x.len();
    let mut lhs = Series::one(&fq, w);
    for xi in x {
        for yj in y {
            lhs = lhs.mul(&Series::geometric(&fq, &(xi * yj), 1, w));
        }
    }
    let sx = schur_values(&fq, x, w);
    let sy = schur_values(&fq, y, w);
    let mut sum = Series { c: vec![PolyA::zero(fq); w + 1] };
    if n == y.len() {
        for k in SchurIndex::up_to_weight(n, w as u32) {
            sum.add_term(k.weight() as usize, &(&sx(&k) * &sy(&k)));
        }
        let xy = &product(&fq, x) * &product(&fq, y);
        lhs == Series::geometric(&fq, &xy, n, w).mul(&sum)
    } else {
        let big_x = product(&fq, x);
        for kk in SchurIndex::up_to_weight(n + 1, w as u32) {
            let k = SchurIndex::new(kk.k[..n - 1].to_vec());
            let kp = kk.padded(y.len() - 1);
            let term = &(&sx(&k) * &sy(&kp)) * &big_x.pow(kk.k[n - 1] as u64);
            sum.add_term(kk.weight() as usize, &term);
        }
        lhs == sum
    }
}

fn check_littlewood(fq: Fq, x: &[PolyA], w: usize, sym: bool) -> bool {
    let n = x.len();
    let mut lhs = Series::one(&fq, w);
    for i in 0..n {
        for j in i..n {
            if i == j && !sym {
                continue;
            }
            lhs = lhs.mul(&Series::geometric(&fq, &(&x[i] * &x[j]), 1, w));
        }
    }
    let sx = schur_values(&fq, x, 2 * w);
    let big_x = product(&fq, x);
    let mut sum = Series { c: vec![PolyA::zero(fq); w + 1] };
    if sym {
        for k in SchurIndex::up_to_weight(n, 2 * w as u32) {
            if k.k.iter().all(|v| v % 2 == 0) {
                sum.add_term(k.weight() as usize / 2, &sx(&k));
            }
        }
        lhs == Series::geometric(&fq, &big_x.square(), n, w).mul(&sum)
    } else {
        for k in SchurIndex::up_to_weight(n, 2 * w as u32) {
            let odd_slots_zero = k.k.iter().enumerate().all(|(i, &v)| (i + 1) % 2 == 0 || v == 0);
            if odd_slots_zero {
                sum.add_term(k.weight() as usize / 2, &sx(&k));
            }
        }
        if n.is_multiple_of(2) {
            lhs == Series::geometric(&fq, &big_x, n / 2, w).mul(&sum)
        } else {
            lhs == sum
        }
    }
}

fn check_reorder(fq: Fq, x: &[RatK], w: usize) -> bool {
    let n = x.len();
    let inv: Vec<RatK> = x.iter().map(|v| v.inv().expect("nonzero")).collect();
    let sx = schur_values(&fq, x, w);
    let si = schur_values(&fq, &inv, w);
    let big_x = product(&fq, x);
    SchurIndex::up_to_weight(n, w as u32)
        .iter()
        .all(|k| &big_x.pow(k.total() as u64) * &si(k) == sx(&k.reversed()))
}

fn check_partition_shift(fq: Fq, x: &[RatK], w: usize, rng: &mut ChaCha8Rng) -> bool {
    let n = x.len();
    let big_x = product(&fq, x);
    let sx = schur_values(&fq, x, w);
    SchurIndex::up_to_weight(n, w as u32).iter().all(|k| {
        let shift = rng.gen_range(0..=2u32);
        let lam: Vec<u32> = k.partition().iter().map(|v| v + shift).collect();
        let Ok(lhs) = bialternant(&fq, &lam, x) else {
            return false;
        };
        lhs == &big_x.pow(shift as u64) * &sx(k)
    })
}

fn check_jacobi_trudi(fq: Fq, x: &[RatK], w: usize) -> bool {
    let sx = schur_values(&fq, x, w);
    SchurIndex::up_to_weight(x.len(), w as u32)
        .iter()
        .all(|k| schur_bialternant_oracle(&fq, k, x).is_ok_and(|v| v == sx(k)))
}

fn random_values(fq: Fq, n: usize, rng: &mut ChaCha8Rng, distinct: bool) -> Vec<PolyA> {
    loop {
        let v: Vec<PolyA> = (0..n).map(|_| PolyA::random(fq, 3, rng)).collect();
        let nonzero = v.iter().all(|x| !x.is_zero());
        let unique = (0..n).all(|i| (i + 1..n).all(|j| v[i] != v[j]));
        if !distinct || (nonzero && unique) {
            return v;
        }
    }
}

/// Runs one identity on `trials` seeded random specializations in A of degree ≤ 2.
pub fn identity_suite(fq: Fq, which: Identity, n: usize, w: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    if !(2..=4).contains(&n) || w > 8 {
        return Err(Error::Guard(format!("identity suite needs 2 ≤ n ≤ 4 and W ≤ 8, got n={n}, W={w}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ (w as u64) << 40);
    let mut passed = 0;
    for _ in 0..trials {
        let distinct = !matches!(which, Identity::Cauchy | Identity::CauchyRect | Identity::LittlewoodSym | Identity::LittlewoodAlt);
        let x = random_values(fq, n, &mut rng, distinct);
        let ok = match which {
            Identity::Cauchy => {
                let y = random_values(fq, n, &mut rng, false);
                check_cauchy(fq, &x, &y, w)
            }
            Identity::CauchyRect => {
                let y = random_values(fq, n + 1, &mut rng, false);
                check_cauchy(fq, &x, &y, w)
            }
            Identity::LittlewoodSym => check_littlewood(fq, &x, w, true),
            Identity::LittlewoodAlt => check_littlewood(fq, &x, w, false),
            Identity::Reorder => check_reorder(fq, &to_k(&x), w),
            Identity::PartitionShift => check_partition_shift(fq, &to_k(&x), w, &mut rng),
            Identity::JacobiTrudi => check_jacobi_trudi(fq, &to_k(&x), w),
        };
        passed += ok as usize;
    }
    Ok(SuiteReport { identity: which, n, w, trials, seed, passed })
}

fn to_k(x: &[PolyA]) -> Vec<RatK> {
    x.iter().cloned().map(RatK::from_poly).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Fq {
        Fq::prime(5).unwrap()
    }

    #[test]
    fn vieta_and_complete() {
        let f = f5();
        let p = |c: &[i64]| PolyA::from_ints(f, c);
        let e = elementary_from_monic(&[p(&[2]), p(&[-3]), p(&[1])]).unwrap();
        assert_eq!(e, vec![p(&[1]), p(&[3]), p(&[2])]);
        let h = complete_h(&f, &e, 3);
        assert_eq!(h[0], p(&[1]));
        assert_eq!(h[2], &e[1].square() - &e[2]);
        let a = p(&[1, 2]);
        let h1 = complete_h(&f, &[p(&[1]), a.clone()], 4);
        assert_eq!(h1[4], a.pow(4));
    }

    #[test]
    fn specializations() {
        let f = f5();
        let x: Vec<PolyA> = vec![PolyA::from_ints(f, &[1, 1]), PolyA::from_ints(f, &[0, 2]), PolyA::from_ints(f, &[3])];
        let e = elementary_of_values(&f, &x);
        let h = complete_h(&f, &e, 10);
        assert_eq!(schur_jacobi_trudi(&f, &SchurIndex::new(vec![1, 0]), &h).unwrap(), e[1]);
        assert_eq!(schur_jacobi_trudi(&f, &SchurIndex::new(vec![0, 1]), &h).unwrap(), e[2]);
        assert_eq!(schur_jacobi_trudi(&f, &SchurIndex::new(vec![4, 0]), &h).unwrap(), h[4]);
        let h2 = complete_h(&f, &elementary_of_values(&f, &x[..2]), 6);
        assert_eq!(schur_jacobi_trudi(&f, &SchurIndex::new(vec![3]), &h2).unwrap(), h2[3]);
        let xs: Vec<RatK> = to_k(&x[..2]);
        let s = schur_bialternant_oracle(&f, &SchurIndex::new(vec![2]), &xs).unwrap();
        let want = &(&xs[0].pow(2) + &(&xs[0] * &xs[1])) + &xs[1].pow(2);
        assert_eq!(s, want);
    }

    #[test]
    fn weights() {
        let ks = SchurIndex::up_to_weight(3, 3);
        assert!(ks.iter().all(|k| k.weight() <= 3));
        assert_eq!(ks.len(), 6);
        assert_eq!(SchurIndex::new(vec![2, 1]).partition(), vec![3, 1, 0]);
    }

    #[test]
    fn suites_pass_small() {
        let f = f5();
        for id in Identity::all() {
            let r = identity_suite(f, id, 3, 4, 5, 7).unwrap();
            assert!(r.ok(), "{id:?}");
        }
    }
}
