//! Euler products, and the per-prime factorization of the Euler factors of
//! φ⊗ψ, Sym²φ and Alt²φ in the variable u = f^{−s}.

use num_rational::Ratio;
use serde::Serialize;

use super::dirichlet::LocalTerms;
use super::mu::{mu_len_for, PrimeData};
use super::SeriesSpec;
use crate::algebra::laurent::Laurent;
use crate::algebra::poly::PolyA;
use crate::algebra::rat::RatK;
use crate::error::{Error, Result};
use crate::frobenius::{dual_poly, tensor_structure_charpoly};
use crate::symmetric::SchurIndex;
use crate::tmodule::{DrinfeldModule, TensorKind};

/// ∏ over primes of degree ≤ d_max of the local factors, each expanded
/// through the cutoff of the spec, to absolute precision M.
pub fn euler_product(spec: &SeriesSpec, d_max: usize) -> Result<Laurent> {
    let fq = spec.fq;
    let m = spec.precision;
    let cap = spec.cutoff_used();
    let local = LocalTerms::new(spec, d_max, cap)?;
    let mut acc = Laurent::one(fq).truncate(m);
    for (i, f) in local.primes().iter().enumerate() {
        let d = f.deg() as u64;
        let mut factor = Laurent::one(fq).truncate(m);
        for (e, _) in local.vectors(cap / d) {
            let (num, fexp) = local.term(i, e)?;
            if !num.is_zero() {
                factor = &factor + &Laurent::from_quotient(&num, &f.pow(fexp), m);
            }
        }
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// Coefficients θ^j with j ≥ −n on which euler_product(d_max) and the
/// Dirichlet sum with cutoff d_max must agree.
pub fn agreement_precision(spec: &SeriesSpec, d_max: u64) -> i64 {
    let bound = spec.epsilon() * Ratio::from_integer(d_max as i64 + 1);
    (bound.ceil().to_integer() - 1).min(spec.precision)
}

/// Both sides of one Euler-factor identity as series in u.
#[derive(Clone, Debug, Serialize)]
pub struct EulerFactorCheck {
    pub kind: TensorKind,
    pub f: String,
    pub w: usize,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub passed: bool,
}

/// 1/(c_0 + c_1u + ⋯) through u^w, for c_0 = 1.
fn invert_series(c: &[RatK], w: usize) -> Vec<RatK> {
    let fq = c[0].field();
    let mut out = vec![RatK::one(fq)];
    for n in 1..=w {
        let mut acc = RatK::zero(fq);
        for i in 1..c.len().min(n + 1) {
            acc = &acc - &(&c[i] * &out[n - i]);
        }
        out.push(acc);
    }
    out
}

fn mul_series(a: &[RatK], b: &[RatK], w: usize) -> Vec<RatK> {
    let fq = a[0].field();
    let mut out = vec![RatK::zero(fq); w + 1];
    for (i, x) in a.iter().enumerate().take(w + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(w + 1 - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// (1 − c·u^k)^{−1} through u^w.
fn geometric(c: &RatK, k: usize, w: usize) -> Vec<RatK> {
    let fq = c.field();
    let mut out = vec![RatK::zero(fq); w + 1];
    let mut p = RatK::one(fq);
    let mut i = 0;
    while i <= w {
        out[i] = p.clone();
        p = &p * c;
        i += k;
    }
    out
}

/// Compares 𝐐^∨(u)^{−1} for E = φ⊗ψ, Sym²φ or Alt²φ at f, computed from the
/// characteristic polynomial of E, with the zeta factor times the sum of
/// Schur terms in 𝝁_φ (and 𝝁_ψ).
pub fn euler_factor_identity_check(
    kind: TensorKind,
    phi: &DrinfeldModule,
    psi: Option<&DrinfeldModule>,
    f: &PolyA,
    w: usize,
) -> Result<EulerFactorCheck> {
    if w > 10 {
        return Err(Error::Guard(format!("W = {w} exceeds 10")));
    }
    let fq = phi.field();
    let (phi, psi) = match (kind, psi) {
        (TensorKind::Tensor2, Some(psi)) if psi.rank() < phi.rank() => (psi, Some(phi)),
        (TensorKind::Tensor2, Some(psi)) => (phi, Some(psi)),
        (TensorKind::Tensor2, None) => (phi, Some(phi)),
        (_, _) => (phi, None),
    };
    let r = phi.rank();
    let l = psi.map_or(r, DrinfeldModule::rank);
    if r < 2 && kind != TensorKind::Tensor2 {
        return Err(Error::Config(format!("{} needs rank ≥ 2", kind.name())));
    }
    let wm = w as u32;
    let need = mu_len_for(2 * wm, r.max(l)) + 1;
    let a = PrimeData::compute(phi, f, need)?;
    let b = match psi {
        Some(psi) => Some(PrimeData::compute(psi, f, need)?),
        None => None,
    };

    // left: dual reciprocal polynomial of the tensor structure, inverted
    let big_p = tensor_structure_charpoly(&a.charpoly.poly(), b.as_ref().map(|b| b.charpoly.poly()).as_deref(), kind)?;
    let p_dual = dual_poly(&big_p)?;
    let n = p_dual.len() - 1;
    let q_dual: Vec<RatK> = (0..=n).map(|i| p_dual[n - i].clone()).collect();
    let lhs = invert_series(&q_dual, w);

    // right: zeta factor and Schur sum
    let fr = RatK::from_poly(f.clone());
    let finv = fr.inv()?;
    let f_pow = |e: u32| finv.pow(e as u64);
    let chi_a = RatK::constant(fq, a.chi());
    let mut sum = vec![RatK::zero(fq); w + 1];
    let (zeta_c, zeta_k) = match kind {
        TensorKind::Tensor2 => {
            let b = b.as_ref().expect("ψ present");
            let chi_b = RatK::constant(fq, b.chi());
            for k in SchurIndex::up_to_weight(r + usize::from(r < l), wm) {
                let wt = k.weight() as usize;
                let (ka, kb, extra) = if r < l {
                    let ka = SchurIndex::new(k.k[..r - 1].to_vec());
                    (ka, k.padded(l - 1), k.k[r - 1])
                } else {
                    (k.clone(), k.clone(), 0)
                };
                let mut t = RatK::from_poly(&a.boldmu(&ka)? * &b.boldmu(&kb)?);
                t = &t * &f_pow(ka.total() + kb.total());
                t = &t * &(&chi_a * &finv).pow(extra as u64);
                sum[wt] = &sum[wt] + &t;
            }
            if r < l {
                (None, 0)
            } else {
                (Some(&(&chi_a * &chi_b) * &f_pow(2)), r)
            }
        }
        TensorKind::Sym2 => {
            for k in SchurIndex::up_to_weight(r, wm) {
                let k2 = SchurIndex::new(k.k.iter().map(|x| 2 * x).collect());
                let t = &RatK::from_poly(a.boldmu(&k2)?) * &f_pow(k2.total());
                let wt = k.weight() as usize;
                sum[wt] = &sum[wt] + &t;
            }
            (Some(&(&chi_a * &chi_a) * &f_pow(2)), r)
        }
        TensorKind::Alt2 => {
            for k in SchurIndex::up_to_weight(r, 2 * wm) {
                if k.k.iter().enumerate().any(|(i, &x)| i % 2 == 0 && x > 0) || k.weight() % 2 == 1 {
                    continue;
                }
                let t = &RatK::from_poly(a.boldmu(&k)?) * &f_pow(k.total());
                let wt = k.weight() as usize / 2;
                if wt <= w {
                    sum[wt] = &sum[wt] + &t;
                }
            }
            if r % 2 == 0 {
                (Some(&chi_a * &finv), r / 2)
            } else {
                (None, 0)
            }
        }
    };
    let rhs = match zeta_c {
        Some(c) => mul_series(&geometric(&c, zeta_k, w), &sum, w),
        None => sum,
    };
    let passed = lhs == rhs;
    Ok(EulerFactorCheck {
        kind,
        f: f.to_string(),
        w,
        lhs: lhs.iter().map(ToString::to_string).collect(),
        rhs: rhs.iter().map(ToString::to_string).collect(),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::Fq;
    use crate::lseries::dirichlet::dirichlet_sum_tuples;

    fn rank2(fq: Fq) -> DrinfeldModule {
        DrinfeldModule::rank2(PolyA::theta(fq), 1).unwrap()
    }

    #[test]
    fn tensor_equal_rank_at_theta() {
        let fq = Fq::prime(3).unwrap();
        let phi = rank2(fq);
        let psi = DrinfeldModule::rank2(PolyA::one(fq), 2).unwrap();
        let c = euler_factor_identity_check(TensorKind::Tensor2, &phi, Some(&psi), &PolyA::theta(fq), 6).unwrap();
        assert!(c.passed);
    }

    #[test]
    fn alt2_rank2_is_geometric() {
        let fq = Fq::prime(3).unwrap();
        let phi = rank2(fq);
        let f = PolyA::from_ints(fq, &[1, 1]);
        let c = euler_factor_identity_check(TensorKind::Alt2, &phi, None, &f, 5).unwrap();
        assert!(c.passed);
        let chi = phi.chi_of_degree(1).unwrap();
        let x = &RatK::constant(fq, chi) * &RatK::from_poly(f.clone()).inv().unwrap();
        for (i, v) in c.lhs.iter().enumerate() {
            assert_eq!(*v, x.pow(i as u64).to_string());
        }
    }

    #[test]
    fn sym2_and_unequal_rank() {
        let fq = Fq::prime(3).unwrap();
        let phi = rank2(fq);
        let f = PolyA::from_ints(fq, &[1, 0, 1]);
        assert!(euler_factor_identity_check(TensorKind::Sym2, &phi, None, &f, 4).unwrap().passed);
        let psi = DrinfeldModule::new(fq, vec![PolyA::one(fq), PolyA::theta(fq), PolyA::constant(fq, 1)]).unwrap();
        let f = PolyA::theta(fq);
        assert!(euler_factor_identity_check(TensorKind::Tensor2, &phi, Some(&psi), &f, 5).unwrap().passed);
        assert!(euler_factor_identity_check(TensorKind::Sym2, &psi, None, &f, 4).unwrap().passed);
        assert!(euler_factor_identity_check(TensorKind::Alt2, &psi, None, &f, 4).unwrap().passed);
    }

    #[test]
    fn euler_matches_dirichlet() {
        let fq = Fq::prime(3).unwrap();
        let phi = rank2(fq);
        for spec in [
            SeriesSpec::goss_dual(&phi, 0, 6).unwrap(),
            SeriesSpec::sym_twiddle(&phi, 0, 6).unwrap(),
            SeriesSpec::convolution(&phi, &phi, 1, 6).unwrap(),
        ] {
            for d in 0..=3u64 {
                let e = euler_product(&spec, d as usize).unwrap();
                let sp = spec.clone().with_cutoff(d);
                let dsum = dirichlet_sum_tuples(&sp).unwrap();
                let n = agreement_precision(&spec, d);
                assert!(e.agrees_to(&dsum.value, n), "{} d = {d}", spec.kind);
            }
        }
    }

    #[test]
    fn single_factor_at_zero() {
        let fq = Fq::prime(3).unwrap();
        let phi = rank2(fq);
        let f = PolyA::theta(fq);
        let data = PrimeData::compute(&phi, &f, 3).unwrap();
        let spec = SeriesSpec::goss_dual(&phi, 0, 10).unwrap();
        let e = euler_product(&spec, 1).unwrap();
        // product over the three primes of degree 1 of f/((−1)^r χ̄(f) P_f(1))
        let mut want = Laurent::one(fq);
        for g in crate::algebra::irreducible::enumerate_monic_irreducibles(fq, 1) {
            let d = PrimeData::compute(&phi, &g, 1).unwrap();
            let p1 = d.charpoly.eval(&PolyA::one(fq));
            let den = p1.scale(d.charpoly.c_f);
            want = &want * &Laurent::from_rat(&(&RatK::from_poly(g.clone()) / &RatK::from_poly(den)), 12);
        }
        assert!(e.agrees_to(&want, 10));
        assert_eq!(data.mu[0], PolyA::one(fq));
    }
}
