//! Coefficient families built from the β's, the matrices 𝐋_m, and the
//! logarithm coefficients of φ⊗φ, Sym²φ and Alt²φ assembled from them.

use serde::Serialize;

use super::bm::BmSequence;
use crate::algebra::matrix::Mat;
use crate::algebra::poly::PolyA;
use crate::algebra::rat::RatK;
use crate::error::{Error, Result};
use crate::tmodule::{log_coeffs, TModule, TensorKind};

/// L_{1,m}, L_{2,m}, L′_{1,m}, L′_{2,m}, L̃_{0,m}, L̃_{1,m}, L̃_{2,m},
/// L̂_{1,m}, L̂_{2,m} for 1 ≤ m ≤ m_max (index 0 is unused).
#[derive(Clone, Debug)]
pub struct LogFamily {
    pub l1: Vec<RatK>,
    pub l2: Vec<RatK>,
    pub lp1: Vec<RatK>,
    pub lp2: Vec<RatK>,
    pub lt0: Vec<RatK>,
    pub lt1: Vec<RatK>,
    pub lt2: Vec<RatK>,
    pub lh1: Vec<RatK>,
    pub lh2: Vec<RatK>,
}

impl LogFamily {
    pub fn new(b: &BmSequence) -> Result<Self> {
        let fq = b.field();
        let th = PolyA::theta(fq);
        let pre = RatK::new(b.kappa2().clone(), &th - &th.twist_n(1))?;
        let two = RatK::constant(fq, fq.from_int(2));
        let n = b.m_max();
        let mut fam = LogFamily {
            l1: vec![RatK::zero(fq)],
            l2: vec![RatK::zero(fq)],
            lp1: vec![RatK::zero(fq)],
            lp2: vec![RatK::zero(fq)],
            lt0: vec![RatK::zero(fq)],
            lt1: vec![RatK::zero(fq)],
            lt2: vec![RatK::zero(fq)],
            lh1: vec![RatK::zero(fq)],
            lh2: vec![RatK::zero(fq)],
        };
        for m in 1..=n as i64 {
            let (bm, bm1) = (b.beta(m), b.beta(m - 1));
            fam.l1.push(&bm * &bm);
            fam.l2.push(&bm * &bm1);
            fam.lp1.push(&two * &(&bm * &b.beta_prime(m)));
            fam.lp2.push(&(&b.beta_prime(m) * &bm1) + &(&bm * &b.beta_prime(m - 1)));
            fam.lt0.push(&pre * &(&(&bm * &b.beta_tilde(m - 2)) - &(&bm1 * &b.beta_tilde(m - 1))));
            fam.lt1.push(&pre * &(&bm * &b.beta_tilde(m - 1)));
            fam.lt2.push(&pre * &(&bm1 * &b.beta_tilde(m - 1)));
            fam.lh1.push(&two * &(&bm * &b.beta_hat(m)));
            fam.lh2.push(&(&b.beta_hat(m) * &bm1) + &(&bm * &b.beta_hat(m - 1)));
        }
        Ok(fam)
    }

    pub fn m_max(&self) -> usize {
        self.l1.len() - 1
    }
}

/// 𝐋_m, the 4×4 matrix of coefficient combinations.
pub fn lm_matrix(b: &BmSequence, fam: &LogFamily, m: usize) -> Result<Mat<RatK>> {
    if m == 0 || m > fam.m_max() {
        return Err(Error::Guard(format!("𝐋_m at m = {m} outside 1..={}", fam.m_max())));
    }
    let fq = b.field();
    let th = PolyA::theta(fq);
    let dm = RatK::from_poly(&th - &th.twist_n(m as u32));
    let k1m = RatK::from_poly(b.kappa1().twist_n(m as u32));
    let k2 = RatK::from_poly(b.kappa2().clone());
    let k2i = k2.inv()?;
    let (l1, l2, lp1, lp2) = (&fam.l1[m], &fam.l2[m], &fam.lp1[m], &fam.lp2[m]);
    let (lt0, lt1, lt2) = (&fam.lt0[m], &fam.lt1[m], &fam.lt2[m]);
    let dk = &dm * &k2i;
    let kk = &k1m * &k2i;
    let rows = vec![
        vec![l1 + &(&dm * lp1), &k2 * lp2, &(&k1m * lp1) + &(&k2 * lp2), &k2 * lp1],
        vec![&dk * lt1, lt0 + lt2, &(&kk * lt1) + lt2, lt1.clone()],
        vec![&dk * lt1, lt2.clone(), &(lt0 + &(&kk * lt1)) + lt2, lt1.clone()],
        vec![&dk * l1, l2.clone(), &(&kk * l1) + l2, l1.clone()],
    ];
    Ok(Mat::from_rows(&fq, rows))
}

/// The coefficient of z^{(m)} in Log_E assembled from 𝐋_m: P·𝐋_m for
/// φ⊗φ, P·𝐋_m·Dup for Sym²φ (the z₂ column used twice), L̃_{0,m} for Alt²φ.
pub fn assembled_log_coeff(b: &BmSequence, fam: &LogFamily, kind: TensorKind, m: usize) -> Result<Mat<RatK>> {
    let fq = b.field();
    if m == 0 {
        return Ok(Mat::identity(&fq, kind.size(2)));
    }
    let k1 = RatK::from_poly(b.kappa1().clone());
    let k2 = RatK::from_poly(b.kappa2().clone());
    let z = RatK::zero(fq);
    let o = RatK::one(fq);
    match kind {
        TensorKind::Alt2 => Ok(Mat::from_rows(&fq, vec![vec![fam.lt0[m].clone()]])),
        TensorKind::Tensor2 => {
            let lm = lm_matrix(b, fam, m)?;
            let mut p = Mat::identity(&fq, 4);
            p.set(3, 2, -&k1.try_div(&k2)?);
            Ok(&p * &lm)
        }
        TensorKind::Sym2 => {
            if fq.p() == 2 {
                return Err(crate::Error::UnsupportedCharacteristic(2));
            }
            let lm = lm_matrix(b, fam, m)?;
            let half = RatK::constant(fq, fq.inv(2).expect("odd characteristic"));
            let c = -&(&k1.try_div(&k2)? * &half);
            let p = Mat::from_rows(
                &fq,
                vec![
                    vec![o.clone(), z.clone(), z.clone(), z.clone()],
                    vec![z.clone(), half.clone(), half.clone(), z.clone()],
                    vec![z.clone(), c.clone(), c, o.clone()],
                ],
            );
            let dup = Mat::from_rows(
                &fq,
                vec![
                    vec![o.clone(), z.clone(), z.clone()],
                    vec![z.clone(), o.clone(), z.clone()],
                    vec![z.clone(), o.clone(), z.clone()],
                    vec![z.clone(), z, o],
                ],
            );
            Ok(&(&p * &lm) * &dup)
        }
    }
}

/// Outcome of comparing assembled coefficients with the generic recursion.
#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub kind: TensorKind,
    pub kappa1: String,
    pub m_max: usize,
    pub mismatches: Vec<usize>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares [`assembled_log_coeff`] with the log coefficients of the
/// t-module E for 1 ≤ m ≤ m_max.
pub fn log_coeff_crosscheck(b: &BmSequence, kind: TensorKind, m_max: usize) -> Result<CrosscheckReport> {
    if m_max > 8 {
        return Err(Error::Guard(format!("m_max = {m_max} exceeds 8")));
    }
    let phi = b.phi();
    let e = match kind {
        TensorKind::Tensor2 => TModule::tensor(phi, phi)?,
        TensorKind::Sym2 => TModule::sym2(phi)?,
        TensorKind::Alt2 => TModule::alt2(phi)?,
    };
    let mut b = b.clone();
    b.extend(m_max)?;
    let fam = LogFamily::new(&b)?;
    let c = log_coeffs(&e, m_max)?;
    let mut mismatches = Vec::new();
    for (m, cm) in c.iter().enumerate().skip(1) {
        if assembled_log_coeff(&b, &fam, kind, m)? != *cm {
            mismatches.push(m);
        }
    }
    Ok(CrosscheckReport { kind, kappa1: b.kappa1().to_string(), m_max, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::Fq;
    use crate::tmodule::DrinfeldModule;

    #[test]
    fn lm_entries() {
        let fq = Fq::prime(3).unwrap();
        let phi = DrinfeldModule::rank2(PolyA::theta(fq), 1).unwrap();
        let b = BmSequence::with_families(&phi, 3).unwrap();
        let fam = LogFamily::new(&b).unwrap();
        let lm = lm_matrix(&b, &fam, 2).unwrap();
        assert_eq!(*lm.get(3, 3), &b.beta(2) * &b.beta(2));
        let th = PolyA::theta(fq);
        let dm = RatK::from_poly(&th - &th.pow(9));
        assert_eq!(*lm.get(1, 0), &dm * &fam.lt1[2]);
        // m = 1: β̃_{−1} = 0 leaves one term
        let th_q = RatK::from_poly(&th - &th.pow(3));
        let want = -&(&(&RatK::one(fq) / &th_q) * &(&b.beta(0) * &b.beta_tilde(0)));
        assert_eq!(fam.lt0[1], want);
    }

    #[test]
    fn crosscheck_small() {
        let fq = Fq::prime(3).unwrap();
        for k1 in [PolyA::zero(fq), PolyA::one(fq), PolyA::theta(fq)] {
            let phi = DrinfeldModule::rank2(k1, 1).unwrap();
            let b = BmSequence::with_families(&phi, 3).unwrap();
            for kind in TensorKind::all() {
                let rep = log_coeff_crosscheck(&b, kind, 3).unwrap();
                assert!(rep.passed(), "{rep:?}");
            }
        }
    }
}
