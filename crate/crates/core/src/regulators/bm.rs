//! The functions B_m(t) of a rank-2 Drinfeld module and their values at t = θ.
//!
//! B_0 = 1, B_{−1} = 0 and
//! B_m = (κ_1^{(m−1)}B_{m−1} + κ_2B_{m−2}) / (t − θ^{q^m}).
//! They are stored as B_m = N_m / ∏_{i=1}^m (t − θ^{q^i}) with
//! N_m = κ_1^{(m−1)}N_{m−1} + κ_2(t − θ^{q^{m−1}})N_{m−2}.

use crate::algebra::bivar::{BivarRat, PolyAT, Var};
use crate::algebra::fq::Fq;
use crate::algebra::matrix::Mat;
use crate::algebra::poly::PolyA;
use crate::algebra::rat::RatK;
use crate::error::{Error, Result};
use crate::tmodule::{matrix_t, DrinfeldModule, TensorKind};

/// B_m(t) and the four families β_m = B_m(θ), β̃_m = B_m^{(1)}(θ),
/// β′_m = ∂_tB_m(θ), β̂_m = ∂_θB_m(θ) for 0 ≤ m ≤ m_max.
#[derive(Clone, Debug)]
pub struct BmSequence {
    phi: DrinfeldModule,
    kappa1: PolyA,
    kappa2: PolyA,
    numer: Vec<PolyAT>,
    beta: Vec<RatK>,
    beta_tilde: Vec<RatK>,
    beta_prime: Vec<RatK>,
    beta_hat: Vec<RatK>,
}

impl BmSequence {
    pub fn new(phi: &DrinfeldModule) -> Result<Self> {
        if phi.rank() != 2 || !phi.everywhere_good() {
            return Err(Error::Config("B_m needs a rank-2 module with κ_2 ∈ F_q^×".into()));
        }
        let fq = phi.field();
        let mut s = BmSequence {
            phi: phi.clone(),
            kappa1: phi.kappa(1),
            kappa2: phi.kappa(2),
            numer: vec![PolyAT::constant(PolyA::one(fq))],
            beta: Vec::new(),
            beta_tilde: Vec::new(),
            beta_prime: Vec::new(),
            beta_hat: Vec::new(),
        };
        s.extend(0)?;
        Ok(s)
    }

    /// A populated sequence through m_max.
    pub fn with_families(phi: &DrinfeldModule, m_max: usize) -> Result<Self> {
        let mut s = Self::new(phi)?;
        s.extend(m_max)?;
        Ok(s)
    }

    pub fn field(&self) -> Fq {
        self.phi.field()
    }
    pub fn phi(&self) -> &DrinfeldModule {
        &self.phi
    }
    pub fn kappa1(&self) -> &PolyA {
        &self.kappa1
    }
    pub fn kappa2(&self) -> &PolyA {
        &self.kappa2
    }
    /// Largest m with all families available.
    pub fn m_max(&self) -> usize {
        self.beta.len() - 1
    }

    fn theta_q(&self, i: u32) -> PolyA {
        PolyA::theta(self.field()).twist_n(i)
    }

    fn numer_at(&self, m: i64) -> PolyAT {
        if m < 0 {
            PolyAT::zero(self.field())
        } else {
            self.numer[m as usize].clone()
        }
    }

    /// Extends every cache through m_max.
    pub fn extend(&mut self, m_max: usize) -> Result<()> {
        let fq = self.field();
        while self.numer.len() <= m_max {
            let m = self.numer.len() as i64;
            let a = self.numer_at(m - 1).scale(&self.kappa1.twist_n(m as u32 - 1));
            let b = self.numer_at(m - 2).mul_linear(&self.theta_q(m as u32 - 1)).scale(&self.kappa2);
            self.numer.push(a.add(&b));
        }
        let th = PolyA::theta(fq);
        let thr = RatK::theta(fq);
        while self.beta.len() <= m_max {
            let m = self.beta.len();
            let mut den = PolyA::one(fq);
            let mut den_tilde = PolyA::one(fq);
            for i in 1..=m as u32 {
                den = &den * &(&th - &self.theta_q(i));
                den_tilde = &den_tilde * &(&th - &self.theta_q(i + 1));
            }
            let n = &self.numer[m];
            self.beta.push(RatK::new(n.eval(&th), den)?);
            self.beta_tilde.push(RatK::new(n.twist(1).eval(&th), den_tilde)?);
            let b = self.bm(m as i64);
            self.beta_prime.push(b.hyperderivative(Var::T).eval_t(&thr)?);
            self.beta_hat.push(b.hyperderivative(Var::Theta).eval_t(&thr)?);
        }
        Ok(())
    }

    /// B_m(t); zero for m < 0. Requires m ≤ the extended range.
    pub fn bm(&self, m: i64) -> BivarRat {
        let fq = self.field();
        if m < 0 {
            return BivarRat::zero(fq);
        }
        let lin = (1..=m as u32).map(|i| (self.theta_q(i), 1)).collect();
        BivarRat::from_parts(self.numer[m as usize].clone(), PolyA::one(fq), lin).expect("monic denominator")
    }

    fn fam(v: &[RatK], m: i64, fq: Fq) -> RatK {
        if m < 0 {
            RatK::zero(fq)
        } else {
            v[m as usize].clone()
        }
    }
    pub fn beta(&self, m: i64) -> RatK {
        Self::fam(&self.beta, m, self.field())
    }
    pub fn beta_tilde(&self, m: i64) -> RatK {
        Self::fam(&self.beta_tilde, m, self.field())
    }
    pub fn beta_prime(&self, m: i64) -> RatK {
        Self::fam(&self.beta_prime, m, self.field())
    }
    pub fn beta_hat(&self, m: i64) -> RatK {
        Self::fam(&self.beta_hat, m, self.field())
    }

    /// β′_m − d/dθ(β_m) = −β̂_m.
    pub fn chain_rule_holds(&self, m: usize) -> bool {
        let m = m as i64;
        &self.beta_prime(m) - &self.beta(m).derivative() == -&self.beta_hat(m)
    }

    /// Whether the denominator of B_m(t) divides ∏_{i≤m}(t − θ^{q^i}).
    pub fn denominator_shape_holds(&self, m: usize) -> bool {
        let b = self.bm(m as i64);
        b.theta_denominator().is_constant()
            && b.linear_factors().iter().all(|(c, e)| *e == 1 && (1..=m as u32).any(|i| *c == self.theta_q(i)))
    }

    /// The 2×2 matrix with rows (B_m, κ_2/(t−θ^q)·B_{m−1}^{(1)}) and
    /// (B_{m−1}, κ_2/(t−θ^q)·B_{m−2}^{(1)}).
    pub fn r_phi(&self, m: i64) -> Mat<BivarRat> {
        let fq = self.field();
        let k = &BivarRat::from_rat(&RatK::from_poly(self.kappa2.clone())) * &BivarRat::inv_linear(&self.theta_q(1), 1);
        Mat::from_rows(
            &fq,
            vec![
                vec![self.bm(m), &k * &self.bm(m - 1).twist_n(1)],
                vec![self.bm(m - 1), &k * &self.bm(m - 2).twist_n(1)],
            ],
        )
    }

    /// 𝓡_{E,m} = T_E of the matrix from [`Self::r_phi`].
    pub fn r_em(&self, kind: TensorKind, m: i64) -> Result<Mat<BivarRat>> {
        if m < 1 || m as usize > self.m_max() {
            return Err(Error::Guard(format!("𝓡 at m = {m} outside 1..={}", self.m_max())));
        }
        matrix_t(&self.r_phi(m), kind)
    }

    /// (Φ_φ^{−1})^{(1)} = [[κ_1/(t−θ^q), κ_2/(t−θ^q)], [1, 0]].
    pub fn phi_inv_twisted(&self) -> Mat<BivarRat> {
        let fq = self.field();
        let d = BivarRat::inv_linear(&self.theta_q(1), 1);
        let k1 = &BivarRat::from_rat(&RatK::from_poly(self.kappa1.clone())) * &d;
        let k2 = &BivarRat::from_rat(&RatK::from_poly(self.kappa2.clone())) * &d;
        Mat::from_rows(&fq, vec![vec![k1, k2], vec![BivarRat::one(fq), BivarRat::zero(fq)]])
    }

    /// 𝓡_{E,m} = 𝓡_{E,m−1}^{(1)}·T_E((Φ^{−1})^{(1)}) for m ≥ 2.
    pub fn r_em_recursion_holds(&self, kind: TensorKind, m: i64) -> Result<bool> {
        let lhs = self.r_em(kind, m)?;
        let rhs = &self.r_em(kind, m - 1)?.twist(1) * &matrix_t(&self.phi_inv_twisted(), kind)?;
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tmodule::{log_coeffs, TModule};

    fn phi(k1: PolyA) -> DrinfeldModule {
        DrinfeldModule::rank2(k1, 1).unwrap()
    }

    #[test]
    fn first_values() {
        let fq = Fq::prime(3).unwrap();
        let th = PolyA::theta(fq);
        let k1 = &th + &PolyA::one(fq);
        let s = BmSequence::with_families(&phi(k1.clone()), 3).unwrap();
        assert_eq!(s.bm(0), BivarRat::one(fq));
        let b1 = &BivarRat::from_rat(&RatK::from_poly(k1.clone())) * &BivarRat::inv_linear(&th.pow(3), 1);
        assert_eq!(s.bm(1), b1);
        let b2 = &(&(&BivarRat::from_rat(&RatK::from_poly(&k1.twist_n(1) * &k1)) * &BivarRat::inv_linear(&th.pow(9), 1))
            * &BivarRat::inv_linear(&th.pow(3), 1))
            + &BivarRat::inv_linear(&th.pow(9), 1);
        assert_eq!(s.bm(2), b2);
        assert_eq!(s.beta(1), RatK::new(k1, &th - &th.pow(3)).unwrap());
        assert_eq!(s.beta_prime(0), RatK::zero(fq));
        assert_eq!(s.beta_tilde(0), RatK::one(fq));
    }

    #[test]
    fn beta_is_log_coefficient_and_chain_rule() {
        let fq = Fq::prime(3).unwrap();
        for k1 in [PolyA::zero(fq), PolyA::one(fq), PolyA::theta(fq)] {
            let p = phi(k1);
            let s = BmSequence::with_families(&p, 4).unwrap();
            let c = log_coeffs(&TModule::from_drinfeld(&p), 4).unwrap();
            for m in 0..=4 {
                assert_eq!(&s.beta(m as i64), c[m].get(0, 0));
                assert!(s.chain_rule_holds(m));
                assert!(s.denominator_shape_holds(m));
            }
        }
    }

    #[test]
    fn r_em_shapes_and_recursion() {
        let fq = Fq::prime(3).unwrap();
        let s = BmSequence::with_families(&phi(PolyA::one(fq)), 4).unwrap();
        assert_eq!(s.r_em(TensorKind::Tensor2, 1).unwrap().rows(), 4);
        let alt = s.r_em(TensorKind::Alt2, 1).unwrap();
        assert_eq!(*alt.get(0, 0), s.r_phi(1).det());
        for kind in TensorKind::all() {
            for m in 2..=4 {
                assert!(s.r_em_recursion_holds(kind, m).unwrap(), "{kind:?} m = {m}");
            }
        }
    }
}
