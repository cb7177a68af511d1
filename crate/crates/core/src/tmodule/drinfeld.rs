//! Drinfeld modules φ_t = θ + κ_1τ + ⋯ + κ_rτ^r over A.

use num_rational::Ratio;

use crate::algebra::fq::Fq;
use crate::algebra::poly::PolyA;
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::twisted::{Side, TwistedPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct DrinfeldModule {
    fq: Fq,
    kappa: Vec<PolyA>,
}

impl DrinfeldModule {
    /// `kappa` lists κ_1, …, κ_r; κ_r must be nonzero.
    pub fn new(fq: Fq, kappa: Vec<PolyA>) -> Result<Self> {
        match kappa.last() {
            None => Err(Error::Config("a Drinfeld module needs rank at least 1".into())),
            Some(k) if k.is_zero() => Err(Error::Config("the top coefficient κ_r must be nonzero".into())),
            Some(_) => Ok(DrinfeldModule { fq, kappa }),
        }
    }

    /// The Carlitz module θ + τ.
    pub fn carlitz(fq: Fq) -> Self {
        DrinfeldModule { fq, kappa: vec![PolyA::one(fq)] }
    }

    /// Rank-2 module θ + κ_1τ + κ_2τ².
    pub fn rank2(kappa1: PolyA, kappa2: u32) -> Result<Self> {
        let fq = kappa1.field();
        Self::new(fq, vec![kappa1, PolyA::constant(fq, kappa2)])
    }

    pub fn field(&self) -> Fq {
        self.fq
    }
    pub fn rank(&self) -> usize {
        self.kappa.len()
    }
    /// κ_i for 1 ≤ i ≤ r, zero outside.
    pub fn kappa(&self, i: usize) -> PolyA {
        if i == 0 || i > self.kappa.len() {
            PolyA::zero(self.fq)
        } else {
            self.kappa[i - 1].clone()
        }
    }
    pub fn kappas(&self) -> &[PolyA] {
        &self.kappa
    }
    /// κ_r ∈ F_q^×.
    pub fn everywhere_good(&self) -> bool {
        self.kappa.last().is_some_and(|k| k.deg() == 0)
    }
    pub(crate) fn require_good(&self) -> Result<u32> {
        if !self.everywhere_good() {
            return Err(Error::Config("the module needs κ_r ∈ F_q^× (everywhere good reduction)".into()));
        }
        Ok(self.kappa.last().unwrap().coeff(0))
    }

    /// φ_t as a twisted polynomial.
    pub fn phi_t(&self) -> TwistedPoly<PolyA> {
        let mut c = vec![PolyA::theta(self.fq)];
        c.extend(self.kappa.iter().cloned());
        TwistedPoly::scalar(&self.fq, Side::Tau, c).expect("τ side over A")
    }

    /// φ_a for a ∈ F_q[t], given by its coefficients (constant first).
    pub fn phi_action(&self, a: &PolyA) -> TwistedPoly<PolyA> {
        let phi = self.phi_t();
        let mut acc = TwistedPoly::zero(&self.fq, Side::Tau, 1);
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul(&phi).expect("same shape");
            let cst = TwistedPoly::scalar(&self.fq, Side::Tau, vec![PolyA::constant(self.fq, c)]).unwrap();
            acc = acc.add(&cst).expect("same shape");
        }
        acc
    }

    /// The exponent −max_i (deg κ_i − q^i)/(q^i − 1) over nonzero κ_i; the
    /// logarithm converges for |z| < |θ|^{exponent}.
    pub fn log_radius(&self) -> Ratio<i64> {
        let q = self.fq.q() as i64;
        let best = self
            .kappa
            .iter()
            .enumerate()
            .filter(|(_, k)| !k.is_zero())
            .map(|(i, k)| {
                let qi = q.pow(i as u32 + 1);
                Ratio::new(k.deg() - qi, qi - 1)
            })
            .max()
            .expect("κ_r is nonzero");
        -best
    }

    /// χ_φ on monic polynomials of degree d: ((−1)^{r+1}κ_r)^d ∈ F_q^×.
    pub fn chi_of_degree(&self, d: u64) -> Result<u32> {
        let kr = self.require_good()?;
        let base = if self.rank() % 2 == 1 { kr } else { self.fq.neg(kr) };
        Ok(self.fq.pow(base, d))
    }

    /// Is the module still valid in characteristic p (for Sym²/Alt²)?
    pub fn characteristic(&self) -> u32 {
        PolyA::characteristic(&self.fq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carlitz_action() {
        let f = Fq::prime(3).unwrap();
        let c = DrinfeldModule::carlitz(f);
        let t = PolyA::theta(f);
        let ct = c.phi_action(&t);
        assert_eq!(ct, c.phi_t());
        assert_eq!(c.log_radius(), Ratio::new(3, 2));
        assert_eq!(c.chi_of_degree(5).unwrap(), 1);
    }

    #[test]
    fn action_is_multiplicative() {
        let f = Fq::prime(3).unwrap();
        let phi = DrinfeldModule::rank2(PolyA::one(f), 1).unwrap();
        let t2 = PolyA::theta(f).pow(2);
        let phi_t2 = phi.phi_action(&t2);
        assert_eq!(phi_t2.degree(), Some(4));
        let a = PolyA::from_ints(f, &[1, 2, 1]);
        let b = PolyA::from_ints(f, &[0, 1, 0, 2]);
        let ab = phi.phi_action(&(&a * &b));
        assert_eq!(ab, phi.phi_action(&a).mul(&phi.phi_action(&b)).unwrap());
        assert_eq!(ab.constant_term().get(0, 0), &(&a * &b));
        assert_eq!(phi.chi_of_degree(1).unwrap(), 2);
    }
}
