//! Exponential and logarithm coefficients of a t-module over K.
//!
//! Each degree solves d·X − X·d^{(n)} = R with d = θI + N, N nilpotent.
//! Writing c = θ − θ^{q^n} and L(X) = N·X − X·N^{(n)}, the solution is the
//! finite sum X = Σ_k (−1)^k L^k(R) / c^{k+1}.

use crate::algebra::fq::Fq;
use crate::algebra::matrix::Mat;
use crate::algebra::poly::PolyA;
use crate::algebra::rat::RatK;
use crate::error::{Error, Result};

use super::tmodule::TModule;

/// Exp = Σ B_i τ^i and Log = Σ C_i τ^i, with B_0 = C_0 = I.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpLogCoeffs {
    pub exp: Vec<Mat<RatK>>,
    pub log: Vec<Mat<RatK>>,
}

struct Solver {
    fq: Fq,
    dim: usize,
    a: Vec<Mat<RatK>>,
    nil: Mat<RatK>,
}

impl Solver {
    fn new(e: &TModule) -> Result<Self> {
        let fq = e.field();
        let dim = e.dim();
        if e.nilpotency_index().is_none() {
            return Err(Error::Config("∂E_t − θI is not nilpotent".into()));
        }
        let a: Vec<Mat<RatK>> = e.e_t().coeffs().iter().map(|m| m.map(&fq, |x| RatK::from_poly(x.clone()))).collect();
        let nil = &a[0] - &Mat::scalar(&fq, dim, &RatK::theta(fq));
        Ok(Solver { fq, dim, a, nil })
    }

    fn a(&self, j: usize) -> Option<&Mat<RatK>> {
        self.a.get(j)
    }

    /// Solves d·X − X·d^{(n)} = rhs.
    fn sylvester(&self, n: u32, rhs: Mat<RatK>) -> Mat<RatK> {
        let th = PolyA::theta(self.fq);
        let c = &th - &th.twist_n(n);
        let cinv = RatK::from_poly(c).inv().expect("θ ≠ θ^{q^n} for n ≥ 1");
        let nn = self.nil.twist(n);
        let mut term = rhs;
        let mut scale = cinv.clone();
        let mut acc = Mat::zeros(&self.fq, self.dim, self.dim);
        let mut sign = true;
        while !term.is_zero() {
            let t = term.scale(&scale);
            acc = if sign { &acc + &t } else { &acc - &t };
            term = &(&self.nil * &term) - &(&term * &nn);
            scale = &scale * &cinv;
            sign = !sign;
        }
        acc
    }
}

/// B_0, …, B_{n_max} from B_n d^{(n)} − d B_n = Σ_{j≥1} A_j B_{n−j}^{(j)}.
pub fn exp_coeffs(e: &TModule, n_max: usize) -> Result<Vec<Mat<RatK>>> {
    let s = Solver::new(e)?;
    let mut b = vec![Mat::identity(&s.fq, s.dim)];
    for n in 1..=n_max {
        let mut r = Mat::zeros(&s.fq, s.dim, s.dim);
        for j in 1..=n {
            if let Some(aj) = s.a(j) {
                r = &r + &(aj * &b[n - j].twist(j as u32));
            }
        }
        b.push(s.sylvester(n as u32, -&r));
    }
    Ok(b)
}

/// C_0, …, C_{n_max} from d C_n − C_n d^{(n)} = Σ_{j≥1} C_{n−j} A_j^{(n−j)}.
pub fn log_coeffs(e: &TModule, n_max: usize) -> Result<Vec<Mat<RatK>>> {
    let s = Solver::new(e)?;
    let mut c = vec![Mat::identity(&s.fq, s.dim)];
    for n in 1..=n_max {
        let mut r = Mat::zeros(&s.fq, s.dim, s.dim);
        for j in 1..=n {
            if let Some(aj) = s.a(j) {
                r = &r + &(&c[n - j] * &aj.twist((n - j) as u32));
            }
        }
        c.push(s.sylvester(n as u32, r));
    }
    Ok(c)
}

impl ExpLogCoeffs {
    pub fn compute(e: &TModule, n_max: usize) -> Result<Self> {
        Ok(ExpLogCoeffs { exp: exp_coeffs(e, n_max)?, log: log_coeffs(e, n_max)? })
    }

    /// Coefficient of τ^n in Log∘Exp, which is I for n = 0 and zero otherwise.
    pub fn composition(&self, n: usize) -> Mat<RatK> {
        let first = &self.log[0];
        let mut acc = Mat::zeros(first.ctx(), first.rows(), first.cols());
        for i in 0..=n {
            acc = &acc + &(&self.log[i] * &self.exp[n - i].twist(i as u32));
        }
        acc
    }

    /// Largest n with Log∘Exp ≡ id through τ^n.
    pub fn verified_order(&self) -> usize {
        let n_max = self.exp.len().min(self.log.len()) - 1;
        for n in 1..=n_max {
            if !self.composition(n).is_zero() {
                return n - 1;
            }
        }
        n_max
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tmodule::drinfeld::DrinfeldModule;

    #[test]
    fn carlitz_first_coefficients() {
        let f = Fq::prime(3).unwrap();
        let c = TModule::from_drinfeld(&DrinfeldModule::carlitz(f));
        let el = ExpLogCoeffs::compute(&c, 4).unwrap();
        let th = PolyA::theta(f);
        let d1 = RatK::from_poly(&th - &th.pow(3));
        assert_eq!(el.log[1].get(0, 0), &d1.inv().unwrap());
        assert_eq!(el.exp[1].get(0, 0), &(-&d1).inv().unwrap());
        // B_2 = 1/((θ^9−θ)(θ^9−θ^3))
        let b2 = &(&th.pow(9) - &th) * &(&th.pow(9) - &th.pow(3));
        assert_eq!(el.exp[2].get(0, 0), &RatK::from_poly(b2).inv().unwrap());
        assert_eq!(el.verified_order(), 4);
    }

    #[test]
    fn tensor_inverse_pair() {
        let f = Fq::prime(3).unwrap();
        let phi = DrinfeldModule::rank2(PolyA::theta(f), 1).unwrap();
        let e = TModule::sym2(&phi).unwrap();
        let el = ExpLogCoeffs::compute(&e, 3).unwrap();
        assert_eq!(el.verified_order(), 3);
        let e = TModule::tensor(&phi, &phi).unwrap();
        let el = ExpLogCoeffs::compute(&e, 3).unwrap();
        assert_eq!(el.verified_order(), 3);
    }
}
