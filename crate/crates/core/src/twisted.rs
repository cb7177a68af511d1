//! Twisted polynomial rings Mat_ℓ(R)[τ] and Mat_ℓ(R)[σ].
//!
//! τ·B = B^{(1)}·τ and σ·B = B^{(−1)}·σ. The σ side needs a perfect
//! coefficient ring.

use std::sync::Arc;

use crate::algebra::matrix::Mat;
use crate::algebra::residue::{FfCtx, FfElem, FqElem};
use crate::algebra::ring::SignedTwist;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Tau,
    Sigma,
}

impl Side {
    fn sign(self) -> i64 {
        match self {
            Side::Tau => 1,
            Side::Sigma => -1,
        }
    }
    fn opposite(self) -> Side {
        match self {
            Side::Tau => Side::Sigma,
            Side::Sigma => Side::Tau,
        }
    }
}

/// Σ B_i τ^i (or σ^i) with ℓ×ℓ matrix coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedPoly<R: SignedTwist> {
    side: Side,
    dim: usize,
    ctx: R::Ctx,
    coeffs: Vec<Mat<R>>,
}

impl<R: SignedTwist> TwistedPoly<R> {
    pub fn new(ctx: &R::Ctx, side: Side, dim: usize, mut coeffs: Vec<Mat<R>>) -> Result<Self> {
        if side == Side::Sigma && !R::PERFECT {
            return Err(Error::Config("σ-side polynomials need a perfect coefficient ring".into()));
        }
        if let Some(bad) = coeffs.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(format!("coefficient {}x{} in a {dim}-dimensional ring", bad.rows(), bad.cols())));
        }
        while coeffs.last().is_some_and(|m| m.is_zero()) {
            coeffs.pop();
        }
        Ok(TwistedPoly { side, dim, ctx: ctx.clone(), coeffs })
    }

    /// Scalar (ℓ = 1) polynomial Σ b_i τ^i.
    pub fn scalar(ctx: &R::Ctx, side: Side, coeffs: Vec<R>) -> Result<Self> {
        Self::new(ctx, side, 1, coeffs.into_iter().map(|x| Mat::from_vec(ctx, 1, 1, vec![x])).collect())
    }

    pub fn zero(ctx: &R::Ctx, side: Side, dim: usize) -> Self {
        TwistedPoly { side, dim, ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn constant(ctx: &R::Ctx, side: Side, m: Mat<R>) -> Result<Self> {
        let d = m.rows();
        Self::new(ctx, side, d, vec![m])
    }

    /// The monomial I·τ^n.
    pub fn monomial(ctx: &R::Ctx, side: Side, dim: usize, n: usize) -> Result<Self> {
        let mut c = vec![Mat::zeros(ctx, dim, dim); n];
        c.push(Mat::identity(ctx, dim));
        Self::new(ctx, side, dim, c)
    }

    pub fn side(&self) -> Side {
        self.side
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }
    pub fn coeffs(&self) -> &[Mat<R>] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// τ-degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn coeff(&self, i: usize) -> Mat<R> {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Mat::zeros(&self.ctx, self.dim, self.dim))
    }
    /// Constant term ∂β.
    pub fn constant_term(&self) -> Mat<R> {
        self.coeff(0)
    }
    /// Entry (0,0) of coefficient i, for ℓ = 1.
    pub fn scalar_coeff(&self, i: usize) -> R {
        self.coeff(i).get(0, 0).clone()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.side != o.side {
            return Err(Error::Dimension("twisted polynomials on opposite sides".into()));
        }
        if self.dim != o.dim {
            return Err(Error::Dimension(format!("dimensions {} and {}", self.dim, o.dim)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        Self::new(&self.ctx, self.side, self.dim, c)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        TwistedPoly { side: self.side, dim: self.dim, ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|m| -m).collect() }
    }

    /// Product using τ·B = B^{(1)}·τ (σ·B = B^{(−1)}·σ).
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(&self.ctx, self.side, self.dim));
        }
        let sgn = self.side.sign();
        let mut c = vec![Mat::zeros(&self.ctx, self.dim, self.dim); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let bt = twist_mat(b, sgn * i as i64)?;
                c[i + j] = &c[i + j] + &(a * &bt);
            }
        }
        Self::new(&self.ctx, self.side, self.dim, c)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut r = Self::monomial(&self.ctx, self.side, self.dim, 0)?;
        for _ in 0..e {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// β(x) = Σ B_i x^{(±i)} for a column vector x.
    pub fn evaluate(&self, x: &[R]) -> Result<Vec<R>> {
        if x.len() != self.dim {
            return Err(Error::Dimension(format!("vector of length {} for dimension {}", x.len(), self.dim)));
        }
        let sgn = self.side.sign();
        let mut out = vec![R::zero_in(&self.ctx); self.dim];
        for (i, b) in self.coeffs.iter().enumerate() {
            let xt: Vec<R> = x.iter().map(|v| v.twist_i(sgn * i as i64)).collect::<Result<_>>()?;
            for (o, v) in out.iter_mut().zip(b.mul_vec(&xt)) {
                *o = o.plus(&v);
            }
        }
        Ok(out)
    }

    /// The Ore anti-involution: (Σ B_i τ^i)^* = Σ (B_i^{(−i)})^T σ^i, and
    /// back with positive twists.
    pub fn ore_star(&self) -> Result<Self> {
        if !R::PERFECT {
            return Err(Error::Config("the adjoint needs a perfect coefficient ring".into()));
        }
        let sgn = -self.side.sign();
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, b)| Ok(twist_mat(b, sgn * i as i64)?.transpose()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.ctx, self.side.opposite(), self.dim, c)
    }
}

fn twist_mat<R: SignedTwist>(m: &Mat<R>, n: i64) -> Result<Mat<R>> {
    if n == 0 {
        return Ok(m.clone());
    }
    let data = m.entries().iter().map(|x| x.twist_i(n)).collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_vec(m.ctx(), m.rows(), m.cols(), data))
}

/// Matrix over F_q of the F_q-linear map x ↦ β(x) on F_f^ℓ in the basis
/// (θ̄^i e_k) ordered coordinate-major.
pub fn fq_matrix(beta: &TwistedPoly<FfElem>, ctx: &Arc<FfCtx>) -> Result<Mat<FqElem>> {
    let d = ctx.degree() as usize;
    let l = beta.dim();
    let fq = ctx.fq();
    let n = d * l;
    let mut m = Mat::zeros(&fq, n, n);
    for k in 0..l {
        for i in 0..d {
            let mut unit = vec![0u32; d];
            unit[i] = 1;
            let x: Vec<FfElem> =
                (0..l).map(|j| if j == k { FfElem::from_coords(ctx, &unit) } else { FfElem::zero(ctx) }).collect();
            let y = beta.evaluate(&x)?;
            for (kk, yk) in y.iter().enumerate() {
                for (ii, &c) in yk.coords().iter().enumerate() {
                    m.set(kk * d + ii, k * d + i, FqElem::new(fq, c));
                }
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::Fq;
    use crate::algebra::poly::PolyA;
    use crate::algebra::ring::Ring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn carlitz(f: Fq) -> TwistedPoly<PolyA> {
        TwistedPoly::scalar(&f, Side::Tau, vec![PolyA::theta(f), PolyA::one(f)]).unwrap()
    }

    #[test]
    fn tau_commutes_past_theta() {
        let f = Fq::prime(3).unwrap();
        let tau = TwistedPoly::monomial(&f, Side::Tau, 1, 1).unwrap();
        let th = TwistedPoly::scalar(&f, Side::Tau, vec![PolyA::theta(f)]).unwrap();
        let prod = tau.mul(&th).unwrap();
        let expect = TwistedPoly::scalar(&f, Side::Tau, vec![PolyA::zero(f), PolyA::theta(f).pow(3)]).unwrap();
        assert_eq!(prod, expect);
        let c = carlitz(f);
        let sq = c.mul(&c).unwrap();
        let th = PolyA::theta(f);
        let expect = TwistedPoly::scalar(&f, Side::Tau, vec![th.square(), &th.pow(3) + &th, PolyA::one(f)]).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(c.evaluate(&[PolyA::one(f)]).unwrap(), vec![PolyA::from_ints(f, &[1, 1])]);
    }

    #[test]
    fn sigma_side_rejected_over_a() {
        let f = Fq::prime(3).unwrap();
        assert!(TwistedPoly::scalar(&f, Side::Sigma, vec![PolyA::one(f)]).is_err());
        assert!(carlitz(f).ore_star().is_err());
    }

    #[test]
    fn star_is_anti_involution_over_ff() {
        let f = Fq::prime(3).unwrap();
        let ctx = FfCtx::new(&PolyA::from_ints(f, &[2, 2, 1])).unwrap(); // θ²+2θ+2
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rnd = |rng: &mut ChaCha8Rng| {
            let c = (0..3).map(|_| Mat::from_fn(&ctx, 2, 2, |_, _| FfElem::random(&ctx, rng))).collect();
            TwistedPoly::new(&ctx, Side::Tau, 2, c).unwrap()
        };
        for _ in 0..20 {
            let a = rnd(&mut rng);
            let b = rnd(&mut rng);
            assert_eq!(a.ore_star().unwrap().ore_star().unwrap(), a);
            let lhs = a.mul(&b).unwrap().ore_star().unwrap();
            let rhs = b.ore_star().unwrap().mul(&a.ore_star().unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let x: Vec<FfElem> = (0..2).map(|_| FfElem::random(&ctx, &mut rng)).collect();
            let ab = a.mul(&b).unwrap().evaluate(&x).unwrap();
            assert_eq!(ab, a.evaluate(&b.evaluate(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn kernel_size_matches_rank() {
        let f = Fq::prime(3).unwrap();
        let ctx = FfCtx::new(&PolyA::from_ints(f, &[1, 2, 0, 1])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let c: Vec<FfElem> = (0..3).map(|_| FfElem::random(&ctx, &mut rng)).collect();
            let beta = TwistedPoly::scalar(&ctx, Side::Tau, c).unwrap();
            let m = fq_matrix(&beta, &ctx).unwrap();
            let kernel = (0..27u32)
                .filter(|&i| {
                    let x = FfElem::from_coords(&ctx, &[i % 3, (i / 3) % 3, i / 9]);
                    beta.evaluate(&[x]).unwrap()[0].is_zero()
                })
                .count();
            assert_eq!(3usize.pow((3 - m.rank()) as u32), kernel);
        }
    }
}
