//! Anderson t-modules over A and the explicit tensor, symmetric-square and
//! alternating-square models built from Drinfeld modules.

use crate::algebra::fq::Fq;
use crate::algebra::matrix::Mat;
use crate::algebra::poly::PolyA;
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::twisted::{Side, TwistedPoly};

use super::drinfeld::DrinfeldModule;

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Plain,
    Drinfeld(DrinfeldModule),
    /// φ⊗ψ with rank φ ≤ rank ψ; `swapped` records that the caller's
    /// arguments were exchanged to reach that order.
    Tensor { phi: DrinfeldModule, psi: DrinfeldModule, swapped: bool },
    Sym2(DrinfeldModule),
    Alt2(DrinfeldModule),
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Plain => "plain",
            Provenance::Drinfeld(_) => "drinfeld",
            Provenance::Tensor { .. } => "tensor",
            Provenance::Sym2(_) => "sym2",
            Provenance::Alt2(_) => "alt2",
        }
    }
}

/// A t-module E of dimension ℓ, stored through E_t ∈ Mat_ℓ(A)[τ].
#[derive(Clone, Debug, PartialEq)]
pub struct TModule {
    fq: Fq,
    et: TwistedPoly<PolyA>,
    provenance: Provenance,
}

/// Outcome of the almost-strict-purity test.
#[derive(Clone, Debug)]
pub struct Purity {
    pub pure: bool,
    /// Smallest k ≤ max(2, ℓ) with an invertible top coefficient of E_{t^k}.
    pub k: Option<u32>,
    pub e_t2: TwistedPoly<PolyA>,
}

/// Coefficient matrices B_0, B_1, … as mutable scratch.
struct Builder {
    fq: Fq,
    n: usize,
    bs: Vec<Mat<PolyA>>,
}

impl Builder {
    fn new(fq: Fq, n: usize, deg: usize) -> Self {
        Builder { fq, n, bs: vec![Mat::zeros(&fq, n, n); deg + 1] }
    }
    fn add(&mut self, k: usize, i: usize, j: usize, x: &PolyA) {
        let v = self.bs[k].get(i, j) + x;
        self.bs[k].set(i, j, v);
    }
    fn set(&mut self, k: usize, i: usize, j: usize, x: PolyA) {
        self.bs[k].set(i, j, x);
    }
    fn finish(self) -> TwistedPoly<PolyA> {
        TwistedPoly::new(&self.fq, Side::Tau, self.n, self.bs).expect("square coefficients")
    }
}

impl TModule {
    /// Wraps an arbitrary E_t after checking that ∂E_t − θI is nilpotent.
    pub fn new(et: TwistedPoly<PolyA>) -> Result<Self> {
        if et.side() != Side::Tau {
            return Err(Error::Config("t-modules are defined on the τ side".into()));
        }
        let fq = *et.ctx();
        let m = TModule { fq, et, provenance: Provenance::Plain };
        if m.nilpotency_index().is_none() {
            return Err(Error::Config("∂E_t − θI is not nilpotent".into()));
        }
        Ok(m)
    }

    pub fn from_drinfeld(phi: &DrinfeldModule) -> Self {
        TModule { fq: phi.field(), et: phi.phi_t(), provenance: Provenance::Drinfeld(phi.clone()) }
    }

    /// φ⊗ψ; when rank φ > rank ψ the operands are exchanged first.
    pub fn tensor(phi: &DrinfeldModule, psi: &DrinfeldModule) -> Result<Self> {
        if phi.field() != psi.field() {
            return Err(Error::Config("tensor factors over different fields".into()));
        }
        phi.require_good()?;
        psi.require_good()?;
        let swapped = phi.rank() > psi.rank();
        let (phi, psi) = if swapped { (psi, phi) } else { (phi, psi) };
        let fq = phi.field();
        let (r, l) = (phi.rank(), psi.rank());
        let n = r + l;
        let kap = |i: usize| phi.kappa(i);
        let eta = |i: usize| psi.kappa(i);
        let mut b = Builder::new(fq, n, l.max(r) + 1);
        let th = PolyA::theta(fq);
        for i in 1..=l {
            b.set(0, i - 1, i - 1, th.clone());
            for j in 1..=l {
                if i > j && i - j <= r {
                    b.set(i - j, i - 1, j - 1, kap(i - j));
                }
            }
            for j in 1..=r {
                if i + j - 1 <= r {
                    b.set(i - 1, i - 1, l + j - 1, kap(i + j - 1));
                }
            }
        }
        for i in 1..=r {
            b.set(0, l + i - 1, l + i - 1, th.clone());
            for j in 1..=l {
                if i + j - 1 <= l {
                    b.set(i, l + i - 1, j - 1, eta(i + j - 1));
                }
            }
            for j in 1..=r {
                if i > j && i - j <= l {
                    b.set(i - j, l + i - 1, l + j - 1, eta(i - j));
                }
            }
        }
        Ok(TModule {
            fq,
            et: b.finish(),
            provenance: Provenance::Tensor { phi: phi.clone(), psi: psi.clone(), swapped },
        })
    }

    /// Sym²φ, of dimension r+1.
    pub fn sym2(phi: &DrinfeldModule) -> Result<Self> {
        let fq = phi.field();
        if PolyA::characteristic(&fq) == 2 {
            return Err(Error::UnsupportedCharacteristic(2));
        }
        phi.require_good()?;
        let r = phi.rank();
        let n = r + 1;
        let mut b = Builder::new(fq, n, r);
        for a in 0..n {
            b.set(0, a, a, PolyA::theta(fq));
            for i in 1..=r {
                if a + i < n {
                    b.add(i, a + i, a, &phi.kappa(i));
                }
            }
        }
        for k in 1..=r {
            for j in 1..=(r - k + 1) {
                b.add(k - 1, k - 1, j, &phi.kappa(k + j - 1));
            }
        }
        Ok(TModule { fq, et: b.finish(), provenance: Provenance::Sym2(phi.clone()) })
    }

    /// Alt²φ, of dimension r−1; needs r ≥ 2.
    pub fn alt2(phi: &DrinfeldModule) -> Result<Self> {
        let fq = phi.field();
        if PolyA::characteristic(&fq) == 2 {
            return Err(Error::UnsupportedCharacteristic(2));
        }
        phi.require_good()?;
        let r = phi.rank();
        if r < 2 {
            return Err(Error::Config("the alternating square needs rank at least 2".into()));
        }
        let n = r - 1;
        let mut b = Builder::new(fq, n, r);
        for a in 0..n {
            b.set(0, a, a, PolyA::theta(fq));
            for i in 1..r - 1 {
                if a + i < n {
                    b.add(i, a + i, a, &phi.kappa(i));
                }
            }
        }
        for k in 1..r {
            for j in 1..r {
                if k + j <= r {
                    b.add(k, k - 1, j - 1, &-phi.kappa(k + j));
                }
            }
        }
        Ok(TModule { fq, et: b.finish(), provenance: Provenance::Alt2(phi.clone()) })
    }

    pub fn field(&self) -> Fq {
        self.fq
    }
    pub fn dim(&self) -> usize {
        self.et.dim()
    }
    pub fn e_t(&self) -> &TwistedPoly<PolyA> {
        &self.et
    }
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Index of nilpotency of ∂E_t − θI, `None` if it is not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let n = self.dim();
        let d = self.et.constant_term();
        let nm = &d - &Mat::scalar(&self.fq, n, &PolyA::theta(self.fq));
        nm.nilpotency_index()
    }

    /// E_a for a ∈ F_q[t] (coefficients in t, constant first).
    pub fn action(&self, a: &PolyA) -> TwistedPoly<PolyA> {
        let n = self.dim();
        let mut acc = TwistedPoly::zero(&self.fq, Side::Tau, n);
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul(&self.et).expect("same shape");
            let cst = Mat::scalar(&self.fq, n, &PolyA::constant(self.fq, c));
            acc = acc.add(&TwistedPoly::constant(&self.fq, Side::Tau, cst).unwrap()).expect("same shape");
        }
        acc
    }

    /// E_{t^k}.
    pub fn e_tk(&self, k: u32) -> TwistedPoly<PolyA> {
        self.et.pow(k).expect("τ side")
    }

    /// Looks for k with det of the top τ-coefficient of E_{t^k} in F_q^×.
    pub fn almost_strictly_pure(&self) -> Purity {
        let e_t2 = self.e_tk(2);
        let kmax = self.dim().max(2) as u32;
        let mut found = None;
        for k in 1..=kmax {
            let e = if k == 2 { e_t2.clone() } else { self.e_tk(k) };
            if let Some(top) = e.coeffs().last() {
                let d = top.det();
                if d.deg() == 0 {
                    found = Some(k);
                    break;
                }
            }
        }
        Purity { pure: found.is_some(), k: found, e_t2 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }
    fn p(f: Fq, c: &[i64]) -> PolyA {
        PolyA::from_ints(f, c)
    }

    #[test]
    fn alt2_rank2_is_rank1_drinfeld() {
        let f = f3();
        let phi = DrinfeldModule::rank2(p(f, &[1, 1]), 2).unwrap();
        let e = TModule::alt2(&phi).unwrap();
        assert_eq!(e.dim(), 1);
        let want = TwistedPoly::scalar(&f, Side::Tau, vec![PolyA::theta(f), p(f, &[-2])]).unwrap();
        assert_eq!(e.e_t(), &want);
        assert!(e.almost_strictly_pure().pure);
    }

    #[test]
    fn sym2_first_row() {
        let f = f3();
        let k1 = p(f, &[0, 1]);
        let phi = DrinfeldModule::rank2(k1.clone(), 1).unwrap();
        let e = TModule::sym2(&phi).unwrap();
        assert_eq!(e.dim(), 3);
        let d = e.e_t().constant_term();
        assert_eq!(d.row(0), &[PolyA::theta(f), k1, PolyA::one(f)]);
        let pur = e.almost_strictly_pure();
        assert!(pur.pure);
        let top = pur.e_t2.coeffs().last().unwrap().clone();
        for i in 0..3 {
            assert_eq!(top.get(i, i), &PolyA::one(f));
            for j in i + 1..3 {
                assert!(top.get(i, j).is_zero());
            }
        }
    }

    #[test]
    fn tensor_shapes_and_nilpotency() {
        let f = f3();
        let phi = DrinfeldModule::rank2(p(f, &[1]), 1).unwrap();
        let psi = DrinfeldModule::new(f, vec![p(f, &[0, 1]), p(f, &[2]), p(f, &[1])]).unwrap();
        let e = TModule::tensor(&phi, &psi).unwrap();
        assert_eq!(e.dim(), 5);
        let e2 = TModule::tensor(&psi, &phi).unwrap();
        assert_eq!(e.e_t(), e2.e_t());
        assert!(matches!(e2.provenance(), Provenance::Tensor { swapped: true, .. }));
        assert!(e.nilpotency_index().unwrap() <= 5);
        let e = TModule::tensor(&phi, &phi).unwrap();
        assert_eq!(e.dim(), 4);
        assert!(e.nilpotency_index().unwrap() <= 2);
        assert!(e.almost_strictly_pure().pure);
        let alt3 = TModule::alt2(&psi).unwrap();
        assert_eq!(alt3.dim(), 2);
        assert!(alt3.nilpotency_index().is_some());
    }

    #[test]
    fn characteristic_two_rejected() {
        let f = Fq::prime(2).unwrap();
        let phi = DrinfeldModule::rank2(PolyA::one(f), 1).unwrap();
        assert!(matches!(TModule::sym2(&phi), Err(Error::UnsupportedCharacteristic(2))));
        assert!(TModule::tensor(&phi, &phi).is_ok());
    }
}
