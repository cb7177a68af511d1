//! Characteristic polynomials of Frobenius for Drinfeld modules with
//! everywhere good reduction, and the polynomials attached to φ⊗ψ, Sym²φ
//! and Alt²φ at a prime f.
//!
//! P_f is found from the relation P_f(τ^d) = 0 in F_f[τ], where the
//! coefficients act through φ̄. When the Frobenius generates a proper
//! subfield of End(φ̄) ⊗ K the relation of degree r is not unique, so the
//! minimal relation m(X) is found first and P_f = m^{r/deg m}.

use std::sync::Arc;

use crate::algebra::fq::Fq;
use crate::algebra::matrix::Mat;
use crate::algebra::poly::PolyA;
use crate::algebra::rat::RatK;
use crate::algebra::residue::{FfCtx, FfElem, FqElem};
use crate::error::{Error, Result};
use crate::tmodule::{matrix_t, module_order_oracle, reduce_mod, DrinfeldModule, TModule, TensorKind};
use crate::twisted::{Side, TwistedPoly};

/// Euler data of φ at one prime f.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobCharPoly {
    pub f: PolyA,
    pub d: u32,
    pub r: usize,
    /// c_0, …, c_{r−1}; P_f(X) = X^r + c_{r−1}X^{r−1} + ⋯ + c_0.
    pub coeffs: Vec<PolyA>,
    /// c_f = (−1)^r χ_φ(f), so that c_0 = c_f^{−1}·f.
    pub c_f: u32,
    /// χ_φ(f).
    pub chi: u32,
}

/// P^∨, Q, Q^∨ and Q^∨(fX), all ascending in X.
#[derive(Clone, Debug, PartialEq)]
pub struct DualForms {
    pub p_dual: Vec<RatK>,
    pub q: Vec<PolyA>,
    pub q_dual: Vec<RatK>,
    pub q_dual_fx: Vec<PolyA>,
}

/// Results of the three independent checks on a computed P_f.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPolyChecks {
    pub twisted_identity: bool,
    pub constant_term: bool,
    pub degree_bounds: bool,
    pub order: bool,
    pub oracle: PolyA,
}

impl CharPolyChecks {
    pub fn all(&self) -> bool {
        self.twisted_identity && self.constant_term && self.degree_bounds && self.order
    }
}

/// χ_φ(a) for a monic.
pub fn chi(phi: &DrinfeldModule, a: &PolyA) -> Result<u32> {
    let d = a.degree().ok_or_else(|| Error::Config("χ of zero".into()))?;
    phi.chi_of_degree(d as u64)
}

/// φ̄_a in F_f[τ], Horner in φ̄_t.
pub fn phibar_action(phibar_t: &TwistedPoly<FfElem>, a: &PolyA) -> TwistedPoly<FfElem> {
    let ctx = phibar_t.ctx().clone();
    let mut acc = TwistedPoly::zero(&ctx, Side::Tau, 1);
    for &c in a.coeffs().iter().rev() {
        acc = acc.mul(phibar_t).expect("same shape");
        let cst = TwistedPoly::scalar(&ctx, Side::Tau, vec![FfElem::from_fq(&ctx, c)]).unwrap();
        acc = acc.add(&cst).expect("same shape");
    }
    acc
}

/// Evaluates Σ_i φ̄_{c_i} τ^{d i} for c_0, …, c_n (a polynomial in X = τ^d).
pub fn frobenius_relation(phibar_t: &TwistedPoly<FfElem>, d: u32, poly: &[PolyA]) -> TwistedPoly<FfElem> {
    let ctx = phibar_t.ctx().clone();
    let x = TwistedPoly::monomial(&ctx, Side::Tau, 1, d as usize).unwrap();
    let mut acc = TwistedPoly::zero(&ctx, Side::Tau, 1);
    for c in poly.iter().rev() {
        acc = acc.mul(&x).unwrap().add(&phibar_action(phibar_t, c)).unwrap();
    }
    acc
}

fn shift_coords(tp: &TwistedPoly<FfElem>, by: usize, d: usize, out: &mut Vec<u32>) {
    for (n, m) in tp.coeffs().iter().enumerate() {
        let idx = (n + by) * d;
        if out.len() < idx + d {
            out.resize(idx + d, 0);
        }
        for (k, c) in m.get(0, 0).coords().into_iter().enumerate() {
            out[idx + k] = c;
        }
    }
}

/// Finds the unique monic relation of X-degree e with deg c_{e−j} ≤ ⌊jd/r⌋,
/// or `Ok(None)` if there is none.
fn relation_of_degree(
    fq: Fq,
    ctx: &Arc<FfCtx>,
    powers: &[TwistedPoly<FfElem>],
    r: usize,
    d: u32,
    e: usize,
) -> Result<Option<Vec<PolyA>>> {
    let dd = d as usize;
    let bound = |i: usize| ((e - i) * dd) / r;
    let mut cols: Vec<Vec<u32>> = Vec::new();
    let mut index = Vec::new();
    for i in 0..e {
        for k in 0..=bound(i) {
            let mut v = Vec::new();
            shift_coords(&powers[k], i * dd, dd, &mut v);
            cols.push(v);
            index.push((i, k));
        }
    }
    let mut rhs = Vec::new();
    let top = TwistedPoly::monomial(ctx, Side::Tau, 1, e * dd).unwrap();
    shift_coords(&top, 0, dd, &mut rhs);
    let rows = cols.iter().map(Vec::len).chain([rhs.len()]).max().unwrap_or(0);
    let m = Mat::from_fn(&fq, rows, cols.len(), |i, j| FqElem::new(fq, cols[j].get(i).copied().unwrap_or(0)));
    let b: Vec<FqElem> = (0..rows).map(|i| FqElem::new(fq, fq.neg(rhs.get(i).copied().unwrap_or(0)))).collect();
    let Some((x, nullity)) = m.solve(&b) else {
        return Ok(None);
    };
    if nullity != 0 {
        return Err(Error::Internal(format!("Frobenius relation of degree {e} is not unique")));
    }
    let mut c: Vec<Vec<u32>> = (0..e).map(|i| vec![0; bound(i) + 1]).collect();
    for ((i, k), v) in index.into_iter().zip(x) {
        c[i][k] = v.v;
    }
    Ok(Some(c.into_iter().map(|v| PolyA::new(fq, v)).collect()))
}

fn poly_mul_x(a: &[PolyA], b: &[PolyA]) -> Vec<PolyA> {
    let fq = a[0].field();
    let mut out = vec![PolyA::zero(fq); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// P evaluated at X = x.
pub fn eval_at(poly: &[PolyA], x: &PolyA) -> PolyA {
    poly.iter().rev().fold(PolyA::zero(x.field()), |acc, c| &(&acc * x) + c)
}

impl FrobCharPoly {
    pub fn compute(phi: &DrinfeldModule, f: &PolyA) -> Result<Self> {
        let fq = phi.field();
        phi.require_good()?;
        let ctx = FfCtx::new(f)?;
        let d = ctx.degree();
        let r = phi.rank();
        let phibar = reduce_mod(&phi.phi_t(), &ctx)?;
        let kmax = d as usize;
        let mut powers = vec![TwistedPoly::scalar(&ctx, Side::Tau, vec![FfElem::one(&ctx)]).unwrap()];
        for k in 1..=kmax {
            powers.push(powers[k - 1].mul(&phibar)?);
        }
        let mut found = None;
        for e in (1..=r).filter(|e| r.is_multiple_of(*e)) {
            if let Some(m) = relation_of_degree(fq, &ctx, &powers, r, d, e)? {
                found = Some((e, m));
                break;
            }
        }
        let (e, m) = found.ok_or_else(|| Error::Internal("no Frobenius relation found".into()))?;
        let mut monic_m = m;
        monic_m.push(PolyA::one(fq));
        let mut p = vec![PolyA::one(fq)];
        for _ in 0..r / e {
            p = poly_mul_x(&p, &monic_m);
        }
        p.pop();
        let chi = phi.chi_of_degree(d as u64)?;
        let c_f = if r.is_multiple_of(2) { chi } else { fq.neg(chi) };
        Ok(FrobCharPoly { f: f.clone(), d, r, coeffs: p, c_f, chi })
    }

    pub fn field(&self) -> Fq {
        self.f.field()
    }

    /// P_f ascending, including the leading 1.
    pub fn poly(&self) -> Vec<PolyA> {
        let mut v = self.coeffs.clone();
        v.push(PolyA::one(self.field()));
        v
    }

    /// c_i with c_r = 1 and zero beyond.
    pub fn c(&self, i: usize) -> PolyA {
        match i.cmp(&self.r) {
            std::cmp::Ordering::Less => self.coeffs[i].clone(),
            std::cmp::Ordering::Equal => PolyA::one(self.field()),
            std::cmp::Ordering::Greater => PolyA::zero(self.field()),
        }
    }

    pub fn eval(&self, x: &PolyA) -> PolyA {
        eval_at(&self.poly(), x)
    }

    pub fn dual_forms(&self) -> DualForms {
        let fq = self.field();
        let c0 = RatK::from_poly(self.c(0));
        let c0inv = c0.inv().expect("c_0 ≠ 0");
        let p = self.poly();
        let p_dual = (0..=self.r).map(|i| RatK::from_poly(p[self.r - i].clone()) * c0inv.clone()).collect();
        let q = (0..=self.r).map(|i| p[self.r - i].clone()).collect();
        let q_dual = p.iter().map(|c| RatK::from_poly(c.clone()) * c0inv.clone()).collect();
        let mut q_dual_fx = vec![PolyA::one(fq)];
        for i in 1..=self.r {
            q_dual_fx.push((&p[i] * &self.f.pow(i as u64 - 1)).scale(self.c_f));
        }
        DualForms { p_dual, q, q_dual, q_dual_fx }
    }

    /// The three verification routes plus the degree bounds.
    pub fn verify(&self, phi: &DrinfeldModule) -> Result<CharPolyChecks> {
        let fq = self.field();
        let ctx = FfCtx::new(&self.f)?;
        let phibar = reduce_mod(&phi.phi_t(), &ctx)?;
        let twisted_identity = frobenius_relation(&phibar, self.d, &self.poly()).is_zero();
        let cfinv = fq.inv(self.c_f).expect("unit");
        let constant_term = self.c(0) == self.f.scale(cfinv);
        let degree_bounds = (1..=self.r).all(|j| self.c(self.r - j).deg() <= (j as i64 * self.d as i64) / self.r as i64);
        let oracle = module_order_oracle(&TModule::from_drinfeld(phi), &self.f)?;
        let order = self.eval(&PolyA::one(fq)).scale(self.c_f) == oracle;
        Ok(CharPolyChecks { twisted_identity, constant_term, degree_bounds, order, oracle })
    }
}

/// Companion matrix of a monic polynomial (ascending coefficients, leading 1 included).
pub fn companion(poly: &[PolyA]) -> Mat<PolyA> {
    let fq = poly[0].field();
    let n = poly.len() - 1;
    Mat::from_fn(&fq, n, n, |i, j| {
        if j == n - 1 {
            -&poly[i]
        } else if i == j + 1 {
            PolyA::one(fq)
        } else {
            PolyA::zero(fq)
        }
    })
}

/// (P⊗Q), Sym²P or Alt²P as a monic polynomial over A (ascending).
pub fn tensor_structure_charpoly(p: &[PolyA], q: Option<&[PolyA]>, kind: TensorKind) -> Result<Vec<PolyA>> {
    let cp = companion(p);
    let m = match (kind, q) {
        (TensorKind::Tensor2, Some(q)) => cp.kron(&companion(q)),
        (TensorKind::Tensor2, None) => cp.kron(&cp),
        (_, Some(_)) => return Err(Error::Config("Sym² and Alt² take a single polynomial".into())),
        (k, None) => matrix_t(&cp, k)?,
    };
    if m.rows() == 0 {
        return Ok(vec![PolyA::one(p[0].field())]);
    }
    Ok(m.charpoly())
}

/// P^∨(X) = P(0)^{−1}·X^N·P(1/X).
pub fn dual_poly(p: &[PolyA]) -> Result<Vec<RatK>> {
    let c0 = RatK::from_poly(p[0].clone()).inv()?;
    Ok(p.iter().rev().map(|c| RatK::from_poly(c.clone()) * c0.clone()).collect())
}

/// Both sides of the A-order identity for one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderIdentity {
    pub kind: TensorKind,
    pub f: PolyA,
    pub oracle: PolyA,
    /// χ-scaled 𝐏(1).
    pub predicted: PolyA,
    /// 𝐏(1)·f^{dim}/𝐏(0), times (−1)^{rℓ} for tensors.
    pub second_form: RatK,
    /// Whether 𝐏(0) equals the χ̄-power display (up to the sign (−1)^{rℓ} for tensors).
    pub constant_term: bool,
}

impl OrderIdentity {
    pub fn holds(&self) -> bool {
        self.oracle == self.predicted && RatK::from_poly(self.oracle.clone()) == self.second_form && self.constant_term
    }
}

/// Compares the brute-force order of Ē(F_f) with the characteristic-polynomial prediction.
pub fn verify_order_identity(
    kind: TensorKind,
    phi: &DrinfeldModule,
    psi: Option<&DrinfeldModule>,
    f: &PolyA,
    guard: usize,
) -> Result<OrderIdentity> {
    let fq = phi.field();
    let (e, a, b) = match kind {
        TensorKind::Tensor2 => {
            let psi = psi.unwrap_or(phi);
            let (a, b) = if phi.rank() <= psi.rank() { (phi, psi) } else { (psi, phi) };
            (TModule::tensor(a, b)?, a, Some(b))
        }
        TensorKind::Sym2 => (TModule::sym2(phi)?, phi, None),
        TensorKind::Alt2 => (TModule::alt2(phi)?, phi, None),
    };
    let d = f.degree().unwrap_or(0);
    if d * e.dim() > guard {
        return Err(Error::Guard(format!("d·dim = {} exceeds {guard}", d * e.dim())));
    }
    let pa = FrobCharPoly::compute(a, f)?;
    let r = a.rank();
    let (big_p, scale, sign0, chibar_const, sign_second) = match b {
        Some(b) => {
            let pb = FrobCharPoly::compute(b, f)?;
            let l = b.rank();
            let bp = tensor_structure_charpoly(&pa.poly(), Some(&pb.poly()), TensorKind::Tensor2)?;
            let scale = fq.mul(fq.pow(pa.chi, l as u64), fq.pow(pb.chi, r as u64));
            let sign = if (r * l) % 2 == 1 { fq.neg(1) } else { 1 };
            (bp, scale, sign, fq.inv(scale).unwrap(), sign)
        }
        None => {
            let bp = tensor_structure_charpoly(&pa.poly(), None, kind)?;
            let (n, ex) = match kind {
                TensorKind::Sym2 => (r * (r + 1) / 2, r + 1),
                _ => (r * (r - 1) / 2, r - 1),
            };
            let s = if n % 2 == 1 { fq.neg(1) } else { 1 };
            let chi_pow = fq.pow(pa.chi, ex as u64);
            (bp, fq.mul(s, chi_pow), s, fq.inv(chi_pow).unwrap(), 1)
        }
    };
    let dim = e.dim() as u64;
    let one = PolyA::one(fq);
    let p1 = eval_at(&big_p, &one);
    let predicted = p1.scale(scale);
    let oracle = module_order_oracle(&e, f)?;
    let fd = f.pow(dim);
    let p0 = big_p[0].clone();
    let constant_term = p0 == fd.scale(fq.mul(sign0, chibar_const));
    let second_form = RatK::from_poly(&p1 * &fd).try_div(&RatK::from_poly(p0))?.scale(sign_second);
    Ok(OrderIdentity { kind, f: f.clone(), oracle, predicted, second_form, constant_term })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate_monic_irreducibles;

    #[test]
    fn carlitz_and_rank2_examples() {
        let f = Fq::prime(3).unwrap();
        let c = DrinfeldModule::carlitz(f);
        for g in enumerate_monic_irreducibles(f, 3) {
            let p = FrobCharPoly::compute(&c, &g).unwrap();
            assert_eq!(p.coeffs, vec![-&g]);
            assert!(p.verify(&c).unwrap().all());
            assert_eq!(p.dual_forms().q_dual_fx, vec![PolyA::one(f), PolyA::from_ints(f, &[-1])]);
        }
        let phi = DrinfeldModule::rank2(PolyA::one(f), 1).unwrap();
        let th = PolyA::theta(f);
        let p = FrobCharPoly::compute(&phi, &th).unwrap();
        assert_eq!(p.poly(), vec![PolyA::from_ints(f, &[0, 2]), PolyA::one(f), PolyA::one(f)]);
        assert_eq!(p.c_f, 2);
        let chk = p.verify(&phi).unwrap();
        assert!(chk.all(), "{chk:?}");
        assert_eq!(chk.oracle, PolyA::from_ints(f, &[-2, 1]));
    }

    #[test]
    fn vieta_shapes() {
        let f = Fq::prime(5).unwrap();
        let p = vec![PolyA::from_ints(f, &[0, 3]), PolyA::from_ints(f, &[1, 1]), PolyA::one(f)];
        let alt = tensor_structure_charpoly(&p, None, TensorKind::Alt2).unwrap();
        assert_eq!(alt, vec![-&p[0], PolyA::one(f)]);
        let lin_a = vec![PolyA::from_ints(f, &[0, -1]), PolyA::one(f)];
        let lin_b = vec![PolyA::from_ints(f, &[-2]), PolyA::one(f)];
        let t = tensor_structure_charpoly(&lin_a, Some(&lin_b), TensorKind::Tensor2).unwrap();
        assert_eq!(t, vec![PolyA::from_ints(f, &[0, -2]), PolyA::one(f)]);
        let t = tensor_structure_charpoly(&p, None, TensorKind::Tensor2).unwrap();
        let s = tensor_structure_charpoly(&p, None, TensorKind::Sym2).unwrap();
        assert_eq!(t, poly_mul_x(&s, &alt));
    }

    #[test]
    fn order_identities_small() {
        let f = Fq::prime(3).unwrap();
        let phi = DrinfeldModule::rank2(PolyA::one(f), 1).unwrap();
        let psi = DrinfeldModule::rank2(PolyA::theta(f), 2).unwrap();
        for g in enumerate_monic_irreducibles(f, 1) {
            for kind in TensorKind::all() {
                let r = verify_order_identity(kind, &phi, Some(&psi).filter(|_| kind == TensorKind::Tensor2), &g, 24)
                    .unwrap();
                assert!(r.holds(), "{kind:?} {g}: {r:?}");
            }
        }
    }
}
