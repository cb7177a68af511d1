//! Evaluation of Log on φ⊗φ, Sym²φ, Alt²φ and the dilogarithm, and the two
//! pipelines for the rank-2 regulators.
//!
//! Infinite sums Σ_{m≥1} c_m z^{q^m} are cut once the certified degree bounds
//! of the terms have dropped below −M and keep decreasing. The bounds come
//! from the B_m recursion evaluated at t = θ:
//! deg β_m ≤ max(k q^{m−1} + deg β_{m−1}, deg β_{m−2}) − q^m with k = deg κ_1,
//! and similar recursions for β̃, β′ and β̂.

use serde::Serialize;

use super::bm::BmSequence;
use super::logfamily::{assembled_log_coeff, LogFamily};
use crate::algebra::laurent::Laurent;
use crate::algebra::poly::PolyA;
use crate::algebra::rat::RatK;
use crate::error::{Error, Result};
use crate::tmodule::{DrinfeldModule, TensorKind};

const NEG: i128 = i128::MIN / 8;
/// Number of indices past the cut on which the bounds are re-checked.
const WINDOW: usize = 24;
/// Largest index a series may need.
const M_CAP: usize = 14;

fn add(a: i128, b: i128) -> i128 {
    if a <= NEG || b <= NEG {
        NEG
    } else {
        a.saturating_add(b)
    }
}

/// Upper bounds for deg β_m, deg β̃_m, deg β′_m, deg β̂_m.
#[derive(Clone, Debug)]
struct DegreeBounds {
    q: i128,
    k: i128,
    u: Vec<i128>,
    ut: Vec<i128>,
    up: Vec<i128>,
    uh: Vec<i128>,
}

impl DegreeBounds {
    fn new(b: &BmSequence, m_max: usize) -> Self {
        let q = b.field().q() as i128;
        let k1 = b.kappa1();
        let k = if k1.is_zero() { NEG } else { k1.deg() as i128 };
        let dk = k1.derivative();
        let dk = if dk.is_zero() { NEG } else { dk.deg() as i128 };
        let mut s = DegreeBounds { q, k, u: vec![0], ut: vec![0], up: vec![NEG], uh: vec![NEG] };
        for m in 1..=m_max {
            let qm1 = q.saturating_pow(m as u32 - 1);
            let qm = q.saturating_pow(m as u32);
            let kq = |e: i128| if k <= NEG { NEG } else { k.saturating_mul(e) };
            let u = add(s.get(&s.u, m as i64 - 1).max(NEG), kq(qm1)).max(s.get(&s.u, m as i64 - 2));
            let u = add(u, -qm);
            let ut = add(add(s.get(&s.ut, m as i64 - 1), kq(qm)).max(s.get(&s.ut, m as i64 - 2)), -qm.saturating_mul(q));
            let up = add(add(s.get(&s.up, m as i64 - 1), kq(qm1)).max(s.get(&s.up, m as i64 - 2)).max(u), -qm);
            let first = if m == 1 { dk } else { NEG };
            let uh = add(add(s.get(&s.uh, m as i64 - 1), kq(qm1)).max(s.get(&s.uh, m as i64 - 2)).max(first), -qm);
            s.u.push(u);
            s.ut.push(ut);
            s.up.push(up);
            s.uh.push(uh);
        }
        s
    }

    fn get(&self, v: &[i128], m: i64) -> i128 {
        if m < 0 {
            NEG
        } else {
            v[m as usize]
        }
    }

    fn qpow(&self, m: usize) -> i128 {
        self.q.saturating_pow(m as u32)
    }

    /// Bound for one coefficient family at m.
    fn family(&self, fam: Family, m: usize) -> i128 {
        let g = |v: &Vec<i128>, j: i64| self.get(v, j);
        let m = m as i64;
        let pre = -self.q;
        match fam {
            Family::L1 => add(g(&self.u, m), g(&self.u, m)),
            Family::L2 => add(g(&self.u, m), g(&self.u, m - 1)),
            Family::Lp1 => add(g(&self.u, m), g(&self.up, m)),
            Family::Lp2 => add(g(&self.up, m), g(&self.u, m - 1)).max(add(g(&self.u, m), g(&self.up, m - 1))),
            Family::Lt0 => add(pre, add(g(&self.u, m), g(&self.ut, m - 2)).max(add(g(&self.u, m - 1), g(&self.ut, m - 1)))),
            Family::Lt1 => add(pre, add(g(&self.u, m), g(&self.ut, m - 1))),
            Family::Lt2 => add(pre, add(g(&self.u, m - 1), g(&self.ut, m - 1))),
            Family::Lh1 => add(g(&self.u, m), g(&self.uh, m)),
            Family::Lh2 => add(g(&self.uh, m), g(&self.u, m - 1)).max(add(g(&self.u, m), g(&self.uh, m - 1))),
        }
    }

    /// Bound for every entry of the assembled coefficient of z^{(m)}.
    fn assembled(&self, kind: TensorKind, m: usize) -> i128 {
        if kind == TensorKind::Alt2 {
            return self.family(Family::Lt0, m);
        }
        let fams = [Family::L1, Family::L2, Family::Lp1, Family::Lp2, Family::Lt0, Family::Lt1, Family::Lt2];
        let base = fams.iter().map(|&f| self.family(f, m)).max().unwrap_or(NEG);
        let qm = self.qpow(m);
        let mult = qm.max(if self.k <= NEG { NEG } else { self.k.saturating_mul(qm) }).max(0);
        add(add(base, mult), self.k.max(0))
    }
}

#[derive(Clone, Copy, Debug)]
enum Family {
    L1,
    L2,
    Lp1,
    Lp2,
    Lt0,
    Lt1,
    Lt2,
    Lh1,
    Lh2,
}

/// Smallest m0 ≥ 1 with term bounds below −m on [m0, m0 + WINDOW] and
/// strictly decreasing there, vanishing terms skipped; `bound(m)` bounds
/// the degree of term m.
fn cut_index(m: i64, bound: impl Fn(usize) -> i128) -> Result<usize> {
    let target = -(m as i128);
    for m0 in 1..=M_CAP {
        let live: Vec<i128> = (m0..=m0 + WINDOW).map(&bound).filter(|&b| b > NEG).collect();
        let ok = live.iter().all(|&b| b < target) && live.windows(2).all(|w| w[1] < w[0]);
        if ok {
            return Ok(m0);
        }
    }
    Err(Error::Divergence(format!("term degrees do not fall below −{m} by index {M_CAP}")))
}

/// Working data for the series evaluations of one module.
pub struct LogEvaluator {
    b: BmSequence,
    fam: LogFamily,
    bounds: DegreeBounds,
}

impl LogEvaluator {
    pub fn new(phi: &DrinfeldModule) -> Result<Self> {
        let b = BmSequence::new(phi)?;
        let fam = LogFamily::new(&b)?;
        let bounds = DegreeBounds::new(&b, M_CAP + WINDOW + 2);
        Ok(LogEvaluator { b, fam, bounds })
    }

    pub fn sequence(&self) -> &BmSequence {
        &self.b
    }

    fn ensure(&mut self, m: usize) -> Result<()> {
        if self.b.m_max() < m {
            self.b.extend(m)?;
            self.fam = LogFamily::new(&self.b)?;
        }
        Ok(())
    }

    fn coeff(&self, fam: Family, m: usize) -> &RatK {
        let f = &self.fam;
        match fam {
            Family::L1 => &f.l1[m],
            Family::L2 => &f.l2[m],
            Family::Lp1 => &f.lp1[m],
            Family::Lp2 => &f.lp2[m],
            Family::Lt0 => &f.lt0[m],
            Family::Lt1 => &f.lt1[m],
            Family::Lt2 => &f.lt2[m],
            Family::Lh1 => &f.lh1[m],
            Family::Lh2 => &f.lh2[m],
        }
    }

    /// Σ_{m≥1} c_m z^{q^m} for one family, to absolute precision m_prec.
    fn series(&mut self, fam: Family, z: &PolyA, m_prec: i64) -> Result<Laurent> {
        let fq = self.b.field();
        if z.is_zero() {
            return Ok(Laurent::zero(fq, None));
        }
        let dz = z.deg() as i128;
        let bounds = self.bounds.clone();
        let cut = cut_index(m_prec, |m| add(bounds.family(fam, m), bounds.qpow(m).saturating_mul(dz)))?;
        self.ensure(cut)?;
        let mut acc = Laurent::zero(fq, Some(m_prec));
        for m in 1..cut {
            let c = self.coeff(fam, m);
            let t = c.mul_poly(&z.twist_n(m as u32));
            acc = &acc + &Laurent::from_rat(&t, m_prec);
        }
        Ok(acc)
    }

    /// Log_E(z) for E = φ⊗φ, Sym²φ or Alt²φ and z ∈ A^{dim}.
    pub fn log_tensor(&mut self, kind: TensorKind, z: &[PolyA], m_prec: i64) -> Result<Vec<Laurent>> {
        let fq = self.b.field();
        let n = kind.size(2);
        if z.len() != n {
            return Err(Error::Dimension(format!("{} takes vectors of length {n}", kind.name())));
        }
        let mut out: Vec<Laurent> = z.iter().map(Laurent::from_poly).collect();
        if z.iter().all(PolyA::is_zero) {
            return Ok(out);
        }
        let dz = z.iter().map(|x| x.deg()).max().unwrap_or(0) as i128;
        let bounds = self.bounds.clone();
        let cut = cut_index(m_prec, |m| add(bounds.assembled(kind, m), bounds.qpow(m).saturating_mul(dz)))?;
        self.ensure(cut)?;
        for m in 1..cut {
            let c = assembled_log_coeff(&self.b, &self.fam, kind, m)?;
            let zt: Vec<RatK> = z.iter().map(|x| RatK::from_poly(x.twist_n(m as u32))).collect();
            let v = c.mul_vec(&zt);
            for (o, x) in out.iter_mut().zip(v) {
                *o = &*o + &Laurent::from_rat(&x, m_prec);
            }
        }
        for o in out.iter_mut() {
            *o = o.truncate(m_prec);
        }
        let _ = fq;
        Ok(out)
    }

    /// Log_{φ,2}(z) = z + Σ_{m≥1} β_m² z^{q^m}.
    pub fn dilog(&mut self, z: &PolyA, m_prec: i64) -> Result<Laurent> {
        let s = self.series(Family::L1, z, m_prec)?;
        Ok(&Laurent::from_poly(z) + &s)
    }

    /// Log_{Alt²φ}(1) = 1 + Σ_{m≥1} L̃_{0,m}.
    pub fn log_alt_one(&mut self, m_prec: i64) -> Result<Laurent> {
        let one = PolyA::one(self.b.field());
        let s = self.series(Family::Lt0, &one, m_prec)?;
        Ok(&Laurent::one(self.b.field()) + &s)
    }
}

/// A sign-normalized regulator with the unit γ that normalized it.
#[derive(Clone, Debug, Serialize)]
pub struct Regulator {
    pub kind: TensorKind,
    pub pipeline: &'static str,
    pub value: Laurent,
    pub gamma: u32,
    pub precision: i64,
}

fn normalized(kind: TensorKind, pipeline: &'static str, raw: Laurent, m: i64) -> Result<Regulator> {
    let have = raw.precision().unwrap_or(i64::MAX);
    if have < m {
        return Err(Error::PrecisionLoss(format!("{pipeline} {} reached θ^−{have}, needed θ^−{m}", kind.name())));
    }
    let (value, gamma) = raw.truncate(m).normalize_sign()?;
    Ok(Regulator { kind, pipeline, value, gamma, precision: m })
}

/// Determinant of a small square matrix of Laurent series by cofactors.
pub fn laurent_det(m: &[Vec<Laurent>]) -> Laurent {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Option<Laurent> = None;
    for j in 0..n {
        let minor: Vec<Vec<Laurent>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = &m[0][j] * &laurent_det(&minor);
        acc = Some(match acc {
            None => {
                if j % 2 == 0 {
                    t
                } else {
                    -&t
                }
            }
            Some(a) => {
                if j % 2 == 0 {
                    &a + &t
                } else {
                    &a - &t
                }
            }
        });
    }
    acc.expect("n ≥ 1")
}

fn require_degree(phi: &DrinfeldModule, max: i64, what: &str) -> Result<()> {
    if phi.rank() != 2 {
        return Err(Error::Config("regulators are implemented for rank 2".into()));
    }
    if phi.kappa(1).deg() > max {
        return Err(Error::Config(format!("{what} needs deg κ_1 ≤ {max}")));
    }
    Ok(())
}

/// Extra working precision for cancellation in determinants.
const SLACK: i64 = 8;

/// The closed-form regulator: Log_{Alt²φ}(1) for Alt², the 3×3 determinant
/// for Sym², and their product for φ⊗φ.
pub fn reg_closed_form(kind: TensorKind, phi: &DrinfeldModule, m: i64) -> Result<Regulator> {
    let fq = phi.field();
    if fq.p() == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    match kind {
        TensorKind::Alt2 => {
            require_degree(phi, (fq.q() as i64 + 1) / 2, "the Alt² closed form")?;
            let mut ev = LogEvaluator::new(phi)?;
            normalized(kind, "closed_form", ev.log_alt_one(m + SLACK)?, m)
        }
        TensorKind::Sym2 => {
            require_degree(phi, 1, "the Sym² closed form")?;
            let mut ev = LogEvaluator::new(phi)?;
            let w = m + SLACK;
            let th = PolyA::theta(fq);
            let one = PolyA::one(fq);
            let k1 = phi.kappa(1);
            let k2 = phi.kappa(2);
            let k2l = Laurent::from_poly(&k2);
            let k2i = Laurent::from_rat(&RatK::from_poly(k2.clone()).inv()?, w);
            let two = Laurent::from_fq(fq, fq.from_int(2));
            let lh1_th = ev.series(Family::Lh1, &th, w)?;
            let lh1_k1 = ev.series(Family::Lh1, &k1, w)?;
            let lh2_1 = ev.series(Family::Lh2, &one, w)?;
            let lh1_1 = ev.series(Family::Lh1, &one, w)?;
            let lt1_th = ev.series(Family::Lt1, &th, w)?;
            let lt1_k1 = ev.series(Family::Lt1, &k1, w)?;
            let lt2_1 = ev.series(Family::Lt2, &one, w)?;
            let lt1_1 = ev.series(Family::Lt1, &one, w)?;
            let l2_1 = ev.series(Family::L2, &one, w)?;
            let logalt = ev.log_alt_one(w)?;
            let lp2_th = ev.dilog(&th, w)?;
            let lp2_k1 = ev.dilog(&k1, w)?;
            let lp2_1 = ev.dilog(&one, w)?;
            let dk1 = Laurent::from_poly(&k1.derivative());
            let row1 = vec![
                &Laurent::one(fq) + &lh1_th,
                &(&(-&lh1_k1) - &(&(&two * &k2l) * &lh2_1)) - &dk1,
                -&(&k2l * &lh1_1),
            ];
            let row2 = vec![
                -&(&k2i * &lt1_th),
                &(&logalt + &(&k2i * &lt1_k1)) + &(&two * &lt2_1),
                lt1_1,
            ];
            let row3 = vec![-&(&k2i * &lp2_th), &(&k2i * &lp2_k1) + &(&two * &l2_1), lp2_1];
            normalized(kind, "closed_form", laurent_det(&[row1, row2, row3]), m)
        }
        TensorKind::Tensor2 => {
            let s = reg_closed_form(TensorKind::Sym2, phi, m)?;
            let a = reg_closed_form(TensorKind::Alt2, phi, m)?;
            normalized(kind, "closed_form", &s.value * &a.value, m)
        }
    }
}

/// The regulator from the matrix of Log_E at the standard basis, with the
/// ∂_θ corrections on the first row.
pub fn reg_via_basis(kind: TensorKind, phi: &DrinfeldModule, m: i64) -> Result<Regulator> {
    let fq = phi.field();
    if fq.p() == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    require_degree(phi, 1, "the basis pipeline")?;
    let w = m + SLACK;
    let mut ev = LogEvaluator::new(phi)?;
    let n = kind.size(2);
    // cols[j] = Log_E(e_j)
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<PolyA> = (0..n).map(|i| if i == j { PolyA::one(fq) } else { PolyA::zero(fq) }).collect();
        cols.push(ev.log_tensor(kind, &e, w)?);
    }
    let mut rows: Vec<Vec<Laurent>> = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
    let k1 = Laurent::from_poly(&phi.kappa(1));
    let k2 = Laurent::from_poly(&phi.kappa(2));
    let (a, b) = match kind {
        TensorKind::Tensor2 => (Some(2), Some(3)),
        TensorKind::Sym2 => (Some(1), Some(2)),
        TensorKind::Alt2 => (None, None),
    };
    if let (Some(a), Some(b)) = (a, b) {
        let r0: Vec<Laurent> = (0..n)
            .map(|j| &(&rows[0][j] - &(&k1 * &rows[a][j].derivative())) - &(&k2 * &rows[b][j].derivative()))
            .collect();
        rows[0] = r0;
    }
    normalized(kind, "basis", laurent_det(&rows), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::Fq;

    fn phi(k1: PolyA) -> DrinfeldModule {
        DrinfeldModule::rank2(k1, 1).unwrap()
    }

    #[test]
    fn bounds_dominate_actual_degrees() {
        let fq = Fq::prime(3).unwrap();
        for k1 in [PolyA::zero(fq), PolyA::one(fq), PolyA::theta(fq), PolyA::theta(fq).square()] {
            let b = BmSequence::with_families(&phi(k1), 4).unwrap();
            let d = DegreeBounds::new(&b, 4);
            let deg = |x: RatK| if x.is_zero() { NEG } else { x.deg() as i128 };
            for m in 0..=4 {
                assert!(deg(b.beta(m as i64)) <= d.u[m]);
                assert!(deg(b.beta_tilde(m as i64)) <= d.ut[m]);
                assert!(deg(b.beta_prime(m as i64)) <= d.up[m]);
                assert!(deg(b.beta_hat(m as i64)) <= d.uh[m]);
            }
        }
    }

    #[test]
    fn trivial_evaluations() {
        let fq = Fq::prime(3).unwrap();
        let mut ev = LogEvaluator::new(&phi(PolyA::one(fq))).unwrap();
        ev.ensure(2).unwrap();
        let z = vec![PolyA::zero(fq); 4];
        assert!(ev.log_tensor(TensorKind::Tensor2, &z, 10).unwrap().iter().all(Laurent::is_zero));
        assert!(ev.dilog(&PolyA::zero(fq), 10).unwrap().is_zero());
        // coefficient of z^q is β_1²
        let b1 = ev.sequence().beta(1);
        assert_eq!(ev.fam.l1[1], &b1 * &b1);
        let alt = ev.log_tensor(TensorKind::Alt2, &[PolyA::one(fq)], 10).unwrap();
        assert!(alt[0].agrees_to(&ev.log_alt_one(10).unwrap(), 10));
    }

    #[test]
    fn pipelines_agree() {
        let fq = Fq::prime(3).unwrap();
        for k1 in [PolyA::zero(fq), PolyA::one(fq)] {
            let p = phi(k1);
            let m = 18;
            let sym_a = reg_closed_form(TensorKind::Sym2, &p, m).unwrap();
            let sym_b = reg_via_basis(TensorKind::Sym2, &p, m).unwrap();
            assert!(sym_a.value.agrees_to(&sym_b.value, m), "{} vs {}", sym_a.value, sym_b.value);
            let alt_a = reg_closed_form(TensorKind::Alt2, &p, m).unwrap();
            let alt_b = reg_via_basis(TensorKind::Alt2, &p, m).unwrap();
            assert!(alt_a.value.agrees_to(&alt_b.value, m));
            let ten = reg_via_basis(TensorKind::Tensor2, &p, m).unwrap();
            let prod = reg_closed_form(TensorKind::Tensor2, &p, m).unwrap();
            assert!(ten.value.agrees_to(&prod.value, m), "{} vs {}", ten.value, prod.value);
        }
    }
}
