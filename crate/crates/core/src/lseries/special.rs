//! Special values at s = 0 against regulators: the value of the series,
//! the twisted-zeta factor, the regulator when one is available, and the
//! implied class-module order as the nearest polynomial.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::dirichlet::{dirichlet_sum, DirichletValue};
use super::SeriesSpec;
use crate::algebra::laurent::Laurent;
use crate::algebra::poly::PolyA;
use crate::error::{Error, Result};
use crate::regulators::reg_closed_form;
use crate::tmodule::{log_coeffs, DrinfeldModule, TModule, TensorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    /// L(φ^∨, 0) against Log_φ(1), φ of rank 1.
    Dual,
    /// L(A, χ_φ, 1) against Log_{Alt²φ}(1).
    Alt2,
    /// L(𝝁̃_φ, 0)·L(A, χ_φ², 2)/Reg_{Sym²φ}.
    Sym2,
    /// L(𝝁_φ × 𝝁_φ, 0)·L(A, χ_φ², 2)/Reg_{φ⊗φ}.
    Tensor2,
    /// L(𝝁_φ × 𝝁_ψ, 0) with the zeta factor when the ranks agree; no
    /// regulator.
    Convolution,
}

impl SpecialKind {
    pub fn name(self) -> &'static str {
        match self {
            SpecialKind::Dual => "dual",
            SpecialKind::Alt2 => "alt2",
            SpecialKind::Sym2 => "sym2",
            SpecialKind::Tensor2 => "tensor2",
            SpecialKind::Convolution => "convolution",
        }
    }
}

impl fmt::Display for SpecialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpecialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dual" | "carlitz" => SpecialKind::Dual,
            "alt2" => SpecialKind::Alt2,
            "sym2" => SpecialKind::Sym2,
            "tensor2" | "tensor" => SpecialKind::Tensor2,
            "convolution" => SpecialKind::Convolution,
            _ => return Err(Error::Config(format!("unknown special-value kind {s}"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialValueReport {
    pub kind: SpecialKind,
    pub precision: i64,
    pub series: DirichletValue,
    pub zeta: Option<DirichletValue>,
    pub regulator: Option<Laurent>,
    pub gamma: Option<u32>,
    /// series·zeta/regulator, or series/regulator when there is no zeta factor.
    pub value: Laurent,
    pub candidate: PolyA,
    pub candidate_monic: bool,
    /// deg(value − candidate).
    pub residual_degree: i64,
    /// deg(series − regulator) for the kinds where they should coincide.
    pub difference_degree: Option<i64>,
}

/// Log_φ(1) for φ of rank 1, where deg of the m-th coefficient is
/// −(q + q² + ⋯ + q^m).
pub fn log_rank_one(phi: &DrinfeldModule, m: i64) -> Result<Laurent> {
    if phi.rank() != 1 || !phi.everywhere_good() {
        return Err(Error::Config("Log_φ(1) is evaluated for rank-1 modules with κ_1 ∈ F_q^×".into()));
    }
    let q = phi.field().q() as i64;
    let (mut n, mut d) = (0usize, 0i64);
    while d <= m {
        n += 1;
        d += q.pow(n as u32);
    }
    let c = log_coeffs(&TModule::from_drinfeld(phi), n)?;
    let mut acc = Laurent::zero(phi.field(), Some(m));
    for cm in &c {
        acc = &acc + &Laurent::from_rat(cm.get(0, 0), m);
    }
    Ok(acc)
}

fn run(spec: SeriesSpec, cutoff: Option<u64>) -> Result<DirichletValue> {
    let spec = match cutoff {
        Some(d) => spec.with_cutoff(d),
        None => spec,
    };
    dirichlet_sum(&spec)
}

/// Builds the report; `cutoff` overrides every Dirichlet cutoff involved.
pub fn special_value_report(
    kind: SpecialKind,
    phi: &DrinfeldModule,
    psi: Option<&DrinfeldModule>,
    m: i64,
    cutoff: Option<u64>,
) -> Result<SpecialValueReport> {
    let fq = phi.field();
    let chi = phi.chi_of_degree(1)?;
    let chi2 = fq.mul(chi, chi);
    let (series, zeta, reg, gamma) = match kind {
        SpecialKind::Dual => {
            let series = run(SeriesSpec::goss_dual(phi, 0, m)?, cutoff)?;
            (series, None, Some(log_rank_one(phi, m)?), None)
        }
        SpecialKind::Alt2 => {
            let series = run(SeriesSpec::twisted_zeta(fq, chi, 1, m)?, cutoff)?;
            let r = reg_closed_form(TensorKind::Alt2, phi, m)?;
            (series, None, Some(r.value), Some(r.gamma))
        }
        SpecialKind::Sym2 => {
            let series = run(SeriesSpec::sym_twiddle(phi, 0, m)?, cutoff)?;
            let zeta = run(SeriesSpec::twisted_zeta(fq, chi2, 2, m)?, cutoff)?;
            let r = reg_closed_form(TensorKind::Sym2, phi, m)?;
            (series, Some(zeta), Some(r.value), Some(r.gamma))
        }
        SpecialKind::Tensor2 => {
            if psi.is_some_and(|p| p != phi) {
                return Err(Error::Config("the tensor regulator is available for φ⊗φ only".into()));
            }
            let series = run(SeriesSpec::convolution(phi, phi, 0, m)?, cutoff)?;
            let zeta = run(SeriesSpec::twisted_zeta(fq, chi2, 2, m)?, cutoff)?;
            let r = reg_closed_form(TensorKind::Tensor2, phi, m)?;
            (series, Some(zeta), Some(r.value), Some(r.gamma))
        }
        SpecialKind::Convolution => {
            let psi = psi.ok_or_else(|| Error::Config("a convolution needs ψ".into()))?;
            let series = run(SeriesSpec::convolution(phi, psi, 0, m)?, cutoff)?;
            let zeta = if phi.rank() == psi.rank() {
                let base = fq.mul(chi, psi.chi_of_degree(1)?);
                Some(run(SeriesSpec::twisted_zeta(fq, base, 2, m)?, cutoff)?)
            } else {
                None
            };
            (series, zeta, None, None)
        }
    };
    let mut value = series.value.clone();
    if let Some(z) = &zeta {
        value = &value * &z.value;
    }
    if let Some(r) = &reg {
        value = value.div_to(r, m)?;
    }
    let value = value.truncate(m);
    let (candidate, tail) = value.nearest_polynomial();
    let difference_degree = match (kind, &reg) {
        (SpecialKind::Dual | SpecialKind::Alt2, Some(r)) => Some(series.value.residual_degree(r)),
        _ => None,
    };
    Ok(SpecialValueReport {
        kind,
        precision: m,
        candidate_monic: candidate.is_monic(),
        residual_degree: tail.deg(),
        candidate,
        series,
        zeta,
        regulator: reg,
        gamma,
        value,
        difference_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::Fq;

    #[test]
    fn carlitz_zeta_one_is_log_one() {
        let fq = Fq::prime(3).unwrap();
        let rep = special_value_report(SpecialKind::Dual, &DrinfeldModule::carlitz(fq), None, 12, None).unwrap();
        assert!(rep.difference_degree.unwrap() < -12);
        assert_eq!(rep.candidate, PolyA::one(fq));
    }

    #[test]
    fn alt2_small_precision() {
        let fq = Fq::prime(3).unwrap();
        let phi = DrinfeldModule::rank2(PolyA::one(fq), 1).unwrap();
        let rep = special_value_report(SpecialKind::Alt2, &phi, None, 6, None).unwrap();
        assert!(rep.difference_degree.unwrap() < -4, "{rep:?}");
    }
}
