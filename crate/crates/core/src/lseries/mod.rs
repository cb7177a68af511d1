//! Goss L-series of duals, twisted zeta values and the convolution series
//! in 𝝁_φ attached to φ⊗ψ, Sym²φ and Alt²φ.
//!
//! Every series is a sum over tuples (a_1, …, a_k) of monic polynomials,
//! graded by the weighted degree deg a_1 + 2deg a_2 + ⋯ + k·deg a_k. The
//! degree bound on 𝝁 gives a slope ε > 0 with every term of weighted
//! degree D′ of degree ≤ −εD′, so the cutoff D = ⌈M/ε⌉ certifies all
//! coefficients down to θ^{−M}. The slopes are
//!
//! | kind | series | ε |
//! |---|---|---|
//! | goss_dual | Σ μ_φ(a)/a^{s+1} | s + 1/r |
//! | twisted_zeta | Σ χ(a)/a^s | s |
//! | conv_equal_rank | Σ 𝝁_φ(a)𝝁_ψ(a)/((a_1⋯a_{r−1})²(a_1a_2²⋯)^s) | s + 2/r |
//! | conv_unequal_rank | Σ χ_φ(a_r)𝝁_φ(a_1,…,a_{r−1})𝝁_ψ(a_1,…,a_r,1,…,1)/((a_1⋯a_r)²(a_1⋯a_r^r)^s) | s + 1/r + 1/ℓ |
//! | sym_twiddle | Σ 𝝁_φ(a_1²,…,a_{r−1}²)/((a_1⋯a_{r−1})²(a_1a_2²⋯)^s) | s + 2/r |
//! | alt_hat | Σ 𝝁_φ(a)/(a_1⋯a_{r−1}(a_1a_2²⋯)^s), a_i = 1 for odd i | s + 1/r |

pub mod dirichlet;
pub mod euler;
pub mod mu;
pub mod special;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::algebra::fq::Fq;
use crate::error::{Error, Result};
use crate::tmodule::DrinfeldModule;

pub use dirichlet::{dirichlet_sum, power_sum, DirichletValue};
pub use euler::{euler_factor_identity_check, euler_product, EulerFactorCheck};
pub use special::{log_rank_one, special_value_report, SpecialKind, SpecialValueReport};
pub use mu::{boldmu, boldmu_relation_checks, mu_prime_powers, nu_prime_powers, BoldmuRelations, MuTable, PrimeData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    GossDual,
    TwistedZeta,
    ConvEqualRank,
    ConvUnequalRank,
    SymTwiddle,
    AltHat,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::GossDual => "goss_dual",
            SeriesKind::TwistedZeta => "twisted_zeta",
            SeriesKind::ConvEqualRank => "conv_equal_rank",
            SeriesKind::ConvUnequalRank => "conv_unequal_rank",
            SeriesKind::SymTwiddle => "sym_twiddle",
            SeriesKind::AltHat => "alt_hat",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "goss_dual" | "goss" => SeriesKind::GossDual,
            "twisted_zeta" | "zeta" => SeriesKind::TwistedZeta,
            "conv_equal_rank" => SeriesKind::ConvEqualRank,
            "conv_unequal_rank" => SeriesKind::ConvUnequalRank,
            "sym_twiddle" | "sym" => SeriesKind::SymTwiddle,
            "alt_hat" | "alt" => SeriesKind::AltHat,
            _ => return Err(Error::Config(format!("unknown series kind {s:?}"))),
        })
    }
}

/// A series together with its parameters, precision and optional cutoff.
#[derive(Clone, Debug)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub fq: Fq,
    pub phi: Option<DrinfeldModule>,
    pub psi: Option<DrinfeldModule>,
    /// χ(a) = chi_base^{deg a} for the twisted zeta function.
    pub chi_base: u32,
    pub s: u32,
    pub precision: i64,
    pub cutoff: Option<u64>,
}

impl SeriesSpec {
    fn base(kind: SeriesKind, fq: Fq, s: u32, precision: i64) -> Self {
        SeriesSpec { kind, fq, phi: None, psi: None, chi_base: 1, s, precision, cutoff: None }
    }

    /// L(φ^∨, s) = Σ μ_φ(a)/a^{s+1}.
    pub fn goss_dual(phi: &DrinfeldModule, s: u32, precision: i64) -> Result<Self> {
        phi.require_good()?;
        let mut sp = Self::base(SeriesKind::GossDual, phi.field(), s, precision);
        sp.phi = Some(phi.clone());
        Ok(sp)
    }

    /// L(A, χ, s) = Σ χ(a)/a^s with χ(a) = chi_base^{deg a}.
    pub fn twisted_zeta(fq: Fq, chi_base: u32, s: u32, precision: i64) -> Result<Self> {
        if chi_base == 0 || chi_base >= fq.q() {
            return Err(Error::Config("the character base must lie in F_q^×".into()));
        }
        let mut sp = Self::base(SeriesKind::TwistedZeta, fq, s, precision);
        sp.chi_base = chi_base;
        sp.validate()?;
        Ok(sp)
    }

    /// L(𝝁_φ × 𝝁_ψ, s); equal or unequal rank is chosen from r and ℓ, and
    /// the module of smaller rank becomes φ.
    pub fn convolution(phi: &DrinfeldModule, psi: &DrinfeldModule, s: u32, precision: i64) -> Result<Self> {
        let (a, b) = if phi.rank() <= psi.rank() { (phi, psi) } else { (psi, phi) };
        let kind = if a.rank() == b.rank() { SeriesKind::ConvEqualRank } else { SeriesKind::ConvUnequalRank };
        let mut sp = Self::base(kind, phi.field(), s, precision);
        sp.phi = Some(a.clone());
        sp.psi = Some(b.clone());
        sp.validate()?;
        Ok(sp)
    }

    /// L(𝝁̃_φ, s).
    pub fn sym_twiddle(phi: &DrinfeldModule, s: u32, precision: i64) -> Result<Self> {
        let mut sp = Self::base(SeriesKind::SymTwiddle, phi.field(), s, precision);
        sp.phi = Some(phi.clone());
        sp.validate()?;
        Ok(sp)
    }

    /// L(𝝁̂_φ, s).
    pub fn alt_hat(phi: &DrinfeldModule, s: u32, precision: i64) -> Result<Self> {
        let mut sp = Self::base(SeriesKind::AltHat, phi.field(), s, precision);
        sp.phi = Some(phi.clone());
        sp.validate()?;
        Ok(sp)
    }

    pub fn with_cutoff(mut self, d: u64) -> Self {
        self.cutoff = Some(d);
        self
    }

    pub fn rank_phi(&self) -> usize {
        self.phi.as_ref().map_or(1, DrinfeldModule::rank)
    }
    pub fn rank_psi(&self) -> usize {
        self.psi.as_ref().map_or(1, DrinfeldModule::rank)
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.rank_phi();
        let l = self.rank_psi();
        if self.precision < 0 {
            return Err(Error::Config("precision must be nonnegative".into()));
        }
        for m in self.phi.iter().chain(self.psi.iter()) {
            m.require_good()?;
        }
        let need_phi = self.kind != SeriesKind::TwistedZeta;
        if need_phi && self.phi.is_none() {
            return Err(Error::Config(format!("{} needs φ", self.kind)));
        }
        match self.kind {
            SeriesKind::ConvEqualRank if self.psi.is_none() || r != l || r < 2 => {
                return Err(Error::Config("conv_equal_rank needs r = ℓ ≥ 2".into()))
            }
            SeriesKind::ConvUnequalRank if self.psi.is_none() || r < 2 || r >= l => {
                return Err(Error::Config("conv_unequal_rank needs 2 ≤ r < ℓ".into()))
            }
            SeriesKind::SymTwiddle | SeriesKind::AltHat => {
                if r < 2 {
                    return Err(Error::Config(format!("{} needs rank ≥ 2", self.kind)));
                }
                if self.fq.p() == 2 {
                    return Err(Error::UnsupportedCharacteristic(2));
                }
            }
            _ => {}
        }
        if self.epsilon() <= Ratio::from_integer(0) {
            return Err(Error::Config(format!("{} at s = {} has no decay (ε ≤ 0)", self.kind, self.s)));
        }
        Ok(())
    }

    /// Tail slope ε.
    pub fn epsilon(&self) -> Ratio<i64> {
        let s = Ratio::from_integer(self.s as i64);
        let r = self.rank_phi() as i64;
        let l = self.rank_psi() as i64;
        match self.kind {
            SeriesKind::GossDual => s + Ratio::new(1, r),
            SeriesKind::TwistedZeta => s,
            SeriesKind::ConvEqualRank | SeriesKind::SymTwiddle => s + Ratio::new(2, r),
            SeriesKind::ConvUnequalRank => s + Ratio::new(1, r) + Ratio::new(1, l),
            SeriesKind::AltHat => s + Ratio::new(1, r),
        }
    }

    /// ⌈M/ε⌉.
    pub fn auto_cutoff(&self) -> u64 {
        let q = Ratio::from_integer(self.precision) / self.epsilon();
        q.ceil().to_integer().max(0) as u64
    }

    pub fn cutoff_used(&self) -> u64 {
        self.cutoff.unwrap_or_else(|| self.auto_cutoff())
    }

    /// Weights i of the slots a_i that may be nontrivial.
    pub fn slot_weights(&self) -> Vec<u32> {
        let r = self.rank_phi() as u32;
        match self.kind {
            SeriesKind::GossDual | SeriesKind::TwistedZeta => vec![1],
            SeriesKind::ConvEqualRank | SeriesKind::SymTwiddle => (1..r).collect(),
            SeriesKind::ConvUnequalRank => (1..=r).collect(),
            SeriesKind::AltHat => (1..r).filter(|i| i % 2 == 0).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::PolyA;

    #[test]
    fn slopes_and_cutoffs() {
        let fq = Fq::prime(3).unwrap();
        let phi = DrinfeldModule::rank2(PolyA::one(fq), 1).unwrap();
        let c = DrinfeldModule::carlitz(fq);
        assert_eq!(SeriesSpec::goss_dual(&c, 0, 20).unwrap().auto_cutoff(), 20);
        let sym = SeriesSpec::sym_twiddle(&phi, 0, 10).unwrap();
        assert_eq!(sym.epsilon(), Ratio::from_integer(1));
        assert_eq!(sym.auto_cutoff(), 10);
        let alt = SeriesSpec::alt_hat(&phi, 0, 10).unwrap();
        assert_eq!(alt.epsilon(), Ratio::new(1, 2));
        assert!(alt.slot_weights().is_empty());
        assert!(SeriesSpec::twisted_zeta(fq, 1, 0, 5).is_err());
        let psi = DrinfeldModule::new(fq, vec![PolyA::one(fq), PolyA::zero(fq), PolyA::one(fq)]).unwrap();
        let conv = SeriesSpec::convolution(&psi, &phi, 0, 6).unwrap();
        assert_eq!(conv.kind, SeriesKind::ConvUnequalRank);
        assert_eq!(conv.epsilon(), Ratio::new(5, 6));
        assert_eq!(conv.auto_cutoff(), 8);
    }
}
