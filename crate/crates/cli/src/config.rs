//! Run configuration from a JSON file, overridden by command-line flags.

use std::path::Path;

use ffl_core::algebra::{Fq, PolyA};
use ffl_core::tmodule::DrinfeldModule;
use ffl_core::{Error, Result};
use serde::{Deserialize, Serialize};

/// A polynomial given as text (`"2*theta^3+1"`) or as its coefficient
/// list, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum PolyInput {
    Text(String),
    Coeffs(Vec<u32>),
}

impl PolyInput {
    pub fn to_poly(&self, fq: Fq) -> Result<PolyA> {
        match self {
            PolyInput::Text(s) => PolyA::parse(fq, s),
            PolyInput::Coeffs(c) => {
                if let Some(&x) = c.iter().find(|&&x| x >= fq.q()) {
                    return Err(Error::Config(format!("coefficient {x} is not an element of F_{}", fq.q())));
                }
                Ok(PolyA::new(fq, c.clone()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub p: u32,
    #[serde(default = "one")]
    pub m: u32,
    /// F_q modulus over F_p, constant term first.
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
    /// κ_1, …, κ_r of φ_t = θ + κ_1τ + ⋯ + κ_rτ^r.
    pub phi: Vec<PolyInput>,
    #[serde(default)]
    pub psi: Option<Vec<PolyInput>>,
    #[serde(default = "default_precision")]
    pub precision: i64,
    #[serde(default)]
    pub cutoff: Option<u64>,
    #[serde(default = "default_dmax")]
    pub dmax: usize,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> u32 {
    1
}
fn default_precision() -> i64 {
    10
}
fn default_dmax() -> usize {
    2
}

/// The bundled sample: q = 3, φ_t = θ + τ + τ², ψ_t = θ + θτ + 2τ².
pub const SAMPLE_CONFIG: &str = include_str!("../configs/sample_q3.json");

impl Default for Config {
    fn default() -> Self {
        serde_json::from_str(SAMPLE_CONFIG).expect("bundled sample config parses")
    }
}

impl Config {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn field(&self) -> Result<Fq> {
        match &self.modulus {
            Some(modulus) => {
                let f = Fq::new(self.p, modulus)?;
                if f.m() != self.m {
                    return Err(Error::Config(format!("modulus has degree {} but m = {}", f.m(), self.m)));
                }
                Ok(f)
            }
            None => {
                let q = self
                    .p
                    .checked_pow(self.m)
                    .ok_or_else(|| Error::Config(format!("p^m = {}^{} overflows", self.p, self.m)))?;
                let f = Fq::of_order(q)?;
                if f.p() != self.p {
                    return Err(Error::Config(format!("p = {} is not prime", self.p)));
                }
                Ok(f)
            }
        }
    }

    /// Sets p and m from q, dropping any explicit modulus.
    pub fn set_q(&mut self, q: u32) -> Result<()> {
        let f = Fq::of_order(q)?;
        self.p = f.p();
        self.m = f.m();
        self.modulus = None;
        Ok(())
    }

    fn module(fq: Fq, kappa: &[PolyInput]) -> Result<DrinfeldModule> {
        let k = kappa.iter().map(|x| x.to_poly(fq)).collect::<Result<Vec<_>>>()?;
        DrinfeldModule::new(fq, k)
    }

    pub fn phi(&self) -> Result<DrinfeldModule> {
        Self::module(self.field()?, &self.phi)
    }

    pub fn psi(&self) -> Result<Option<DrinfeldModule>> {
        match &self.psi {
            Some(k) => Ok(Some(Self::module(self.field()?, k)?)),
            None => Ok(None),
        }
    }
}

/// Splits a flag value such as `"theta+1,1"` into κ encodings.
pub fn parse_kappa_list(s: &str) -> Vec<PolyInput> {
    s.split(',').map(|t| PolyInput::Text(t.trim().to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_parses() {
        let c = Config::default();
        let phi = c.phi().unwrap();
        assert_eq!(phi.rank(), 2);
        assert_eq!(c.field().unwrap().q(), 3);
        assert_eq!(c.psi().unwrap().unwrap().rank(), 2);
    }

    #[test]
    fn text_and_lists_agree() {
        let fq = Fq::prime(3).unwrap();
        let a = PolyInput::Text("2*theta^3+1".into()).to_poly(fq).unwrap();
        let b = PolyInput::Coeffs(vec![1, 0, 0, 2]).to_poly(fq).unwrap();
        assert_eq!(a, b);
        assert!(PolyInput::Coeffs(vec![3]).to_poly(fq).is_err());
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(serde_json::from_str::<Config>(r#"{"p": 3, "phi": [[1]], "bogus": 1}"#).is_err());
    }
}
