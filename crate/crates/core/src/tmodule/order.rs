//! A-orders of reductions Ē(F_f), computed by brute force as the
//! characteristic polynomial of the t-action evaluated at X = θ.

use std::sync::Arc;

use crate::algebra::matrix::Mat;
use crate::algebra::poly::PolyA;
use crate::algebra::residue::{FfCtx, FfElem};
use crate::error::Result;
use crate::twisted::{fq_matrix, TwistedPoly};

use super::tmodule::TModule;

/// Reduces a twisted polynomial over A modulo f.
pub fn reduce_mod(beta: &TwistedPoly<PolyA>, ctx: &Arc<FfCtx>) -> Result<TwistedPoly<FfElem>> {
    let coeffs = beta
        .coeffs()
        .iter()
        .map(|m| Mat::from_vec(ctx, m.rows(), m.cols(), m.entries().iter().map(|x| FfElem::reduce(ctx, x)).collect()))
        .collect();
    TwistedPoly::new(ctx, beta.side(), beta.dim(), coeffs)
}

/// The F_q-matrix of x ↦ Ē_t(x) on F_f^ℓ.
pub fn t_action_matrix(e: &TModule, ctx: &Arc<FfCtx>) -> Result<Mat<crate::algebra::residue::FqElem>> {
    fq_matrix(&reduce_mod(e.e_t(), ctx)?, ctx)
}

/// [Ē(F_f)]_A = Char(t | Ē(F_f), X)|_{X=θ}, monic of degree dℓ.
pub fn module_order_oracle(e: &TModule, f: &PolyA) -> Result<PolyA> {
    let ctx = FfCtx::new(f)?;
    let m = t_action_matrix(e, &ctx)?;
    let cp = m.charpoly();
    Ok(PolyA::new(e.field(), cp.iter().map(|c| c.v).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::Fq;
    use crate::tmodule::drinfeld::DrinfeldModule;

    #[test]
    fn small_orders() {
        let f = Fq::prime(3).unwrap();
        let th = PolyA::theta(f);
        let c = TModule::from_drinfeld(&DrinfeldModule::carlitz(f));
        assert_eq!(module_order_oracle(&c, &th).unwrap(), PolyA::from_ints(f, &[-1, 1]));
        let phi = DrinfeldModule::rank2(PolyA::one(f), 1).unwrap();
        let e = TModule::from_drinfeld(&phi);
        assert_eq!(module_order_oracle(&e, &th).unwrap(), PolyA::from_ints(f, &[-2, 1]));
        // Carlitz: C(F_f) ≅ A/(f − 1)
        for g in crate::algebra::enumerate_monic_irreducibles(f, 3) {
            let o = module_order_oracle(&c, &g).unwrap();
            assert_eq!(o, &g - &PolyA::one(f));
        }
        let t = TModule::tensor(&phi, &phi).unwrap();
        let o = module_order_oracle(&t, &PolyA::from_ints(f, &[1, 0, 1])).unwrap();
        assert_eq!(o.degree(), Some(8));
        assert!(o.is_monic());
    }
}
