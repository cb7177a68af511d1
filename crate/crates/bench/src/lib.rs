//! Fixtures shared by the benchmarks.

use ffl_core::algebra::{Fq, PolyA};
use ffl_core::tmodule::DrinfeldModule;

pub fn f3() -> Fq {
    Fq::prime(3).expect("3 is prime")
}

/// θ + τ + τ² over F_3.
pub fn phi2() -> DrinfeldModule {
    DrinfeldModule::rank2(PolyA::one(f3()), 1).expect("valid module")
}

/// θ + τ + θτ² + τ³ over F_3.
pub fn phi3() -> DrinfeldModule {
    let fq = f3();
    DrinfeldModule::new(fq, vec![PolyA::one(fq), PolyA::theta(fq), PolyA::one(fq)]).expect("valid module")
}
