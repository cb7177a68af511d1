use ffl_core::algebra::{Fq, Laurent, PolyA};
use ffl_core::regulators::{laurent_det, log_coeff_crosscheck, reg_closed_form, reg_via_basis, BmSequence};
use ffl_core::tmodule::{DrinfeldModule, TensorKind};
use ffl_core::Error;

const KINDS: [TensorKind; 3] = [TensorKind::Tensor2, TensorKind::Sym2, TensorKind::Alt2];

fn rank2(fq: Fq, k1: &str, k2: u32) -> DrinfeldModule {
    DrinfeldModule::rank2(PolyA::parse(fq, k1).unwrap(), k2).unwrap()
}

#[test]
fn beta_sequences() {
    let fq = Fq::prime(3).unwrap();
    for k1 in ["0", "1", "theta"] {
        let b = BmSequence::with_families(&rank2(fq, k1, 1), 8).unwrap();
        for m in 0..=8 {
            assert!(b.chain_rule_holds(m), "κ1={k1} m={m}");
            assert!(b.denominator_shape_holds(m), "κ1={k1} m={m}");
        }
    }
}

#[test]
fn r_recursion() {
    let fq = Fq::prime(3).unwrap();
    let b = BmSequence::with_families(&rank2(fq, "1", 2), 5).unwrap();
    for kind in KINDS {
        for m in 2..=5 {
            assert!(b.r_em_recursion_holds(kind, m).unwrap(), "{kind:?} m={m}");
        }
    }
}

#[test]
fn log_coefficients_two_routes() {
    let fq = Fq::prime(3).unwrap();
    let b = BmSequence::with_families(&rank2(fq, "1", 1), 4).unwrap();
    for kind in KINDS {
        let rep = log_coeff_crosscheck(&b, kind, 4).unwrap();
        assert!(rep.passed(), "{kind:?}: {rep:?}");
    }
}

#[test]
fn pipelines_agree_across_fields() {
    for (p, k1) in [(3, "0"), (3, "theta+2"), (5, "1"), (5, "theta")] {
        let fq = Fq::prime(p).unwrap();
        let phi = rank2(fq, k1, 1);
        for kind in KINDS {
            let m = 8;
            let a = match reg_closed_form(kind, &phi, m) {
                Ok(a) => a,
                // the closed forms only cover small κ_1
                Err(Error::Config(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            let b = reg_via_basis(kind, &phi, m).unwrap();
            assert!(a.value.agrees_to(&b.value, m), "q={p} κ1={k1} {kind:?}: {} vs {}", a.value, b.value);
            assert_eq!(a.value.lead(), 1);
        }
    }
}

#[test]
fn tensor_regulator_factors() {
    let fq = Fq::prime(3).unwrap();
    let phi = rank2(fq, "1", 1);
    let m = 8;
    let t = reg_closed_form(TensorKind::Tensor2, &phi, m).unwrap().value;
    let s = reg_closed_form(TensorKind::Sym2, &phi, m).unwrap().value;
    let a = reg_closed_form(TensorKind::Alt2, &phi, m).unwrap().value;
    assert!(t.agrees_to(&(&s * &a), m));
}

#[test]
fn characteristic_two_is_rejected() {
    let fq = Fq::prime(2).unwrap();
    let phi = rank2(fq, "1", 1);
    assert!(matches!(reg_via_basis(TensorKind::Sym2, &phi, 6), Err(Error::UnsupportedCharacteristic(_))));
}

#[test]
fn determinant_expansion() {
    let fq = Fq::prime(5).unwrap();
    let c = |a: i64| Laurent::from_poly(&PolyA::from_ints(fq, &[a]));
    let t = Laurent::from_poly(&PolyA::theta(fq));
    // upper triangular
    let m = vec![vec![c(2), t.clone(), c(1)], vec![c(0), c(3), t.clone()], vec![c(0), c(0), t.clone()]];
    assert_eq!(laurent_det(&m), &c(6) * &t);
    // swapping two rows flips the sign
    let swapped = vec![m[1].clone(), m[0].clone(), m[2].clone()];
    assert_eq!(laurent_det(&swapped), -&(&c(6) * &t));
}
