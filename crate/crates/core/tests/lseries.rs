use ffl_core::algebra::{enumerate_monic_irreducibles, Fq, Laurent, PolyA};
use ffl_core::frobenius::FrobCharPoly;
use ffl_core::lseries::dirichlet::{dirichlet_sum_blocks, dirichlet_sum_tuples};
use ffl_core::lseries::euler::agreement_precision;
use ffl_core::lseries::mu::{mu_by_inversion, mu_by_recursion, nu_by_inversion, nu_by_recursion};
use ffl_core::lseries::{
    boldmu_relation_checks, dirichlet_sum, euler_product, power_sum, special_value_report, SeriesSpec, SpecialKind,
};
use ffl_core::tmodule::DrinfeldModule;

fn f3() -> Fq {
    Fq::prime(3).unwrap()
}

fn module(fq: Fq, kappas: &[&str]) -> DrinfeldModule {
    DrinfeldModule::new(fq, kappas.iter().map(|s| PolyA::parse(fq, s).unwrap()).collect()).unwrap()
}

fn modules() -> Vec<DrinfeldModule> {
    let f5 = Fq::prime(5).unwrap();
    vec![
        DrinfeldModule::carlitz(f3()),
        module(f3(), &["1", "1"]),
        module(f3(), &["theta", "2"]),
        module(f3(), &["1", "theta", "1"]),
        module(f5, &["theta+1", "3"]),
        {
            // κ_1 = αθ + 1 with α outside F_3
            let f9 = Fq::of_order(9).unwrap();
            DrinfeldModule::new(f9, vec![PolyA::new(f9, vec![1, 3]), PolyA::one(f9)]).unwrap()
        },
    ]
}

/// Σ a^{-s} over monic a of degree n, one quotient expansion per term.
fn brute_power_sum(fq: Fq, n: usize, s: u32, m: i64) -> Laurent {
    let one = PolyA::one(fq);
    PolyA::monics(fq, n).fold(Laurent::zero(fq, Some(m)), |acc, a| &acc + &Laurent::from_quotient(&one, &a.pow(s as u64), m))
}

#[test]
fn charpoly_identities_at_small_primes() {
    for phi in modules() {
        let dmax = if phi.field().q() > 5 { 1 } else { 2 };
        for f in enumerate_monic_irreducibles(phi.field(), dmax) {
            let p = FrobCharPoly::compute(&phi, &f).unwrap();
            assert_eq!(p.r, phi.rank());
            assert!(p.verify(&phi).unwrap().all(), "{:?} at {f}", phi.kappas());
        }
    }
}

#[test]
fn carlitz_frobenius_is_x_minus_f() {
    let fq = f3();
    let c = DrinfeldModule::carlitz(fq);
    for f in enumerate_monic_irreducibles(fq, 3) {
        let p = FrobCharPoly::compute(&c, &f).unwrap();
        assert_eq!(p.poly(), vec![-&f, PolyA::one(fq)]);
    }
}

#[test]
fn mu_inversion_matches_recursion() {
    for phi in modules() {
        for f in enumerate_monic_irreducibles(phi.field(), 2).into_iter().take(6) {
            let p = FrobCharPoly::compute(&phi, &f).unwrap();
            assert_eq!(mu_by_inversion(&p, 8), mu_by_recursion(&p, 8));
            assert_eq!(nu_by_inversion(&p, 8), nu_by_recursion(&p, 8));
        }
    }
}

#[test]
fn boldmu_product_formulas() {
    for phi in modules().into_iter().filter(|p| p.rank() >= 2) {
        for f in enumerate_monic_irreducibles(phi.field(), 1).into_iter().take(3) {
            let rel = boldmu_relation_checks(&phi, &f, 2).unwrap();
            assert!(rel.ok(), "{rel:?}");
        }
    }
}

#[test]
fn degree_one_power_sum_closed_form() {
    // Σ_c 1/(θ + c) = −1/(θ^q − θ), from the logarithmic derivative of θ^q − θ
    let fq = f3();
    let m = 12;
    let den = &PolyA::theta(fq).pow(3) - &PolyA::theta(fq);
    let expect = Laurent::from_quotient(&PolyA::one(fq), &den, m).scale(fq.neg(1));
    assert_eq!(power_sum(fq, 1, 1, m), expect);
    assert_eq!(brute_power_sum(fq, 1, 1, m), expect);
}

#[test]
fn power_sums_vanish_in_high_degree() {
    // block degree ≤ −ns − (q−1)n
    for fq in [f3(), Fq::prime(5).unwrap(), Fq::of_order(4).unwrap()] {
        let q = fq.q() as i64;
        for n in 1..=2usize {
            for s in 1..=3u32 {
                let m = 14;
                let b = brute_power_sum(fq, n, s, m);
                let bound = -(n as i64) * (s as i64) - (q - 1) * n as i64;
                assert!(b.is_zero() || b.deg() <= bound, "q={q} n={n} s={s}: {b}");
                assert!(power_sum(fq, n, s, m).agrees_to(&b, m), "q={q} n={n} s={s}");
            }
        }
    }
}

#[test]
fn zeta_equals_direct_sum() {
    let fq = f3();
    let m = 8;
    for s in 1..=2u32 {
        let spec = SeriesSpec::twisted_zeta(fq, 1, s, m).unwrap().with_cutoff(2);
        let v = dirichlet_sum(&spec).unwrap().value;
        let direct = (0..=2).fold(Laurent::zero(fq, Some(m)), |acc, n| &acc + &brute_power_sum(fq, n, s, m));
        assert!(v.agrees_to(&direct, m), "s={s}: {v} vs {direct}");
    }
}

#[test]
fn blocks_agree_with_tuples() {
    let fq = f3();
    let c = DrinfeldModule::carlitz(fq);
    let specs = [
        SeriesSpec::goss_dual(&c, 0, 8).unwrap().with_cutoff(4),
        SeriesSpec::goss_dual(&c, 1, 8).unwrap().with_cutoff(3),
        SeriesSpec::twisted_zeta(fq, 2, 1, 8).unwrap().with_cutoff(4),
    ];
    for spec in specs {
        let a = dirichlet_sum_blocks(&spec).unwrap().value;
        let b = dirichlet_sum_tuples(&spec).unwrap().value;
        assert!(a.agrees_to(&b, 8), "{}: {a} vs {b}", spec.kind);
    }
}

#[test]
fn euler_product_matches_dirichlet_sum() {
    let fq = f3();
    let phi = module(fq, &["1", "1"]);
    let psi = module(fq, &["theta", "2"]);
    let specs = [
        SeriesSpec::goss_dual(&phi, 0, 6).unwrap(),
        SeriesSpec::goss_dual(&DrinfeldModule::carlitz(fq), 1, 6).unwrap(),
        SeriesSpec::convolution(&phi, &psi, 0, 6).unwrap(),
        SeriesSpec::sym_twiddle(&phi, 0, 6).unwrap(),
    ];
    for spec in specs {
        for d in 1..=3usize {
            let prod = euler_product(&spec, d).unwrap();
            let n = agreement_precision(&spec, d as u64);
            let dir = dirichlet_sum(&spec.clone().with_cutoff(d as u64)).unwrap().value;
            assert!(prod.agrees_to(&dir, n), "{} d={d} n={n}: {prod} vs {dir}", spec.kind);
        }
    }
}

#[test]
fn certified_cutoff_is_stable() {
    let fq = f3();
    let phi = module(fq, &["1", "1"]);
    for spec in [SeriesSpec::goss_dual(&phi, 0, 3).unwrap(), SeriesSpec::goss_dual(&DrinfeldModule::carlitz(fq), 0, 8).unwrap()] {
        let d = spec.auto_cutoff();
        let m = spec.precision;
        let a = dirichlet_sum(&spec).unwrap().value;
        let b = dirichlet_sum(&spec.clone().with_cutoff(d + 1)).unwrap().value;
        assert!(a.agrees_to(&b, m), "cutoff {d}: {a} vs {b}");
    }
}

#[test]
fn rank_one_special_value() {
    let c = DrinfeldModule::carlitz(f3());
    let r = special_value_report(SpecialKind::Dual, &c, None, 10, None).unwrap();
    assert!(r.difference_degree.is_some_and(|d| d < -8), "{:?}", r.difference_degree);
}

#[test]
fn alt2_special_value() {
    let phi = module(f3(), &["1", "1"]);
    let r = special_value_report(SpecialKind::Alt2, &phi, None, 8, None).unwrap();
    assert!(r.difference_degree.is_some_and(|d| d < -6), "{:?}", r.difference_degree);
}
