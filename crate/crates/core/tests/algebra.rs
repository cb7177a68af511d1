use ffl_core::algebra::irreducible::{count_irreducibles, irreducibles_of_degree, is_irreducible_bruteforce, is_irreducible_rabin};
use ffl_core::algebra::{factor, Fq, Laurent, PolyA};
use proptest::prelude::*;

fn f3() -> Fq {
    Fq::prime(3).unwrap()
}

fn f9() -> Fq {
    Fq::of_order(9).unwrap()
}

fn poly(fq: Fq, max_len: usize) -> impl Strategy<Value = PolyA> {
    prop::collection::vec(0..fq.q(), 0..=max_len).prop_map(move |c| PolyA::new(fq, c))
}

fn nonzero(fq: Fq, max_len: usize) -> impl Strategy<Value = PolyA> {
    poly(fq, max_len).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(f9(), 6), b in poly(f9(), 6), c in poly(f9(), 6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_with_remainder(a in poly(f3(), 9), d in nonzero(f3(), 5)) {
        let (q, r) = a.divrem(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, a);
        prop_assert!(r.deg() < d.deg());
    }

    #[test]
    fn bezout(a in nonzero(f9(), 6), b in nonzero(f9(), 6)) {
        let (g, s, t) = a.xgcd(&b);
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
        prop_assert!(g.is_monic());
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
    }

    #[test]
    fn twist_is_the_q_power(a in poly(f3(), 5), n in 0u32..3) {
        let q = f3().q() as u64;
        prop_assert_eq!(a.twist_n(n), a.pow(q.pow(n)));
    }

    #[test]
    fn powmod_matches_pow(a in poly(f3(), 5), m in nonzero(f3(), 4), e in 0u64..20) {
        prop_assert_eq!(a.powmod(e, &m).unwrap(), a.pow(e).rem(&m).unwrap());
    }

    #[test]
    fn factorization_reassembles(a in nonzero(f3(), 7)) {
        let (unit, parts) = factor(&a);
        let mut prod = PolyA::constant(f3(), unit);
        for (p, e) in &parts {
            prop_assert!(p.is_monic() && is_irreducible_bruteforce(p));
            prod = &prod * &p.pow(*e as u64);
        }
        prop_assert_eq!(prod, a);
    }

    #[test]
    fn parse_round_trips(a in poly(f3(), 6)) {
        prop_assert_eq!(PolyA::parse(f3(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn quotient_expansion_inverts(num in poly(f3(), 4), den in nonzero(f3(), 4), m in 2i64..12) {
        // num/den to precision m, times den, recovers num through θ^{-(m - deg den)}
        let den = den.make_monic();
        let x = Laurent::from_quotient(&num, &den, m);
        let back = &x * &Laurent::from_poly(&den);
        prop_assert!(back.agrees_to(&Laurent::from_poly(&num), m - den.deg()));
    }

    #[test]
    fn laurent_inverse(c in nonzero(f9(), 4), k in -3i64..3, m in 4i64..10) {
        let x = Laurent::from_poly(&c).shift(k).truncate(m);
        let inv = x.inv_to(m).unwrap();
        let one = &x * &inv;
        // x is known m + v places below its lead and x^{-1} (to θ^{-m}) m − v places
        let v = x.deg();
        prop_assert!(one.agrees_to(&Laurent::one(f9()), m - v.abs()));
    }
}

#[test]
fn irreducible_counts_match_necklace_formula() {
    for (fq, dmax) in [(f3(), 5), (Fq::prime(5).unwrap(), 3), (f9(), 2), (Fq::of_order(4).unwrap(), 3)] {
        for d in 1..=dmax {
            let by_test = PolyA::monics(fq, d).filter(is_irreducible_bruteforce).count() as u64;
            assert_eq!(by_test, count_irreducibles(fq.q() as u64, d as u32));
            assert_eq!(irreducibles_of_degree(fq, d).len() as u64, by_test);
            assert!(PolyA::monics(fq, d).all(|a| is_irreducible_rabin(&a) == is_irreducible_bruteforce(&a)));
        }
    }
}

#[test]
fn small_field_tables() {
    let fq = f9();
    let units: Vec<u32> = fq.units().collect();
    assert_eq!(units.len(), 8);
    for &a in &units {
        let inv = fq.inv(a).unwrap();
        assert_eq!(fq.mul(a, inv), 1);
        assert_eq!(fq.pow(a, 8), 1);
    }
    // F_9^× is cyclic of order 8
    assert!(units.iter().any(|&a| (1..8).all(|e| fq.pow(a, e) != 1)));
}
