//! The twelve verification suites run by `verify-all` and by the acceptance
//! test target.

use std::time::{Duration, Instant};

use ffl_core::algebra::{enumerate_monic_irreducibles, Fq, Laurent, PolyA};
use ffl_core::frobenius::{tensor_structure_charpoly, verify_order_identity, FrobCharPoly};
use ffl_core::lseries::mu::{mu_by_inversion, mu_by_recursion, nu_by_inversion, nu_by_recursion};
use ffl_core::lseries::{
    dirichlet_sum, euler_factor_identity_check, special_value_report, SeriesSpec, SpecialKind,
};
use ffl_core::regulators::{log_coeff_crosscheck, reg_closed_form, reg_via_basis, BmSequence};
use ffl_core::symmetric::{identity_suite, Identity};
use ffl_core::tmodule::{DrinfeldModule, TensorKind};
use ffl_core::Result;
use serde::Serialize;

use crate::report::CheckReport;

/// One criterion with its individual checks.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    /// Free-form facts worth reporting, such as a class-order candidate.
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteOutcome {
    fn new(id: u32, title: &'static str, checks: Vec<CheckReport>, notes: Vec<String>, start: Instant) -> Self {
        let passed = !checks.is_empty() && checks.iter().all(CheckReport::passed);
        SuiteOutcome { id, title, passed, checks, notes, elapsed: start.elapsed() }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

pub const TITLES: [&str; 12] = [
    "Carlitz zeta(1) against Log_C(1)",
    "Alt2 special value against Log_{Alt2 phi}(1)",
    "Euler-factor factorizations",
    "A-order identities",
    "characteristic polynomial self-verification",
    "P(x)P = Sym2 P * Alt2 P",
    "log-coefficient crosscheck",
    "regulator pipelines and product law",
    "Sym2 class-order candidate",
    "symmetric-function identity suites",
    "mu/nu inversion against recursion",
    "cutoff stability",
];

fn f3() -> Fq {
    Fq::prime(3).expect("3 is prime")
}

fn poly(fq: Fq, c: &[u32]) -> PolyA {
    PolyA::new(fq, c.to_vec())
}

/// θ + τ + τ².
pub fn phi2(fq: Fq) -> DrinfeldModule {
    DrinfeldModule::new(fq, vec![poly(fq, &[1]), poly(fq, &[1])]).expect("valid module")
}

/// θ + θτ + 2τ².
pub fn psi2(fq: Fq) -> DrinfeldModule {
    DrinfeldModule::new(fq, vec![poly(fq, &[0, 1]), poly(fq, &[2])]).expect("valid module")
}

/// θ + τ + θτ² + τ³.
pub fn phi3(fq: Fq) -> DrinfeldModule {
    DrinfeldModule::new(fq, vec![poly(fq, &[1]), poly(fq, &[0, 1]), poly(fq, &[1])]).expect("valid module")
}

fn laurent_check(name: String, lhs: &Laurent, rhs: &Laurent, need: i64) -> CheckReport {
    let d = lhs.residual_degree(rhs);
    CheckReport::new(name, d <= -need, lhs.to_string(), rhs.to_string(), Some(d))
}

fn error_check(name: String, e: ffl_core::Error) -> CheckReport {
    CheckReport::new(name, false, format!("error: {e}"), String::new(), None)
}

/// Criterion 1: |ζ_C(1) − Log_C(1)| ≤ q^{−(M−2)}.
pub fn carlitz_class_formula(m: i64, d: u64) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let fq = f3();
    let rep = special_value_report(SpecialKind::Dual, &DrinfeldModule::carlitz(fq), None, m, Some(d))?;
    let reg = rep.regulator.clone().expect("rank-1 logarithm");
    let check = laurent_check(format!("zeta_C(1) = Log_C(1), M={m}, D={d}"), &rep.series.value, &reg, m - 2);
    Ok(SuiteOutcome::new(1, TITLES[0], vec![check], vec![], start))
}

/// Criterion 2: L(A, χ_φ, 1) = Log_{Alt²φ}(1) to q^{−(M−2)}.
pub fn alt2_special_value(m: i64, d: u64) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let rep = special_value_report(SpecialKind::Alt2, &phi2(f3()), None, m, Some(d))?;
    let reg = rep.regulator.clone().expect("alt2 regulator");
    let check = laurent_check(format!("L(A,chi,1) = Log_Alt2(1), M={m}, D={d}"), &rep.series.value, &reg, m - 2);
    let notes = vec![format!("terms summed: {}", rep.series.terms)];
    Ok(SuiteOutcome::new(2, TITLES[1], vec![check], notes, start))
}

/// Criterion 3: per-prime Euler-factor identities through u^w.
pub fn euler_factors(d_max: usize, w: usize) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let fq = f3();
    let (p2, q2, p3) = (phi2(fq), psi2(fq), phi3(fq));
    let cases: Vec<(&str, TensorKind, &DrinfeldModule, Option<&DrinfeldModule>)> = vec![
        ("tensor r=l=2", TensorKind::Tensor2, &p2, Some(&q2)),
        ("tensor r=2,l=3", TensorKind::Tensor2, &p2, Some(&p3)),
        ("sym2 r=2", TensorKind::Sym2, &p2, None),
        ("sym2 r=3", TensorKind::Sym2, &p3, None),
        ("alt2 r=2", TensorKind::Alt2, &p2, None),
        ("alt2 r=3", TensorKind::Alt2, &p3, None),
    ];
    let primes = enumerate_monic_irreducibles(fq, d_max);
    let mut checks = Vec::new();
    for (label, kind, phi, psi) in cases {
        for f in &primes {
            let name = format!("{label} f={f} W={w}");
            checks.push(match euler_factor_identity_check(kind, phi, psi, f, w) {
                Ok(c) => CheckReport::new(name, c.passed, c.lhs.join(", "), c.rhs.join(", "), None),
                Err(e) => error_check(name, e),
            });
        }
    }
    Ok(SuiteOutcome::new(3, TITLES[2], checks, vec![], start))
}

/// Criterion 4: brute-force orders against χ-scaled 𝐏(1).
pub fn order_identities(d_max: usize) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let fq = f3();
    let (p2, q2) = (phi2(fq), psi2(fq));
    let mut checks = Vec::new();
    for kind in TensorKind::all() {
        for f in enumerate_monic_irreducibles(fq, d_max) {
            let name = format!("{} f={f}", kind.name());
            let psi = (kind == TensorKind::Tensor2).then_some(&q2);
            checks.push(match verify_order_identity(kind, &p2, psi, &f, 4 * d_max) {
                Ok(o) => CheckReport::new(name, o.holds(), o.oracle.to_string(), o.predicted.to_string(), None),
                Err(e) => error_check(name, e),
            });
        }
    }
    Ok(SuiteOutcome::new(4, TITLES[3], checks, vec![], start))
}

/// Criterion 5: P_f(τ^d) = 0, the c_0 and c_f displays, and c_f·P_f(1)
/// against the order oracle, for rank 2 over the given fields.
pub fn charpoly_self_check(qs: &[u32], d_max: usize) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for &q in qs {
        let fq = Fq::of_order(q)?;
        let phi = phi2(fq);
        for f in enumerate_monic_irreducibles(fq, d_max) {
            let name = format!("q={q} f={f}");
            let res = FrobCharPoly::compute(&phi, &f).and_then(|p| {
                let c = p.verify(&phi)?;
                let lhs = p.eval(&PolyA::one(fq)).scale(p.c_f);
                Ok((c, lhs))
            });
            checks.push(match res {
                Ok((c, lhs)) => CheckReport::new(name, c.all(), lhs.to_string(), c.oracle.to_string(), None),
                Err(e) => error_check(name, e),
            });
        }
    }
    Ok(SuiteOutcome::new(5, TITLES[4], checks, vec![], start))
}

/// Product of polynomials in X with coefficients in A, ascending.
pub fn poly_x_mul(a: &[PolyA], b: &[PolyA]) -> Vec<PolyA> {
    let fq = a[0].field();
    let mut out = vec![PolyA::zero(fq); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn show_x(p: &[PolyA]) -> String {
    p.iter().map(|c| format!("({c})")).collect::<Vec<_>>().join(", ")
}

/// Criterion 6: P⊗P = Sym²P·Alt²P.
pub fn tensor_factorization(d_max: usize) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let fq = f3();
    let mut checks = Vec::new();
    for (label, phi) in [("r=2", phi2(fq)), ("r=3", phi3(fq))] {
        for f in enumerate_monic_irreducibles(fq, d_max) {
            let name = format!("{label} f={f}");
            let res = FrobCharPoly::compute(&phi, &f).and_then(|p| {
                let p = p.poly();
                let t = tensor_structure_charpoly(&p, Some(&p), TensorKind::Tensor2)?;
                let s = tensor_structure_charpoly(&p, None, TensorKind::Sym2)?;
                let a = tensor_structure_charpoly(&p, None, TensorKind::Alt2)?;
                Ok((t, poly_x_mul(&s, &a)))
            });
            checks.push(match res {
                Ok((t, sa)) => CheckReport::new(name, t == sa, show_x(&t), show_x(&sa), None),
                Err(e) => error_check(name, e),
            });
        }
    }
    Ok(SuiteOutcome::new(6, TITLES[5], checks, vec![], start))
}

fn kappa1_values(fq: Fq) -> [(String, PolyA); 3] {
    [("0".into(), PolyA::zero(fq)), ("1".into(), PolyA::one(fq)), ("theta".into(), PolyA::theta(fq))]
}

/// Criterion 7: assembled log coefficients against the generic recursion.
pub fn log_coefficients(m_max: usize) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let fq = f3();
    let mut checks = Vec::new();
    for (label, k1) in kappa1_values(fq) {
        let phi = DrinfeldModule::rank2(k1, 1)?;
        let b = BmSequence::with_families(&phi, m_max)?;
        for kind in TensorKind::all() {
            let name = format!("{} kappa1={label} m<={m_max}", kind.name());
            checks.push(match log_coeff_crosscheck(&b, kind, m_max) {
                Ok(r) => CheckReport::new(
                    name,
                    r.passed(),
                    "assembled from L_m".into(),
                    format!("log recursion; mismatches at m = {:?}", r.mismatches),
                    None,
                ),
                Err(e) => error_check(name, e),
            });
        }
    }
    Ok(SuiteOutcome::new(7, TITLES[6], checks, vec![], start))
}

/// Criterion 8: basis pipeline against closed forms and the product law.
pub fn regulator_pipelines(m: i64) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let fq = f3();
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for (label, k1) in kappa1_values(fq).into_iter().take(2) {
        let phi = DrinfeldModule::rank2(k1, 1)?;
        let sym_c = reg_closed_form(TensorKind::Sym2, &phi, m)?;
        let alt_c = reg_closed_form(TensorKind::Alt2, &phi, m)?;
        for kind in TensorKind::all() {
            let basis = reg_via_basis(kind, &phi, m)?;
            let closed = reg_closed_form(kind, &phi, m)?;
            notes.push(format!("{} kappa1={label}: gamma basis {} closed {}", kind.name(), basis.gamma, closed.gamma));
            checks.push(laurent_check(
                format!("{} basis = closed form, kappa1={label}", kind.name()),
                &basis.value,
                &closed.value,
                m,
            ));
            if kind == TensorKind::Tensor2 {
                let prod = (&sym_c.value * &alt_c.value).truncate(m);
                checks.push(laurent_check(
                    format!("Reg_tensor = Reg_Sym2 * Reg_Alt2, kappa1={label}"),
                    &basis.value,
                    &prod,
                    m,
                ));
            }
        }
    }
    Ok(SuiteOutcome::new(8, TITLES[7], checks, notes, start))
}

/// Criterion 9: V = L(𝝁̃,0)·L(A,χ²,2)/Reg_{Sym²} near a monic polynomial.
pub fn sym2_class_order(m: i64, need: i64, cutoff: Option<u64>) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let rep = special_value_report(SpecialKind::Sym2, &phi2(f3()), None, m, cutoff)?;
    let ok = rep.candidate_monic && rep.residual_degree <= -need;
    let check = CheckReport::new(
        format!("V within theta^-{need} of a monic polynomial, M={m}"),
        ok,
        rep.value.to_string(),
        rep.candidate.to_string(),
        Some(rep.residual_degree),
    );
    let notes = vec![
        format!("candidate class order: {}", rep.candidate),
        format!("L(mu~,0) = {}", rep.series.value),
        format!("L(A,chi^2,2) = {}", rep.zeta.as_ref().map(|z| z.value.to_string()).unwrap_or_default()),
        format!("Reg_Sym2 = {}", rep.regulator.as_ref().map(Laurent::to_string).unwrap_or_default()),
        format!("cutoffs: series {}, zeta {}", rep.series.cutoff, rep.zeta.as_ref().map(|z| z.cutoff).unwrap_or(0)),
    ];
    Ok(SuiteOutcome::new(9, TITLES[8], vec![check], notes, start))
}

/// Criterion 10: every identity at each (n, W).
pub fn symmetric_suites(cases: &[(usize, usize)], trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let fq = f3();
    let mut checks = Vec::new();
    for &(n, w) in cases {
        for which in Identity::all() {
            let name = format!("{} n={n} W={w}", which.name());
            checks.push(match identity_suite(fq, which, n, w, trials, seed) {
                Ok(r) => CheckReport::new(name, r.ok(), format!("{} passed", r.passed), format!("{} trials", r.trials), None),
                Err(e) => error_check(name, e),
            });
        }
    }
    Ok(SuiteOutcome::new(10, TITLES[9], checks, vec![], start))
}

/// Criterion 11: μ and ν by series inversion against the recursions.
pub fn mu_nu_dual_path(m_max: usize, d_max: usize) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let fq = f3();
    let mut checks = Vec::new();
    for (label, phi) in [("r=1", DrinfeldModule::carlitz(fq)), ("r=2", phi2(fq)), ("r=3", phi3(fq))] {
        for f in enumerate_monic_irreducibles(fq, d_max) {
            let p = FrobCharPoly::compute(&phi, &f)?;
            let (mi, mr) = (mu_by_inversion(&p, m_max), mu_by_recursion(&p, m_max));
            let (ni, nr) = (nu_by_inversion(&p, m_max), nu_by_recursion(&p, m_max));
            checks.push(CheckReport::new(format!("mu {label} f={f} m<={m_max}"), mi == mr, show_x(&mi), show_x(&mr), None));
            checks.push(CheckReport::new(format!("nu {label} f={f} m<={m_max}"), ni == nr, show_x(&ni), show_x(&nr), None));
        }
    }
    Ok(SuiteOutcome::new(11, TITLES[10], checks, vec![], start))
}

fn stability_check(name: &str, spec: SeriesSpec) -> Result<CheckReport> {
    let d = spec.cutoff_used();
    let m = spec.precision;
    let a = dirichlet_sum(&spec.clone().with_cutoff(d))?;
    let b = dirichlet_sum(&spec.with_cutoff(d + 2))?;
    let ok = a.value.agrees_to(&b.value, m);
    Ok(CheckReport::new(
        format!("{name}: D={d} vs D={}", d + 2),
        ok,
        a.value.to_string(),
        b.value.to_string(),
        Some(a.value.residual_degree(&b.value)),
    ))
}

/// Criterion 12: raising the cutoff by 2 leaves every series of criteria 1,
/// 2 and 9 unchanged within precision.
pub fn cutoff_stability(m1: i64, d1: u64, m2: i64, d2: u64, m9: i64) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let fq = f3();
    let p2 = phi2(fq);
    let chi = p2.chi_of_degree(1)?;
    let checks = vec![
        stability_check("zeta_C(1)", SeriesSpec::goss_dual(&DrinfeldModule::carlitz(fq), 0, m1)?.with_cutoff(d1))?,
        stability_check("L(A,chi,1)", SeriesSpec::twisted_zeta(fq, chi, 1, m2)?.with_cutoff(d2))?,
        stability_check("L(mu~,0)", SeriesSpec::sym_twiddle(&p2, 0, m9)?)?,
        stability_check("L(A,chi^2,2)", SeriesSpec::twisted_zeta(fq, fq.mul(chi, chi), 2, m9)?)?,
    ];
    Ok(SuiteOutcome::new(12, TITLES[11], checks, vec![], start))
}

/// Criterion `id` at its stated parameters.
pub fn run_one(id: u32, seed: u64) -> SuiteOutcome {
    run_guarded(id, || match id {
        1 => carlitz_class_formula(20, 20),
        2 => alt2_special_value(12, 12),
        3 => euler_factors(3, 8),
        4 => order_identities(2),
        5 => charpoly_self_check(&[3, 5], 4),
        6 => tensor_factorization(3),
        7 => log_coefficients(6),
        8 => regulator_pipelines(18),
        9 => sym2_class_order(10, 6, None),
        10 => symmetric_suites(&[(2, 6), (3, 5), (4, 4)], 50, seed),
        11 => mu_nu_dual_path(10, 3),
        12 => cutoff_stability(20, 20, 12, 12, 10),
        _ => Err(ffl_core::Error::Config(format!("no suite {id}"))),
    })
}

/// Every criterion in order. A suite that errors is reported as a single
/// failed check.
pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    (1..=12).map(|id| run_one(id, seed)).collect()
}

pub fn run_guarded(id: u32, job: impl Fn() -> Result<SuiteOutcome>) -> SuiteOutcome {
    let start = Instant::now();
    match job() {
        Ok(o) => o,
        Err(e) => SuiteOutcome::new(
            id,
            TITLES[id as usize - 1],
            vec![error_check("suite".into(), e)],
            vec![],
            start,
        ),
    }
}
