//! One function per command, each producing a report envelope.

use ffl_core::algebra::irreducible::{count_irreducibles, irreducibles_of_degree, is_irreducible_bruteforce};
use ffl_core::algebra::{Fq, Mat, PolyA};
use ffl_core::frobenius::{verify_order_identity, FrobCharPoly};
use ffl_core::lseries::euler::agreement_precision;
use ffl_core::lseries::mu::{mu_by_inversion, mu_by_recursion, nu_by_inversion, nu_by_recursion};
use ffl_core::lseries::{
    boldmu, boldmu_relation_checks, dirichlet_sum, euler_factor_identity_check, euler_product, special_value_report,
    SeriesKind, SeriesSpec, SpecialKind,
};
use ffl_core::regulators::{reg_closed_form, reg_via_basis};
use ffl_core::tmodule::{DrinfeldModule, ExpLogCoeffs, TModule, TensorKind};
use ffl_core::{Error, Result};
use serde_json::{json, Value};

use crate::config::Config;
use crate::report::{CheckReport, Envelope, FieldInfo, Status};
use crate::suites;
use crate::Command;

struct Draft {
    precision: Option<i64>,
    cutoff: Option<u64>,
    checks: Vec<CheckReport>,
    result: Value,
}

impl Draft {
    fn exact(checks: Vec<CheckReport>, result: Value) -> Self {
        Draft { precision: None, cutoff: None, checks, result }
    }
}

fn check(name: impl Into<String>, ok: bool, lhs: impl ToString, rhs: impl ToString) -> CheckReport {
    CheckReport::new(name.into(), ok, lhs.to_string(), rhs.to_string(), None)
}

fn parse_poly(fq: Fq, s: &str) -> Result<PolyA> {
    PolyA::parse(fq, s)
}

fn kind_module(kind: &str, phi: &DrinfeldModule, psi: Option<&DrinfeldModule>) -> Result<TModule> {
    match kind {
        "drinfeld" | "phi" => Ok(TModule::from_drinfeld(phi)),
        _ => match kind.parse::<TensorKind>()? {
            TensorKind::Tensor2 => TModule::tensor(phi, psi.unwrap_or(phi)),
            TensorKind::Sym2 => TModule::sym2(phi),
            TensorKind::Alt2 => TModule::alt2(phi),
        },
    }
}

/// X^r + c_{r−1}X^{r−1} + ⋯ + c_0 as text, from ascending coefficients.
pub fn show_poly_x(p: &[PolyA]) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let x = match i {
            0 => String::new(),
            1 => "X".into(),
            _ => format!("X^{i}"),
        };
        let one = c == &PolyA::one(c.field());
        parts.push(match (i, one, c.coeffs().len() > 1) {
            (0, _, _) => c.to_string(),
            (_, true, _) => x,
            (_, false, true) => format!("({c})*{x}"),
            (_, false, false) => format!("{c}*{x}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn mat_strings<R: std::fmt::Display + ffl_core::algebra::Ring>(m: &Mat<R>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

pub fn execute(cmd: &Command, cfg: &Config) -> Result<Envelope> {
    let fq = cfg.field()?;
    let draft = match cmd {
        Command::Irreducibles => irreducibles(fq, cfg)?,
        Command::Charpoly { f } => charpoly(cfg, &parse_poly(fq, f)?)?,
        Command::Mu { f, m_max } => mu(cfg, &parse_poly(fq, f)?, *m_max)?,
        Command::Boldmu { a, f, bound } => boldmu_cmd(cfg, a, f.as_deref(), *bound)?,
        Command::Tmodule { kind } => tmodule(cfg, kind)?,
        Command::Explog { kind, n } => explog(cfg, kind, *n)?,
        Command::Lvalue { series, s, chi, method } => lvalue(cfg, series, *s, *chi, method)?,
        Command::EulerCheck { kind, f, w } => euler_check(cfg, kind, &parse_poly(fq, f)?, *w)?,
        Command::OrderCheck { kind, f, guard } => order_check(cfg, kind, &parse_poly(fq, f)?, *guard)?,
        Command::Regulator { kind, pipeline } => regulator(cfg, kind, pipeline)?,
        Command::SpecialValue { kind } => special_value(cfg, kind)?,
        Command::VerifyAll { only } => verify_all(cfg, only.as_deref())?,
        Command::Schema => return Err(Error::Internal("schema has no envelope".into())),
    };
    let status = if draft.checks.iter().all(CheckReport::passed) { Status::Pass } else { Status::Fail };
    Ok(Envelope {
        command: cmd.name().to_string(),
        field: FieldInfo { p: fq.p(), m: fq.m(), q: fq.q(), modulus: fq.modulus().to_vec() },
        precision: draft.precision,
        cutoff: draft.cutoff,
        seed: cfg.seed,
        status,
        checks: draft.checks,
        result: draft.result,
    })
}

fn irreducibles(fq: Fq, cfg: &Config) -> Result<Draft> {
    if cfg.dmax > 8 {
        return Err(Error::Guard(format!("dmax = {} exceeds 8", cfg.dmax)));
    }
    let mut checks = Vec::new();
    let mut degrees = Vec::new();
    for d in 1..=cfg.dmax {
        let polys = irreducibles_of_degree(fq, d);
        let expected = count_irreducibles(fq.q() as u64, d as u32);
        checks.push(check(format!("count of degree {d}"), polys.len() as u64 == expected, polys.len(), expected));
        if d <= 4 {
            let ok = polys.iter().all(is_irreducible_bruteforce);
            checks.push(check(format!("trial division, degree {d}"), ok, ok, true));
        }
        degrees.push(json!({ "degree": d, "count": polys.len(), "polys": polys }));
    }
    Ok(Draft::exact(checks, json!({ "dmax": cfg.dmax, "degrees": degrees })))
}

fn charpoly(cfg: &Config, f: &PolyA) -> Result<Draft> {
    let phi = cfg.phi()?;
    let p = FrobCharPoly::compute(&phi, f)?;
    let c = p.verify(&phi)?;
    let poly = p.poly();
    let dual = p.dual_forms();
    let checks = vec![
        check("P_f(tau^d) = 0", c.twisted_identity, c.twisted_identity, true),
        check("c_0 = c_f^-1 f", c.constant_term, c.constant_term, true),
        check("coefficient degree bounds", c.degree_bounds, c.degree_bounds, true),
        check("c_f P_f(1) = order oracle", c.order, p.eval(&PolyA::one(f.field())).scale(p.c_f), &c.oracle),
    ];
    let result = json!({
        "f": f,
        "degree": p.d,
        "rank": p.r,
        "p": poly,
        "p_display": show_poly_x(&poly),
        "c_f": p.c_f,
        "chi": p.chi,
        "q": dual.q,
        "q_dual_fx": dual.q_dual_fx,
        "order_oracle": c.oracle,
    });
    Ok(Draft::exact(checks, result))
}

fn mu(cfg: &Config, f: &PolyA, m_max: usize) -> Result<Draft> {
    if m_max > 20 {
        return Err(Error::Guard(format!("m_max = {m_max} exceeds 20")));
    }
    let phi = cfg.phi()?;
    let p = FrobCharPoly::compute(&phi, f)?;
    let (mi, mr) = (mu_by_inversion(&p, m_max), mu_by_recursion(&p, m_max));
    let (ni, nr) = (nu_by_inversion(&p, m_max), nu_by_recursion(&p, m_max));
    let checks = vec![
        check("mu: inversion = recursion", mi == mr, mi.len(), mr.len()),
        check("nu: inversion = recursion", ni == nr, ni.len(), nr.len()),
    ];
    Ok(Draft::exact(checks, json!({ "f": f, "m_max": m_max, "mu": mi, "nu": ni })))
}

fn boldmu_cmd(cfg: &Config, a: &str, f: Option<&str>, bound: u32) -> Result<Draft> {
    let phi = cfg.phi()?;
    let fq = phi.field();
    let args = a.split(',').map(|t| parse_poly(fq, t.trim())).collect::<Result<Vec<_>>>()?;
    let value = boldmu(&phi, &args)?;
    let mut checks = Vec::new();
    let mut relations = Value::Null;
    if let Some(f) = f {
        if bound > 6 {
            return Err(Error::Guard(format!("bound = {bound} exceeds 6")));
        }
        let rel = boldmu_relation_checks(&phi, &parse_poly(fq, f)?, bound)?;
        checks.push(check("Q^dual(fX) display", rel.q_dual_display, rel.q_dual_display, true));
        checks.push(check("general recursion", rel.general_failed == 0, rel.general_failed, 0));
        checks.push(check("product formulas", rel.products_failed == 0, rel.products_failed, 0));
        relations = serde_json::to_value(&rel).map_err(|e| Error::Internal(e.to_string()))?;
    }
    Ok(Draft::exact(checks, json!({ "a": args, "value": value, "relations": relations })))
}

fn tmodule(cfg: &Config, kind: &str) -> Result<Draft> {
    let phi = cfg.phi()?;
    let psi = cfg.psi()?;
    let e = kind_module(kind, &phi, psi.as_ref())?;
    let nil = e.nilpotency_index();
    let purity = e.almost_strictly_pure();
    let checks = vec![
        check("d[t] - theta nilpotent", nil.is_some(), format!("{nil:?}"), "Some(_)"),
        check("almost strictly pure", purity.pure, format!("k = {:?}", purity.k), "pure"),
    ];
    let coeffs: Vec<Vec<Vec<PolyA>>> = e
        .e_t()
        .coeffs()
        .iter()
        .map(|m| (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect()).collect())
        .collect();
    let result = json!({
        "kind": kind,
        "provenance": e.provenance().label(),
        "dimension": e.dim(),
        "nilpotency_index": nil,
        "pure": purity.pure,
        "purity_k": purity.k,
        "e_t": coeffs,
    });
    Ok(Draft::exact(checks, result))
}

fn explog(cfg: &Config, kind: &str, n: usize) -> Result<Draft> {
    if n > 8 {
        return Err(Error::Guard(format!("n = {n} exceeds 8")));
    }
    let phi = cfg.phi()?;
    let psi = cfg.psi()?;
    let e = kind_module(kind, &phi, psi.as_ref())?;
    let c = ExpLogCoeffs::compute(&e, n)?;
    let order = c.verified_order();
    let checks = vec![check(format!("Log o Exp = id through tau^{n}"), order == n, order, n)];
    let result = json!({
        "kind": kind,
        "n": n,
        "exp": c.exp.iter().map(mat_strings).collect::<Vec<_>>(),
        "log": c.log.iter().map(mat_strings).collect::<Vec<_>>(),
    });
    Ok(Draft::exact(checks, result))
}

fn series_spec(cfg: &Config, series: &str, s: u32, chi: u32) -> Result<SeriesSpec> {
    let fq = cfg.field()?;
    let m = cfg.precision;
    let spec = if series == "convolution" {
        let psi = cfg.psi()?.ok_or_else(|| Error::Config("a convolution needs psi".into()))?;
        SeriesSpec::convolution(&cfg.phi()?, &psi, s, m)?
    } else {
        match series.parse::<SeriesKind>()? {
            SeriesKind::GossDual => SeriesSpec::goss_dual(&cfg.phi()?, s, m)?,
            SeriesKind::TwistedZeta => SeriesSpec::twisted_zeta(fq, chi, s, m)?,
            SeriesKind::ConvEqualRank | SeriesKind::ConvUnequalRank => {
                let psi = cfg.psi()?.ok_or_else(|| Error::Config("a convolution needs psi".into()))?;
                let sp = SeriesSpec::convolution(&cfg.phi()?, &psi, s, m)?;
                if sp.kind.name() != series {
                    return Err(Error::Config(format!("phi and psi give {}, not {series}", sp.kind)));
                }
                sp
            }
            SeriesKind::SymTwiddle => SeriesSpec::sym_twiddle(&cfg.phi()?, s, m)?,
            SeriesKind::AltHat => SeriesSpec::alt_hat(&cfg.phi()?, s, m)?,
        }
    };
    Ok(match cfg.cutoff {
        Some(d) => spec.with_cutoff(d),
        None => spec,
    })
}

fn lvalue(cfg: &Config, series: &str, s: u32, chi: u32, method: &str) -> Result<Draft> {
    let spec = series_spec(cfg, series, s, chi)?;
    match method {
        "dirichlet" => {
            let v = dirichlet_sum(&spec)?;
            Ok(Draft {
                precision: Some(v.precision),
                cutoff: Some(v.cutoff),
                checks: vec![],
                result: serde_json::to_value(&v).map_err(|e| Error::Internal(e.to_string()))?,
            })
        }
        "euler" => {
            let d = cfg.dmax;
            let prod = euler_product(&spec, d)?;
            let n = agreement_precision(&spec, d as u64);
            let dir = dirichlet_sum(&spec.clone().with_cutoff(d as u64))?;
            let ok = prod.agrees_to(&dir.value, n);
            let checks = vec![CheckReport::new(
                format!("Euler product = Dirichlet sum through theta^-{n}, dmax={d}"),
                ok,
                prod.to_string(),
                dir.value.to_string(),
                Some(prod.residual_degree(&dir.value)),
            )];
            let result = json!({
                "kind": spec.kind,
                "s": s,
                "dmax": d,
                "value": prod,
                "agreement_precision": n,
                "dirichlet": dir.value,
            });
            Ok(Draft { precision: Some(spec.precision), cutoff: Some(spec.cutoff_used()), checks, result })
        }
        _ => Err(Error::Config(format!("unknown method {method:?}; use dirichlet or euler"))),
    }
}

fn euler_check(cfg: &Config, kind: &str, f: &PolyA, w: usize) -> Result<Draft> {
    let kind: TensorKind = kind.parse()?;
    let phi = cfg.phi()?;
    let psi = cfg.psi()?;
    let psi = if kind == TensorKind::Tensor2 { Some(psi.unwrap_or_else(|| phi.clone())) } else { None };
    let c = euler_factor_identity_check(kind, &phi, psi.as_ref(), f, w)?;
    let checks = vec![check(format!("{} Euler factor at {f} through u^{w}", kind.name()), c.passed, c.lhs.join(", "), c.rhs.join(", "))];
    Ok(Draft::exact(checks, serde_json::to_value(&c).map_err(|e| Error::Internal(e.to_string()))?))
}

fn order_check(cfg: &Config, kind: &str, f: &PolyA, guard: usize) -> Result<Draft> {
    let kind: TensorKind = kind.parse()?;
    let phi = cfg.phi()?;
    let psi = cfg.psi()?;
    let o = verify_order_identity(kind, &phi, psi.as_ref(), f, guard)?;
    let checks = vec![
        check("oracle = chi-scaled P(1)", o.oracle == o.predicted, &o.oracle, &o.predicted),
        check("P(0) display", o.constant_term, o.constant_term, true),
        check("oracle = P(1) f^dim / P(0)", o.holds(), &o.oracle, &o.second_form),
    ];
    let result = json!({ "kind": kind, "f": f, "oracle": o.oracle, "predicted": o.predicted });
    Ok(Draft::exact(checks, result))
}

fn regulator(cfg: &Config, kind: &str, pipeline: &str) -> Result<Draft> {
    let kind: TensorKind = kind.parse()?;
    let phi = cfg.phi()?;
    let m = cfg.precision;
    let (closed, basis) = match pipeline {
        "closed" => (Some(reg_closed_form(kind, &phi, m)?), None),
        "basis" => (None, Some(reg_via_basis(kind, &phi, m)?)),
        "both" => (Some(reg_closed_form(kind, &phi, m)?), Some(reg_via_basis(kind, &phi, m)?)),
        _ => return Err(Error::Config(format!("unknown pipeline {pipeline:?}; use closed, basis or both"))),
    };
    let mut checks = Vec::new();
    if let (Some(a), Some(b)) = (&closed, &basis) {
        checks.push(CheckReport::new(
            format!("{} basis = closed form", kind.name()),
            a.value.agrees_to(&b.value, m),
            b.value.to_string(),
            a.value.to_string(),
            Some(b.value.residual_degree(&a.value)),
        ));
    }
    let result = json!({ "kind": kind, "closed_form": closed, "basis": basis });
    Ok(Draft { precision: Some(m), cutoff: None, checks, result })
}

fn special_value(cfg: &Config, kind: &str) -> Result<Draft> {
    let kind: SpecialKind = kind.parse()?;
    let phi = cfg.phi()?;
    // only the convolution reads ψ; tensor2 is the square of φ
    let psi = if kind == SpecialKind::Convolution { cfg.psi()? } else { None };
    let m = cfg.precision;
    let rep = special_value_report(kind, &phi, psi.as_ref(), m, cfg.cutoff)?;
    let mut checks = Vec::new();
    match kind {
        SpecialKind::Dual | SpecialKind::Alt2 => {
            let reg = rep.regulator.as_ref().expect("regulator present");
            checks.push(CheckReport::new(
                format!("series = regulator to theta^-{}", m - 2),
                rep.difference_degree.unwrap_or(0) <= -(m - 2),
                rep.series.value.to_string(),
                reg.to_string(),
                rep.difference_degree,
            ));
        }
        SpecialKind::Sym2 | SpecialKind::Tensor2 => {
            checks.push(CheckReport::new(
                format!("value within theta^-{} of a monic polynomial", m - 4),
                rep.candidate_monic && rep.residual_degree <= -(m - 4),
                rep.value.to_string(),
                rep.candidate.to_string(),
                Some(rep.residual_degree),
            ));
        }
        SpecialKind::Convolution => {}
    }
    let cutoff = Some(rep.series.cutoff);
    Ok(Draft {
        precision: Some(m),
        cutoff,
        checks,
        result: serde_json::to_value(&rep).map_err(|e| Error::Internal(e.to_string()))?,
    })
}

fn verify_all(cfg: &Config, only: Option<&str>) -> Result<Draft> {
    let wanted: Option<Vec<u32>> = match only {
        Some(s) => Some(
            s.split(',')
                .map(|t| t.trim().parse::<u32>().ok().filter(|k| (1..=12).contains(k)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Config(format!("--only expects suite numbers 1 to 12, got {s:?}")))?,
        ),
        None => None,
    };
    let outcomes = match &wanted {
        None => suites::run_all(cfg.seed),
        Some(ids) => ids.iter().map(|&id| suites::run_one(id, cfg.seed)).collect(),
    };
    let mut checks = Vec::new();
    for o in &outcomes {
        for c in &o.checks {
            let mut c = c.clone();
            c.name = format!("[{}] {}", o.id, c.name);
            checks.push(c);
        }
    }
    let summary: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed, "checks": o.checks.len(), "notes": o.notes }))
        .collect();
    Ok(Draft::exact(checks, json!({ "suites": summary })))
}
