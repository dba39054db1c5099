//! One function per subcommand, each returning its reports in a fixed order.

use qtau_core::bilinear::{
    algebraic_identity_residual, bilinear_residual_main, canonical, fiber_base_sides, qpp_residual,
    qtoda_residual, ExactRing, GenericBase, NumericRing, Sectors,
};
use qtau_core::block::{conformal_block, to_exact_series, ExactBlock, NumericBlock};
use qtau_core::exact::{ExactScalar, Generators};
use qtau_core::identities::identity_suite;
use qtau_core::limits::{
    bilincont_residual, limit_qpainleve, limit_tau, limit_toda, stattau_discrepancy,
    toda_hirota_residual, GilParams, GilSolution, Hirota, LimitSeries,
};
use qtau_core::num::Complex;
use qtau_core::sample::Sampler;
use qtau_core::series::GradedSeries;
use qtau_core::symmetry::{
    verify_induced_action, verify_qpp, verify_relations, verify_tau13_and_forms, Representation,
    Sampling, TrialSummary, Variant,
};
use qtau_core::tau::{c_equation_residuals, CChoice, LogVar, Tau, TauForm, TauParams};
use qtau_core::Result;

use crate::config::{Mode, Settings};
use crate::report::{pow10, CheckReport, Direction};

/// `h` values for the limit checks: `-10^-1, -10^-1.5, -10^-2`.
pub const HBAR: [f64; 3] = [-0.1, -0.031_622_776_601_683_79, -0.01];

fn c(set: &Settings, v: &str) -> Complex {
    Complex::parse(v, set.precision).expect("literal parses")
}

/// A parameter echo: 30 significant digits.
fn cx(x: &Complex) -> String {
    format!("{x:.30}")
}

fn lv(x: &Complex) -> Result<LogVar> {
    LogVar::new(x)
}

fn sampler(set: &Settings, salt: u64) -> Sampler {
    Sampler::new(
        set.seed.wrapping_mul(1000).wrapping_add(salt),
        set.precision,
    )
}

/// Runs `f` at each point, keeping the worst `log10` residual; the first
/// error ends the check.
fn worst<P>(points: &[P], mut f: impl FnMut(&P) -> Result<f64>) -> Result<f64> {
    let mut w = f64::NEG_INFINITY;
    for p in points {
        w = w.max(f(p)?);
    }
    Ok(w)
}

fn numeric_report(name: &str, r: Result<f64>, threshold_exp: f64) -> CheckReport {
    match r {
        Ok(v) => CheckReport::below_log10(name, v, threshold_exp),
        Err(e) => CheckReport::error(name, e),
    }
}

fn exact_report(name: &str, r: Result<GradedSeries<ExactScalar>>) -> CheckReport {
    match r {
        Ok(s) => {
            let nonzero: Vec<String> = s.terms().map(|(k, _)| k.to_string()).collect();
            let mut rep = CheckReport::exact(name, nonzero.len());
            if !nonzero.is_empty() {
                rep = rep.detail("nonzero_zeta_exponents", nonzero.join(","));
            }
            rep
        }
        Err(e) => CheckReport::error(name, e),
    }
}

fn points_param(rep: CheckReport, set: &Settings, n: usize) -> CheckReport {
    rep.param("digits", set.digits())
        .param("seed", set.seed)
        .param("points", n)
}

pub fn block(set: &Settings) -> Vec<CheckReport> {
    let order = set.order.unwrap_or(3);
    let exact = conformal_block(&ExactBlock::standard(), order).map(|s| to_exact_series(&s));
    let names = Generators::AB.names();
    let mut rep = match (set.mode.unwrap_or(Mode::Exact), &exact) {
        (_, Err(e)) => return vec![CheckReport::error("block", e)],
        (Mode::Exact, Ok(_)) => CheckReport::exact("block", 0),
        (Mode::Numeric, Ok(ex)) => {
            let mut s = sampler(set, 1);
            let u = set.u.clone().unwrap_or_else(|| s.u());
            let q = set.q.clone().unwrap_or_else(|| s.q());
            let r = block_consistency(ex, &u, &q, order);
            numeric_report("block", r, 10.0 - set.digits() as f64)
                .param("u", cx(&u))
                .param("q", cx(&q))
        }
    };
    if let Ok(ex) = &exact {
        for (k, v) in ex.terms() {
            rep = rep.detail(&format!("zeta^{k:03}"), v.to_string_with(names));
        }
    }
    vec![rep
        .with_order(order)
        .param("mode", mode_name(set.mode.unwrap_or(Mode::Exact)))
        .param("digits", set.digits())]
}

/// Numeric block against the exact coefficients evaluated at
/// `a = q^(1/4)`, `b = u^(1/4)`; the largest relative coefficient error.
fn block_consistency(
    exact: &GradedSeries<ExactScalar>,
    u: &Complex,
    q: &Complex,
    order: u32,
) -> Result<f64> {
    let num = conformal_block(&NumericBlock::standard(u, q)?, order)?;
    let ab = [lv(q)?.frac_pow(1, 4), lv(u)?.frac_pow(1, 4)];
    let mut w = f64::NEG_INFINITY;
    for (k, v) in exact.terms() {
        let e = v.eval(&ab)?;
        let n = num
            .coeff(k)
            .cloned()
            .unwrap_or_else(|| Complex::zero(u.precision()));
        w = w.max((&n - &e).log10_abs() - e.log10_abs());
    }
    Ok(w)
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Exact => "exact",
        Mode::Numeric => "numeric",
    }
}

/// `(u, q)` pairs: the configured point, or `trials` random ones.
fn uq_points(set: &Settings, salt: u64, default_trials: usize) -> Vec<(Complex, Complex)> {
    let mut s = sampler(set, salt);
    if set.u.is_some() || set.q.is_some() {
        return vec![(
            set.u.clone().unwrap_or_else(|| s.u()),
            set.q.clone().unwrap_or_else(|| s.q()),
        )];
    }
    (0..set.trials.unwrap_or(default_trials))
        .map(|_| (s.u(), s.q()))
        .collect()
}

pub fn bilinear(set: &Settings) -> Vec<CheckReport> {
    let mode = set.mode.unwrap_or(Mode::Exact);
    let rep = match mode {
        Mode::Exact => {
            let order = set.order.unwrap_or(4);
            let r = bilinear_residual_main(&ExactRing::new(), order, Sectors::All)
                .map(|s| canonical(&s));
            exact_report("bilinear", r).with_order(order)
        }
        Mode::Numeric => {
            let order = set.order.unwrap_or(12);
            let pts = uq_points(set, 2, 3);
            let r = worst(&pts, |(u, q)| {
                let ring = NumericRing::new(lv(u)?, lv(q)?);
                Ok(bilinear_residual_main(&ring, order, Sectors::All)?.max_log10())
            });
            points_param(numeric_report("bilinear", r, -30.0), set, pts.len()).with_order(order)
        }
    };
    vec![rep.param("mode", mode_name(mode))]
}

pub fn algebraic(set: &Settings) -> Vec<CheckReport> {
    let mode = set.mode.unwrap_or(Mode::Exact);
    let order = set.order.unwrap_or(4);
    let signs = set.sign.map(|s| vec![s]).unwrap_or_else(|| vec![1, -1]);
    signs
        .into_iter()
        .map(|sign| {
            let name = format!("algebraic s={sign:+}");
            let rep = match mode {
                Mode::Exact => {
                    let r = algebraic_identity_residual(&ExactRing::new(), order, sign)
                        .map(|s| canonical(&s));
                    exact_report(&name, r)
                }
                Mode::Numeric => {
                    let pts = uq_points(set, 3, 3);
                    let r = worst(&pts, |(_, q)| {
                        let ring = NumericRing::new(lv(q)?, lv(q)?);
                        Ok(algebraic_identity_residual(&ring, order, sign)?.max_log10())
                    });
                    points_param(numeric_report(&name, r, -30.0), set, pts.len())
                }
            };
            rep.with_order(order)
                .param("mode", mode_name(mode))
                .param("sign", sign)
        })
        .collect()
}

pub fn qtoda(set: &Settings) -> Vec<CheckReport> {
    let order = set.order.unwrap_or(10);
    let mut s = sampler(set, 4);
    let mut pts = Vec::new();
    let n = if set.u.is_some() || set.q.is_some() || set.s.is_some() {
        1
    } else {
        set.trials.unwrap_or(10)
    };
    for _ in 0..n {
        let u = set.u.clone().unwrap_or_else(|| s.u());
        let q = set.q.clone().unwrap_or_else(|| s.q());
        let sv = set.s.clone().unwrap_or_else(|| s.s());
        let z = set.zz.clone().unwrap_or_else(|| s.z(0.006));
        pts.push((u, q, sv, z));
    }
    let build = |(u, q, sv, z): &(Complex, Complex, Complex, Complex)| -> Result<(Tau, LogVar)> {
        let mut p = TauParams::new(u, q, sv)?.with_order(order);
        if let Some(n) = set.n_max {
            p = p.with_n_max(n);
        }
        Ok((Tau::new(p), lv(z)?))
    };
    let mut out = Vec::new();
    for (name, f) in [
        (
            "qtoda",
            qtoda_residual as fn(&Tau, &LogVar) -> Result<Complex>,
        ),
        ("qpp", qpp_residual),
    ] {
        let r = worst(&pts, |pt| {
            let (tau, z) = build(pt)?;
            Ok(f(&tau, &z)?.log10_abs())
        });
        let rep = points_param(numeric_report(name, r, -25.0), set, pts.len())
            .with_order(order)
            .conjecture();
        out.push(rep.param(
            "n_max",
            set.n_max.map_or("adaptive".to_string(), |n| n.to_string()),
        ));
    }
    out
}

pub fn appendix_b(set: &Settings) -> Vec<CheckReport> {
    let orders = set.order.map(|o| vec![o]).unwrap_or_else(|| vec![3, 12]);
    let mut s = sampler(set, 5);
    let given = set.u.is_some() || set.q1.is_some() || set.q2.is_some();
    let n = if given { 1 } else { set.trials.unwrap_or(3) };
    let pts: Vec<(Complex, Complex, Complex)> = (0..n)
        .map(|_| {
            let u = set.u.clone().unwrap_or_else(|| s.u());
            let (q1, q2) = s.q_pair();
            (
                u,
                set.q1.clone().unwrap_or(q1),
                set.q2.clone().unwrap_or(q2),
            )
        })
        .collect();
    const NAMES: [(&str, bool); 4] = [
        ("appendix-b F_lozenge = F^_1", false),
        ("appendix-b F_lozenge = (1 - q1 q2 Z^(1/2)) F^_0", false),
        ("appendix-b observed F_lozenge = chi F^_0", true),
        ("appendix-b observed F^_1 = (1 - q1 q2 Z^(1/2)) F^_0", true),
    ];
    let mut out = Vec::new();
    for order in orders {
        let thr = if order <= 3 { -30.0 } else { -25.0 };
        let mut acc = [f64::NEG_INFINITY; 4];
        let mut err = None;
        for (u, q1, q2) in &pts {
            let r = GenericBase::new(u, q1, q2).and_then(|b| b.series(order));
            match r {
                Ok(ser) => {
                    let (a, b) = ser.residuals();
                    let (c2, d) = ser.observed_residuals();
                    for (slot, v) in acc.iter_mut().zip([a, b, c2, d]) {
                        *slot = slot.max(v.max_log10());
                    }
                }
                Err(e) => {
                    err = Some(e);
                    break;
                }
            }
        }
        for (i, (name, observed)) in NAMES.iter().enumerate() {
            let rep = match &err {
                Some(e) => CheckReport::error(*name, e),
                None => CheckReport::below_log10(*name, acc[i], thr),
            };
            let rep = points_param(rep, set, pts.len())
                .with_order(order)
                .conjecture();
            out.push(if *observed {
                rep.detail(
                    "note",
                    "chi(Z) = sum_k Z^(k(k+1)/2), the 2-core generating function",
                )
            } else {
                rep
            });
        }
    }
    out
}

pub fn fiber_base(set: &Settings) -> Vec<CheckReport> {
    let order = set.order.unwrap_or(8);
    let mut s = sampler(set, 6);
    let given = set.u.is_some() || set.q.is_some() || set.zz.is_some();
    let n = if given { 1 } else { set.trials.unwrap_or(3) };
    let pts: Vec<(Complex, Complex, Complex)> = (0..n)
        .map(|_| {
            let u = set.u.clone().unwrap_or_else(|| s.u());
            let q = set.q.clone().unwrap_or_else(|| s.q());
            let z = set.zz.clone().unwrap_or_else(|| s.z(0.3));
            (u, q, z)
        })
        .collect();
    // the relation is expected to fail everywhere: report the smallest miss
    let mut least = f64::INFINITY;
    let mut err = None;
    for (u, q, z) in &pts {
        match fiber_base_sides(u, q, z, order) {
            Ok((l, r)) => least = least.min((&l - &r).log10_abs() - l.log10_abs()),
            Err(e) => {
                err = Some(e);
                break;
            }
        }
    }
    let rep = match err {
        Some(e) => CheckReport::error("fiber-base", e),
        None => CheckReport::new("fiber-base", pow10(least), 1e-6, Direction::Above),
    };
    let mut rep = points_param(rep, set, pts.len()).with_order(order);
    if given {
        let (u, q, z) = &pts[0];
        rep = rep.param("u", u).param("q", q).param("zz", z);
    }
    vec![rep]
}

fn summary_report(name: &str, s: &TrialSummary, sampling: Sampling) -> CheckReport {
    let rep = match sampling {
        Sampling::Numeric(_) if s.failures.is_empty() || s.max_log10 >= sampling.threshold() => {
            CheckReport::below_log10(name, s.max_log10, sampling.threshold())
        }
        Sampling::Numeric(_) => CheckReport::error(name, s.failures.join("; ")),
        _ => CheckReport::exact(name, s.failures.len()),
    };
    let rep = rep
        .param("trials", s.trials)
        .detail("resampled", s.resampled);
    if s.failures.is_empty() {
        rep
    } else {
        rep.detail("failures", s.failures.join("; "))
    }
}

pub fn symmetry(set: &Settings) -> Vec<CheckReport> {
    let trials = set.trials.unwrap_or(100);
    let seed = set.seed;
    let numeric = Sampling::Numeric(set.precision);
    let samplings: Vec<(Sampling, &str)> = match set.mode {
        Some(Mode::Exact) => vec![
            (Sampling::Symbolic, "symbolic"),
            (Sampling::Rational, "rational"),
        ],
        Some(Mode::Numeric) => vec![(numeric, "numeric")],
        None => vec![
            (Sampling::Symbolic, "symbolic"),
            (Sampling::Rational, "rational"),
            (numeric, "numeric"),
        ],
    };
    let mut out = Vec::new();
    for &(sampling, tag) in &samplings {
        for (rep, rname) in [
            (Representation::Surface, "surface"),
            (Representation::Letters, "letters"),
        ] {
            let s = verify_relations(trials, seed, rep, sampling, Variant::Printed);
            out.push(summary_report(
                &format!("symmetry relations {rname} {tag}"),
                &s,
                sampling,
            ));
        }
        let s = verify_induced_action(trials, seed + 1, sampling);
        out.push(summary_report(
            &format!("symmetry induced action {tag}"),
            &s,
            sampling,
        ));
        let s = verify_tau13_and_forms(trials, seed + 2, sampling, true);
        out.push(summary_report(
            &format!("symmetry tau13 and first-order forms {tag}"),
            &s,
            sampling,
        ));
        if !matches!(sampling, Sampling::Numeric(_)) {
            let s = verify_qpp(trials, seed + 3, sampling);
            out.push(summary_report(
                &format!("symmetry qPIII from T {tag}"),
                &s,
                sampling,
            ));
        }
    }
    out.into_iter()
        .map(|r| r.param("seed", seed).param("digits", set.digits()))
        .collect()
}

pub fn tau(set: &Settings) -> Vec<CheckReport> {
    let order = set.order.unwrap_or(6);
    let thr = -35.0;
    let mut s = sampler(set, 7);
    let draw = |s: &mut Sampler| -> (Complex, Complex, Complex, Complex) {
        (
            set.u.clone().unwrap_or_else(|| s.u()),
            set.q.clone().unwrap_or_else(|| s.q()),
            set.s.clone().unwrap_or_else(|| s.s()),
            set.zz.clone().unwrap_or_else(|| s.z(0.03)),
        )
    };
    let given = set.u.is_some() || set.q.is_some() || set.s.is_some() || set.zz.is_some();
    let n_forms = if given {
        1
    } else {
        set.trials.map_or(10, |t| t.min(10))
    };
    let n_shift = if given { 1 } else { set.trials.unwrap_or(100) };
    let forms_pts: Vec<_> = (0..n_forms).map(|_| draw(&mut s)).collect();
    let shift_pts: Vec<_> = (0..n_shift).map(|_| draw(&mut s)).collect();
    let params = |(u, q, sv, _): &(Complex, Complex, Complex, Complex), ch| -> Result<TauParams> {
        let mut p = TauParams::new(u, q, sv)?.with_choice(ch).with_order(order);
        if let Some(n) = set.n_max {
            p = p.with_n_max(n);
        }
        Ok(p)
    };
    let rel = |a: &Complex, b: &Complex| (a - b).log10_abs() - b.log10_abs();
    let mut out = Vec::new();
    for (ch, cname) in [(CChoice::C1, "C1"), (CChoice::Cc, "Cc")] {
        let r = worst(&forms_pts, |pt| {
            let tau = Tau::new(params(pt, ch)?);
            let z = lv(&pt.3)?;
            let d = tau.eval(TauForm::Direct, 0, &z)?;
            let r = tau.eval(TauForm::Ratio, 0, &z)?;
            let t = tau.eval(TauForm::Rational, 0, &z)?;
            Ok(rel(&r, &d).max(rel(&t, &d)).max(rel(&t, &r)))
        });
        out.push(points_param(
            numeric_report(&format!("tau series forms {cname}"), r, thr),
            set,
            forms_pts.len(),
        ));
        let r = worst(&shift_pts, |pt| {
            let p = params(pt, ch)?;
            let z = lv(&pt.3)?;
            let t = Tau::new(p.clone()).value(&z)?;
            let shifted = &Tau::new(p.shifted(2)).value(&z)? * &pt.2;
            let inverted = Tau::new(p.inverted()?).value(&z)?;
            Ok(rel(&shifted, &t).max(rel(&inverted, &t)))
        });
        out.push(points_param(
            numeric_report(&format!("tau u-shift and inversion {cname}"), r, thr),
            set,
            n_shift,
        ));
        let r = worst(&shift_pts, |(u, q, _, z)| {
            let res = c_equation_residuals(ch, &lv(u)?, &lv(q)?, &lv(z)?)?;
            Ok(res
                .iter()
                .map(Complex::log10_abs)
                .fold(f64::NEG_INFINITY, f64::max))
        });
        out.push(points_param(
            numeric_report(&format!("tau C-equations {cname}"), r, thr),
            set,
            n_shift,
        ));
    }
    out.into_iter().map(|r| r.with_order(order)).collect()
}

pub fn identities(set: &Settings) -> Vec<CheckReport> {
    let trials = set.trials.unwrap_or(100);
    identity_suite(trials, set.seed, set.precision)
        .into_iter()
        .map(|r| {
            let thr = 10.0 - set.digits() as f64;
            let name = format!("identity {}", r.name);
            let rep = if r.name.starts_with("Glim") {
                // a shape check: the error must shrink as q -> 1
                CheckReport::new(
                    name,
                    if r.passed { 0.0 } else { 1.0 },
                    0.0,
                    Direction::Below,
                )
                .detail("log10_error_at_q_0.9999", format!("{:.2}", r.max_log10))
            } else if r.passed == (r.max_log10 < thr) {
                CheckReport::below_log10(name, r.max_log10, thr)
            } else {
                CheckReport::error(name, "too many trials hit a pole")
            };
            rep.param("trials", r.trials)
                .param("seed", set.seed)
                .param("digits", set.digits())
        })
        .collect()
}

fn limit_report(name: &str, r: Result<LimitSeries>) -> CheckReport {
    match r {
        Ok(l) => {
            let per_h: Vec<String> = l
                .hbar
                .iter()
                .zip(&l.log10_discrepancy)
                .map(|(h, d)| format!("{h}:{d:.2}"))
                .collect();
            CheckReport::new(
                name,
                l.fitted_order,
                0.8 * l.expected_order,
                Direction::Above,
            )
            .detail("expected_order", l.expected_order)
            .detail("log10_discrepancy_by_h", per_h.join(","))
            .detail("fitted_order", format!("{:.4}", l.fitted_order))
        }
        Err(e) => CheckReport::error(name, e),
    }
}

pub fn limits(set: &Settings) -> Vec<CheckReport> {
    let sigma = set.sigma.clone().unwrap_or_else(|| c(set, "0.13+0.05i"));
    let sv = set.s.clone().unwrap_or_else(|| c(set, "0.7"));
    let z = set.z.clone().unwrap_or_else(|| c(set, "0.1+0.02i"));
    let hs: Vec<String> = HBAR.iter().map(|h| h.to_string()).collect();
    let params = GilParams::new(&sigma, &sv).map(|g| match set.n_max {
        Some(n) => {
            let k = g.k_max;
            g.with_cutoffs(n, k)
        }
        None => g,
    });
    let mut out = Vec::new();
    let common = |r: CheckReport| {
        r.param("sigma", cx(&sigma))
            .param("s", cx(&sv))
            .param("z", cx(&z))
            .param("hbar", hs.join(","))
            .param("digits", set.digits())
    };
    match (params.as_ref(), lv(&z).as_ref()) {
        (Ok(g), Ok(zl)) => {
            let z2 = LogVar::from_ln(
                zl.ln() - &Complex::from_f64(std::f64::consts::LN_2, set.precision),
            );
            out.push(common(limit_report(
                "limit tau ratio",
                limit_tau(&HBAR, g, zl, &z2, true),
            )));
            out.push(common(limit_report("limit toda", limit_toda(&HBAR, g, zl))));
            let qp = GilSolution::new(g).and_then(|sol| limit_qpainleve(&HBAR, &sol, zl));
            out.push(common(limit_report("limit qPIII to PIII", qp)));
            let t = toda_hirota_residual(g, Hirota::Standard);
            out.push(common(numeric_report(
                "toda termwise",
                t,
                10.0 - set.digits() as f64,
            )));
            for sign in [1i64, -1] {
                let d = stattau_discrepancy(-0.01, sign, zl, &z2, 4, 10);
                let name = format!("limit algebraic tau s={:+}", -sign);
                out.push(
                    numeric_report(&name, d, -3.0)
                        .param("hbar", "-0.01")
                        .param("z", cx(&z))
                        .param("digits", set.digits()),
                );
            }
        }
        (Err(e), _) | (_, Err(e)) => out.push(CheckReport::error("limits", e)),
    }
    let order = set.order.unwrap_or(3);
    let r = bilincont_residual(&ExactScalar::var(0, 1), order, Hirota::Standard, 2);
    let rep = exact_report("bilincont", r)
        .with_order(order)
        .param("sigma", "symbolic");
    out.push(rep.detail("relation", "sum W D^2(F+, F-) = +2 z^(1/2) sum W F+ F-"));
    out
}

/// Every check at desk-scale defaults. Groups run concurrently; the
/// output order is fixed.
pub fn suite(set: &Settings) -> Vec<CheckReport> {
    let mut exact = set.clone();
    exact.mode = Some(Mode::Exact);
    exact.order = None;
    let mut numeric = exact.clone();
    numeric.mode = Some(Mode::Numeric);
    let mut sym = set.clone();
    sym.mode = None;
    type Group = (fn(&Settings) -> Vec<CheckReport>, Settings);
    let groups: Vec<Group> = vec![
        (bilinear, exact.clone()),
        (bilinear, numeric.clone()),
        (algebraic, exact.clone()),
        (appendix_b, numeric.clone()),
        (symmetry, sym),
        (tau, numeric.clone()),
        (qtoda, numeric.clone()),
        (limits, numeric.clone()),
        (identities, numeric.clone()),
        (fiber_base, numeric),
    ];
    std::thread::scope(|sc| {
        let handles: Vec<_> = groups.iter().map(|(f, s)| sc.spawn(move || f(s))).collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("check thread panicked"))
            .collect()
    })
}
