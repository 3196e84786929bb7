//! Reduced-size invariant suite covering every module, used by the
//! `selfcheck` subcommand. Each check is named, independent, and fast; a
//! fault-injection hook perturbs a Hankel series coefficient so the test
//! suite can verify that the Riccati check actually has teeth.

use std::f64::consts::{E, PI};

use cuspres_core::asymptotics::{
    nu_of_lambda, phase_volume, seed_cusp, weyl_count, weyl_model, NuBranch,
};
use cuspres_core::bessel::{
    hankel_quotient, hankel_series, hquot, iquot, jquot, kquot, remainders_first_kind,
};
use cuspres_core::complexfn::{log_gamma, solve_nu_log_nu, BranchedArg, LambertQuery};
use cuspres_core::geodesics::{nontrap_scan, MetricProfile};
use cuspres_core::resonance::{
    enumerate, polish, residual_cusp, ModeProblem, ProblemKind, ResidualEval, SolverConfig,
};
use cuspres_core::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Intentional perturbations for exercising the checks themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Add 1e-3 to the Hankel `Q` sum before assembling the quotient.
    HankelCoefficient,
}

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(Option<Fault>) -> Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    ("gamma-recurrence", check_gamma_recurrence),
    ("gamma-reflection", check_gamma_reflection),
    ("lambert-roundtrip", check_lambert_roundtrip),
    ("lambert-real-monotone", check_lambert_monotone),
    ("branched-arg-roundtrip", check_branched_arg),
    ("remainders-difference-law", check_difference_law),
    ("bessel-closed-forms", check_closed_forms),
    ("riccati-k", check_riccati_k),
    ("riccati-h", check_riccati_h),
    ("riccati-j", check_riccati_j),
    ("nu-branch-invariants", check_nu_branch),
    ("seed-imaginary-exact", check_seed_imaginary),
    ("seed-proximity", check_seed_proximity),
    ("upper-half-plane-zero-free", check_uhp_zero_free),
    ("phase-volume-riemann", check_phase_volume),
    ("weyl-consistency", check_weyl),
    ("geodesic-conservation", check_geodesics),
    ("polish-affine", check_polish_affine),
    ("enumerate-consistency", check_enumerate),
];

/// Names of all checks, in execution order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Run the whole suite; `fault` perturbs the targeted computation.
pub fn run(fault: Option<Fault>) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, f)| match f(fault) {
            Ok(()) => CheckResult {
                name,
                passed: true,
                detail: String::new(),
            },
            Err(detail) => CheckResult {
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_gamma_recurrence(_: Option<Fault>) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let z = c(rng.gen_range(0.5..50.0), rng.gen_range(-500.0..500.0));
        let lhs = log_gamma(z + 1.0).map_err(|e| e.to_string())?
            - log_gamma(z).map_err(|e| e.to_string())?;
        let mut d = lhs - z.ln();
        d.im -= 2.0 * PI * (d.im / (2.0 * PI)).round();
        if d.norm() > 1e-10 {
            return Err(format!("recurrence defect {:.3e} at z = {z}", d.norm()));
        }
    }
    Ok(())
}

fn check_gamma_reflection(_: Option<Fault>) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(8);
    let mut done = 0;
    while done < 20 {
        let z = c(rng.gen_range(-4.0..4.0), rng.gen_range(-3.0..3.0));
        if (z.re - z.re.round()).abs() < 0.05 && z.im.abs() < 0.05 {
            continue;
        }
        let lhs = log_gamma(z).map_err(|e| e.to_string())?.exp()
            * log_gamma(c(1.0 - z.re, -z.im))
                .map_err(|e| e.to_string())?
                .exp();
        let rhs = PI / (PI * z).sin();
        if (lhs - rhs).norm() > 1e-9 * (1.0 + rhs.norm()) {
            return Err(format!("reflection defect at z = {z}"));
        }
        done += 1;
    }
    Ok(())
}

fn check_lambert_roundtrip(_: Option<Fault>) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..20 {
        let re = rng.gen_range(E..1e6);
        let zeta = c(re, rng.gen_range(-1.0..1.0) * re);
        let nu = solve_nu_log_nu(LambertQuery::new(zeta).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let defect = (nu * nu.ln() - zeta).norm() / zeta.norm();
        if defect > 1e-12 {
            return Err(format!("roundtrip defect {defect:.3e} at ζ = {zeta}"));
        }
    }
    Ok(())
}

fn check_lambert_monotone(_: Option<Fault>) -> Result<(), String> {
    let mut last = 0.0;
    for p in 1..=6 {
        let nu = solve_nu_log_nu(LambertQuery::new(c(10f64.powi(p), 0.0)).unwrap())
            .map_err(|e| e.to_string())?;
        if nu.im != 0.0 || nu.re <= last {
            return Err(format!("not real/increasing at ζ = 1e{p}"));
        }
        last = nu.re;
    }
    Ok(())
}

fn check_branched_arg(_: Option<Fault>) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..20 {
        let w = c(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        if w.norm() < 1e-3 {
            continue;
        }
        let ba = BranchedArg::from_complex(w);
        if (ba.to_complex() - w).norm() > 1e-13 * w.norm() {
            return Err(format!("roundtrip defect at w = {w}"));
        }
    }
    Ok(())
}

fn check_difference_law(_: Option<Fault>) -> Result<(), String> {
    for mag in [10.0, 100.0, 1000.0] {
        for phase in [c(1.0, 0.0), c(0.6, -0.8)] {
            let nu = mag * phase;
            for z in [0.5, 2.0] {
                let rem = remainders_first_kind(nu, z).map_err(|e| e.to_string())?;
                let defect = rem.one_plus_r1 - rem.one_plus_r3 + z * z / (2.0 * nu * nu);
                if defect.norm() > 10.0 * z.powi(4) / mag.powi(3) {
                    return Err(format!("law violated at ν = {nu}, z = {z}"));
                }
            }
        }
    }
    Ok(())
}

fn check_closed_forms(_: Option<Fault>) -> Result<(), String> {
    let kq = kquot(c(0.5, 0.0), 1.0).map_err(|e| e.to_string())?;
    if (kq - c(-1.5, 0.0)).norm() > 1e-12 {
        return Err(format!("K'/K at half order: {kq}"));
    }
    let iq = iquot(c(0.5, 0.0), 1.0).map_err(|e| e.to_string())?;
    let coth1 = 1.0f64.cosh() / 1.0f64.sinh();
    if (iq - c(coth1 - 0.5, 0.0)).norm() > 1e-12 {
        return Err(format!("I'/I at half order: {iq}"));
    }
    let hq = hquot(0.5, &BranchedArg::from_complex(c(100.0, 0.0))).map_err(|e| e.to_string())?;
    if (hq - c(-0.005, -1.0)).norm() > 1e-14 {
        return Err(format!("H'/H at half order: {hq}"));
    }
    let jq = jquot(0.5, c(12.0, 0.0)).map_err(|e| e.to_string())?;
    if (jq - c(1.0 / 12.0f64.tan() - 1.0 / 24.0, 0.0)).norm() > 1e-11 {
        return Err(format!("J'/J at half order: {jq}"));
    }
    Ok(())
}

fn check_riccati_k(_: Option<Fault>) -> Result<(), String> {
    for nu in [c(1.0, 1.0), c(0.5, -100.0)] {
        for z in [0.5, 2.0] {
            let h = 5e-5 * z;
            let q = kquot(nu, z).map_err(|e| e.to_string())?;
            let qp = (kquot(nu, z + h).map_err(|e| e.to_string())?
                - kquot(nu, z - h).map_err(|e| e.to_string())?)
                / (2.0 * h);
            let resid = qp + q * q + q / z - (1.0 + nu * nu / (z * z));
            let scale = 1.0 + q.norm_sqr() + (nu * nu / (z * z)).norm();
            if resid.norm() / scale > 1e-6 {
                return Err(format!(
                    "residual {:.3e} at ν = {nu}, z = {z}",
                    resid.norm() / scale
                ));
            }
        }
    }
    Ok(())
}

fn hquot_maybe_faulty(n: f64, x: &BranchedArg, fault: Option<Fault>) -> Result<Complex64, String> {
    if !(x.arg > -2.0 * PI && x.arg < PI) {
        return Err("branch domain".into());
    }
    let mut series = hankel_series(n, x.to_complex()).map_err(|e| e.to_string())?;
    if fault == Some(Fault::HankelCoefficient) {
        series.q += 1e-3;
    }
    hankel_quotient(&series).map_err(|e| e.to_string())
}

fn check_riccati_h(fault: Option<Fault>) -> Result<(), String> {
    for n in [1.0, 2.0] {
        for (modulus, arg) in [(30.0f64, 0.0), (100.0, -PI / 2.0), (100.0, -5.0 * PI / 4.0)] {
            let h = 1e-4;
            let base = BranchedArg::from_parts(modulus.ln(), arg);
            let x = base.to_complex();
            let q = hquot_maybe_faulty(n, &base, fault)?;
            let qp = (hquot_maybe_faulty(n, &BranchedArg::near_sheet(x + h, arg), fault)?
                - hquot_maybe_faulty(n, &BranchedArg::near_sheet(x - h, arg), fault)?)
                / (2.0 * h);
            let resid = qp + q * q + q / x + 1.0 - n * n / (x * x);
            let scale = 1.0 + q.norm_sqr() + (n * n / (x * x)).norm();
            if resid.norm() / scale > 1e-6 {
                return Err(format!(
                    "residual {:.3e} at n = {n}, |x| = {modulus}, arg = {arg:.4}",
                    resid.norm() / scale
                ));
            }
        }
    }
    Ok(())
}

fn check_riccati_j(_: Option<Fault>) -> Result<(), String> {
    for n in [1.0, 2.0] {
        for x in [c(20.0, 0.0), c(100.0, -3.0)] {
            let h = 1e-4;
            let q = jquot(n, x).map_err(|e| e.to_string())?;
            let qp = (jquot(n, x + h).map_err(|e| e.to_string())?
                - jquot(n, x - h).map_err(|e| e.to_string())?)
                / (2.0 * h);
            let resid = qp + q * q + q / x + 1.0 - n * n / (x * x);
            let scale = 1.0 + q.norm_sqr() + (n * n / (x * x)).norm();
            if resid.norm() / scale > 1e-6 {
                return Err(format!("residual at n = {n}, x = {x}"));
            }
        }
    }
    Ok(())
}

fn check_nu_branch(_: Option<Fault>) -> Result<(), String> {
    for (b, branch) in [(1.0, NuBranch::CuspBranch), (-1.0, NuBranch::FunnelBranch)] {
        for i in 0..10 {
            for j in 0..10 {
                let lam = c(1.0 + 499.0 * i as f64 / 9.0, -5.0 + 10.0 * j as f64 / 9.0);
                let v = nu_of_lambda(lam, b, branch).map_err(|e| e.to_string())?;
                let rel = v.nu * v.nu - (0.25 - lam * lam / (b * b));
                if rel.norm() > 1e-14 * (1.0 + (lam / b).norm_sqr()) {
                    return Err(format!("defining relation defect at λ = {lam}"));
                }
                match branch {
                    NuBranch::CuspBranch if lam.re > b / 2.0 && v.nu.im >= 0.0 => {
                        return Err(format!("Im ν ≥ 0 at λ = {lam}"));
                    }
                    NuBranch::FunnelBranch if lam.im > 0.0 && v.nu.re <= 0.0 => {
                        return Err(format!("Re ν ≤ 0 at λ = {lam}"));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

fn check_seed_imaginary(_: Option<Fault>) -> Result<(), String> {
    for (a, b) in [(-1.0, 1.0), (-2.0, 1.0), (-1.0, 2.0), (-2.0, 2.0)] {
        let prob = ModeProblem::new(a, b, 1.0, ProblemKind::CuspCone).unwrap();
        for k in [10, 100] {
            let s = seed_cusp(k, &prob).map_err(|e| e.to_string())?;
            if s.lambda0.im != -b * prob.j as f64 / 2.0 {
                return Err(format!("Im seed not exact at ({a},{b}), k = {k}"));
            }
        }
    }
    Ok(())
}

fn check_seed_proximity(_: Option<Fault>) -> Result<(), String> {
    let prob = ModeProblem::new(-1.0, 1.0, 1.0, ProblemKind::CuspCone).unwrap();
    let cfg = SolverConfig::default();
    for k in [10u32, 100] {
        let seed = seed_cusp(k, &prob).unwrap().lambda0;
        let spacing = prob.spacing(k);
        let out = polish(|t| residual_cusp(t, &prob), seed, 3.0 * spacing, &cfg)
            .map_err(|e| e.to_string())?;
        if (out.lambda - seed).norm() >= spacing / 2.0 {
            return Err(format!(
                "k = {k}: |λ - seed| = {:.4} ≥ half spacing {:.4}",
                (out.lambda - seed).norm(),
                spacing / 2.0
            ));
        }
    }
    Ok(())
}

fn check_uhp_zero_free(_: Option<Fault>) -> Result<(), String> {
    let prob = ModeProblem::new(-1.0, 1.0, 1.0, ProblemKind::CuspCone).unwrap();
    for i in 0..5 {
        for j in 0..5 {
            let lam = c(1.0 + 99.0 * i as f64 / 4.0, 0.5 + 9.5 * j as f64 / 4.0);
            if lam.norm() < 10.0 {
                continue; // below the Hankel floor
            }
            let f = residual_cusp(lam, &prob).map_err(|e| e.to_string())?;
            if f.value.norm() <= 1e-3 {
                return Err(format!("|F| = {:.3e} at λ = {lam}", f.value.norm()));
            }
        }
    }
    Ok(())
}

fn check_phase_volume(_: Option<Fault>) -> Result<(), String> {
    let (lambda, m, b) = (10.0f64, 1.0, 1.0);
    let r_star = (lambda / m).ln() / b;
    let n = 10_000;
    let h = r_star / n as f64;
    let riemann: f64 = (0..n)
        .map(|i| {
            let r = (i as f64 + 0.5) * h;
            (lambda * lambda - m * m * (2.0 * b * r).exp())
                .max(0.0)
                .sqrt()
        })
        .sum::<f64>()
        * h
        / PI;
    let quad = phase_volume(lambda, m, b).map_err(|e| e.to_string())?;
    if (quad - riemann).abs() > 1e-4 * riemann {
        return Err(format!("quadrature {quad} vs riemann {riemann}"));
    }
    Ok(())
}

fn check_weyl(_: Option<Fault>) -> Result<(), String> {
    let prob = ModeProblem::new(-1.0, 1.0, 1.0, ProblemKind::CuspCone).unwrap();
    let run = enumerate(&prob, 10, 200, 10, &SolverConfig::default()).map_err(|e| e.to_string())?;
    if !run.failures.is_empty() {
        return Err("reduced run had failures".into());
    }
    let top = run.resonances.last().unwrap().lambda.re;
    let ratio = (weyl_count(&run.resonances, top) * 10) as f64 / weyl_model(top, prob.b);
    if !(0.8..=1.2).contains(&ratio) {
        return Err(format!("count/model ratio {ratio:.4} outside [0.8, 1.2]"));
    }
    Ok(())
}

fn check_geodesics(_: Option<Fault>) -> Result<(), String> {
    let p = MetricProfile::new(-1.0, 1.0).unwrap();
    let rep = nontrap_scan(&p, 5, 3, 60.0, 10.0, 5e-3).map_err(|e| e.to_string())?;
    if !rep.failures.is_empty() {
        return Err("trajectory failures".into());
    }
    if rep.fraction_escaped != 1.0 {
        return Err(format!("only {}/{} escaped", rep.escaped, rep.total));
    }
    if rep.max_speed_drift_rate > 1e-8 || rep.max_clairaut_drift_rate > 1e-8 {
        return Err("invariant drift above 1e-8 per unit time".into());
    }
    Ok(())
}

fn check_polish_affine(_: Option<Fault>) -> Result<(), String> {
    let root = c(3.0, -1.0);
    let out = polish(
        |t| {
            Ok(ResidualEval {
                value: t - root,
                scale: t.norm() + root.norm(),
            })
        },
        c(3.1, -0.9),
        1.0,
        &SolverConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    if (out.lambda - root).norm() > 1e-8 || out.iterations > 2 {
        return Err(format!(
            "landed at {} in {} iterations",
            out.lambda, out.iterations
        ));
    }
    Ok(())
}

fn check_enumerate(_: Option<Fault>) -> Result<(), String> {
    let prob = ModeProblem::new(-1.0, 1.0, 1.0, ProblemKind::CuspCone).unwrap();
    let run = enumerate(&prob, 10, 60, 10, &SolverConfig::default()).map_err(|e| e.to_string())?;
    if run.resonances.len() != 6 || !run.failures.is_empty() {
        return Err("unexpected run shape".into());
    }
    for pair in run.resonances.windows(2) {
        if pair[1].lambda.re <= pair[0].lambda.re {
            return Err("Re λ not increasing".into());
        }
    }
    if run.resonances.iter().any(|r| r.residual >= 1e-10) {
        return Err("residual above tolerance".into());
    }
    Ok(())
}
