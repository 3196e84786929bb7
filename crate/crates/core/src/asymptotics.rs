//! The spectral parameter ν(λ) with its branch conventions, Lambert-W seed
//! formulas for both geometries, the predicted asymptotic laws, and the Weyl
//! counting diagnostics.

use core::f64::consts::{E, PI};

use num_complex::Complex64;
// inherent f64 methods cover the std build; the trait carries the libm build
#[allow(unused_imports)]
use num_traits::Float;

use crate::complexfn::{solve_nu_log_nu, LambertQuery};
use crate::resonance::{ModeProblem, ProblemKind, Resonance};
use crate::{Error, Result};

/// Which continuation of `ν = √(1/4 - λ²/b²)` a value was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuBranch {
    /// Branch with `Im ν < 0` for `Re λ > b/2` (cusp-cone geometry, `b > 0`).
    CuspBranch,
    /// Branch with `Re ν > 0` for `Im λ > 0` (funnel-cone geometry, `b < 0`).
    FunnelBranch,
}

/// A value of the spectral parameter together with its branch tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuValue {
    /// The order `ν` with `ν² = 1/4 - λ²/b²`.
    pub nu: Complex64,
    /// Branch the value belongs to.
    pub branch: NuBranch,
}

/// Compute `ν(λ) = -i·√(λ²/b² - 1/4)` with the principal square root.
///
/// For `Re λ > 0` this single formula realises both branch conventions:
/// `Im ν < 0` on the cusp branch when `Re λ > b/2`, and `Re ν > 0` on the
/// funnel branch when `Im λ > 0` (the formula is analytic across the positive
/// real axis, where the funnel branch is continued downward). Errors within
/// `1e-8` of the branch points `±b/2`.
pub fn nu_of_lambda(lambda: Complex64, b: f64, branch: NuBranch) -> Result<NuValue> {
    let half_b = Complex64::new(b / 2.0, 0.0);
    if (lambda - half_b).norm() < 1e-8 || (lambda + half_b).norm() < 1e-8 {
        return Err(Error::BranchPoint { lambda });
    }
    let w = lambda * lambda / (b * b) - 0.25;
    let nu = -Complex64::i() * w.sqrt();
    Ok(NuValue { nu, branch })
}

/// Seed data for one cusp-cone resonance index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedResult {
    /// First-order location `(b e z ν̃ - i b j)/2`.
    pub lambda0: Complex64,
    /// Solution of `ν̃ log ν̃ = ζ`.
    pub nu_tilde: Complex64,
    /// `ζ = 2πk/(e z)`, real and positive.
    pub zeta: Complex64,
}

/// Lambert-W seed for the k-th cusp-cone resonance.
///
/// Solves `ν̃ log ν̃ = 2πk/(ez)` (the bounded remainder of the full relation
/// is dropped; the Newton polish absorbs it) and maps back through
/// `λ₀ = (b e z ν̃ - i b j)/2`, so `Im λ₀ = -bj/2` exactly for real ζ.
pub fn seed_cusp(k: u32, prob: &ModeProblem) -> Result<SeedResult> {
    if prob.kind != ProblemKind::CuspCone {
        return Err(Error::InvalidParameter(
            "seed_cusp requires a cusp-cone problem",
        ));
    }
    if k < 10 {
        return Err(Error::InvalidParameter("seed_cusp requires k >= 10"));
    }
    let zeta = Complex64::new(2.0 * PI * k as f64 / (E * prob.z), 0.0);
    let nu_tilde = solve_nu_log_nu(LambertQuery::new(zeta)?)?;
    let lambda0 =
        (prob.b * E * prob.z * nu_tilde - Complex64::new(0.0, prob.b * prob.j as f64)) / 2.0;
    Ok(SeedResult {
        lambda0,
        nu_tilde,
        zeta,
    })
}

/// Seed for the k-th funnel-cone resonance: `πak - i(ja/2) log k`.
pub fn seed_funnel(k: u32, prob: &ModeProblem) -> Result<Complex64> {
    if prob.kind != ProblemKind::FunnelCone {
        return Err(Error::InvalidParameter(
            "seed_funnel requires a funnel-cone problem",
        ));
    }
    if k < 10 {
        return Err(Error::InvalidParameter("seed_funnel requires k >= 10"));
    }
    let kf = k as f64;
    Ok(Complex64::new(
        PI * prob.a * kf,
        -(prob.j as f64) * prob.a / 2.0 * kf.ln(),
    ))
}

/// Leading-order law for cusp-cone resonances:
/// `Re λ_k = πbk/log k`, `Im λ_k = -bj/2`.
pub fn predicted_cusp(k: u32, prob: &ModeProblem) -> Result<(f64, f64)> {
    if k < 3 {
        return Err(Error::InvalidParameter(
            "predicted_cusp requires k >= 3 (log k > 1)",
        ));
    }
    let kf = k as f64;
    Ok((PI * prob.b * kf / kf.ln(), -prob.b * prob.j as f64 / 2.0))
}

/// Number of resonances with `Re λ_k ≤ λ`; the list is expected sorted by
/// real part.
pub fn weyl_count(resonances: &[Resonance], lambda: f64) -> usize {
    resonances.iter().filter(|r| r.lambda.re <= lambda).count()
}

/// The counting-function model `λ log λ / (πb)`, for `λ > e`, `b > 0`.
pub fn weyl_model(lambda: f64, b: f64) -> f64 {
    lambda * lambda.ln() / (PI * b)
}

/// Phase-space volume comparison term:
/// `(1/π) ∫₀^{r*} √(λ² - m² e^{2br}) dr` with `r* = log(λ/m)/b`.
///
/// Adaptive Simpson quadrature to relative 1e-8; the integrable square-root
/// vanishing at `r*` just costs a few extra bisection levels.
pub fn phase_volume(lambda: f64, m: f64, b: f64) -> Result<f64> {
    if !(lambda > 0.0 && m > 0.0 && b > 0.0) {
        return Err(Error::InvalidParameter(
            "phase_volume requires positive lambda, m, b",
        ));
    }
    if lambda <= m {
        return Err(Error::InvalidParameter(
            "phase_volume requires lambda > m (nonempty region)",
        ));
    }
    let r_star = (lambda / m).ln() / b;
    let f = |r: f64| {
        (lambda * lambda - m * m * (2.0 * b * r).exp())
            .max(0.0)
            .sqrt()
    };
    // coarse scale estimate for the absolute tolerance
    let n = 128;
    let mut coarse = 0.0;
    for i in 0..n {
        coarse += f((i as f64 + 0.5) * r_star / n as f64);
    }
    coarse *= r_star / n as f64;
    let tol = 1e-8 * coarse.max(f64::MIN_POSITIVE);
    let fa = f(0.0);
    let fb = 0.0;
    let mid = r_star / 2.0;
    let fm = f(mid);
    let whole = r_star / 6.0 * (fa + 4.0 * fm + fb);
    let integral = simpson_rec(&f, 0.0, fa, r_star, fb, mid, fm, whole, tol, 60);
    Ok(integral / PI)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    mid: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let lm = (a + mid) / 2.0;
    let rm = (mid + b) / 2.0;
    let fl = f(lm);
    let fr = f(rm);
    let left = (mid - a) / 6.0 * (fa + 4.0 * fl + fm);
    let right = (b - mid) / 6.0 * (fm + 4.0 * fr + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, fa, mid, fm, lm, fl, left, tol / 2.0, depth - 1)
        + simpson_rec(f, mid, fm, b, fb, rm, fr, right, tol / 2.0, depth - 1)
}
