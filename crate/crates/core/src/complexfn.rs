//! Complex-valued scalar building blocks: a branch of `log Γ`, the gamma
//! ratio `Γ(ν)/Γ(-ν)` in log form, the solver for `ν̃ log ν̃ = ζ`, and a
//! representation of complex numbers with an unreduced argument.

use core::f64::consts::{E, LN_2, PI};

use num_complex::Complex64;
// inherent f64 methods cover the std build; the trait carries the libm build
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Tolerance for proximity to nonpositive-integer gamma poles.
pub const POLE_TOL: f64 = 1e-8;

/// A point on the universal cover of `ℂ ∖ {0}`: log-modulus plus an
/// argument that is *not* reduced to `(-π, π]`.
///
/// Multiplication and division act additively on both fields, so analytic
/// continuation across the cut of the principal branch is just arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedArg {
    /// Natural log of the modulus.
    pub modulus_log: f64,
    /// Argument in radians, possibly outside `(-π, π]`.
    pub arg: f64,
}

impl BranchedArg {
    /// Wrap a plain nonzero complex number with its principal argument.
    pub fn from_complex(w: Complex64) -> Self {
        BranchedArg {
            modulus_log: w.norm().ln(),
            arg: w.arg(),
        }
    }

    /// Build directly from log-modulus and unreduced argument.
    pub fn from_parts(modulus_log: f64, arg: f64) -> Self {
        BranchedArg { modulus_log, arg }
    }

    /// Wrap `w` on the sheet of the cover closest to `anchor_arg`.
    ///
    /// The principal argument of `w` is shifted by the multiple of 2π that
    /// lands nearest the anchor; useful for finite-difference probes around
    /// a continued base point.
    pub fn near_sheet(w: Complex64, anchor_arg: f64) -> Self {
        let principal = w.arg();
        let winding = ((anchor_arg - principal) / (2.0 * PI)).round();
        BranchedArg {
            modulus_log: w.norm().ln(),
            arg: principal + 2.0 * PI * winding,
        }
    }

    /// The plain complex value `exp(modulus_log) · e^{i·arg}`.
    pub fn to_complex(&self) -> Complex64 {
        let (s, c) = self.arg.sin_cos();
        let m = self.modulus_log.exp();
        Complex64::new(m * c, m * s)
    }

    /// Modulus `|w|`.
    pub fn modulus(&self) -> f64 {
        self.modulus_log.exp()
    }

    /// Product on the cover (arguments add).
    pub fn mul(&self, other: &BranchedArg) -> Self {
        BranchedArg {
            modulus_log: self.modulus_log + other.modulus_log,
            arg: self.arg + other.arg,
        }
    }

    /// Quotient on the cover (arguments subtract).
    pub fn div(&self, other: &BranchedArg) -> Self {
        BranchedArg {
            modulus_log: self.modulus_log - other.modulus_log,
            arg: self.arg - other.arg,
        }
    }

    /// `w^ν` as a plain complex value, `exp(ν (log|w| + i·arg))`.
    pub fn powc(&self, nu: Complex64) -> Complex64 {
        (nu * Complex64::new(self.modulus_log, self.arg)).exp()
    }
}

/// Validated right-hand side for [`solve_nu_log_nu`]: `Re ζ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambertQuery {
    zeta: Complex64,
}

impl LambertQuery {
    /// Reject ζ outside the open right half-plane.
    pub fn new(zeta: Complex64) -> Result<Self> {
        if zeta.re > 0.0 {
            Ok(LambertQuery { zeta })
        } else {
            Err(Error::LambertDomain { zeta })
        }
    }

    /// The wrapped right-hand side.
    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }
}

// Stirling correction coefficients B_{2j} / (2j (2j-1)).
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

fn near_gamma_pole(z: Complex64) -> bool {
    let n = z.re.round();
    n <= 0.0 && (z - Complex64::new(n, 0.0)).norm() < POLE_TOL
}

/// Stirling series with downward recurrence, valid for `Re z >= 0.5`.
fn log_gamma_right(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    // push |w| past 10 so eight Bernoulli terms reach ~1e-14
    while w.norm() < 10.0 {
        shift += w.ln();
        w += 1.0;
    }
    let mut corr = Complex64::new(0.0, 0.0);
    let w2 = w * w;
    let mut p = w;
    for c in STIRLING {
        corr += c / p;
        p *= w2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_TWO_PI + corr - shift
}

/// A branch of `log sin(πz)` that never forms `exp(π |Im z|)`.
///
/// Consistent with the reflection formula in [`log_gamma`]; the branch is
/// chosen so that the reflected `log Γ` stays continuous on the strip
/// `0 < Re z < 1/2` and exponentiates to `Γ` everywhere.
fn log_sin_pi(z: Complex64) -> Complex64 {
    let i_pi_z = Complex64::new(-PI * z.im, PI * z.re);
    if z.im > 0.0 {
        // sin πz = (i/2) e^{-iπz} (1 - e^{2iπz}),  |e^{2iπz}| < 1
        let small = (2.0 * i_pi_z).exp();
        Complex64::new(-LN_2, PI / 2.0) - i_pi_z + (Complex64::new(1.0, 0.0) - small).ln()
    } else if z.im < 0.0 {
        // sin πz = (1/(2i)) e^{iπz} (1 - e^{-2iπz}),  |e^{-2iπz}| < 1
        let small = (-2.0 * i_pi_z).exp();
        i_pi_z - Complex64::new(LN_2, PI / 2.0) + (Complex64::new(1.0, 0.0) - small).ln()
    } else {
        Complex64::new((PI * z.re).sin(), 0.0).ln()
    }
}

/// A branch of `log Γ(z)`, continuous on the right half-plane, with
/// `exp(log_gamma(z)) = Γ(z)` wherever Γ is finite.
///
/// Stirling with ≥ 8 correction terms after shifting `|z|` past 10; the
/// reflection formula (with an overflow-free `log sin`) covers
/// `Re z < 1/2`. Accuracy is ≥ 12 significant digits for `|z| ≤ 1e3`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if near_gamma_pole(z) {
        return Err(Error::GammaPole { z });
    }
    if z.re < 0.5 {
        // log Γ(z) = log π - log sin(πz) - log Γ(1-z)
        let one_minus = Complex64::new(1.0 - z.re, -z.im);
        Ok(Complex64::new(PI.ln(), 0.0) - log_sin_pi(z) - log_gamma_right(one_minus))
    } else {
        Ok(log_gamma_right(z))
    }
}

/// Outcome of [`gamma_ratio_log`]: either `log(Γ(ν)/Γ(-ν))` or the signal
/// that the ratio vanishes because `Γ(-ν)` sits at a pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaRatio {
    /// `log Γ(ν) - log Γ(-ν)`.
    Log(Complex64),
    /// `Γ(-ν)` is at a pole, so the ratio is exactly zero.
    Zero,
}

/// `log(Γ(ν)/Γ(-ν))` formed entirely in log space, so `|Im ν|` up to ~1e3
/// causes no overflow.
///
/// When `-ν` is within tolerance of a gamma pole the ratio is zero and
/// [`GammaRatio::Zero`] is returned instead of a log; a pole of `Γ(ν)`
/// itself is an error.
pub fn gamma_ratio_log(nu: Complex64) -> Result<GammaRatio> {
    if near_gamma_pole(nu) {
        return Err(Error::GammaPole { z: nu });
    }
    if near_gamma_pole(-nu) {
        return Ok(GammaRatio::Zero);
    }
    Ok(GammaRatio::Log(log_gamma(nu)? - log_gamma(-nu)?))
}

const LAMBERT_MAX_ITER: u32 = 50;

/// Solve `ν̃ log ν̃ = ζ` for the unique solution with `Re ν̃ > 1`.
///
/// Writing `ν̃ = e^w` turns the equation into `w e^w = ζ`, solved on the
/// principal Lambert-W branch by Halley iteration from the seed
/// `log ζ - log log ζ`. Requires `|ζ| ≥ e` (below that no caller needs the
/// unique-solution regime).
pub fn solve_nu_log_nu(q: LambertQuery) -> Result<Complex64> {
    let zeta = q.zeta();
    if zeta.norm() < E {
        return Err(Error::LambertDomain { zeta });
    }
    let log_zeta = zeta.ln();
    let mut w = log_zeta - log_zeta.ln();
    let mut converged = false;
    for _ in 0..LAMBERT_MAX_ITER {
        let ew = w.exp();
        let f = w * ew - zeta;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.norm() <= 1e-15 * (1.0 + w.norm()) {
            converged = true;
            break;
        }
    }
    let nu = zeta / w;
    let resid = (nu * nu.ln() - zeta).norm();
    if !converged || resid > 1e-12 * zeta.norm() {
        return Err(Error::NoConvergence {
            iterations: LAMBERT_MAX_ITER,
            last: nu,
        });
    }
    Ok(nu)
}
