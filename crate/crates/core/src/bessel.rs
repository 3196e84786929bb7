//! Logarithmic derivatives of Bessel functions in the two regimes the
//! resonance conditions combine: small fixed argument with large complex
//! order (`K'/K`, `I'/I`) and large complex argument with fixed real order
//! (`H⁽²⁾'/H⁽²⁾`, `J'/J`).
//!
//! Only quotients are ever formed. The small-argument side is assembled from
//! the four remainder series `1+R₁ … 1+R₄` together with
//! `g(ν) = (z/2)^{-2ν} Γ(ν)/Γ(-ν)` evaluated in log space, so `|Im ν| ~ 1e3`
//! never overflows. The large-argument side uses the standard Hankel
//! asymptotic series truncated at the smallest term.

use core::f64::consts::PI;

use num_complex::Complex64;
// inherent f64 methods cover the std build; the trait carries the libm build
#[allow(unused_imports)]
use num_traits::Float;

use crate::complexfn::{gamma_ratio_log, BranchedArg, GammaRatio, POLE_TOL};
use crate::{Error, Result};

const SERIES_CAP: u32 = 300;
const HANKEL_CAP: u32 = 120;

/// The four series quotients `1+R₁ … 1+R₄` at a given `(ν, z)`.
///
/// `I_ν(z) = (z/2)^ν / Γ(1+ν) · (1+R₁)`, `I'_ν(z) = (ν/z)(z/2)^ν / Γ(1+ν) ·
/// (1+R₃)`, and the `-ν` counterparts define `1+R₂`, `1+R₄` (with an overall
/// `-ν/z` prefactor for `I'_{-ν}`). Each field tends to 1 as `z → 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselRemainders {
    /// `1 + R₁ = Σ_k (z²/4)^k / (k! (ν+1)_k)`.
    pub one_plus_r1: Complex64,
    /// `1 + R₂ = Σ_k (z²/4)^k / (k! (1-ν)_k)`.
    pub one_plus_r2: Complex64,
    /// `1 + R₃`: as `1+R₁` with an extra factor `(ν+2k)/ν` per term.
    pub one_plus_r3: Complex64,
    /// `1 + R₄`: as `1+R₂` with an extra factor `(ν-2k)/ν` per term.
    pub one_plus_r4: Complex64,
    /// Terms summed before the truncation rule fired.
    pub terms_used: u32,
    /// Relative magnitude of the last term taken, an error proxy.
    pub truncation_estimate: f64,
}

/// Sum the four remainder series at complex order `ν` and real `z ≠ 0`.
///
/// The series depend on `z` only through `z²/4`, so negative `z` is accepted.
/// Terms are generated by the ratio recurrence `t_k = t_{k-1} · q / (k(ν+k))`
/// (and its `-ν` analogue), so no gamma values are ever formed. Truncation:
/// current term below `1e-16` of the partial sum, with a 300-term cap.
pub fn remainders(nu: Complex64, z: f64) -> Result<BesselRemainders> {
    if z == 0.0 || z.abs() > 20.0 {
        return Err(Error::InvalidParameter("remainders requires 0 < |z| <= 20"));
    }
    if nu.norm() < POLE_TOL {
        return Err(Error::PochhammerPole { nu, k: 0 });
    }
    let q = z * z / 4.0;
    let mut t1 = Complex64::new(1.0, 0.0);
    let mut t2 = Complex64::new(1.0, 0.0);
    let mut s1 = t1;
    let mut s2 = t2;
    let mut s3 = t1;
    let mut s4 = t2;
    let mut terms = 0u32;
    for k in 1..=SERIES_CAP {
        let kf = k as f64;
        let d1 = nu + kf;
        let d2 = -nu + kf;
        if d1.norm() < POLE_TOL || d2.norm() < POLE_TOL {
            return Err(Error::PochhammerPole { nu, k });
        }
        t1 *= q / (kf * d1);
        t2 *= q / (kf * d2);
        s1 += t1;
        s2 += t2;
        let two_k = 2.0 * kf;
        s3 += t1 * (nu + two_k) / nu;
        s4 += t2 * (nu - two_k) / nu;
        terms = k;
        let m1 = t1.norm();
        let m2 = t2.norm();
        if m1 <= 1e-16 * s1.norm() && m2 <= 1e-16 * s2.norm() {
            return Ok(BesselRemainders {
                one_plus_r1: s1,
                one_plus_r2: s2,
                one_plus_r3: s3,
                one_plus_r4: s4,
                terms_used: terms,
                truncation_estimate: (m1 / s1.norm()).max(m2 / s2.norm()),
            });
        }
    }
    Err(Error::SeriesTruncation { terms })
}

/// The first-kind pair `1+R₁`, `1+R₃` on its own.
///
/// Only `(ν+1)_k` appears in these two series, so integer orders `ν ≥ 1`
/// are fine here even though they are poles of the second-kind pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstKindRemainders {
    /// `1 + R₁`.
    pub one_plus_r1: Complex64,
    /// `1 + R₃`.
    pub one_plus_r3: Complex64,
    /// Terms summed.
    pub terms_used: u32,
    /// Relative magnitude of the last term taken.
    pub truncation_estimate: f64,
}

/// Sum just `1+R₁` and `1+R₃` (the `I_ν` / `I'_ν` side).
pub fn remainders_first_kind(nu: Complex64, z: f64) -> Result<FirstKindRemainders> {
    if z == 0.0 || z.abs() > 20.0 {
        return Err(Error::InvalidParameter("remainders requires 0 < |z| <= 20"));
    }
    if nu.norm() < POLE_TOL {
        return Err(Error::PochhammerPole { nu, k: 0 });
    }
    let q = z * z / 4.0;
    let mut t1 = Complex64::new(1.0, 0.0);
    let mut s1 = t1;
    let mut s3 = t1;
    let mut terms = 0u32;
    for k in 1..=SERIES_CAP {
        let kf = k as f64;
        let d1 = nu + kf;
        if d1.norm() < POLE_TOL {
            return Err(Error::PochhammerPole { nu, k });
        }
        t1 *= q / (kf * d1);
        s1 += t1;
        s3 += t1 * (nu + 2.0 * kf) / nu;
        terms = k;
        let m1 = t1.norm();
        if m1 <= 1e-16 * s1.norm() {
            return Ok(FirstKindRemainders {
                one_plus_r1: s1,
                one_plus_r3: s3,
                terms_used: terms,
                truncation_estimate: m1 / s1.norm(),
            });
        }
    }
    Err(Error::SeriesTruncation { terms })
}

/// `g(ν) = (z/2)^{-2ν} Γ(ν)/Γ(-ν)`, evaluated as `exp(-2ν log(z/2) +
/// log Γ(ν) - log Γ(-ν))`; exactly 0 when `Γ(-ν)` sits at a pole.
pub fn g_of_nu(nu: Complex64, z: f64) -> Result<Complex64> {
    if z <= 0.0 {
        return Err(Error::InvalidParameter("g_of_nu requires z > 0"));
    }
    match gamma_ratio_log(nu)? {
        GammaRatio::Zero => Ok(Complex64::new(0.0, 0.0)),
        GammaRatio::Log(lg) => Ok((-2.0 * nu * (z / 2.0).ln() + lg).exp()),
    }
}

/// `K'_ν(z) / K_ν(z)` for real `z > 0` and complex order.
///
/// Exact identity in terms of the remainders and `g`:
/// `(ν/z) · (1+R₃ - g(1+R₄)) / (1+R₁ + g(1+R₂))`; stable for `|Im ν|` up
/// to ~1e3.
pub fn kquot(nu: Complex64, z: f64) -> Result<Complex64> {
    if z <= 0.0 {
        return Err(Error::InvalidParameter("kquot requires z > 0"));
    }
    let rem = remainders(nu, z)?;
    let g = g_of_nu(nu, z)?;
    let num = rem.one_plus_r3 - g * rem.one_plus_r4;
    let den = rem.one_plus_r1 + g * rem.one_plus_r2;
    let scale = rem.one_plus_r1.norm() + (g * rem.one_plus_r2).norm();
    if den.norm() < 1e-14 * scale {
        return Err(Error::NearZeroDenominator {
            context: "K quotient",
        });
    }
    Ok(nu / z * num / den)
}

/// `I'_ν(z) / I_ν(z) = (ν/z)(1+R₃)/(1+R₁)` for real `z ≠ 0`.
///
/// The remainders depend on `z²` only, so the quotient is odd in `z`; the
/// funnel geometry calls this with `z = m/b < 0`. Only the first-kind pair
/// is needed, so integer orders are accepted.
pub fn iquot(nu: Complex64, z: f64) -> Result<Complex64> {
    let rem = remainders_first_kind(nu, z)?;
    let den = rem.one_plus_r1;
    if den.norm() < 1e-14 {
        return Err(Error::NearZeroDenominator {
            context: "I quotient",
        });
    }
    Ok(nu / z * rem.one_plus_r3 / den)
}

/// Truncated Hankel asymptotic sums `P, Q, R, S` at order `n`, argument `x`.
///
/// `H⁽²⁾_n ~ √(2/πx) e^{-iχ}(P - iQ)` and `H⁽²⁾'_n ~ √(2/πx) e^{-iχ}(-iR - S)`
/// with `χ = x - (2n+1)π/4`; `J_n` and `J'_n` use the same four sums with
/// trigonometric weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelSeries {
    /// Even-index sum of the value series (`→ 1`).
    pub p: Complex64,
    /// Odd-index sum of the value series (leading term `(4n²-1)/(8x)`).
    pub q: Complex64,
    /// Even-index sum of the derivative series (`→ 1`).
    pub r: Complex64,
    /// Odd-index sum of the derivative series (leading term `(4n²+3)/(8x)`).
    pub s: Complex64,
    /// Index at which optimal truncation stopped.
    pub terms_used: u32,
    /// Magnitude of the smallest term, the standard error proxy.
    pub smallest_term: f64,
}

/// Sum the Hankel asymptotic series with optimal (smallest-term) truncation.
///
/// Coefficients come from the recurrences
/// `a_k = a_{k-1}(4n² - (2k-1)²)/(8k)` and `b_k = a_{k-1}(4n² + 4k² - 1)/(8k)`
/// rather than hand-copied tables. Requires `|x| ≥ 10`; errors if the
/// smallest term exceeds `1e-8`.
pub fn hankel_series(n: f64, x: Complex64) -> Result<HankelSeries> {
    let modulus = x.norm();
    if modulus < 10.0 {
        return Err(Error::HankelDomain {
            modulus,
            arg: x.arg(),
        });
    }
    let four_n2 = 4.0 * n * n;
    let inv_x = 1.0 / x;
    let mut a_prev = 1.0f64; // a_{k-1}
    let mut inv_pow = Complex64::new(1.0, 0.0); // x^{-k}
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    let mut r = Complex64::new(1.0, 0.0);
    let mut s = Complex64::new(0.0, 0.0);
    let mut last_m = f64::INFINITY;
    let mut terms = 0u32;
    for k in 1..=HANKEL_CAP {
        let kf = k as f64;
        let two_km1 = 2.0 * kf - 1.0;
        let a_k = a_prev * (four_n2 - two_km1 * two_km1) / (8.0 * kf);
        let b_k = a_prev * (four_n2 + 4.0 * kf * kf - 1.0) / (8.0 * kf);
        inv_pow *= inv_x;
        let u = a_k * inv_pow;
        let v = b_k * inv_pow;
        let m = u.norm().max(v.norm());
        if m >= last_m {
            break; // past the smallest term; stop without it
        }
        // signs follow (-i)^k: +P, +Q, -P, -Q for k mod 4 = 0,1,2,3
        match k % 4 {
            1 => {
                q += u;
                s += v;
            }
            2 => {
                p -= u;
                r -= v;
            }
            3 => {
                q -= u;
                s -= v;
            }
            _ => {
                p += u;
                r += v;
            }
        }
        last_m = m;
        terms = k;
        a_prev = a_k;
        if m < 1e-17 {
            break;
        }
    }
    let smallest_term = if last_m.is_finite() { last_m } else { 0.0 };
    if smallest_term > 1e-8 {
        return Err(Error::HankelAccuracy { smallest_term });
    }
    Ok(HankelSeries {
        p,
        q,
        r,
        s,
        terms_used: terms,
        smallest_term,
    })
}

/// Assemble `H⁽²⁾'_n/H⁽²⁾_n = (-iR - S)/(P - iQ)` from the four sums.
pub fn hankel_quotient(series: &HankelSeries) -> Result<Complex64> {
    let num = -Complex64::i() * series.r - series.s;
    let den = series.p - Complex64::i() * series.q;
    if den.norm() < 1e-14 * (series.p.norm() + series.q.norm()) {
        return Err(Error::NearZeroDenominator {
            context: "Hankel quotient",
        });
    }
    Ok(num / den)
}

/// `H⁽²⁾'_n(x)/H⁽²⁾_n(x)` on the covering space, for `arg x ∈ (-2π, π)`.
///
/// The quotient of the two asymptotic series is single-valued in the plain
/// complex value of `x`; the carried argument is consumed only to validate
/// that `x` stays on the sheets where the expansion holds.
pub fn hquot(n: f64, x: &BranchedArg) -> Result<Complex64> {
    if !(x.arg > -2.0 * PI && x.arg < PI) {
        return Err(Error::BranchDomain { arg: x.arg });
    }
    let series = hankel_series(n, x.to_complex())?;
    hankel_quotient(&series)
}

/// `J'_n(x)/J_n(x)` for `|x| ≥ 10` on the principal branch, `|Im x| ≤ 50`.
///
/// Evaluated in the overflow-safe form obtained by factoring `e^{iχ}`: with
/// `w = e^{-2iχ}`,
/// `J'/J = (iR(1-w) - S(1+w)) / (P(1+w) + iQ(1-w))`,
/// an exact algebraic rewrite of the sine/cosine weights, so nothing large
/// is exponentiated when `Im x < 0`.
pub fn jquot(n: f64, x: Complex64) -> Result<Complex64> {
    if x.im == 0.0 && x.re < 0.0 {
        return Err(Error::BranchDomain { arg: PI });
    }
    if x.im.abs() > 50.0 {
        return Err(Error::InvalidParameter("jquot requires |Im x| <= 50"));
    }
    let series = hankel_series(n, x)?;
    let chi = x - (2.0 * n + 1.0) * PI / 4.0;
    let w = (Complex64::new(0.0, -2.0) * chi).exp();
    let one_m = Complex64::new(1.0, 0.0) - w;
    let one_p = Complex64::new(1.0, 0.0) + w;
    let num = Complex64::i() * series.r * one_m - series.s * one_p;
    let den = series.p * one_p + Complex64::i() * series.q * one_m;
    let scale = (series.p.norm() + series.q.norm()) * (1.0 + w.norm());
    if den.norm() < 1e-14 * scale {
        return Err(Error::NearZeroDenominator {
            context: "J series denominator",
        });
    }
    Ok(num / den)
}
