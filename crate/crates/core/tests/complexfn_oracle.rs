// reference literals carry all 17 significant digits of the f64 values
#![allow(clippy::excessive_precision)]

//! Gamma and Lambert machinery against reference values computed with
//! mpmath at 50 significant digits (`tools/reference_values.py`), plus the
//! functional-equation property checks.

use core::f64::consts::{E, PI};

use cuspres_core::complexfn::{
    gamma_ratio_log, log_gamma, solve_nu_log_nu, GammaRatio, LambertQuery,
};
use cuspres_core::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn assert_close(got: Complex64, want: Complex64, rel: f64, what: &str) {
    let err = (got - want).norm();
    assert!(
        err <= rel * (1.0 + want.norm()),
        "{what}: got {got}, want {want}, err {err:.3e}"
    );
}

// mpmath.loggamma, the branch continuous on the right half-plane
const LOG_GAMMA_REFS: &[(f64, f64, f64, f64)] = &[
    (0.5, 3.0, -3.7934504504362232, 0.30981927108643917),
    (42.0, 0.5, 114.03119995182683, 1.8628709032659092),
    (0.6, 700.0, -1097.9833821978819, 3885.9133665440210),
    (0.5, -1000.0, -1569.8773882616919, -5907.7553206488061),
    (1.5, -300.0, -464.61617564172115, -1412.7040109475107),
    (2.0, -3.0, -2.0928517530927333, -2.3023965434668676),
    (0.001, 0.9, -0.44033150431156337, -1.8757337297188651),
];

#[test]
fn log_gamma_matches_reference_branch() {
    for &(zr, zi, wr, wi) in LOG_GAMMA_REFS {
        let got = log_gamma(c(zr, zi)).unwrap();
        assert_close(got, c(wr, wi), 1e-12, "loggamma");
    }
}

// mpmath.gamma on the left half-plane: only exp(log_gamma) is pinned there
const GAMMA_EXP_REFS: &[(f64, f64, f64, f64)] = &[
    (-2.5, 4.0, -2.8327740563089983e-5, 5.0181950089228031e-5),
    (-0.3, -2.0, -0.026018281593738418, 0.055629266939332955),
    (-7.2, 1.5, -5.5439723604629536e-6, -6.6119929395525957e-6),
];

#[test]
fn log_gamma_exponentiates_correctly_on_left_half_plane() {
    for &(zr, zi, wr, wi) in GAMMA_EXP_REFS {
        let got = log_gamma(c(zr, zi)).unwrap().exp();
        assert_close(got, c(wr, wi), 1e-11, "exp(loggamma)");
    }
}

#[test]
fn gamma_ratio_matches_product_reference() {
    // Γ(2-3i)/Γ(-2+3i) from mpmath, |ratio| = 108.16653826391968
    match gamma_ratio_log(c(2.0, -3.0)).unwrap() {
        GammaRatio::Log(lg) => {
            let got = lg.exp();
            assert_close(
                got,
                c(-69.317985499986158, 83.036238391582435),
                1e-10,
                "ratio",
            );
            assert!((got.norm() - 108.16653826391968).abs() < 1e-8);
        }
        GammaRatio::Zero => panic!("unexpected zero"),
    }
}

#[test]
fn gamma_recurrence_on_random_strip() {
    // log Γ(z+1) - log Γ(z) = log z (mod 2πi), relative 1e-10, on 100
    // pseudorandom points with 0.5 ≤ Re z ≤ 50, |Im z| ≤ 500; log-space
    // comparison avoids exp under/overflow at large |Im z|
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut unit = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..100 {
        let z = c(0.5 + 49.5 * unit(), 500.0 * (2.0 * unit() - 1.0));
        let lhs = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap();
        let mut d = lhs - z.ln();
        d.im -= 2.0 * PI * (d.im / (2.0 * PI)).round();
        assert!(d.norm() < 1e-10, "recurrence defect {d:e} at z = {z}");
    }
}

#[test]
fn gamma_reflection_identity() {
    // Γ(z)Γ(1-z) = π/sin(πz), relative 1e-9, away from poles
    let mut state = 0x243f6a8885a308d3u64;
    let mut unit = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut checked = 0;
    while checked < 100 {
        let z = c(10.0 * unit() - 5.0, 6.0 * unit() - 3.0);
        if (z.re - z.re.round()).abs() < 0.05 && z.im.abs() < 0.05 {
            continue; // too close to a pole of Γ or of 1/sin
        }
        let lhs = log_gamma(z).unwrap().exp() * log_gamma(c(1.0 - z.re, -z.im)).unwrap().exp();
        let rhs = PI / (PI * z).sin();
        assert_close(lhs, rhs, 1e-9, "reflection");
        checked += 1;
    }
}

const LAMBERT_REFS: &[(f64, f64, f64, f64)] = &[
    (231.14546995818434, 0.0, 57.137096157737052, 0.0), // 200π/e
    (10.0, 0.0, 5.7289255653869415, 0.0),
    (1e6, 0.0, 87847.539577759772, 0.0),
    (50.0, 30.0, 17.889140638452631, 7.6662639424735673),
];

#[test]
fn lambert_matches_reference() {
    for &(zr, zi, wr, wi) in LAMBERT_REFS {
        let nu = solve_nu_log_nu(LambertQuery::new(c(zr, zi)).unwrap()).unwrap();
        assert_close(nu, c(wr, wi), 1e-12, "nu_tilde");
    }
}

#[test]
fn lambert_real_axis_monotone() {
    let mut last = 0.0;
    for p in 1..=6 {
        let zeta = 10f64.powi(p);
        let nu = solve_nu_log_nu(LambertQuery::new(c(zeta, 0.0)).unwrap()).unwrap();
        assert_eq!(nu.im, 0.0, "real ζ must give real ν̃");
        assert!(nu.re > last, "ν̃ must increase along the real axis");
        last = nu.re;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lambert_roundtrip(re in E..1e6f64, t in -1.0..1.0f64) {
        // ζ in the sector Re ζ ∈ [e, 1e6], |Im ζ| ≤ Re ζ
        let zeta = c(re, t * re);
        let nu = solve_nu_log_nu(LambertQuery::new(zeta).unwrap()).unwrap();
        let back = nu * nu.ln();
        prop_assert!((back - zeta).norm() <= 1e-12 * zeta.norm(),
            "roundtrip defect {:e}", (back - zeta).norm() / zeta.norm());
        prop_assert!(nu.re > 1.0);
    }

    #[test]
    fn branched_arg_roundtrip(re in -100.0..100.0f64, im in -100.0..100.0f64) {
        prop_assume!(re.abs() + im.abs() > 1e-6);
        let w = c(re, im);
        let ba = cuspres_core::complexfn::BranchedArg::from_complex(w);
        prop_assert!((ba.to_complex() - w).norm() <= 1e-13 * w.norm());
    }
}
