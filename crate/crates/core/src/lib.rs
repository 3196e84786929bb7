//! Numerical computation of scattering resonances for surfaces of revolution
//! built from a cone glued to a hyperbolic cusp (and the cone-plus-funnel
//! variant).
//!
//! On a fixed Fourier mode the resonances are the zeros of a transcendental
//! equation relating a modified-Bessel logarithmic derivative on the cusp (or
//! funnel) side to a Hankel (or Bessel-J) logarithmic derivative on the cone
//! side. This crate evaluates those quotients in numerically stable form for
//! large complex order / large complex argument, seeds each root from a
//! Lambert-W asymptotic formula, and polishes it with a safeguarded complex
//! Newton iteration. Companion modules verify the predicted asymptotic laws,
//! the Weyl counting function, and (by direct integration of the geodesic
//! flow) the nontrapping property of the glued metric.
//!
//! The crate is `no_std`-compatible (`default-features = false,
//! features = ["libm"]`); everything is pure computation over `f64` and
//! `Complex64`.
//!
//! | module | contents |
//! |--------|----------|
//! | [`complexfn`] | log-gamma, gamma ratios, the `ν log ν = ζ` solver, branch-tracked arguments |
//! | [`bessel`] | the four small-argument remainder series, `K'/K`, `I'/I`, `H⁽²⁾'/H⁽²⁾`, `J'/J` |
//! | [`asymptotics`] | spectral parameter ν(λ), resonance seeds, asymptotic laws, Weyl counting |
//! | [`resonance`] | residual functions, Newton polishing, sequence enumeration |
//! | [`geodesics`] | geodesic flow of the glued metric and the nontrapping scan |

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_docs)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("cuspres-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod asymptotics;
pub mod bessel;
pub mod complexfn;
mod error;
pub mod geodesics;
pub mod resonance;

pub use error::{Error, Result};
pub use num_complex::Complex64;
