use core::fmt;

use num_complex::Complex64;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors reported by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument within tolerance of a pole of the gamma function.
    GammaPole {
        /// The offending argument.
        z: Complex64,
    },
    /// `solve_nu_log_nu` called outside its domain (`Re ζ > 0`, `|ζ| ≥ e`).
    LambertDomain {
        /// The rejected right-hand side.
        zeta: Complex64,
    },
    /// An iteration exhausted its step budget.
    NoConvergence {
        /// Iterations performed.
        iterations: u32,
        /// Last iterate.
        last: Complex64,
    },
    /// A Newton iterate left the trust disk around its seed.
    Diverged {
        /// Last iterate.
        last: Complex64,
        /// Distance from the seed when the iteration was abandoned.
        distance: f64,
    },
    /// A power series failed to converge within the term cap.
    SeriesTruncation {
        /// Terms summed before giving up.
        terms: u32,
    },
    /// A Pochhammer factor `(ν+1)_k` or `(1-ν)_k` vanished within tolerance.
    PochhammerPole {
        /// The order.
        nu: Complex64,
        /// Index of the vanishing factor.
        k: u32,
    },
    /// Quotient denominator within tolerance of zero.
    NearZeroDenominator {
        /// Which quotient.
        context: &'static str,
    },
    /// Hankel asymptotics outside their validity region.
    HankelDomain {
        /// `|x|` of the rejected argument.
        modulus: f64,
        /// Continued argument of the rejected point.
        arg: f64,
    },
    /// Optimal truncation of the Hankel series could not reach the accuracy floor.
    HankelAccuracy {
        /// Magnitude of the smallest term.
        smallest_term: f64,
    },
    /// λ within tolerance of a branch point ±b/2 of ν(λ).
    BranchPoint {
        /// The offending spectral parameter.
        lambda: Complex64,
    },
    /// Continued argument outside the covering-space domain of the residual.
    BranchDomain {
        /// Continued argument in radians.
        arg: f64,
    },
    /// A polished root landed too far from its seed to trust the index.
    RootJump {
        /// Where the iteration converged.
        lambda: Complex64,
        /// The seed it started from.
        seed: Complex64,
        /// Distance limit that was exceeded.
        limit: f64,
    },
    /// Two indices converged to the same root.
    DuplicateRoot {
        /// Lower of the two indices.
        k_lo: u32,
        /// Higher of the two indices.
        k_hi: u32,
    },
    /// Enumerated real parts failed to increase with the index.
    NonMonotonic {
        /// Index at which the ordering broke.
        k: u32,
    },
    /// An integration step drifted a conserved quantity beyond its bound.
    StepError {
        /// Observed single-step drift.
        drift: f64,
    },
    /// Invalid parameter combination.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GammaPole { z } => write!(f, "gamma pole proximity at z = {z}"),
            Error::LambertDomain { zeta } => {
                write!(
                    f,
                    "nu log nu = zeta requires Re zeta > 0 and |zeta| >= e, got {zeta}"
                )
            }
            Error::NoConvergence { iterations, last } => {
                write!(
                    f,
                    "no convergence after {iterations} iterations (last iterate {last})"
                )
            }
            Error::Diverged { last, distance } => {
                write!(
                    f,
                    "iteration left the trust disk (distance {distance:.3e}, last iterate {last})"
                )
            }
            Error::SeriesTruncation { terms } => {
                write!(f, "series did not converge within {terms} terms")
            }
            Error::PochhammerPole { nu, k } => {
                write!(f, "Pochhammer factor vanished at k = {k} for order {nu}")
            }
            Error::NearZeroDenominator { context } => {
                write!(f, "denominator of {context} within tolerance of zero")
            }
            Error::HankelDomain { modulus, arg } => {
                write!(f, "Hankel asymptotics need |x| >= 10 and arg in (-2pi, pi), got |x| = {modulus:.3e}, arg = {arg:.6}")
            }
            Error::HankelAccuracy { smallest_term } => {
                write!(f, "Hankel series floor {smallest_term:.3e} exceeds 1e-8")
            }
            Error::BranchPoint { lambda } => {
                write!(
                    f,
                    "lambda = {lambda} too close to a branch point of nu(lambda)"
                )
            }
            Error::BranchDomain { arg } => {
                write!(
                    f,
                    "continued argument {arg:.6} outside the covering-space domain"
                )
            }
            Error::RootJump {
                lambda,
                seed,
                limit,
            } => {
                write!(
                    f,
                    "root {lambda} is farther than {limit:.3e} from seed {seed}; index untrusted"
                )
            }
            Error::DuplicateRoot { k_lo, k_hi } => {
                write!(f, "indices {k_lo} and {k_hi} converged to the same root")
            }
            Error::NonMonotonic { k } => {
                write!(f, "Re lambda failed to increase at index {k}")
            }
            Error::StepError { drift } => {
                write!(
                    f,
                    "single-step invariant drift {drift:.3e} exceeds 1e-10; reduce dt"
                )
            }
            Error::InvalidParameter(msg) => write!(f, "{msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
