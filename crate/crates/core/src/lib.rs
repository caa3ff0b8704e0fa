//! Parameterized binomial series transform and the special-function
//! representations built on it.
//!
//! - [`exactmath`]: arbitrary-precision reals, exact rationals and binomials.
//! - [`transform`]: the series engine for any [`transform::CoefficientSource`].
//! - [`specialfn`]: zeta, Lerch, polylog, digamma, log-gamma, Euler's constant,
//!   elliptic integrals and related constants.
//! - [`oracles`]: independent reference implementations used for checking.
//! - [`studies`]: mu-sweeps, error curves and optimal-mu search.
//! - [`verify`]: the built-in self-check suite.

pub mod error;
pub mod exactmath;
pub mod oracles;
pub mod par;
pub mod specialfn;
pub mod studies;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::{PrecisionPolicy, Real};
pub use transform::{EvaluationReport, MuValidity, StoppingRule};
