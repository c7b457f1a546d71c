//! Mean numbers of stationary points and minima of high-dimensional random
//! Gaussian landscapes.
//!
//! The crate combines three layers:
//!
//! * [`numerics`]: special functions (Hermite functions, Airy, modified
//!   Bessel), adaptive quadrature, an adaptive Runge-Kutta integrator and
//!   counter-based random streams.
//! * [`goe`] and [`tracy_widom`]: the Gaussian Orthogonal Ensemble (exact
//!   finite-N mean density, edge density, largest-eigenvalue statistics,
//!   Monte-Carlo functionals) and the GOE Tracy-Widom law via Painleve II.
//! * [`sphere`], [`parabolic`] and [`landscape`]: Kac-Rice counts for
//!   isotropic fields on the sphere (p-spin spherical model) and for the
//!   parabolically confined landscape, together with direct enumeration of
//!   stationary points of sampled p-spin Hamiltonians.

pub mod error;
pub mod goe;
pub mod landscape;
pub mod linalg;
pub mod numerics;
pub mod parabolic;
pub mod report;
pub mod sphere;
pub mod tracy_widom;

pub use error::{Error, Result};
pub use landscape::{CensusResult, PSpinInstance, StationaryPoint};
pub use goe::{DensityCurve, DensitySource, GoeEnsembleSpec, McEstimate, Provenance};
pub use numerics::rng::RandomStream;
pub use report::{CountReport, LogValue, Method, Regime};
pub use sphere::{IsotropicSphereSpec, PSpinSpec};
pub use parabolic::ParabolicSpec;
pub use tracy_widom::Tw1Evaluator;

