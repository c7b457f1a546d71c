//! Special functions, quadrature, ODE integration and seeded random streams.

pub mod ode;
pub mod quad;
pub mod rng;
pub mod special;

pub use ode::{ode_solve, OdeOptions};
pub use quad::{gauss_legendre, integrate, integrate_with_breaks, ln_integrate, Domain, LnQuadResult, QuadResult, QuadratureSpec};
pub use rng::RandomStream;
pub use special::{
    airy_ai, airy_ai_integral_tail, airy_ai_prime, airy_pair, airy_log_derivative, ln_airy_ai, bessel_i, bessel_i_scaled,
    hermite_phi, ln_gamma,
};
