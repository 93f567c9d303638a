//! Numerical laboratory for the Born-Infeld electrostatic equation
//!
//!   -div(∇u / √(1 - |∇u|²)) = ρ   in ℝᴺ,   u(x) → 0 as |x| → ∞,
//!
//! the prescribed mean curvature equation for entire spacelike graphs in
//! Lorentz-Minkowski space. The crate provides
//!
//! * exact (quadrature-limited) radial solutions used as ground-truth oracles,
//! * a constrained convex minimizer of the Born-Infeld energy on Cartesian grids,
//! * the differential geometry of spacelike graphs (Gauss map, second
//!   fundamental form, Lorentz balls, coarea and monotonicity identities),
//! * explicit a priori estimates (Gronwall variants, Moser sup bounds, excess
//!   bounds, Riesz potential bounds, global gradient certificates) with every
//!   constant assembled in closed form and validated numerically,
//! * a mollification pipeline reproducing the regularity bootstrap at desk scale.
//!
//! All randomized checks are seeded and deterministic; reports are reproducible
//! byte for byte from their instance descriptors.

pub mod error;
pub mod tol;
pub mod quad;
pub mod params;
pub mod fields;
pub mod radial;
pub mod geometry;
pub mod estimates;
pub mod solver;
pub mod pipeline;
pub mod report;

pub use error::{Error, Result};
pub use params::ParamSet;
