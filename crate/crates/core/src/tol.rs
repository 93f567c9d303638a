//! Central tolerance policy.
//!
//! Three tiers, matching what each class of check can actually deliver in f64:
//! algebraic identities sit at roundoff, quadrature-vs-closed-form comparisons
//! at integrator accuracy, and solution-dependent inequalities at the accuracy
//! of the underlying solve.

/// Algebraic identities evaluated pointwise (two routes to the same number).
pub const IDENTITY_REL: f64 = 1e-10;

/// Tighter identity tier for plain inner products and normalizations.
pub const IDENTITY_TIGHT: f64 = 1e-14;

/// Exact-formula vs quadrature-oracle agreement.
pub const QUADRATURE_REL: f64 = 1e-8;

/// Solution-dependent inequality slack (absolute, unit-scale instances).
pub const ESTIMATE_ABS: f64 = 1e-6;

/// Default adaptive quadrature target.
pub const QUAD_TOL: f64 = 1e-11;

/// Rescaling round trips and other exact transforms.
pub const RESCALE_REL: f64 = 1e-12;
