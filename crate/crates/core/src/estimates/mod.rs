//! Explicit a priori estimates with assembled constants, each evaluated
//! against oracle or grid solutions and reported with its slack.

pub mod constants;
pub mod gronwall;
pub mod sprofile;
pub mod jets;
pub mod moser;
pub mod theorem1;
pub mod global;
pub mod haarala;
pub mod excess;
pub mod riesz;

pub use constants::{c_ball, mono_constants, morrey_constant, moser_sup_constant, sobolev_constant, DerivedConstants};
pub use excess::nu_excess_check;
pub use global::{global_gradient_bound, p_poly, GlobalNorms};
pub use gronwall::{gronwall_bound, gronwall_saturate, GronwallParams};
pub use haarala::haarala_check;
pub use jets::{jet_identity_residual, jet_inequality_slack};
pub use moser::{moser_series, MoserSeries};
pub use riesz::{ball_mass, riesz_potential};
pub use sprofile::{s_profile, s_profile_quadrature};
pub use theorem1::{gronwall_tail_integrals, theorem1_gap};
