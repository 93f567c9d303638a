//! The kernel profile S_t(l) = ∫₀ᵗ ½ s^{-N-1}(s² - l²) U(s-l) ds produced by
//! integrating the monotonicity formula, with its closed form
//!
//!   S_t(l) = l^{2-N}/(N(N-2)) + l² t^{-N}/(2N) - t^{2-N}/(2(N-2)),  0 < l < t,
//!
//! and 0 for l ≥ t.

use crate::quad::adaptive_simpson;

/// Closed form of the profile.
pub fn s_profile(t: f64, l: f64, n: u32) -> f64 {
    if l >= t {
        return 0.0;
    }
    let nf = n as f64;
    l.powf(2.0 - nf) / (nf * (nf - 2.0)) + l * l * t.powf(-nf) / (2.0 * nf)
        - t.powf(2.0 - nf) / (2.0 * (nf - 2.0))
}

/// Independent oracle: direct quadrature of the defining integral.
pub fn s_profile_quadrature(t: f64, l: f64, n: u32) -> f64 {
    if l >= t {
        return 0.0;
    }
    let nf = n as f64;
    adaptive_simpson(
        &|s: f64| 0.5 * s.powf(-nf - 1.0) * (s * s - l * l),
        l,
        t,
        1e-13 * s_profile(t, l, n).abs().max(1e-6),
    )
}
