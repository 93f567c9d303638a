//! Truncated Riesz potential controlling gradient oscillation,
//!
//!   I^ρ_{1-α}(x, r) = ∫₀^r [ ∫_{B_t(x)} |ρ| dξ / t^{N-(1-α)} ] dt/t
//!                   = ∫₀^r t^{-(N+α)} ∫_{B_t(x)} |ρ| dξ dt,
//!
//! together with its closed-form L^q envelope
//!
//!   I ≤ ω_N^{(q-1)/q} |ρ|_q ∫₀^r t^{-α-N/q} dt,
//!
//! finite exactly when α < 1 - N/q; larger α raises a divergence error.

use crate::error::{Error, Result};
use crate::params::{unit_ball_volume, unit_sphere_area};
use crate::quad::{adaptive_simpson, adaptive_simpson_rel};
use crate::radial::RadialDensity;

/// ∫₀^θ sin^k by the reduction I_k = (-sin^{k-1}θ cos θ + (k-1) I_{k-2})/k.
fn sin_power_integral(theta: f64, k: u32) -> f64 {
    match k {
        0 => theta,
        1 => 1.0 - theta.cos(),
        _ => {
            (-theta.sin().powi(k as i32 - 1) * theta.cos()
                + (k as f64 - 1.0) * sin_power_integral(theta, k - 2))
                / k as f64
        }
    }
}

/// Mass ∫_{B_t(x)} |ρ| dξ of a radial density over a ball centered at
/// distance `d` from the origin: 1D quadrature against the sphere-cap area.
pub fn ball_mass(rho: &RadialDensity, n: u32, d: f64, t: f64) -> f64 {
    let nf = n as f64;
    let sigma = unit_sphere_area(n);
    let r0 = rho.support_radius();
    if d == 0.0 {
        let cap = t.min(r0);
        if cap <= 0.0 {
            return 0.0;
        }
        return sigma
            * adaptive_simpson_rel(&|s: f64| rho.eval(s).abs() * s.powf(nf - 1.0), 0.0, cap, 1e-10);
    }
    // fraction of the sphere of radius s (centered at 0) inside B_t(x):
    // polar cap of aperture θ* with cos θ* = (s² + d² - t²)/(2sd); the cap
    // measure ∫₀^θ sin^{N-2} comes from the exact reduction recurrence
    let total_angle = sin_power_integral(std::f64::consts::PI, n - 2);
    let frac = move |s: f64| -> f64 {
        if s + d <= t {
            return 1.0;
        }
        if (s - d).abs() >= t {
            return 0.0;
        }
        let cos = ((s * s + d * d - t * t) / (2.0 * s * d)).clamp(-1.0, 1.0);
        sin_power_integral(cos.acos(), n - 2) / total_angle
    };
    let (lo, hi) = ((d - t).max(0.0), (d + t).min(r0));
    if hi <= lo {
        return 0.0;
    }
    sigma
        * adaptive_simpson_rel(
            &|s: f64| rho.eval(s).abs() * s.powf(nf - 1.0) * frac(s),
            lo,
            hi,
            1e-8,
        )
}

/// (value, closed-form bound). `d` is the distance of the base point from
/// the origin. Errors when α ≥ 1 - N/q.
pub fn riesz_potential(
    rho: &RadialDensity,
    n: u32,
    q: f64,
    d: f64,
    r: f64,
    alpha: f64,
) -> Result<(f64, f64)> {
    let nf = n as f64;
    let margin = 1.0 - nf / q - alpha;
    if margin <= 0.0 {
        return Err(Error::Divergence(format!(
            "alpha = {alpha} >= 1 - N/q = {}; envelope integral diverges",
            1.0 - nf / q
        )));
    }
    let rho_q = rho.lp_norm(q, n)?;
    let c12 = unit_ball_volume(n).powf((q - 1.0) / q);
    let bound = c12 * rho_q * r.powf(margin) / margin;

    // flatten the worst-case t^{-α-N/q} endpoint with t = τ^{1/margin};
    // mass-first evaluation keeps underflowed tails at exactly 0 instead of
    // producing 0 · ∞
    let p = 1.0 / margin;
    let value = adaptive_simpson(
        &|tau: f64| {
            let t = if tau > 0.0 { tau.powf(p) } else { 0.0 };
            if t <= 0.0 {
                return 0.0;
            }
            let mass = ball_mass(rho, n, d, t);
            if mass == 0.0 {
                return 0.0;
            }
            let weight = p * tau.powf(p - 1.0);
            if weight == 0.0 {
                return 0.0;
            }
            t.powf(-(nf + alpha)) * mass * weight
        },
        0.0,
        r.powf(margin),
        1e-7 * bound.max(1e-12),
    );
    Ok((value, bound))
}
