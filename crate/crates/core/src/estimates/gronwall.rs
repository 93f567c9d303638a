//! Gronwall variant with two singular weights: if ψ is continuous,
//! nonnegative and
//!
//!   ψ(t) ≤ C₀ + C₁ ∫₀ᵗ s^{1-β} ψ^{(q-2)/q} ds + C₂ ∫₀ᵗ s^{-β/2} ψ^{(q-1)/q} ds,
//!
//! then ψ(t) ≤ (C₀^{1/q} + C₀^{-1/q} C₁ t^{2-β}/(q(2-β)) + C₂ t^{1-β/2}/(q(1-β/2)))^q.
//!
//! The saturating ODE y' = C₁ t^{1-β}(C₀+y)^{(q-2)/q} + C₂ t^{-β/2}(C₀+y)^{(q-1)/q}
//! realizes the hypothesis with equality; the only slack in the bound is the
//! replacement (C₀+y)^{-1/q} ≤ C₀^{-1/q} in the C₁ term, so with C₁ = 0 the
//! bound is attained exactly.

use crate::error::{Error, Result};
use crate::quad::rk4_scalar;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GronwallParams {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub q: f64,
    pub beta: f64,
    pub t_max: f64,
}

impl GronwallParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.c0 > 0.0 && self.c1 >= 0.0 && self.c2 >= 0.0) {
            return Err(Error::InvalidParam("need C0 > 0, C1, C2 >= 0".into()));
        }
        if !(self.q > 2.0) {
            return Err(Error::InvalidParam(format!("need q > 2, got {}", self.q)));
        }
        if !(self.beta > 0.0 && self.beta < 2.0) {
            return Err(Error::InvalidParam(format!("need beta in (0,2), got {}", self.beta)));
        }
        if !(self.t_max > 0.0) {
            return Err(Error::InvalidParam("need T > 0".into()));
        }
        Ok(())
    }
}

/// Closed-form bound at time t.
pub fn gronwall_bound(p: &GronwallParams, t: f64) -> f64 {
    let GronwallParams { c0, c1, c2, q, beta, .. } = *p;
    (c0.powf(1.0 / q)
        + c0.powf(-1.0 / q) * c1 * t.powf(2.0 - beta) / (q * (2.0 - beta))
        + c2 * t.powf(1.0 - beta / 2.0) / (q * (1.0 - beta / 2.0)))
    .powf(q)
}

/// Integrate the saturating ODE and return (t, ψ(t)) samples on [0, T].
///
/// The singular weights are removed exactly by the substitutions
/// z = (C₀+y)^{1/q} and t = τ^{2/(2-β)}: in these variables
/// dz/dτ = (pC₁/q) τ / z + pC₂/q with p = 2/(2-β), which is smooth, so fixed
/// step RK4 integrates it to near machine accuracy from τ = 0.
pub fn gronwall_saturate(p: &GronwallParams, steps: usize) -> Result<Vec<(f64, f64)>> {
    p.validate()?;
    let GronwallParams { c0, c1, c2, q, beta, t_max } = *p;
    let pw = 2.0 / (2.0 - beta);
    let tau_max = t_max.powf(1.0 / pw);
    let rhs = move |tau: f64, z: f64| (pw * c1 / q) * tau / z + pw * c2 / q;
    let z_path = rk4_scalar(&rhs, 0.0, tau_max, c0.powf(1.0 / q), steps.max(64));
    Ok(z_path
        .into_iter()
        .map(|(tau, z)| (tau.powf(pw), z.powf(q)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(c1: f64, c2: f64) -> GronwallParams {
        GronwallParams { c0: 1.0, c1, c2, q: 4.0, beta: 1.0, t_max: 1.0 }
    }

    #[test]
    fn constant_when_sources_vanish() {
        let p = base(0.0, 0.0);
        assert_eq!(gronwall_bound(&p, 0.7), 1.0);
        for (_, psi) in gronwall_saturate(&p, 256).unwrap() {
            assert!((psi - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn closed_form_value() {
        // q = 4, β = 1, C0 = 1, C1 = 0, C2 = 1, t = 1: (1 + 1/2)^4 = 5.0625
        let p = base(0.0, 1.0);
        assert!((gronwall_bound(&p, 1.0) - 5.0625).abs() < 1e-12);
    }

    #[test]
    fn saturation_attains_bound_without_c1() {
        let p = base(0.0, 1.0);
        let path = gronwall_saturate(&p, 512).unwrap();
        let (t, psi) = *path.last().unwrap();
        assert!((t - 1.0).abs() < 1e-12);
        assert!((psi - 5.0625).abs() < 1e-5 * 5.0625);
        for (t, psi) in path {
            let b = gronwall_bound(&p, t);
            assert!((psi - b).abs() <= 1e-6 * b.max(1.0), "at t = {t}: {psi} vs {b}");
        }
    }

    #[test]
    fn saturation_strictly_below_bound_with_c1() {
        let p = base(1.0, 0.0);
        let path = gronwall_saturate(&p, 512).unwrap();
        let (_, psi_end) = *path.last().unwrap();
        let bound_end = gronwall_bound(&p, 1.0);
        assert!(psi_end < bound_end, "{psi_end} !< {bound_end}");
        for (t, psi) in path {
            assert!(psi <= gronwall_bound(&p, t) * (1.0 + 1e-10));
        }
    }

    #[test]
    fn bound_monotone_in_sources_and_time() {
        let p = base(0.5, 0.8);
        let mut prev = 0.0;
        for i in 1..=20 {
            let t = i as f64 / 20.0;
            let b = gronwall_bound(&p, t);
            assert!(b >= prev);
            prev = b;
        }
        for i in 0..10 {
            let c = i as f64 / 5.0;
            let b1 = gronwall_bound(&GronwallParams { c1: c, ..p }, 1.0);
            let b2 = gronwall_bound(&GronwallParams { c1: c + 0.1, ..p }, 1.0);
            assert!(b2 >= b1);
            let b3 = gronwall_bound(&GronwallParams { c2: c, ..p }, 1.0);
            let b4 = gronwall_bound(&GronwallParams { c2: c + 0.1, ..p }, 1.0);
            assert!(b4 >= b3);
        }
    }

    #[test]
    fn saturating_solution_monotone_in_c0() {
        // the bound expression itself is not monotone in C0 (the C0^{-1/q}
        // factor in the C1 term), but the saturating ψ is
        let p1 = GronwallParams { c0: 0.5, ..base(1.0, 1.0) };
        let p2 = GronwallParams { c0: 1.0, ..base(1.0, 1.0) };
        let a = gronwall_saturate(&p1, 256).unwrap();
        let b = gronwall_saturate(&p2, 256).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(y.1 >= x.1);
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(GronwallParams { q: 2.0, ..base(0.0, 0.0) }.validate().is_err());
        assert!(GronwallParams { beta: 2.0, ..base(0.0, 0.0) }.validate().is_err());
        assert!(GronwallParams { c0: 0.0, ..base(0.0, 0.0) }.validate().is_err());
    }
}
