//! Dimension/exponent parameter bundle shared by every estimate.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Volume of the Euclidean unit ball in ℝᴺ.
pub fn unit_ball_volume(n: u32) -> f64 {
    let nf = n as f64;
    std::f64::consts::PI.powf(nf / 2.0) / statrs::function::gamma::gamma(nf / 2.0 + 1.0)
}

/// Surface area of the unit sphere S^{N-1} ⊂ ℝᴺ.
pub fn unit_sphere_area(n: u32) -> f64 {
    n as f64 * unit_ball_volume(n)
}

/// Exponent bundle gating all estimates: dimension N ≥ 3, integrability
/// exponents q > N and m ∈ [1, 2N/(N+2)], auxiliary exponent s > N used by
/// the m = 1 chain, plus the derived β = 2N/q, Hölder exponent 1 - N/q and
/// the decay-rate exponent γ ∈ (0, 1/N).
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct ParamSet {
    pub n: u32,
    pub q: f64,
    pub m: f64,
    pub s: f64,
    pub gamma: f64,
}

impl ParamSet {
    /// Validated construction with the default γ(N) = 1/(8N).
    pub fn new(n: u32, q: f64, m: f64, s: f64) -> Result<Self> {
        let gamma = 1.0 / (8.0 * n as f64);
        Self::with_gamma(n, q, m, s, gamma)
    }

    pub fn with_gamma(n: u32, q: f64, m: f64, s: f64, gamma: f64) -> Result<Self> {
        let p = ParamSet { n, q, m, s, gamma };
        p.validate()?;
        Ok(p)
    }

    /// Defaults for dimension N: q = N + 1, m = 2N/(N+2), s chosen so the
    /// sup-norm embedding chain stays inside the valid Sobolev range.
    pub fn default_for(n: u32) -> Result<Self> {
        let nf = n as f64;
        let s = (nf + 1.0).max(2.0 * nf / (nf - 2.0));
        Self::new(n, nf + 1.0, 2.0 * nf / (nf + 2.0), s)
    }

    pub fn validate(&self) -> Result<()> {
        let nf = self.n as f64;
        if self.n < 3 {
            return Err(Error::InvalidParam(format!("N = {} but N >= 3 required", self.n)));
        }
        if !(self.q > nf) {
            return Err(Error::InvalidParam(format!("q = {} but q > N = {} required", self.q, self.n)));
        }
        if !(self.m >= 1.0 && self.m <= self.two_star()) {
            return Err(Error::InvalidParam(format!(
                "m = {} outside [1, 2N/(N+2)] = [1, {}]",
                self.m,
                self.two_star()
            )));
        }
        if !(self.s > nf) {
            return Err(Error::InvalidParam(format!("s = {} but s > N = {} required", self.s, self.n)));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0 / nf) {
            return Err(Error::InvalidParam(format!("gamma = {} outside (0, 1/N)", self.gamma)));
        }
        let beta = self.beta();
        debug_assert!(beta > 0.0 && beta < 2.0);
        debug_assert!(self.alpha_holder() > 0.0 && self.alpha_holder() < 1.0);
        Ok(())
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    /// β = 2N/q ∈ (0, 2).
    pub fn beta(&self) -> f64 {
        2.0 * self.nf() / self.q
    }

    /// Hölder exponent 1 - N/q ∈ (0, 1).
    pub fn alpha_holder(&self) -> f64 {
        1.0 - self.nf() / self.q
    }

    /// 2_* = 2N/(N+2), the conjugate of the critical Sobolev exponent.
    pub fn two_star(&self) -> f64 {
        2.0 * self.nf() / (self.nf() + 2.0)
    }

    /// ω_N, volume of the unit ball.
    pub fn omega(&self) -> f64 {
        unit_ball_volume(self.n)
    }

    /// σ_{N-1}, area of the unit sphere.
    pub fn sigma(&self) -> f64 {
        unit_sphere_area(self.n)
    }
}
