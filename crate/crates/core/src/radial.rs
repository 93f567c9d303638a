//! Radial oracle: exact (quadrature-limited) solutions for radially
//! symmetric data.
//!
//! For radial ρ the equation reduces to the first-order relation
//! (r^{N-1} w)' = -r^{N-1} ρ for the flux w = u'/√(1-u'²), so
//!
//!     w(r) = -r^{1-N} ∫₀^r s^{N-1} ρ(s) ds,
//!
//! and u' = w/√(1+w²), v = 1/√(1+w²), ν = √(1+w²) are algebraic in w.
//! Every derivative downstream estimates need follows analytically from the
//! flux ODE: w' = -ρ - (N-1)w/r, w'' = -ρ' - (N-1)w'/r + (N-1)w/r², so no
//! finite differencing enters the oracle.

use crate::error::{Error, Result};
use crate::fields::{Mask, RadialField, RadialGrid};
use crate::params::{unit_sphere_area, ParamSet};
use crate::quad::{adaptive_simpson, pairwise_sum};
use serde::{Deserialize, Serialize};

/// Flux magnitude beyond which a node is treated as gradient-degenerate
/// (|u'| = 1 locus): v is stored as 0 and ν as the ∞ sentinel.
pub const DEGENERATE_W: f64 = 1e150;

/// Analytic radial density descriptors.
///
/// `Power` is A·r^{-a} on (0, r0]; the toy datum 1/r^{β+1} is
/// `Power { amp: 1, exponent: β + 1, r0 }`. `Bump` is the standard
/// A·exp(-1/(1-(r/r0)²)) plateau-free mollifier profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RadialDensity {
    Zero,
    Power { amp: f64, exponent: f64, r0: f64 },
    ConstantBall { rho0: f64, r0: f64 },
    Bump { amp: f64, r0: f64 },
    Tabulated { nodes: Vec<f64>, values: Vec<f64> },
}

impl RadialDensity {
    pub fn toy_datum(beta: f64) -> Self {
        RadialDensity::Power { amp: 1.0, exponent: beta + 1.0, r0: 1.0 }
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self {
            RadialDensity::Zero => 0.0,
            RadialDensity::Power { amp, exponent, r0 } => {
                if r > 0.0 && r <= *r0 {
                    amp * r.powf(-exponent)
                } else {
                    0.0
                }
            }
            RadialDensity::ConstantBall { rho0, r0 } => {
                if r <= *r0 {
                    *rho0
                } else {
                    0.0
                }
            }
            RadialDensity::Bump { amp, r0 } => {
                let x = r / r0;
                if x < 1.0 {
                    amp * (-1.0 / (1.0 - x * x)).exp()
                } else {
                    0.0
                }
            }
            RadialDensity::Tabulated { nodes, values } => interp_linear(nodes, values, r),
        }
    }

    /// dρ/dr, used by the second-derivative chain. Kink points of the
    /// piecewise descriptors take their interior one-sided value.
    pub fn eval_prime(&self, r: f64) -> f64 {
        match self {
            RadialDensity::Zero => 0.0,
            RadialDensity::Power { amp, exponent, r0 } => {
                if r > 0.0 && r <= *r0 {
                    -amp * exponent * r.powf(-exponent - 1.0)
                } else {
                    0.0
                }
            }
            RadialDensity::ConstantBall { .. } => 0.0,
            RadialDensity::Bump { amp, r0 } => {
                let x = r / r0;
                if x < 1.0 && x > 0.0 {
                    let d = 1.0 - x * x;
                    amp * (-1.0 / d).exp() * (-2.0 * x / (d * d)) / r0
                } else {
                    0.0
                }
            }
            RadialDensity::Tabulated { nodes, values } => {
                // centered secant on the table
                let eps = 1e-6 * (1.0 + r);
                (interp_linear(nodes, values, r + eps) - interp_linear(nodes, values, r - eps))
                    / (2.0 * eps)
            }
        }
    }

    /// Radius beyond which the density vanishes (∞ for tabulated tails).
    pub fn support_radius(&self) -> f64 {
        match self {
            RadialDensity::Zero => 0.0,
            RadialDensity::Power { r0, .. } => *r0,
            RadialDensity::ConstantBall { r0, .. } => *r0,
            RadialDensity::Bump { r0, .. } => *r0,
            RadialDensity::Tabulated { nodes, .. } => *nodes.last().unwrap_or(&0.0),
        }
    }

    /// ∫₀^r s^{N-1} ρ(s) ds, closed form where the descriptor allows it.
    /// Errors when the integral diverges at the origin (power exponent ≥ N).
    pub fn moment(&self, r: f64, n: u32) -> Result<f64> {
        let nf = n as f64;
        match self {
            RadialDensity::Zero => Ok(0.0),
            RadialDensity::Power { amp, exponent, r0 } => {
                if *exponent >= nf {
                    return Err(Error::Divergence(format!(
                        "power density r^-{exponent} is not integrable against r^{} near 0",
                        n - 1
                    )));
                }
                let rr = r.min(*r0).max(0.0);
                Ok(amp * rr.powf(nf - exponent) / (nf - exponent))
            }
            RadialDensity::ConstantBall { rho0, r0 } => {
                let rr = r.min(*r0).max(0.0);
                Ok(rho0 * rr.powf(nf) / nf)
            }
            RadialDensity::Bump { amp, r0 } => {
                let rr = r.min(*r0).max(0.0);
                if rr == 0.0 {
                    return Ok(0.0);
                }
                Ok(adaptive_simpson(
                    &|s: f64| self.eval(s) * s.powf(nf - 1.0),
                    0.0,
                    rr,
                    1e-13 * amp.abs().max(1.0),
                ))
            }
            RadialDensity::Tabulated { nodes, values } => {
                let mut acc = 0.0;
                let mut prev_r = 0.0;
                let mut prev_f = 0.0;
                for (i, &x) in nodes.iter().enumerate() {
                    let xr = x.min(r);
                    let f = interp_linear(nodes, values, xr) * xr.powf(nf - 1.0);
                    acc += 0.5 * (prev_f + f) * (xr - prev_r);
                    if x >= r {
                        return Ok(acc);
                    }
                    prev_r = x;
                    prev_f = values[i] * x.powf(nf - 1.0);
                }
                Ok(acc)
            }
        }
    }

    /// True when ρ ∈ L^p of a neighbourhood of the origin (p·a < N for the
    /// power part; the other descriptors are bounded).
    pub fn in_lp_loc(&self, p: f64, n: u32) -> bool {
        match self {
            RadialDensity::Power { exponent, .. } => p * exponent < n as f64,
            _ => true,
        }
    }

    /// Global L^p norm; errors when divergent (the exponent check p·a < N is
    /// evaluated before any quadrature).
    pub fn lp_norm(&self, p: f64, n: u32) -> Result<f64> {
        self.lp_norm_ball(p, n, f64::INFINITY)
    }

    /// L^p norm over the centered ball of radius rmax.
    pub fn lp_norm_ball(&self, p: f64, n: u32, rmax: f64) -> Result<f64> {
        assert!(p >= 1.0);
        let nf = n as f64;
        let sigma = unit_sphere_area(n);
        match self {
            RadialDensity::Zero => Ok(0.0),
            RadialDensity::Power { amp, exponent, r0 } => {
                if p * exponent >= nf {
                    return Err(Error::Divergence(format!(
                        "|r^-{exponent}|_{p} diverges: p*a = {} >= N = {nf}",
                        p * exponent
                    )));
                }
                let rr = r0.min(rmax);
                Ok((amp.abs().powf(p) * sigma * rr.powf(nf - p * exponent) / (nf - p * exponent))
                    .powf(1.0 / p))
            }
            RadialDensity::ConstantBall { rho0, r0 } => {
                let rr = r0.min(rmax);
                Ok(rho0.abs() * (sigma * rr.powf(nf) / nf).powf(1.0 / p))
            }
            RadialDensity::Bump { amp, r0 } => {
                let rr = r0.min(rmax);
                if rr <= 0.0 {
                    return Ok(0.0);
                }
                let v = adaptive_simpson(
                    &|s: f64| self.eval(s).abs().powf(p) * s.powf(nf - 1.0),
                    0.0,
                    rr,
                    1e-13 * amp.abs().max(1.0).powf(p),
                );
                Ok((sigma * v).powf(1.0 / p))
            }
            RadialDensity::Tabulated { nodes, values } => {
                let mut terms = Vec::new();
                for i in 0..nodes.len().saturating_sub(1) {
                    if nodes[i] > rmax {
                        break;
                    }
                    let b = nodes[i + 1].min(rmax);
                    let fa = values[i].abs().powf(p) * nodes[i].powf(nf - 1.0);
                    let fb =
                        interp_linear(nodes, values, b).abs().powf(p) * b.powf(nf - 1.0);
                    terms.push(0.5 * (fa + fb) * (b - nodes[i]));
                }
                Ok((sigma * pairwise_sum(&terms)).powf(1.0 / p))
            }
        }
    }

    /// ρ̄_t(r) = ρ(r/t)/t, the natural rescaling companion of u ↦ t·u(·/t).
    pub fn rescaled(&self, t: f64) -> Self {
        match self {
            RadialDensity::Zero => RadialDensity::Zero,
            RadialDensity::Power { amp, exponent, r0 } => RadialDensity::Power {
                amp: amp * t.powf(exponent - 1.0),
                exponent: *exponent,
                r0: r0 * t,
            },
            RadialDensity::ConstantBall { rho0, r0 } => {
                RadialDensity::ConstantBall { rho0: rho0 / t, r0: r0 * t }
            }
            RadialDensity::Bump { amp, r0 } => RadialDensity::Bump { amp: amp / t, r0: r0 * t },
            RadialDensity::Tabulated { nodes, values } => RadialDensity::Tabulated {
                nodes: nodes.iter().map(|&r| r * t).collect(),
                values: values.iter().map(|&v| v / t).collect(),
            },
        }
    }
}

fn interp_linear(nodes: &[f64], values: &[f64], r: f64) -> f64 {
    if nodes.is_empty() || r <= nodes[0] {
        return values.first().copied().unwrap_or(0.0) * if r < 0.0 { 0.0 } else { 1.0 };
    }
    if r >= *nodes.last().unwrap() {
        return 0.0;
    }
    let i = match nodes.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
        Ok(i) => return values[i],
        Err(i) => i - 1,
    };
    let t = (r - nodes[i]) / (nodes[i + 1] - nodes[i]);
    values[i] * (1.0 - t) + values[i + 1] * t
}

/// Radial flux w(r) = -r^{1-N} ∫₀^r s^{N-1} ρ ds; exact antiderivative for
/// the power-law and constant descriptors.
pub fn radial_flux(rho: &RadialDensity, n: u32, r: f64) -> Result<f64> {
    assert!(r > 0.0, "flux needs r > 0");
    Ok(-rho.moment(r, n)? / r.powf(n as f64 - 1.0))
}

/// Cumulative moment M(r) = ∫₀^r s^{N-1} ρ ds tabulated on a fine uniform
/// grid over the support, evaluated by cubic Hermite (the derivative
/// r^{N-1} ρ(r) is analytic, so the interpolant is O(h⁴)).
#[derive(Debug, Clone)]
struct MomentTable {
    r0: f64,
    step: f64,
    vals: Vec<f64>,
}

impl MomentTable {
    fn build(density: &RadialDensity, n: u32, cells: usize) -> Self {
        let r0 = density.support_radius();
        let nf = n as f64;
        let g = |r: f64| density.eval(r) * r.powf(nf - 1.0);
        let step = r0 / cells as f64;
        let mut vals = Vec::with_capacity(cells + 1);
        vals.push(0.0);
        for i in 0..cells {
            let (a, b) = (i as f64 * step, (i + 1) as f64 * step);
            let inc = step / 6.0 * (g(a) + 4.0 * g(0.5 * (a + b)) + g(b));
            let prev = *vals.last().unwrap();
            vals.push(prev + inc);
        }
        MomentTable { r0, step, vals }
    }

    fn eval(&self, r: f64, density: &RadialDensity, n: u32) -> f64 {
        if r >= self.r0 {
            return *self.vals.last().unwrap();
        }
        if r <= 0.0 {
            return 0.0;
        }
        let nf = n as f64;
        let g = |x: f64| density.eval(x) * x.powf(nf - 1.0);
        let i = ((r / self.step) as usize).min(self.vals.len() - 2);
        let (a, b) = (i as f64 * self.step, (i + 1) as f64 * self.step);
        let h = self.step;
        let t = (r - a) / h;
        let (t2, t3) = (t * t, t * t * t);
        self.vals[i] * (2.0 * t3 - 3.0 * t2 + 1.0)
            + h * g(a) * (t3 - 2.0 * t2 + t)
            + self.vals[i + 1] * (-2.0 * t3 + 3.0 * t2)
            + h * g(b) * (t3 - t2)
    }
}

/// Pointwise evaluator for a radial solution: all quantities are algebraic
/// in the flux w and its ODE-derived derivatives. Densities without a closed
/// moment antiderivative carry a precomputed prefix table.
#[derive(Debug, Clone)]
pub struct RadialEval {
    pub density: RadialDensity,
    pub n: u32,
    table: Option<MomentTable>,
}

impl RadialEval {
    pub fn new(density: RadialDensity, n: u32) -> Result<Self> {
        // surface origin-divergence up front
        density.moment(1.0, n)?;
        let table = match &density {
            RadialDensity::Bump { .. } | RadialDensity::Tabulated { .. } => {
                Some(MomentTable::build(&density, n, 8192))
            }
            _ => None,
        };
        Ok(RadialEval { density, n, table })
    }

    fn moment(&self, r: f64) -> f64 {
        match &self.table {
            Some(t) => t.eval(r, &self.density, self.n),
            None => self.density.moment(r, self.n).expect("flux checked at construction"),
        }
    }

    pub fn w(&self, r: f64) -> f64 {
        -self.moment(r) / r.powf(self.n as f64 - 1.0)
    }

    /// w' = -ρ - (N-1) w / r.
    pub fn w_prime(&self, r: f64) -> f64 {
        -self.density.eval(r) - (self.n as f64 - 1.0) * self.w(r) / r
    }

    /// w'' = -ρ' - (N-1) w'/r + (N-1) w/r².
    pub fn w_second(&self, r: f64) -> f64 {
        let nm1 = self.n as f64 - 1.0;
        -self.density.eval_prime(r) - nm1 * self.w_prime(r) / r + nm1 * self.w(r) / (r * r)
    }

    pub fn uprime(&self, r: f64) -> f64 {
        let w = self.w(r);
        w / (1.0 + w * w).sqrt()
    }

    pub fn v(&self, r: f64) -> f64 {
        (1.0 + self.w(r).powi(2)).sqrt().recip()
    }

    pub fn nu(&self, r: f64) -> f64 {
        (1.0 + self.w(r).powi(2)).sqrt()
    }

    /// u'' = w' (1+w²)^{-3/2}.
    pub fn u_second(&self, r: f64) -> f64 {
        let w = self.w(r);
        self.w_prime(r) * (1.0 + w * w).powf(-1.5)
    }

    /// v' = -w w' (1+w²)^{-3/2}.
    pub fn v_prime(&self, r: f64) -> f64 {
        let w = self.w(r);
        -w * self.w_prime(r) * (1.0 + w * w).powf(-1.5)
    }

    /// v'' = -(w'² + w w'')(1+w²)^{-3/2} + 3 w² w'² (1+w²)^{-5/2}.
    pub fn v_second(&self, r: f64) -> f64 {
        let w = self.w(r);
        let wp = self.w_prime(r);
        let wpp = self.w_second(r);
        let c = 1.0 + w * w;
        -(wp * wp + w * wpp) * c.powf(-1.5) + 3.0 * w * w * wp * wp * c.powf(-2.5)
    }
}

/// Exact radial solution on a grid, anchored by u(r_M) = 0.
#[derive(Debug, Clone)]
pub struct RadialSolution {
    pub grid: RadialGrid,
    pub u: RadialField,
    pub uprime: RadialField,
    pub v: RadialField,
    pub nu: RadialField,
    pub w: RadialField,
    pub params: ParamSet,
    pub eval: RadialEval,
}

impl RadialSolution {
    /// Nodes where the solution is non-degenerate (v > 0 stored).
    pub fn regular_mask(&self) -> Mask {
        Mask::from_pred(self.grid.len(), |i| self.v.values[i] > 0.0)
    }

    /// Number of degenerate (sentinel) nodes.
    pub fn degenerate_count(&self) -> usize {
        self.grid.len() - self.regular_mask().count()
    }

    /// u at arbitrary radius by cubic Hermite between grid nodes (u' is
    /// analytic, so the interpolant is C¹ and O(h⁴) accurate).
    pub fn u_at(&self, r: f64) -> f64 {
        let nodes = &self.grid.nodes;
        if r >= *nodes.last().unwrap() {
            return 0.0;
        }
        if r <= nodes[0] {
            // first-order head correction on (0, r1]
            return self.u.values[0] - self.eval.uprime(nodes[0]) * (nodes[0] - r.max(0.0));
        }
        let i = self.grid.floor_index(r).unwrap().min(nodes.len() - 2);
        let (a, b) = (nodes[i], nodes[i + 1]);
        let h = b - a;
        let t = (r - a) / h;
        let (u0, u1) = (self.u.values[i], self.u.values[i + 1]);
        let (d0, d1) = (self.eval.uprime(a), self.eval.uprime(b));
        let (t2, t3) = (t * t, t * t * t);
        u0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + h * d0 * (t3 - 2.0 * t2 + t)
            + u1 * (-2.0 * t3 + 3.0 * t2)
            + h * d1 * (t3 - t2)
    }

    /// Sup norm |u|_∞ = u(0⁺) for sign-definite data (monotone profile),
    /// with the sub-grid head integrated at first order.
    pub fn u_sup(&self) -> f64 {
        let head = self.u.values[0].abs() + self.eval.uprime(self.grid.nodes[0]).abs() * self.grid.nodes[0];
        self.u.values.iter().fold(head, |m, &x| m.max(x.abs()))
    }

    /// inf over the grid of v (degenerate nodes contribute 0).
    pub fn v_inf(&self) -> f64 {
        self.v.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Test/diagnostic constructor from a prescribed u' profile; w is back-filled
    /// from u' and u integrated from the outer anchor.
    pub fn from_uprime_profile<F: Fn(f64) -> f64>(
        grid: &RadialGrid,
        params: ParamSet,
        uprime_fn: F,
    ) -> Self {
        let uprime = RadialField::from_fn(grid, &uprime_fn);
        let v = RadialField::from_fn(grid, |r| (1.0 - uprime_fn(r).powi(2)).max(0.0).sqrt());
        let nu = RadialField {
            grid: grid.clone(),
            values: v.values.iter().map(|&x| if x > 0.0 { 1.0 / x } else { f64::INFINITY }).collect(),
        };
        let w = RadialField {
            grid: grid.clone(),
            values: uprime
                .values
                .iter()
                .zip(&v.values)
                .map(|(&up, &vv)| if vv > 0.0 { up / vv } else { DEGENERATE_W })
                .collect(),
        };
        let mut u = vec![0.0; grid.len()];
        for i in (0..grid.len() - 1).rev() {
            let (a, b) = (grid.nodes[i], grid.nodes[i + 1]);
            let mid = 0.5 * (a + b);
            let incr = (b - a) / 6.0 * (uprime_fn(a) + 4.0 * uprime_fn(mid) + uprime_fn(b));
            u[i] = u[i + 1] - incr;
        }
        RadialSolution {
            grid: grid.clone(),
            u: RadialField { grid: grid.clone(), values: u },
            uprime,
            v,
            nu,
            w,
            params,
            eval: RadialEval::new(RadialDensity::Zero, params.n).expect("zero density"),
        }
    }
}

/// Solve the radial problem: closed-form flux, algebraic u', then u by
/// Simpson panels from the outer anchor u(r_M) = 0 inward.
pub fn radial_solve(rho: &RadialDensity, params: &ParamSet, grid: &RadialGrid) -> Result<RadialSolution> {
    let eval = RadialEval::new(rho.clone(), params.n)?;

    let mut w = Vec::with_capacity(grid.len());
    let mut uprime = Vec::with_capacity(grid.len());
    let mut v = Vec::with_capacity(grid.len());
    let mut nu = Vec::with_capacity(grid.len());
    for &r in &grid.nodes {
        let wr = eval.w(r);
        if !wr.is_finite() || wr.abs() >= DEGENERATE_W {
            // gradient-degeneracy locus: report rather than fail
            w.push(if wr.is_finite() { wr } else { f64::NEG_INFINITY });
            uprime.push(-1.0_f64.copysign(wr));
            v.push(0.0);
            nu.push(f64::INFINITY);
        } else {
            w.push(wr);
            uprime.push(wr / (1.0 + wr * wr).sqrt());
            v.push((1.0 + wr * wr).sqrt().recip());
            nu.push((1.0 + wr * wr).sqrt());
        }
    }

    let mut u = vec![0.0; grid.len()];
    for i in (0..grid.len() - 1).rev() {
        let (a, b) = (grid.nodes[i], grid.nodes[i + 1]);
        let mid = 0.5 * (a + b);
        let incr = (b - a) / 6.0 * (eval.uprime(a) + 4.0 * eval.uprime(mid) + eval.uprime(b));
        u[i] = u[i + 1] - incr;
    }

    Ok(RadialSolution {
        grid: grid.clone(),
        u: RadialField { grid: grid.clone(), values: u },
        uprime: RadialField { grid: grid.clone(), values: uprime },
        v: RadialField { grid: grid.clone(), values: v },
        nu: RadialField { grid: grid.clone(), values: nu },
        w: RadialField { grid: grid.clone(), values: w },
        params: *params,
        eval,
    })
}

/// Rescale ũ_t(x) = t·u(x/t) with datum ρ̄_t(x) = ρ(x/t)/t. The gradient is
/// preserved: ũ_t'(t·r) = u'(r).
pub fn rescale(sol: &RadialSolution, t: f64) -> Result<RadialSolution> {
    assert!(t > 0.0, "rescale needs t > 0");
    let grid = RadialGrid { nodes: sol.grid.nodes.iter().map(|&r| r * t).collect() };
    radial_solve(&sol.eval.density.rescaled(t), &sol.params, &grid)
}

/// liminf proxy for the boundedness condition of the outer Lorentz balls:
/// min over the outer half of the grid of (1 - u'(r)²)·r².
pub fn asymptotic_margin(sol: &RadialSolution) -> f64 {
    let m = sol.grid.len();
    let start = m / 2;
    (start..m)
        .map(|i| {
            let up = sol.uprime.values[i];
            (1.0 - up * up) * sol.grid.nodes[i].powi(2)
        })
        .fold(f64::INFINITY, f64::min)
}
