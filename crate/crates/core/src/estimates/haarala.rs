//! Sup bound for ν = 1/v on half balls via Moser iteration:
//!
//!   sup_{B_{R/2}} ν ≤ c [ (⨍_{B_R} ν^q)^{N/(q(q-N))} + R^{N/(q-N)} (⨍_{B_R} |ρ|^q)^{N/(q(q-N))} ]
//!                      · (⨍_{B_R} ν^q)^{1/q},
//!
//! with the constant assembled in `constants::moser_sup_constant`. Evaluated
//! on radial oracle solutions over balls centered at the origin.

use crate::error::{Error, Result};
use crate::estimates::constants::moser_sup_constant;
use crate::params::unit_sphere_area;
use crate::quad::adaptive_simpson_rel;
use crate::radial::RadialSolution;
use crate::report::EstimateReport;
use crate::tol;

pub fn haarala_check(sol: &RadialSolution, radius: f64) -> Result<EstimateReport> {
    let params = &sol.params;
    let nf = params.nf();
    let q = params.q;
    let omega = params.omega();
    let sigma = unit_sphere_area(params.n);
    let e = &sol.eval;
    let r1 = sol.grid.nodes[0];

    // reject instances with degenerate nodes inside the ball
    for (i, &r) in sol.grid.nodes.iter().enumerate() {
        if r <= radius && sol.v.values[i] == 0.0 {
            return Err(Error::InstanceRejected(format!(
                "gradient-degenerate node at r = {r} inside B_R"
            )));
        }
    }

    let sup_nu = {
        let mut m = e.nu(radius / 2.0);
        for &r in &sol.grid.nodes {
            if r <= radius / 2.0 {
                m = m.max(e.nu(r));
            }
        }
        m
    };

    let split = e.density.support_radius().min(radius).max(r1);
    let nu_q_int = |a: f64, b: f64| {
        if b > a {
            adaptive_simpson_rel(&|r: f64| e.nu(r).powf(q) * r.powf(nf - 1.0), a, b, 1e-11)
        } else {
            0.0
        }
    };
    let nu_q = sigma
        * (e.nu(r1).powf(q) * r1.powf(nf) / nf + nu_q_int(r1, split) + nu_q_int(split, radius));
    let mean_nu = nu_q / (omega * radius.powf(nf));
    let rho_q_ball = e.density.lp_norm_ball(q, params.n, radius)?;
    let mean_rho = rho_q_ball.powf(q) / (omega * radius.powf(nf));

    let s1 = nf / (q - nf);
    let bracket = mean_nu.powf(s1 / q) + radius.powf(s1) * mean_rho.powf(s1 / q);
    let c2 = moser_sup_constant(params.n, q)?;
    let bound = c2 * bracket * mean_nu.powf(1.0 / q);

    Ok(EstimateReport::new(
        "moser_sup_bound",
        format!("radial R={radius} mean_nu={mean_nu:.6e}"),
        bound,
        sup_nu,
        tol::ESTIMATE_ABS,
    )
    .with_constant("c_assembled", c2)
    .with_constant("c_fitted", sup_nu / (bracket * mean_nu.powf(1.0 / q))))
}
