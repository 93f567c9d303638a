//! L^q bound for the Gauss-map excess: if (ν - ν₀)₊ is compactly supported
//! for some ν₀ > 1, then with γ_{ν₀} = 1 - 1/ν₀²
//!
//!   |(ν - ν₀)₊|_q ≤ (√(6q)/γ_{ν₀}) |u|_∞ |ρ|_q.

use crate::error::{Error, Result};
use crate::params::unit_sphere_area;
use crate::quad::adaptive_simpson_rel;
use crate::radial::RadialSolution;
use crate::report::EstimateReport;
use crate::tol;

pub fn nu_excess_check(sol: &RadialSolution, nu0: f64) -> Result<EstimateReport> {
    if !(nu0 > 1.0) {
        return Err(Error::InvalidParam(format!("need nu0 > 1, got {nu0}")));
    }
    let params = &sol.params;
    let nf = params.nf();
    let q = params.q;
    let e = &sol.eval;

    // compact support of the excess: the outer quarter of the grid must be
    // excess-free, in particular the boundary node
    let m = sol.grid.len();
    for i in (3 * m / 4)..m {
        if sol.nu.values[i] >= nu0 {
            return Err(Error::InstanceRejected(format!(
                "(nu - nu0)+ reaches the outer grid at r = {}",
                sol.grid.nodes[i]
            )));
        }
    }

    // crossing radii of ν = ν₀ split the quadrature at the kinks
    let mut cuts = vec![sol.grid.nodes[0]];
    for i in 0..m - 1 {
        let (a, b) = (sol.nu.values[i] - nu0, sol.nu.values[i + 1] - nu0);
        if a * b < 0.0 {
            let (mut lo, mut hi) = (sol.grid.nodes[i], sol.grid.nodes[i + 1]);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if (e.nu(mid) - nu0) * a > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            cuts.push(0.5 * (lo + hi));
        }
    }
    cuts.push(*sol.grid.nodes.last().unwrap());

    let sigma = unit_sphere_area(params.n);
    let mut acc = 0.0;
    for w in cuts.windows(2) {
        acc += adaptive_simpson_rel(
            &|r: f64| (e.nu(r) - nu0).max(0.0).powf(q) * r.powf(nf - 1.0),
            w[0],
            w[1],
            1e-12,
        );
    }
    let excess_q = (sigma * acc).powf(1.0 / q);

    let gamma_nu0 = 1.0 - 1.0 / (nu0 * nu0);
    let c = (6.0 * q).sqrt() / gamma_nu0;
    let bound = c * sol.u_sup() * e.density.lp_norm(q, params.n)?;

    Ok(EstimateReport::new(
        "nu_excess_bound",
        format!("nu0={nu0} q={q}"),
        bound,
        excess_q,
        tol::ESTIMATE_ABS,
    )
    .with_constant("c_explicit", c)
    .with_constant("gamma_nu0", gamma_nu0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::RadialGrid;
    use crate::params::ParamSet;
    use crate::radial::{radial_solve, rescale, RadialDensity};

    fn params3() -> ParamSet {
        ParamSet::new(3, 4.0, 1.2, 6.0).unwrap()
    }

    #[test]
    fn zero_density_zero_excess() {
        let sol = radial_solve(&RadialDensity::Zero, &params3(), &RadialGrid::default_oracle()).unwrap();
        let rep = nu_excess_check(&sol, 1.5).unwrap();
        assert_eq!(rep.rhs, 0.0);
        assert!(rep.pass);
    }

    #[test]
    fn singular_power_instance() {
        // ρ = r^{-0.2} on B₁ has ν exceeding 1.5 near the support peak for a
        // large enough amplitude
        let rho = RadialDensity::Power { amp: 4.0, exponent: 0.2, r0: 1.0 };
        let sol = radial_solve(&rho, &params3(), &RadialGrid::default_oracle()).unwrap();
        let rep = nu_excess_check(&sol, 1.5).unwrap();
        assert!(rep.rhs > 0.0, "excess should be nontrivial");
        assert!(rep.pass, "slack {}", rep.slack);
    }

    #[test]
    fn scaling_audit() {
        // under u ↦ t u(·/t), ρ ↦ ρ(·/t)/t both sides transform consistently:
        // the excess norm and |u|_∞|ρ|_q pick up the same t^{N/q}... t factor,
        // so pass/fail is invariant
        let rho = RadialDensity::Power { amp: 4.0, exponent: 0.2, r0: 1.0 };
        let sol = radial_solve(&rho, &params3(), &RadialGrid::default_oracle()).unwrap();
        let rep = nu_excess_check(&sol, 1.4).unwrap();
        for t in [0.5, 2.0] {
            let scaled = rescale(&sol, t).unwrap();
            let rep_t = nu_excess_check(&scaled, 1.4).unwrap();
            assert_eq!(rep.pass, rep_t.pass);
            // ν is gradient-only: the excess norm scales by t^{N/q}, and so
            // does |u|_∞ |ρ|_q = t · t^{N/q - 1} |u|_∞ |ρ|_q
            let factor = t.powf(3.0 / 4.0);
            assert!((rep_t.rhs - factor * rep.rhs).abs() < 1e-5 * rep.rhs.max(1e-12));
            assert!((rep_t.lhs - factor * rep.lhs).abs() < 1e-5 * rep.lhs);
        }
    }

    #[test]
    fn rejects_excess_touching_boundary() {
        // a datum so strong that ν stays above ν₀ ~ 1 + ε far out would be
        // rejected; emulate with nu0 barely above 1
        let rho = RadialDensity::ConstantBall { rho0: 5.0, r0: 1.0 };
        let sol = radial_solve(&rho, &params3(), &RadialGrid::default_oracle()).unwrap();
        // at the outer grid ν → 1; nu0 = 1 + 1e-12 is still above it, so this
        // instance is fine; force rejection via a synthetic profile instead
        let grid = RadialGrid::log_spaced(0.1, 100.0, 512).unwrap();
        let fake = RadialSolution::from_uprime_profile(&grid, params3(), |_| 0.9);
        assert!(matches!(nu_excess_check(&fake, 1.5), Err(Error::InstanceRejected(_))));
        drop(sol);
    }
}
