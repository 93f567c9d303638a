//! Global gradient certificates: a computable lower bound for
//! inf (1-|∇u|²)^{γ/2} from norms of the datum alone.
//!
//! The radius/base-point dependence is absorbed into a free parameter
//! k = |ρ|_q R^{(q-N)/q}: for any k > 0
//!
//!   inf (1-|∇u|²)^{γ/2} ≥ ω^{γ+1}/(ω + c |ρ|_m^{Nm/(N-m)} |ρ|_q^{Nq/(q-N)} k^{-Nq/(q-N)})^{γ+1} - P(k),
//!
//! (m ∈ (1, 2_*]; the m = 1 variant swaps the |ρ|_m factor for the |ρ|₁
//! branch constants keyed on ‖u‖_𝒳). The certificate is the supremum over k.
//! A nonpositive value is a valid, vacuous certificate.

use crate::error::Result;
use crate::estimates::constants::DerivedConstants;

/// The five-term envelope polynomial with P(0) = 0, strictly increasing on
/// k > 0 for q > N.
pub fn p_poly(k: f64, q: f64, n: u32) -> f64 {
    let nf = n as f64;
    let omega = crate::params::unit_ball_volume(n);
    let qn = q - nf;
    let c_k2 = 1.5 * 2f64.powf(q - 4.0) * q * omega.powf(-2.0 / q) / qn;
    let c_k2q2 = 1.5f64.powf(q - 1.0) * 2f64.powf(q - 5.0) * q * omega.powf(-2.0 + 2.0 / q)
        / (qn.powf(q - 1.0) * (q - 1.0));
    let c_kq = 2f64.powf(q - 4.0) * omega.recip() / qn.powf(q - 1.0) * (1.5 + 1.0 / qn);
    let c_k1 = 2f64.powf(q - 3.0) * q * omega.powf(-1.0 / q) / qn;
    let c_k2q1 = 1.5f64.powf(q - 1.0) * 2f64.powf(q - 4.0) * q * omega.powf(-2.0 + 1.0 / q)
        / (qn.powf(q) * (2.0 * q - 1.0));
    c_k2 * k * k
        + c_k2q2 * k.powf(2.0 * q - 2.0)
        + c_kq * k.powf(q)
        + c_k1 * k
        + c_k2q1 * k.powf(2.0 * q - 1.0)
}

/// Norm inputs of the global bound. `rho_m` is |ρ|_m for m ∈ (1, 2_*] and
/// |ρ|₁ when the parameter set has m = 1; `u_norm_x` = |∇u|₂ selects the
/// m = 1 branch.
#[derive(Debug, Clone, Copy)]
pub struct GlobalNorms {
    pub rho_q: f64,
    pub rho_m: f64,
    pub u_norm_x: f64,
}

/// Best certified lower bound for inf (1-|∇u|²)^{γ/2}: the supremum over
/// k > 0 of the two-term expression, located by a deterministic log-space
/// scan plus golden-section refinement.
pub fn global_gradient_bound(norms: &GlobalNorms, consts: &DerivedConstants) -> Result<f64> {
    let params = &consts.params;
    let nf = params.nf();
    let q = params.q;
    let omega = params.omega();
    let gamma = consts.gamma;

    if norms.rho_q == 0.0 {
        // zero datum: the k → 0 limit certifies the full margin
        return Ok(1.0);
    }

    // datum coefficient of the k^{-Nq/(q-N)} term
    let coeff = if params.m > 1.0 {
        let m_star = nf * params.m / (nf - params.m);
        consts.c_pair * norms.rho_m.powf(m_star) * norms.rho_q.powf(nf * q / (q - nf))
    } else {
        let ((c_le1, e_le1), (c_gt1, e_gt1)) = consts.pairing_m1();
        let (c, e) = if norms.u_norm_x <= 1.0 { (c_le1, e_le1) } else { (c_gt1, e_gt1) };
        c * norms.rho_m.powf(e) * norms.rho_q.powf(nf * q / (q - nf))
    };
    let expo = nf * q / (q - nf);

    let value = |k: f64| -> f64 {
        (omega / (omega + coeff * k.powf(-expo))).powf(gamma + 1.0) - p_poly(k, q, params.n)
    };

    // coarse deterministic scan in log k
    let mut best_k = 1e-12;
    let mut best = f64::NEG_INFINITY;
    let steps = 2400;
    for i in 0..=steps {
        let lk = -12.0 + 18.0 * i as f64 / steps as f64;
        let k = 10f64.powf(lk);
        let v = value(k);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    // golden-section refinement around the scan maximum
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (best_k / 10.0, best_k * 10.0);
    let (mut x1, mut x2) = (b - phi * (b - a), a + phi * (b - a));
    let (mut f1, mut f2) = (value(x1), value(x2));
    for _ in 0..200 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = value(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = value(x1);
        }
        if (b - a) < 1e-14 * b {
            break;
        }
    }
    Ok(best.max(f1).max(f2))
}
