//! Pointwise verification, on 2-jets, of the expansion and one-sided bound
//! for Δ_M v^γ that drive the monotonicity argument.
//!
//! With A = D²u, g = ∇u, T = |A|², S = tr A, W = |Aν|², Q = g·Ag and the
//! equation datum ρ, the expansion reads
//!
//!   Δ_M v^γ = -γ v^{γ-2} [T - γS² + (1-γ)vρS + v²ρ² + (1-γ)W]
//!             + γ δ_{N+1}(v^{γ+1} ρ),
//!
//! and the bound it is massaged into is
//!
//!   Δ_M v^γ ≤ -C v^{γ-2} [T + W] + ¼ v^γ ρ² + γ δ_{N+1}(v^{γ+1} ρ).
//!
//! The δ_{N+1}(v^{γ+1}ρ) term carries the third derivatives through
//! δ_{N+1}ρ, which a 2-jet cannot see; it cancels identically between the two
//! sides of the bound, and in the expansion it splits by Leibniz into
//! -(1+γ) v^{γ-3} ρ Q plus the v^{γ+1} δ_{N+1}ρ black box. What remains is
//! checkable on the jet alone, by two independent algebraic routes.

use crate::geometry::Jet2;

struct JetQuantities {
    v: f64,
    /// |A|²_F
    t: f64,
    /// tr A
    s: f64,
    /// |Aν|² = |Ag|²/v²
    w: f64,
    /// g·Ag
    q: f64,
}

fn quantities(jet: &Jet2) -> JetQuantities {
    let n = jet.dim();
    let v = jet.v();
    let mut t = 0.0;
    let mut s = 0.0;
    let mut ag = vec![0.0; n];
    for i in 0..n {
        s += jet.h(i, i);
        for j in 0..n {
            let a = jet.h(i, j);
            t += a * a;
            ag[i] += a * jet.grad[j];
        }
    }
    let ag2: f64 = ag.iter().map(|x| x * x).sum();
    let q: f64 = ag.iter().zip(&jet.grad).map(|(a, g)| a * g).sum();
    JetQuantities { v, t, s, w: ag2 / (v * v), q }
}

/// Relative residual between the two routes to the jet-visible part of
/// Δ_M v^γ. Route one: the published bracket plus the Leibniz remainder
/// -γ(1+γ) v^{γ-3} ρ Q. Route two: the direct chain-rule expansion
/// -γ v^{γ-2} [T - γ Q²/v⁴ + (1-γ)W]. Requires the consistent datum
/// ρ = -(S + Q/v²)/v; zero up to roundoff exactly then.
pub fn jet_identity_residual(jet: &Jet2, gamma: f64) -> f64 {
    let JetQuantities { v, t, s, w, q } = quantities(&consistent(jet));
    let rho = -(s + q / (v * v)) / v;
    let bracket =
        t - gamma * s * s + (1.0 - gamma) * v * rho * s + v * v * rho * rho + (1.0 - gamma) * w;
    let route_a =
        -gamma * v.powf(gamma - 2.0) * bracket - gamma * (1.0 + gamma) * v.powf(gamma - 3.0) * rho * q;
    let route_b = -gamma
        * v.powf(gamma - 2.0)
        * (t - gamma * q * q / v.powi(4) + (1.0 - gamma) * w);
    let scale = route_a.abs().max(route_b.abs()).max(1e-300);
    (route_a - route_b).abs() / scale
}

fn consistent(jet: &Jet2) -> Jet2 {
    let mut j = jet.clone();
    j.rho = j.consistent_rho();
    j
}

/// Slack of the pointwise bound: RHS of the massaged inequality minus the
/// expansion, with the shared δ_{N+1} term cancelled. Nonnegative for every
/// jet when (γ, C) = (1/(8N), 7/(128N)); the datum ρ is free here.
pub fn jet_inequality_slack(jet: &Jet2, gamma: f64, c_mono: f64) -> f64 {
    let JetQuantities { v, t, s, w, q: _ } = quantities(jet);
    let rho = jet.rho;
    let expansion = -gamma
        * v.powf(gamma - 2.0)
        * (t - gamma * s * s + (1.0 - gamma) * v * rho * s + v * v * rho * rho + (1.0 - gamma) * w);
    let bound = -c_mono * v.powf(gamma - 2.0) * (t + w) + 0.25 * v.powf(gamma) * rho * rho;
    bound - expansion
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimates::constants::mono_constants;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_jet(rng: &mut ChaCha8Rng, n: usize, consistent_rho: bool) -> Jet2 {
        let mut dir: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
        let scale = rng.gen_range(0.0..0.99) / norm;
        for d in &mut dir {
            *d *= scale;
        }
        let mut hess = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let x = rng.gen_range(-3.0..3.0);
                hess[i * n + j] = x;
                hess[j * n + i] = x;
            }
        }
        let mut jet = Jet2 { grad: dir, hess, rho: rng.gen_range(-5.0..5.0) };
        if consistent_rho {
            jet.rho = jet.consistent_rho();
        }
        jet
    }

    #[test]
    fn trivial_jet_zero_slack_terms() {
        let jet = Jet2::new(vec![0.0; 3], vec![0.0; 9], 0.0).unwrap();
        let (g, c) = mono_constants(3);
        assert_eq!(jet_inequality_slack(&jet, g, c), 0.0);
        assert_eq!(jet_identity_residual(&jet, g), 0.0);
    }

    #[test]
    fn isotropic_jet_nonnegative_slack() {
        // grad = 0, hess = I, ρ = -N (the consistent datum at this jet)
        let n = 3;
        let mut hess = vec![0.0; 9];
        for i in 0..3 {
            hess[i * 3 + i] = 1.0;
        }
        let jet = Jet2::new(vec![0.0; 3], hess, -3.0).unwrap();
        assert!((jet.consistent_rho() + 3.0).abs() < 1e-14);
        let (g, c) = mono_constants(n);
        assert!(jet_inequality_slack(&jet, g, c) >= 0.0);
    }

    #[test]
    fn identity_holds_on_random_consistent_jets() {
        let mut rng = ChaCha8Rng::seed_from_u64(271);
        for n in [3usize, 4, 5] {
            let (g, _) = mono_constants(n as u32);
            for _ in 0..2000 {
                let jet = random_jet(&mut rng, n, true);
                let res = jet_identity_residual(&jet, g);
                assert!(res <= 1e-10, "residual {res} at N = {n}");
            }
        }
    }

    #[test]
    fn inequality_holds_on_random_jets() {
        // both consistent and free data; the bound is pointwise in either case
        let mut rng = ChaCha8Rng::seed_from_u64(272);
        for n in [3usize, 4, 5] {
            let (g, c) = mono_constants(n as u32);
            for i in 0..5000 {
                let jet = random_jet(&mut rng, n, i % 2 == 0);
                let slack = jet_inequality_slack(&jet, g, c);
                assert!(slack >= 0.0, "negative slack {slack} at N = {n}");
            }
        }
    }
}
