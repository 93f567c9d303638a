use mincurv::radial::RadialDensity;
use mincurv::estimates::riesz::ball_mass;
use mincurv::quad::adaptive_simpson;

#[test]
fn dbg() {
    let rho = RadialDensity::ConstantBall { rho0: 2.0, r0: 1.0 };
    let (d, r, alpha): (f64, f64, f64) = (0.4055837344632238, 0.8260358587030232, 0.23976206180503973);
    let (nf, q) = (3.0, 4.0);
    let margin = 1.0 - nf / q - alpha;
    let p = 1.0 / margin;
    println!("margin={margin} p={p} tau_max={}", r.powf(margin));
    let integrand = |tau: f64| {
        let t = if tau > 0.0 { tau.powf(p) } else { 0.0 };
        if t <= 0.0 { return 0.0; }
        let mass = ball_mass(&rho, 3, d, t);
        if mass == 0.0 { return 0.0; }
        let weight = p * tau.powf(p - 1.0);
        if weight == 0.0 { return 0.0; }
        t.powf(-(nf + alpha)) * mass * weight
    };
    for tau in [0.3, 0.9, 0.95, 0.99, 0.995, 0.998] {
        println!("tau={tau} integrand={}", integrand(tau));
    }
    // rectangle rule in tau
    let tau_max = r.powf(margin);
    let nn = 200000;
    let mut brute = 0.0;
    for j in 0..nn {
        let tau = tau_max * (j as f64 + 0.5) / nn as f64;
        brute += integrand(tau) * tau_max / nn as f64;
    }
    println!("brute-in-tau = {brute}");
    let a = adaptive_simpson(&integrand, 0.0, tau_max, 1e-4);
    println!("adaptive = {a}");
}
