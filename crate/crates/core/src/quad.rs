//! Quadrature and reduction primitives.
//!
//! Reductions are deterministic: sums use a fixed pairwise tree so repeated
//! runs on identical input are bit-identical regardless of thread count.

/// Pairwise (cascade) summation with a fixed reduction tree.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        let mut s = 0.0;
        for &x in xs {
            s += x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Adaptive Simpson quadrature of `f` on [a, b] with an absolute tolerance.
/// Callers should keep `tol` above the roundoff level of the integral scale;
/// the recursion depth is capped so unreachable tolerances degrade to a fine
/// fixed subdivision instead of exponential work.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let c = 0.5 * (a + b);
    let (fa, fb, fc) = (f(a), f(b), f(c));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    simpson_rec(f, a, b, fa, fb, fc, whole, tol, 20)
}

/// Adaptive Simpson with tolerance relative to a sampled integrand scale.
pub fn adaptive_simpson_rel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut scale: f64 = 0.0;
    for i in 0..=8 {
        let x = a + (b - a) * i as f64 / 8.0;
        let v = f(x).abs();
        if v.is_finite() {
            scale = scale.max(v);
        }
    }
    adaptive_simpson(f, a, b, rel_tol * (scale * (b - a).abs()).max(1e-300))
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fc: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let c = 0.5 * (a + b);
    let d = 0.5 * (a + c);
    let e = 0.5 * (c + b);
    let (fd, fe) = (f(d), f(e));
    let left = (c - a) / 6.0 * (fa + 4.0 * fd + fc);
    let right = (b - c) / 6.0 * (fc + 4.0 * fe + fb);
    let delta = left + right - whole;
    // non-finite samples cannot be refined away; stop rather than recurse
    if depth == 0 || delta.abs() <= 15.0 * tol || !delta.is_finite() {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, c, fa, fc, fd, left, 0.5 * tol, depth - 1)
            + simpson_rec(f, c, b, fc, fb, fe, right, 0.5 * tol, depth - 1)
    }
}

/// Composite Simpson with `n` panels (n rounded up to even).
pub fn simpson_uniform<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n.max(2) } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut terms = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = a + i as f64 * h;
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        terms.push(w * f(x));
    }
    pairwise_sum(&terms) * h / 3.0
}

/// Nodes and weights of `n`-point Gauss-Legendre quadrature on [-1, 1],
/// computed by Newton iteration on Legendre polynomials.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Chebyshev initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        loop {
            // Legendre recurrence for P_n(x) and P_{n-1}(x)
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                nodes[i] = -x;
                nodes[n - 1 - i] = x;
                let w = 2.0 / ((1.0 - x * x) * dp * dp);
                weights[i] = w;
                weights[n - 1 - i] = w;
                break;
            }
        }
    }
    (nodes, weights)
}

/// RK4 with fixed step count for a scalar ODE z' = f(t, z) on [t0, t1].
/// Returns the sampled trajectory including both endpoints.
pub fn rk4_scalar<F: Fn(f64, f64) -> f64>(
    f: &F,
    t0: f64,
    t1: f64,
    z0: f64,
    steps: usize,
) -> Vec<(f64, f64)> {
    let n = steps.max(1);
    let h = (t1 - t0) / n as f64;
    let mut out = Vec::with_capacity(n + 1);
    let mut t = t0;
    let mut z = z0;
    out.push((t, z));
    for _ in 0..n {
        let k1 = f(t, z);
        let k2 = f(t + 0.5 * h, z + 0.5 * h * k1);
        let k3 = f(t + 0.5 * h, z + 0.5 * h * k2);
        let k4 = f(t + h, z + h * k3);
        z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        out.push((t, z));
    }
    out
}
