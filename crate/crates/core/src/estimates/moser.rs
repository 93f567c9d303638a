//! The two series that close the Moser iteration, with α = N(q-2)/((N-2)q):
//!
//!   (2/(q-2)) Σ_{j≥0} α^{-j} = N/(q-N),
//!   (2/(q-2)) Σ_{j≥1} j α^{-j} = qN(N-2)/(2(q-N)²).
//!
//! Both sides are computed independently (partial sums vs closed forms) and
//! compared; q → N⁺ makes α → 1 and both sums diverge, which is guarded.

use crate::error::{Error, Result};

/// (numeric sum, closed form) pairs for the two series.
pub struct MoserSeries {
    pub sum_geometric: f64,
    pub closed_geometric: f64,
    pub sum_weighted: f64,
    pub closed_weighted: f64,
}

pub fn moser_series(q: f64, n: u32) -> Result<MoserSeries> {
    let nf = n as f64;
    if !(q > nf && n >= 3) {
        return Err(Error::InvalidParam(format!(
            "series converge only for q > N >= 3, got q = {q}, N = {n}"
        )));
    }
    let alpha = nf * (q - 2.0) / ((nf - 2.0) * q);
    debug_assert!(alpha > 1.0);
    let x = 1.0 / alpha;
    let pref = 2.0 / (q - 2.0);
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut term = 1.0;
    let mut j = 0.0;
    while term > 1e-18 * (1.0 + s0) {
        s0 += term;
        s1 += j * term;
        term *= x;
        j += 1.0;
        if j > 1e6 {
            break;
        }
    }
    Ok(MoserSeries {
        sum_geometric: pref * s0,
        closed_geometric: nf / (q - nf),
        sum_weighted: pref * s1,
        closed_weighted: q * nf * (nf - 2.0) / (2.0 * (q - nf).powi(2)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn n3_q4_values() {
        let s = moser_series(4.0, 3).unwrap();
        assert!((s.sum_geometric - 3.0).abs() < 1e-13);
        assert!((s.closed_geometric - 3.0).abs() < 1e-15);
        assert!((s.sum_weighted - 6.0).abs() < 1e-13);
        assert!((s.closed_weighted - 6.0).abs() < 1e-15);
    }

    #[test]
    fn n4_q8_equalities() {
        let s = moser_series(8.0, 4).unwrap();
        assert!((s.sum_geometric - s.closed_geometric).abs() < 1e-13);
        assert!((s.closed_geometric - 1.0).abs() < 1e-15);
        assert!((s.sum_weighted - s.closed_weighted).abs() < 1e-13);
    }

    #[test]
    fn random_pairs_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5150);
        for _ in 0..50 {
            let n = *[3u32, 4, 5, 6].choose(&mut rng).unwrap();
            let q = n as f64 + rng.gen_range(0.3..3.0 * n as f64);
            let s = moser_series(q, n).unwrap();
            let r0 = (s.sum_geometric - s.closed_geometric).abs()
                / s.closed_geometric.abs().max(1.0);
            let r1 = (s.sum_weighted - s.closed_weighted).abs()
                / s.closed_weighted.abs().max(1.0);
            assert!(r0 <= 1e-12 && r1 <= 1e-12, "N={n} q={q}: {r0}, {r1}");
        }
    }

    #[test]
    fn diverges_at_threshold_guarded() {
        assert!(moser_series(3.0, 3).is_err());
        assert!(moser_series(2.9, 3).is_err());
    }
}
