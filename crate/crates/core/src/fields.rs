//! Grids, fields, masks, discrete calculus and norms.
//!
//! Two grid families: log-spaced radial grids for the oracle and uniform
//! Cartesian boxes (N = 3 only) for the variational solver. All reductions
//! run in a fixed order, so norms are bit-identical across runs.

use crate::error::{Error, Result};
use crate::params::unit_sphere_area;
use crate::quad::pairwise_sum;
use serde::{Deserialize, Serialize};
use std::io::Write;

// ---------------------------------------------------------------------------
// radial side
// ---------------------------------------------------------------------------

/// Strictly increasing positive radii, log-spaced by default.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub nodes: Vec<f64>,
}

impl RadialGrid {
    /// Log-spaced grid on [r1, rmax]. Defaults elsewhere use r1 = 1e-6,
    /// rmax = 1e3, which resolves the toy-datum blow-up and the far tail.
    pub fn log_spaced(r1: f64, rmax: f64, nodes: usize) -> Result<Self> {
        if !(r1 > 0.0 && rmax > r1 && nodes >= 2) {
            return Err(Error::InvalidParam(format!(
                "radial grid needs 0 < r1 < rmax and >= 2 nodes, got ({r1}, {rmax}, {nodes})"
            )));
        }
        let (la, lb) = (r1.ln(), rmax.ln());
        let h = (lb - la) / (nodes - 1) as f64;
        let nodes = (0..nodes).map(|i| (la + i as f64 * h).exp()).collect();
        Ok(RadialGrid { nodes })
    }

    pub fn default_oracle() -> Self {
        Self::log_spaced(1e-6, 1e3, 4096).expect("static grid")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of the last node <= r (None if r < first node).
    pub fn floor_index(&self, r: f64) -> Option<usize> {
        if r < self.nodes[0] {
            return None;
        }
        match self.nodes.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
            Ok(i) => Some(i),
            Err(i) => Some(i - 1),
        }
    }
}

/// Real values on a radial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialField {
    pub grid: RadialGrid,
    pub values: Vec<f64>,
}

impl RadialField {
    pub fn from_fn<F: Fn(f64) -> f64>(grid: &RadialGrid, f: F) -> Self {
        RadialField {
            grid: grid.clone(),
            values: grid.nodes.iter().map(|&r| f(r)).collect(),
        }
    }

    pub fn finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Node indicator over a grid (radial or Cartesian; carried as plain bools).
#[derive(Debug, Clone, PartialEq)]
pub struct Mask {
    pub inside: Vec<bool>,
}

impl Mask {
    pub fn all(len: usize) -> Self {
        Mask { inside: vec![true; len] }
    }

    pub fn from_pred<F: Fn(usize) -> bool>(len: usize, pred: F) -> Self {
        Mask { inside: (0..len).map(pred).collect() }
    }

    pub fn count(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }
}

/// L^p norm of a radial field over the masked nodes, weighting by the
/// spherical measure σ_{N-1} r^{N-1} dr (trapezoid on the masked range).
/// p = ∞ returns the masked sup. Empty mask gives 0.
pub fn lq_norm_radial(field: &RadialField, mask: &Mask, p: f64, n: u32) -> f64 {
    assert!(p >= 1.0 || p.is_infinite(), "p >= 1 or p = inf required");
    let r = &field.grid.nodes;
    let f = &field.values;
    if p.is_infinite() {
        let mut sup: f64 = 0.0;
        for i in 0..r.len() {
            if mask.inside[i] {
                sup = sup.max(f[i].abs());
            }
        }
        return sup;
    }
    let sigma = unit_sphere_area(n);
    let mut terms = Vec::with_capacity(r.len());
    for i in 0..r.len().saturating_sub(1) {
        if mask.inside[i] && mask.inside[i + 1] {
            let gi = f[i].abs().powf(p) * r[i].powi(n as i32 - 1);
            let gj = f[i + 1].abs().powf(p) * r[i + 1].powi(n as i32 - 1);
            terms.push(0.5 * (gi + gj) * (r[i + 1] - r[i]));
        }
    }
    (sigma * pairwise_sum(&terms)).powf(1.0 / p)
}

// ---------------------------------------------------------------------------
// Cartesian side (N = 3)
// ---------------------------------------------------------------------------

/// Uniform box [-L, L]^3 with `n` nodes per axis; spacing h = 2L/(n-1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartesianGrid {
    pub n: usize,
    pub half_width: f64,
}

impl CartesianGrid {
    pub fn new(n: usize, half_width: f64) -> Result<Self> {
        if n < 3 || half_width <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "cartesian grid needs n >= 3 and L > 0, got ({n}, {half_width})"
            )));
        }
        Ok(CartesianGrid { n, half_width })
    }

    pub fn h(&self) -> f64 {
        2.0 * self.half_width / (self.n - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.h()
    }

    pub fn point(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        [self.coord(i), self.coord(j), self.coord(k)]
    }

    pub fn is_boundary(&self, i: usize, j: usize, k: usize) -> bool {
        i == 0 || j == 0 || k == 0 || i == self.n - 1 || j == self.n - 1 || k == self.n - 1
    }
}

/// Scalar values on the nodes of a Cartesian grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: CartesianGrid,
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: CartesianGrid) -> Self {
        ScalarField { grid, values: vec![0.0; grid.len()] }
    }

    pub fn from_fn<F: Fn(f64, f64, f64) -> f64>(grid: CartesianGrid, f: F) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.n {
            for j in 0..grid.n {
                for k in 0..grid.n {
                    let p = grid.point(i, j, k);
                    values.push(f(p[0], p[1], p[2]));
                }
            }
        }
        ScalarField { grid, values }
    }

    pub fn finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize, k: usize) -> f64 {
        self.values[self.grid.idx(i, j, k)]
    }
}

/// L^p norm over masked nodes: (Σ |f|^p h³)^{1/p}; p = ∞ gives the masked sup.
pub fn lq_norm_cartesian(field: &ScalarField, mask: &Mask, p: f64) -> f64 {
    assert!(p >= 1.0 || p.is_infinite(), "p >= 1 or p = inf required");
    if p.is_infinite() {
        let mut sup: f64 = 0.0;
        for (i, &v) in field.values.iter().enumerate() {
            if mask.inside[i] {
                sup = sup.max(v.abs());
            }
        }
        return sup;
    }
    let h3 = field.grid.h().powi(3);
    let terms: Vec<f64> = field
        .values
        .iter()
        .enumerate()
        .filter(|(i, _)| mask.inside[*i])
        .map(|(_, &v)| v.abs().powf(p) * h3)
        .collect();
    pairwise_sum(&terms).powf(1.0 / p)
}

/// Centered gradient, second order at interior nodes, one-sided second order
/// at the boundary. Exact on affine fields everywhere.
pub fn gradient(field: &ScalarField) -> [ScalarField; 3] {
    let g = field.grid;
    let h = g.h();
    let mut out = [ScalarField::zeros(g), ScalarField::zeros(g), ScalarField::zeros(g)];
    let n = g.n;
    let d1 = |lo: f64, hi: f64| (hi - lo) / (2.0 * h);
    let one_sided = |f0: f64, f1: f64, f2: f64| (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let id = g.idx(i, j, k);
                out[0].values[id] = if i == 0 {
                    one_sided(field.at(0, j, k), field.at(1, j, k), field.at(2, j, k))
                } else if i == n - 1 {
                    -one_sided(field.at(n - 1, j, k), field.at(n - 2, j, k), field.at(n - 3, j, k))
                } else {
                    d1(field.at(i - 1, j, k), field.at(i + 1, j, k))
                };
                out[1].values[id] = if j == 0 {
                    one_sided(field.at(i, 0, k), field.at(i, 1, k), field.at(i, 2, k))
                } else if j == n - 1 {
                    -one_sided(field.at(i, n - 1, k), field.at(i, n - 2, k), field.at(i, n - 3, k))
                } else {
                    d1(field.at(i, j - 1, k), field.at(i, j + 1, k))
                };
                out[2].values[id] = if k == 0 {
                    one_sided(field.at(i, j, 0), field.at(i, j, 1), field.at(i, j, 2))
                } else if k == n - 1 {
                    -one_sided(field.at(i, j, n - 1), field.at(i, j, n - 2), field.at(i, j, n - 3))
                } else {
                    d1(field.at(i, j, k - 1), field.at(i, j, k + 1))
                };
            }
        }
    }
    out
}

/// Centered Hessian (6 components: xx, yy, zz, xy, xz, yz), second order at
/// interior nodes; boundary nodes copy the nearest interior stencil.
pub fn hessian(field: &ScalarField) -> [ScalarField; 6] {
    let g = field.grid;
    let h = g.h();
    let n = g.n;
    let mut out = [
        ScalarField::zeros(g),
        ScalarField::zeros(g),
        ScalarField::zeros(g),
        ScalarField::zeros(g),
        ScalarField::zeros(g),
        ScalarField::zeros(g),
    ];
    let clamp = |i: usize| i.clamp(1, n - 2);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let id = g.idx(i, j, k);
                let (ci, cj, ck) = (clamp(i), clamp(j), clamp(k));
                out[0].values[id] = (field.at(ci + 1, j, k) - 2.0 * field.at(ci, j, k)
                    + field.at(ci - 1, j, k))
                    / (h * h);
                out[1].values[id] = (field.at(i, cj + 1, k) - 2.0 * field.at(i, cj, k)
                    + field.at(i, cj - 1, k))
                    / (h * h);
                out[2].values[id] = (field.at(i, j, ck + 1) - 2.0 * field.at(i, j, ck)
                    + field.at(i, j, ck - 1))
                    / (h * h);
                out[3].values[id] = (field.at(ci + 1, cj + 1, k) - field.at(ci + 1, cj - 1, k)
                    - field.at(ci - 1, cj + 1, k)
                    + field.at(ci - 1, cj - 1, k))
                    / (4.0 * h * h);
                out[4].values[id] = (field.at(ci + 1, j, ck + 1) - field.at(ci + 1, j, ck - 1)
                    - field.at(ci - 1, j, ck + 1)
                    + field.at(ci - 1, j, ck - 1))
                    / (4.0 * h * h);
                out[5].values[id] = (field.at(i, cj + 1, ck + 1) - field.at(i, cj + 1, ck - 1)
                    - field.at(i, cj - 1, ck + 1)
                    + field.at(i, cj - 1, ck - 1))
                    / (4.0 * h * h);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct GridHeader<'a> {
    pub kind: &'a str,
    pub nodes: usize,
    pub extent: [f64; 2],
    pub spacing: Option<f64>,
}

/// CSV: one node per row, `r,value`. JSON header describes the grid geometry.
pub fn write_radial_csv<W: Write>(w: &mut W, field: &RadialField) -> Result<()> {
    writeln!(w, "r,value")?;
    for (r, v) in field.grid.nodes.iter().zip(&field.values) {
        writeln!(w, "{r},{v}")?;
    }
    Ok(())
}

/// CSV: one node per row, `x,y,z,value`.
pub fn write_cartesian_csv<W: Write>(w: &mut W, field: &ScalarField) -> Result<()> {
    writeln!(w, "x,y,z,value")?;
    let g = field.grid;
    for i in 0..g.n {
        for j in 0..g.n {
            for k in 0..g.n {
                let p = g.point(i, j, k);
                writeln!(w, "{},{},{},{}", p[0], p[1], p[2], field.at(i, j, k))?;
            }
        }
    }
    Ok(())
}

pub fn radial_header(field: &RadialField) -> String {
    serde_json::to_string(&GridHeader {
        kind: "radial-log",
        nodes: field.grid.len(),
        extent: [field.grid.nodes[0], *field.grid.nodes.last().unwrap()],
        spacing: None,
    })
    .expect("header serializes")
}

pub fn cartesian_header(grid: &CartesianGrid) -> String {
    serde_json::to_string(&GridHeader {
        kind: "cartesian-box",
        nodes: grid.len(),
        extent: [-grid.half_width, grid.half_width],
        spacing: Some(grid.h()),
    })
    .expect("header serializes")
}
