//! Tensor-product quadrature on the sphere and sampled fields.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spin::Direction;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature nodes with solid-angle weights summing to `4 pi`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereGrid {
    nodes: Vec<Direction>,
    weights: Vec<f64>,
    exact_degree: usize,
    n_theta: usize,
    n_phi: usize,
}

impl SphereGrid {
    /// Gauss-Legendre in `cos theta` times a uniform `phi` ring. Exact for
    /// band-limited integrands of degree `min(2 n_theta - 1, n_phi - 1)`.
    pub fn with_counts(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 {
            return Err(Error::Domain("grid needs at least one node per axis".into()));
        }
        let exact_degree = (2 * n_theta - 1).min(n_phi - 1);
        Ok(Self::build(n_theta, n_phi, exact_degree))
    }

    fn build(n_theta: usize, n_phi: usize, exact_degree: usize) -> Self {
        let (xs, ws) = gauss_legendre(n_theta);
        let dphi = TAU / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        // theta ascending means cos theta descending
        for (x, w) in xs.iter().zip(&ws).rev() {
            let theta = x.clamp(-1.0, 1.0).acos();
            for k in 0..n_phi {
                let phi = dphi * k as f64;
                nodes.push(Direction::new(theta, phi).expect("grid angles in range"));
                weights.push(w * dphi);
            }
        }
        Self {
            nodes,
            weights,
            exact_degree,
            n_theta,
            n_phi,
        }
    }

    pub fn nodes(&self) -> &[Direction] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exact_degree(&self) -> usize {
        self.exact_degree
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn require_degree(&self, required: usize) -> Result<()> {
        if self.exact_degree < required {
            return Err(Error::InsufficientGrid {
                required,
                actual: self.exact_degree,
            });
        }
        Ok(())
    }

    /// Samples `f` at every node, in parallel.
    pub fn sample<F>(&self, f: F) -> SymbolField<'_>
    where
        F: Fn(Direction) -> Complex64 + Sync,
    {
        let values = self.nodes.par_iter().map(|&n| f(n)).collect();
        SymbolField { grid: self, values }
    }
}

/// Grid integrating every product of harmonics of total degree `<= exact_degree`.
///
/// Uses `ceil((L+1)/2) + 1` Gauss nodes in `cos theta` and `L + 2` uniform
/// `phi` nodes, one more than the exactness bound on each axis.
pub fn quadrature_grid(exact_degree: usize) -> SphereGrid {
    let n_theta = (exact_degree + 1).div_ceil(2) + 1;
    let n_phi = exact_degree + 2;
    SphereGrid::build(n_theta, n_phi, exact_degree)
}

/// A function sampled on the nodes of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolField<'g> {
    grid: &'g SphereGrid,
    values: Vec<Complex64>,
}

impl<'g> SymbolField<'g> {
    pub fn new(grid: &'g SphereGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Domain(format!(
                "field has {} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &'g SphereGrid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> SymbolField<'g> {
        SymbolField {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise product with another field on the same grid.
    pub fn product(&self, other: &SymbolField<'_>) -> Result<SymbolField<'g>> {
        if self.grid != other.grid {
            return Err(Error::Domain("fields live on different grids".into()));
        }
        Ok(SymbolField {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    /// `(1/4pi) * integral`.
    pub fn average(&self) -> Complex64 {
        integrate(self) / (4.0 * PI)
    }

    pub fn max_abs_diff(&self, other: &SymbolField<'_>) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Quadrature sum `sum_i w_i f_i`.
pub fn integrate(field: &SymbolField<'_>) -> Complex64 {
    field
        .grid
        .weights
        .iter()
        .zip(&field.values)
        .map(|(w, f)| f * *w)
        .sum()
}
