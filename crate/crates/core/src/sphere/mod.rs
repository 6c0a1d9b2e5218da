//! Functions on the unit sphere: harmonics, quadrature, band-limited
//! expansions, tangential gradients, and the sphere Poisson bracket.

pub mod harmonics;
pub mod quadrature;

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin::Direction;

pub use harmonics::{
    eval_ylm, harmonic_table, herglotz_ylm, legendre_p, legendre_series, lm_count, lm_index,
};
pub use quadrature::{gauss_legendre, integrate, quadrature_grid, SphereGrid, SymbolField};

/// Complex 3-vector, used for gradients of complex surface functions.
pub type CVector3 = Vector3<Complex64>;

/// Band-limited surface function `f = sum_{l <= lmax} c_lm Y_lm`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereExpansion {
    lmax: u32,
    coeffs: Vec<Complex64>,
}

impl SphereExpansion {
    pub fn zeros(lmax: u32) -> Self {
        Self {
            lmax,
            coeffs: vec![Complex64::new(0.0, 0.0); lm_count(lmax)],
        }
    }

    /// Coefficients in [`lm_index`] order.
    pub fn from_coeffs(lmax: u32, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != lm_count(lmax) {
            return Err(Error::Domain(format!(
                "expected {} coefficients for lmax = {lmax}, got {}",
                lm_count(lmax),
                coeffs.len()
            )));
        }
        Ok(Self { lmax, coeffs })
    }

    pub fn constant(value: Complex64) -> Self {
        let mut e = Self::zeros(0);
        e.coeffs[0] = value * (4.0 * PI).sqrt();
        e
    }

    /// The coordinate function `n_x`, `n_y` or `n_z` (`axis` 0, 1, 2).
    pub fn cartesian(axis: usize) -> Self {
        let mut e = Self::zeros(1);
        let s = (4.0 * PI / 3.0).sqrt();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        match axis {
            0 => {
                e.set(1, -1, Complex64::new(s * r, 0.0));
                e.set(1, 1, Complex64::new(-s * r, 0.0));
            }
            1 => {
                e.set(1, -1, Complex64::new(0.0, s * r));
                e.set(1, 1, Complex64::new(0.0, s * r));
            }
            2 => e.set(1, 0, Complex64::new(s, 0.0)),
            _ => panic!("axis must be 0, 1 or 2"),
        }
        e
    }

    pub fn lmax(&self) -> u32 {
        self.lmax
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn get(&self, l: u32, m: i32) -> Complex64 {
        if l > self.lmax || m.unsigned_abs() > l {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[lm_index(l, m)]
    }

    pub fn set(&mut self, l: u32, m: i32, value: Complex64) {
        assert!(l <= self.lmax && m.unsigned_abs() <= l, "(l, m) = ({l}, {m}) out of range");
        self.coeffs[lm_index(l, m)] = value;
    }

    /// `(l, m, c_lm)` for every stored coefficient.
    pub fn iter(&self) -> impl Iterator<Item = (u32, i32, Complex64)> + '_ {
        (0..=self.lmax).flat_map(move |l| {
            (-(l as i32)..=l as i32).map(move |m| (l, m, self.coeffs[lm_index(l, m)]))
        })
    }

    /// Multiplies every degree-`l` coefficient by `factor(l)`.
    pub fn scale_by_degree(&self, factor: impl Fn(u32) -> f64) -> Self {
        let mut out = self.clone();
        for l in 0..=self.lmax {
            let f = factor(l);
            for m in -(l as i32)..=l as i32 {
                out.coeffs[lm_index(l, m)] *= f;
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            lmax: self.lmax,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let lmax = self.lmax.max(other.lmax);
        let mut out = Self::zeros(lmax);
        for (l, m, c) in self.iter().chain(other.iter()) {
            out.coeffs[lm_index(l, m)] += c;
        }
        out
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let lmax = self.lmax.max(other.lmax);
        (0..lm_count(lmax))
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or_default();
                let b = other.coeffs.get(i).copied().unwrap_or_default();
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, n: Direction) -> Complex64 {
        self.eval_with_table(&harmonic_table(self.lmax, n))
    }

    /// Evaluates against a precomputed [`harmonic_table`] of degree `>= lmax`.
    pub fn eval_with_table(&self, table: &[Complex64]) -> Complex64 {
        self.coeffs.iter().zip(table).map(|(c, y)| c * y).sum()
    }

    pub fn eval_on_grid<'g>(&self, grid: &'g SphereGrid) -> SymbolField<'g> {
        grid.sample(|n| self.eval(n))
    }

    /// Projects sampled values onto harmonics `l <= lmax` by quadrature:
    /// `c_lm = sum_i w_i f_i conj(Y_lm(n_i))`. Exact when the field is
    /// band-limited to `L` and the grid degree is at least `L + lmax`.
    pub fn project(field: &SymbolField<'_>, lmax: u32) -> Self {
        let grid = field.grid();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); lm_count(lmax)];
        for ((&n, &w), &f) in grid.nodes().iter().zip(grid.weights()).zip(field.values()) {
            let table = harmonic_table(lmax, n);
            for (c, y) in coeffs.iter_mut().zip(&table) {
                *c += f * y.conj() * w;
            }
        }
        Self { lmax, coeffs }
    }

    /// Components of `L f` with `L = -i n x grad` the orbital angular
    /// momentum on the sphere, as expansions of the same degree.
    pub fn angular_momentum(&self) -> [SphereExpansion; 3] {
        let mut raised = Self::zeros(self.lmax);
        let mut lowered = Self::zeros(self.lmax);
        let mut lz = Self::zeros(self.lmax);
        for (l, m, c) in self.iter() {
            let ll = (l * (l + 1)) as f64;
            let mf = m as f64;
            if m < l as i32 {
                raised.coeffs[lm_index(l, m + 1)] += c * (ll - mf * (mf + 1.0)).sqrt();
            }
            if m > -(l as i32) {
                lowered.coeffs[lm_index(l, m - 1)] += c * (ll - mf * (mf - 1.0)).sqrt();
            }
            lz.coeffs[lm_index(l, m)] = c * mf;
        }
        let lx = raised.add(&lowered).scale(Complex64::new(0.5, 0.0));
        let ly = raised.add(&lowered.scale(Complex64::new(-1.0, 0.0))).scale(Complex64::new(0.0, -0.5));
        [lx, ly, lz]
    }

    /// Precomputes the data needed for repeated gradient evaluation.
    pub fn gradient_operator(&self) -> Gradient {
        Gradient {
            components: self.angular_momentum(),
        }
    }
}

/// Surface gradient of an expansion, evaluated as `grad f = -i n x (L f)`,
/// which is regular at both poles.
#[derive(Clone, Debug)]
pub struct Gradient {
    components: [SphereExpansion; 3],
}

impl Gradient {
    pub fn at(&self, n: Direction) -> CVector3 {
        let lmax = self.components[0].lmax();
        self.at_with_table(n, &harmonic_table(lmax, n))
    }

    pub fn at_with_table(&self, n: Direction, table: &[Complex64]) -> CVector3 {
        let l_f = CVector3::new(
            self.components[0].eval_with_table(table),
            self.components[1].eval_with_table(table),
            self.components[2].eval_with_table(table),
        );
        let nv = n.unit_vector().map(|x| Complex64::new(x, 0.0));
        nv.cross(&l_f) * Complex64::new(0.0, -1.0)
    }
}

/// Surface gradient of `f` at `n`, tangent to the sphere.
pub fn tangential_gradient(f: &SphereExpansion, n: Direction) -> CVector3 {
    f.gradient_operator().at(n)
}

/// `n . (grad fA x grad fB)` for two gradient vectors at `n`.
pub fn bracket_density(n: Direction, grad_a: &CVector3, grad_b: &CVector3) -> Complex64 {
    let nv = n.unit_vector().map(|x| Complex64::new(x, 0.0));
    nv.dot(&grad_a.cross(grad_b))
}

/// Poisson bracket of `fA(J/|J|)` and `fB(J/|J|)` at the classical spin
/// vector `j_c n`, under `{j_a, j_b} = eps_abc j_c`. Equals
/// `n . (grad fA x grad fB) / j_c`; pass `j_c = 1` for the bare unit-sphere
/// bracket.
pub fn poisson_sphere(
    f_a: &SphereExpansion,
    f_b: &SphereExpansion,
    n: Direction,
    j_c: f64,
) -> Complex64 {
    let ga = tangential_gradient(f_a, n);
    let gb = tangential_gradient(f_b, n);
    bracket_density(n, &ga, &gb) / j_c
}
