//! Finite-dimensional spin algebra in the `|j,m>` basis.
//!
//! Rows and columns run over `m = j, j-1, ..., -j`, so index `i` holds
//! `m = j - i`. Every module in the crate shares this ordering.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// Spin label `j`, stored exactly as the integer `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin {
    two_j: u32,
}

impl Spin {
    pub const fn from_two_j(two_j: u32) -> Self {
        Self { two_j }
    }

    pub const fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub const fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// `sqrt(j(j+1))`, the length of the classical spin vector.
    pub fn j_c(self) -> f64 {
        let j = self.j();
        (j * (j + 1.0)).sqrt()
    }

    /// Largest harmonic degree carried by operators of this spin.
    pub const fn max_l(self) -> u32 {
        self.two_j
    }

    /// `m` value (as `2m`) stored at basis index `i`.
    pub fn two_m_at(self, index: usize) -> i32 {
        self.two_j as i32 - 2 * index as i32
    }

    pub fn index_of_two_m(self, two_m: i32) -> Option<usize> {
        let offset = self.two_j as i32 - two_m;
        if two_m.abs() as u32 > self.two_j || offset % 2 != 0 {
            None
        } else {
            Some((offset / 2) as usize)
        }
    }

    fn from_dim(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("operator of dimension 0".into()));
        }
        Ok(Self::from_two_j(dim as u32 - 1))
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_j % 2 == 0 {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

impl FromStr for Spin {
    type Err = Error;

    /// Accepts `"n"` or `"n/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Domain(format!("invalid spin {s:?}: expected \"n\" or \"n/2\""));
        match s.split_once('/') {
            None => {
                let n: u32 = s.parse().map_err(|_| bad())?;
                n.checked_mul(2).map(Self::from_two_j).ok_or_else(bad)
            }
            Some((num, "2")) => num.trim().parse().map(Self::from_two_j).map_err(|_| bad()),
            Some(_) => Err(bad()),
        }
    }
}

/// Dense operator on the `2j+1` dimensional spin space.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    spin: Spin,
    entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn new(spin: Spin, entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        if entries.nrows() != spin.dim() {
            return Err(Error::IncompatibleSpin {
                expected: spin.dim(),
                found: entries.nrows(),
            });
        }
        Ok(Self { spin, entries })
    }

    /// Infers the spin from the matrix dimension.
    pub fn from_matrix(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        let spin = Spin::from_dim(entries.nrows())?;
        Ok(Self { spin, entries })
    }

    pub fn zeros(spin: Spin) -> Self {
        Self {
            spin,
            entries: DMatrix::zeros(spin.dim(), spin.dim()),
        }
    }

    pub fn identity(spin: Spin) -> Self {
        Self {
            spin,
            entries: DMatrix::identity(spin.dim(), spin.dim()),
        }
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            spin: self.spin,
            entries: self.entries.adjoint(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// `tr(A) / (2j+1)`, the quantum average `<A>_qm`.
    pub fn normalized_trace(&self) -> Complex64 {
        self.trace() / self.spin.dim() as f64
    }

    /// `tr(A B^dagger)`.
    pub fn trace_pairing(&self, other: &Self) -> Complex64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            spin: self.spin,
            entries: &self.entries * factor,
        }
    }

    pub fn check_same_spin(&self, other: &Self) -> Result<()> {
        if self.spin != other.spin {
            return Err(Error::IncompatibleSpin {
                expected: self.spin.dim(),
                found: other.spin.dim(),
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_spin(other)?;
        Ok(self * other)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_same_spin(other)?;
        Ok(&(self * other) - &(other * self))
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.check_same_spin(other)?;
        Ok(&(self * other) + &(other * self))
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::identity(self.spin);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Hermitian eigenvalues in ascending order. Only meaningful for
    /// Hermitian operators.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        let mut eig: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        eig
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&OperatorMatrix> for &OperatorMatrix {
            type Output = OperatorMatrix;

            fn $method(self, rhs: &OperatorMatrix) -> OperatorMatrix {
                assert_eq!(self.spin, rhs.spin, "operator spins differ");
                OperatorMatrix {
                    spin: self.spin,
                    entries: &self.entries $op &rhs.entries,
                }
            }
        }

        impl $trait for OperatorMatrix {
            type Output = OperatorMatrix;

            fn $method(self, rhs: OperatorMatrix) -> OperatorMatrix {
                &self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn neg(self) -> OperatorMatrix {
        OperatorMatrix {
            spin: self.spin,
            entries: -&self.entries,
        }
    }
}

impl Mul<&OperatorMatrix> for Complex64 {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        rhs.scale(self)
    }
}

/// A point on the unit sphere in polar coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    pub const NORTH: Direction = Direction { theta: 0.0, phi: 0.0 };
    pub const SOUTH: Direction = Direction { theta: PI, phi: 0.0 };

    /// Requires `theta` in `[0, pi]` and `phi` in `[0, 2pi)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::Domain(format!("theta = {theta} outside [0, pi]")));
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::Domain(format!("phi = {phi} outside [0, 2pi)")));
        }
        Ok(Self { theta, phi })
    }

    /// Wraps `phi` into `[0, 2pi)`; `theta` must still be in range.
    pub fn wrapped(theta: f64, phi: f64) -> Result<Self> {
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self::new(theta, phi)
    }

    /// Direction of a nonzero vector.
    pub fn from_vector(v: Vector3<f64>) -> Self {
        let r = v.norm();
        let theta = (v.z / r).clamp(-1.0, 1.0).acos();
        let mut phi = v.y.atan2(v.x);
        if phi < 0.0 {
            phi += TAU;
        }
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn phi(self) -> f64 {
        self.phi
    }

    pub fn unit_vector(self) -> Vector3<f64> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vector3::new(st * cp, st * sp, ct)
    }

    pub fn theta_hat(self) -> Vector3<f64> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vector3::new(ct * cp, ct * sp, -st)
    }

    pub fn phi_hat(self) -> Vector3<f64> {
        let (sp, cp) = self.phi.sin_cos();
        Vector3::new(-sp, cp, 0.0)
    }

    pub fn dot(self, other: Direction) -> f64 {
        self.unit_vector().dot(&other.unit_vector()).clamp(-1.0, 1.0)
    }

    pub fn antipode(self) -> Self {
        Self::from_vector(-self.unit_vector())
    }
}

/// State vector in the `|j,m>` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    spin: Spin,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(spin: Spin, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != spin.dim() {
            return Err(Error::IncompatibleSpin {
                expected: spin.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(Self { spin, amplitudes })
    }

    /// `|j,m>` with `m` given as `2m`.
    pub fn basis(spin: Spin, two_m: i32) -> Result<Self> {
        let idx = spin.index_of_two_m(two_m).ok_or_else(|| {
            Error::Domain(format!("m = {}/2 is not a valid projection for j = {spin}", two_m))
        })?;
        let mut amplitudes = DVector::zeros(spin.dim());
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { spin, amplitudes })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.spin != other.spin {
            return Err(Error::IncompatibleSpin {
                expected: self.spin.dim(),
                found: other.spin.dim(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn apply(&self, op: &OperatorMatrix) -> Result<StateVector> {
        if op.spin() != self.spin {
            return Err(Error::IncompatibleSpin {
                expected: self.spin.dim(),
                found: op.spin().dim(),
            });
        }
        Ok(Self {
            spin: self.spin,
            amplitudes: op.entries() * &self.amplitudes,
        })
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> OperatorMatrix {
        OperatorMatrix {
            spin: self.spin,
            entries: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

/// The angular momentum matrices for one spin.
#[derive(Clone, Debug)]
pub struct SpinMatrices {
    pub jx: OperatorMatrix,
    pub jy: OperatorMatrix,
    pub jz: OperatorMatrix,
    pub jp: OperatorMatrix,
    pub jm: OperatorMatrix,
}

impl SpinMatrices {
    /// `J . v` for a real vector `v`.
    pub fn dot(&self, v: Vector3<f64>) -> OperatorMatrix {
        let c = |x: f64| Complex64::new(x, 0.0);
        &(&self.jx.scale(c(v.x)) + &self.jy.scale(c(v.y))) + &self.jz.scale(c(v.z))
    }

    pub fn casimir(&self) -> OperatorMatrix {
        &(&(&self.jx * &self.jx) + &(&self.jy * &self.jy)) + &(&self.jz * &self.jz)
    }
}

/// Matrix element `<m+1|J+|m>` between basis indices `row = col - 1` and `col`,
/// equal to `sqrt(col (2j - col + 1))`.
pub(crate) fn raising_element(spin: Spin, col: usize) -> f64 {
    let two_j = spin.two_j() as f64;
    let c = col as f64;
    (c * (two_j - c + 1.0)).sqrt()
}

pub fn spin_matrices(spin: Spin) -> SpinMatrices {
    let dim = spin.dim();
    let j = spin.j();
    let jz = DMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::new(j - r as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let jp = DMatrix::from_fn(dim, dim, |r, c| {
        if c == r + 1 {
            Complex64::new(raising_element(spin, c), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let jm = jp.transpose();
    let half = Complex64::new(0.5, 0.0);
    let jx = (&jp + &jm) * half;
    let jy = (&jp - &jm) * Complex64::new(0.0, -0.5);
    let wrap = |entries| OperatorMatrix { spin, entries };
    SpinMatrices {
        jx: wrap(jx),
        jy: wrap(jy),
        jz: wrap(jz),
        jp: wrap(jp),
        jm: wrap(jm),
    }
}

/// Normalized coherent state `|n>`, the `+j` eigenvector of `J . n`.
///
/// Amplitudes follow the `e^{z J-}|j,j>` expansion with `z = tan(theta/2) e^{i phi}`,
/// written in trigonometric form so both poles are regular.
pub fn coherent_ket(spin: Spin, n: Direction) -> StateVector {
    let two_j = spin.two_j();
    let (s, c) = (0.5 * n.theta()).sin_cos();
    let amplitudes = DVector::from_fn(spin.dim(), |i, _| {
        // i = j - m
        let down = i as i32;
        let up = two_j as i32 - down;
        let magnitude = binomial(two_j, i as u32).sqrt() * c.powi(up) * s.powi(down);
        Complex64::from_polar(magnitude, down as f64 * n.phi())
    });
    StateVector { spin, amplitudes }
}

/// `|<n1|n2>|^2 = ((1 + n1.n2)/2)^{2j}`.
pub fn overlap_sq(spin: Spin, n1: Direction, n2: Direction) -> f64 {
    (0.5 * (1.0 + n1.dot(n2))).powi(spin.two_j() as i32)
}

/// `<psi|A|psi>`.
pub fn expectation(state: &StateVector, a: &OperatorMatrix) -> Result<Complex64> {
    let applied = state.apply(a)?;
    state.inner(&applied)
}
