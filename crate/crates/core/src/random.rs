//! Seeded generators for directions, operators, and states.
//!
//! All generators draw from ChaCha8 so a seed reproduces the same values on
//! every platform.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::spin::{Direction, OperatorMatrix, Spin, StateVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly distributed on the sphere.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> Direction {
    let cos_theta: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    Direction::new(cos_theta.acos(), phi).expect("sampled angles are in range")
}

fn normal_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix with independent standard-normal complex entries.
pub fn random_operator<R: Rng + ?Sized>(spin: Spin, rng: &mut R) -> OperatorMatrix {
    let dim = spin.dim();
    let entries = DMatrix::from_fn(dim, dim, |_, _| normal_complex(rng));
    OperatorMatrix::new(spin, entries).expect("dimension matches spin")
}

pub fn random_hermitian<R: Rng + ?Sized>(spin: Spin, rng: &mut R) -> OperatorMatrix {
    let g = random_operator(spin, rng);
    (&g + &g.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// `G G^dagger / tr(G G^dagger)` for a standard-normal complex `G`.
pub fn random_density<R: Rng + ?Sized>(spin: Spin, rng: &mut R) -> OperatorMatrix {
    let g = random_operator(spin, rng);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    gg.scale(Complex64::new(1.0 / tr, 0.0))
}

pub fn random_pure<R: Rng + ?Sized>(spin: Spin, rng: &mut R) -> StateVector {
    let v = DVector::from_fn(spin.dim(), |_, _| normal_complex(rng));
    let norm = v.norm();
    StateVector::new(spin, v / Complex64::new(norm, 0.0)).expect("dimension matches spin")
}
