//! Spherical-harmonic tensor operators `Y_lm(J)` and the operator expansion
//! over them.
//!
//! `Y_lm(J)` is read off the operator generating function
//! `exp(zeta a.J)` exactly as `Y_lm(n)` is read off `exp(zeta a.r)`: it is
//! `sqrt((2l+1)/4pi) sqrt((l+m)!(l-m)!)/l!` times the `lambda^m` coefficient
//! of `(a.J)^l`, where `a.J = J_z - (lambda/2) J_+ + (1/(2 lambda)) J_-`.
//!
//! Since `J_+` raises `m` by one and `J_-` lowers it, the coefficient of
//! `lambda^p` only has entries on the `p`-th superdiagonal (column minus row
//! equals `p`). The coefficients are stored that way, as [`ShiftedDiagonal`]s.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinatorics::harmonic_prefactor;
use crate::error::{Error, Result};
use crate::sphere::{lm_count, lm_index};
use crate::spin::{OperatorMatrix, Spin};
use crate::symbol::coeff_a_w;

/// Real matrix supported on a single diagonal: entry `(r, r + offset)`
/// is `values[r]` for `offset >= 0`, `(r - offset, r)` is `values[r]` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedDiagonal {
    offset: i32,
    values: Vec<f64>,
}

impl ShiftedDiagonal {
    fn zeros(dim: usize, offset: i32) -> Self {
        let len = dim.saturating_sub(offset.unsigned_abs() as usize);
        Self {
            offset,
            values: vec![0.0; len],
        }
    }

    pub fn offset(&self) -> i32 {
        self.offset
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(row, col)` of the `k`-th stored value.
    #[inline]
    pub fn position(&self, k: usize) -> (usize, usize) {
        if self.offset >= 0 {
            (k, k + self.offset as usize)
        } else {
            (k + self.offset.unsigned_abs() as usize, k)
        }
    }

    pub fn to_matrix(&self, dim: usize) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(dim, dim);
        for (k, &v) in self.values.iter().enumerate() {
            m[self.position(k)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `tr(A D^T)`, i.e. `tr(A D^dagger)` since `D` is real.
    pub fn pair_with(&self, a: &OperatorMatrix) -> Complex64 {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &v)| a.get(self.position(k).0, self.position(k).1) * v)
            .sum()
    }
}

/// `k (2j - k + 1)`, the square of the `J_+` element linking index `k` to `k - 1`.
fn link_weight(spin: Spin, k: usize) -> u64 {
    k as u64 * (spin.two_j() as u64 + 1 - k as u64)
}

/// Product of `sqrt(link_weight)` over the links between indices `r` and `c`.
fn link_factor(spin: Spin, r: usize, c: usize) -> f64 {
    let (lo, hi) = (r.min(c), r.max(c));
    ((lo + 1)..=hi).map(|k| (link_weight(spin, k) as f64).sqrt()).product()
}

/// `(a.J)^l` as a Laurent polynomial in `lambda`, kept exact.
///
/// The `(r, c)` entry of the `lambda^p` coefficient is
/// `link_factor(r, c) * N / 2^l` with `N` an integer: every path from `r` to
/// `c` crosses each intermediate link an odd number of times and every other
/// link an even number of times, so the square roots factor out. Stored
/// integers sit on diagonal `p` indexed like [`ShiftedDiagonal`].
#[derive(Clone, Debug)]
pub struct LaurentMatrixPoly {
    spin: Spin,
    degree: u32,
    min_power: i32,
    coeffs: Vec<Vec<BigInt>>,
}

impl LaurentMatrixPoly {
    /// The constant polynomial `1` (identity matrix).
    pub fn one(spin: Spin) -> Self {
        Self {
            spin,
            degree: 0,
            min_power: 0,
            coeffs: vec![vec![BigInt::one(); spin.dim()]],
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn min_power(&self) -> i32 {
        self.min_power
    }

    pub fn max_power(&self) -> i32 {
        self.min_power + self.coeffs.len() as i32 - 1
    }

    fn integers(&self, power: i32) -> Option<&[BigInt]> {
        let idx = power - self.min_power;
        if idx < 0 {
            return None;
        }
        self.coeffs.get(idx as usize).map(Vec::as_slice)
    }

    /// Integer entry at `(r, c)` of the `lambda^power` coefficient, if stored.
    fn integer_at(&self, power: i32, r: usize, c: usize) -> Option<&BigInt> {
        let dim = self.spin.dim();
        if r >= dim || c >= dim || c as i64 - r as i64 != power as i64 {
            return None;
        }
        self.integers(power)?.get(if power >= 0 { r } else { c })
    }

    /// Whether every entry of every coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// Coefficient of `lambda^power` on its diagonal (zero outside the range).
    pub fn diagonal(&self, power: i32) -> ShiftedDiagonal {
        let mut d = ShiftedDiagonal::zeros(self.spin.dim(), power);
        if let Some(ints) = self.integers(power) {
            let scale = 0.5f64.powi(self.degree as i32);
            for (k, n) in ints.iter().enumerate() {
                let (r, c) = d.position(k);
                d.values[k] = n.to_f64().unwrap_or(f64::NAN) * scale * link_factor(self.spin, r, c);
            }
        }
        d
    }

    pub fn coefficient(&self, power: i32) -> OperatorMatrix {
        let entries = self.diagonal(power).to_matrix(self.spin.dim());
        OperatorMatrix::new(self.spin, entries).expect("dimension matches spin")
    }

    /// Left-multiplies by `a.J = J_z - (lambda/2) J_+ + (1/(2 lambda)) J_-`.
    ///
    /// With the common `1/2` absorbed into `2^l`, the integers obey
    /// `N'_p(r,c) = (2j - 2r) N_p(r,c) - w N_{p-1}(r+1,c) + w' N_{p+1}(r-1,c)`,
    /// where `w` is `1` if the `J_+` link is already counted in
    /// `link_factor(r, c)` and its weight otherwise, and likewise `w'`.
    pub fn times_null_vector_dot_j(&self) -> Self {
        let spin = self.spin;
        let dim = spin.dim() as i32;
        let two_j = spin.two_j() as i64;
        let min_power = (self.min_power - 1).max(1 - dim);
        let max_power = (self.max_power() + 1).min(dim - 1);
        let coeffs = (min_power..=max_power)
            .map(|p| {
                let template = ShiftedDiagonal::zeros(spin.dim(), p);
                (0..template.values.len())
                    .map(|k| {
                        let (r, c) = template.position(k);
                        let mut n = BigInt::zero();
                        if let Some(v) = self.integer_at(p, r, c) {
                            n += v * BigInt::from(two_j - 2 * r as i64);
                        }
                        if let Some(v) = self.integer_at(p - 1, r + 1, c) {
                            let w = if p >= 1 { 1 } else { link_weight(spin, r + 1) };
                            n -= v * BigInt::from(w);
                        }
                        if let Some(v) = r.checked_sub(1).and_then(|up| self.integer_at(p + 1, up, c)) {
                            let w = if p <= -1 { 1 } else { link_weight(spin, r) };
                            n += v * BigInt::from(w);
                        }
                        n
                    })
                    .collect()
            })
            .collect();
        Self {
            spin,
            degree: self.degree + 1,
            min_power,
            coeffs,
        }
    }
}

/// Exact Gram matrix of the unnormalized generating coefficients of one `m`.
///
/// Entry `(a, b)` is `sum_k S_k^2 N_a[k] N_b[k] / 2^(l_a + l_b)` over the
/// `lambda^m` diagonals of `(a.J)^l` for `l_a, l_b = |m|..=2j`, with
/// `S_k^2` the (integer) squared link factor. Then
/// `tr(Y_lm Y_l'm^dagger) = c_l c_l' G(l, l')` with `c_l` the normalization
/// used in [`TensorBasis`], so orthogonality can be checked with no rounding.
pub fn reduced_gram(spin: Spin, m: i32) -> Result<Vec<Vec<BigRational>>> {
    let lmax = spin.max_l();
    if m.unsigned_abs() > lmax {
        return Err(Error::Domain(format!("|m| = {} exceeds 2j = {lmax}", m.abs())));
    }
    let template = ShiftedDiagonal::zeros(spin.dim(), m);
    let len = template.values.len();
    let weights: Vec<BigInt> = (0..len)
        .map(|k| {
            let (r, c) = template.position(k);
            ((r.min(c) + 1)..=r.max(c)).fold(BigInt::one(), |acc, i| acc * BigInt::from(link_weight(spin, i)))
        })
        .collect();
    let mut power = LaurentMatrixPoly::one(spin);
    let mut rows = Vec::new();
    for l in 0..=lmax {
        if l > 0 {
            power = power.times_null_vector_dot_j();
        }
        if l >= m.unsigned_abs() {
            let ints = power.integers(m).map_or_else(|| vec![BigInt::zero(); len], <[BigInt]>::to_vec);
            rows.push((l, ints));
        }
    }
    Ok(rows
        .iter()
        .map(|(la, a)| {
            rows.iter()
                .map(|(lb, b)| {
                    let sum: BigInt = weights.iter().zip(a).zip(b).map(|((w, x), y)| w * x * y).sum();
                    BigRational::new(sum, BigInt::one() << (la + lb) as usize)
                })
                .collect()
        })
        .collect())
}

/// All `Y_lm(J)` with `l <= 2j` for one spin.
#[derive(Debug)]
pub struct TensorBasis {
    spin: Spin,
    ops: Vec<ShiftedDiagonal>,
}

impl TensorBasis {
    pub fn build(spin: Spin) -> Self {
        let lmax = spin.max_l();
        let mut ops = vec![ShiftedDiagonal::zeros(spin.dim(), 0); lm_count(lmax)];
        let mut power = LaurentMatrixPoly::one(spin);
        for l in 0..=lmax {
            if l > 0 {
                power = power.times_null_vector_dot_j();
            }
            let norm = ((2 * l + 1) as f64 / (4.0 * PI)).sqrt();
            for m in -(l as i32)..=l as i32 {
                let mut d = power.diagonal(m);
                let factor = norm * harmonic_prefactor(l, m);
                d.values.iter_mut().for_each(|v| *v *= factor);
                d.offset = m;
                ops[lm_index(l, m)] = d;
            }
        }
        Self { spin, ops }
    }

    /// Shared basis for `spin`, built on first use.
    pub fn cached(spin: Spin) -> Arc<TensorBasis> {
        static CACHE: OnceLock<RwLock<HashMap<Spin, Arc<TensorBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.read().expect("basis cache poisoned").get(&spin) {
            return Arc::clone(b);
        }
        let built = Arc::new(Self::build(spin));
        let mut guard = cache.write().expect("basis cache poisoned");
        Arc::clone(guard.entry(spin).or_insert(built))
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    /// `Y_lm(J)` in shifted-diagonal form, `l <= 2j`.
    pub fn diagonal(&self, l: u32, m: i32) -> &ShiftedDiagonal {
        &self.ops[lm_index(l, m)]
    }

    pub fn matrix(&self, l: u32, m: i32) -> OperatorMatrix {
        let entries = self.diagonal(l, m).to_matrix(self.spin.dim());
        OperatorMatrix::new(self.spin, entries).expect("dimension matches spin")
    }
}

fn check_lm(l: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > l {
        return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    Ok(())
}

/// The generating-function coefficient for any `l`, without the `l > 2j`
/// short cut of [`tensor_op`]. For `l > 2j` it vanishes identically.
pub fn generating_coefficient(spin: Spin, l: u32, m: i32) -> Result<OperatorMatrix> {
    check_lm(l, m)?;
    let mut power = LaurentMatrixPoly::one(spin);
    for _ in 0..l {
        power = power.times_null_vector_dot_j();
    }
    let norm = ((2 * l + 1) as f64 / (4.0 * PI)).sqrt() * harmonic_prefactor(l, m);
    Ok(power.coefficient(m).scale(norm.into()))
}

/// `Y_lm(J)`; the zero matrix for `l > 2j`.
pub fn tensor_op(spin: Spin, l: u32, m: i32) -> Result<OperatorMatrix> {
    check_lm(l, m)?;
    if l > spin.max_l() {
        return Ok(OperatorMatrix::zeros(spin));
    }
    Ok(TensorBasis::cached(spin).matrix(l, m))
}

/// Whether `Y_lm^dagger = (-1)^m Y_{l,-m}` holds to `1e-12`.
pub fn adjoint_check(spin: Spin, l: u32, m: i32) -> Result<bool> {
    let lhs = tensor_op(spin, l, m)?.adjoint();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let rhs = tensor_op(spin, l, -m)?.scale(sign.into());
    Ok(lhs.max_abs_diff(&rhs) < 1e-12)
}

/// Expansion `A = sum_{l <= 2j} c_lm Y_lm(J)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorDecomposition {
    spin: Spin,
    coeffs: Vec<Complex64>,
}

impl TensorDecomposition {
    pub fn new(spin: Spin, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != lm_count(spin.max_l()) {
            return Err(Error::Domain(format!(
                "spin {spin} needs {} coefficients, got {}",
                lm_count(spin.max_l()),
                coeffs.len()
            )));
        }
        Ok(Self { spin, coeffs })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn get(&self, l: u32, m: i32) -> Complex64 {
        if l > self.spin.max_l() || m.unsigned_abs() > l {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[lm_index(l, m)]
    }
}

/// `c_lm = 4pi tr(A Y_lm^dagger) / ((2j+1) (a^W_jl)^2)`, from the operator
/// orthogonality of the basis.
pub fn decompose(a: &OperatorMatrix) -> TensorDecomposition {
    let spin = a.spin();
    let basis = TensorBasis::cached(spin);
    let dim = spin.dim() as f64;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); lm_count(spin.max_l())];
    for l in 0..=spin.max_l() {
        let aw = coeff_a_w(spin, l);
        let norm = 4.0 * PI / (dim * aw * aw);
        for m in -(l as i32)..=l as i32 {
            coeffs[lm_index(l, m)] = basis.diagonal(l, m).pair_with(a) * norm;
        }
    }
    TensorDecomposition { spin, coeffs }
}

pub fn reconstruct(d: &TensorDecomposition) -> OperatorMatrix {
    let spin = d.spin;
    let basis = TensorBasis::cached(spin);
    let mut entries = DMatrix::<Complex64>::zeros(spin.dim(), spin.dim());
    for l in 0..=spin.max_l() {
        for m in -(l as i32)..=l as i32 {
            let c = d.coeffs[lm_index(l, m)];
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let diag = basis.diagonal(l, m);
            for (k, &v) in diag.values().iter().enumerate() {
                entries[diag.position(k)] += c * v;
            }
        }
    }
    OperatorMatrix::new(spin, entries).expect("dimension matches spin")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_operator, rng};
    use crate::spin::spin_matrices;

    fn spin(two_j: u32) -> Spin {
        Spin::from_two_j(two_j)
    }

    #[test]
    fn low_degree_examples() {
        for two_j in 1..=8 {
            let s = spin(two_j);
            let m = spin_matrices(s);
            let y00 = tensor_op(s, 0, 0).unwrap();
            let id = OperatorMatrix::identity(s).scale((1.0 / (4.0 * PI).sqrt()).into());
            assert!(y00.max_abs_diff(&id) < 1e-14);
            let y10 = tensor_op(s, 1, 0).unwrap();
            assert!(y10.max_abs_diff(&m.jz.scale((3.0 / (4.0 * PI)).sqrt().into())) < 1e-13);
            let y11 = tensor_op(s, 1, 1).unwrap();
            assert!(y11.max_abs_diff(&m.jp.scale((-(3.0 / (8.0 * PI)).sqrt()).into())) < 1e-13);
        }
        assert!(matches!(tensor_op(spin(2), 1, 2), Err(Error::Domain(_))));
        assert!(generating_coefficient(spin(2), 1, -2).is_err());
    }

    #[test]
    fn truncation_is_exact() {
        for two_j in 0..=8 {
            let s = spin(two_j);
            let mut p = LaurentMatrixPoly::one(s);
            for _ in 0..=two_j {
                p = p.times_null_vector_dot_j();
            }
            assert_eq!(p.degree(), two_j + 1);
            assert!(p.is_zero());
            for m in -(two_j as i32 + 1)..=two_j as i32 + 1 {
                assert_eq!(tensor_op(s, two_j + 1, m).unwrap().max_abs(), 0.0);
                assert_eq!(generating_coefficient(s, two_j + 1, m).unwrap().max_abs(), 0.0);
            }
        }
        let mut p = LaurentMatrixPoly::one(spin(64));
        for _ in 0..65 {
            p = p.times_null_vector_dot_j();
        }
        assert!(p.is_zero());
    }

    #[test]
    fn generating_route_matches_basis() {
        for two_j in 1..=6 {
            let s = spin(two_j);
            for l in 0..=two_j {
                for m in -(l as i32)..=l as i32 {
                    let direct = generating_coefficient(s, l, m).unwrap();
                    assert!(direct.max_abs_diff(&tensor_op(s, l, m).unwrap()) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn adjoint_relation() {
        for two_j in 0..=8 {
            let s = spin(two_j);
            for l in 0..=two_j {
                for m in -(l as i32)..=l as i32 {
                    assert!(adjoint_check(s, l, m).unwrap(), "2j={two_j} l={l} m={m}");
                }
            }
        }
    }

    /// Worst deviation of `tr(Y_lm Y_l'm'^dagger)/(2j+1)` from
    /// `(a^W_l)^2 delta/4pi`, relative to the geometric mean of the two norms.
    fn orthogonality_error(s: Spin) -> f64 {
        let basis = TensorBasis::cached(s);
        let lmax = s.max_l();
        let norm = |l: u32| coeff_a_w(s, l).powi(2) / (4.0 * PI);
        let mut worst = 0.0f64;
        for l in 0..=lmax {
            for m in -(l as i32)..=l as i32 {
                let a = basis.diagonal(l, m).values();
                // different m live on different diagonals, so only l2 varies
                for l2 in m.unsigned_abs()..=lmax {
                    let b = basis.diagonal(l2, m).values();
                    let g = a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / s.dim() as f64;
                    let target = if l == l2 { norm(l) } else { 0.0 };
                    worst = worst.max((g - target).abs() / (norm(l) * norm(l2)).sqrt());
                }
            }
        }
        worst
    }

    #[test]
    fn orthogonality_large_spin() {
        assert!(orthogonality_error(spin(64)) < 1e-12);
        assert!(orthogonality_error(spin(33)) < 1e-12);
    }

    #[test]
    fn rotation_covariance() {
        // [J_z, Y_lm] = m Y_lm, [J_+-, Y_lm] = sqrt((l -+ m)(l +- m + 1)) Y_{l,m+-1}
        for two_j in 1..=8 {
            let s = spin(two_j);
            let j = spin_matrices(s);
            for l in 0..=two_j {
                for m in -(l as i32)..=l as i32 {
                    let y = tensor_op(s, l, m).unwrap();
                    let (lf, mf) = (l as f64, m as f64);
                    let scale = y.max_abs().max(1.0);
                    let z = j.jz.commutator(&y).unwrap();
                    assert!(z.max_abs_diff(&y.scale(mf.into())) < 1e-11 * scale);
                    let up = j.jp.commutator(&y).unwrap();
                    let want = if m < l as i32 {
                        tensor_op(s, l, m + 1).unwrap().scale(((lf - mf) * (lf + mf + 1.0)).sqrt().into())
                    } else {
                        OperatorMatrix::zeros(s)
                    };
                    assert!(up.max_abs_diff(&want) < 1e-11 * scale);
                    let down = j.jm.commutator(&y).unwrap();
                    let want = if m > -(l as i32) {
                        tensor_op(s, l, m - 1).unwrap().scale(((lf + mf) * (lf - mf + 1.0)).sqrt().into())
                    } else {
                        OperatorMatrix::zeros(s)
                    };
                    assert!(down.max_abs_diff(&want) < 1e-11 * scale);
                }
            }
        }
    }

    #[test]
    fn exact_gram_is_diagonal() {
        for two_j in 1..=6 {
            let s = spin(two_j);
            for m in -(two_j as i32)..=two_j as i32 {
                let g = reduced_gram(s, m).unwrap();
                for (a, row) in g.iter().enumerate() {
                    for (b, v) in row.iter().enumerate() {
                        assert_eq!(v.is_zero(), a != b, "2j={two_j} m={m} ({a},{b})");
                    }
                }
            }
        }
        assert!(reduced_gram(spin(2), 3).is_err());
    }

    #[test]
    fn decompose_examples() {
        for two_j in 1..=8 {
            let s = spin(two_j);
            let d = decompose(&OperatorMatrix::identity(s));
            assert!((d.get(0, 0) - (4.0 * PI).sqrt()).norm() < 1e-12);
            assert!(d.coeffs().iter().skip(1).all(|c| c.norm() < 1e-12));
            let d = decompose(&spin_matrices(s).jz);
            assert!((d.get(1, 0) - (4.0 * PI / 3.0).sqrt()).norm() < 1e-12);
            let others: f64 = d.coeffs().iter().map(|c| c.norm()).sum::<f64>() - d.get(1, 0).norm();
            assert!(others < 1e-12);
        }
        let s = spin(4);
        let y = tensor_op(s, 3, -2).unwrap();
        let d = decompose(&y);
        for (i, c) in d.coeffs().iter().enumerate() {
            let target = if i == lm_index(3, -2) { 1.0 } else { 0.0 };
            assert!((c - target).norm() < 1e-12);
        }
    }

    #[test]
    fn decompose_round_trip() {
        let mut r = rng(41);
        for two_j in 0..=8 {
            let s = spin(two_j);
            for _ in 0..20 {
                let a = random_operator(s, &mut r);
                let back = reconstruct(&decompose(&a));
                assert!(back.max_abs_diff(&a) < 1e-10 * a.max_abs().max(1.0));
            }
        }
        let s = spin(40);
        let a = random_operator(s, &mut r);
        assert!(reconstruct(&decompose(&a)).max_abs_diff(&a) < 1e-10 * a.max_abs());
    }

    #[test]
    fn decomposition_length_checked() {
        assert!(TensorDecomposition::new(spin(2), vec![Complex64::new(0.0, 0.0); 4]).is_err());
        assert!(TensorDecomposition::new(spin(2), vec![Complex64::new(0.0, 0.0); 9]).is_ok());
    }

    #[test]
    fn cache_returns_shared_basis() {
        let a = TensorBasis::cached(spin(5));
        let b = TensorBasis::cached(spin(5));
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(a.spin(), spin(5));
    }
}
