//! Orthonormal surface harmonics and Legendre polynomials.
//!
//! The phase convention is the one produced by the generating function
//! `exp(zeta a.r)` with the null vector
//! `a = z_hat - (lambda/2)(x_hat + i y_hat) + (1/(2 lambda))(x_hat - i y_hat)`:
//! `r^l Y_lm` is `sqrt((2l+1)/4pi) sqrt((l+m)!(l-m)!)/l!` times the
//! `lambda^m` coefficient of `(a.r)^l`. That fixes `Y_11 = -sqrt(3/8pi)(x + iy)/r`,
//! i.e. the Condon-Shortley phase, which the recurrences below reproduce.
//! [`herglotz_ylm`] evaluates the generating-function coefficient directly.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::combinatorics::{factorial_exact, harmonic_prefactor};
use crate::error::{Error, Result};
use crate::spin::Direction;

/// Flat index of `(l, m)` in coefficient and table vectors.
#[inline]
pub fn lm_index(l: u32, m: i32) -> usize {
    (l as i64 * l as i64 + l as i64 + m as i64) as usize
}

/// Number of `(l, m)` pairs with `l <= lmax`.
#[inline]
pub fn lm_count(lmax: u32) -> usize {
    (lmax as usize + 1).pow(2)
}

fn check_lm(l: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > l {
        return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    Ok(())
}

/// Normalized associated Legendre values `Pbar_lm(cos theta)` for one `m >= 0`
/// and `l = m..=lmax`, including the Condon-Shortley sign, such that
/// `Y_lm = Pbar_lm e^{i m phi}`.
fn legendre_column(lmax: u32, m: u32, cos_t: f64, sin_t: f64, out: &mut Vec<f64>) {
    out.clear();
    if m > lmax {
        return;
    }
    let mut pmm = (0.25 / PI).sqrt();
    for k in 1..=m {
        let k = k as f64;
        pmm *= -((2.0 * k + 1.0) / (2.0 * k)).sqrt() * sin_t;
    }
    out.push(pmm);
    if m == lmax {
        return;
    }
    let mf = m as f64;
    let mut prev = pmm;
    let mut cur = (2.0 * mf + 3.0).sqrt() * cos_t * pmm;
    out.push(cur);
    for l in (m + 2)..=lmax {
        let lf = l as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
        let next = a * (cos_t * cur - b * prev);
        prev = cur;
        cur = next;
        out.push(cur);
    }
}

/// All `Y_lm(n)` for `l <= lmax`, indexed by [`lm_index`].
pub fn harmonic_table(lmax: u32, n: Direction) -> Vec<Complex64> {
    let mut table = vec![Complex64::new(0.0, 0.0); lm_count(lmax)];
    let (sin_t, cos_t) = n.theta().sin_cos();
    let mut column = Vec::with_capacity(lmax as usize + 1);
    for m in 0..=lmax {
        legendre_column(lmax, m, cos_t, sin_t, &mut column);
        let phase = Complex64::from_polar(1.0, m as f64 * n.phi());
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        for (offset, &p) in column.iter().enumerate() {
            let l = m + offset as u32;
            let y = phase * p;
            table[lm_index(l, m as i32)] = y;
            if m > 0 {
                table[lm_index(l, -(m as i32))] = y.conj() * sign;
            }
        }
    }
    table
}

/// Orthonormal surface harmonic `Y_lm(n)`.
pub fn eval_ylm(l: u32, m: i32, n: Direction) -> Result<Complex64> {
    check_lm(l, m)?;
    let (sin_t, cos_t) = n.theta().sin_cos();
    let mut column = Vec::with_capacity(l as usize + 1);
    legendre_column(l, m.unsigned_abs(), cos_t, sin_t, &mut column);
    let p = *column.last().expect("column has l - |m| + 1 entries");
    let y = Complex64::from_polar(p, m.unsigned_abs() as f64 * n.phi());
    Ok(if m >= 0 {
        y
    } else if m % 2 == 0 {
        y.conj()
    } else {
        -y.conj()
    })
}

/// `Y_lm` computed straight from the generating-function coefficient:
/// the `lambda^m` term of `(z - lambda w/2 + conj(w)/(2 lambda))^l` with
/// `w = x + iy`. Exact-factorial route, intended for `l <= 20`.
pub fn herglotz_ylm(l: u32, m: i32, n: Direction) -> Result<Complex64> {
    check_lm(l, m)?;
    if l > 20 {
        return Err(Error::Domain(format!("generating-function route limited to l <= 20, got {l}")));
    }
    let v = n.unit_vector();
    let w = Complex64::new(v.x, v.y);
    let a = Complex64::new(v.z, 0.0);
    let b = -0.5 * w;
    let c = 0.5 * w.conj();
    let fact = |k: i64| factorial_exact(k as u32).expect("k <= 20") as f64;
    // terms: p powers of b*lambda, q powers of c/lambda, r powers of a;
    // p - q = m, p + q + r = l
    let (l, m) = (l as i64, m as i64);
    let mut coefficient = Complex64::new(0.0, 0.0);
    let mut q = (-m).max(0);
    while m + 2 * q <= l {
        let p = m + q;
        let r = l - p - q;
        let multinomial = fact(l) / (fact(p) * fact(q) * fact(r));
        coefficient += a.powi(r as i32) * b.powi(p as i32) * c.powi(q as i32) * multinomial;
        q += 1;
    }
    let norm = ((2 * l + 1) as f64 / (4.0 * PI)).sqrt() * harmonic_prefactor(l as u32, m as i32);
    Ok(coefficient * norm)
}

/// Legendre polynomial `P_l(x)` by the three-term recurrence.
///
/// Arguments within `1e-12` outside `[-1, 1]` are clamped, covering rounding
/// in dot products of unit vectors.
pub fn legendre_p(l: u32, x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!("legendre argument {x} outside [-1, 1]")));
    }
    let x = x.clamp(-1.0, 1.0);
    Ok(legendre_series(l, x).pop().expect("series has l + 1 terms"))
}

/// `[P_0(x), ..., P_lmax(x)]`, assuming `|x| <= 1`.
pub fn legendre_series(lmax: u32, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(lmax as usize + 1);
    out.push(1.0);
    if lmax == 0 {
        return out;
    }
    out.push(x);
    for l in 2..=lmax as usize {
        let lf = l as f64;
        let next = ((2.0 * lf - 1.0) * x * out[l - 1] - (lf - 1.0) * out[l - 2]) / lf;
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_direction, rng};

    #[test]
    fn low_order_values() {
        let n = Direction::new(0.9, 2.1).unwrap();
        let y00 = eval_ylm(0, 0, n).unwrap();
        assert!((y00 - (0.25 / PI).sqrt()).norm() < 1e-15);
        let y10 = eval_ylm(1, 0, n).unwrap();
        assert!((y10 - (0.75 / PI).sqrt() * 0.9f64.cos()).norm() < 1e-15);
        let eq = Direction::new(PI / 2.0, 0.0).unwrap();
        let y11 = eval_ylm(1, 1, eq).unwrap();
        assert!((y11 + (3.0 / (8.0 * PI)).sqrt()).norm() < 1e-15);
    }

    #[test]
    fn domain_error() {
        assert!(matches!(eval_ylm(2, 3, Direction::NORTH), Err(Error::Domain(_))));
        assert!(eval_ylm(2, -3, Direction::NORTH).is_err());
        assert!(legendre_p(3, 1.5).is_err());
    }

    #[test]
    fn recurrence_matches_generating_function() {
        let mut rng = rng(21);
        for _ in 0..20 {
            let n = random_direction(&mut rng);
            for l in 0..=12u32 {
                for m in -(l as i32)..=l as i32 {
                    let direct = herglotz_ylm(l, m, n).unwrap();
                    let rec = eval_ylm(l, m, n).unwrap();
                    assert!((direct - rec).norm() < 1e-11, "l={l} m={m}: {direct} vs {rec}");
                }
            }
        }
    }

    #[test]
    fn table_matches_single_evaluation() {
        let n = Direction::new(2.3, 4.4).unwrap();
        let table = harmonic_table(30, n);
        for l in 0..=30u32 {
            for m in -(l as i32)..=l as i32 {
                let single = eval_ylm(l, m, n).unwrap();
                assert!((table[lm_index(l, m)] - single).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn conjugation_law() {
        let mut rng = rng(22);
        for _ in 0..20 {
            let n = random_direction(&mut rng);
            for l in 0..=10u32 {
                for m in -(l as i32)..=l as i32 {
                    let lhs = eval_ylm(l, m, n).unwrap().conj();
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    let rhs = eval_ylm(l, -m, n).unwrap() * sign;
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn legendre_examples() {
        for l in 0..20 {
            assert!((legendre_p(l, 1.0).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!((legendre_p(2, 0.0).unwrap() + 0.5).abs() < 1e-15);
        assert!((legendre_p(3, 0.4).unwrap() - 0.5 * (5.0 * 0.064 - 3.0 * 0.4)).abs() < 1e-15);
    }

    #[test]
    fn addition_theorem() {
        let mut rng = rng(23);
        for _ in 0..30 {
            let (a, b) = (random_direction(&mut rng), random_direction(&mut rng));
            for l in 0..=12u32 {
                let brute: Complex64 = (-(l as i32)..=l as i32)
                    .map(|m| eval_ylm(l, m, a).unwrap() * eval_ylm(l, m, b).unwrap().conj())
                    .sum();
                let rhs = (2 * l + 1) as f64 / (4.0 * PI) * legendre_p(l, a.dot(b)).unwrap();
                assert!((brute - rhs).norm() < 1e-10);
            }
        }
    }
}
