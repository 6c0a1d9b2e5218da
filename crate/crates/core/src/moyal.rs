//! The Stratonovich–Weyl kernel, the Moyal product of Weyl symbols, and
//! large-`j` scaling studies of its Poisson-bracket limit.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{eval_scaled, parse_operator};
use crate::sphere::{
    bracket_density, harmonic_table, legendre_series, quadrature_grid, SphereExpansion,
    SymbolField,
};
use crate::spin::{Direction, OperatorMatrix, Spin};
use crate::symbol::{coeff_a_w, symbol_of, SymbolCoefficients, SymbolKind};
use crate::tensor::{reconstruct, TensorBasis, TensorDecomposition};

/// `Delta(n) = 4pi sum_{l <= 2j, m} conj(Y_lm(n)) Y_lm(J) / a^W_jl`.
/// Weyl symbols are `Phi_A(n) = tr(A Delta(n)) / (2j+1)`.
pub fn sw_kernel(spin: Spin, n: Direction) -> OperatorMatrix {
    let lmax = spin.max_l();
    let table = harmonic_table(lmax, n);
    let coeffs = table
        .iter()
        .enumerate()
        .map(|(i, y)| {
            let l = (i as f64).sqrt().floor() as u32;
            y.conj() * (4.0 * PI / coeff_a_w(spin, l))
        })
        .collect();
    let d = TensorDecomposition::new(spin, coeffs).expect("table has (2j+1)^2 entries");
    reconstruct(&d)
}

/// Reproducing kernel of the harmonics with `l <= 2j`:
/// `sum_{l <= 2j} (2l+1)/(4pi) P_l(n1.n2)`.
pub fn identity_kernel(spin: Spin, n1: Direction, n2: Direction) -> f64 {
    legendre_series(spin.max_l(), n1.dot(n2))
        .iter()
        .enumerate()
        .map(|(l, p)| (2 * l + 1) as f64 * p)
        .sum::<f64>()
        / (4.0 * PI)
}

/// `(1/4pi) int Phi(n) Delta(n) dn`, the inverse of the Weyl map.
pub fn operator_from_symbol(spin: Spin, field: &SymbolField<'_>) -> Result<OperatorMatrix> {
    field.grid().require_degree(2 * spin.two_j() as usize)?;
    let lmax = spin.max_l();
    let projected = SphereExpansion::project(field, lmax);
    let coeffs = projected
        .iter()
        .map(|(l, _, c)| c / coeff_a_w(spin, l))
        .collect();
    Ok(reconstruct(&TensorDecomposition::new(spin, coeffs)?))
}

/// `M_j(n1, n2, n3) = tr(Delta(n1) Delta(n2) Delta(n3)) / (2j+1)`.
pub fn trikernel(spin: Spin, n1: Direction, n2: Direction, n3: Direction) -> Complex64 {
    let d1 = sw_kernel(spin, n1);
    let d2 = sw_kernel(spin, n2);
    let d3 = sw_kernel(spin, n3);
    (&(&d1 * &d2) * &d3).normalized_trace()
}

/// Weyl symbol of the matrix product `AB`.
pub fn moyal_exact(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<SymbolCoefficients> {
    Ok(symbol_of(&a.try_mul(b)?, SymbolKind::W))
}

fn require_weyl(s: &SymbolCoefficients) -> Result<()> {
    if s.kind() != SymbolKind::W {
        return Err(Error::KindMismatch {
            expected: SymbolKind::W.to_string(),
            found: s.kind().to_string(),
        });
    }
    Ok(())
}

/// `Phi_A Phi_B + (i / 2j_c) n.(grad Phi_A x grad Phi_B)`, the Moyal product
/// through first order in `1/j`.
pub fn moyal_leading(sa: &SymbolCoefficients, sb: &SymbolCoefficients, n: Direction) -> Result<Complex64> {
    require_weyl(sa)?;
    require_weyl(sb)?;
    if sa.spin() != sb.spin() {
        return Err(Error::IncompatibleSpin {
            expected: sa.spin().dim(),
            found: sb.spin().dim(),
        });
    }
    let j_c = sa.spin().j_c();
    let ga = sa.expansion().gradient_operator().at(n);
    let gb = sb.expansion().gradient_operator().at(n);
    Ok(sa.eval(n) * sb.eval(n) + Complex64::i() * bracket_density(n, &ga, &gb) / (2.0 * j_c))
}

pub fn commutator_symbol(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<SymbolCoefficients> {
    Ok(symbol_of(&a.commutator(b)?, SymbolKind::W))
}

pub fn anticommutator_symbol(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<SymbolCoefficients> {
    Ok(symbol_of(&a.anticommutator(b)?, SymbolKind::W))
}

/// `c = (a^W_j2 - j(j+1)) / (3 (a^W_j1)^2)`, the isotropic part of the
/// second moment of `M_j` as usually quoted. Undefined below `j = 1`.
pub fn moment_constant(spin: Spin) -> Result<f64> {
    if spin.two_j() < 2 {
        return Err(Error::Domain("moment constant needs j >= 1".into()));
    }
    let j = spin.j();
    let a1 = coeff_a_w(spin, 1);
    Ok((coeff_a_w(spin, 2) - j * (j + 1.0)) / (3.0 * a1 * a1))
}

/// Residuals of the first-order Moyal expansion over a range of spins.
///
/// Operators are parsed once and evaluated with `J -> J / j_c`, so their
/// symbols have finite large-`j` limits. Errors are sup-norms over the
/// default degree-`4j` grid; slopes are least-squares fits of `log error`
/// against `log j`, or `None` when some error is not positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    pub op_a: String,
    pub op_b: String,
    pub j_values: Vec<f64>,
    pub grid_degree: Vec<usize>,
    /// `Phi_[A,B] - i {Phi_A, Phi_B}`
    pub commutator_errors: Vec<f64>,
    /// `Phi_{AB+BA} - 2 Phi_A Phi_B`
    pub anticommutator_errors: Vec<f64>,
    /// `Phi_AB` minus the two-term product.
    pub product_errors: Vec<f64>,
    pub commutator_slope: Option<f64>,
    pub anticommutator_slope: Option<f64>,
    pub product_slope: Option<f64>,
}

pub const MIN_SCAN_POINTS: usize = 3;

#[derive(Clone, Copy, Debug)]
struct Residuals {
    commutator: f64,
    anticommutator: f64,
    product: f64,
}

fn residuals_at(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<(usize, Residuals)> {
    let spin = a.spin();
    let lmax = spin.max_l();
    TensorBasis::cached(spin);
    let sa = symbol_of(a, SymbolKind::W);
    let sb = symbol_of(b, SymbolKind::W);
    let comm = commutator_symbol(a, b)?;
    let anti = anticommutator_symbol(a, b)?;
    let prod = moyal_exact(a, b)?;
    let (ga, gb) = (sa.expansion().gradient_operator(), sb.expansion().gradient_operator());
    let degree = 2 * lmax as usize;
    let grid = quadrature_grid(degree);
    let j_c = spin.j_c();
    let fold = |acc: Residuals, r: Residuals| Residuals {
        commutator: acc.commutator.max(r.commutator),
        anticommutator: acc.anticommutator.max(r.anticommutator),
        product: acc.product.max(r.product),
    };
    let zero = Residuals {
        commutator: 0.0,
        anticommutator: 0.0,
        product: 0.0,
    };
    let r = grid
        .nodes()
        .par_iter()
        .map(|&n| {
            let table = harmonic_table(lmax, n);
            let fa = sa.expansion().eval_with_table(&table);
            let fb = sb.expansion().eval_with_table(&table);
            let bracket = bracket_density(n, &ga.at_with_table(n, &table), &gb.at_with_table(n, &table)) / j_c;
            let i = Complex64::i();
            Residuals {
                commutator: (comm.expansion().eval_with_table(&table) - i * bracket).norm(),
                anticommutator: (anti.expansion().eval_with_table(&table) - 2.0 * fa * fb).norm(),
                product: (prod.expansion().eval_with_table(&table) - fa * fb - i * bracket / 2.0).norm(),
            }
        })
        .reduce(|| zero, fold);
    Ok((degree, r))
}

/// Runs the scan for operator expressions `op_a`, `op_b` at each spin.
pub fn bracket_scan(op_a: &str, op_b: &str, spins: &[Spin]) -> Result<ScalingStudy> {
    if spins.len() < MIN_SCAN_POINTS {
        return Err(Error::TooFewPoints {
            needed: MIN_SCAN_POINTS,
            got: spins.len(),
        });
    }
    let ea = parse_operator(op_a)?;
    let eb = parse_operator(op_b)?;
    let per_j: Vec<(usize, Residuals)> = spins
        .par_iter()
        .map(|&spin| {
            let scale = 1.0 / spin.j_c();
            residuals_at(&eval_scaled(&ea, spin, scale), &eval_scaled(&eb, spin, scale))
        })
        .collect::<Result<_>>()?;
    let j_values: Vec<f64> = spins.iter().map(|s| s.j()).collect();
    let column = |f: fn(&Residuals) -> f64| per_j.iter().map(|(_, r)| f(r)).collect::<Vec<_>>();
    let commutator_errors = column(|r| r.commutator);
    let anticommutator_errors = column(|r| r.anticommutator);
    let product_errors = column(|r| r.product);
    Ok(ScalingStudy {
        op_a: ea.to_string(),
        op_b: eb.to_string(),
        grid_degree: per_j.iter().map(|(d, _)| *d).collect(),
        commutator_slope: fit_loglog_slope(&j_values, &commutator_errors),
        anticommutator_slope: fit_loglog_slope(&j_values, &anticommutator_errors),
        product_slope: fit_loglog_slope(&j_values, &product_errors),
        j_values,
        commutator_errors,
        anticommutator_errors,
        product_errors,
    })
}

/// Unweighted least-squares slope of `ln y` against `ln x`.
pub fn fit_loglog_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 || x.iter().chain(y).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return None;
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
