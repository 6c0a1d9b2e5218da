//! P, Q and Weyl symbols of spin operators.
//!
//! Each kind maps `Y_lm(J)` to a multiple `a_jl Y_lm(n)` of the surface
//! harmonic, so a symbol is the operator's tensor expansion with every
//! degree-`l` coefficient rescaled by `a_jl`. The P symbol is fixed by
//! requiring no harmonics above `l = 2j`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::{harmonic_table, legendre_series, SphereExpansion, SphereGrid, SymbolField};
use crate::spin::{Direction, OperatorMatrix, Spin};
use crate::tensor::{decompose, TensorDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolKind {
    P,
    Q,
    W,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::P => "P",
            Self::Q => "Q",
            Self::W => "W",
        })
    }
}

impl FromStr for SymbolKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(Self::P),
            "Q" | "q" => Ok(Self::Q),
            "W" | "w" => Ok(Self::W),
            _ => Err(Error::Domain(format!("unknown symbol kind {s:?}"))),
        }
    }
}

/// `a^Q_jl = prod_{k=1..l} (j - (k-1)/2)`; zero for `l > 2j`.
pub fn coeff_a_q(spin: Spin, l: u32) -> f64 {
    let j = spin.j();
    (1..=l).map(|k| j - (k as f64 - 1.0) / 2.0).product()
}

/// `a^P_jl = prod_{k=1..l} (j + (k+1)/2)`.
pub fn coeff_a_p(spin: Spin, l: u32) -> f64 {
    let j = spin.j();
    (1..=l).map(|k| j + (k as f64 + 1.0) / 2.0).product()
}

/// `a^W_jl = prod_{k=1..l} sqrt((j+1/2)^2 - k^2/4)`; zero for `l > 2j`.
pub fn coeff_a_w(spin: Spin, l: u32) -> f64 {
    if l > spin.max_l() {
        return 0.0;
    }
    let h = spin.j() + 0.5;
    (1..=l).map(|k| (h * h - (k * k) as f64 / 4.0).sqrt()).product()
}

pub fn coeff_a(kind: SymbolKind, spin: Spin, l: i64) -> Result<f64> {
    if l < 0 {
        return Err(Error::Domain(format!("negative harmonic degree {l}")));
    }
    let l = l as u32;
    Ok(match kind {
        SymbolKind::P => coeff_a_p(spin, l),
        SymbolKind::Q => coeff_a_q(spin, l),
        SymbolKind::W => coeff_a_w(spin, l),
    })
}

/// `K_jl = (2l+1) [(2j)!]^2 / ((2j-l)! (2j+l+1)!)`, the Legendre coefficients
/// of `((1 + n.n')/2)^{2j}`, via the telescoping product
/// `(2l+1)/(2j+1) prod_{k=1..l} (2j-k+1)/(2j+k+1)`.
pub fn coeff_k(spin: Spin, l: u32) -> Result<f64> {
    if l > spin.max_l() {
        return Err(Error::Domain(format!("K_jl needs l <= 2j = {}, got {l}", spin.max_l())));
    }
    let n = spin.two_j() as f64;
    let prod: f64 = (1..=l).map(|k| (n - k as f64 + 1.0) / (n + k as f64 + 1.0)).product();
    Ok((2 * l + 1) as f64 / (n + 1.0) * prod)
}

/// Legendre coefficients of the Q-to-P kernel,
/// `(2l+1)(2j-l)!(2j+l+1)!/((2j)!(2j+1)!) = (2l+1)^2 / ((2j+1) K_jl)`.
pub fn inverse_kernel_coefficient(spin: Spin, l: u32) -> Result<f64> {
    let k = coeff_k(spin, l)?;
    let s = (2 * l + 1) as f64;
    Ok(s * s / (spin.dim() as f64 * k))
}

/// A symbol as an expansion over `Y_lm`, `l <= 2j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolCoefficients {
    spin: Spin,
    kind: SymbolKind,
    expansion: SphereExpansion,
}

impl SymbolCoefficients {
    pub fn new(spin: Spin, kind: SymbolKind, expansion: SphereExpansion) -> Result<Self> {
        if expansion.lmax() > spin.max_l() {
            return Err(Error::Domain(format!(
                "symbol expansion of degree {} exceeds 2j = {}",
                expansion.lmax(),
                spin.max_l()
            )));
        }
        Ok(Self {
            spin,
            kind,
            expansion,
        })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn expansion(&self) -> &SphereExpansion {
        &self.expansion
    }

    pub fn get(&self, l: u32, m: i32) -> Complex64 {
        self.expansion.get(l, m)
    }

    pub fn eval(&self, n: Direction) -> Complex64 {
        self.expansion.eval(n)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.expansion.max_abs_diff(&other.expansion)
    }

    /// Whether `conj(c_lm) = (-1)^m c_{l,-m}`, the condition for a real symbol.
    pub fn is_real_symbol(&self, tol: f64) -> bool {
        self.expansion.iter().all(|(l, m, c)| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            (c.conj() - self.expansion.get(l, -m) * sign).norm() <= tol
        })
    }
}

fn from_decomposition(d: &TensorDecomposition, kind: SymbolKind) -> SymbolCoefficients {
    let spin = d.spin();
    let expansion = SphereExpansion::from_coeffs(spin.max_l(), d.coeffs().to_vec())
        .expect("decomposition has (2j+1)^2 coefficients");
    let expansion = expansion.scale_by_degree(|l| match kind {
        SymbolKind::P => coeff_a_p(spin, l),
        SymbolKind::Q => coeff_a_q(spin, l),
        SymbolKind::W => coeff_a_w(spin, l),
    });
    SymbolCoefficients {
        spin,
        kind,
        expansion,
    }
}

/// Symbol of `A`: its tensor coefficients times `a^kind_jl`.
pub fn symbol_of(a: &OperatorMatrix, kind: SymbolKind) -> SymbolCoefficients {
    from_decomposition(&decompose(a), kind)
}

pub fn eval_symbol(s: &SymbolCoefficients, n: Direction) -> Complex64 {
    s.eval(n)
}

pub fn eval_on_grid<'g>(s: &SymbolCoefficients, grid: &'g SphereGrid) -> SymbolField<'g> {
    let lmax = s.expansion.lmax();
    grid.sample(|n| s.expansion.eval_with_table(&harmonic_table(lmax, n)))
}

/// Rescales degree-`l` coefficients by `a^to_jl / a^from_jl`.
pub fn convert(s: &SymbolCoefficients, to: SymbolKind) -> SymbolCoefficients {
    if s.kind == to {
        return s.clone();
    }
    let spin = s.spin;
    let a = |kind: SymbolKind, l: u32| coeff_a(kind, spin, l as i64).expect("l is nonnegative");
    let expansion = s.expansion.scale_by_degree(|l| a(to, l) / a(s.kind, l));
    SymbolCoefficients {
        spin,
        kind: to,
        expansion,
    }
}

fn require_conversion_grid(spin: Spin, grid: &SphereGrid) -> Result<()> {
    grid.require_degree(2 * spin.two_j() as usize)
}

/// P field to Q field: `(2j+1)/(4pi) int ((1 + n.n')/2)^{2j} f(n') dn'`.
pub fn smooth_p_to_q<'g>(spin: Spin, field: &SymbolField<'g>) -> Result<SymbolField<'g>> {
    let grid = field.grid();
    require_conversion_grid(spin, grid)?;
    let two_j = spin.two_j() as i32;
    let prefactor = spin.dim() as f64 / (4.0 * PI);
    let sources: Vec<_> = grid.nodes().iter().map(|n| n.unit_vector()).collect();
    Ok(grid.sample(|n| {
        let v = n.unit_vector();
        let sum: Complex64 = sources
            .iter()
            .zip(grid.weights())
            .zip(field.values())
            .map(|((s, w), f)| f * (w * (0.5 * (1.0 + v.dot(s))).powi(two_j)))
            .sum();
        sum * prefactor
    }))
}

/// Q field to P field: `(1/4pi) int G(n.n') f(n') dn'` with
/// `G = sum_{l <= 2j} g_l P_l` and `g_l` from [`inverse_kernel_coefficient`].
pub fn sharpen_q_to_p<'g>(spin: Spin, field: &SymbolField<'g>) -> Result<SymbolField<'g>> {
    let grid = field.grid();
    require_conversion_grid(spin, grid)?;
    let lmax = spin.max_l();
    let g: Vec<f64> = (0..=lmax)
        .map(|l| inverse_kernel_coefficient(spin, l))
        .collect::<Result<_>>()?;
    let sources: Vec<_> = grid.nodes().iter().map(|n| n.unit_vector()).collect();
    Ok(grid.sample(|n| {
        let v = n.unit_vector();
        let sum: Complex64 = sources
            .iter()
            .zip(grid.weights())
            .zip(field.values())
            .map(|((s, w), f)| {
                let p = legendre_series(lmax, v.dot(s).clamp(-1.0, 1.0));
                let kernel: f64 = g.iter().zip(&p).map(|(a, b)| a * b).sum();
                f * (w * kernel)
            })
            .sum();
        sum / (4.0 * PI)
    }))
}

/// Truncated large-`j` series for `a^P_jl / a^from_jl` in powers of `1/j`,
/// with the sphere Laplacian `L^2` replaced by `l(l+1)`. Supported sources
/// are Q and W; `order` is at most 3.
pub fn asymptotic_ratio(from: SymbolKind, to: SymbolKind, j: f64, l: u32, order: u32) -> Result<f64> {
    if order > 3 {
        return Err(Error::Domain(format!("series known to order 3, got {order}")));
    }
    let ll = (l * (l + 1)) as f64;
    let terms = match (from, to) {
        (SymbolKind::Q, SymbolKind::P) => [
            1.0,
            ll / 2.0,
            ll * (ll - 2.0) / 8.0,
            ll * (ll - 2.0) * (ll - 3.0) / 48.0,
        ],
        (SymbolKind::W, SymbolKind::P) => [
            1.0,
            ll / 4.0,
            ll * (ll - 4.0) / 32.0,
            ll * (ll * ll - 8.0 * ll + 24.0) / 384.0,
        ],
        _ => {
            return Err(Error::UnsupportedConversion {
                from: from.to_string(),
                to: to.to_string(),
            })
        }
    };
    Ok(terms
        .iter()
        .take(order as usize + 1)
        .enumerate()
        .map(|(k, t)| t / j.powi(k as i32))
        .sum())
}

/// Spin Wigner function: the Weyl symbol of a density matrix, sampled.
pub fn wigner_function<'g>(rho: &OperatorMatrix, grid: &'g SphereGrid) -> Result<SymbolField<'g>> {
    if !rho.is_hermitian(1e-10) {
        return Err(Error::Domain("density matrix is not Hermitian".into()));
    }
    if (rho.trace() - 1.0).norm() > 1e-10 {
        return Err(Error::Domain(format!("density matrix has trace {}", rho.trace())));
    }
    Ok(eval_on_grid(&symbol_of(rho, SymbolKind::W), grid))
}
