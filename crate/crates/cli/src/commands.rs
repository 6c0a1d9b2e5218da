use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;
use spinweyl::expr::eval_operator;
use spinweyl::moyal::bracket_scan;
use spinweyl::symbol::{coeff_a_p, coeff_a_q, coeff_a_w, coeff_k, eval_on_grid, wigner_function};
use spinweyl::{
    parse_operator, parse_state, sw_kernel, symbol_of, Direction, SphereGrid, Spin, SymbolKind,
};

use crate::error::{CliError, CliResult};
use crate::output::{emit, field_csv, field_points, to_json, Meta};

fn parse_spin(s: &str) -> Result<Spin, String> {
    s.parse().map_err(|e: spinweyl::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<SymbolKind, String> {
    s.parse().map_err(|e: spinweyl::Error| e.to_string())
}

/// `NTHETAxNPHI`, e.g. `6x10`.
fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NTHETAxNPHI, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid node count {t:?}"));
    Ok((n(a)?, n(b)?))
}

/// `THETA,PHI` in radians.
fn parse_dir(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected THETA,PHI, got {s:?}"))?;
    let x = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("invalid angle {t:?}"));
    Ok((x(a)?, x(b)?))
}

fn operator_error(src: &str, e: spinweyl::ParseError) -> CliError {
    let caret = " ".repeat(e.offset.min(src.len())) + "^";
    CliError::Usage(format!("{e}\n  {src}\n  {caret}"))
}

/// Explicit `--grid`, else the default that integrates degree-`4j` products exactly.
fn grid_for(spin: Spin, grid: Option<(usize, usize)>) -> CliResult<SphereGrid> {
    match grid {
        Some((nt, np)) => Ok(SphereGrid::with_counts(nt, np)?),
        None => Ok(spinweyl::quadrature_grid(2 * spin.two_j() as usize)),
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// Spin, as "n" or "n/2".
    #[arg(long, value_parser = parse_spin)]
    j: Spin,
    /// Largest harmonic degree l to tabulate.
    #[arg(long)]
    max_l: u32,
    /// Allow l > 2j; K is then reported as null.
    #[arg(long)]
    allow_truncated: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct CoeffRow {
    l: u32,
    #[serde(rename = "aP")]
    a_p: f64,
    #[serde(rename = "aQ")]
    a_q: f64,
    #[serde(rename = "aW")]
    a_w: f64,
    #[serde(rename = "K")]
    k: Option<f64>,
}

pub fn coeffs(args: CoeffsArgs) -> CliResult<()> {
    let spin = args.j;
    if args.max_l > spin.max_l() && !args.allow_truncated {
        return Err(CliError::Usage(format!(
            "--max-l {} exceeds 2j = {}; pass --allow-truncated to tabulate anyway",
            args.max_l,
            spin.max_l()
        )));
    }
    let rows: Vec<CoeffRow> = (0..=args.max_l)
        .map(|l| CoeffRow {
            l,
            a_p: coeff_a_p(spin, l),
            a_q: coeff_a_q(spin, l),
            a_w: coeff_a_w(spin, l),
            k: coeff_k(spin, l).ok(),
        })
        .collect();
    let doc = json!({
        "meta": Meta::new(serde_json::Value::Null),
        "j": spin.to_string(),
        "rows": rows,
    });
    emit(&to_json(&doc), args.out, "coeffs.json")
}

#[derive(Debug, Args)]
pub struct SymbolArgs {
    #[arg(long, value_parser = parse_spin)]
    j: Spin,
    /// Operator expression, e.g. "Jz", "Jx*Jz", "0.5*(Jp+Jm)", "Jz^2 + 2i*Jx".
    #[arg(long)]
    op: String,
    /// Symbol kind: P, Q or W.
    #[arg(long, default_value = "W", value_parser = parse_kind)]
    kind: SymbolKind,
    /// Sampling grid NTHETAxNPHI [default: (2j+2)x(4j+2)].
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn symbol(args: SymbolArgs) -> CliResult<()> {
    let spin = args.j;
    let expr = parse_operator(&args.op).map_err(|e| operator_error(&args.op, e))?;
    let grid = grid_for(spin, args.grid)?;
    let sym = symbol_of(&eval_operator(&expr, spin), args.kind);
    let field = eval_on_grid(&sym, &grid);
    let meta = Meta::new(grid.exact_degree());
    let content = match args.format {
        Format::Csv => field_csv(
            &meta,
            &[
                ("j", spin.to_string()),
                ("kind", args.kind.to_string()),
                ("op", expr.to_string()),
                ("grid", format!("{}x{}", grid.n_theta(), grid.n_phi())),
            ],
            &field,
        ),
        Format::Json => to_json(&json!({
            "meta": meta,
            "j": spin.to_string(),
            "kind": args.kind.to_string(),
            "op": expr.to_string(),
            "grid": {"n_theta": grid.n_theta(), "n_phi": grid.n_phi()},
            "points": field_points(&field),
        })),
    };
    emit(&content, args.out, &format!("symbol.{}", args.format.extension()))
}

#[derive(Debug, Args)]
pub struct WignerArgs {
    #[arg(long, value_parser = parse_spin)]
    j: Spin,
    /// State: "ket:M", "coherent:THETA,PHI", "mixed", "random_pure:SEED" or
    /// "random_density:SEED". M is an integer or "n/2".
    #[arg(long)]
    state: String,
    /// Sampling grid NTHETAxNPHI, exact to degree >= 2j [default: (2j+2)x(4j+2)].
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn wigner(args: WignerArgs) -> CliResult<()> {
    let spin = args.j;
    let rho = parse_state(&args.state, spin)?;
    let grid = grid_for(spin, args.grid)?;
    // the mean is a quadrature of a degree-2j function
    grid.require_degree(spin.two_j() as usize)?;
    let field = wigner_function(&rho, &grid)?;
    let mean = field.average().re;
    let min = field.values().iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    let negative = min < 0.0;
    let meta = Meta::new(grid.exact_degree());
    let content = match args.format {
        Format::Csv => field_csv(
            &meta,
            &[
                ("j", spin.to_string()),
                ("state", args.state.clone()),
                ("grid", format!("{}x{}", grid.n_theta(), grid.n_phi())),
                ("mean", format!("{mean:.16e}")),
                ("min", format!("{min:.16e}")),
                ("negative", negative.to_string()),
            ],
            &field,
        ),
        Format::Json => to_json(&json!({
            "meta": meta,
            "j": spin.to_string(),
            "state": args.state,
            "grid": {"n_theta": grid.n_theta(), "n_phi": grid.n_phi()},
            "mean": mean,
            "min": min,
            "negative": negative,
            "points": field_points(&field),
        })),
    };
    emit(&content, args.out, &format!("wigner.{}", args.format.extension()))
}

#[derive(Debug, Args)]
pub struct MoyalScanArgs {
    /// First operator. Generators are replaced by J/j_c, j_c = sqrt(j(j+1)),
    /// so the symbols have finite large-j limits.
    #[arg(long = "opA", visible_alias = "op-a")]
    op_a: String,
    /// Second operator, normalized the same way.
    #[arg(long = "opB", visible_alias = "op-b")]
    op_b: String,
    /// Comma-separated spins, at least three, e.g. "4,8,16,32".
    #[arg(long, value_delimiter = ',', value_parser = parse_spin, required = true)]
    j_list: Vec<Spin>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn moyal_scan(args: MoyalScanArgs) -> CliResult<()> {
    for src in [&args.op_a, &args.op_b] {
        parse_operator(src).map_err(|e| operator_error(src, e))?;
    }
    let study = bracket_scan(&args.op_a, &args.op_b, &args.j_list)?;
    let doc = json!({
        "meta": Meta::new(study.grid_degree.clone()),
        "normalization": "J -> J/j_c",
        "study": study,
    });
    emit(&to_json(&doc), args.out, "moyal-scan.json")
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_parser = parse_spin)]
    j: Spin,
    /// Direction THETA,PHI in radians, theta in [0, pi], phi in [0, 2pi).
    #[arg(long, value_parser = parse_dir, allow_hyphen_values = true)]
    dir: (f64, f64),
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Entry {
    re: f64,
    im: f64,
}

impl From<Complex64> for Entry {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

pub fn kernel(args: KernelArgs) -> CliResult<()> {
    let spin = args.j;
    let (theta, phi) = args.dir;
    let n = Direction::new(theta, phi)?;
    let delta = sw_kernel(spin, n);
    if !delta.is_hermitian(1e-10) {
        return Err(CliError::Numerical("kernel matrix is not Hermitian".into()));
    }
    let dim = spin.dim();
    let matrix: Vec<Vec<Entry>> = (0..dim)
        .map(|r| (0..dim).map(|c| delta.get(r, c).into()).collect())
        .collect();
    let doc = json!({
        "meta": Meta::new(serde_json::Value::Null),
        "j": spin.to_string(),
        "direction": {"theta": theta, "phi": phi},
        "trace": Entry::from(delta.trace()),
        "hermitian": true,
        "matrix": matrix,
    });
    emit(&to_json(&doc), args.out, "kernel.json")
}
