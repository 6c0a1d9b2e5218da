use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;
use spinweyl::SymbolField;

use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance block embedded in every output.
#[derive(Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub grid_degree: Value,
}

impl Meta {
    pub fn new(grid_degree: impl Into<Value>) -> Self {
        Self {
            tool: "spinweyl",
            version: VERSION,
            command: command_line(),
            grid_degree: grid_degree.into(),
        }
    }
}

/// The invocation as typed, with the program path reduced to its name.
fn command_line() -> String {
    let mut args = std::env::args();
    let mut parts = vec!["spinweyl".to_string()];
    args.next();
    parts.extend(args.map(|a| {
        if a.is_empty() || a.contains(|c: char| c.is_whitespace() || c == '\'' || c == '"') {
            format!("'{}'", a.replace('\'', r"'\''"))
        } else {
            a
        }
    }));
    parts.join(" ")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

/// `theta,phi,re,im` rows at 17 significant digits, after `# key: value`
/// header lines.
pub fn field_csv(meta: &Meta, extra: &[(&str, String)], field: &SymbolField<'_>) -> String {
    let mut out = String::new();
    writeln!(out, "# tool: {}", meta.tool).unwrap();
    writeln!(out, "# version: {}", meta.version).unwrap();
    writeln!(out, "# command: {}", meta.command).unwrap();
    writeln!(out, "# grid_degree: {}", meta.grid_degree).unwrap();
    for (k, v) in extra {
        writeln!(out, "# {k}: {v}").unwrap();
    }
    out.push_str("theta,phi,re,im\n");
    for (n, v) in field.grid().nodes().iter().zip(field.values()) {
        writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", n.theta(), n.phi(), v.re, v.im).unwrap();
    }
    out
}

#[derive(Debug, Serialize)]
pub struct Point {
    pub theta: f64,
    pub phi: f64,
    pub re: f64,
    pub im: f64,
}

pub fn field_points(field: &SymbolField<'_>) -> Vec<Point> {
    field
        .grid()
        .nodes()
        .iter()
        .zip(field.values())
        .map(|(n, v)| Point {
            theta: n.theta(),
            phi: n.phi(),
            re: v.re,
            im: v.im,
        })
        .collect()
}

/// Writes to `--out`, else to `$OUTPUT_DIR/<default_name>`, else stdout.
pub fn emit(content: &str, out: Option<PathBuf>, default_name: &str) -> CliResult<()> {
    let path = out.or_else(|| {
        std::env::var_os("OUTPUT_DIR")
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(default_name))
    });
    match path {
        Some(path) => fs::write(&path, content).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
