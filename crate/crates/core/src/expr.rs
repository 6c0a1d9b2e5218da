//! A small operator language for spin operators and a state-spec parser.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' INTEGER)?
//! atom  := NUMBER | NUMBER 'i' | 'i' | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers are `I`, `Jx`, `Jy`, `Jz`, `Jp` (raising) and `Jm` (lowering).
//! A complex constant `a+bi` is written as the sum of a real and an imaginary
//! literal. There is no implicit multiplication. Exponents are integers in
//! `0..=16`.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::random::{random_density, random_pure, rng};
use crate::spin::{coherent_ket, spin_matrices, Direction, OperatorMatrix, Spin, StateVector};

pub const MAX_EXPONENT: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Identity,
    Jx,
    Jy,
    Jz,
    Jp,
    Jm,
}

impl Generator {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "I" => Self::Identity,
            "Jx" => Self::Jx,
            "Jy" => Self::Jy,
            "Jz" => Self::Jz,
            "Jp" => Self::Jp,
            "Jm" => Self::Jm,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Self::Identity => "I",
            Self::Jx => "Jx",
            Self::Jy => "Jy",
            Self::Jz => "Jz",
            Self::Jp => "Jp",
            Self::Jm => "Jm",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OperatorExpr {
    Generator(Generator),
    Real(f64),
    Imag(f64),
    Neg(Box<OperatorExpr>),
    Add(Box<OperatorExpr>, Box<OperatorExpr>),
    Sub(Box<OperatorExpr>, Box<OperatorExpr>),
    Mul(Box<OperatorExpr>, Box<OperatorExpr>),
    Pow(Box<OperatorExpr>, u32),
}

impl OperatorExpr {
    fn precedence(&self) -> u8 {
        match self {
            Self::Add(..) | Self::Sub(..) => 1,
            Self::Mul(..) => 2,
            Self::Neg(_) => 3,
            Self::Pow(..) => 4,
            Self::Generator(_) | Self::Real(_) | Self::Imag(_) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, context: u8) -> fmt::Result {
        let wrap = self.precedence() < context;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Self::Generator(g) => f.write_str(g.name())?,
            Self::Real(x) => write!(f, "{x}")?,
            Self::Imag(y) if *y == 1.0 => f.write_str("i")?,
            Self::Imag(y) => write!(f, "{y}i")?,
            Self::Neg(e) => {
                f.write_str("-")?;
                e.write_at(f, 3)?;
            }
            Self::Add(a, b) | Self::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(if matches!(self, Self::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)?;
            }
            Self::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)?;
            }
            Self::Pow(base, k) => {
                base.write_at(f, 5)?;
                write!(f, "^{k}")?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Canonical form: minimal parentheses, spaces around `+` and `-` only.
impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(f64),
    Imag(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push((start, tok));
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            pos = scan_number(bytes, pos);
            let text = &src[start..pos];
            let value: f64 = text
                .parse()
                .map_err(|_| ParseError::new(start, format!("malformed number {text:?}")))?;
            if !value.is_finite() {
                return Err(ParseError::new(start, format!("number {text:?} is not finite")));
            }
            if pos < bytes.len() && bytes[pos] == b'i' && !continues_ident(bytes, pos + 1) {
                pos += 1;
                tokens.push((start, Token::Imag(value)));
            } else {
                tokens.push((start, Token::Number(value)));
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            tokens.push((start, Token::Ident(src[start..pos].to_string())));
            continue;
        }
        let ch = src[start..].chars().next().expect("start is a char boundary");
        return Err(ParseError::new(start, format!("unexpected character {ch:?}")));
    }
    Ok(tokens)
}

fn continues_ident(bytes: &[u8], pos: usize) -> bool {
    pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
}

fn scan_number(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.') {
        pos += 1;
    }
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        let mut look = pos + 1;
        if look < bytes.len() && (bytes[look] == b'+' || bytes[look] == b'-') {
            look += 1;
        }
        if look < bytes.len() && bytes[look].is_ascii_digit() {
            pos = look;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
        }
    }
    pos
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = OperatorExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = OperatorExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.bump();
            lhs = OperatorExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<OperatorExpr, ParseError> {
        if let Some(Token::Minus) = self.peek() {
            self.bump();
            return Ok(OperatorExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<OperatorExpr, ParseError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let at = self.offset();
            return match self.bump() {
                Some((_, Token::Number(k))) if k.fract() == 0.0 && k >= 0.0 => {
                    if k > MAX_EXPONENT as f64 {
                        Err(ParseError::new(at, format!("exponent {k} exceeds {MAX_EXPONENT}")))
                    } else {
                        Ok(OperatorExpr::Pow(Box::new(base), k as u32))
                    }
                }
                Some(_) => Err(ParseError::new(at, "exponent must be a nonnegative integer")),
                None => Err(ParseError::new(at, "expected exponent after '^'")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<OperatorExpr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some((_, Token::Number(x))) => Ok(OperatorExpr::Real(x)),
            Some((_, Token::Imag(y))) => Ok(OperatorExpr::Imag(y)),
            Some((_, Token::Ident(name))) => {
                if name == "i" {
                    return Ok(OperatorExpr::Imag(1.0));
                }
                Generator::from_name(&name)
                    .map(OperatorExpr::Generator)
                    .ok_or_else(|| ParseError::new(at, format!("unknown identifier {name:?}")))
            }
            Some((_, Token::LParen)) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some((_, Token::RParen)) => Ok(inner),
                    _ => Err(ParseError::new(close, "expected ')'")),
                }
            }
            Some((_, tok)) => Err(ParseError::new(at, format!("unexpected token {tok:?}"))),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }
}

pub fn parse_operator(src: &str) -> Result<OperatorExpr, ParseError> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: src.len(),
    };
    let e = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        let at = parser.offset();
        let tok = &parser.tokens[parser.pos].1;
        return Err(ParseError::new(at, format!("unexpected token {tok:?}")));
    }
    Ok(e)
}

pub fn eval_operator(e: &OperatorExpr, spin: Spin) -> OperatorMatrix {
    eval_scaled(e, spin, 1.0)
}

/// Evaluates with every generator `J_a` replaced by `scale * J_a`; the
/// identity and constants are unaffected. `scale = 1/j_c` gives the
/// normalized operators used in classical-limit studies.
pub fn eval_scaled(e: &OperatorExpr, spin: Spin, scale: f64) -> OperatorMatrix {
    let mats = spin_matrices(spin);
    eval_with(e, spin, scale, &mats)
}

fn eval_with(
    e: &OperatorExpr,
    spin: Spin,
    scale: f64,
    mats: &crate::spin::SpinMatrices,
) -> OperatorMatrix {
    let constant = |z: Complex64| OperatorMatrix::identity(spin).scale(z);
    let s = Complex64::new(scale, 0.0);
    match e {
        OperatorExpr::Generator(g) => match g {
            Generator::Identity => OperatorMatrix::identity(spin),
            Generator::Jx => mats.jx.scale(s),
            Generator::Jy => mats.jy.scale(s),
            Generator::Jz => mats.jz.scale(s),
            Generator::Jp => mats.jp.scale(s),
            Generator::Jm => mats.jm.scale(s),
        },
        OperatorExpr::Real(x) => constant(Complex64::new(*x, 0.0)),
        OperatorExpr::Imag(y) => constant(Complex64::new(0.0, *y)),
        OperatorExpr::Neg(a) => -&eval_with(a, spin, scale, mats),
        OperatorExpr::Add(a, b) => eval_with(a, spin, scale, mats) + eval_with(b, spin, scale, mats),
        OperatorExpr::Sub(a, b) => eval_with(a, spin, scale, mats) - eval_with(b, spin, scale, mats),
        OperatorExpr::Mul(a, b) => eval_with(a, spin, scale, mats) * eval_with(b, spin, scale, mats),
        OperatorExpr::Pow(a, k) => eval_with(a, spin, scale, mats).pow(*k),
    }
}

/// How a density matrix is specified on the command line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateSpec {
    /// `|j,m>` with `m` stored as `2m`.
    Ket { two_m: i32 },
    Coherent { theta: f64, phi: f64 },
    Mixed,
    RandomPure { seed: u64 },
    RandomDensity { seed: u64 },
}

impl StateSpec {
    /// Parses `ket:M`, `coherent:THETA,PHI`, `mixed`, `random_pure:SEED`
    /// or `random_density:SEED`. `M` is an integer or `n/2`.
    pub fn parse(src: &str) -> Result<Self> {
        let src = src.trim();
        let (kind, arg) = match src.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (src, None),
        };
        let need = || {
            arg.filter(|s| !s.is_empty())
                .ok_or_else(|| Error::State(format!("{kind:?} needs an argument")))
        };
        let seed = || -> Result<u64> {
            let a = need()?;
            a.parse().map_err(|_| Error::State(format!("invalid seed {a:?}")))
        };
        match kind {
            "mixed" if arg.is_none() => Ok(Self::Mixed),
            "ket" => {
                let a = need()?;
                Ok(Self::Ket {
                    two_m: parse_half_integer(a)?,
                })
            }
            "coherent" => {
                let a = need()?;
                let (t, p) = a
                    .split_once(',')
                    .ok_or_else(|| Error::State(format!("expected THETA,PHI, got {a:?}")))?;
                let num = |s: &str| -> Result<f64> {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::State(format!("invalid angle {s:?}")))
                };
                Ok(Self::Coherent {
                    theta: num(t)?,
                    phi: num(p)?,
                })
            }
            "random_pure" => Ok(Self::RandomPure { seed: seed()? }),
            "random_density" => Ok(Self::RandomDensity { seed: seed()? }),
            _ => Err(Error::State(format!("unrecognized state spec {src:?}"))),
        }
    }

    pub fn density(&self, spin: Spin) -> Result<OperatorMatrix> {
        Ok(match *self {
            Self::Ket { two_m } => {
                if two_m.unsigned_abs() > spin.two_j() {
                    return Err(Error::State(format!(
                        "|m| = {}/2 exceeds j = {spin}",
                        two_m.abs()
                    )));
                }
                StateVector::basis(spin, two_m)
                    .map_err(|_| Error::State(format!("m = {two_m}/2 has the wrong parity for j = {spin}")))?
                    .projector()
            }
            Self::Coherent { theta, phi } => {
                let n = Direction::new(theta, phi).map_err(|e| Error::State(e.to_string()))?;
                coherent_ket(spin, n).projector()
            }
            Self::Mixed => {
                OperatorMatrix::identity(spin).scale(Complex64::new(1.0 / spin.dim() as f64, 0.0))
            }
            Self::RandomPure { seed } => random_pure(spin, &mut rng(seed)).projector(),
            Self::RandomDensity { seed } => random_density(spin, &mut rng(seed)),
        })
    }
}

fn parse_half_integer(s: &str) -> Result<i32> {
    let bad = || Error::State(format!("invalid projection {s:?}: expected an integer or n/2"));
    match s.split_once('/') {
        None => s.parse::<i32>().ok().and_then(|m| m.checked_mul(2)).ok_or_else(bad),
        Some((num, "2")) => num.trim().parse().map_err(|_| bad()),
        Some(_) => Err(bad()),
    }
}

/// Parses a state spec and returns its density matrix.
pub fn parse_state(src: &str, spin: Spin) -> Result<OperatorMatrix> {
    StateSpec::parse(src)?.density(spin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(s: &str) -> OperatorExpr {
        parse_operator(s).unwrap_or_else(|e| panic!("{s:?}: {e}"))
    }

    #[test]
    fn identity_node() {
        assert_eq!(parse("I"), OperatorExpr::Generator(Generator::Identity));
    }

    #[test]
    fn precedence() {
        use OperatorExpr::*;
        let jz = || Box::new(Generator(super::Generator::Jz));
        let jx = || Box::new(Generator(super::Generator::Jx));
        assert_eq!(parse("Jz + Jx*Jx"), Add(jz(), Box::new(Mul(jx(), jx()))));
        assert_eq!(parse("-Jz^2"), Neg(Box::new(Pow(jz(), 2))));
        assert_eq!(parse("Jz - Jx - Jz"), Sub(Box::new(Sub(jz(), jx())), jz()));
        assert_eq!(parse("2*-Jx"), Mul(Box::new(Real(2.0)), Box::new(Neg(jx()))));
        assert_eq!(parse(" ( Jz ) "), Generator(super::Generator::Jz));
        assert_eq!(parse("1+2i"), Add(Box::new(Real(1.0)), Box::new(Imag(2.0))));
        assert_eq!(parse("i*Jz"), Mul(Box::new(Imag(1.0)), jz()));
        assert_eq!(parse("1.5e-1*Jz"), Mul(Box::new(Real(0.15)), jz()));
    }

    #[test]
    fn commutator_evaluates_to_i_jz() {
        let e = parse("Jx*Jy - Jy*Jx");
        for two_j in 0..=8 {
            let s = Spin::from_two_j(two_j);
            let jz = spin_matrices(s).jz;
            let err = eval_operator(&e, s).max_abs_diff(&jz.scale(Complex64::i()));
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn evaluation_examples() {
        let s = Spin::from_two_j(2);
        let sq = eval_operator(&parse("Jz^2"), s);
        for (i, d) in [1.0, 0.0, 1.0].iter().enumerate() {
            assert_eq!(sq.get(i, i), Complex64::new(*d, 0.0));
        }
        for two_j in 0..=6 {
            let s = Spin::from_two_j(two_j);
            let j = s.j();
            let cas = eval_operator(&parse("Jp*Jm + Jm*Jp + 2*Jz^2"), s);
            let expected = OperatorMatrix::identity(s).scale((2.0 * j * (j + 1.0)).into());
            assert!(cas.max_abs_diff(&expected) < 1e-12);
            let jx = eval_operator(&parse("0.5*(Jp+Jm)"), s);
            assert!(jx.max_abs_diff(&spin_matrices(s).jx) < 1e-15);
        }
        let hermitian = eval_operator(&parse("Jp"), Spin::from_two_j(3));
        assert!(!hermitian.is_hermitian(1e-12));
    }

    #[test]
    fn scaled_evaluation() {
        let s = Spin::from_two_j(4);
        let e = parse("Jz + 3");
        let m = eval_scaled(&e, s, 0.5);
        assert_eq!(m.get(0, 0), Complex64::new(2.0 * 0.5 + 3.0, 0.0));
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("Jz + Kx", 5, "unknown identifier"),
            ("Jz +", 4, "unexpected end"),
            ("(Jz", 3, "expected ')'"),
            ("Jz^17", 3, "exceeds"),
            ("Jz^1.5", 3, "nonnegative integer"),
            ("Jz Jx", 3, "unexpected token"),
            ("Jz # 2", 3, "unexpected character"),
            ("Jz^", 3, "expected exponent"),
            ("1..2", 0, "malformed number"),
            ("Jzé", 2, "unexpected character"),
        ];
        for (src, offset, fragment) in cases {
            let err = parse_operator(src).unwrap_err();
            assert_eq!(err.offset, offset, "{src:?}: {err}");
            assert!(err.message.contains(fragment), "{src:?}: {err}");
        }
    }

    #[test]
    fn canonical_printing() {
        for (src, canon) in [
            ("Jx*Jy-Jy*Jx", "Jx*Jy - Jy*Jx"),
            ("(Jx+Jy)*Jz", "(Jx + Jy)*Jz"),
            ("Jx-(Jy-Jz)", "Jx - (Jy - Jz)"),
            ("-(Jx*Jy)", "-(Jx*Jy)"),
            ("(-Jx)^2", "(-Jx)^2"),
            ("(Jx^2)^3", "(Jx^2)^3"),
            ("0.5 * ( Jp + Jm )", "0.5*(Jp + Jm)"),
            ("i", "i"),
            ("2.5i*Jz", "2.5i*Jz"),
        ] {
            let e = parse(src);
            assert_eq!(e.to_string(), canon);
            assert_eq!(parse(&e.to_string()), e);
        }
    }

    #[test]
    fn state_specs() {
        let s = Spin::from_two_j(3);
        let mixed = parse_state("mixed", s).unwrap();
        assert!(mixed.max_abs_diff(&OperatorMatrix::identity(s).scale(0.25.into())) < 1e-15);
        let north = parse_state("coherent:0,0", s).unwrap();
        let top = StateVector::basis(s, 3).unwrap().projector();
        assert!(north.max_abs_diff(&top) < 1e-15);
        let a = parse_state("random_density:42", s).unwrap();
        let b = parse_state("random_density:42", s).unwrap();
        assert_eq!(a, b);
        let ket = parse_state("ket:-1/2", s).unwrap();
        assert_eq!(ket.get(2, 2), Complex64::new(1.0, 0.0));
        for spec in ["ket:5/2", "ket:1", "ket:", "coherent:1", "coherent:4,0", "foo", "random_pure:x"] {
            assert!(parse_state(spec, s).is_err(), "{spec}");
        }
    }

    #[test]
    fn states_are_valid_densities() {
        for two_j in 0..=6 {
            let s = Spin::from_two_j(two_j);
            for spec in ["mixed", "coherent:0.3,1.1", "random_density:7", "random_pure:9", "ket:0"] {
                let Ok(rho) = parse_state(spec, s) else {
                    // ket:0 is invalid for half-integer spin
                    assert!(two_j % 2 == 1 && spec == "ket:0");
                    continue;
                };
                assert!(rho.is_hermitian(1e-14));
                assert!((rho.trace() - 1.0).norm() < 1e-12);
                assert!(rho.hermitian_eigenvalues()[0] >= -1e-12, "{spec}");
            }
        }
    }

    fn arb_expr() -> impl Strategy<Value = OperatorExpr> {
        let leaf = prop_oneof![
            prop::sample::select(vec![
                Generator::Identity,
                Generator::Jx,
                Generator::Jy,
                Generator::Jz,
                Generator::Jp,
                Generator::Jm
            ])
            .prop_map(OperatorExpr::Generator),
            (0.0f64..100.0).prop_map(OperatorExpr::Real),
            (0.0f64..100.0).prop_map(OperatorExpr::Imag),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| OperatorExpr::Neg(Box::new(e))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| OperatorExpr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| OperatorExpr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| OperatorExpr::Mul(Box::new(a), Box::new(b))),
                (inner, 0u32..4).prop_map(|(a, k)| OperatorExpr::Pow(Box::new(a), k)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            let back = parse_operator(&printed).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(back.to_string(), printed);
        }

        #[test]
        fn random_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..64)) {
            let src = String::from_utf8_lossy(&bytes);
            if let Err(e) = parse_operator(&src) {
                prop_assert!(e.offset <= src.len());
            }
        }

        #[test]
        fn random_ascii_never_panics(src in "[-+*^() .0-9eiIJxyzpm]{0,40}") {
            if let Err(e) = parse_operator(&src) {
                prop_assert!(e.offset <= src.len());
            }
        }
    }
}
