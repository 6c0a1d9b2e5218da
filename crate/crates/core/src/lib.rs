//! Phase-space symbols of spin operators.
//!
//! Operators on the spin-`j` space are expanded over the tensor operators
//! `Y_lm(J)`; their P, Q and Weyl symbols are the same expansions over
//! surface harmonics with degree-dependent rescalings. On top of that sit
//! the Stratonovich–Weyl kernel, the Moyal product and its Poisson-bracket
//! limit, and a small expression language for operators and states.

pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod expr;
pub mod moyal;
pub mod random;
pub mod sphere;
pub mod spin;
pub mod symbol;
pub mod tensor;

pub use error::{Error, Result};
pub use expr::{parse_operator, parse_state, OperatorExpr, ParseError, StateSpec};
pub use moyal::{bracket_scan, sw_kernel, ScalingStudy};
pub use sphere::{quadrature_grid, SphereExpansion, SphereGrid, SymbolField};
pub use spin::{Direction, OperatorMatrix, Spin, StateVector};
pub use symbol::{symbol_of, SymbolCoefficients, SymbolKind};
pub use tensor::{decompose, tensor_op, TensorBasis, TensorDecomposition};
