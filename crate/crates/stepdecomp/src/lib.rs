//! Decompose a smooth function `R(x1..xN)` on the nonnegative orthant
//! into `2^N` anchored integral terms — one per subset of the variables —
//! whose sum reproduces `R` at any point of the orthant.
//!
//! The pieces:
//!
//! * [`expr`] — expression parsing, evaluation, symbolic differentiation;
//! * [`heaviside`] — the exact unit step and its sigmoid smoothing family;
//! * [`quad`] — adaptive Gauss-Kronrod quadrature over intervals and boxes;
//! * [`decomp`] — term enumeration, evaluation, reconstruction, and the
//!   quadrature-free corner-sum oracle;
//! * [`cli`] — the `stepdecomp` command-line front end.
//!
//! ```
//! use stepdecomp::decomp::decompose;
//! use stepdecomp::expr::{parse, Point};
//! use stepdecomp::quad::QuadConfig;
//!
//! let r = parse("exp(x1+x2)", 2).unwrap();
//! let x = Point::new(vec![1.0, 1.0]).unwrap();
//! let d = decompose(&r, &x, &QuadConfig::default(), false).unwrap();
//! let direct = r.evaluate(&x).unwrap();
//! assert!((d.reconstruct() - direct).abs() < 1e-8);
//! ```

pub mod cli;
pub mod decomp;
pub mod expr;
pub mod heaviside;
pub mod quad;
mod subset;

pub use decomp::{
    anchored_difference_oracle, anchored_integrand, decompose, enumerate_subsets,
    smooth_term_value, term_value, verify_on_grid, DecompError, Decomposition, GridReport,
    TermResult, MAX_DIMENSION,
};
pub use expr::{
    differentiate, fd_mixed_partial, mixed_partial, parse, simplify, DiffError, EvalError, Expr,
    ParseError, Point,
};
pub use heaviside::{sigmoid, sigmoid_derivative, step, SigmoidParams};
pub use quad::{integrate_1d, integrate_nd, QuadConfig, QuadError, QuadResult};
pub use subset::{InvalidSubset, VarSubset};
