//! Expression trees over the variables `x1..xN`: parsing, evaluation,
//! symbolic differentiation and a small fixed-rule simplifier.
//!
//! Trees are immutable after construction (children are shared behind
//! [`Arc`]), so an [`Expr`] can be evaluated from many threads at once.
//! Every operation in this module is a pure function of its inputs.
//!
//! Inputs are expected to be built from the smooth primitive set
//! (`sin`, `cos`, `exp`, `log`, `sqrt`, arithmetic); differentiating and
//! then substituting is exact for those primitives. Whether a particular
//! expression keeps its derivatives continuous on the nonnegative orthant
//! (e.g. `sqrt(x1)` does not) is a caller obligation — it cannot be
//! checked mechanically here.

mod deriv;
mod parser;
mod simplify;

pub use deriv::{differentiate, fd_mixed_partial, mixed_partial, DiffError};
pub use parser::{parse, ParseError};
pub use simplify::simplify;

use std::fmt;
use std::sync::Arc;

/// Shared handle to a subtree.
pub type ExprRef = Arc<Expr>;

/// Built-in unary function applied with mandatory parentheses, e.g. `sin(x1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    /// Natural logarithm.
    Log,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

/// Abstract syntax tree of a real-valued expression.
///
/// Variable indices are 1-based (`Var(1)` is `x1`). The declared variable
/// count is a property of [`parse`], not of the tree itself; use
/// [`Expr::max_var_index`] to recover the largest index actually present.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(usize),
    Unary(UnaryOp, ExprRef),
    Binary(BinOp, ExprRef, ExprRef),
    Call(Func, ExprRef),
}

// Constructor names mirror the node kinds; they are not operator impls.
#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn constant(value: f64) -> Expr {
        Expr::Const(value)
    }

    /// 1-based variable. Panics if `index` is 0.
    pub fn var(index: usize) -> Expr {
        assert!(index >= 1, "variable indices are 1-based");
        Expr::Var(index)
    }

    pub fn neg(child: Expr) -> Expr {
        Expr::Unary(UnaryOp::Neg, Arc::new(child))
    }

    pub fn add(left: Expr, right: Expr) -> Expr {
        Expr::Binary(BinOp::Add, Arc::new(left), Arc::new(right))
    }

    pub fn sub(left: Expr, right: Expr) -> Expr {
        Expr::Binary(BinOp::Sub, Arc::new(left), Arc::new(right))
    }

    pub fn mul(left: Expr, right: Expr) -> Expr {
        Expr::Binary(BinOp::Mul, Arc::new(left), Arc::new(right))
    }

    pub fn div(left: Expr, right: Expr) -> Expr {
        Expr::Binary(BinOp::Div, Arc::new(left), Arc::new(right))
    }

    pub fn pow(base: Expr, exponent: Expr) -> Expr {
        Expr::Binary(BinOp::Pow, Arc::new(base), Arc::new(exponent))
    }

    pub fn call(func: Func, child: Expr) -> Expr {
        Expr::Call(func, Arc::new(child))
    }

    pub fn sin(child: Expr) -> Expr {
        Expr::call(Func::Sin, child)
    }

    pub fn cos(child: Expr) -> Expr {
        Expr::call(Func::Cos, child)
    }

    pub fn exp(child: Expr) -> Expr {
        Expr::call(Func::Exp, child)
    }

    pub fn log(child: Expr) -> Expr {
        Expr::call(Func::Log, child)
    }

    pub fn sqrt(child: Expr) -> Expr {
        Expr::call(Func::Sqrt, child)
    }

    /// Largest variable index appearing in the tree (0 for constants).
    pub fn max_var_index(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => *i,
            Expr::Unary(_, c) | Expr::Call(_, c) => c.max_var_index(),
            Expr::Binary(_, l, r) => l.max_var_index().max(r.max_var_index()),
        }
    }

    /// Replaces every occurrence of variable `var` with the constant `value`.
    pub fn substitute(&self, var: usize, value: f64) -> Expr {
        fn subst(e: &Expr, var: usize, value: f64) -> ExprRef {
            match e {
                Expr::Const(_) => Arc::new(e.clone()),
                Expr::Var(i) => Arc::new(if *i == var {
                    Expr::Const(value)
                } else {
                    e.clone()
                }),
                Expr::Unary(op, c) => Arc::new(Expr::Unary(*op, subst(c, var, value))),
                Expr::Binary(op, l, r) => {
                    Arc::new(Expr::Binary(*op, subst(l, var, value), subst(r, var, value)))
                }
                Expr::Call(f, c) => Arc::new(Expr::Call(*f, subst(c, var, value))),
            }
        }
        subst(self, var, value).as_ref().clone()
    }

    /// Evaluates at a validated point of the nonnegative orthant.
    pub fn evaluate(&self, point: &Point) -> Result<f64, EvalError> {
        self.eval_coords(point.coords())
    }

    /// Evaluates at raw coordinates.
    ///
    /// Unlike [`Expr::evaluate`] this places no sign restriction on the
    /// coordinates; it is the entry point used by quadrature kernels and
    /// finite-difference stencils that probe off-orthant points.
    pub fn eval_coords(&self, coords: &[f64]) -> Result<f64, EvalError> {
        match self {
            Expr::Const(c) => Ok(*c),
            Expr::Var(i) => coords.get(*i - 1).copied().ok_or(EvalError::MissingCoordinate {
                index: *i,
                dims: coords.len(),
            }),
            Expr::Unary(UnaryOp::Neg, c) => Ok(-c.eval_coords(coords)?),
            Expr::Binary(op, l, r) => {
                let a = l.eval_coords(coords)?;
                let b = r.eval_coords(coords)?;
                match op {
                    BinOp::Add => Ok(a + b),
                    BinOp::Sub => Ok(a - b),
                    BinOp::Mul => Ok(a * b),
                    BinOp::Div => {
                        if b == 0.0 {
                            Err(EvalError::DivisionByZero {
                                node: self.to_string(),
                            })
                        } else {
                            Ok(a / b)
                        }
                    }
                    BinOp::Pow => {
                        let zero_to_negative = a == 0.0 && b < 0.0;
                        let negative_to_fractional = a < 0.0 && b.fract() != 0.0;
                        if zero_to_negative || negative_to_fractional {
                            Err(EvalError::PowDomain {
                                node: self.to_string(),
                                base: a,
                                exponent: b,
                            })
                        } else {
                            Ok(a.powf(b))
                        }
                    }
                }
            }
            Expr::Call(f, c) => {
                let v = c.eval_coords(coords)?;
                match f {
                    Func::Sin => Ok(v.sin()),
                    Func::Cos => Ok(v.cos()),
                    Func::Exp => Ok(v.exp()),
                    Func::Log => {
                        if v <= 0.0 {
                            Err(EvalError::LogNonpositive {
                                node: self.to_string(),
                                arg: v,
                            })
                        } else {
                            Ok(v.ln())
                        }
                    }
                    Func::Sqrt => {
                        if v < 0.0 {
                            Err(EvalError::SqrtNegative {
                                node: self.to_string(),
                                arg: v,
                            })
                        } else {
                            Ok(v.sqrt())
                        }
                    }
                }
            }
        }
    }
}

// Printing precedence. Negative constants render with a leading '-', so in
// operator position they bind like a unary minus.
fn display_prec(e: &Expr) -> u8 {
    match e {
        Expr::Const(c) if c.is_sign_negative() => 3,
        Expr::Const(_) | Expr::Var(_) | Expr::Call(_, _) => 6,
        Expr::Unary(_, _) => 3,
        Expr::Binary(BinOp::Add | BinOp::Sub, _, _) => 1,
        Expr::Binary(BinOp::Mul | BinOp::Div, _, _) => 2,
        Expr::Binary(BinOp::Pow, _, _) => 4,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, needs_paren: bool) -> fmt::Result {
            if needs_paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Unary(UnaryOp::Neg, c) => {
                write!(f, "-")?;
                child(f, c, display_prec(c) < 3)
            }
            Expr::Binary(op, l, r) => {
                let p = display_prec(self);
                // '^' is right-associative, everything else left-associative.
                let (lmin, rmin) = match op {
                    BinOp::Pow => (p + 1, p),
                    _ => (p, p + 1),
                };
                child(f, l, display_prec(l) < lmin)?;
                write!(f, "{}", op.symbol())?;
                child(f, r, display_prec(r) < rmin)
            }
            Expr::Call(func, c) => write!(f, "{}({c})", func.name()),
        }
    }
}

/// Evaluation failure at a concrete point.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    MissingCoordinate { index: usize, dims: usize },
    DivisionByZero { node: String },
    LogNonpositive { node: String, arg: f64 },
    SqrtNegative { node: String, arg: f64 },
    PowDomain { node: String, base: f64, exponent: f64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::MissingCoordinate { index, dims } => {
                write!(f, "variable x{index} needs a coordinate but the point has {dims}")
            }
            EvalError::DivisionByZero { node } => write!(f, "division by zero in `{node}`"),
            EvalError::LogNonpositive { node, arg } => {
                write!(f, "log of nonpositive value {arg} in `{node}`")
            }
            EvalError::SqrtNegative { node, arg } => {
                write!(f, "sqrt of negative value {arg} in `{node}`")
            }
            EvalError::PowDomain { node, base, exponent } => {
                write!(f, "{base}^{exponent} is outside the real domain in `{node}`")
            }
        }
    }
}

impl std::error::Error for EvalError {}

/// A point of the nonnegative orthant: every coordinate finite and >= 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

/// Rejected coordinate when constructing a [`Point`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointError {
    pub index: usize,
    pub value: f64,
}

impl fmt::Display for PointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coordinate {} is {} (must be finite and >= 0)",
            self.index, self.value
        )
    }
}

impl std::error::Error for PointError {}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Point, PointError> {
        for (i, &v) in coords.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(PointError { index: i + 1, value: v });
            }
        }
        Ok(Point { coords })
    }

    pub fn origin(dim: usize) -> Point {
        Point {
            coords: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn evaluates_product() {
        let e = Expr::mul(Expr::var(1), Expr::var(2));
        assert_eq!(e.evaluate(&pt(&[2.0, 3.0])).unwrap(), 6.0);
    }

    #[test]
    fn evaluates_exp_at_origin() {
        let e = Expr::exp(Expr::var(1));
        assert_eq!(e.evaluate(&pt(&[0.0])).unwrap(), 1.0);
    }

    #[test]
    fn log_of_zero_is_domain_error() {
        let e = Expr::log(Expr::var(1));
        match e.evaluate(&pt(&[0.0])) {
            Err(EvalError::LogNonpositive { arg, .. }) => assert_eq!(arg, 0.0),
            other => panic!("expected log domain error, got {other:?}"),
        }
    }

    #[test]
    fn division_by_zero_names_node() {
        let e = Expr::div(Expr::constant(1.0), Expr::var(1));
        match e.evaluate(&pt(&[0.0])) {
            Err(EvalError::DivisionByZero { node }) => assert_eq!(node, "1/x1"),
            other => panic!("expected division error, got {other:?}"),
        }
    }

    #[test]
    fn zero_to_negative_power_is_domain_error() {
        let e = Expr::pow(Expr::var(1), Expr::constant(-1.0));
        assert!(matches!(
            e.evaluate(&pt(&[0.0])),
            Err(EvalError::PowDomain { .. })
        ));
    }

    #[test]
    fn missing_coordinate_is_reported() {
        let e = Expr::var(3);
        assert_eq!(
            e.eval_coords(&[1.0, 2.0]),
            Err(EvalError::MissingCoordinate { index: 3, dims: 2 })
        );
    }

    #[test]
    fn substitute_replaces_only_requested_variable() {
        let e = Expr::mul(Expr::var(1), Expr::add(Expr::var(2), Expr::var(1)));
        let s = e.substitute(1, 2.0);
        assert_eq!(s.eval_coords(&[999.0, 3.0]).unwrap(), 10.0);
        assert_eq!(s.max_var_index(), 2);
    }

    #[test]
    fn point_rejects_negative_and_nonfinite() {
        assert!(Point::new(vec![1.0, -0.5]).is_err());
        assert!(Point::new(vec![f64::NAN]).is_err());
        assert!(Point::new(vec![f64::INFINITY]).is_err());
        assert!(Point::new(vec![0.0, 0.0]).is_ok());
    }

    #[test]
    fn expressions_evaluate_concurrently() {
        let e = std::sync::Arc::new(Expr::mul(
            Expr::exp(Expr::add(Expr::var(1), Expr::var(2))),
            Expr::sin(Expr::var(1)),
        ));
        let reference = e.eval_coords(&[0.5, 1.5]).unwrap();
        std::thread::scope(|scope| {
            for _ in 0..4 {
                let shared = std::sync::Arc::clone(&e);
                scope.spawn(move || {
                    for _ in 0..100 {
                        let v = shared.eval_coords(&[0.5, 1.5]).unwrap();
                        assert_eq!(v.to_bits(), reference.to_bits());
                    }
                });
            }
        });
    }

    #[test]
    fn display_respects_precedence() {
        let e = Expr::mul(Expr::add(Expr::var(1), Expr::constant(1.0)), Expr::var(2));
        assert_eq!(e.to_string(), "(x1+1)*x2");
        let p = Expr::pow(Expr::pow(Expr::var(1), Expr::constant(2.0)), Expr::constant(3.0));
        assert_eq!(p.to_string(), "(x1^2)^3");
        let q = Expr::pow(Expr::var(1), Expr::pow(Expr::constant(2.0), Expr::constant(3.0)));
        assert_eq!(q.to_string(), "x1^2^3");
        let n = Expr::neg(Expr::pow(Expr::var(1), Expr::constant(2.0)));
        assert_eq!(n.to_string(), "-x1^2");
        let m = Expr::pow(Expr::constant(-2.0), Expr::var(1));
        assert_eq!(m.to_string(), "(-2)^x1");
    }
}
