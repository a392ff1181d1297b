//! Symbolic differentiation and a central-difference cross-check.

use super::simplify::simplify;
use super::{BinOp, EvalError, Expr, ExprRef, Func, UnaryOp};
use crate::subset::VarSubset;
use std::fmt;
use std::sync::Arc;

/// The expression cannot be differentiated in closed form over the
/// nonnegative orthant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffError {
    /// `a^b` with a non-constant exponent is rewritten as `exp(b*log(a))`,
    /// which is only valid when `a` is syntactically guaranteed positive.
    UnsupportedExponent { node: String },
}

impl fmt::Display for DiffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffError::UnsupportedExponent { node } => write!(
                f,
                "cannot differentiate `{node}`: non-constant exponent over a base \
                 that is not guaranteed positive"
            ),
        }
    }
}

impl std::error::Error for DiffError {}

fn cnst(v: f64) -> ExprRef {
    Arc::new(Expr::Const(v))
}

fn bin(op: BinOp, l: ExprRef, r: ExprRef) -> ExprRef {
    Arc::new(Expr::Binary(op, l, r))
}

fn call(f: Func, c: ExprRef) -> ExprRef {
    Arc::new(Expr::Call(f, c))
}

fn neg(c: ExprRef) -> ExprRef {
    Arc::new(Expr::Unary(UnaryOp::Neg, c))
}

/// Conservative syntactic positivity on the nonnegative orthant: true only
/// when every evaluation there is provably > 0. Variables count as >= 0 by
/// domain, so e.g. `1 + x1` qualifies while `x1` alone does not.
fn is_syntactically_positive(e: &Expr) -> bool {
    match e {
        Expr::Const(c) => *c > 0.0,
        Expr::Call(Func::Exp, _) => true,
        Expr::Binary(BinOp::Add, l, r) => {
            (is_syntactically_positive(l) && is_syntactically_nonnegative(r))
                || (is_syntactically_nonnegative(l) && is_syntactically_positive(r))
        }
        Expr::Binary(BinOp::Mul | BinOp::Div, l, r) => {
            is_syntactically_positive(l) && is_syntactically_positive(r)
        }
        Expr::Binary(BinOp::Pow, base, _) => is_syntactically_positive(base),
        Expr::Call(Func::Sqrt, c) => is_syntactically_positive(c),
        _ => false,
    }
}

fn is_syntactically_nonnegative(e: &Expr) -> bool {
    match e {
        Expr::Const(c) => *c >= 0.0,
        Expr::Var(_) => true,
        Expr::Call(Func::Exp | Func::Sqrt, _) => true,
        Expr::Binary(BinOp::Add | BinOp::Mul, l, r) => {
            is_syntactically_nonnegative(l) && is_syntactically_nonnegative(r)
        }
        Expr::Binary(BinOp::Div, l, r) => {
            is_syntactically_nonnegative(l) && is_syntactically_positive(r)
        }
        Expr::Binary(BinOp::Pow, base, _) => is_syntactically_nonnegative(base),
        _ => false,
    }
}

fn diff(e: &Expr, var: usize) -> Result<ExprRef, DiffError> {
    Ok(match e {
        Expr::Const(_) => cnst(0.0),
        Expr::Var(i) => cnst(if *i == var { 1.0 } else { 0.0 }),
        Expr::Unary(UnaryOp::Neg, c) => neg(diff(c, var)?),
        Expr::Binary(BinOp::Add, l, r) => bin(BinOp::Add, diff(l, var)?, diff(r, var)?),
        Expr::Binary(BinOp::Sub, l, r) => bin(BinOp::Sub, diff(l, var)?, diff(r, var)?),
        Expr::Binary(BinOp::Mul, l, r) => bin(
            BinOp::Add,
            bin(BinOp::Mul, diff(l, var)?, r.clone()),
            bin(BinOp::Mul, l.clone(), diff(r, var)?),
        ),
        Expr::Binary(BinOp::Div, l, r) => bin(
            BinOp::Div,
            bin(
                BinOp::Sub,
                bin(BinOp::Mul, diff(l, var)?, r.clone()),
                bin(BinOp::Mul, l.clone(), diff(r, var)?),
            ),
            bin(BinOp::Pow, r.clone(), cnst(2.0)),
        ),
        Expr::Binary(BinOp::Pow, base, exponent) => match exponent.as_ref() {
            // power rule: d(u^c) = c * u^(c-1) * du
            Expr::Const(c) => bin(
                BinOp::Mul,
                bin(
                    BinOp::Mul,
                    cnst(*c),
                    bin(BinOp::Pow, base.clone(), cnst(c - 1.0)),
                ),
                diff(base, var)?,
            ),
            _ => {
                if !is_syntactically_positive(base) {
                    return Err(DiffError::UnsupportedExponent {
                        node: e.to_string(),
                    });
                }
                // a^b = exp(b*log(a)) for a > 0
                let rewritten = call(
                    Func::Exp,
                    bin(BinOp::Mul, exponent.clone(), call(Func::Log, base.clone())),
                );
                diff(&rewritten, var)?
            }
        },
        Expr::Call(f, c) => {
            let dc = diff(c, var)?;
            match f {
                Func::Sin => bin(BinOp::Mul, call(Func::Cos, c.clone()), dc),
                Func::Cos => neg(bin(BinOp::Mul, call(Func::Sin, c.clone()), dc)),
                Func::Exp => bin(BinOp::Mul, call(Func::Exp, c.clone()), dc),
                Func::Log => bin(BinOp::Div, dc, c.clone()),
                Func::Sqrt => bin(
                    BinOp::Div,
                    dc,
                    bin(BinOp::Mul, cnst(2.0), call(Func::Sqrt, c.clone())),
                ),
            }
        }
    })
}

/// First-order partial derivative with respect to `x{var}`, simplified.
pub fn differentiate(e: &Expr, var: usize) -> Result<Expr, DiffError> {
    assert!(var >= 1, "variable indices are 1-based");
    let d = diff(e, var)?;
    Ok(simplify(&d))
}

/// Mixed partial of first order in each variable of `vars`, differentiating
/// in ascending index order and simplifying between steps. The empty subset
/// returns the expression unchanged.
pub fn mixed_partial(e: &Expr, vars: &VarSubset) -> Result<Expr, DiffError> {
    let mut cur = e.clone();
    for &i in vars.indices() {
        cur = differentiate(&cur, i)?;
    }
    Ok(cur)
}

/// Tensor central-difference estimate of the mixed partial of `f` over
/// `vars` at `p`: each variable of the subset gets one application of
/// `(f(.+h) - f(.-h)) / 2h`. The stencils commute, so the application
/// order does not matter.
///
/// This is the numerical cross-check for [`mixed_partial`]; it never calls
/// the symbolic machinery. Offsets `p +- h` must stay inside the domain of
/// the supplied evaluator.
pub fn fd_mixed_partial<F>(
    mut f: F,
    p: &[f64],
    vars: &VarSubset,
    h: f64,
) -> Result<f64, EvalError>
where
    F: FnMut(&[f64]) -> Result<f64, EvalError>,
{
    assert!(h > 0.0 && h.is_finite(), "step size must be positive");
    if vars.max_index() > p.len() {
        return Err(EvalError::MissingCoordinate {
            index: vars.max_index(),
            dims: p.len(),
        });
    }
    let k = vars.len();
    let mut coords = p.to_vec();
    let mut acc = 0.0;
    for mask in 0u32..(1u32 << k) {
        coords.copy_from_slice(p);
        let mut minus = 0u32;
        for (bit, &i) in vars.indices().iter().enumerate() {
            if mask & (1 << bit) != 0 {
                coords[i - 1] += h;
            } else {
                coords[i - 1] -= h;
                minus += 1;
            }
        }
        let v = f(&coords)?;
        acc += if minus.is_multiple_of(2) { v } else { -v };
    }
    Ok(acc / (2.0 * h).powi(k as i32))
}
