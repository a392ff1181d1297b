//! Fixed-rule simplifier.
//!
//! A deliberately small rewrite set, applied bottom-up to a fixpoint at
//! each node: constant folding plus the identities
//!
//! ```text
//! 0+e -> e    e+0 -> e    e-0 -> e    0-e -> -e    --e -> e
//! 0*e -> 0    e*0 -> 0    1*e -> e    e*1 -> e     e/1 -> e
//! e^1 -> e    e^0 -> 1    -(c) -> (-c)
//! ```
//!
//! Every rule preserves the value on the shared domain of the input and
//! output. Folding is skipped whenever it would bake a non-finite value
//! into the tree, so overflow and domain violations still surface at
//! evaluation time. This is enough to stop expression swell under
//! repeated differentiation at the dimensions this crate targets; it is
//! not a general-purpose algebra system.

use super::{BinOp, Expr, ExprRef, Func, UnaryOp};
use std::sync::Arc;

/// Simplifies to a fixpoint of the rule set.
pub fn simplify(e: &Expr) -> Expr {
    simp(e).as_ref().clone()
}

fn simp(e: &Expr) -> ExprRef {
    match e {
        Expr::Const(_) | Expr::Var(_) => Arc::new(e.clone()),
        Expr::Unary(op, c) => rewrite(Arc::new(Expr::Unary(*op, simp(c)))),
        Expr::Binary(op, l, r) => rewrite(Arc::new(Expr::Binary(*op, simp(l), simp(r)))),
        Expr::Call(f, c) => rewrite(Arc::new(Expr::Call(*f, simp(c)))),
    }
}

fn rewrite(node: ExprRef) -> ExprRef {
    let mut cur = node;
    while let Some(next) = step(&cur) {
        cur = next;
    }
    cur
}

fn is_const(e: &Expr, v: f64) -> bool {
    matches!(e, Expr::Const(c) if *c == v)
}

fn fold(v: f64) -> Option<ExprRef> {
    if v.is_finite() {
        Some(Arc::new(Expr::Const(v)))
    } else {
        None
    }
}

fn step(e: &ExprRef) -> Option<ExprRef> {
    match e.as_ref() {
        Expr::Unary(UnaryOp::Neg, c) => match c.as_ref() {
            Expr::Const(v) => fold(-v),
            Expr::Unary(UnaryOp::Neg, inner) => Some(inner.clone()),
            _ => None,
        },
        Expr::Binary(op, l, r) => {
            if let (Expr::Const(a), Expr::Const(b)) = (l.as_ref(), r.as_ref()) {
                let folded = match op {
                    BinOp::Add => fold(a + b),
                    BinOp::Sub => fold(a - b),
                    BinOp::Mul => fold(a * b),
                    BinOp::Div if *b != 0.0 => fold(a / b),
                    BinOp::Pow if !(*a == 0.0 && *b < 0.0) && !(*a < 0.0 && b.fract() != 0.0) => {
                        fold(a.powf(*b))
                    }
                    _ => None,
                };
                if folded.is_some() {
                    return folded;
                }
            }
            match op {
                BinOp::Add => {
                    if is_const(l, 0.0) {
                        Some(r.clone())
                    } else if is_const(r, 0.0) {
                        Some(l.clone())
                    } else {
                        None
                    }
                }
                BinOp::Sub => {
                    if is_const(r, 0.0) {
                        Some(l.clone())
                    } else if is_const(l, 0.0) {
                        Some(rewrite(Arc::new(Expr::Unary(UnaryOp::Neg, r.clone()))))
                    } else {
                        None
                    }
                }
                BinOp::Mul => {
                    if is_const(l, 0.0) || is_const(r, 0.0) {
                        Some(Arc::new(Expr::Const(0.0)))
                    } else if is_const(l, 1.0) {
                        Some(r.clone())
                    } else if is_const(r, 1.0) {
                        Some(l.clone())
                    } else {
                        None
                    }
                }
                BinOp::Div => {
                    if is_const(r, 1.0) {
                        Some(l.clone())
                    } else {
                        None
                    }
                }
                BinOp::Pow => {
                    if is_const(r, 1.0) {
                        Some(l.clone())
                    } else if is_const(r, 0.0) {
                        Some(Arc::new(Expr::Const(1.0)))
                    } else {
                        None
                    }
                }
            }
        }
        Expr::Call(f, c) => match c.as_ref() {
            Expr::Const(v) => match f {
                Func::Sin => fold(v.sin()),
                Func::Cos => fold(v.cos()),
                Func::Exp => fold(v.exp()),
                Func::Log if *v > 0.0 => fold(v.ln()),
                Func::Sqrt if *v >= 0.0 => fold(v.sqrt()),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}
