//! Recursive-descent parser for the infix expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' factor)?
//! atom   := number | 'pi' | 'e' | variable | function '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so
//! `-x1^2` parses as `-(x1^2)`. Variables are `x1..xN` with `N` declared
//! by the caller; the named functions are `sin cos exp log sqrt`;
//! `pi` and `e` are constants. Whitespace is insignificant, there is no
//! implicit multiplication, and numbers are plain decimal literals
//! (`3`, `2.5` — no exponent suffix, which would collide with the
//! constant `e`).

use super::{Expr, Func};
use std::fmt;

/// Parse failure with the character offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 0-based character offset; equals the input length when the input
    /// ended too early.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Var(usize),
    Fn(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn lex(source: &str, n_vars: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '/' => {
                i += 1;
                Tok::Slash
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    i += 1;
                    if i >= chars.len() || !chars[i].is_ascii_digit() {
                        return Err(ParseError::new(i, "expected digit after decimal point"));
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let value: f64 = text
                    .parse()
                    .map_err(|_| ParseError::new(start, format!("invalid number `{text}`")))?;
                Tok::Num(value)
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect();
                classify_ident(&ident, start, n_vars)?
            }
            _ => return Err(ParseError::new(pos, format!("unknown token `{c}`"))),
        };
        out.push(Spanned { tok, pos });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        pos: chars.len(),
    });
    Ok(out)
}

fn classify_ident(ident: &str, pos: usize, n_vars: usize) -> Result<Tok, ParseError> {
    match ident {
        "sin" => return Ok(Tok::Fn(Func::Sin)),
        "cos" => return Ok(Tok::Fn(Func::Cos)),
        "exp" => return Ok(Tok::Fn(Func::Exp)),
        "log" => return Ok(Tok::Fn(Func::Log)),
        "sqrt" => return Ok(Tok::Fn(Func::Sqrt)),
        "pi" => return Ok(Tok::Num(std::f64::consts::PI)),
        "e" => return Ok(Tok::Num(std::f64::consts::E)),
        _ => {}
    }
    if let Some(digits) = ident.strip_prefix('x') {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            let index: usize = digits
                .parse()
                .map_err(|_| ParseError::new(pos, format!("variable index too large in `{ident}`")))?;
            if index == 0 {
                return Err(ParseError::new(pos, "variable indices start at x1"));
            }
            if index > n_vars {
                return Err(ParseError::new(
                    pos,
                    format!("variable x{index} exceeds the declared count of {n_vars}"),
                ));
            }
            return Ok(Tok::Var(index));
        }
    }
    Err(ParseError::new(
        pos,
        format!("unknown function or constant `{ident}`"),
    ))
}

struct Parser {
    toks: Vec<Spanned>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.i]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::div(lhs, self.factor()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::neg(self.factor()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let exponent = self.factor()?;
            return Ok(Expr::pow(base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Num(v) => Ok(Expr::constant(v)),
            Tok::Var(i) => Ok(Expr::var(i)),
            Tok::Fn(f) => {
                let open = self.bump();
                if open.tok != Tok::LParen {
                    return Err(ParseError::new(
                        open.pos,
                        format!("expected `(` after `{}`", f.name()),
                    ));
                }
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(ParseError::new(close.pos, "expected `)`"));
                }
                Ok(Expr::call(f, inner))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(ParseError::new(close.pos, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::Eof => Err(ParseError::new(t.pos, "expected expression, found end of input")),
            _ => Err(ParseError::new(t.pos, "expected a number, variable, or `(`")),
        }
    }
}

/// Parses `source` with variables `x1..x{n_vars}`.
pub fn parse(source: &str, n_vars: usize) -> Result<Expr, ParseError> {
    if n_vars == 0 {
        return Err(ParseError::new(0, "the variable count must be at least 1"));
    }
    let toks = lex(source, n_vars)?;
    let mut p = Parser { toks, i: 0 };
    let e = p.expr()?;
    let trailing = p.peek();
    if trailing.tok != Tok::Eof {
        return Err(ParseError::new(trailing.pos, "unexpected trailing input"));
    }
    Ok(e)
}
