//! Anchored decomposition of a smooth function on the nonnegative orthant.
//!
//! A function `R(x1..xN)` splits into `2^N` addends, one per subset `S` of
//! the variables: the anchor value `R(0,..,0)` for the empty subset, and
//! for each nonempty `S` the integral over the box `prod_{i in S} [0, Xi]`
//! of the mixed partial of `R` taken once in each variable of `S`, with
//! every variable outside `S` held at 0. Summing all addends reproduces
//! `R(X)`.
//!
//! The unit-step factor that formally truncates each semi-infinite axis is
//! applied analytically: the integrand vanishes identically beyond `Xi`,
//! so the box is cut at `Xi` instead of ever sampling a jump (the midpoint
//! value 1/2 sits on a measure-zero set and is deliberately never
//! sampled). The smoothed variant replaces each step factor by a sigmoid
//! of finite steepness inside the same box.
//!
//! Each term also has a quadrature-free cross-check
//! ([`anchored_difference_oracle`]): repeated application of the
//! fundamental theorem of calculus collapses a term to the signed sum of
//! `R` over the corners of its box, which needs nothing but `2^|S|` point
//! evaluations.

use crate::expr::{DiffError, EvalError, Expr, Point};
use crate::heaviside::{sigmoid, SigmoidParams};
use crate::quad::{integrate_nd, QuadConfig, QuadError, QuadResult};
use crate::subset::VarSubset;
use std::fmt;

/// Hard cap on the number of variables: `2^N` terms, each an up-to-`N`-fold
/// iterated integral, grow too fast beyond this.
pub const MAX_DIMENSION: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub enum DecompError {
    DimensionLimit { n: usize, max: usize },
    /// The expression references a variable beyond the point's dimension.
    VariableOutOfRange { index: usize, n_vars: usize },
    /// Operation needs a nonempty subset (the empty subset is the anchor).
    EmptySubset,
    EmptyGrid,
    PointDimensionMismatch { expected: usize, got: usize },
    Diff(DiffError),
    Eval(EvalError),
    /// Quadrature failure, tagged with the term it belongs to.
    Quad { subset: VarSubset, source: QuadError },
}

impl fmt::Display for DecompError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompError::DimensionLimit { n, max } => {
                write!(f, "{n} variables exceed the supported maximum of {max}")
            }
            DecompError::VariableOutOfRange { index, n_vars } => {
                write!(f, "expression uses x{index} but only {n_vars} variables are declared")
            }
            DecompError::EmptySubset => {
                write!(f, "term evaluation needs a nonempty subset; the empty subset is the anchor")
            }
            DecompError::EmptyGrid => write!(f, "the verification grid is empty"),
            DecompError::PointDimensionMismatch { expected, got } => {
                write!(f, "expected a {expected}-dimensional point, got {got}")
            }
            DecompError::Diff(e) => write!(f, "{e}"),
            DecompError::Eval(e) => write!(f, "{e}"),
            DecompError::Quad { subset, source } => {
                write!(f, "term {subset}: {source}")
            }
        }
    }
}

impl std::error::Error for DecompError {}

impl From<DiffError> for DecompError {
    fn from(e: DiffError) -> Self {
        DecompError::Diff(e)
    }
}

impl From<EvalError> for DecompError {
    fn from(e: EvalError) -> Self {
        DecompError::Eval(e)
    }
}

/// One evaluated addend.
#[derive(Debug, Clone, PartialEq)]
pub struct TermResult {
    pub subset: VarSubset,
    pub value: f64,
    pub error_estimate: f64,
    /// Corner-sum cross-check, when requested.
    pub oracle_value: Option<f64>,
    pub evaluations: u64,
}

impl TermResult {
    /// `|value - oracle_value|`, when the oracle was computed.
    pub fn oracle_gap(&self) -> Option<f64> {
        self.oracle_value.map(|o| (self.value - o).abs())
    }
}

/// The full decomposition of `R` at a point, terms in canonical order
/// (cardinality, then lexicographic); the empty subset is stored as the
/// scalar `anchor`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub n_vars: usize,
    pub point: Point,
    pub anchor: f64,
    pub terms: Vec<TermResult>,
}

impl Decomposition {
    /// `anchor + sum of term values`, summed in canonical term order so the
    /// result is reproducible bit for bit.
    pub fn reconstruct(&self) -> f64 {
        self.terms.iter().fold(self.anchor, |acc, t| acc + t.value)
    }

    /// Total integrand evaluations across all terms.
    pub fn evaluations(&self) -> u64 {
        self.terms.iter().map(|t| t.evaluations).sum()
    }
}

/// Worst-case reconstruction errors over a grid of points.
#[derive(Debug, Clone, PartialEq)]
pub struct GridReport {
    pub points: usize,
    pub max_abs_error: f64,
    /// Max of `|reconstructed - direct| / (1 + |direct|)`.
    pub max_rel_error: f64,
    /// Point attaining `max_rel_error`.
    pub worst_point: Point,
}

/// All `2^n` subsets of `{1..n}` in canonical order: by cardinality, then
/// lexicographically; the empty subset comes first, `{1..n}` last.
pub fn enumerate_subsets(n: usize) -> Result<Vec<VarSubset>, DecompError> {
    if n == 0 || n > MAX_DIMENSION {
        return Err(DecompError::DimensionLimit {
            n,
            max: MAX_DIMENSION,
        });
    }
    let mut out = Vec::with_capacity(1 << n);
    for k in 0..=n {
        combinations(n, k, &mut out);
    }
    debug_assert_eq!(out.len(), 1 << n);
    Ok(out)
}

/// Appends all k-of-n index combinations in lexicographic order.
fn combinations(n: usize, k: usize, out: &mut Vec<VarSubset>) {
    if k == 0 {
        out.push(VarSubset::empty());
        return;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(VarSubset::from_sorted(idx.clone()));
        // advance the rightmost index that still has room
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - (k - pos) {
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        idx[pos - 1] += 1;
        for j in pos..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_expr_fits(r: &Expr, n_vars: usize) -> Result<(), DecompError> {
    let max = r.max_var_index();
    if max > n_vars {
        return Err(DecompError::VariableOutOfRange { index: max, n_vars });
    }
    Ok(())
}

/// Integrand of the term for subset `s`: the mixed partial of `r` over `s`
/// with every variable outside `s` substituted by 0, simplified. The result
/// depends only on the variables in `s`.
pub fn anchored_integrand(r: &Expr, s: &VarSubset, n_vars: usize) -> Result<Expr, DecompError> {
    if s.max_index() > n_vars {
        return Err(DecompError::VariableOutOfRange {
            index: s.max_index(),
            n_vars,
        });
    }
    check_expr_fits(r, n_vars)?;
    let mut cur = crate::expr::mixed_partial(r, s)?;
    for i in 1..=n_vars {
        if !s.contains(i) {
            cur = cur.substitute(i, 0.0);
        }
    }
    Ok(crate::expr::simplify(&cur))
}

fn validated_dims(r: &Expr, x: &Point) -> Result<usize, DecompError> {
    let n = x.dim();
    if n == 0 || n > MAX_DIMENSION {
        return Err(DecompError::DimensionLimit {
            n,
            max: MAX_DIMENSION,
        });
    }
    check_expr_fits(r, n)?;
    Ok(n)
}

/// Evaluates one decomposition term by quadrature over its truncated box.
///
/// If any coordinate of the box is 0 the term is exactly 0 and no
/// integration happens.
pub fn term_value(
    r: &Expr,
    s: &VarSubset,
    x: &Point,
    cfg: &QuadConfig,
) -> Result<TermResult, DecompError> {
    let n = validated_dims(r, x)?;
    if s.is_empty() {
        return Err(DecompError::EmptySubset);
    }
    if s.max_index() > n {
        return Err(DecompError::VariableOutOfRange {
            index: s.max_index(),
            n_vars: n,
        });
    }
    if s.indices().iter().any(|&i| x.coords()[i - 1] == 0.0) {
        return Ok(TermResult {
            subset: s.clone(),
            value: 0.0,
            error_estimate: 0.0,
            oracle_value: None,
            evaluations: 0,
        });
    }
    let integrand = anchored_integrand(r, s, n)?;
    let qr = integrate_over_box(&integrand, s, x, cfg, None)?;
    Ok(TermResult {
        subset: s.clone(),
        value: qr.value,
        error_estimate: qr.error_estimate,
        oracle_value: None,
        evaluations: qr.evaluations,
    })
}

/// Shared quadrature driver: integrates `integrand` over the box
/// `prod_{i in s} [0, Xi]`, optionally weighting by smoothed step factors.
///
/// In smoothed mode every axis is split at `Xi - tail_cut/k`: past that
/// breakpoint the sigmoid transitions, before it the factor is saturated
/// to within `exp(-tail_cut)`. Without the split a steep transition layer
/// can fall between the nodes of the first panel and be missed entirely.
fn integrate_over_box(
    integrand: &Expr,
    s: &VarSubset,
    x: &Point,
    cfg: &QuadConfig,
    smoothing: Option<SigmoidParams>,
) -> Result<QuadResult, DecompError> {
    let idx = s.indices();
    let segments: Vec<Vec<(f64, f64)>> = idx
        .iter()
        .map(|&i| {
            let xi = x.coords()[i - 1];
            match smoothing {
                Some(p) => {
                    let cut = xi - p.tail_cut() / p.k();
                    if cut > 0.0 && cut < xi {
                        vec![(0.0, cut), (cut, xi)]
                    } else {
                        vec![(0.0, xi)]
                    }
                }
                None => vec![(0.0, xi)],
            }
        })
        .collect();

    let mut coords = vec![0.0; x.dim()];
    let mut eval = |t: &[f64]| {
        for (slot, &i) in idx.iter().enumerate() {
            coords[i - 1] = t[slot];
        }
        let mut v = integrand.eval_coords(&coords)?;
        if let Some(p) = smoothing {
            for (slot, &i) in idx.iter().enumerate() {
                v *= sigmoid(x.coords()[i - 1] - t[slot], p);
            }
        }
        Ok(v)
    };

    // Cartesian product of the per-axis segments, first axis slowest.
    let cells: usize = segments.iter().map(Vec::len).product();
    let mut choice = vec![0usize; segments.len()];
    let mut total = QuadResult {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
    };
    for _ in 0..cells {
        let bounds: Vec<(f64, f64)> = choice
            .iter()
            .zip(&segments)
            .map(|(&c, segs)| segs[c])
            .collect();
        let qr = integrate_nd(&mut eval, &bounds, cfg).map_err(|source| DecompError::Quad {
            subset: s.clone(),
            source,
        })?;
        total.value += qr.value;
        total.error_estimate += qr.error_estimate;
        total.evaluations += qr.evaluations;
        for axis in (0..choice.len()).rev() {
            choice[axis] += 1;
            if choice[axis] < segments[axis].len() {
                break;
            }
            choice[axis] = 0;
        }
    }
    Ok(total)
}

/// Quadrature-free value of the term for subset `s`, by inclusion-exclusion
/// over the corners of its box:
/// `sum over T of (-1)^(|s| - |T|) * R(X_T)` where `X_T` keeps `Xi` for
/// `i` in `T` and zeroes every other coordinate. For the empty subset this
/// is the anchor `R(0,..,0)`.
pub fn anchored_difference_oracle(
    r: &Expr,
    s: &VarSubset,
    x: &Point,
) -> Result<f64, DecompError> {
    let n = validated_dims(r, x)?;
    if s.max_index() > n {
        return Err(DecompError::VariableOutOfRange {
            index: s.max_index(),
            n_vars: n,
        });
    }
    let k = s.len();
    let idx = s.indices();
    let mut coords = vec![0.0; n];
    let mut acc = 0.0;
    for mask in 0u32..(1u32 << k) {
        coords.iter_mut().for_each(|c| *c = 0.0);
        let mut kept = 0;
        for (bit, &i) in idx.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                coords[i - 1] = x.coords()[i - 1];
                kept += 1;
            }
        }
        let v = r.eval_coords(&coords)?;
        acc += if (k - kept).is_multiple_of(2) { v } else { -v };
    }
    Ok(acc)
}

/// Decomposes `r` at `x`: anchor plus one quadrature term per nonempty
/// subset, in canonical order. With `with_oracle` every term also carries
/// its corner-sum cross-check value.
pub fn decompose(
    r: &Expr,
    x: &Point,
    cfg: &QuadConfig,
    with_oracle: bool,
) -> Result<Decomposition, DecompError> {
    let n = validated_dims(r, x)?;
    let anchor = r.eval_coords(Point::origin(n).coords())?;
    let subsets = enumerate_subsets(n)?;
    let mut terms = Vec::with_capacity(subsets.len() - 1);
    for s in subsets.into_iter().skip(1) {
        let mut term = term_value(r, &s, x, cfg)?;
        if with_oracle {
            term.oracle_value = Some(anchored_difference_oracle(r, &s, x)?);
        }
        terms.push(term);
    }
    debug_assert_eq!(terms.len(), (1usize << n) - 1);
    Ok(Decomposition {
        n_vars: n,
        point: x.clone(),
        anchor,
        terms,
    })
}

/// Smoothed variant of [`term_value`]: the integrand is multiplied by one
/// sigmoid factor `sigmoid(Xi - mu_i)` per subset variable instead of
/// relying on exact step truncation. The box stays `prod [0, Xi]`, so the
/// smoothed term approaches the exact one as the steepness grows.
pub fn smooth_term_value(
    r: &Expr,
    s: &VarSubset,
    x: &Point,
    p: SigmoidParams,
    cfg: &QuadConfig,
) -> Result<TermResult, DecompError> {
    let n = validated_dims(r, x)?;
    if s.is_empty() {
        return Err(DecompError::EmptySubset);
    }
    if s.max_index() > n {
        return Err(DecompError::VariableOutOfRange {
            index: s.max_index(),
            n_vars: n,
        });
    }
    let integrand = anchored_integrand(r, s, n)?;
    let qr = integrate_over_box(&integrand, s, x, cfg, Some(p))?;
    Ok(TermResult {
        subset: s.clone(),
        value: qr.value,
        error_estimate: qr.error_estimate,
        oracle_value: None,
        evaluations: qr.evaluations,
    })
}

/// Reconstructs `r` at every grid point and reports the worst deviation
/// from direct evaluation.
pub fn verify_on_grid(
    r: &Expr,
    grid: &[Point],
    cfg: &QuadConfig,
) -> Result<GridReport, DecompError> {
    let first = grid.first().ok_or(DecompError::EmptyGrid)?;
    let dim = first.dim();
    let mut report = GridReport {
        points: grid.len(),
        max_abs_error: 0.0,
        max_rel_error: 0.0,
        worst_point: first.clone(),
    };
    for x in grid {
        if x.dim() != dim {
            return Err(DecompError::PointDimensionMismatch {
                expected: dim,
                got: x.dim(),
            });
        }
        let d = decompose(r, x, cfg, false)?;
        let direct = r.evaluate(x)?;
        let abs = (d.reconstruct() - direct).abs();
        let rel = abs / (1.0 + direct.abs());
        if abs > report.max_abs_error {
            report.max_abs_error = abs;
        }
        if rel > report.max_rel_error {
            report.max_rel_error = rel;
            report.worst_point = x.clone();
        }
    }
    Ok(report)
}
