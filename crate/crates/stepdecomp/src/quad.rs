//! Adaptive quadrature over intervals and axis-aligned boxes.
//!
//! The 1-D kernel is an embedded Gauss-Kronrod pair evaluated per panel,
//! with bisection wherever the panel estimate misses the tolerance:
//!
//! * `rule_order = 15` (default): 7-point Gauss (exact through degree 13)
//!   paired with its 15-point Kronrod extension (exact through degree 22);
//! * `rule_order = 21`: 10-point Gauss (degree 19) with the 21-point
//!   Kronrod extension (degree 31).
//!
//! A panel is accepted when its error estimate is at or below
//! `max(abs_tol, rel_tol * |value|)`. The estimate is the usual rescaled
//! `|Kronrod - Gauss|` with a floor of `50 * eps * integral(|f|)`, so it
//! stays meaningful when both rules are exact. N-dimensional boxes are
//! integrated as nested 1-D integrals, outermost axis first, tightening
//! the tolerances by a factor of 0.1 per nesting level; error estimates
//! combine by plain summation, which overcounts and is therefore
//! conservative.
//!
//! Everything here is deterministic: fixed node ordering inside a panel,
//! fixed left-to-right panel ordering, sequential evaluation. Identical
//! inputs produce bitwise-identical results.
//!
//! Integrands must be finite on the closed box; the kernel never samples
//! panel endpoints (all Kronrod nodes are interior), so integrable
//! endpoint singularities do not abort, they just converge slowly.

use crate::expr::EvalError;
use std::fmt;

/// Tolerances and limits for [`integrate_1d`] / [`integrate_nd`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Per-panel absolute tolerance.
    pub abs_tol: f64,
    /// Per-panel relative tolerance.
    pub rel_tol: f64,
    /// Maximum bisection depth before giving up on a panel.
    pub max_depth: usize,
    /// Points in the Kronrod rule: 15 or 21.
    pub rule_order: usize,
    /// Largest box dimension [`integrate_nd`] accepts.
    pub max_dim: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 30,
            rule_order: 15,
            max_dim: 10,
        }
    }
}

impl QuadConfig {
    fn validate(&self) -> Result<(), QuadError> {
        let tol_ok = |t: f64| t.is_finite() && t > 0.0;
        if !tol_ok(self.abs_tol) || !tol_ok(self.rel_tol) {
            return Err(QuadError::InvalidConfig(
                "tolerances must be positive".into(),
            ));
        }
        if self.max_depth == 0 {
            return Err(QuadError::InvalidConfig("max_depth must be at least 1".into()));
        }
        if rule_for(self.rule_order).is_none() {
            return Err(QuadError::InvalidConfig(format!(
                "unsupported rule order {} (supported: 15, 21)",
                self.rule_order
            )));
        }
        Ok(())
    }

    fn tightened(&self) -> QuadConfig {
        QuadConfig {
            abs_tol: self.abs_tol * 0.1,
            rel_tol: self.rel_tol * 0.1,
            ..*self
        }
    }
}

/// Value, conservative error estimate, and raw integrand evaluation count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadError {
    InvalidInterval { a: f64, b: f64 },
    InvalidConfig(String),
    DimensionLimit { dim: usize, max: usize },
    /// Bisection depth exhausted; carries the offending panel and its
    /// best value and estimate.
    ToleranceNotMet {
        a: f64,
        b: f64,
        value: f64,
        error_estimate: f64,
    },
    /// The integrand returned inf or NaN.
    NonFiniteSample { at: f64 },
    Eval(EvalError),
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::InvalidInterval { a, b } => {
                write!(f, "invalid interval [{a}, {b}]")
            }
            QuadError::InvalidConfig(msg) => write!(f, "invalid quadrature config: {msg}"),
            QuadError::DimensionLimit { dim, max } => {
                write!(f, "box dimension {dim} exceeds the configured limit {max}")
            }
            QuadError::ToleranceNotMet {
                a,
                b,
                value,
                error_estimate,
            } => write!(
                f,
                "tolerance not met on [{a}, {b}] at maximum depth \
                 (best value {value}, estimate {error_estimate})"
            ),
            QuadError::NonFiniteSample { at } => {
                write!(f, "integrand is not finite at coordinate {at}")
            }
            QuadError::Eval(e) => write!(f, "integrand evaluation failed: {e}"),
        }
    }
}

impl std::error::Error for QuadError {}

impl From<EvalError> for QuadError {
    fn from(e: EvalError) -> Self {
        QuadError::Eval(e)
    }
}

struct GkRule {
    /// Kronrod nodes on [0, 1], descending, last entry 0.
    xgk: &'static [f64],
    /// Gauss weights for the embedded rule.
    wg: &'static [f64],
    /// Kronrod weights, matching `xgk`.
    wgk: &'static [f64],
}

// Nodes and weights of the classic QUADPACK pairs.
#[allow(clippy::excessive_precision)]
static QK15: GkRule = GkRule {
    xgk: &[
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144838258730,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ],
    wg: &[
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ],
    wgk: &[
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ],
};

#[allow(clippy::excessive_precision)]
static QK21: GkRule = GkRule {
    xgk: &[
        0.995657163025808080735527280689003,
        0.973906528517171720077964012084452,
        0.930157491355708226001207180059508,
        0.865063366688984510732096688423493,
        0.780817726586416897063717578345042,
        0.679409568299024406234327365114874,
        0.562757134668604683339000099272694,
        0.433395394129247190799265943165784,
        0.294392862701460198131126603103866,
        0.148874338981631210884826001129720,
        0.000000000000000000000000000000000,
    ],
    wg: &[
        0.066671344308688137593568809893332,
        0.149451349150580593145776339657697,
        0.219086362515982043995534934228163,
        0.269266719309996355091226921569469,
        0.295524224714752870173892994651338,
    ],
    wgk: &[
        0.011694638867371874278064396062192,
        0.032558162307964727478818972459390,
        0.054755896574351996031381300244580,
        0.075039674810919952767043140916190,
        0.093125454583697605535065465083366,
        0.109387158802297641899210590325805,
        0.123491976262065851077958109831074,
        0.134709217311473325928054001771707,
        0.142775938577060080797094273138717,
        0.147739104901338491374841515972068,
        0.149445554002916905664936468389821,
    ],
};

fn rule_for(order: usize) -> Option<&'static GkRule> {
    match order {
        15 => Some(&QK15),
        21 => Some(&QK21),
        _ => None,
    }
}

/// QUADPACK error rescaling: sharpen the raw `|K - G|` difference and keep
/// it above the rounding floor of the computed integral of `|f|`.
fn rescale_error(err: f64, result_abs: f64, result_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if result_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / result_asc).powf(1.5);
        scaled = if scale < 1.0 { result_asc * scale } else { result_asc };
    }
    if result_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * result_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

fn check_finite(v: f64, at: f64) -> Result<f64, QuadError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QuadError::NonFiniteSample { at })
    }
}

/// One Gauss-Kronrod panel: returns (kronrod value, error estimate).
fn gk_panel<F>(f: &mut F, a: f64, b: f64, rule: &GkRule) -> Result<(f64, f64), QuadError>
where
    F: FnMut(f64) -> Result<f64, QuadError>,
{
    let n = rule.xgk.len();
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();

    let f_center = check_finite(f(center)?, center)?;
    let mut result_gauss = 0.0;
    let mut result_kronrod = f_center * rule.wgk[n - 1];
    let mut result_abs = result_kronrod.abs();
    if n.is_multiple_of(2) {
        result_gauss = f_center * rule.wg[n / 2 - 1];
    }

    let mut fv1 = vec![0.0; n - 1];
    let mut fv2 = vec![0.0; n - 1];

    // Gauss nodes sit at the odd Kronrod positions.
    for (j, wg) in rule.wg.iter().enumerate().take((n - 1) / 2) {
        let jtw = j * 2 + 1;
        let x = half * rule.xgk[jtw];
        let f1 = check_finite(f(center - x)?, center - x)?;
        let f2 = check_finite(f(center + x)?, center + x)?;
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        result_gauss += wg * (f1 + f2);
        result_kronrod += rule.wgk[jtw] * (f1 + f2);
        result_abs += rule.wgk[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..n / 2 {
        let jtwm1 = j * 2;
        let x = half * rule.xgk[jtwm1];
        let f1 = check_finite(f(center - x)?, center - x)?;
        let f2 = check_finite(f(center + x)?, center + x)?;
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        result_kronrod += rule.wgk[jtwm1] * (f1 + f2);
        result_abs += rule.wgk[jtwm1] * (f1.abs() + f2.abs());
    }

    let mean = result_kronrod * 0.5;
    let mut result_asc = rule.wgk[n - 1] * (f_center - mean).abs();
    for j in 0..n - 1 {
        result_asc += rule.wgk[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (result_kronrod - result_gauss) * half;
    let value = result_kronrod * half;
    let estimate = rescale_error(err, result_abs * abs_half, result_asc * abs_half);
    Ok((value, estimate))
}

fn panel_evals(rule: &GkRule) -> u64 {
    (2 * (rule.xgk.len() - 1) + 1) as u64
}

fn adapt<F>(
    f: &mut F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
    rule: &GkRule,
    depth: usize,
) -> Result<QuadResult, QuadError>
where
    F: FnMut(f64) -> Result<f64, QuadError>,
{
    let (value, estimate) = gk_panel(f, a, b, rule)?;
    let evaluations = panel_evals(rule);
    if estimate <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
        return Ok(QuadResult {
            value,
            error_estimate: estimate,
            evaluations,
        });
    }
    if depth >= cfg.max_depth {
        return Err(QuadError::ToleranceNotMet {
            a,
            b,
            value,
            error_estimate: estimate,
        });
    }
    let mid = 0.5 * (a + b);
    let left = adapt(f, a, mid, cfg, rule, depth + 1)?;
    let right = adapt(f, mid, b, cfg, rule, depth + 1)?;
    Ok(QuadResult {
        value: left.value + right.value,
        error_estimate: left.error_estimate + right.error_estimate,
        evaluations: left.evaluations + right.evaluations + evaluations,
    })
}

/// Adaptive integral of `f` over `[a, b]`.
///
/// Requires `a <= b`; the degenerate interval `a == b` returns exactly 0
/// with zero evaluations.
pub fn integrate_1d<F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult, QuadError>
where
    F: FnMut(f64) -> Result<f64, EvalError>,
{
    cfg.validate()?;
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(QuadError::InvalidInterval { a, b });
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let rule = rule_for(cfg.rule_order).expect("validated");
    let mut g = |x: f64| f(x).map_err(QuadError::Eval);
    adapt(&mut g, a, b, cfg, rule, 0)
}

/// Iterated integral of `f` over the box `bounds[0] x bounds[1] x ...`.
///
/// Coordinates are handed to `f` in axis order. Any zero-length axis makes
/// the result exactly 0 without evaluating `f`.
pub fn integrate_nd<F>(
    mut f: F,
    bounds: &[(f64, f64)],
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError>
where
    F: FnMut(&[f64]) -> Result<f64, EvalError>,
{
    cfg.validate()?;
    if bounds.is_empty() {
        return Err(QuadError::InvalidConfig(
            "the integration box needs at least one axis".into(),
        ));
    }
    if bounds.len() > cfg.max_dim {
        return Err(QuadError::DimensionLimit {
            dim: bounds.len(),
            max: cfg.max_dim,
        });
    }
    for &(a, b) in bounds {
        if !a.is_finite() || !b.is_finite() || a > b {
            return Err(QuadError::InvalidInterval { a, b });
        }
    }
    if bounds.iter().any(|&(a, b)| a == b) {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let mut prefix = Vec::with_capacity(bounds.len());
    nest(&mut f, bounds, &mut prefix, cfg)
}

fn nest<F>(
    f: &mut F,
    bounds: &[(f64, f64)],
    prefix: &mut Vec<f64>,
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError>
where
    F: FnMut(&[f64]) -> Result<f64, EvalError>,
{
    let (a, b) = bounds[0];
    let innermost = bounds.len() == 1;
    let inner_cfg = cfg.tightened();
    let mut child_error = 0.0f64;
    let mut child_evals = 0u64;
    let rule = rule_for(cfg.rule_order).expect("validated");

    let outer = {
        let mut g = |t: f64| -> Result<f64, QuadError> {
            prefix.push(t);
            let out = if innermost {
                child_evals += 1;
                f(prefix).map_err(QuadError::Eval)
            } else {
                nest(f, &bounds[1..], prefix, &inner_cfg).map(|inner| {
                    child_error += inner.error_estimate;
                    child_evals += inner.evaluations;
                    inner.value
                })
            };
            prefix.pop();
            out
        };
        adapt(&mut g, a, b, cfg, rule, 0)
    }?;

    Ok(QuadResult {
        value: outer.value,
        error_estimate: outer.error_estimate + child_error,
        evaluations: child_evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn horner(coeffs: &[f64], x: f64) -> f64 {
        coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Analytic integral of a coefficient polynomial over [a, b].
    fn poly_integral(coeffs: &[f64], a: f64, b: f64) -> f64 {
        let anti: Vec<f64> = std::iter::once(0.0)
            .chain(coeffs.iter().enumerate().map(|(k, c)| c / (k + 1) as f64))
            .collect();
        horner(&anti, b) - horner(&anti, a)
    }

    #[test]
    fn constant_over_unit_interval() {
        let r = integrate_1d(|_| Ok(1.0), 0.0, 1.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-15);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn sine_over_half_period() {
        let exact = -(std::f64::consts::PI.cos()) + 1.0; // = 2
        let r = integrate_1d(|x| Ok(x.sin()), 0.0, std::f64::consts::PI, &cfg()).unwrap();
        assert!((r.value - exact).abs() <= 1e-10);
    }

    #[test]
    fn empty_interval_is_exactly_zero() {
        let r = integrate_1d(|_| Ok(f64::NAN), 2.0, 2.0, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error_estimate, 0.0);
        assert_eq!(r.evaluations, 0);
    }

    #[test]
    fn reversed_interval_is_rejected() {
        assert!(matches!(
            integrate_1d(|_| Ok(1.0), 1.0, 0.0, &cfg()),
            Err(QuadError::InvalidInterval { .. })
        ));
    }

    #[test]
    fn polynomials_up_to_gauss_degree_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let degree = rng.gen_range(0..=13);
            let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(0.1..2.0)).collect();
            let a = rng.gen_range(0.0..1.0);
            let b = a + rng.gen_range(0.5..2.0);
            let exact = poly_integral(&coeffs, a, b);
            let r = integrate_1d(|x| Ok(horner(&coeffs, x)), a, b, &cfg()).unwrap();
            assert!(
                (r.value - exact).abs() <= 1e-13 * exact.abs(),
                "degree {degree} over [{a}, {b}]: {} vs {exact}",
                r.value
            );
        }
    }

    #[test]
    fn high_degree_polynomial_converges_adaptively() {
        // degree 22: at the Kronrod degree for the 15-point rule, beyond Gauss
        let exact = 3f64.powi(23) / 23.0;
        let r = integrate_1d(|x| Ok(x.powi(22)), 0.0, 3.0, &cfg()).unwrap();
        assert!((r.value - exact).abs() <= 1e-12 * exact);
    }

    #[test]
    fn rule_order_21_is_supported() {
        let c = QuadConfig {
            rule_order: 21,
            ..cfg()
        };
        let r = integrate_1d(|x| Ok(x.exp()), 0.0, 1.0, &c).unwrap();
        assert!((r.value - (std::f64::consts::E - 1.0)).abs() <= 1e-12);
        assert_eq!(r.evaluations, 21);
    }

    #[test]
    fn unsupported_rule_order_is_rejected() {
        let c = QuadConfig {
            rule_order: 7,
            ..cfg()
        };
        assert!(matches!(
            integrate_1d(|_| Ok(1.0), 0.0, 1.0, &c),
            Err(QuadError::InvalidConfig(_))
        ));
    }

    #[test]
    fn depth_exhaustion_reports_best_panel() {
        let tight = QuadConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            max_depth: 2,
            ..cfg()
        };
        match integrate_1d(|x| Ok((1000.0 * x).sin()), 0.0, 3.0, &tight) {
            Err(QuadError::ToleranceNotMet {
                value,
                error_estimate,
                ..
            }) => {
                assert!(value.is_finite());
                assert!(error_estimate > 1e-14);
            }
            other => panic!("expected tolerance failure, got {other:?}"),
        }
    }

    #[test]
    fn nonfinite_integrand_is_reported() {
        match integrate_1d(|x| Ok(1.0 / (x - 0.5)), 0.0, 1.0, &cfg()) {
            Err(QuadError::NonFiniteSample { at }) => assert_eq!(at, 0.5),
            other => panic!("expected non-finite sample, got {other:?}"),
        }
    }

    #[test]
    fn eval_errors_propagate() {
        let err = EvalError::DivisionByZero { node: "x1".into() };
        let e = err.clone();
        match integrate_1d(move |_| Err(e.clone()), 0.0, 1.0, &cfg()) {
            Err(QuadError::Eval(got)) => assert_eq!(got, err),
            other => panic!("expected eval error, got {other:?}"),
        }
    }

    #[test]
    fn separable_product_over_unit_square() {
        let r = integrate_nd(|c| Ok(c[0] * c[1]), &[(0.0, 1.0), (0.0, 1.0)], &cfg()).unwrap();
        assert!((r.value - 0.25).abs() <= 1e-10);
    }

    #[test]
    fn unit_cube_volume() {
        let r = integrate_nd(|_| Ok(1.0), &[(0.0, 1.0); 3], &cfg()).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn exp_sum_over_unit_square() {
        let exact = (std::f64::consts::E - 1.0).powi(2);
        let r = integrate_nd(
            |c| Ok((c[0] + c[1]).exp()),
            &[(0.0, 1.0), (0.0, 1.0)],
            &cfg(),
        )
        .unwrap();
        assert!((r.value - exact).abs() <= 1e-8);
        assert!((r.value - exact).abs() <= 10.0 * (r.error_estimate + 1e-10));
    }

    #[test]
    fn zero_length_axis_short_circuits() {
        let r = integrate_nd(|_| Ok(f64::NAN), &[(0.0, 1.0), (2.0, 2.0)], &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.evaluations, 0);
    }

    #[test]
    fn dimension_limit_is_enforced() {
        let c = QuadConfig { max_dim: 2, ..cfg() };
        assert!(matches!(
            integrate_nd(|_| Ok(1.0), &[(0.0, 1.0); 3], &c),
            Err(QuadError::DimensionLimit { dim: 3, max: 2 })
        ));
        assert!(matches!(
            integrate_nd(|_| Ok(1.0), &[], &cfg()),
            Err(QuadError::InvalidConfig(_))
        ));
    }

    #[test]
    fn linearity_within_combined_estimates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let cf: Vec<f64> = (0..5).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let cg: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let w = rng.gen_range(0.5..3.0);
            let alpha = rng.gen_range(-2.0..2.0);
            let beta = rng.gen_range(-2.0..2.0);
            let f = |x: f64| horner(&cf, x) + (w * x).sin();
            let g = |x: f64| horner(&cg, x) * (0.4 * x).exp();
            let a = 0.0;
            let b = rng.gen_range(1.0..3.0);
            let rf = integrate_1d(|x| Ok(f(x)), a, b, &cfg()).unwrap();
            let rg = integrate_1d(|x| Ok(g(x)), a, b, &cfg()).unwrap();
            let rc = integrate_1d(|x| Ok(alpha * f(x) + beta * g(x)), a, b, &cfg()).unwrap();
            let combined = alpha * rf.value + beta * rg.value;
            let budget = rc.error_estimate
                + alpha.abs() * rf.error_estimate
                + beta.abs() * rg.error_estimate
                + 1e-12;
            assert!(
                (rc.value - combined).abs() <= budget,
                "linearity violated: {} vs {combined} (budget {budget:e})",
                rc.value
            );
        }
    }

    // On an analytic family the true error should rarely exceed 10x the
    // reported estimate.
    #[test]
    fn error_estimates_are_honest() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut honest = 0u32;
        let total = 500u32;
        for case in 0..total {
            let a = rng.gen_range(0.0..1.5);
            let b = a + rng.gen_range(0.1..1.5);
            let (value, exact): (QuadResult, f64) = match case % 3 {
                0 => {
                    let degree = rng.gen_range(0..=8);
                    let coeffs: Vec<f64> =
                        (0..=degree).map(|_| rng.gen_range(-2.0..2.0)).collect();
                    let r = integrate_1d(|x| Ok(horner(&coeffs, x)), a, b, &cfg()).unwrap();
                    (r, poly_integral(&coeffs, a, b))
                }
                1 => {
                    let c = rng.gen_range(-2.0..2.0);
                    let w = rng.gen_range(0.3..3.0);
                    let phase = rng.gen_range(0.0..3.0);
                    let r =
                        integrate_1d(|x| Ok(c * (w * x + phase).sin()), a, b, &cfg()).unwrap();
                    let exact =
                        c / w * ((w * a + phase).cos() - (w * b + phase).cos());
                    (r, exact)
                }
                _ => {
                    let c = rng.gen_range(-2.0..2.0);
                    let w = rng.gen_range(0.3..2.0);
                    let r = integrate_1d(|x| Ok(c * (w * x).exp()), a, b, &cfg()).unwrap();
                    let exact = c / w * ((w * b).exp() - (w * a).exp());
                    (r, exact)
                }
            };
            if (value.value - exact).abs() <= 10.0 * value.error_estimate {
                honest += 1;
            }
        }
        assert!(
            honest * 100 >= total * 99,
            "only {honest}/{total} estimates were honest"
        );
    }

    #[test]
    fn identical_inputs_are_bitwise_identical() {
        let run = || {
            integrate_nd(
                |c| Ok((c[0] * c[1]).exp() * (c[0] + 2.0 * c[1]).sin()),
                &[(0.0, 2.0), (0.0, 1.5)],
                &cfg(),
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.error_estimate.to_bits(), b.error_estimate.to_bits());
        assert_eq!(a.evaluations, b.evaluations);
    }

    #[test]
    fn invalid_tolerances_are_rejected() {
        let c = QuadConfig { abs_tol: 0.0, ..cfg() };
        assert!(matches!(
            integrate_1d(|_| Ok(1.0), 0.0, 1.0, &c),
            Err(QuadError::InvalidConfig(_))
        ));
        let c = QuadConfig { max_depth: 0, ..cfg() };
        assert!(matches!(
            integrate_1d(|_| Ok(1.0), 0.0, 1.0, &c),
            Err(QuadError::InvalidConfig(_))
        ));
    }
}
