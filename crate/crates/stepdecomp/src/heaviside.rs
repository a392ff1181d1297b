//! The exact step function, its sigmoid smoothing family, and a
//! deterministic sample generator for the identity checks.

/// Saturation band for [`SigmoidParams`], in units of `1/k`: beyond
/// `tail_cut/k` from the origin the sigmoid differs from the step by at
/// most `exp(-tail_cut)` (about 4e-18 at the default of 40), which is
/// below double-precision resolution of the [0, 1] range.
pub const DEFAULT_TAIL_CUT: f64 = 40.0;

/// `exp` overflows past this; the sigmoid is exactly 0 or 1 to double
/// precision long before.
const EXP_CLAMP: f64 = 709.0;

/// Exact unit step: 1 for positive argument, 0 for negative, 1/2 at zero
/// (both signed zeros).
///
/// Panics on NaN input; +-infinity saturate to 1 and 0.
pub fn step(x: f64) -> f64 {
    assert!(!x.is_nan(), "step: NaN input");
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Steepness and saturation band of one member of the sigmoid family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmoidParams {
    k: f64,
    tail_cut: f64,
}

impl SigmoidParams {
    /// Panics unless `k` is finite and positive.
    pub fn new(k: f64) -> SigmoidParams {
        assert!(k.is_finite() && k > 0.0, "sigmoid steepness must be positive");
        SigmoidParams {
            k,
            tail_cut: DEFAULT_TAIL_CUT,
        }
    }

    /// Panics unless `tail_cut` is finite and positive.
    pub fn with_tail_cut(mut self, tail_cut: f64) -> SigmoidParams {
        assert!(
            tail_cut.is_finite() && tail_cut > 0.0,
            "tail cut must be positive"
        );
        self.tail_cut = tail_cut;
        self
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn tail_cut(&self) -> f64 {
        self.tail_cut
    }
}

/// Smooth step `1/(1 + exp(-k*x))`, exactly 0.5 at `x = 0`, clamped to
/// exactly 0 or 1 once `|k*x| > 709` so the exponential cannot overflow.
pub fn sigmoid(x: f64, p: SigmoidParams) -> f64 {
    let t = p.k * x;
    if t > EXP_CLAMP {
        1.0
    } else if t < -EXP_CLAMP {
        0.0
    } else {
        1.0 / (1.0 + (-t).exp())
    }
}

/// Closed-form derivative `k*s*(1-s)` with `s = sigmoid(x, p)`.
///
/// Even in `x`, which is the smooth counterpart of the step family's
/// reflection antisymmetry: `d/du sigmoid(u - c) = -d/du sigmoid(c - u)`.
pub fn sigmoid_derivative(x: f64, p: SigmoidParams) -> f64 {
    let s = sigmoid(x, p);
    p.k * s * (1.0 - s)
}

/// Deterministic f64 sample set for the exact identity suites: signed
/// zeros, denormals, boundary magnitudes, then a splitmix64-driven sweep
/// over the full finite range (sign, exponent and mantissa all vary;
/// infinities and NaN are excluded). The same `count` always yields the
/// same samples.
pub fn deterministic_samples(count: usize) -> Vec<f64> {
    const SPECIALS: [f64; 16] = [
        0.0,
        -0.0,
        5e-324,
        -5e-324,
        1e-310,
        -1e-310,
        f64::MIN_POSITIVE,
        -f64::MIN_POSITIVE,
        f64::EPSILON,
        -f64::EPSILON,
        1.0,
        -1.0,
        1e300,
        -1e300,
        f64::MAX,
        -f64::MAX,
    ];
    let mut out: Vec<f64> = SPECIALS.iter().copied().take(count).collect();
    let mut state = 0x853c_49e6_748f_ea9bu64;
    while out.len() < count {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        let sign = z & 0x8000_0000_0000_0000;
        let exponent = ((z >> 52) & 0x7ff) % 0x7ff; // 0..=2046: denormals through f64::MAX
        let mantissa = z & 0x000f_ffff_ffff_ffff;
        out.push(f64::from_bits(sign | (exponent << 52) | mantissa));
    }
    out
}
