//! Globally adaptive 21-point Gauss-Kronrod quadrature, with a change of
//! variables for integrands that vanish like a square root at the right end.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Integral value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

impl QuadResult {
    pub const ZERO: QuadResult = QuadResult { value: 0.0, error: 0.0 };
}

impl std::ops::Add for QuadResult {
    type Output = QuadResult;

    fn add(self, rhs: Self) -> Self {
        QuadResult { value: self.value + rhs.value, error: self.error + rhs.error }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-13, rel: 1e-12, max_intervals: 4000 }
    }
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    for (k, &x) in XGK[..10].iter().enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[k] * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    // mild floor against a lucky Gauss/Kronrod agreement
    (value, err.max(50.0 * f64::EPSILON * value.abs()))
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// `int_a^b f(x) dx` by bisecting the segment with the largest error estimate
/// until the total error meets `max(tol.abs, tol.rel * |value|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult::ZERO);
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::numeric(format!("integration limits must be finite, got [{a}, {b}]")));
    }
    let (value, error) = gk21(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut intervals = 1;
    while total_err > tol.abs.max(tol.rel * total.abs()) {
        if intervals >= tol.max_intervals {
            return Err(Error::numeric(format!(
                "quadrature on [{a}, {b}] did not converge: error {total_err:e} after {intervals} segments"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // segment cannot be split any further; accept what we have
            heap.push(worst);
            break;
        }
        let (lv, le) = gk21(&f, worst.a, mid);
        let (rv, re) = gk21(&f, mid, worst.b);
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Segment { a: mid, b: worst.b, value: rv, error: re });
        intervals += 1;
    }
    // re-add in a fixed order so the result does not depend on heap history
    let mut segs = heap.into_vec();
    segs.sort_by(|l, r| l.a.total_cmp(&r.a));
    let value = crate::sum::compensated_sum(segs.iter().map(|s| s.value));
    let error = crate::sum::compensated_sum(segs.iter().map(|s| s.error));
    Ok(QuadResult { value, error })
}

/// `int_a^b f(x) dx` for `f` vanishing like `sqrt(b - x)` at `b`, through
/// `x = b - s^2`, which turns the integrand into a smooth function of `s`.
pub fn integrate_soft_edge<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadResult> {
    if a >= b {
        return Ok(QuadResult::ZERO);
    }
    let s_max = (b - a).sqrt();
    integrate(|s| 2.0 * s * f(b - s * s), 0.0, s_max, tol)
}

/// Integral over `[a, b]` split at the interior `breaks`, with the last
/// piece treated as a square-root soft edge when `soft_edge` is set.
pub fn integrate_pieces<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    soft_edge: bool,
    tol: Tolerance,
) -> Result<QuadResult> {
    let mut nodes = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(f64::total_cmp);
    nodes.extend(inner);
    nodes.push(b);
    let last = nodes.len() - 2;
    let mut acc = QuadResult::ZERO;
    for (k, w) in nodes.windows(2).enumerate() {
        let piece = if soft_edge && k == last {
            integrate_soft_edge(&f, w[0], w[1], tol)?
        } else {
            integrate(&f, w[0], w[1], tol)?
        };
        acc = acc + piece;
    }
    Ok(acc)
}
