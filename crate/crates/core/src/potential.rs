//! The coefficient `p(x)` and the eigenvalue branches `alpha_j(x) = c_j g(x)`
//! of the potential `Q(x)`.
//!
//! Both live in closed catalogs so that monotonicity, the limit at infinity
//! and the level-set inverse are known analytically for every entry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `e^3`, the lower limit on the Example-3.3 breakpoint `b`.
const E_CUBED: f64 = 20.085_536_923_187_668;

fn one() -> f64 {
    1.0
}

/// The envelope `g(x) = alpha_1(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Envelope {
    /// `scale * (1 + x)^(-a0)`.
    Power {
        a0: f64,
        #[serde(default = "one")]
        scale: f64,
    },
    /// `max(0, 1 - x / x0)`.
    LinearCutoff { x0: f64 },
    /// `(2 - x/b) / ln ln b` on `[0, b]`, `1 / ln ln x` beyond.
    Example33 { b: f64 },
}

impl Envelope {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Envelope::Power { a0, scale } => {
                if !(a0.is_finite() && a0 > 0.0) {
                    return Err(Error::Config(format!("power envelope needs a0 > 0, got {a0}")));
                }
                if !(scale.is_finite() && scale > 0.0) {
                    return Err(Error::Config(format!(
                        "power envelope needs scale > 0, got {scale}"
                    )));
                }
            }
            Envelope::LinearCutoff { x0 } => {
                if !(x0.is_finite() && x0 > 0.0) {
                    return Err(Error::Config(format!("linear cutoff needs x0 > 0, got {x0}")));
                }
            }
            Envelope::Example33 { b } => {
                if !(b.is_finite() && b > E_CUBED) {
                    return Err(Error::Config(format!(
                        "example33 needs b > e^3 (about {E_CUBED:.4}), got {b}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, x: f64) -> f64 {
        match *self {
            Envelope::Power { a0, scale } => scale * (1.0 + x).powf(-a0),
            Envelope::LinearCutoff { x0 } => (1.0 - x / x0).max(0.0),
            Envelope::Example33 { b } => {
                if x <= b {
                    (2.0 - x / b) / b.ln().ln()
                } else {
                    1.0 / x.ln().ln()
                }
            }
        }
    }

    /// `sup { x >= 0 : g(x) >= level }`, `None` for an empty level set.
    /// May be `+inf` when the crossing is not representable.
    pub fn level_set_sup(&self, level: f64) -> Option<f64> {
        if self.value(0.0) < level {
            return None;
        }
        let x = match *self {
            Envelope::Power { a0, scale } => (scale / level).powf(1.0 / a0) - 1.0,
            Envelope::LinearCutoff { x0 } => x0 * (1.0 - level),
            Envelope::Example33 { b } => {
                let lnln_b = b.ln().ln();
                if level * lnln_b >= 1.0 {
                    b * (2.0 - level * lnln_b)
                } else {
                    (1.0 / level).exp().exp()
                }
            }
        };
        Some(x.max(0.0))
    }

    /// Interior points where `g` is not smooth.
    pub fn kinks(&self) -> Vec<f64> {
        match *self {
            Envelope::Example33 { b } => vec![b],
            _ => Vec::new(),
        }
    }

    /// Length scale used to lay out validation samples.
    fn sample_scale(&self) -> f64 {
        match *self {
            Envelope::Power { .. } => 10.0,
            Envelope::LinearCutoff { x0 } => x0,
            Envelope::Example33 { b } => 2.0 * b,
        }
    }

    /// Whether `g(x) -> 0` as `x -> inf`, decided from the closed form.
    fn vanishes_at_infinity(&self) -> bool {
        match *self {
            Envelope::Power { a0, .. } => a0 > 0.0,
            Envelope::LinearCutoff { .. } => true,
            // 1 / ln ln x -> 0, far too slowly to see on any f64 sample
            Envelope::Example33 { .. } => true,
        }
    }
}

/// The branch coefficients `c_j` of `alpha_j = c_j g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Coefficients {
    /// `c_j = j^-2`.
    InverseSquare,
    /// `c_j = r^(j-1)`.
    Geometric { r: f64 },
    /// Finitely many explicit values; `c_j = 0` past the end.
    Explicit { values: Vec<f64> },
}

impl Coefficients {
    pub fn validate(&self) -> Result<()> {
        match self {
            Coefficients::InverseSquare => Ok(()),
            Coefficients::Geometric { r } => {
                if *r > 0.0 && *r < 1.0 {
                    Ok(())
                } else {
                    Err(Error::Config(format!("geometric coefficients need r in (0, 1), got {r}")))
                }
            }
            Coefficients::Explicit { values } => {
                if values.is_empty() {
                    return Err(Error::Config("explicit coefficient list is empty".into()));
                }
                if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                    return Err(Error::Config(format!(
                        "explicit coefficients must be finite and nonnegative, got {v}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// `c_j` for `j >= 1`.
    pub fn get(&self, j: usize) -> f64 {
        debug_assert!(j >= 1);
        match self {
            Coefficients::InverseSquare => {
                let jf = j as f64;
                1.0 / (jf * jf)
            }
            Coefficients::Geometric { r } => r.powi((j - 1) as i32),
            Coefficients::Explicit { values } => values.get(j - 1).copied().unwrap_or(0.0),
        }
    }

    /// Smallest `J` such that `c_j < fraction` for every `j > J`.
    fn last_at_least(&self, fraction: f64) -> usize {
        if fraction <= 0.0 {
            return usize::MAX;
        }
        match self {
            Coefficients::InverseSquare => {
                let mut j = (1.0 / fraction).sqrt().floor() as usize;
                while self.get(j + 1) >= fraction {
                    j += 1;
                }
                while j > 0 && self.get(j) < fraction {
                    j -= 1;
                }
                j
            }
            Coefficients::Geometric { r } => {
                if fraction > 1.0 {
                    return 0;
                }
                let mut j = (fraction.ln() / r.ln()).floor() as usize + 1;
                while self.get(j + 1) >= fraction {
                    j += 1;
                }
                while j > 0 && self.get(j) < fraction {
                    j -= 1;
                }
                j
            }
            Coefficients::Explicit { values } => values
                .iter()
                .rposition(|c| *c >= fraction)
                .map_or(0, |i| i + 1),
        }
    }

    /// Whether `sum_j c_j^m` converges.
    fn summable(&self, m: f64) -> bool {
        match self {
            Coefficients::InverseSquare => m > 0.5,
            Coefficients::Geometric { .. } | Coefficients::Explicit { .. } => m > 0.0,
        }
    }
}

/// Decay class of `alpha_1` at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DecayClass {
    /// `alpha_1(x) >= (ln_n x)^(-xi)` on `[b, inf)`.
    LogDecay { xi: f64, n: u32 },
    /// `alpha_1(x) ~ x^(-a0)` with `a0` in `(0, 2/3)`.
    PowerDecay { a0: f64 },
    Unclassified,
}

impl DecayClass {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DecayClass::LogDecay { xi, n } => {
                if !(xi.is_finite() && xi > 0.0) {
                    return Err(Error::Config(format!("log decay needs xi > 0, got {xi}")));
                }
                if n < 1 {
                    return Err(Error::Config("log decay needs n >= 1".into()));
                }
                Ok(())
            }
            DecayClass::PowerDecay { a0 } => {
                if a0 > 0.0 && a0 < 2.0 / 3.0 {
                    Ok(())
                } else {
                    Err(Error::Config(format!("a0 outside (0, 2/3): {a0}")))
                }
            }
            DecayClass::Unclassified => Ok(()),
        }
    }
}

/// Whether the eigenvectors of `Q(x)` depend on `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Eigenbasis {
    #[default]
    Fixed,
    Varying,
}

/// The branches `alpha_j(x) = c_j g(x)` of `Q(x)` with their metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchFamily {
    envelope: Envelope,
    coefficients: Coefficients,
    decay_class: DecayClass,
    summability_exponent: f64,
    eigenbasis: Eigenbasis,
}

impl BranchFamily {
    pub fn new(
        envelope: Envelope,
        coefficients: Coefficients,
        decay_class: DecayClass,
        summability_exponent: f64,
    ) -> Result<Self> {
        envelope.validate()?;
        coefficients.validate()?;
        decay_class.validate()?;
        let m = summability_exponent;
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::Config(format!("summability exponent m must be > 0, got {m}")));
        }
        if !coefficients.summable(m) {
            return Err(Error::Config(format!(
                "sum_j alpha_j(0)^m diverges for m = {m} with {coefficients:?} coefficients"
            )));
        }
        Ok(Self {
            envelope,
            coefficients,
            decay_class,
            summability_exponent: m,
            eigenbasis: Eigenbasis::Fixed,
        })
    }

    pub fn with_eigenbasis(mut self, eigenbasis: Eigenbasis) -> Self {
        self.eigenbasis = eigenbasis;
        self
    }

    /// `(1+x)^(-a0)` envelope with `j^-2` coefficients, power-decay class.
    pub fn power_inverse_square(a0: f64, m: f64) -> Result<Self> {
        Self::new(
            Envelope::Power { a0, scale: 1.0 },
            Coefficients::InverseSquare,
            DecayClass::PowerDecay { a0 },
            m,
        )
    }

    /// The log-log decaying example family: `alpha_j = j^-2 alpha(x)` with `n = 2`,
    /// `xi = 1` log decay.
    pub fn example33(b: f64) -> Result<Self> {
        Self::new(
            Envelope::Example33 { b },
            Coefficients::InverseSquare,
            DecayClass::LogDecay { xi: 1.0, n: 2 },
            1.0,
        )
    }

    pub fn envelope(&self) -> &Envelope {
        &self.envelope
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn decay_class(&self) -> DecayClass {
        self.decay_class
    }

    pub fn summability_exponent(&self) -> f64 {
        self.summability_exponent
    }

    pub fn eigenbasis(&self) -> Eigenbasis {
        self.eigenbasis
    }

    /// `alpha_j(x)`, unchecked. Callers guarantee `j >= 1`, `x >= 0`.
    #[inline]
    pub fn alpha(&self, j: usize, x: f64) -> f64 {
        self.coefficients.get(j) * self.envelope.value(x)
    }

    /// Largest branch index that can reach `level` anywhere on `[0, inf)`;
    /// every branch past it satisfies `alpha_j(0) < level`.
    pub fn branch_bound(&self, level: f64) -> usize {
        let g0 = self.envelope.value(0.0);
        self.coefficients.last_at_least(level / g0)
    }

    /// `psi_j(eps)`, unchecked version of [`psi`].
    pub fn psi(&self, j: usize, eps: f64) -> Option<f64> {
        let c = self.coefficients.get(j);
        if c <= 0.0 {
            return None;
        }
        self.envelope.level_set_sup(eps / c)
    }
}

/// The scalar coefficient `p(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoefficientP {
    Constant { value: f64 },
    /// Linear interpolation between `(x, p)` knots, constant outside them.
    PiecewiseLinear { knots: Vec<(f64, f64)> },
}

impl CoefficientP {
    pub fn constant(value: f64) -> Result<Self> {
        let p = CoefficientP::Constant { value };
        p.validate()?;
        Ok(p)
    }

    pub fn piecewise_linear(knots: Vec<(f64, f64)>) -> Result<Self> {
        let p = CoefficientP::PiecewiseLinear { knots };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CoefficientP::Constant { value } => {
                if !(value.is_finite() && *value > 0.0) {
                    return Err(Error::Config(format!("p must be positive, got {value}")));
                }
            }
            CoefficientP::PiecewiseLinear { knots } => {
                if knots.is_empty() {
                    return Err(Error::Config("piecewise-linear p needs at least one knot".into()));
                }
                for w in knots.windows(2) {
                    if !(w[1].0 > w[0].0) {
                        return Err(Error::Config(format!(
                            "p knots must have strictly increasing x, got {} then {}",
                            w[0].0, w[1].0
                        )));
                    }
                }
                if let Some(k) = knots.iter().find(|k| !(k.0.is_finite() && k.1.is_finite() && k.1 > 0.0)) {
                    return Err(Error::Config(format!("p knot {k:?} must be finite with p > 0")));
                }
            }
        }
        Ok(())
    }

    /// `p(x)`, unchecked.
    pub fn value(&self, x: f64) -> f64 {
        match self {
            CoefficientP::Constant { value } => *value,
            CoefficientP::PiecewiseLinear { knots } => {
                let first = knots[0];
                let last = knots[knots.len() - 1];
                if x <= first.0 {
                    return first.1;
                }
                if x >= last.0 {
                    return last.1;
                }
                let i = knots.partition_point(|k| k.0 <= x);
                let (x0, p0) = knots[i - 1];
                let (x1, p1) = knots[i];
                p0 + (p1 - p0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// `(c1, c2)` with `c1 <= p <= c2`.
    pub fn bounds(&self) -> (f64, f64) {
        match self {
            CoefficientP::Constant { value } => (*value, *value),
            CoefficientP::PiecewiseLinear { knots } => knots.iter().fold(
                (f64::INFINITY, f64::NEG_INFINITY),
                |(lo, hi), k| (lo.min(k.1), hi.max(k.1)),
            ),
        }
    }

    /// Largest absolute slope.
    pub fn max_slope(&self) -> f64 {
        match self {
            CoefficientP::Constant { .. } => 0.0,
            CoefficientP::PiecewiseLinear { knots } => knots
                .windows(2)
                .map(|w| ((w[1].1 - w[0].1) / (w[1].0 - w[0].0)).abs())
                .fold(0.0, f64::max),
        }
    }

    /// Knot abscissae, where `p'` jumps.
    pub fn kinks(&self) -> Vec<f64> {
        match self {
            CoefficientP::Constant { .. } => Vec::new(),
            CoefficientP::PiecewiseLinear { knots } => knots.iter().map(|k| k.0).collect(),
        }
    }
}

/// `alpha_j(x)` with domain checks.
pub fn alpha_eval(family: &BranchFamily, j: usize, x: f64) -> Result<f64> {
    if j == 0 {
        return Err(Error::Domain("branch index j must be >= 1".into()));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("x must be >= 0, got {x}")));
    }
    Ok(family.alpha(j, x))
}

pub fn p_eval(p: &CoefficientP, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("x must be >= 0, got {x}")));
    }
    Ok(p.value(x))
}

/// `psi_j(eps) = sup { x >= 0 : alpha_j(x) >= eps }`, `None` when the set is
/// empty.
pub fn psi(family: &BranchFamily, j: usize, eps: f64) -> Result<Option<f64>> {
    if j == 0 {
        return Err(Error::Domain("branch index j must be >= 1".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be > 0, got {eps}")));
    }
    Ok(family.psi(j, eps))
}

/// Level-set supremum of a nonincreasing function by bracketed bisection.
///
/// The upper bracket starts at 1 and doubles until `f < level`; the result is
/// located to `1e-12 * max(1, x)`.
pub fn level_set_sup_bisect<F: Fn(f64) -> f64>(f: F, level: f64) -> Result<Option<f64>> {
    if f(0.0) < level {
        return Ok(None);
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while f(hi) >= level {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::numeric(format!(
                "level set of {level} is not bounded within f64 range"
            )));
        }
    }
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo))
}

/// `l_eps = #{ j : alpha_j(0) >= eps }`.
pub fn l_epsilon(family: &BranchFamily, eps: f64) -> Result<usize> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be > 0, got {eps}")));
    }
    let bound = family.branch_bound(eps);
    Ok((1..=bound).filter(|&j| family.alpha(j, 0.0) >= eps).count())
}

/// `ln_0 x = x`, `ln_n x = ln(ln_{n-1} x)`.
pub fn iterated_log(n: u32, x: f64) -> Result<f64> {
    let mut v = x;
    for k in 0..n {
        if !(v > 0.0) {
            return Err(Error::Domain(format!(
                "ln_{} undefined at x = {x}: ln_{k} x = {v} is not positive",
                k + 1
            )));
        }
        v = v.ln();
    }
    Ok(v)
}

/// Pass/fail of one hypothesis on the sample grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub sample_count: usize,
    pub checks: Vec<ConditionCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Deterministic sample grid: half linear on `[0, L]`, half geometric on
/// `[L, 1e6 L]`.
fn sample_grid(scale: f64, count: usize) -> Vec<f64> {
    let n_lin = count.div_ceil(2).max(2);
    let n_log = (count - count.div_ceil(2)).max(1);
    let mut xs: Vec<f64> = (0..n_lin).map(|i| scale * i as f64 / (n_lin - 1) as f64).collect();
    for i in 1..=n_log {
        xs.push(scale * 1e6_f64.powf(i as f64 / n_log as f64));
    }
    xs
}

/// Number of branches sampled by the validator.
const VALIDATED_BRANCHES: usize = 16;

fn check(name: &'static str, failure: Option<String>, ok: &str) -> ConditionCheck {
    match failure {
        None => ConditionCheck { name, passed: true, detail: ok.to_string() },
        Some(detail) => ConditionCheck { name, passed: false, detail },
    }
}

/// Checks the standing hypotheses on `Q` and `p` at deterministic samples.
pub fn validate_family(family: &BranchFamily, p: &CoefficientP, sample_count: usize) -> Result<ValidationReport> {
    if sample_count < 2 {
        return Err(Error::Domain(format!("sample_count must be >= 2, got {sample_count}")));
    }
    let xs = sample_grid(family.envelope.sample_scale(), sample_count);
    let branches = match &family.coefficients {
        Coefficients::Explicit { values } => values.len(),
        _ => VALIDATED_BRANCHES,
    };
    let mut checks = Vec::new();

    // Q1: positive wherever the envelope is.
    let q1 = (1..=branches).find_map(|j| {
        xs.iter().find_map(|&x| {
            let a = family.alpha(j, x);
            let g = family.envelope.value(x);
            (a < 0.0 || (g > 0.0 && a <= 0.0)).then(|| format!("alpha_{j}({x}) = {a} not positive"))
        })
    });
    checks.push(check("Q1", q1, "branches positive where the envelope is positive"));

    // Q2: nonincreasing in x for each j and ordered in j.
    let mut q2 = (1..=branches).find_map(|j| {
        xs.windows(2).find_map(|w| {
            let (a0, a1) = (family.alpha(j, w[0]), family.alpha(j, w[1]));
            (a1 > a0).then(|| format!("alpha_{j} increases from {a0} at x={} to {a1} at x={}", w[0], w[1]))
        })
    });
    if q2.is_none() {
        q2 = xs.iter().find_map(|&x| {
            (1..branches).find_map(|j| {
                let (hi, lo) = (family.alpha(j, x), family.alpha(j + 1, x));
                (lo > hi).then(|| format!("alpha_{} ({lo}) exceeds alpha_{j} ({hi}) at x={x}", j + 1))
            })
        });
    }
    checks.push(check("Q2", q2, "branches nonincreasing in x and ordered in j"));

    // Q3: ||Q(x)|| = alpha_1(x) -> 0.
    let q3 = if !family.envelope.vanishes_at_infinity() {
        Some("envelope does not vanish at infinity".to_string())
    } else {
        let last = *xs.last().expect("nonempty grid");
        let (g0, g_last) = (family.alpha(1, 0.0), family.alpha(1, last));
        (g_last >= g0 && g0 > 0.0).then(|| format!("alpha_1 does not decay: {g0} at 0, {g_last} at {last}"))
    };
    checks.push(check("Q3", q3, "alpha_1 vanishes at infinity"));

    let c1 = family.coefficients.get(1);
    let norm = ((c1 - 1.0).abs() > 1e-15).then(|| format!("c_1 = {c1}, expected 1 so that alpha_1 = ||Q||"));
    checks.push(check("norm", norm, "alpha_1 = ||Q(x)||"));

    let (lo, hi) = p.bounds();
    let p1 = if !(lo > 0.0) {
        Some(format!("lower bound c1 = {lo} not positive"))
    } else {
        xs.iter().find_map(|&x| {
            let v = p.value(x);
            (!(lo <= v && v <= hi)).then(|| format!("p({x}) = {v} outside [{lo}, {hi}]"))
        })
    };
    checks.push(check("p1", p1, &format!("{lo} <= p <= {hi}")));

    let slope = p.max_slope();
    let p2 = (!slope.is_finite()).then(|| format!("slope {slope} unbounded"));
    checks.push(check("p2", p2, &format!("|p'| <= {slope}")));

    let p3 = xs.windows(2).find_map(|w| {
        let (v0, v1) = (p.value(w[0]), p.value(w[1]));
        (v1 < v0).then(|| format!("p decreases from {v0} at x={} to {v1} at x={}", w[0], w[1]))
    });
    checks.push(check("p3", p3, "p nondecreasing"));

    match family.decay_class {
        DecayClass::LogDecay { xi, n } => {
            // start where ln_n x >= 1, and past the example breakpoint
            let mut start = 1.0_f64;
            for _ in 0..n {
                start = start.exp();
            }
            if let Envelope::Example33 { b } = family.envelope {
                start = start.max(b);
            }
            let fail = if !start.is_finite() {
                Some(format!("ln_{n} x reaches 1 beyond f64 range"))
            } else {
                (0..sample_count).find_map(|i| {
                    let x = start * 1e6_f64.powf(i as f64 / (sample_count - 1) as f64);
                    let floor = iterated_log(n, x).ok()?.powf(-xi);
                    let a = family.alpha(1, x);
                    (a < floor * (1.0 - 1e-12)).then(|| format!("alpha_1({x}) = {a} below (ln_{n} x)^-{xi} = {floor}"))
                })
            };
            checks.push(check("alpha1", fail, &format!("alpha_1 >= (ln_{n} x)^-{xi} from x = {start}")));
        }
        DecayClass::PowerDecay { a0 } => {
            let fail = match family.envelope {
                Envelope::Power { a0: e, .. } if (e - a0).abs() <= 1e-12 => None,
                Envelope::Power { a0: e, .. } => Some(format!("envelope exponent {e} differs from a0 = {a0}")),
                _ => Some("envelope is not of power type".to_string()),
            };
            checks.push(check("alpha2", fail, &format!("alpha_1 ~ x^-{a0}, a0 in (0, 2/3)")));
        }
        DecayClass::Unclassified => {}
    }

    Ok(ValidationReport { sample_count, checks })
}
