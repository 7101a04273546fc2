//! Finite-difference reference for the negative spectrum below `-eps`.
//!
//! Each branch is handled as a scalar problem `-(p y')' - alpha_j y` on
//! `[0, x_max]` with `y(0) = 0`, `x_max = (1 + pad) psi_j(eps)`. The
//! three-point stencil with `p` at the half nodes gives a symmetric
//! tridiagonal matrix whose eigenvalues below a threshold are counted by
//! Sturm inertia and located by bisection. Closing the interval with a
//! Dirichlet condition raises eigenvalues, a Neumann condition lowers them,
//! and the gap between the two estimates the truncation error. Grids `h` and
//! `h/2` give a Richardson estimate of the discretization error.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{BranchFamily, CoefficientP, Eigenbasis};
use crate::sum::compensated_sum;

/// Uniform grid `x_i = i h`, `i = 0..=n`, `h = x_max / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(x_max: f64, n: usize) -> Result<Self> {
        if !(x_max > 0.0 && x_max.is_finite()) || n < 2 {
            return Err(Error::Domain(format!("grid needs x_max > 0 and n >= 2, got x_max = {x_max}, n = {n}")));
        }
        Ok(Self { x_max, n })
    }

    /// Grid on `[0, x_max]` with spacing at most `h`.
    pub fn with_spacing(x_max: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::Domain(format!("grid spacing must be > 0, got {h}")));
        }
        Self::new(x_max, ((x_max / h).ceil() as usize).max(2))
    }

    pub fn h(&self) -> f64 {
        self.x_max / self.n as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.n {
            self.x_max
        } else {
            i as f64 * self.h()
        }
    }

    pub fn refined(&self) -> Self {
        Self { x_max: self.x_max, n: 2 * self.n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RightBc {
    Dirichlet,
    Neumann,
}

/// Symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `off`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
    off_sq: Vec<f64>,
    pivmin: f64,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Domain(format!(
                "tridiagonal shape mismatch: {} diagonal and {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(Error::numeric("tridiagonal matrix has non-finite entries"));
        }
        let off_sq: Vec<f64> = off.iter().map(|b| b * b).collect();
        let max_sq = off_sq.iter().copied().fold(1.0, f64::max);
        let pivmin = f64::MIN_POSITIVE * max_sq;
        Ok(Self { diag, off, off_sq, pivmin })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Number of eigenvalues below `x`, from the signs of the `LDL^T`
    /// pivots of `T - x I`.
    pub fn count_below(&self, x: f64) -> usize {
        let guard = |d: f64| if d.abs() < self.pivmin { -self.pivmin } else { d };
        let mut d = guard(self.diag[0] - x);
        let mut count = usize::from(d < 0.0);
        for (a, b2) in self.diag[1..].iter().zip(&self.off_sq) {
            d = guard((a - x) - b2 / d);
            count += usize::from(d < 0.0);
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    #[allow(clippy::too_many_arguments)]
    fn bisect(&self, lo: f64, hi: f64, c_lo: usize, c_hi: usize, limit: usize, tol: f64, out: &mut Vec<f64>) {
        if c_hi <= c_lo || c_lo >= limit {
            return;
        }
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            out.extend(std::iter::repeat_n(mid, c_hi.min(limit) - c_lo));
            return;
        }
        let c_mid = self.count_below(mid).clamp(c_lo, c_hi);
        self.bisect(lo, mid, c_lo, c_mid, limit, tol, out);
        self.bisect(mid, hi, c_mid, c_hi, limit, tol, out);
    }

    /// Ascending eigenvalues below `threshold`, each within `tol`.
    pub fn eigenvalues_below_with_tol(&self, threshold: f64, tol: f64) -> Vec<f64> {
        let k = self.count_below(threshold);
        let (lo, _) = self.gershgorin();
        let lo = lo - 1.0 - tol;
        let mut out = Vec::with_capacity(k);
        self.bisect(lo, threshold, 0, k, k, tol, &mut out);
        out
    }

    /// Ascending eigenvalues below `threshold` to `1e-10 max(1, |threshold|)`.
    pub fn eigenvalues_below(&self, threshold: f64) -> Vec<f64> {
        self.eigenvalues_below_with_tol(threshold, default_tol(threshold))
    }

    /// The `k` smallest eigenvalues, ascending.
    pub fn lowest_eigenvalues(&self, k: usize, tol: f64) -> Vec<f64> {
        let k = k.min(self.dim());
        let (lo, hi) = self.gershgorin();
        let (lo, hi) = (lo - 1.0 - tol, hi + 1.0 + tol);
        let mut out = Vec::with_capacity(k);
        self.bisect(lo, hi, 0, self.dim(), k, tol, &mut out);
        out
    }
}

fn default_tol(threshold: f64) -> f64 {
    1e-10 * threshold.abs().max(1.0)
}

/// Three-point discretization of `-(p y')' - alpha y`, `y(0) = 0`.
///
/// Dirichlet closing: unknowns at `x_1..x_{n-1}`. Neumann closing: unknowns
/// at `x_1..x_n` with a mirrored ghost node; the last row is symmetrized by
/// scaling the boundary unknown by `sqrt 2`, so the Dirichlet matrix is the
/// leading principal block of the Neumann one.
pub fn discretize<A, P>(alpha: A, p: P, grid: Grid, bc: RightBc) -> Result<SymTridiagonal>
where
    A: Fn(f64) -> f64,
    P: Fn(f64) -> f64,
{
    let n = grid.n;
    let h = grid.h();
    let h2 = h * h;
    let p_half: Vec<f64> = (0..n).map(|i| p((i as f64 + 0.5) * h) / h2).collect();
    let interior = n - 1;
    let dim = match bc {
        RightBc::Dirichlet => interior,
        RightBc::Neumann => n,
    };
    let mut diag = Vec::with_capacity(dim);
    let mut off = Vec::with_capacity(dim.saturating_sub(1));
    for i in 1..n {
        diag.push(p_half[i - 1] + p_half[i] - alpha(grid.node(i)));
        if i < n - 1 {
            off.push(-p_half[i]);
        }
    }
    if bc == RightBc::Neumann {
        let last = p_half[n - 1];
        off.push(-std::f64::consts::SQRT_2 * last);
        diag.push(2.0 * last - alpha(grid.node(n)));
    }
    SymTridiagonal::new(diag, off)
}

/// Discretization of branch `j` of `family`.
pub fn discretize_branch(
    family: &BranchFamily,
    p: &CoefficientP,
    j: usize,
    grid: Grid,
    bc: RightBc,
) -> Result<SymTridiagonal> {
    if family.eigenbasis() == Eigenbasis::Varying {
        return Err(Error::UnsupportedDecoupling);
    }
    discretize(|x| family.alpha(j, x), |x| p.value(x), grid, bc)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OraclePolicy {
    /// Coarse grid spacing; chosen per branch when absent.
    pub h: Option<f64>,
    /// Interval length past `psi_j`, as a fraction of `psi_j`.
    pub pad: f64,
    /// Report Richardson-extrapolated eigenvalues instead of the `h/2` ones.
    pub richardson: bool,
}

impl Default for OraclePolicy {
    fn default() -> Self {
        Self { h: None, pad: 0.5, richardson: true }
    }
}

impl OraclePolicy {
    fn validate(&self) -> Result<()> {
        if let Some(h) = self.h {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::Config(format!("oracle h must be > 0, got {h}")));
            }
        }
        if !(self.pad > 0.0 && self.pad.is_finite()) {
            return Err(Error::Config(format!("oracle pad must be > 0, got {}", self.pad)));
        }
        Ok(())
    }

    /// Coarse spacing for a branch, `min(0.01, psi_j / 2000)` by default.
    pub fn spacing(&self, psi_j: f64) -> f64 {
        self.h.unwrap_or_else(|| (psi_j / 2000.0).min(0.01))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct OracleError {
    pub discretization: f64,
    pub truncation: f64,
}

impl OracleError {
    pub fn total(&self) -> f64 {
        self.discretization + self.truncation
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchOracle {
    pub j: usize,
    pub psi: f64,
    pub x_max: f64,
    pub h: f64,
    pub eigenvalues: Vec<f64>,
    pub count: usize,
    pub sum: f64,
    pub error: OracleError,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub eps: f64,
    pub per_branch: Vec<BranchOracle>,
    pub count: usize,
    pub sum: f64,
    pub error: OracleError,
}

/// Richardson extrapolation for a second-order scheme.
pub fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

fn branch_oracle(
    family: &BranchFamily,
    p: &CoefficientP,
    j: usize,
    eps: f64,
    policy: &OraclePolicy,
) -> Result<Option<BranchOracle>> {
    let psi = match family.psi(j, eps) {
        None => return Ok(None),
        Some(s) if s <= 0.0 => return Ok(None),
        Some(s) if !s.is_finite() => {
            return Err(Error::Numeric { branch: Some(j), message: format!("psi_{j}({eps}) exceeds the f64 range") })
        }
        Some(s) => s,
    };
    let x_max = (1.0 + policy.pad) * psi;
    let h = policy.spacing(psi);
    let coarse = Grid::with_spacing(x_max, h)?;
    let fine = coarse.refined();
    let thr = -eps;
    let tol = default_tol(thr);

    let fine_d = discretize_branch(family, p, j, fine, RightBc::Dirichlet)?.eigenvalues_below_with_tol(thr, tol);
    let fine_n = discretize_branch(family, p, j, fine, RightBc::Neumann)?.eigenvalues_below_with_tol(thr, tol);
    let coarse_d = discretize_branch(family, p, j, coarse, RightBc::Dirichlet)?.lowest_eigenvalues(fine_d.len(), tol);
    if coarse_d.len() < fine_d.len() {
        return Err(Error::Numeric { branch: Some(j), message: "coarse grid too small for Richardson pairing".into() });
    }

    let discretization = compensated_sum(fine_d.iter().zip(&coarse_d).map(|(f, c)| (f - c).abs() / 3.0));
    let fine_sum_d = compensated_sum(fine_d.iter().map(|l| -l));
    let fine_sum_n = compensated_sum(fine_n.iter().map(|l| -l));
    let truncation = (fine_sum_n - fine_sum_d).abs();

    let eigenvalues: Vec<f64> = if policy.richardson {
        fine_d.iter().zip(&coarse_d).map(|(&f, &c)| richardson(c, f)).filter(|&l| l < thr).collect()
    } else {
        fine_d
    };
    let count = eigenvalues.len();
    let sum = compensated_sum(eigenvalues.iter().map(|l| -l));
    Ok(Some(BranchOracle {
        j,
        psi,
        x_max: coarse.x_max,
        h: coarse.h(),
        eigenvalues,
        count,
        sum,
        error: OracleError { discretization, truncation },
    }))
}

/// Reference count and sum of the eigenvalues below `-eps`, branch by branch.
pub fn negative_tail(family: &BranchFamily, p: &CoefficientP, eps: f64, policy: &OraclePolicy) -> Result<OracleResult> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be > 0, got {eps}")));
    }
    policy.validate()?;
    if family.eigenbasis() == Eigenbasis::Varying {
        return Err(Error::UnsupportedDecoupling);
    }
    let active: Vec<usize> = (1..=family.branch_bound(eps)).filter(|&j| family.alpha(j, 0.0) > eps).collect();
    let per_branch: Vec<BranchOracle> = active
        .par_iter()
        .map(|&j| branch_oracle(family, p, j, eps, policy))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let count = per_branch.iter().map(|b| b.count).sum();
    let sum = compensated_sum(per_branch.iter().map(|b| b.sum));
    let error = OracleError {
        discretization: compensated_sum(per_branch.iter().map(|b| b.error.discretization)),
        truncation: compensated_sum(per_branch.iter().map(|b| b.error.truncation)),
    };
    Ok(OracleResult { eps, per_branch, count, sum, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn stencil_entries() {
        let g = Grid::new(1.0, 4).unwrap();
        let t = discretize(|_| 0.0, |_| 1.0, g, RightBc::Dirichlet).unwrap();
        assert_eq!(t.diag(), &[32.0, 32.0, 32.0]);
        assert_eq!(t.off(), &[-16.0, -16.0]);
        let shifted = discretize(|_| 3.0, |_| 1.0, g, RightBc::Dirichlet).unwrap();
        assert_eq!(shifted.diag(), &[29.0, 29.0, 29.0]);
    }

    #[test]
    fn half_node_coefficients() {
        // p = 1 + x on a grid of four cells: half nodes 0.125, 0.375, ...
        let g = Grid::new(1.0, 4).unwrap();
        let t = discretize(|_| 0.0, |x| 1.0 + x, g, RightBc::Neumann).unwrap();
        let p = |x: f64| 16.0 * (1.0 + x);
        assert!((t.diag()[0] - (p(0.125) + p(0.375))).abs() < 1e-12);
        assert!((t.off()[1] + p(0.625)).abs() < 1e-12);
        assert!((t.diag()[3] - 2.0 * p(0.875)).abs() < 1e-12);
        assert!((t.off()[2] + 2f64.sqrt() * p(0.875)).abs() < 1e-12);
    }

    #[test]
    fn discrete_laplacian_is_exact() {
        let n = 50;
        let g = Grid::new(PI, n).unwrap();
        let h = g.h();
        let c = 2.0;
        let t = discretize(|_| c, |_| 1.0, g, RightBc::Dirichlet).unwrap();
        let evs = t.lowest_eigenvalues(n - 1, 1e-13);
        for (k, ev) in evs.iter().enumerate() {
            let theta = (k + 1) as f64 * h;
            let exact = 4.0 / (h * h) * (0.5 * theta).sin().powi(2) - c;
            assert!((ev - exact).abs() < 1e-12 * exact.abs().max(1.0), "{k}: {ev} vs {exact}");
        }
    }

    #[test]
    fn zero_potential_has_no_negative_spectrum() {
        let g = Grid::new(10.0, 200).unwrap();
        let t = discretize(|_| 0.0, |_| 1.0, g, RightBc::Neumann).unwrap();
        assert!(t.eigenvalues_below(0.0).is_empty());
        assert_eq!(t.count_below(0.0), 0);
    }

    #[test]
    fn constant_well_on_interval() {
        // -y'' - 5 y on [0, pi] with Dirichlet ends: k^2 - 5, k = 1, 2, ...
        // below -1.001 only k = 1 survives
        let g = Grid::new(PI, 400).unwrap();
        let coarse = discretize(|_| 5.0, |_| 1.0, g, RightBc::Dirichlet).unwrap();
        let fine = discretize(|_| 5.0, |_| 1.0, g.refined(), RightBc::Dirichlet).unwrap();
        let f = fine.eigenvalues_below(-1.001);
        assert_eq!(f.len(), 1);
        let c = coarse.lowest_eigenvalues(1, 1e-12);
        let extrapolated = richardson(c[0], f[0]);
        assert!((extrapolated + 4.0).abs() < 1e-9);
        assert!((f[0] + 4.0).abs() < 1e-4);
    }

    #[test]
    fn second_order_convergence() {
        let alpha = |x: f64| 1.0 / (1.0 + x).sqrt();
        let g = Grid::new(36.0, 900).unwrap();
        let lowest = |g: Grid| discretize(alpha, |_| 1.0, g, RightBc::Dirichlet).unwrap().lowest_eigenvalues(1, 1e-13)[0];
        let (e1, e2, e4) = (lowest(g), lowest(g.refined()), lowest(g.refined().refined()));
        let ratio = (e1 - e2) / (e2 - e4);
        assert!((3.0..=5.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn dirichlet_above_neumann() {
        let g = Grid::new(20.0, 400).unwrap();
        let alpha = |x: f64| 2.0 / (1.0 + x).sqrt();
        let d = discretize(alpha, |_| 1.0, g, RightBc::Dirichlet).unwrap();
        let n = discretize(alpha, |_| 1.0, g, RightBc::Neumann).unwrap();
        let ed = d.eigenvalues_below(-0.1);
        let en = n.eigenvalues_below(-0.1);
        assert!(en.len() >= ed.len());
        for (a, b) in en.iter().zip(&ed) {
            assert!(a <= b);
        }
    }

    #[test]
    fn inertia_matches_bisection_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(2..60);
            let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let off: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let t = SymTridiagonal::new(diag, off).unwrap();
            let all = t.lowest_eigenvalues(n, 1e-12);
            assert_eq!(all.len(), n);
            let trace: f64 = t.diag().iter().sum();
            let sum: f64 = all.iter().sum();
            assert!((trace - sum).abs() < 1e-8 * (1.0 + trace.abs()));
            for x in [-3.0, 0.0, 2.5] {
                let below = all.iter().filter(|&&l| l < x).count();
                let c = t.count_below(x);
                // an eigenvalue within tol of x may land on either side
                let near = all.iter().filter(|&&l| (l - x).abs() < 1e-9).count();
                assert!(c.abs_diff(below) <= near);
            }
        }
    }

    #[test]
    fn oracle_signs_and_errors() {
        let f = BranchFamily::power_inverse_square(0.5, 0.6).unwrap();
        let p = CoefficientP::constant(1.0).unwrap();
        let r = negative_tail(&f, &p, 0.2, &OraclePolicy::default()).unwrap();
        assert!(r.count > 0);
        assert!(r.sum > 0.0);
        for b in &r.per_branch {
            assert!(b.eigenvalues.iter().all(|&l| l < -0.2));
            assert!(b.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
        assert!(r.error.discretization < 1e-4);
        let empty = negative_tail(&f, &p, 1.5, &OraclePolicy::default()).unwrap();
        assert_eq!((empty.count, empty.sum), (0, 0.0));
    }

    #[test]
    fn varying_eigenbasis_is_refused() {
        let f = BranchFamily::power_inverse_square(0.5, 0.6).unwrap().with_eigenbasis(Eigenbasis::Varying);
        let p = CoefficientP::constant(1.0).unwrap();
        assert!(matches!(negative_tail(&f, &p, 0.2, &OraclePolicy::default()), Err(Error::UnsupportedDecoupling)));
    }
}
