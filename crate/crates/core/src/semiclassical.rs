//! The Weyl-type main term
//! `(1 / 3 pi) sum_j int_{alpha_j >= eps} sqrt((alpha_j - eps) / p) (2 alpha_j + eps) dx`
//! and the error exponents for power-decaying envelopes.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::{BranchFamily, CoefficientP};
use crate::quad::{integrate_pieces, QuadResult, Tolerance};
use crate::sum::compensated_sum;

/// Per-branch share of the Weyl sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylBranch {
    pub j: usize,
    pub psi: Option<f64>,
    pub contribution: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylResult {
    pub eps: f64,
    pub total: f64,
    pub per_branch: Vec<WeylBranch>,
    pub quadrature_error: f64,
}

/// The Weyl integrand `(1/3pi) sqrt((alpha - eps)/p) (2 alpha + eps)`, zero
/// where `alpha <= eps`.
#[inline]
pub fn weyl_density(alpha: f64, p: f64, eps: f64) -> f64 {
    if alpha <= eps {
        return 0.0;
    }
    ((alpha - eps) / p).sqrt() * (2.0 * alpha + eps) / (3.0 * PI)
}

/// `int_0^upper weyl_density(alpha(x), p(x), eps) dx`, splitting at `breaks`.
/// With `soft_edge`, `alpha(upper) = eps` is assumed and the square-root zero
/// at `upper` is resolved by substitution.
pub fn weyl_branch_integral<A, P>(
    alpha: A,
    p: P,
    eps: f64,
    upper: f64,
    breaks: &[f64],
    soft_edge: bool,
    tol: Tolerance,
) -> Result<QuadResult>
where
    A: Fn(f64) -> f64,
    P: Fn(f64) -> f64,
{
    if !(upper > 0.0) {
        return Ok(QuadResult::ZERO);
    }
    integrate_pieces(|x| weyl_density(alpha(x), p(x), eps), 0.0, upper, breaks, soft_edge, tol)
}

pub(crate) fn branch_breaks(family: &BranchFamily, p: &CoefficientP) -> Vec<f64> {
    let mut breaks = family.envelope().kinks();
    breaks.extend(p.kinks());
    breaks
}

fn weyl_with_tolerance(family: &BranchFamily, p: &CoefficientP, eps: f64, tol: Tolerance) -> Result<WeylResult> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be > 0, got {eps}")));
    }
    let breaks = branch_breaks(family, p);
    let active: Vec<usize> = (1..=family.branch_bound(eps))
        .filter(|&j| family.alpha(j, 0.0) >= eps)
        .collect();
    let per_branch = active
        .par_iter()
        .map(|&j| {
            let psi = family.psi(j, eps);
            let r = match psi {
                None => QuadResult::ZERO,
                Some(s) if !s.is_finite() => {
                    return Err(Error::Numeric {
                        branch: Some(j),
                        message: format!("psi_{j}({eps}) exceeds the f64 range"),
                    })
                }
                Some(s) => weyl_branch_integral(|x| family.alpha(j, x), |x| p.value(x), eps, s, &breaks, true, tol)
                    .map_err(|e| e.on_branch(j))?,
            };
            Ok(WeylBranch { j, psi, contribution: r.value, error: r.error })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = compensated_sum(per_branch.iter().map(|b| b.contribution));
    let quadrature_error = compensated_sum(per_branch.iter().map(|b| b.error));
    Ok(WeylResult { eps, total, per_branch, quadrature_error })
}

/// Weyl tail sum over the branches with `alpha_j(0) >= eps`.
pub fn weyl_tail_sum(family: &BranchFamily, p: &CoefficientP, eps: f64) -> Result<WeylResult> {
    weyl_with_tolerance(family, p, eps, Tolerance::default())
}

/// Same as [`weyl_tail_sum`] with a caller-chosen quadrature tolerance.
pub fn weyl_tail_sum_with(family: &BranchFamily, p: &CoefficientP, eps: f64, tol: Tolerance) -> Result<WeylResult> {
    weyl_with_tolerance(family, p, eps, tol)
}

/// Partition exponent and rate for a power-decaying `alpha_1 ~ x^-a0` with
/// `sum_j alpha_j(0)^m < inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentReport {
    pub a0: f64,
    pub m: f64,
    pub admissible_m_sup: f64,
    pub a_param: f64,
    pub t0: f64,
}

/// `sup m = (2 - 3 a0)^2 / (2 a0 (4 - 3 a0))`.
pub fn admissible_m_sup(a0: f64) -> f64 {
    let d = 2.0 - 3.0 * a0;
    d * d / (2.0 * a0 * (4.0 - 3.0 * a0))
}

pub fn error_exponents(a0: f64, m: f64) -> Result<ExponentReport> {
    if !(a0 > 0.0 && a0 < 2.0 / 3.0) {
        return Err(Error::Domain(format!("a0 outside (0, 2/3): {a0}")));
    }
    let sup = admissible_m_sup(a0);
    if !(m > 0.0 && m < sup) {
        return Err(Error::Admissibility { a0, m, sup });
    }
    let d = 2.0 - 3.0 * a0;
    let a_param = (d * d + 6.0 * a0 * a0 * m) / (4.0 * d);
    let t0 = (d * d + 6.0 * a0 * a0 * m - 8.0 * a0 * m) / (16.0 * a0);
    Ok(ExponentReport { a0, m, admissible_m_sup: sup, a_param, t0 })
}
