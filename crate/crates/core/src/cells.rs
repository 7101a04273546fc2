//! Frozen-coefficient model operators on one cell.
//!
//! On `[x_{i-1}, x_i]` the Dirichlet minorant `-p(x_i) y'' - Q(x_i) y` has the
//! eigenvalues `p(x_i) (m pi / delta)^2 - alpha_j(x_i)`, `m >= 1`; the Neumann
//! majorant `-p(x_{i-1}) y'' - Q(x_{i-1}) y` has
//! `p(x_{i-1}) ((m - 1) pi / delta)^2 - alpha_j(x_{i-1})`. A mode is admitted
//! when its eigenvalue lies strictly below `-eps`; `mu` is the modulus of the
//! eigenvalue.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::{BranchFamily, CoefficientP};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub left: f64,
    pub right: f64,
}

impl Cell {
    pub fn new(left: f64, right: f64) -> Result<Self> {
        if !(left >= 0.0 && right > left) {
            return Err(Error::Domain(format!("cell needs 0 <= left < right, got [{left}, {right}]")));
        }
        Ok(Self { left, right })
    }

    pub fn width(&self) -> f64 {
        self.right - self.left
    }
}

/// One admitted model mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mode {
    pub m: usize,
    pub j: usize,
    pub mu: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CellSpectrum {
    pub count: usize,
    pub sum: f64,
    pub modes: Vec<Mode>,
}

impl CellSpectrum {
    fn push(&mut self, mode: Mode) {
        self.count += 1;
        self.sum += mode.mu;
        self.modes.push(mode);
    }
}

/// `a_j(x, t) = alpha - p (pi t / delta)^2`.
pub fn a_eval(alpha: f64, p: f64, delta: f64, t: f64) -> f64 {
    let k = PI * t / delta;
    alpha - p * k * k
}

fn check_branch(alpha: f64, eps: f64) -> Result<()> {
    if alpha < eps {
        return Err(Error::Domain(format!("branch excluded: alpha = {alpha} < eps = {eps}")));
    }
    Ok(())
}

/// `b_j = (delta / pi) sqrt((alpha - eps) / p)`, the mode number where
/// `a_j` falls to `eps`.
pub fn b_value(alpha: f64, eps: f64, p: f64, delta: f64) -> Result<f64> {
    check_branch(alpha, eps)?;
    Ok(delta / PI * ((alpha - eps) / p).sqrt())
}

/// `beta_j = int_0^{b_j} a_j(x, t) dt = (delta / 3 pi) sqrt((alpha - eps) / p) (2 alpha + eps)`.
pub fn beta_value(alpha: f64, eps: f64, p: f64, delta: f64) -> Result<f64> {
    check_branch(alpha, eps)?;
    Ok(beta_unchecked(alpha, eps, p, delta))
}

#[inline]
pub(crate) fn beta_unchecked(alpha: f64, eps: f64, p: f64, delta: f64) -> f64 {
    delta / (3.0 * PI) * ((alpha - eps).max(0.0) / p).sqrt() * (2.0 * alpha + eps)
}

/// `min(bound, psi_j)`, with an absent `psi_j` clamped to 0.
pub fn clamp_phi(bound: f64, psi_j: Option<f64>) -> f64 {
    psi_j.map_or(0.0, |s| bound.min(s))
}

/// Modes of `-p u'' - alpha_j u` on a cell of width `delta` whose eigenvalues
/// `p (k pi / delta)^2 - alpha_j` lie below `-eps`, with
/// `k = m - wavenumber_offset` for `m = 1, 2, ...`.
fn model_spectrum(delta: f64, p: f64, alphas: &[(usize, f64)], eps: f64, wavenumber_offset: usize) -> CellSpectrum {
    let mut spec = CellSpectrum::default();
    for &(j, alpha) in alphas {
        if alpha <= eps {
            continue;
        }
        let mut m = 1;
        loop {
            let mu = a_eval(alpha, p, delta, (m - wavenumber_offset) as f64);
            if !(mu > eps) {
                break;
            }
            spec.push(Mode { m, j, mu });
            m += 1;
        }
    }
    spec
}

/// Dirichlet model spectrum from explicit branch values `(j, alpha_j)`.
pub fn model_spectrum_dirichlet(delta: f64, p: f64, alphas: &[(usize, f64)], eps: f64) -> CellSpectrum {
    model_spectrum(delta, p, alphas, eps, 0)
}

/// Neumann model spectrum from explicit branch values `(j, alpha_j)`.
pub fn model_spectrum_neumann(delta: f64, p: f64, alphas: &[(usize, f64)], eps: f64) -> CellSpectrum {
    model_spectrum(delta, p, alphas, eps, 1)
}

fn frozen_branches(family: &BranchFamily, x: f64, eps: f64) -> Vec<(usize, f64)> {
    (1..=family.branch_bound(eps))
        .map(|j| (j, family.alpha(j, x)))
        .filter(|&(_, a)| a > eps)
        .collect()
}

/// Spectrum of the Dirichlet minorant, coefficients frozen at the right end.
pub fn cell_spectrum_dirichlet(cell: &Cell, family: &BranchFamily, p: &CoefficientP, eps: f64) -> CellSpectrum {
    let x = cell.right;
    model_spectrum_dirichlet(cell.width(), p.value(x), &frozen_branches(family, x, eps), eps)
}

/// Spectrum of the Neumann majorant, coefficients frozen at the left end.
pub fn cell_spectrum_neumann(cell: &Cell, family: &BranchFamily, p: &CoefficientP, eps: f64) -> CellSpectrum {
    let x = cell.left;
    model_spectrum_neumann(cell.width(), p.value(x), &frozen_branches(family, x, eps), eps)
}
