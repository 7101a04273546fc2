//! Two-sided bracket on the count and the sum of the eigenvalues below `-eps`.
//!
//! Lower side: Dirichlet decoupling of `[0, psi_1]` into the partition cells,
//! each cell replaced by its Dirichlet model with coefficients frozen at the
//! right end (largest `p`, smallest `alpha_j` on the cell). Upper side:
//! Neumann decoupling at every partition point and at `psi_1`, each cell
//! replaced by its Neumann model frozen at the left end; past `psi_1` every
//! branch sits below `eps` and contributes nothing. Both comparisons move
//! eigenvalues monotonically, so count and sum are bracketed together.

use rayon::prelude::*;
use serde::Serialize;

use crate::cells::{beta_unchecked, cell_spectrum_dirichlet, cell_spectrum_neumann, Cell, CellSpectrum};
use crate::error::{Error, Result};
use crate::partition::{build_partition, Partition};
use crate::potential::{l_epsilon, BranchFamily, CoefficientP};
use crate::quad::{integrate, integrate_pieces, QuadResult, Tolerance};
use crate::semiclassical::branch_breaks;
use crate::sum::compensated_sum;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellRecord {
    pub index: usize,
    pub left: f64,
    pub right: f64,
    pub dirichlet: CellSpectrum,
    pub neumann: CellSpectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralBracket {
    pub eps: f64,
    pub a: f64,
    /// `M`, zero when the spectrum below `-eps` is empty.
    pub cells: usize,
    pub delta: f64,
    pub l_eps: usize,
    pub n_lower: usize,
    pub n_upper: usize,
    pub s_lower: f64,
    pub s_upper: f64,
    pub per_cell: Vec<CellRecord>,
}

impl SpectralBracket {
    fn empty(eps: f64, a: f64, l_eps: usize) -> Self {
        Self {
            eps,
            a,
            cells: 0,
            delta: 0.0,
            l_eps,
            n_lower: 0,
            n_upper: 0,
            s_lower: 0.0,
            s_upper: 0.0,
            per_cell: Vec::new(),
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.n_lower <= self.n_upper && self.s_lower <= self.s_upper
    }
}

/// Whether the spectrum below `-eps` is trivially empty: `alpha_1 <= eps`
/// everywhere.
fn spectrum_is_empty(family: &BranchFamily, eps: f64) -> bool {
    family.alpha(1, 0.0) <= eps
}

/// Bracket from the partition with exponent `a`. Cells are processed in
/// parallel and reduced in ascending cell order.
pub fn assemble_bracket(family: &BranchFamily, p: &CoefficientP, eps: f64, a: f64) -> Result<SpectralBracket> {
    let l_eps = l_epsilon(family, eps)?;
    if spectrum_is_empty(family, eps) {
        return Ok(SpectralBracket::empty(eps, a, l_eps));
    }
    let partition = build_partition(family, eps, a)?;
    Ok(bracket_on(&partition, family, p, l_eps))
}

pub fn bracket_on(partition: &Partition, family: &BranchFamily, p: &CoefficientP, l_eps: usize) -> SpectralBracket {
    let eps = partition.eps;
    let per_cell: Vec<CellRecord> = (1..=partition.cells)
        .into_par_iter()
        .map(|i| {
            let (left, right) = partition.cell(i);
            let cell = Cell { left, right };
            CellRecord {
                index: i,
                left,
                right,
                dirichlet: cell_spectrum_dirichlet(&cell, family, p, eps),
                neumann: cell_spectrum_neumann(&cell, family, p, eps),
            }
        })
        .collect();
    let n_lower = per_cell.iter().map(|c| c.dirichlet.count).sum();
    let n_upper = per_cell.iter().map(|c| c.neumann.count).sum();
    let s_lower = compensated_sum(per_cell.iter().flat_map(|c| c.dirichlet.modes.iter().map(|m| m.mu)));
    let s_upper = compensated_sum(per_cell.iter().flat_map(|c| c.neumann.modes.iter().map(|m| m.mu)));
    SpectralBracket {
        eps,
        a: partition.a,
        cells: partition.cells,
        delta: partition.delta,
        l_eps,
        n_lower,
        n_upper,
        s_lower,
        s_upper,
        per_cell,
    }
}

/// `(1/delta) int_from^to beta_j(eps, x) dx`; `to` is treated as a soft edge
/// when it equals `psi_j`.
#[allow(clippy::too_many_arguments)]
fn beta_integral(
    family: &BranchFamily,
    p: &CoefficientP,
    j: usize,
    eps: f64,
    delta: f64,
    from: f64,
    to: f64,
    at_psi: bool,
    tol: Tolerance,
) -> Result<QuadResult> {
    if !(to > from) {
        return Ok(QuadResult::ZERO);
    }
    let breaks = branch_breaks(family, p);
    let r = integrate_pieces(
        |x| beta_unchecked(family.alpha(j, x), eps, p.value(x), delta),
        from,
        to,
        &breaks,
        at_psi,
        tol,
    )
    .map_err(|e| e.on_branch(j))?;
    Ok(QuadResult { value: r.value / delta, error: r.error / delta })
}

/// One side of a per-cell inequality `lhs (<|>) rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellInequality {
    pub index: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub quadrature_error: f64,
}

/// For every interior cell `i < M`: the Dirichlet model sum against
/// `(1/delta) sum_{alpha_j(x_i) > eps} int_{x_i}^{phi_{i,j}} beta_j dx - 3 sum_{alpha_j(0) > eps} alpha_j(0)`
/// with `phi_{i,j} = min(x_{i+1}, psi_j)`. The model sum should exceed the
/// right side.
pub fn per_cell_lower_bounds(
    partition: &Partition,
    family: &BranchFamily,
    p: &CoefficientP,
    tol: Tolerance,
) -> Result<Vec<CellInequality>> {
    let eps = partition.eps;
    let delta = partition.delta;
    let jmax = family.branch_bound(eps);
    let tail = 3.0 * compensated_sum((1..=jmax).map(|j| family.alpha(j, 0.0)).filter(|&a| a > eps));
    (1..partition.cells)
        .into_par_iter()
        .map(|i| {
            let (left, right) = partition.cell(i);
            let next = partition.points[i + 1];
            let lhs = cell_spectrum_dirichlet(&Cell { left, right }, family, p, eps).sum;
            let mut main = QuadResult::ZERO;
            for j in (1..=jmax).filter(|&j| family.alpha(j, right) > eps) {
                let psi_j = family.psi(j, eps).unwrap_or(0.0);
                let phi = next.min(psi_j);
                main = main + beta_integral(family, p, j, eps, delta, right, phi, phi == psi_j, tol)?;
            }
            Ok(CellInequality { index: i, lhs, rhs: main.value - tail, quadrature_error: main.error })
        })
        .collect()
}

/// For every cell: the Neumann model sum against
/// `sum_{alpha_j(x_{i-1}) > eps} (alpha_j(x_{i-1}) + beta_j(eps, x_{i-1}))`.
/// The model sum should not exceed the right side.
pub fn per_cell_upper_bounds(partition: &Partition, family: &BranchFamily, p: &CoefficientP) -> Vec<CellInequality> {
    let eps = partition.eps;
    let delta = partition.delta;
    let jmax = family.branch_bound(eps);
    (1..=partition.cells)
        .map(|i| {
            let (left, right) = partition.cell(i);
            let lhs = cell_spectrum_neumann(&Cell { left, right }, family, p, eps).sum;
            let pv = p.value(left);
            let rhs = compensated_sum(
                (1..=jmax)
                    .map(|j| family.alpha(j, left))
                    .filter(|&a| a > eps)
                    .map(|a| a + beta_unchecked(a, eps, pv, delta)),
            );
            CellInequality { index: i, lhs, rhs, quadrature_error: 0.0 }
        })
        .collect()
}

/// The asymptotic two-sided expressions with user-chosen constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremExpressionReport {
    pub eps: f64,
    pub delta: f64,
    pub c1: f64,
    pub c2: f64,
    /// `(1/delta) sum_{j <= l_eps} int_0^{psi_j} beta_j dx`.
    pub main: f64,
    /// `sum_{j <= l_eps} int_0^delta alpha_j^{3/2} dx`.
    pub alpha_three_halves: f64,
    /// `psi_1^a sum_{j <= l_eps} alpha_j(0)`.
    pub psi_power_term: f64,
    pub lower_expr: f64,
    pub upper_expr: f64,
    pub quadrature_error: f64,
    /// The lower expression is negative and says nothing.
    pub lower_vacuous: bool,
}

pub fn theorem_expressions(
    family: &BranchFamily,
    p: &CoefficientP,
    eps: f64,
    a: f64,
    c1: f64,
    c2: f64,
) -> Result<TheoremExpressionReport> {
    if !(c1 >= 0.0 && c2 >= 0.0) {
        return Err(Error::Domain(format!("constants must be nonnegative, got C1 = {c1}, C2 = {c2}")));
    }
    let partition = build_partition(family, eps, a)?;
    let delta = partition.delta;
    let tol = Tolerance::default();
    let active: Vec<usize> = (1..=family.branch_bound(eps))
        .filter(|&j| family.alpha(j, 0.0) >= eps)
        .collect();

    let mut main = Vec::with_capacity(active.len());
    let mut corr = Vec::with_capacity(active.len());
    let mut quadrature_error = 0.0;
    for &j in &active {
        let psi_j = family.psi(j, eps).unwrap_or(0.0);
        if !psi_j.is_finite() {
            return Err(Error::Numeric { branch: Some(j), message: format!("psi_{j}({eps}) exceeds the f64 range") });
        }
        let m = beta_integral(family, p, j, eps, delta, 0.0, psi_j, true, tol)?;
        let c = integrate(|x| family.alpha(j, x).powf(1.5), 0.0, delta, tol).map_err(|e| e.on_branch(j))?;
        quadrature_error += m.error + c.error;
        main.push(m.value);
        corr.push(c.value);
    }
    let main = compensated_sum(main);
    let alpha_three_halves = compensated_sum(corr);
    let psi_power_term = partition.psi1_pow_a() * compensated_sum(active.iter().map(|&j| family.alpha(j, 0.0)));
    let correction = c1 * alpha_three_halves + c2 * psi_power_term;
    let lower_expr = main - correction;
    Ok(TheoremExpressionReport {
        eps,
        delta,
        c1,
        c2,
        main,
        alpha_three_halves,
        psi_power_term,
        lower_expr,
        upper_expr: main + correction,
        quadrature_error,
        lower_vacuous: lower_expr < 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{Coefficients, DecayClass, Envelope};
    use crate::semiclassical::weyl_tail_sum;

    fn unit_p() -> CoefficientP {
        CoefficientP::constant(1.0).unwrap()
    }

    fn power() -> BranchFamily {
        BranchFamily::power_inverse_square(0.5, 0.6).unwrap()
    }

    #[test]
    fn empty_bracket_above_alpha1() {
        let b = assemble_bracket(&power(), &unit_p(), 2.0, 0.5).unwrap();
        assert_eq!((b.n_lower, b.n_upper, b.cells), (0, 0, 0));
        assert_eq!((b.s_lower, b.s_upper), (0.0, 0.0));
        let b = assemble_bracket(&power(), &unit_p(), 1.0, 0.5).unwrap();
        assert_eq!(b.n_upper, 0);
    }

    #[test]
    fn inadmissible_eps_is_rejected() {
        // psi_1(0.8) = 0.5625, far below 2^(1/a)
        let err = assemble_bracket(&power(), &unit_p(), 0.8, 0.5).unwrap_err();
        assert!(matches!(err, Error::EpsTooLarge { .. }));
    }

    #[test]
    fn bracket_is_ordered() {
        for &eps in &[0.4, 0.2, 0.1, 0.05] {
            let b = assemble_bracket(&power(), &unit_p(), eps, 0.5).unwrap();
            assert!(b.is_consistent(), "{eps}: {b:?}");
            assert_eq!(b.per_cell.len(), b.cells);
        }
    }

    #[test]
    fn linear_cutoff_by_hand() {
        // alpha = 1 - x/25, eps = 0.5: psi_1 = 12.5, M = [sqrt 12.5] + 1 = 4,
        // delta = 3.125, points 0, 3.125, 6.25, 9.375, 12.5.
        let f = BranchFamily::new(
            Envelope::LinearCutoff { x0: 25.0 },
            Coefficients::Explicit { values: vec![1.0] },
            DecayClass::Unclassified,
            1.0,
        )
        .unwrap();
        let b = assemble_bracket(&f, &unit_p(), 0.5, 0.5).unwrap();
        assert_eq!(b.cells, 4);
        let delta: f64 = 3.125;
        let k1 = (std::f64::consts::PI / delta).powi(2);
        // Dirichlet, frozen right: alpha = 0.875, 0.75, 0.625, 0.5
        // mode m = 1 needs alpha - k1 > 0.5: only 0.875 (0.875 - 1.0106 < 0)
        // so no Dirichlet modes at all.
        assert!(0.875 - k1 < 0.5);
        assert_eq!(b.n_lower, 0);
        // Neumann, frozen left: alpha = 1, 0.875, 0.75, 0.625 each give the
        // constant mode; k = 1 gives alpha - 1.0106 < 0.5 throughout.
        assert_eq!(b.n_upper, 4);
        assert!((b.s_upper - (1.0 + 0.875 + 0.75 + 0.625)).abs() < 1e-15);
    }

    #[test]
    fn main_term_matches_weyl() {
        for &eps in &[0.4, 0.2, 0.1] {
            let t = theorem_expressions(&power(), &unit_p(), eps, 0.5, 0.0, 0.0).unwrap();
            let w = weyl_tail_sum(&power(), &unit_p(), eps).unwrap();
            assert!((t.main - w.total).abs() <= 1e-10 * w.total, "{} vs {}", t.main, w.total);
            assert_eq!(t.lower_expr, t.main);
            assert_eq!(t.upper_expr, t.main);
        }
    }

    #[test]
    fn main_term_linear_cutoff() {
        // alpha = 1 - x/100: the unit-interval value 0.052519 scaled by 100.
        let f = BranchFamily::new(
            Envelope::LinearCutoff { x0: 100.0 },
            Coefficients::Explicit { values: vec![1.0] },
            DecayClass::Unclassified,
            1.0,
        )
        .unwrap();
        let t = theorem_expressions(&f, &unit_p(), 0.5, 0.5, 0.0, 0.0).unwrap();
        let exact = 100.0 * (0.5f64.powf(1.5) + 0.8 * 0.5f64.powf(2.5)) / (3.0 * std::f64::consts::PI);
        assert!((t.main - exact).abs() < 1e-11);
    }

    #[test]
    fn huge_constant_is_flagged() {
        let t = theorem_expressions(&power(), &unit_p(), 0.1, 0.5, 3.0, 1e6).unwrap();
        assert!(t.lower_vacuous);
        assert!(t.lower_expr < 0.0);
        assert!(t.upper_expr > t.main);
        assert!(theorem_expressions(&power(), &unit_p(), 0.1, 0.5, -1.0, 0.0).is_err());
    }

    #[test]
    fn per_cell_inequalities_hold() {
        for &eps in &[0.2, 0.1] {
            let part = build_partition(&power(), eps, 0.5).unwrap();
            for c in per_cell_lower_bounds(&part, &power(), &unit_p(), Tolerance::default()).unwrap() {
                assert!(c.lhs > c.rhs - 1e-8, "{c:?}");
            }
            for c in per_cell_upper_bounds(&part, &power(), &unit_p()) {
                assert!(c.lhs <= c.rhs + 1e-8, "{c:?}");
            }
        }
    }
}
