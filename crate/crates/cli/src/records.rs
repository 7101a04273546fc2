//! Output rows. Column names and order are the CSV schema.

use rayon::prelude::*;
use serde::Serialize;
use spectral_tail::partition::refine_delta_sequence;
use spectral_tail::potential::l_epsilon;
use spectral_tail::{
    assemble_bracket, build_partition, error_exponents, negative_tail, theorem_expressions, weyl_tail_sum,
    BranchFamily, CoefficientP, ExponentReport, OraclePolicy, SpectralBracket,
};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketRow {
    pub eps: f64,
    #[serde(rename = "M")]
    pub cells: usize,
    pub delta: f64,
    pub n_lower: usize,
    pub n_upper: usize,
    pub s_lower: f64,
    pub s_upper: f64,
    pub l_eps: usize,
}

impl From<&SpectralBracket> for BracketRow {
    fn from(b: &SpectralBracket) -> Self {
        Self {
            eps: b.eps,
            cells: b.cells,
            delta: b.delta,
            n_lower: b.n_lower,
            n_upper: b.n_upper,
            s_lower: b.s_lower,
            s_upper: b.s_upper,
            l_eps: b.l_eps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellRow {
    pub eps: f64,
    pub cell: usize,
    pub left: f64,
    pub right: f64,
    pub n_dirichlet: usize,
    pub s_dirichlet: f64,
    pub n_neumann: usize,
    pub s_neumann: f64,
}

pub fn cell_rows(b: &SpectralBracket) -> Vec<CellRow> {
    b.per_cell
        .iter()
        .map(|c| CellRow {
            eps: b.eps,
            cell: c.index,
            left: c.left,
            right: c.right,
            n_dirichlet: c.dirichlet.count,
            s_dirichlet: c.dirichlet.sum,
            n_neumann: c.neumann.count,
            s_neumann: c.neumann.sum,
        })
        .collect()
}

/// Re-checks the ordering of a bracket before it leaves the program.
pub fn checked(b: SpectralBracket) -> Result<SpectralBracket, CliError> {
    if !b.is_consistent() {
        return Err(spectral_tail::Error::Numeric {
            branch: None,
            message: format!(
                "inconsistent bracket at eps = {}: n = [{}, {}], s = [{}, {}]",
                b.eps, b.n_lower, b.n_upper, b.s_lower, b.s_upper
            ),
        }
        .into());
    }
    Ok(b)
}

pub fn bracket(family: &BranchFamily, p: &CoefficientP, eps: f64, a: f64) -> Result<SpectralBracket, CliError> {
    checked(assemble_bracket(family, p, eps, a)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylRow {
    pub eps: f64,
    pub weyl: f64,
    pub quadrature_error: f64,
    pub l_eps: usize,
}

pub fn weyl(family: &BranchFamily, p: &CoefficientP, eps: f64) -> Result<WeylRow, CliError> {
    let w = weyl_tail_sum(family, p, eps)?;
    Ok(WeylRow { eps, weyl: w.total, quadrature_error: w.quadrature_error, l_eps: l_epsilon(family, eps)? })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRow {
    pub eps: f64,
    pub count: usize,
    pub sum: f64,
    pub discretization_error: f64,
    pub truncation_error: f64,
}

pub fn oracle(family: &BranchFamily, p: &CoefficientP, eps: f64, policy: &OraclePolicy) -> Result<OracleRow, CliError> {
    let o = negative_tail(family, p, eps, policy)?;
    Ok(OracleRow {
        eps,
        count: o.count,
        sum: o.sum,
        discretization_error: o.error.discretization,
        truncation_error: o.error.truncation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub eps: f64,
    pub s_lower: f64,
    pub s_upper: f64,
    pub weyl: f64,
    pub oracle_sum: Option<f64>,
    pub ratio_lower: Option<f64>,
    pub ratio_upper: Option<f64>,
    pub ratio_oracle: Option<f64>,
    pub oracle_err: Option<f64>,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0).then(|| num / den)
}

pub fn sweep_point(
    family: &BranchFamily,
    p: &CoefficientP,
    eps: f64,
    a: f64,
    policy: Option<&OraclePolicy>,
) -> Result<SweepRow, CliError> {
    let b = bracket(family, p, eps, a)?;
    let w = weyl_tail_sum(family, p, eps)?.total;
    let o = policy.map(|pol| negative_tail(family, p, eps, pol)).transpose()?;
    Ok(SweepRow {
        eps,
        s_lower: b.s_lower,
        s_upper: b.s_upper,
        weyl: w,
        oracle_sum: o.as_ref().map(|o| o.sum),
        ratio_lower: ratio(b.s_lower, w),
        ratio_upper: ratio(b.s_upper, w),
        ratio_oracle: o.as_ref().and_then(|o| ratio(o.sum, w)),
        oracle_err: o.as_ref().map(|o| o.error.total()),
    })
}

/// Sweep over `levels` in parallel, rows in grid order. Points failing the
/// partition admissibility test are skipped with a warning on stderr.
pub fn sweep(
    family: &BranchFamily,
    p: &CoefficientP,
    levels: &[f64],
    a: f64,
    policy: Option<&OraclePolicy>,
) -> Result<Vec<SweepRow>, CliError> {
    let results: Vec<Result<SweepRow, CliError>> =
        levels.par_iter().map(|&eps| sweep_point(family, p, eps, a, policy)).collect();
    let mut rows = Vec::with_capacity(levels.len());
    for (eps, r) in levels.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(e) if e.is_admissibility() => eprintln!("warning: skipping eps = {eps}: {e}"),
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremRow {
    pub eps: f64,
    pub delta: f64,
    pub c1: f64,
    pub c2: f64,
    pub main: f64,
    pub alpha_three_halves: f64,
    pub psi_power_term: f64,
    pub lower_expr: f64,
    pub upper_expr: f64,
    pub lower_vacuous: bool,
}

pub fn theorem(
    family: &BranchFamily,
    p: &CoefficientP,
    eps: f64,
    a: f64,
    c1: f64,
    c2: f64,
) -> Result<TheoremRow, CliError> {
    let t = theorem_expressions(family, p, eps, a, c1, c2)?;
    Ok(TheoremRow {
        eps,
        delta: t.delta,
        c1,
        c2,
        main: t.main,
        alpha_three_halves: t.alpha_three_halves,
        psi_power_term: t.psi_power_term,
        lower_expr: t.lower_expr,
        upper_expr: t.upper_expr,
        lower_vacuous: t.lower_vacuous,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaRow {
    pub eps: f64,
    pub i: usize,
    pub delta: f64,
    /// `delta_{i-1} / delta_i`, empty for `i = 0`.
    pub ratio: Option<f64>,
    pub ratio_bound: f64,
}

pub fn delta_sequence(family: &BranchFamily, eps: f64, a: f64, depth: Option<usize>) -> Result<Vec<DeltaRow>, CliError> {
    let part = build_partition(family, eps, a)?;
    let depth = depth.unwrap_or_else(|| spectral_tail::partition::default_refine_depth(a));
    let seq = refine_delta_sequence(&part, depth)?;
    let bound = 2.0 * part.psi1_pow_a();
    Ok(seq
        .deltas
        .iter()
        .enumerate()
        .map(|(i, &d)| DeltaRow {
            eps,
            i,
            delta: d,
            ratio: (i > 0).then(|| seq.deltas[i - 1] / d),
            ratio_bound: bound,
        })
        .collect())
}

pub fn exponents(a0: f64, m: f64) -> Result<ExponentReport, CliError> {
    Ok(error_exponents(a0, m)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Example33Row {
    pub eps: f64,
    pub b: f64,
    pub l_eps: usize,
    /// `psi_j(eps)` for the active branches, `;`-separated.
    pub psi: String,
    pub weyl: f64,
    #[serde(rename = "M")]
    pub cells: usize,
    pub delta: f64,
    pub n_lower: usize,
    pub n_upper: usize,
    pub s_lower: f64,
    pub s_upper: f64,
    pub oracle_count: Option<usize>,
    pub oracle_sum: Option<f64>,
    pub oracle_err: Option<f64>,
}

/// Smallest level at which the oracle runs for the example family; below it
/// `psi_1` grows like `exp(exp(1/eps))`.
pub const EXAMPLE33_ORACLE_FLOOR: f64 = 0.5;

pub fn example33(b: f64, eps: f64, a: f64, policy: Option<&OraclePolicy>) -> Result<Example33Row, CliError> {
    let family = BranchFamily::example33(b)?;
    let p = CoefficientP::constant(1.0)?;
    let l_eps = l_epsilon(&family, eps)?;
    let psi = (1..=l_eps)
        .filter_map(|j| family.psi(j, eps))
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(";");
    let br = bracket(&family, &p, eps, a)?;
    let weyl = weyl_tail_sum(&family, &p, eps)?.total;
    let policy = policy.filter(|_| {
        let feasible = eps >= EXAMPLE33_ORACLE_FLOOR;
        if !feasible {
            eprintln!("warning: oracle skipped for eps = {eps} < {EXAMPLE33_ORACLE_FLOOR}");
        }
        feasible
    });
    let o = policy.map(|pol| negative_tail(&family, &p, eps, pol)).transpose()?;
    Ok(Example33Row {
        eps,
        b,
        l_eps,
        psi,
        weyl,
        cells: br.cells,
        delta: br.delta,
        n_lower: br.n_lower,
        n_upper: br.n_upper,
        s_lower: br.s_lower,
        s_upper: br.s_upper,
        oracle_count: o.as_ref().map(|o| o.count),
        oracle_sum: o.as_ref().map(|o| o.sum),
        oracle_err: o.as_ref().map(|o| o.error.total()),
    })
}
