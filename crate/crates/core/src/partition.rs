//! Uniform partition of `[0, psi_1(eps)]` and the recursive width sequence
//! `delta_i` used to control the first cell.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::BranchFamily;

/// Default partition exponent.
pub const DEFAULT_A: f64 = 0.5;

/// `0 = x_0 < x_1 < ... < x_M = psi_1(eps)` with `M = [psi_1^a] + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition {
    pub eps: f64,
    pub a: f64,
    pub psi1: f64,
    pub cells: usize,
    pub delta: f64,
    pub points: Vec<f64>,
}

impl Partition {
    /// Builds the partition directly from `psi_1(eps)`.
    pub fn from_psi1(eps: f64, psi1: f64, a: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Domain(format!("partition exponent a must lie in (0, 1), got {a}")));
        }
        if !psi1.is_finite() {
            return Err(Error::numeric(format!(
                "psi_1({eps}) is not representable as a finite f64"
            )));
        }
        let power = psi1.powf(a);
        if !(power >= 2.0) {
            return Err(Error::EpsTooLarge { eps, a, power, min_psi1: 2f64.powf(1.0 / a) });
        }
        let cells = power.floor() as usize + 1;
        let delta = psi1 / cells as f64;
        let mut points: Vec<f64> = (0..cells).map(|i| i as f64 * delta).collect();
        points.push(psi1);
        Ok(Self { eps, a, psi1, cells, delta, points })
    }

    /// `psi_1(eps)^a`.
    pub fn psi1_pow_a(&self) -> f64 {
        self.psi1.powf(self.a)
    }

    /// `[x_{i-1}, x_i]` for `1 <= i <= M`.
    pub fn cell(&self, i: usize) -> (f64, f64) {
        (self.points[i - 1], self.points[i])
    }
}

/// Partition for `eps`; fails when `psi_1` is absent or `psi_1^a < 2`.
pub fn build_partition(family: &BranchFamily, eps: f64, a: f64) -> Result<Partition> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be > 0, got {eps}")));
    }
    match family.psi(1, eps) {
        None => Err(Error::NoNegativeSpectrum { eps, alpha0: family.alpha(1, 0.0) }),
        Some(psi1) => Partition::from_psi1(eps, psi1, a),
    }
}

/// `delta_0 = delta`, `delta_i = delta_{i-1} / ([delta_{i-1} psi_1^((i+1)a - 1)] + 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaSequence {
    pub eps: f64,
    pub a: f64,
    pub psi1: f64,
    pub deltas: Vec<f64>,
    /// First index `i` with `delta_i <= 1`, if reached within the sequence.
    pub first_at_most_one: Option<usize>,
}

impl DeltaSequence {
    /// Smallest natural `i_0 >= 1/a - 2`.
    pub fn termination_index(a: f64) -> usize {
        (1.0 / a - 2.0).ceil().max(0.0) as usize
    }

    /// `delta_{i-1} / delta_i` for `i = 1..=K`.
    pub fn ratios(&self) -> impl Iterator<Item = f64> + '_ {
        self.deltas.windows(2).map(|w| w[0] / w[1])
    }
}

/// Default refinement depth `ceil(1/a - 2) + 1`.
pub fn default_refine_depth(a: f64) -> usize {
    DeltaSequence::termination_index(a) + 1
}

pub fn refine_delta_sequence(partition: &Partition, depth: usize) -> Result<DeltaSequence> {
    if depth < 1 {
        return Err(Error::Domain("refinement depth K must be >= 1".into()));
    }
    let (psi1, a) = (partition.psi1, partition.a);
    let mut deltas = Vec::with_capacity(depth + 1);
    deltas.push(partition.delta);
    for i in 1..=depth {
        let prev = deltas[i - 1];
        let z = prev * psi1.powf((i + 1) as f64 * a - 1.0);
        deltas.push(prev / (z.floor() + 1.0));
    }
    let first_at_most_one = deltas.iter().position(|&d| d <= 1.0);
    Ok(DeltaSequence { eps: partition.eps, a, psi1, deltas, first_at_most_one })
}
