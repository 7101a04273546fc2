//! Brackets and semiclassical estimates for the sum of the negative
//! eigenvalues below `-eps` of the half-line operator
//! `-(p(x) y')' - Q(x) y`, `y(0) = 0`, where `Q(x)` is a compact,
//! positive, monotone decreasing operator function described through its
//! eigenvalue branches `alpha_j(x)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`potential`]: the coefficient `p`, the branch family `alpha_j` and the
//!   level-set inverses `psi_j(eps)`.
//! * [`partition`]: the uniform cell partition of `[0, psi_1(eps)]` and the
//!   recursive width sequence.
//! * [`cells`]: exact spectra of the frozen-coefficient Dirichlet and Neumann
//!   model cells and the phase-space quantities `a_j`, `b_j`, `beta_j`.
//! * [`bounds`]: assembly of the two-sided bracket on the count and the sum.
//! * [`semiclassical`]: the Weyl-type tail sum and the error exponents.
//! * [`oracle`]: a finite-difference / Sturm-bisection ground truth.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cells;
mod error;
pub mod oracle;
pub mod partition;
pub mod potential;
pub mod quad;
pub mod semiclassical;
mod sum;

pub use bounds::{assemble_bracket, theorem_expressions, SpectralBracket, TheoremExpressionReport};
pub use error::{Error, Result};
pub use oracle::{negative_tail, OraclePolicy, OracleResult};
pub use partition::{build_partition, refine_delta_sequence, DeltaSequence, Partition};
pub use potential::{BranchFamily, CoefficientP, Coefficients, DecayClass, Eigenbasis, Envelope};
pub use semiclassical::{error_exponents, weyl_tail_sum, ExponentReport, WeylResult};
pub use sum::NeumaierSum;
