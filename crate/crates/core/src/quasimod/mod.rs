//! Quasimodular forms on Γ₀(4) as weighted polynomials in
//! `X = Θ` (weight 1/2), `Y = F₂` (weight 2) and `Z = E₂` (weight 2).
//!
//! Weights are handled doubled (`k2 = 2k`), so `X^i Y^j Z^l` has
//! `k2 = i + 4j + 4l`.

mod basis;
mod parse;
mod poly;
mod serre;

pub use basis::{express_in_basis, to_qseries};
pub use poly::{Monomial, WeightedPoly};
pub use serre::{
    iterate_serre, iterate_serre_all, serre_apply, serre_derivation, serre_derivation_symbolic,
    DerivationTable, PhiSpec,
};

use thiserror::Error;

use crate::qseries::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasimodError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("series is not in the algebra at weight {k2}/2 (residual at q^{at})")]
    NotInAlgebra { k2: u32, at: usize },
    #[error("not enough coefficients ({have}) to match {need} monomials")]
    TooFewCoefficients { have: usize, need: usize },
    #[error("E2-part of {0} does not cancel")]
    ZPartNonzero(&'static str),
    #[error("symbolic and q-expansion derivations of {0} disagree")]
    CrossCheckFailed(&'static str),
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
