//! Exact arithmetic: rationals, real quadratic fields `Q(sqrt d)`, p-adic
//! valuations and residues in `Z[sqrt d] / p^A`.
//!
//! Values print (and parse) with a small grammar shared by every report
//! format:
//!
//! ```text
//! INT | INT "/" POSINT | "(" RAT ")+(" RAT ")sqrt(" INT ")"
//! ```

mod grammar;
pub mod nt;
mod quad;
mod rat;
mod residue;

pub use nt::{is_split, kronecker, Splitting};
pub use quad::QuadRat;
pub use rat::{rat, rat_int, vp, Rat};
pub(crate) use residue::{modulus_of, reduce_rat};
pub use residue::{reduce_mod, ResidueQuad};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields: Q(sqrt {0}) and Q(sqrt {1})")]
    MixedField(u64, u64),
    #[error("{0} is not a squarefree positive integer")]
    NotSquarefree(u64),
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("value {value} is not {p}-integral")]
    NotPIntegral { value: String, p: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {p}^{exp} does not fit in 62 bits")]
    ModulusTooLarge { p: u64, exp: u32 },
    #[error("residues modulo different moduli ({0} vs {1})")]
    MixedModulus(u64, u64),
    #[error("residue is not a unit")]
    NotAUnit,
    #[error("cannot parse exact value {0:?}")]
    Parse(String),
}
