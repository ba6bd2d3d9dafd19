//! Taylor expansions of modular forms on Γ₀(4) around CM points.
//!
//! The crate is organized bottom-up:
//!
//! - [`arith`]: exact rationals, real quadratic fields and residues modulo
//!   prime powers.
//! - [`qseries`]: truncated q-expansions and the named series (Θ, η, F₂, E₂,
//!   E_k, Δ, H₅/₂).
//! - [`quasimod`]: the polynomial algebra `Q[X, Y, Z]` with `X = Θ`, `Y = F₂`,
//!   `Z = E₂`, its derivation `D` and modified Serre derivatives.
//! - [`taylor`]: the single-variable Taylor recursions, presets for the CM
//!   points `i`, `i/2` and `(1 + i√7)/2`, exact and modular evaluation.
//! - [`numeric`]: a high-precision floating oracle (Γ, periods, raising
//!   operators, recognition of algebraic numbers).
//! - [`congruence`]: reduction modulo `p^A` and detection of eventual
//!   quasiperiodicity.
//! - [`identities`]: the exact q-expansion identities tying these together.

pub mod arith;
pub mod congruence;
pub mod identities;
pub mod numeric;
pub mod qseries;
pub mod quasimod;
pub mod taylor;

pub use arith::{QuadRat, Rat, ResidueQuad};
pub use congruence::PeriodicityReport;
pub use numeric::{BigComplex, BigFloat, CmPoint};
pub use qseries::QSeries;
pub use quasimod::{DerivationTable, PhiSpec, WeightedPoly};
pub use taylor::{CoeffSeq, TaylorForm, TaylorPreset};
