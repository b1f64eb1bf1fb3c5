//! Shared foundations for soliton-forge.
//!
//! This crate holds the value types every other crate exchanges:
//!
//! * [`Grid`] and [`GridField`]: a complex state `u(x)` on a uniform
//!   periodic grid, with CSV input and output;
//! * [`SpectrumSym`]: an unordered spectrum stored as power sums
//!   `s_j = Σ z_n^j`, with root recovery through Newton's identities and a
//!   companion matrix;
//! * [`BetaPoly`] and [`PhasePoint`]: the real parameter polynomial `β` and
//!   the pair `(𝐬, β)` describing a pure multi-soliton;
//! * [`hs_norm`]: discrete Sobolev norms.
//!
//! All types are immutable values, and every operation is a pure function.

pub mod beta;
pub mod error;
pub mod field;
pub mod fmt;
pub mod grid;
pub mod norms;
pub mod phase;
pub mod poly;
pub mod spectral;
pub mod sym;

pub use beta::{reduce_mod_char, BetaPoly, Node};
pub use error::{Error, Result};
pub use field::GridField;
pub use grid::Grid;
pub use norms::hs_norm;
pub use num_complex::Complex64;
pub use phase::PhasePoint;
pub use sym::{Root, SpectrumSym};

/// Power sums of a root multiset (see [`SpectrumSym::from_roots`]).
pub fn sym_from_roots(roots: &[Complex64]) -> Result<SpectrumSym> {
    SpectrumSym::from_roots(roots)
}

/// Roots of a spectrum with multiplicities (see [`SpectrumSym::roots`]).
pub fn roots_from_sym(s: &SpectrumSym) -> Result<Vec<Root>> {
    s.roots()
}
