//! Exact computation in the Leavitt algebras `L_d`, the dense algebraic core
//! of the `L^p` Cuntz algebras, together with an `ℓᵖ` operator-norm engine.
//!
//! * [`element`], [`component`], [`word`], [`scalar`]: exact arithmetic in
//!   `L_d` with a canonical minimal-level graded form.
//! * [`gauge`]: gauge grading, eigenspace projections and the shift
//!   endomorphisms `ψ_r`.
//! * [`uhf`]: the UHF core, matrix units, conditional expectations, trace and
//!   signed-permutation averaging.
//! * [`lpnorm`]: certified intervals for `ℓᵖ → ℓᵖ` operator norms.
//! * [`witness`]: constructive pure infiniteness, `x·a·y = 1`.
//! * [`invariants`]: supernatural numbers, `K₀` and classification decisions.

pub mod component;
pub mod element;
pub mod error;
pub mod gauge;
pub mod invariants;
pub mod json;
pub mod lpnorm;
pub mod parse;
pub mod scalar;
pub mod uhf;
pub mod witness;
pub mod word;

pub use component::{mono_mul, GradedComponent};
pub use element::LeavittElement;
pub use error::{Error, Result};
pub use parse::{format_element, parse_element};
pub use scalar::Scalar;
pub use word::Word;
