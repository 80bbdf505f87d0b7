//! Structural invariants of the monoids of nonnegative solutions of
//! `a1 x1 + ... + a(r-1) x(r-1) ≡ 0 (mod ar)`.
//!
//! The main entry point is [`EquationSpec::normalize`]. From there:
//!
//! - [`apery`]: the Apéry set with respect to the extremal rays, its group
//!   law `⊕` and carry `I`;
//! - [`hilbert`]: the Hilbert basis;
//! - [`decompose`]: unique decompositions and Elliott-style
//!   parametrizations;
//! - [`class_groups`]: class group and inner class group;
//! - [`carry_monoid`]: the abstract `G × F` model with a carry table;
//! - [`oracle`]: brute-force references used to cross-check all of the above.

#![allow(clippy::needless_range_loop)]

pub mod apery;
pub mod carry_monoid;
pub mod class_groups;
pub mod decompose;
pub mod error;
pub mod exact_arith;
pub mod hilbert;
pub mod monoid;
pub mod oracle;

pub use apery::{apery_box, apery_closed_form, AperyTable, CarryVector, DEFAULT_GUARD};
pub use carry_monoid::{canonical_spec, check_axioms, verify_isomorphism, CarryElement, CarryMonoidSpec};
pub use class_groups::{two_dim_closed_form, ClassGroups, ProductIdentity};
pub use decompose::{decompose, elliott_decompose, elliott_scheme, Decomposition, ElliottScheme};
pub use error::{Error, Result};
pub use exact_arith::{FiniteAbelianGroup, IntMatrix, Rational};
pub use hilbert::{hilbert_basis, HilbertBasis};
pub use monoid::{CaleData, EquationSpec, LatticePoint};
