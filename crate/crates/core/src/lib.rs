//! Executable calculus of nodal separators of holomorphic foliations.
//!
//! * [`exactnum`]: exact quadratic irrationals, continued fractions and the
//!   SL(2,Z) action on eigenvalues.
//! * [`blowup`]: the blow-up state machine, proximity data and dual graph.
//! * [`equising`]: equisingularity of separators and of monomial cusps.
//! * [`torusmaps`]: unimodular matrices acting on foliated tori, lift
//!   decompositions and the rigidity classification.
//! * [`dynamics`]: numeric maps on the bidisc and leaf statistics.
//! * [`text`]: decoders for the wire formats.

// `!(x <= tol)` rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod blowup;
pub mod dynamics;
pub mod equising;
pub mod error;
pub mod exactnum;
mod serde_bigint;
pub mod text;
pub mod torusmaps;

pub use error::{Error, Result};
pub use exactnum::QuadraticIrrational;
pub use torusmaps::UnimodularMatrix;
