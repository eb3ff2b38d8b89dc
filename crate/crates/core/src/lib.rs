//! Exact verification toolkit for rank and reachability statements about
//! plane and quadric sections of space curves.
//!
//! The crate is organized around a handful of small, independent layers:
//!
//! - [`algebra`]: prime-field arithmetic and dense rank computation;
//! - [`games`]: the two column-tally reachability games with memoized
//!   solvers, closed forms, and the bounded exception scan;
//! - [`bn`]: degree/genus/ρ bookkeeping, signatures, exception tables;
//! - [`geom`]: projective points, conics, evaluation matrices, and curves on
//!   the quadric surface over a prime field;
//! - [`elliptic`]: Weierstrass arithmetic and the ruled embedding of an
//!   elliptic curve into the quadric;
//! - [`sections`]: the rank verifiers that tie the samplers to the expected
//!   verdicts;
//! - [`planner`]: exact integer/rational induction machinery;
//! - [`acceptance`]: the end-to-end criteria suite used by tests and the CLI.

pub mod acceptance;
pub mod algebra;
pub mod bn;
pub mod elliptic;
pub mod games;
pub mod geom;
pub mod planner;
pub mod sections;

pub use algebra::{Matrix, PrimeField};
pub use bn::{CurveParams, Signature};
