//! Exact slope-number and Hodge-Witt-number calculus for smooth proper
//! varieties in characteristic p.
//!
//! Given Frobenius slopes, Hodge numbers and domino numbers of a variety,
//! this crate computes slope numbers and Hodge-Witt numbers, builds the
//! Newton, slope-number and Hodge polygons, and checks the hypothesis chain
//! Hodge-Witt + torsion-free crystalline cohomology + Hodge-de Rham
//! degeneration ⇒ Hodge symmetry on concrete profiles.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod hodge_witt;
pub mod model;
pub mod polygon;
pub mod rational;
pub mod schema;
pub mod slope;
pub mod svg;
pub mod verify;

pub use error::{Error, Result};
pub use model::{CohomologyProfile, DominoTable, Dominoes, Flags, HodgeTable, SlopeMultiset};
pub use polygon::Polygon;
pub use rational::Rational;
pub use slope::NumberTable;
pub use verify::{verify_main_theorem, CheckId, Verdict, VerificationReport};
