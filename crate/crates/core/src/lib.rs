//! Exact checks for weighted line arrangements on the complex projective plane.
//!
//! The crate decides, with rational and number-field arithmetic only, whether a
//! weighted arrangement of lines (or an abstract system of curves) satisfies the
//! Chern-number relations, the open stability constraints and the
//! Bogomolov-Gieseker equality that single out polyhedral Kähler candidates. It
//! also builds the parabolic Chern data on the blown-up plane and verifies
//! flatness of constant-residue logarithmic connections on `(1,1)` cones.

pub mod arrangement;
pub mod catalog;
pub mod cli;
pub mod connection;
pub mod error;
pub mod exactfield;
pub mod parabolic;
pub mod relations;
pub mod report;

pub use error::{Error, Result};
pub use exactfield::{FieldElement, FieldSpec, Rational};
