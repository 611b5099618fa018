//! Exact arithmetic over Q and over number fields `Q[t]/(m(t))`.

mod cyclotomic;
pub mod linalg;
mod numfield;
mod rational;
mod upoly;

pub use cyclotomic::{cyclotomic_polynomial, totient};
pub use numfield::{field_arith, ArithOp, Field, FieldElement, FieldSpec, Rationals};
pub use rational::{rat, Rational};
pub use upoly::UPoly;
