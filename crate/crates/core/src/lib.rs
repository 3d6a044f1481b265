//! Divisor theory on chains of cycles.
//!
//! The crate computes ranks of divisors, gonality sequences and Clifford
//! indices on chains of cycles, in two independent ways: a displacement
//! tableau criterion that works directly on the torsion profile, and a
//! brute-force chip-firing oracle on discrete realizations. The `verify`
//! module runs both engines against each other and against the closed-form
//! gonality formulas.

pub mod chain;
pub mod error;
pub mod oracle;
pub mod rank;
pub mod tableau;
pub mod verify;

pub use error::Error;
