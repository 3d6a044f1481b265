use std::error::Error as StdError;
use std::fmt;

/// Errors raised by constructors and computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A constructor precondition failed; the message names the violated
    /// constraint, e.g. `"j_1 >= 3 violated (j_1 = 2)"`.
    Constraint(String),
    /// A torsion profile cannot be realized as a discrete chain.
    Unrealizable(String),
    /// The definitional Clifford sweep and the gonality shortcut disagree.
    /// This indicates a bug in one of the two engines, never valid input.
    CliffordMismatch { definitional: i64, shortcut: i64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Constraint(msg) => write!(f, "constraint violation: {msg}"),
            Error::Unrealizable(msg) => write!(f, "unrealizable profile: {msg}"),
            Error::CliffordMismatch {
                definitional,
                shortcut,
            } => write!(
                f,
                "clifford index mismatch: definitional sweep gives {definitional}, \
                 gonality shortcut gives {shortcut}"
            ),
        }
    }
}

impl StdError for Error {}

impl Error {
    pub fn constraint(msg: impl Into<String>) -> Self {
        Error::Constraint(msg.into())
    }
}
