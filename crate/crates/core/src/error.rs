use std::fmt;

/// Errors surfaced by the algebra layers.
///
/// Structural failures that indicate an implementation bug (a differential
/// not squaring to zero, an inexact "short exact" sequence) are reported
/// through this type rather than silently ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A monomial was used with an algebra it does not belong to.
    NotInAlgebra { monomial: String, algebra: String },
    /// Parse failure for the monomial text syntax.
    Parse(String),
    /// d ∘ d ≠ 0 in a complex; carries the offending tridegree.
    DifferentialSquare { s: i32, t: i32, w: i32 },
    /// A claimed short exact sequence failed per-bidegree exactness.
    Inexact { t: i32, w: i32, detail: String },
    /// A windowed computation was asked for data outside its window.
    WindowTooSmall(String),
    /// Malformed CLI/JSON input.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotInAlgebra { monomial, algebra } => {
                write!(f, "monomial {monomial} does not lie in {algebra}")
            }
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::DifferentialSquare { s, t, w } => {
                write!(f, "d^2 != 0 at (s,t,w)=({s},{t},{w})")
            }
            Error::Inexact { t, w, detail } => {
                write!(f, "exactness failure at (t,w)=({t},{w}): {detail}")
            }
            Error::WindowTooSmall(s) => write!(f, "window too small: {s}"),
            Error::Invalid(s) => write!(f, "invalid input: {s}"),
        }
    }
}

impl std::error::Error for Error {}
