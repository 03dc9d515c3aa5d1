use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `0/0` has no projective meaning.
    ZeroOverZero,
    NotInvertible { value: i64, modulus: i64 },
    InvalidModulus(i64),
    /// An intermediate did not fit the 64-bit backing.
    ArithmeticOverflow,
    InvalidSpec(String),
    InvalidBound(i64),
    BoundTooLarge { requested: i64, limit: i64 },
    /// The explicit vertex map needs `M | u2 - u1*u2 - u1`.
    NotMappable { u1: i64, u2: i64, modulus: i64 },
    InvariantViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroOverZero => write!(f, "0/0 is not a point of the extended rationals"),
            Error::NotInvertible { value, modulus } => {
                write!(f, "{value} is not invertible modulo {modulus}")
            }
            Error::InvalidModulus(n) => write!(f, "invalid modulus {n} (must be >= 1)"),
            Error::ArithmeticOverflow => write!(f, "arithmetic overflow in 64-bit backing"),
            Error::InvalidSpec(msg) => write!(f, "invalid spec: {msg}"),
            Error::InvalidBound(b) => write!(f, "invalid bound {b} (must be >= 1)"),
            Error::BoundTooLarge { requested, limit } => {
                write!(f, "bound {requested} exceeds the limit {limit}")
            }
            Error::NotMappable { u1, u2, modulus } => write!(
                f,
                "{modulus} does not divide u2 - u1*u2 - u1 for u1 = {u1}, u2 = {u2}"
            ),
            Error::InvariantViolation(msg) => write!(f, "invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
