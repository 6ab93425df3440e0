use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Which half of the invertibility criterion an element fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvertibilityFailure {
    /// The top-left entry `a` is zero in `Z_p`.
    TopLeftZero,
    /// The lowest digit `u_0` of the bottom-right entry is zero.
    UnitDigitZero,
    /// Both `a = 0` and `u_0 = 0`.
    Both,
}

impl InvertibilityFailure {
    pub(crate) fn check(a: u64, u0: u64) -> Option<Self> {
        match (a == 0, u0 == 0) {
            (false, false) => None,
            (true, false) => Some(Self::TopLeftZero),
            (false, true) => Some(Self::UnitDigitZero),
            (true, true) => Some(Self::Both),
        }
    }
}

impl fmt::Display for InvertibilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TopLeftZero => f.write_str("a = 0"),
            Self::UnitDigitZero => f.write_str("u_0 = 0"),
            Self::Both => f.write_str("a = 0 and u_0 = 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    BadExponent(u32),
    /// A quantity does not fit in the host integer width.
    Overflow,
    ParamMismatch,
    NotAUnit,
    NotInvertible(InvertibilityFailure),
    NotCoprime { value: u128, modulus: u128 },
    BudgetExceeded { required: u128, budget: u64 },
    /// A raw entry is out of range or violates the shape of the ring.
    InvalidEntry(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::BadExponent(m) => write!(f, "exponent m = {m} must be at least 2"),
            Error::Overflow => f.write_str("value exceeds the host integer width"),
            Error::ParamMismatch => f.write_str("operands belong to different rings"),
            Error::NotAUnit => f.write_str("element is not a unit (u_0 = 0)"),
            Error::NotInvertible(why) => write!(f, "matrix is not invertible ({why})"),
            Error::NotCoprime { value, modulus } => {
                write!(f, "{value} has no inverse modulo {modulus}")
            }
            Error::BudgetExceeded { required, budget } => {
                write!(f, "enumeration needs {required} steps, budget is {budget}")
            }
            Error::InvalidEntry(what) => f.write_str(what),
        }
    }
}

impl core::error::Error for Error {}
