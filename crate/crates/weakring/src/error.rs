use std::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    /// A realized ring would exceed the table limit and has no structured form.
    OrderOverflow { order: u128, limit: usize },
    /// Malformed ring expression (bad arity, size, or generator index).
    InvalidExpr(String),
    /// Operands belong to different rings.
    RingMismatch,
    /// The operation needs Cayley tables but the ring is structured.
    StructuredUnsupported,
    /// An exhaustive scan would exceed the element budget.
    BudgetExceeded { need: u128, budget: u64 },
    /// A documented precondition does not hold.
    PreconditionViolated(String),
    /// peirce_split was given a non-central or non-idempotent element.
    NotCentralIdempotent,
    /// crt_split_2_3 requires 6·1 to be nilpotent.
    SixNotNilpotent,
    /// A matrix that must be invertible is singular.
    Singular,
    /// matgf operation restricted to p in {2, 3, 5}.
    InvalidModulus(u64),
    /// Element index out of range for the ring.
    BadElement { index: usize, order: usize },
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::OrderOverflow { order, limit } => {
                write!(f, "ring order {order} exceeds table limit {limit} and has no structured form")
            }
            RingError::InvalidExpr(msg) => write!(f, "invalid ring expression: {msg}"),
            RingError::RingMismatch => write!(f, "elements belong to different rings"),
            RingError::StructuredUnsupported => {
                write!(f, "operation requires a table-backed ring")
            }
            RingError::BudgetExceeded { need, budget } => {
                write!(f, "scan of {need} elements exceeds budget {budget}")
            }
            RingError::PreconditionViolated(msg) => write!(f, "precondition violated: {msg}"),
            RingError::NotCentralIdempotent => write!(f, "element is not a central idempotent"),
            RingError::SixNotNilpotent => write!(f, "6 is not nilpotent in this ring"),
            RingError::Singular => write!(f, "matrix is singular"),
            RingError::InvalidModulus(p) => write!(f, "modulus {p} not supported here (need 2, 3 or 5)"),
            RingError::BadElement { index, order } => {
                write!(f, "element index {index} out of range for ring of order {order}")
            }
        }
    }
}

impl std::error::Error for RingError {}

pub type Result<T> = std::result::Result<T, RingError>;
