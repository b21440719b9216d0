//! Computational algebra on finite rings: construction from expressions,
//! element classification (units, nilpotents, idempotents), nil-clean and
//! weakly nil-clean decomposition search, radical/center/quotient structure,
//! matrix rings over small prime fields, and a harness of named checks that
//! re-verify the underlying decomposition theory on a catalog of concretely
//! built rings.

pub mod elements;
pub mod error;
pub mod expr;
pub mod matgf;
pub mod predicates;
pub mod ring;
pub mod structure;
pub mod theorems;

pub use error::{Result, RingError};
pub use expr::{parse_expr, RingExpr};
pub use ring::{build, build_with_limit, Element, FiniteRing};

use std::fmt;

/// Sign of the idempotent part in a weak decomposition a = b ± e.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
