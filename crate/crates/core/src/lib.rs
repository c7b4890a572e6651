//! Exact local Donaldson–Thomas theory of curves.
//!
//! Everything is computed over `Q(s, t1, t2)((q))` with exact arithmetic:
//! the Fock-space operators, the rubber operator `S`, the TQFT gluing
//! calculus for `DT(g|k1,k2)`, and the 1-legged equivariant vertex.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod boxcount;
pub mod checks;
pub mod fock;
pub mod partitions;
pub mod rubber;
pub mod symfunc;
pub mod tqft;
pub mod vertex;

use core::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Error {
    DivisionByZero,
    /// A series operation needed constant term one.
    NotUnitConstant,
    /// A homogeneous expansion did not terminate.
    NonTerminatingExpansion,
    /// More q-orders are required than were available.
    Precision { needed: i64, available: i64 },
    Singular,
    SizeMismatch { expected: usize, found: usize },
    /// A rubber coefficient had a homogeneous piece below the base degree.
    InvalidBaseDegree { base: i64, found: i64 },
    /// An overdetermined order-by-order system had no solution.
    Inconsistent { order: i64 },
    /// A character that should be a Laurent polynomial left a remainder.
    NotLaurent,
    InvalidInput(alloc::string::String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotUnitConstant => write!(f, "series must have constant term 1"),
            Error::NonTerminatingExpansion => {
                write!(f, "homogeneous expansion does not terminate")
            }
            Error::Precision { needed, available } => write!(
                f,
                "insufficient q-precision: need order {}, have {}",
                needed, available
            ),
            Error::Singular => write!(f, "singular linear system"),
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {}, found {}", expected, found)
            }
            Error::InvalidBaseDegree { base, found } => write!(
                f,
                "homogeneous component of degree {} below base degree {}",
                found, base
            ),
            Error::Inconsistent { order } => {
                write!(f, "linear system inconsistent at q^{}", order)
            }
            Error::NotLaurent => write!(f, "edge character is not a Laurent polynomial"),
            Error::InvalidInput(s) => write!(f, "invalid input: {}", s),
        }
    }
}

impl core::error::Error for Error {}
