use alloc::string::String;
use core::fmt;

use crate::mono::Mono;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the library can report. `kind()` gives the stable name used
/// in machine-readable output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DescriptorMismatch,
    DivisionUndefined,
    CharacteristicMismatch,
    NotPrime(u64),
    FieldTooLarge { p: u32, k: u32 },
    ShapeMismatch(String),
    NonzeroConstantTerm,
    NonUnitLinearTerm,
    NotPIntegral,
    EmbeddingUndefined(String),
    IdentityFail { witness: Mono },
    AssocFail { witness: Mono },
    CommFail { witness: Mono },
    NotHomomorphism { witness: Mono },
    LawMismatch,
    TruncationTooShallow { n: u32, p: u64 },
    NotMultipleOfC { degree: u32 },
    NoExtension { degree: u32 },
    ShapeViolation(String),
    Obstructed { degree: u32 },
    OrderTooSmall { order: u32, required: u32 },
    HeightMismatch,
    NotQAlgebra,
    InvalidArgument(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DescriptorMismatch => "DescriptorMismatch",
            Error::DivisionUndefined => "DivisionUndefined",
            Error::CharacteristicMismatch => "CharacteristicMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NonzeroConstantTerm => "NonzeroConstantTerm",
            Error::NonUnitLinearTerm => "NonUnitLinearTerm",
            Error::NotPIntegral => "NotPIntegral",
            Error::EmbeddingUndefined(_) => "EmbeddingUndefined",
            Error::IdentityFail { .. } => "IdentityFail",
            Error::AssocFail { .. } => "AssocFail",
            Error::CommFail { .. } => "CommFail",
            Error::NotHomomorphism { .. } => "NotHomomorphism",
            Error::LawMismatch => "LawMismatch",
            Error::TruncationTooShallow { .. } => "TruncationTooShallow",
            Error::NotMultipleOfC { .. } => "NotMultipleOfC",
            Error::NoExtension { .. } => "NoExtension",
            Error::ShapeViolation(_) => "ShapeViolation",
            Error::Obstructed { .. } => "Obstructed",
            Error::OrderTooSmall { .. } => "OrderTooSmall",
            Error::HeightMismatch => "HeightMismatch",
            Error::NotQAlgebra => "NotQAlgebra",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// Exponent vector attached to axiom and homomorphism failures.
    pub fn witness(&self) -> Option<&Mono> {
        match self {
            Error::IdentityFail { witness }
            | Error::AssocFail { witness }
            | Error::CommFail { witness }
            | Error::NotHomomorphism { witness } => Some(witness),
            _ => None,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DescriptorMismatch => write!(f, "operands live in different rings"),
            Error::DivisionUndefined => write!(f, "division is not defined for these operands"),
            Error::CharacteristicMismatch => write!(f, "ring does not have the requested characteristic"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::FieldTooLarge { p, k } => write!(f, "field of order {p}^{k} exceeds the table limit"),
            Error::ShapeMismatch(s) => write!(f, "shape mismatch: {s}"),
            Error::NonzeroConstantTerm => write!(f, "series has a nonzero constant term"),
            Error::NonUnitLinearTerm => write!(f, "linear coefficient is not a unit"),
            Error::NotPIntegral => write!(f, "coefficient is not p-integral"),
            Error::EmbeddingUndefined(s) => write!(f, "no ring map: {s}"),
            Error::IdentityFail { witness } => write!(f, "identity axiom fails at {witness:?}"),
            Error::AssocFail { witness } => write!(f, "associativity fails at {witness:?}"),
            Error::CommFail { witness } => write!(f, "commutativity fails at {witness:?}"),
            Error::NotHomomorphism { witness } => write!(f, "homomorphism identity fails at {witness:?}"),
            Error::LawMismatch => write!(f, "laws do not match"),
            Error::TruncationTooShallow { n, p } => {
                write!(f, "[p]-series vanishes but order {n} < p = {p}")
            }
            Error::NotMultipleOfC { degree } => write!(f, "polynomial is not a multiple of C_{degree}"),
            Error::NoExtension { degree } => write!(f, "no symmetric correction found in degree {degree}"),
            Error::ShapeViolation(s) => write!(f, "shape violation: {s}"),
            Error::Obstructed { degree } => write!(f, "lift obstructed in degree {degree}"),
            Error::OrderTooSmall { order, required } => {
                write!(f, "ambient order {order} is below the required {required}")
            }
            Error::HeightMismatch => write!(f, "law does not have the requested height"),
            Error::NotQAlgebra => write!(f, "ring is not a Q-algebra"),
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
        }
    }
}

impl core::error::Error for Error {}
