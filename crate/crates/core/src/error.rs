use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the core.
///
/// All variants except [`Error::WordTooLong`] are caller errors (bad input or a
/// violated mathematical precondition). `WordTooLong` is the resource guard
/// on word growth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    NotPrime(u32),
    OddPrimeRequired(u32),
    RankOutOfRange(usize),
    TruncationOutOfRange(usize),
    Syntax { position: usize, message: String },
    GeneratorOutOfRange { index: usize, max: usize },
    ExponentOverflow,
    ContextMismatch,
    NotAUnit,
    /// A word was expected to lie in `F_level` of the Zassenhaus filtration.
    NotInFiltration { level: usize },
    LevelOutOfRange { level: usize, max: usize },
    NotAutomorphism,
    /// An automorphism was expected to lie in `A(level)`; `depth` is its
    /// actual Andreadakis-Johnson depth.
    NotInAndreadakis { level: usize, depth: usize },
    SingularLinearPart,
    LinearPartNotIdentity,
    ConstantTermInImage { generator: usize },
    LowDegreeSupport { generator: usize },
    InvalidMonomial(String),
    MalformedDefiningSystem(String),
    EmptyDegrees,
    InvalidDegree(u32),
    DegreeMismatch { expected: usize, found: usize },
    WordTooLong { limit: usize },
}

impl Error {
    /// True for the resource guard, false for caller errors.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::WordTooLong { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "p = {p} is not prime"),
            Error::OddPrimeRequired(p) => {
                write!(f, "this computation assumes p is odd, got p = {p}")
            }
            Error::RankOutOfRange(r) => {
                write!(f, "rank {r} out of range (1..={})", crate::MAX_RANK)
            }
            Error::TruncationOutOfRange(n) => {
                write!(f, "truncation order {n} out of range (2..={})", crate::MAX_TRUNC)
            }
            Error::Syntax { position, message } => {
                write!(f, "syntax error at position {position}: {message}")
            }
            Error::GeneratorOutOfRange { index, max } => {
                write!(f, "generator index {index} out of range (1..={max})")
            }
            Error::ExponentOverflow => write!(f, "exponent magnitude must stay below 2^31"),
            Error::ContextMismatch => write!(f, "operands live in different contexts"),
            Error::NotAUnit => write!(f, "series has zero constant term and is not a unit"),
            Error::NotInFiltration { level } => {
                write!(f, "word not in filtration level {level}: theta(w) - 1 has a term of degree < {level}")
            }
            Error::LevelOutOfRange { level, max } => {
                write!(f, "level {level} out of range (1..={max})")
            }
            Error::NotAutomorphism => {
                write!(f, "phi is not an automorphism: induced map on H = F/F_2 is singular")
            }
            Error::NotInAndreadakis { level, depth } => write!(
                f,
                "phi not in A({level}): phi(x_j) x_j^-1 must lie in F_{} for every j, but depth is {depth}",
                level + 1
            ),
            Error::SingularLinearPart => {
                write!(f, "degree-1 part is singular: not a filtration-preserving automorphism")
            }
            Error::LinearPartNotIdentity => {
                write!(f, "degree-1 part is not the identity: endomorphism is not IA")
            }
            Error::ConstantTermInImage { generator } => {
                write!(f, "image of X{generator} has a nonzero constant term")
            }
            Error::LowDegreeSupport { generator } => {
                write!(f, "entry for X{generator} has terms of degree < 2")
            }
            Error::InvalidMonomial(s) => write!(f, "invalid monomial: {s}"),
            Error::MalformedDefiningSystem(s) => write!(f, "malformed defining system: {s}"),
            Error::EmptyDegrees => write!(f, "degree multiset is empty"),
            Error::InvalidDegree(d) => write!(f, "degree {d} must be at least 1"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "monomial degree {found} does not match required degree {expected}")
            }
            Error::WordTooLong { limit } => {
                write!(f, "word length exceeded the guard of {limit} letters")
            }
        }
    }
}

impl core::error::Error for Error {}
