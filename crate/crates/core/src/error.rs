use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Contract violations reported by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Alphabets need between 2 and 256 symbols.
    AlphabetSize(usize),
    DuplicateSymbol(String),
    /// Symbols must be nonempty and free of commas, whitespace and quotes.
    InvalidSymbol(String),
    AlphabetMismatch,
    LetterOutOfRange { letter: usize, size: usize },
    UnknownToken(String),
    EmptyWord,
    EmptyNeedle,
    /// A window length or index outside `1..=len`.
    LengthOutOfRange { n: usize, len: usize },
    PrefixTooShort { needed: usize, actual: usize },
    MissingRule(String),
    EmptyRule(String),
    /// `sigma(a)` does not start with `a` or is a single letter.
    ///
    /// `suggested_power` is the smallest `p <= |A| + 1` such that `sigma^p` has a
    /// fixed point starting with `a`, if any.
    NoFixedPoint { letter: String, suggested_power: Option<usize> },
    NegativeEntry { row: usize, col: usize },
    DimensionMismatch { expected: usize, found: usize },
    ZeroPolynomial,
    NotMonic,
    NotSquarefree,
    NotPisot,
    ZeroDenominator,
    NotPrimitive,
    NotBinary,
    OutOfRange(&'static str),
    SupportCapExceeded { size: u128, cap: u128 },
    EmptySupport,
    WordTooShort { len: usize, n: usize },
    ExcludedLetter,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AlphabetSize(n) => write!(f, "alphabet must have 2..=256 symbols, got {n}"),
            Error::DuplicateSymbol(s) => write!(f, "duplicate alphabet symbol {s:?}"),
            Error::InvalidSymbol(s) => write!(f, "invalid alphabet symbol {s:?}"),
            Error::AlphabetMismatch => f.write_str("words are over different alphabets"),
            Error::LetterOutOfRange { letter, size } => {
                write!(f, "letter index {letter} out of range for alphabet of size {size}")
            }
            Error::UnknownToken(t) => write!(f, "token {t:?} is not in the alphabet"),
            Error::EmptyWord => f.write_str("operation requires a nonempty word"),
            Error::EmptyNeedle => f.write_str("cannot count occurrences of the empty word"),
            Error::LengthOutOfRange { n, len } => {
                write!(f, "length {n} outside the valid range 1..={len}")
            }
            Error::PrefixTooShort { needed, actual } => {
                write!(f, "prefix of length {actual} is too short, need at least {needed}")
            }
            Error::MissingRule(s) => write!(f, "no replacement rule for letter {s:?}"),
            Error::EmptyRule(s) => write!(f, "replacement for letter {s:?} is empty"),
            Error::NoFixedPoint { letter, suggested_power } => {
                write!(f, "substitution has no fixed point starting with {letter:?}")?;
                match suggested_power {
                    Some(p) => write!(f, "; its power {p} does"),
                    None => Ok(()),
                }
            }
            Error::NegativeEntry { row, col } => {
                write!(f, "matrix entry ({row}, {col}) is negative")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroPolynomial => f.write_str("the zero polynomial is not allowed here"),
            Error::NotMonic => f.write_str("polynomial must be monic"),
            Error::NotSquarefree => f.write_str("polynomial has repeated roots"),
            Error::NotPisot => f.write_str("polynomial does not define a Pisot-Vijayaraghavan number"),
            Error::ZeroDenominator => f.write_str("division by zero"),
            Error::NotPrimitive => f.write_str("matrix is not primitive"),
            Error::NotBinary => f.write_str("operation needs a two-letter alphabet"),
            Error::OutOfRange(what) => write!(f, "{what} out of range"),
            Error::SupportCapExceeded { size, cap } => {
                write!(f, "state support {size} exceeds the cap {cap}")
            }
            Error::EmptySupport => f.write_str("quantum state has empty support"),
            Error::WordTooShort { len, n } => {
                write!(f, "support word of length {len} is shorter than n = {n}")
            }
            Error::ExcludedLetter => f.write_str("word uses the excluded letter"),
        }
    }
}

impl core::error::Error for Error {}
