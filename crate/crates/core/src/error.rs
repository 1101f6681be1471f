use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element `{element}` is not in the carrier of `{semigroup}`")]
    ElementNotInCarrier { semigroup: String, element: String },

    #[error("NonFiniteDecomposition: `{semigroup}` is not a finite decomposition semigroup (no decomposer)")]
    NonFiniteDecomposition { semigroup: String },

    #[error("`{semigroup}` has no neutral element")]
    NoNeutral { semigroup: String },

    #[error("`{semigroup}` is neither finite nor equipped with a units oracle")]
    NeitherFiniteNorOracle { semigroup: String },

    #[error("`{semigroup}` lacks the capability required for {operation}")]
    CapabilityMissing { semigroup: String, operation: String },

    #[error("unknown semigroup `{0}`")]
    UnknownSemigroup(String),

    /// `line` is 0 when the fault is not on one line.
    #[error("malformed table{}: {message}", at_line(*.line))]
    MalformedTable { line: usize, message: String },

    #[error("table is not associative: ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")]
    NonAssociative {
        a: String,
        b: String,
        c: String,
        left: String,
        right: String,
    },

    #[error("operands live in different semigroups: {0}")]
    MixedSemigroup(String),

    #[error("letter-domain mismatch: {0}")]
    LetterDomain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("missing morphism {to} <- {from}")]
    MissingMorphism { to: String, from: String },

    #[error("system `{0}` has no fiber enumerator")]
    MissingFiberEnumerator(String),

    #[error("malformed DDL description (line {line}): {message}")]
    MalformedDdl { line: usize, message: String },

    #[error("falsified claim `{claim}`: {witness}")]
    FalsifiedClaim { claim: String, witness: String },

    #[error("NonEmptyTerminal: terminal semigroup has {size} element(s); rebuild only covers an empty terminal")]
    NonEmptyTerminal { size: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("word `{0}` is not analytic (must be nonempty and end in x1)")]
    NotAnalytic(String),

    #[error("divergent index {0}: first entry must be at least 2")]
    DivergentIndex(String),

    #[error("io error on `{path}`: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// The variant name, for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ElementNotInCarrier { .. } => "ElementNotInCarrier",
            Error::NonFiniteDecomposition { .. } => "NonFiniteDecomposition",
            Error::NoNeutral { .. } => "NoNeutral",
            Error::NeitherFiniteNorOracle { .. } => "NeitherFiniteNorOracle",
            Error::CapabilityMissing { .. } => "CapabilityMissing",
            Error::UnknownSemigroup { .. } => "UnknownSemigroup",
            Error::MalformedTable { .. } => "MalformedTable",
            Error::NonAssociative { .. } => "NonAssociative",
            Error::MixedSemigroup { .. } => "MixedSemigroup",
            Error::LetterDomain { .. } => "LetterDomain",
            Error::Parse { .. } => "Parse",
            Error::MissingMorphism { .. } => "MissingMorphism",
            Error::MissingFiberEnumerator { .. } => "MissingFiberEnumerator",
            Error::MalformedDdl { .. } => "MalformedDdl",
            Error::FalsifiedClaim { .. } => "FalsifiedClaim",
            Error::NonEmptyTerminal { .. } => "NonEmptyTerminal",
            Error::Domain { .. } => "Domain",
            Error::NotAnalytic { .. } => "NotAnalytic",
            Error::DivergentIndex { .. } => "DivergentIndex",
            Error::Io { .. } => "Io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn at_line(line: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!(" (line {line})")
    }
}
