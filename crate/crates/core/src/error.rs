use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("resource exhausted: {what} exceeded limit {limit}")]
    ResourceExhausted { what: &'static str, limit: u64 },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("metavariable `X{0}` occurs in a term that must be closed")]
    MetavariablePresent(String),

    #[error("no value assigned to {0}")]
    MissingAssignment(String),

    #[error("carrier mismatch: expected {expected} elements, found {found}")]
    CarrierMismatch { expected: usize, found: usize },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("not a homomorphism: fails at `{op}` applied to {args:?}")]
    NotAHomomorphism { op: String, args: Vec<usize> },

    #[error("map is not surjective: element {missing} has no preimage")]
    NotSurjective { missing: usize },

    #[error("generators {gens:?} do not generate the algebra")]
    NotGenerated { gens: Vec<u32> },

    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("arity mismatch for `{symbol}`: expected {expected}, found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("entry {value} at {line}:{col} is outside the carrier of size {carrier}")]
    EntryOutOfRange {
        line: usize,
        col: usize,
        value: u64,
        carrier: usize,
    },

    #[error("empty carrier")]
    EmptyCarrier,

    #[error("unknown tail rule `{0}` (expected `proj` or `const`)")]
    UnknownTail(String),

    #[error("invalid symbol name `{0}`")]
    InvalidSymbol(String),

    #[error("not representable: {0}")]
    Unrepresentable(String),
}

impl Error {
    pub(crate) fn exhausted(what: &'static str, limit: impl TryInto<u64>) -> Self {
        Error::ResourceExhausted {
            what,
            limit: limit.try_into().unwrap_or(u64::MAX),
        }
    }
}
