use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cap exceeded: {what} is {actual}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        actual: u128,
        cap: u128,
    },
    #[error("signature mismatch between source and target structures")]
    SignatureMismatch,
    #[error("duplicate symbol name `{0}` in signature")]
    DuplicateSymbol(String),
    #[error("duplicate element label `{0}` in universe")]
    DuplicateElement(String),
    #[error("universe must be non-empty")]
    EmptyUniverse,
    #[error("operation `{symbol}` returns the empty set at tuple {tuple:?}")]
    EmptyValue { symbol: String, tuple: Vec<usize> },
    #[error("operation `{symbol}` table has {got} entries, expected {expected}")]
    TableNotTotal {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("interpretation has {got} tables, signature has {expected} symbols")]
    WrongTableCount { expected: usize, got: usize },
    #[error("unbound variable `{0}` in term valuation")]
    UnboundVariable(String),
    #[error("unknown symbol `{0}` in term")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` applied to {got} arguments, arity is {arity}")]
    ArityMismatch {
        symbol: String,
        arity: usize,
        got: usize,
    },
    #[error("morphism is not typed between the given structures")]
    MorphismTypeMismatch,
    #[error("input morphism violates its contract: {0}")]
    ContractViolation(String),
    #[error("signature must be empty for this operation")]
    NonEmptySignature,
    #[error("element index {index} out of range for universe of size {size}")]
    BadIndex { index: usize, size: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Hard limits for the exhaustive procedures. Every cap violation surfaces
/// as [`Error::CapExceeded`]; nothing is silently truncated.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Largest universe for which all non-empty subsets are enumerated.
    pub subset_universe: usize,
    /// Largest universe for which the powerset construction is materialized.
    pub powerset_universe: usize,
    /// Largest tuple space `|A|^n` that will be iterated.
    pub tuple_space: u64,
    /// Largest map space `|B|^|A|` that will be enumerated.
    pub map_space: u64,
    /// Largest carrier for which subset-exhaustive checks (all sups,
    /// continuity over all subsets) run exhaustively; beyond this the
    /// checks sample and flag the result as non-exhaustive.
    pub exhaustive_carrier: usize,
    /// Number of random subsets drawn in the sampled regime.
    pub samples: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subset_universe: 20,
            powerset_universe: 12,
            tuple_space: 1_000_000,
            map_space: 1_000_000,
            exhaustive_carrier: 20,
            samples: 2_000,
        }
    }
}

impl Caps {
    /// A single user-facing knob, as exposed by the CLI `--cap` flag.
    pub fn with_limit(n: usize) -> Self {
        Caps {
            subset_universe: n,
            powerset_universe: n.min(20),
            ..Caps::default()
        }
    }
}
