use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "symbol {symbol} at position {position} is outside the alphabet of size {alphabet_size}"
    )]
    SymbolOutOfRange {
        position: usize,
        symbol: u32,
        alphabet_size: u32,
    },
    #[error("alphabet size {0} is not supported here")]
    AlphabetSize(u32),
    #[error("invalid run profile: {0}")]
    InvalidProfile(String),
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration would visit {candidates} candidates, budget is {budget}")]
    BudgetExceeded { candidates: String, budget: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
