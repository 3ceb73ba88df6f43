use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("relations contain a cycle: {}", join_cycle(.0))]
    Cycle(Vec<usize>),

    #[error("more than {limit} linear extensions (stopped at {partial}); use heuristic mode")]
    EnumerationOverflow { limit: usize, partial: usize },

    #[error("not a permutation of 0..{n}: {reason}")]
    NotAPermutation { n: usize, reason: String },

    #[error("not a linear extension: {below} must precede {above}")]
    NotAnExtension { below: usize, above: usize },

    #[error("linear extensions belong to different posets")]
    PosetMismatch,

    #[error("reversal ratio is undefined for a chain (no incomparable pairs)")]
    UndefinedRatio,

    #[error("elements {0} and {1} are comparable, so the set is not an antichain")]
    NotAnAntichain(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exact expansion check needs at most {limit} vertices per side, got {k}; use randomized mode")]
    ExactLimitExceeded { k: usize, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn join_cycle(cycle: &[usize]) -> String {
    let mut s: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
    if let Some(first) = cycle.first() {
        s.push(first.to_string());
    }
    s.join(" < ")
}

pub type Result<T> = std::result::Result<T, Error>;
