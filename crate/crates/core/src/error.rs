use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible cyclotomic orders: {from} does not divide {to}")]
    IncompatibleOrders { from: u64, to: u64 },

    #[error("q must be an odd prime power (got {0})")]
    NotOddPrimePower(u64),

    #[error("no p-regular element of order {m} in PSL(2,{q}): need q ≡ ±1 (mod {})", 2 * .m)]
    NoElementOfOrder { q: u64, m: u64 },

    #[error("{m} is not coprime to q = {q}")]
    NotPRegular { q: u64, m: u64 },

    #[error("{sub} does not divide the frame order {m}")]
    NotADivisor { sub: u64, m: u64 },

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("exceptional distribution requires t ≥ 5 (got t = {0})")]
    ExceptionalNeedsLargeT(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unbounded relaxation — augment character family (rank {rank} < {vars} variables)")]
    UnboundedRelaxation { rank: usize, vars: usize },

    #[error("search incomplete: node budget of {budget} exceeded")]
    Incomplete { budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
