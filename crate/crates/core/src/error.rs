use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("complement of the gap set is not closed under addition ({a} + {b} = {sum} is a gap)")]
    NotASemigroup { a: u32, b: u32, sum: u32 },
    #[error("generators have gcd {0}, the generated monoid has infinite genus")]
    InfiniteGenus(u32),
    #[error("{0} is not an element of the semigroup")]
    NotAMember(u32),
    #[error("value {value} exceeds the representable range (max {max})")]
    OutOfRange { value: u64, max: u64 },
    #[error("invalid Kunz vector: {0}")]
    InvalidKunz(String),
    #[error("genus {genus} exceeds the configured maximum {max}")]
    GenusTooLarge { genus: u32, max: u32 },
    #[error("aggregates for genus {0} and {1} cannot be merged")]
    GenusMismatch(u32, u32),
    #[error("aggregates were built with different configurations")]
    IncompatibleAggregates,
    #[error("could not start worker threads: {0}")]
    ThreadPool(String),
    #[error("unknown figure {0} (expected 1 to 5)")]
    UnknownFigure(u8),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown invariant `{0}`")]
    UnknownInvariant(String),
    #[error("no second moment is tracked for `{0}`")]
    NoSecondMoment(&'static str),
    #[error("step function is undefined at breakpoint {0}")]
    UndefinedAtBreakpoint(f64),
    #[error("argument {0} is outside the domain [0, 2]")]
    OutOfDomain(f64),
    #[error("element {0} is not tracked by this aggregate")]
    UntrackedElement(String),
    #[error("no aggregate available for genus {0}")]
    MissingAggregate(u32),
    #[error("invalid set B: {0}")]
    InvalidB(String),
    #[error("invalid type set A: {0}")]
    InvalidA(String),
    #[error("truncation {0} exceeds the supported maximum {1}")]
    TruncationTooLarge(u32, u32),
    #[error("entry {0} is outside the alphabet {{1, 2, 3}}")]
    BadAlphabet(u32),
    #[error("parameter {0} exceeds the supported maximum {1}")]
    TooLarge(i64, i64),
    #[error("prefix does not satisfy the counting conditions: {0}")]
    PrefixConditionViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
